//! Quantum side: expectation vectors, the fixed-projector measure, and the
//! unitary-orbit search.

use ksgraph::graph::{catalog_get, EnumerationLimits};
use ksgraph::polytope::stab_membership;
use ksgraph::quantum::realizations::{kcbs, kcbs_state, seed_realization, standard_basis, yu_oh};
use ksgraph::quantum::{
    contextuality_measure_fixed, contextuality_measure_search, expectation_vector, haar_unitary, majorizes, spectrum,
    validate_realization, ComplexMatrix, DensityMatrix, MeasureOptions, MeasureResult, ProjectorSet, SearchOptions,
    Tolerances,
};
use ksgraph::{Error, Graph, Rational};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

// Minimum values cross-checked against an independent conic solver.
const YU_OH_MAXIMALLY_MIXED: f64 = 0.013245634734278;
const YU_OH_DIAGONAL_532: f64 = 0.013369555348987;
const KCBS_OPTIMAL: f64 = 0.032340618272527;

fn graph(name: &str) -> Graph {
    catalog_get(name).unwrap().graph
}

fn measure(g: &Graph, ps: &ProjectorSet, rho: &DensityMatrix) -> MeasureResult {
    contextuality_measure_fixed(g, ps, rho, &MeasureOptions::default()).unwrap()
}

fn random_mixed_state<R: Rng>(d: usize, rng: &mut R) -> DensityMatrix {
    let a = ComplexMatrix::from_fn(d, d, |_, _| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
    let m = &a * a.adjoint();
    let tr = m.trace();
    DensityMatrix::new(m / tr).unwrap()
}

/// The result is consistent with its own definition: mean of context
/// divergences recomputed here from the reported weights.
fn check_self_consistent(g: &Graph, x: &[f64], res: &MeasureResult) {
    let mut p = vec![0.0; g.n()];
    let mut total = 0.0;
    for w in &res.noncontextual_weights {
        assert!(w.weight > 0.0);
        total += w.weight;
        for &v in &w.set {
            p[v - 1] += w.weight;
        }
    }
    assert!((total - 1.0).abs() < 1e-12);
    let mut sum = 0.0;
    for c in &res.contexts {
        let members: Vec<usize> = c.context.iter().map(|v| v - 1).collect();
        let mut q: Vec<f64> = members.iter().map(|&v| x[v]).collect();
        let mut pc: Vec<f64> = members.iter().map(|&v| p[v]).collect();
        q.push(1.0 - q.iter().sum::<f64>());
        pc.push(1.0 - pc.iter().sum::<f64>());
        let d: f64 = q.iter().zip(&pc).filter(|(qi, _)| **qi > 1e-12).map(|(qi, pi)| qi * (qi / pi).ln()).sum();
        assert!((d.max(0.0) - c.divergence_nats).abs() < 1e-10, "{d} vs {}", c.divergence_nats);
        sum += c.divergence_nats;
    }
    assert!((sum / res.contexts.len() as f64 - res.value_nats).abs() < 1e-14);
    assert!(res.value_nats >= 0.0);
    assert!((res.value_bits - res.value_nats / std::f64::consts::LN_2).abs() < 1e-15);
}

#[test]
fn maximally_mixed_state_gives_rank_over_dimension() {
    let rank_two = {
        let e =
            |k: usize| ComplexMatrix::from_fn(4, 4, |i, j| Complex64::new((i == j && i / 2 == k) as u8 as f64, 0.0));
        ProjectorSet::new(4, 2, vec![e(0), e(1)]).unwrap()
    };
    for ps in [yu_oh(), kcbs(), seed_realization("J_GYO_GYO").unwrap(), standard_basis(5).unwrap(), rank_two] {
        let x = expectation_vector(&ps, &DensityMatrix::maximally_mixed(ps.dim())).unwrap();
        let expected = ps.rank() as f64 / ps.dim() as f64;
        assert!(x.iter().all(|v| (v - expected).abs() <= 1e-12), "{x:?}");
    }
}

#[test]
fn realization_checks() {
    let report = validate_realization(&graph("G_YO"), &yu_oh(), Tolerances::default()).unwrap();
    assert!(report.passed);
    let wrong = validate_realization(&Graph::cycle(13).unwrap(), &yu_oh(), Tolerances::default()).unwrap();
    assert!(!wrong.passed);
    assert!(!wrong.unrealized_edges.is_empty());
    let k3 = validate_realization(&Graph::complete(3).unwrap(), &standard_basis(3).unwrap(), Tolerances::default());
    assert!(k3.unwrap().passed);
    assert!(matches!(
        validate_realization(&Graph::complete(4).unwrap(), &standard_basis(3).unwrap(), Tolerances::default()),
        Err(Error::Shape(_))
    ));
}

#[test]
fn pure_state_on_a_ray() {
    let ps = yu_oh();
    let rho = DensityMatrix::pure_real(&[1.0, 0.0, 0.0]).unwrap();
    let x = expectation_vector(&ps, &rho).unwrap();
    let g = graph("G_YO");
    assert!((x[0] - 1.0).abs() < 1e-12);
    for v in g.neighbors(0).ones() {
        assert!(x[v].abs() < 1e-12);
    }
}

#[test]
fn frozen_measure_values() {
    let g = graph("G_YO");
    let x = expectation_vector(&yu_oh(), &DensityMatrix::maximally_mixed(3)).unwrap();
    let res = measure(&g, &yu_oh(), &DensityMatrix::maximally_mixed(3));
    assert!(res.value_nats > 1e-6);
    assert!((res.value_nats - YU_OH_MAXIMALLY_MIXED).abs() < 1e-9, "{}", res.value_nats);
    assert!(res.convergence.gap < 1e-9);
    assert_eq!(res.contexts.len(), 16);
    check_self_consistent(&g, &x, &res);

    let rho = DensityMatrix::diagonal(&[0.5, 0.3, 0.2]).unwrap();
    let res = measure(&g, &yu_oh(), &rho);
    assert!((res.value_nats - YU_OH_DIAGONAL_532).abs() < 1e-9, "{}", res.value_nats);

    let c5 = graph("C5");
    let x = expectation_vector(&kcbs(), &kcbs_state()).unwrap();
    // the pentagon facet sum x_v <= 2 is violated
    assert!(x.iter().sum::<f64>() > 2.0 + 1e-3);
    let res = measure(&c5, &kcbs(), &kcbs_state());
    assert!((res.value_nats - KCBS_OPTIMAL).abs() < 1e-9, "{}", res.value_nats);
    check_self_consistent(&c5, &x, &res);
}

#[test]
fn single_edge_is_never_contextual() {
    let g = Graph::complete(2).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for d in 2..=4 {
        let basis = standard_basis(d).unwrap();
        let ps = ProjectorSet::new(d, 1, basis.projectors()[..2].to_vec()).unwrap();
        for _ in 0..5 {
            let rho = random_mixed_state(d, &mut rng);
            assert!(measure(&g, &ps, &rho).value_nats < 1e-9);
        }
    }
}

#[test]
fn unitary_covariance() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for (name, ps) in [("C5", kcbs()), ("G_YO", yu_oh())] {
        let g = graph(name);
        for _ in 0..50 {
            let rho = random_mixed_state(3, &mut rng);
            let u = haar_unitary(3, &mut rng);
            let before = measure(&g, &ps, &rho).value_nats;
            let after = measure(&g, &ps.conjugated(&u), &rho.conjugated(&u)).value_nats;
            assert!((before - after).abs() <= 1e-8, "{name}: {before} vs {after}");
        }
    }
}

#[test]
fn vanishes_inside_stab() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut members = 0;
    let cases: Vec<(Graph, ProjectorSet)> = vec![
        (graph("C5"), kcbs()),
        (graph("G_YO"), yu_oh()),
        (Graph::complete(3).unwrap(), standard_basis(3).unwrap()),
    ];
    for (g, ps) in &cases {
        for k in 0..20 {
            let rho = if k % 2 == 0 { random_mixed_state(3, &mut rng) } else { DensityMatrix::haar_pure(3, &mut rng) };
            let x = expectation_vector(ps, &rho).unwrap();
            let point: Vec<Rational> = x.iter().map(|&v| Rational::round_to_denominator(v, 1_000_000)).collect();
            let res = measure(g, ps, &rho);
            if stab_membership(g, &point, EnumerationLimits::default()).unwrap().is_member() {
                members += 1;
                assert!(res.value_nats < 1e-7, "{} for {point:?}", res.value_nats);
            }
        }
    }
    assert!(members >= 20, "only {members} member points sampled");
}

#[test]
fn positive_outside_stab() {
    let g = graph("G_YO");
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    // state-independent: every state is contextual on these rays
    for _ in 0..10 {
        let rho = random_mixed_state(3, &mut rng);
        assert!(measure(&g, &yu_oh(), &rho).value_nats > 1e-6);
    }
}

/// Σ_j p_j M(P_j ρ2 P_jᵀ) >= M(Σ_j p_j P_j ρ2 P_jᵀ) for permutation matrices P_j.
#[test]
fn convexity_chain_over_permuted_states() {
    let perms: Vec<[usize; 3]> = vec![[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for (name, ps) in [("C5", kcbs()), ("G_YO", yu_oh())] {
        let g = graph(name);
        for _ in 0..10 {
            let mut kappa: Vec<f64> = (0..3).map(|_| rng.gen_range(0.0..1.0)).collect();
            let s: f64 = kappa.iter().sum();
            kappa.iter_mut().for_each(|k| *k /= s);
            let mut p: Vec<f64> = (0..6).map(|_| rng.gen_range(0.0..1.0)).collect();
            let s: f64 = p.iter().sum();
            p.iter_mut().for_each(|w| *w /= s);

            let permuted: Vec<Vec<f64>> = perms.iter().map(|pi| pi.iter().map(|&i| kappa[i]).collect()).collect();
            let mixed: Vec<f64> = (0..3).map(|i| permuted.iter().zip(&p).map(|(k, w)| w * k[i]).sum()).collect();
            let rho1 = DensityMatrix::diagonal(&mixed).unwrap();
            let rho2 = DensityMatrix::diagonal(&kappa).unwrap();
            assert!(majorizes(&spectrum(&rho1).unwrap(), &spectrum(&rho2).unwrap()).unwrap());

            let lhs: f64 = permuted
                .iter()
                .zip(&p)
                .map(|(k, w)| w * measure(&g, &ps, &DensityMatrix::diagonal(k).unwrap()).value_nats)
                .sum();
            let rhs = measure(&g, &ps, &rho1).value_nats;
            assert!(lhs >= rhs - 1e-8, "{name}: {lhs} < {rhs}");
        }
    }
}

#[test]
fn measure_result_is_deterministic() {
    let g = graph("G_YO");
    let a = serde_json::to_string(&measure(&g, &yu_oh(), &DensityMatrix::maximally_mixed(3))).unwrap();
    let b = serde_json::to_string(&measure(&g, &yu_oh(), &DensityMatrix::maximally_mixed(3))).unwrap();
    assert_eq!(a, b);
}

fn quick_search(seed: u64) -> SearchOptions {
    SearchOptions { seed, restarts: 3, evaluations: 25, ..Default::default() }
}

#[test]
fn search_on_complete_graph_is_zero() {
    let g = Graph::complete(3).unwrap();
    let rho = DensityMatrix::diagonal(&[0.7, 0.2, 0.1]).unwrap();
    let r = contextuality_measure_search(&g, &standard_basis(3).unwrap(), &rho, &quick_search(0)).unwrap();
    assert!(r.value_nats < 1e-9);
}

#[test]
fn search_keeps_yu_oh_positive() {
    let g = graph("G_YO");
    let r = contextuality_measure_search(&g, &yu_oh(), &DensityMatrix::maximally_mixed(3), &quick_search(1)).unwrap();
    assert!(r.seed_value_nats > 1e-6);
    assert!(r.value_nats >= r.seed_value_nats);
    assert_eq!(r.bound, "lower bound");
    assert_eq!(r.seed, 1);
}

#[test]
fn search_seed_values_agree_on_conjugate_pairs() {
    let g = graph("G_YO");
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let u = haar_unitary(3, &mut rng);
    let rho = random_mixed_state(3, &mut rng);
    let opts = SearchOptions { restarts: 1, evaluations: 1, ..Default::default() };
    let a = contextuality_measure_search(&g, &yu_oh(), &rho, &opts).unwrap();
    let b = contextuality_measure_search(&g, &yu_oh().conjugated(&u), &rho.conjugated(&u), &opts).unwrap();
    assert!((a.seed_value_nats - b.seed_value_nats).abs() < 1e-8);
}

#[test]
fn search_respects_majorization_on_pentagon() {
    // maximally mixed ≺ the axis state
    let g = graph("C5");
    let low = contextuality_measure_search(&g, &kcbs(), &DensityMatrix::maximally_mixed(3), &quick_search(7)).unwrap();
    let high = contextuality_measure_search(&g, &kcbs(), &kcbs_state(), &quick_search(7)).unwrap();
    assert!(high.value_nats >= low.value_nats);
}

#[test]
fn search_is_reproducible() {
    let g = graph("C5");
    let rho = DensityMatrix::diagonal(&[0.6, 0.3, 0.1]).unwrap();
    let a = contextuality_measure_search(&g, &kcbs(), &rho, &quick_search(42)).unwrap();
    let b = contextuality_measure_search(&g, &kcbs(), &rho, &quick_search(42)).unwrap();
    assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
}

#[test]
fn missing_seed_realization() {
    assert!(matches!(seed_realization("C9"), Err(Error::NoSeedRealization(_))));
}
