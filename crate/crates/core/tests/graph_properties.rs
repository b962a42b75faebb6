//! Invariants of the exact graph computations on random small graphs.

mod common;

use common::graph_from_mask;
use ksgraph::coloring::{chromatic_number, clique_number, SearchLimits};
use ksgraph::graph::{format::parse_ograph, format::write_ograph, EnumerationLimits};
use ksgraph::polytope::{
    fractional_chromatic_number, sic_test, stab_membership, uniform_point, verify_certificate, Certificate,
    StabMembership,
};
use ksgraph::{Error, Graph, Rational};
use proptest::prelude::*;

fn graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |mask| graph_from_mask(n, &mask))
    })
}

fn permuted(max_n: usize) -> impl Strategy<Value = (Graph, Vec<usize>)> {
    graph(max_n).prop_flat_map(|g| {
        let perm = Just((0..g.n()).collect::<Vec<_>>()).prop_shuffle();
        (Just(g), perm)
    })
}

fn limits() -> EnumerationLimits {
    EnumerationLimits::default()
}

fn chi_f(g: &Graph) -> Rational {
    fractional_chromatic_number(g, limits()).unwrap().value
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn sandwich(g in graph(10)) {
        let omega = clique_number(&g, SearchLimits::default()).unwrap();
        let chi = chromatic_number(&g, SearchLimits::default()).unwrap().chromatic_number;
        let value = chi_f(&g);
        prop_assert!(Rational::from_integer(omega as i64) <= value);
        prop_assert!(value <= Rational::from_integer(chi as i64));
    }

    #[test]
    fn optimality_certificates_match(g in graph(10)) {
        let res = fractional_chromatic_number(&g, limits()).unwrap();
        prop_assert!(res.coloring.validate(&g).is_valid());
        prop_assert_eq!(res.coloring.total_weight(), res.value.clone());
        let clique_total: Rational = res.fractional_clique.iter().sum();
        prop_assert_eq!(clique_total, res.value);
    }

    #[test]
    fn uniform_point_leaves_stab_at_inverse_chi_f(g in graph(10)) {
        let inv = chi_f(&g).recip();
        let inside = stab_membership(&g, &uniform_point(g.n(), &inv), limits()).unwrap();
        prop_assert!(inside.is_member());
        let beyond = &inv + &Rational::new(1, 1000);
        if beyond > Rational::one() {
            // only for edgeless graphs: the point leaves the unit cube
            prop_assert!(matches!(stab_membership(&g, &uniform_point(g.n(), &beyond), limits()), Err(Error::Domain(_))));
        } else {
            match stab_membership(&g, &uniform_point(g.n(), &beyond), limits()).unwrap() {
                StabMembership::Separated(h) => {
                    prop_assert!(h.value(&uniform_point(g.n(), &beyond)) > h.offset);
                }
                StabMembership::Member(_) => prop_assert!(false, "point beyond 1/chi_f accepted"),
            }
        }
    }

    #[test]
    fn stab_is_closed_under_shrinking(g in graph(8), num in 0i64..=10) {
        let inv = chi_f(&g).recip();
        let scaled = &inv * &Rational::new(num, 10);
        prop_assert!(stab_membership(&g, &uniform_point(g.n(), &scaled), limits()).unwrap().is_member());
    }

    #[test]
    fn join_adds_fractional_chromatic_numbers(a in graph(6), b in graph(6)) {
        prop_assert_eq!(chi_f(&a.join(&b)), &chi_f(&a) + &chi_f(&b));
    }

    #[test]
    fn join_adds_chromatic_numbers(a in graph(6), b in graph(6)) {
        let chi = |g: &Graph| chromatic_number(g, SearchLimits::default()).unwrap().chromatic_number;
        prop_assert_eq!(chi(&a.join(&b)), chi(&a) + chi(&b));
    }

    #[test]
    fn invariants_ignore_vertex_order((g, perm) in permuted(9)) {
        let h = g.relabel(&perm).unwrap();
        prop_assert_eq!(chi_f(&g), chi_f(&h));
        let chi = |g: &Graph| chromatic_number(g, SearchLimits::default()).unwrap().chromatic_number;
        prop_assert_eq!(chi(&g), chi(&h));
        prop_assert_eq!(clique_number(&g, SearchLimits::default()).unwrap(), clique_number(&h, SearchLimits::default()).unwrap());
    }

    #[test]
    fn sic_certificates_revalidate(g in graph(8), d in 1u64..=6, r in 1u64..=3) {
        prop_assume!(r <= d);
        let v = sic_test(&g, d, r, limits()).unwrap();
        prop_assert_eq!(v.is_sic, v.fractional_chromatic_number > Rational::new(d as i64, r as i64));
        prop_assert!(v.coloring.is_equality_form());
        let cert = Certificate::sic(&g, &v);
        prop_assert!(verify_certificate(&g, &cert, limits()).unwrap().is_valid());
        let reparsed = Certificate::from_json(&cert.to_json()).unwrap();
        prop_assert_eq!(reparsed, cert);
    }

    #[test]
    fn ograph_round_trip(g in graph(10)) {
        prop_assert_eq!(parse_ograph(&write_ograph(&g)).unwrap(), g);
    }
}
