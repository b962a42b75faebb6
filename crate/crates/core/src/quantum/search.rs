//! Best-effort maximisation of the fixed-projector measure over the unitary
//! orbit `{U†Π_kU}` of a seed realization. The result is a lower bound on
//! the maximum over all realizations.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::linalg::ComplexMatrix;
use super::measure::{relative_entropy_distance, MeasureOptions, MeasureResult};
use super::projectors::{expectation_vector, validate_realization, ProjectorSet};
use super::state::DensityMatrix;
use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SearchOptions {
    pub seed: u64,
    /// Restart 0 starts at the seed realization itself; the rest at random
    /// points of the unitary orbit.
    pub restarts: usize,
    /// Measure evaluations per restart.
    pub evaluations: usize,
    pub initial_step: f64,
    pub min_step: f64,
    /// Run restarts on the rayon pool.
    pub parallel: bool,
    #[serde(skip)]
    pub measure: MeasureOptions,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            seed: 0,
            restarts: 4,
            evaluations: 60,
            initial_step: 0.5,
            min_step: 1e-3,
            parallel: false,
            measure: MeasureOptions::default(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SearchResult {
    /// Always "lower bound".
    pub bound: &'static str,
    pub value_nats: f64,
    pub value_bits: f64,
    /// Fixed-projector value at the seed realization.
    pub seed_value_nats: f64,
    pub seed: u64,
    pub restarts: usize,
    pub best_restart: usize,
    pub evaluations: usize,
    pub result: MeasureResult,
    #[serde(skip)]
    pub projectors: ProjectorSet,
}

struct Outcome {
    value: f64,
    params: Vec<f64>,
    evaluations: usize,
}

/// Product of two-level rotations followed by diagonal phases.
/// `params` holds `(θ, φ)` per pair `i < j`, then one phase per level.
fn unitary(d: usize, params: &[f64]) -> ComplexMatrix {
    let mut u = ComplexMatrix::identity(d, d);
    let mut k = 0;
    for i in 0..d {
        for j in i + 1..d {
            let (theta, phi) = (params[k], params[k + 1]);
            k += 2;
            let (s, c) = theta.sin_cos();
            let e = Complex64::from_polar(1.0, phi);
            // rows i and j of G·u
            for col in 0..d {
                let (a, b) = (u[(i, col)], u[(j, col)]);
                u[(i, col)] = a * c - e.conj() * b * s;
                u[(j, col)] = e * a * s + b * c;
            }
        }
    }
    for i in 0..d {
        let e = Complex64::from_polar(1.0, params[k + i]);
        for col in 0..d {
            u[(i, col)] *= e;
        }
    }
    u
}

fn parameter_count(d: usize) -> usize {
    d * (d - 1) + d
}

fn evaluate(
    g: &Graph,
    seed: &ProjectorSet,
    rho: &DensityMatrix,
    params: &[f64],
    opts: &MeasureOptions,
) -> Result<MeasureResult> {
    let u = unitary(seed.dim(), params);
    let x = expectation_vector(&seed.conjugated(&u), rho)?;
    relative_entropy_distance(g, &x, opts)
}

fn climb(g: &Graph, seed: &ProjectorSet, rho: &DensityMatrix, restart: usize, opts: &SearchOptions) -> Result<Outcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    rng.set_stream(restart as u64);
    let m = parameter_count(seed.dim());
    let mut params: Vec<f64> =
        if restart == 0 { vec![0.0; m] } else { (0..m).map(|_| rng.gen_range(0.0..std::f64::consts::TAU)).collect() };
    let mut best = evaluate(g, seed, rho, &params, &opts.measure)?.value_nats;
    let mut evaluations = 1;
    let mut step = opts.initial_step;
    let mut failures = 0;
    while evaluations < opts.evaluations && step >= opts.min_step {
        let k = rng.gen_range(0..m);
        let delta = if rng.gen_bool(0.5) { step } else { -step };
        let mut candidate = params.clone();
        candidate[k] += delta;
        evaluations += 1;
        // a candidate whose inner problem fails to converge is just rejected
        match evaluate(g, seed, rho, &candidate, &opts.measure) {
            Ok(r) if r.value_nats.is_finite() && r.value_nats > best + 1e-12 => {
                best = r.value_nats;
                params = candidate;
                failures = 0;
            }
            _ => {
                failures += 1;
                if failures >= 2 * m {
                    step *= 0.5;
                    failures = 0;
                }
            }
        }
    }
    Ok(Outcome { value: best, params, evaluations })
}

/// Random-restart hill climbing on `U ↦ M_fixed({U†Π_kU}, ρ)`.
pub fn contextuality_measure_search(
    g: &Graph,
    seed: &ProjectorSet,
    rho: &DensityMatrix,
    opts: &SearchOptions,
) -> Result<SearchResult> {
    let report = validate_realization(g, seed, opts.measure.tolerances)?;
    if !report.passed {
        return Err(Error::Validation(report.summary()));
    }
    if rho.dim() != seed.dim() {
        return Err(Error::Shape(format!("state has dimension {}, projectors {}", rho.dim(), seed.dim())));
    }
    let restarts = opts.restarts.max(1);
    let outcomes: Vec<Result<Outcome>> = if opts.parallel {
        (0..restarts).into_par_iter().map(|k| climb(g, seed, rho, k, opts)).collect()
    } else {
        (0..restarts).map(|k| climb(g, seed, rho, k, opts)).collect()
    };
    let outcomes = outcomes.into_iter().collect::<Result<Vec<_>>>()?;
    let mut best_restart = 0;
    for (k, o) in outcomes.iter().enumerate() {
        if o.value > outcomes[best_restart].value {
            best_restart = k;
        }
    }
    let best = &outcomes[best_restart];
    let u = unitary(seed.dim(), &best.params);
    let result = evaluate(g, seed, rho, &best.params, &opts.measure)?;
    let seed_value = evaluate(g, seed, rho, &vec![0.0; best.params.len()], &opts.measure)?.value_nats;
    Ok(SearchResult {
        bound: "lower bound",
        value_nats: result.value_nats,
        value_bits: result.value_bits,
        seed_value_nats: seed_value,
        seed: opts.seed,
        restarts,
        best_restart,
        evaluations: outcomes.iter().map(|o| o.evaluations).sum(),
        result,
        projectors: seed.conjugated(&u),
    })
}
