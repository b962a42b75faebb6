//! Relative-entropy distance of a quantum expectation vector from the
//! noncontextual polytope, for fixed projectors.
//!
//! Contexts are the maximal cliques. In context `c` the quantum outcome
//! distribution is `(x_v)_{v∈c}` plus one residual outcome `1 − Σ_{v∈c} x_v`;
//! a mixture `μ` of independent-set assignments induces the same shape with
//! `p_v = Σ_{I∋v} μ_I`. The objective is the context average of
//! `D(q_c‖p_c)` in nats, minimised over the simplex of mixtures.
//!
//! The solver is pairwise Frank–Wolfe: each iteration moves weight from the
//! worst active assignment to the best assignment overall (a linear scan over
//! all independent sets), with an exact line search by bisection on the
//! directional derivative. It stops once the Frank–Wolfe duality gap, an
//! upper bound on the suboptimality, drops below `tol`.

use serde::Serialize;

use super::projectors::{expectation_vector, validate_realization, ProjectorSet, Tolerances};
use super::state::DensityMatrix;
use crate::error::{Error, Result};
use crate::graph::{enumerate_independent_sets, enumerate_maximal_cliques, EnumerationLimits, Graph, VertexSet};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MeasureOptions {
    /// Stop when the Frank–Wolfe gap is below this (nats).
    pub tol: f64,
    pub max_iters: usize,
    /// Lower bound on classical probabilities inside gradient evaluations.
    pub p_floor: f64,
    #[serde(skip)]
    pub tolerances: Tolerances,
    #[serde(skip)]
    pub limits: EnumerationLimits,
    /// Keep (objective, gap) for every iteration in the result.
    #[serde(skip)]
    pub record_history: bool,
}

impl Default for MeasureOptions {
    fn default() -> Self {
        MeasureOptions {
            tol: 1e-9,
            max_iters: 200_000,
            p_floor: 1e-300,
            tolerances: Tolerances::default(),
            limits: EnumerationLimits::default(),
            record_history: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WeightedContext {
    /// 1-based clique members.
    pub context: Vec<usize>,
    pub divergence_nats: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WeightedAssignment {
    /// 1-based members of the independent set assigned outcome 1.
    pub set: Vec<usize>,
    pub weight: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Convergence {
    pub iterations: usize,
    pub gap: f64,
    /// Gradient evaluations where some classical probability hit `p_floor`.
    pub floor_activations: usize,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub history: Vec<(f64, f64)>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MeasureResult {
    pub value_nats: f64,
    pub value_bits: f64,
    pub expectation: Vec<f64>,
    pub noncontextual_weights: Vec<WeightedAssignment>,
    pub contexts: Vec<WeightedContext>,
    pub convergence: Convergence,
}

/// Inner minimisation for the given projectors and state.
pub fn contextuality_measure_fixed(
    g: &Graph,
    ps: &ProjectorSet,
    rho: &DensityMatrix,
    opts: &MeasureOptions,
) -> Result<MeasureResult> {
    let report = validate_realization(g, ps, opts.tolerances)?;
    if !report.passed {
        return Err(Error::Validation(report.summary()));
    }
    let x = expectation_vector(ps, rho)?;
    relative_entropy_distance(g, &x, opts)
}

/// Minimum over noncontextual mixtures of the context-averaged relative
/// entropy from the expectation vector `x`.
pub fn relative_entropy_distance(g: &Graph, x: &[f64], opts: &MeasureOptions) -> Result<MeasureResult> {
    let problem = Problem::new(g, x, opts.limits)?;
    problem.solve(opts)
}

struct Problem {
    n: usize,
    contexts: Vec<Vec<usize>>,
    /// quantum distribution per context: members then the residual outcome
    q: Vec<Vec<f64>>,
    sets: Vec<VertexSet>,
    expectation: Vec<f64>,
}

/// Quantum probabilities below this are rounding noise and count as zero.
const QUANTUM_ZERO: f64 = 1e-12;

fn snap(q: f64) -> f64 {
    if q < QUANTUM_ZERO {
        0.0
    } else {
        q
    }
}

impl Problem {
    fn new(g: &Graph, x: &[f64], limits: EnumerationLimits) -> Result<Self> {
        if x.len() != g.n() {
            return Err(Error::Shape(format!("expectation vector has {} entries, graph has {}", x.len(), g.n())));
        }
        if let Some((k, v)) = x.iter().enumerate().find(|(_, v)| !(0.0..=1.0).contains(*v)) {
            return Err(Error::Domain(format!("expectation {} = {v} outside [0, 1]", k + 1)));
        }
        let contexts: Vec<Vec<usize>> =
            enumerate_maximal_cliques(g, limits)?.into_iter().map(|c| c.members().to_vec()).collect();
        let q = contexts
            .iter()
            .map(|c| {
                let sum: f64 = c.iter().map(|&v| x[v]).sum();
                let mut dist: Vec<f64> = c.iter().map(|&v| snap(x[v])).collect();
                dist.push(snap(1.0 - sum));
                dist
            })
            .collect();
        let sets = enumerate_independent_sets(g, false, limits)?;
        Ok(Problem { n: g.n(), contexts, q, sets, expectation: x.to_vec() })
    }

    fn weight(&self) -> f64 {
        1.0 / self.contexts.len() as f64
    }

    fn divergence(&self, c: usize, p: &[f64]) -> f64 {
        let ctx = &self.contexts[c];
        let q = &self.q[c];
        let sum: f64 = ctx.iter().map(|&v| p[v]).sum();
        let mut d = 0.0;
        for (i, &qi) in q.iter().enumerate() {
            if qi == 0.0 {
                continue;
            }
            let pi = if i < ctx.len() { p[ctx[i]] } else { 1.0 - sum };
            if pi <= 0.0 {
                return f64::INFINITY;
            }
            d += qi * (qi / pi).ln();
        }
        d.max(0.0)
    }

    fn objective(&self, p: &[f64]) -> f64 {
        (0..self.contexts.len()).map(|c| self.divergence(c, p)).sum::<f64>() * self.weight()
    }

    /// ∂/∂p_v of the objective, with probabilities floored at `floor`.
    fn gradient(&self, p: &[f64], floor: f64, floor_hits: &mut usize) -> Vec<f64> {
        let mut grad = vec![0.0; self.n];
        let mut hit = false;
        for (ctx, q) in self.contexts.iter().zip(&self.q) {
            let sum: f64 = ctx.iter().map(|&v| p[v]).sum();
            let q_res = q[ctx.len()];
            let res_term = if q_res > 0.0 {
                let p_res = 1.0 - sum;
                hit |= p_res < floor;
                q_res / p_res.max(floor)
            } else {
                0.0
            };
            for (i, &v) in ctx.iter().enumerate() {
                let own = if q[i] > 0.0 {
                    hit |= p[v] < floor;
                    q[i] / p[v].max(floor)
                } else {
                    0.0
                };
                grad[v] += self.weight() * (res_term - own);
            }
        }
        if hit {
            *floor_hits += 1;
        }
        grad
    }

    /// d/dγ objective(p + γ·dir); +∞ once a probability with positive
    /// quantum mass reaches zero.
    fn directional(&self, p: &[f64], dir: &[f64], gamma: f64) -> f64 {
        let mut total = 0.0;
        for (ctx, q) in self.contexts.iter().zip(&self.q) {
            let mut sum = 0.0;
            let mut dsum = 0.0;
            for (i, &v) in ctx.iter().enumerate() {
                let pv = p[v] + gamma * dir[v];
                sum += pv;
                dsum += dir[v];
                if q[i] > 0.0 && dir[v] != 0.0 {
                    if pv <= 0.0 {
                        return f64::INFINITY;
                    }
                    total -= q[i] * dir[v] / pv;
                }
            }
            let q_res = q[ctx.len()];
            if q_res > 0.0 && dsum != 0.0 {
                let p_res = 1.0 - sum;
                if p_res <= 0.0 {
                    return f64::INFINITY;
                }
                total += q_res * dsum / p_res;
            }
        }
        total * self.weight()
    }

    fn marginals(&self, mu: &[f64]) -> Vec<f64> {
        let mut p = vec![0.0; self.n];
        for (set, &w) in self.sets.iter().zip(mu) {
            if w > 0.0 {
                for &v in set.members() {
                    p[v] += w;
                }
            }
        }
        p
    }

    fn solve(&self, opts: &MeasureOptions) -> Result<MeasureResult> {
        let m = self.sets.len();
        // start: half on the empty assignment, the rest spread over singletons
        let mut mu = vec![0.0; m];
        mu[0] = 0.5;
        for (k, s) in self.sets.iter().enumerate() {
            if s.len() == 1 {
                mu[k] = 0.5 / self.n as f64;
            }
        }
        let mut p = self.marginals(&mu);
        let mut floor_hits = 0;
        let mut history = Vec::new();
        let mut iterations = 0;
        let mut dir = vec![0.0; self.n];
        let gap = loop {
            let grad = self.gradient(&p, opts.p_floor, &mut floor_hits);
            let scores: Vec<f64> = self.sets.iter().map(|s| s.members().iter().map(|&v| grad[v]).sum()).collect();
            let toward = argmin(scores.iter().copied().enumerate());
            let away = argmin(scores.iter().copied().enumerate().filter(|&(k, _)| mu[k] > 0.0).map(|(k, s)| (k, -s)));
            let current: f64 = mu.iter().zip(&scores).map(|(w, s)| w * s).sum();
            let gap = (current - scores[toward]).max(0.0);
            if opts.record_history {
                history.push((self.objective(&p), gap));
            }
            if gap < opts.tol || toward == away {
                break gap;
            }
            if iterations >= opts.max_iters {
                return Err(Error::NonConvergence { iterations, best_value: self.objective(&p), gap });
            }
            iterations += 1;

            dir.iter_mut().for_each(|d| *d = 0.0);
            for &v in self.sets[toward].members() {
                dir[v] += 1.0;
            }
            for &v in self.sets[away].members() {
                dir[v] -= 1.0;
            }
            let max_step = mu[away];
            let mut step = self.line_search(&p, &dir, max_step, true);
            if step >= max_step {
                // a drop step must not zero a probability the quantum side needs
                mu[away] = 0.0;
                mu[toward] += step;
                let dropped = self.marginals(&mu);
                mu[toward] -= step;
                mu[away] = max_step;
                if !self.objective(&dropped).is_finite() {
                    step = self.line_search(&p, &dir, max_step, false);
                }
            }
            if step <= 0.0 {
                // no representable progress along the best direction
                break gap;
            }
            if step >= max_step {
                mu[away] = 0.0;
            } else {
                mu[away] -= step;
            }
            mu[toward] += step;
            if iterations % 256 == 0 {
                p = self.marginals(&mu);
            } else {
                for (pv, d) in p.iter_mut().zip(&dir) {
                    *pv += step * d;
                }
            }
        };
        p = self.marginals(&mu);

        let contexts: Vec<WeightedContext> = self
            .contexts
            .iter()
            .enumerate()
            .map(|(c, ctx)| WeightedContext {
                context: ctx.iter().map(|v| v + 1).collect(),
                divergence_nats: self.divergence(c, &p),
            })
            .collect();
        let value = contexts.iter().map(|c| c.divergence_nats).sum::<f64>() * self.weight();
        let noncontextual_weights = self
            .sets
            .iter()
            .zip(&mu)
            .filter(|(_, &w)| w > 0.0)
            .map(|(s, &w)| WeightedAssignment { set: s.to_one_based(), weight: w })
            .collect();
        Ok(MeasureResult {
            value_nats: value,
            value_bits: value / std::f64::consts::LN_2,
            expectation: self.expectation.clone(),
            noncontextual_weights,
            contexts,
            convergence: Convergence { iterations, gap, floor_activations: floor_hits, history },
        })
    }

    /// Minimiser of the convex objective on `[0, max_step]` along `dir`,
    /// or on `[0, max_step)` when the endpoint is excluded.
    fn line_search(&self, p: &[f64], dir: &[f64], max_step: f64, allow_end: bool) -> f64 {
        if allow_end && self.directional(p, dir, max_step) <= 0.0 {
            return max_step;
        }
        if self.directional(p, dir, 0.0) >= 0.0 {
            return 0.0;
        }
        let (mut lo, mut hi) = (0.0, max_step);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if self.directional(p, dir, mid) <= 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        lo
    }
}

/// Index of the smallest value; ties go to the lowest index.
fn argmin(items: impl Iterator<Item = (usize, f64)>) -> usize {
    let mut best: Option<(usize, f64)> = None;
    for (k, s) in items {
        if best.is_none_or(|(_, b)| s < b) {
            best = Some((k, s));
        }
    }
    best.map(|(k, _)| k).expect("non-empty candidate list")
}
