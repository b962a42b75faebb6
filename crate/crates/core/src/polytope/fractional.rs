use std::collections::BTreeMap;

use super::{ensure, Check};
use crate::error::{Error, Result};
use crate::graph::{enumerate_independent_sets, EnumerationLimits, Graph, VertexSet};
use crate::lp::{solve_lp, LinearProgram, LpStatus, Sense};
use crate::rational::Rational;

/// Weighted family of independent sets covering every vertex at least once.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FractionalColoring {
    n: usize,
    terms: Vec<(VertexSet, Rational)>,
}

impl FractionalColoring {
    pub fn new(n: usize, terms: Vec<(VertexSet, Rational)>) -> Self {
        FractionalColoring { n, terms }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &[(VertexSet, Rational)] {
        &self.terms
    }

    pub fn total_weight(&self) -> Rational {
        self.terms.iter().map(|(_, w)| w).sum()
    }

    /// Σ of weights of sets containing each vertex.
    pub fn coverage(&self) -> Vec<Rational> {
        let mut cov = vec![Rational::zero(); self.n];
        for (set, w) in &self.terms {
            for &v in set.members() {
                if v < self.n {
                    cov[v] += w;
                }
            }
        }
        cov
    }

    pub fn is_equality_form(&self) -> bool {
        self.coverage().iter().all(Rational::is_one)
    }

    /// Checks nonnegative weights, independence, and coverage ≥ 1.
    pub fn validate(&self, g: &Graph) -> Check {
        ensure!(self.n == g.n(), "colouring is for {} vertices, graph has {}", self.n, g.n());
        for (set, w) in &self.terms {
            ensure!(!w.is_negative(), "negative weight {w} on set {:?}", set.to_one_based());
            match g.is_independent(set) {
                Ok(true) => {}
                Ok(false) => return Check::fail(format!("set {:?} is not independent", set.to_one_based())),
                Err(e) => return Check::fail(e.to_string()),
            }
        }
        for (v, c) in self.coverage().iter().enumerate() {
            ensure!(*c >= Rational::one(), "vertex {} covered only {c}", v + 1);
        }
        Check::valid()
    }
}

/// χ_f with both optimality certificates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FractionalChromatic {
    pub value: Rational,
    /// Optimal colouring over maximal independent sets (coverage ≥ 1).
    pub coloring: FractionalColoring,
    /// Optimal dual: vertex weights summing to `value` with at most 1 on
    /// every independent set.
    pub fractional_clique: Vec<Rational>,
}

/// χ_f as the covering LP over maximal independent sets. Restricting to
/// maximal sets loses nothing: enlarging a set never lowers coverage.
pub fn fractional_chromatic_number(g: &Graph, limits: EnumerationLimits) -> Result<FractionalChromatic> {
    let sets = enumerate_independent_sets(g, true, limits)?;
    let n = g.n();
    let mut lp = LinearProgram::new(vec![Rational::one(); sets.len()])?;
    for v in 0..n {
        let row = sets.iter().map(|s| if s.contains(v) { Rational::one() } else { Rational::zero() }).collect();
        lp.add_constraint(row, Sense::Ge, Rational::one())?;
    }
    let sol = solve_lp(&lp)?;
    if sol.status != LpStatus::Optimal {
        return Err(Error::Validation(format!("covering LP reported {:?}", sol.status)));
    }
    let terms = sets.into_iter().zip(sol.primal).filter(|(_, w)| !w.is_zero()).collect();
    Ok(FractionalChromatic {
        value: sol.objective.expect("optimal"),
        coloring: FractionalColoring::new(n, terms),
        fractional_clique: sol.duals.expect("optimal"),
    })
}

/// Lower-bound certificate check: `y >= 0`, `Σ_{v∈I} y_v <= 1` on every
/// maximal independent set, and `Σ y = claimed`.
pub fn verify_fractional_clique(
    g: &Graph,
    y: &[Rational],
    claimed: &Rational,
    limits: EnumerationLimits,
) -> Result<Check> {
    if y.len() != g.n() {
        return Ok(Check::fail(format!("fractional clique has {} entries, graph has {}", y.len(), g.n())));
    }
    if let Some((v, w)) = y.iter().enumerate().find(|(_, w)| w.is_negative()) {
        return Ok(Check::fail(format!("negative clique weight {w} on vertex {}", v + 1)));
    }
    let total: Rational = y.iter().sum();
    if total != *claimed {
        return Ok(Check::fail(format!("fractional clique sums to {total}, claimed {claimed}")));
    }
    for s in enumerate_independent_sets(g, true, limits)? {
        let load: Rational = s.members().iter().map(|&v| &y[v]).sum();
        if load > Rational::one() {
            return Ok(Check::fail(format!("independent set {:?} carries {load} > 1", s.to_one_based())));
        }
    }
    Ok(Check::valid())
}

/// Turns a colouring with coverage ≥ 1 into one with coverage exactly 1 and
/// no larger total weight: excess on a vertex is moved from a containing set
/// onto that set minus the vertex. Weight landing on the empty set is dropped.
pub fn tighten_fractional_coloring(g: &Graph, fc: &FractionalColoring) -> Result<FractionalColoring> {
    let check = fc.validate(g);
    if let Some(reason) = check.failure() {
        return Err(Error::Validation(reason.to_string()));
    }
    if fc.is_equality_form() {
        return Ok(fc.clone());
    }
    let mut weights: BTreeMap<VertexSet, Rational> = BTreeMap::new();
    for (set, w) in fc.terms() {
        if !w.is_zero() {
            *weights.entry(set.clone()).or_insert_with(Rational::zero) += w;
        }
    }
    let coverage = fc.coverage();
    for (v, cov) in coverage.iter().enumerate() {
        let mut excess = cov - Rational::one();
        while excess.is_positive() {
            let (set, w) = weights
                .iter()
                .find(|(s, w)| s.contains(v) && w.is_positive())
                .map(|(s, w)| (s.clone(), w.clone()))
                .expect("positive excess implies a containing set");
            let shift = if w <= excess { w.clone() } else { excess.clone() };
            let remaining = &w - &shift;
            if remaining.is_zero() {
                weights.remove(&set);
            } else {
                weights.insert(set.clone(), remaining);
            }
            let smaller = set.without(v);
            if !smaller.is_empty() {
                *weights.entry(smaller).or_insert_with(Rational::zero) += &shift;
            }
            excess -= &shift;
        }
    }
    Ok(FractionalColoring::new(g.n(), weights.into_iter().collect()))
}
