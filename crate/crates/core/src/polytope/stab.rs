use super::{ensure, Check};
use crate::error::{Error, Result};
use crate::graph::{enumerate_independent_sets, enumerate_maximal_cliques, EnumerationLimits, Graph, VertexSet};
use crate::lp::{solve_lp, LinearProgram, LpStatus, Sense};
use crate::rational::Rational;

/// Convex combination of independent-set incidence vectors meant to equal
/// `target`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConvexDecomposition {
    pub terms: Vec<(VertexSet, Rational)>,
    pub target: Vec<Rational>,
}

impl ConvexDecomposition {
    pub fn weight_sum(&self) -> Rational {
        self.terms.iter().map(|(_, w)| w).sum()
    }

    /// Σ weight · incidence, over `n` coordinates.
    pub fn combination(&self, n: usize) -> Vec<Rational> {
        let mut point = vec![Rational::zero(); n];
        for (set, w) in &self.terms {
            for &v in set.members() {
                if v < n {
                    point[v] += w;
                }
            }
        }
        point
    }
}

/// The inequality `normal · z <= offset`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeparatingHyperplane {
    pub normal: Vec<Rational>,
    pub offset: Rational,
}

impl SeparatingHyperplane {
    pub fn value(&self, point: &[Rational]) -> Rational {
        self.normal.iter().zip(point).map(|(a, x)| a * x).sum()
    }

    pub fn value_on_set(&self, set: &VertexSet) -> Rational {
        set.members().iter().map(|&v| &self.normal[v]).sum()
    }

    /// Valid on every independent set of `g` and violated by `point`.
    pub fn separates(&self, g: &Graph, point: &[Rational], limits: EnumerationLimits) -> Result<Check> {
        if self.normal.len() != g.n() || point.len() != g.n() {
            return Ok(Check::fail("hyperplane or point has the wrong length"));
        }
        for s in enumerate_independent_sets(g, false, limits)? {
            let lhs = self.value_on_set(&s);
            if lhs > self.offset {
                return Ok(Check::fail(format!(
                    "independent set {:?} gives {lhs} > {}",
                    s.to_one_based(),
                    self.offset
                )));
            }
        }
        let at_point = self.value(point);
        if at_point <= self.offset {
            return Ok(Check::fail(format!("point gives {at_point} <= {}, not separated", self.offset)));
        }
        Ok(Check::valid())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StabMembership {
    Member(ConvexDecomposition),
    Separated(SeparatingHyperplane),
}

impl StabMembership {
    pub fn is_member(&self) -> bool {
        matches!(self, StabMembership::Member(_))
    }
}

/// Exact check of every decomposition invariant, reporting the first failure.
pub fn verify_decomposition(g: &Graph, dec: &ConvexDecomposition) -> Check {
    let n = g.n();
    ensure!(dec.target.len() == n, "target has {} entries, graph has {n} vertices", dec.target.len());
    for (set, w) in &dec.terms {
        ensure!(!w.is_negative(), "negative weight {w} on set {:?}", set.to_one_based());
        match g.is_independent(set) {
            Ok(true) => {}
            Ok(false) => return Check::fail(format!("set {:?} is not independent", set.to_one_based())),
            Err(e) => return Check::fail(e.to_string()),
        }
    }
    let total = dec.weight_sum();
    ensure!(total.is_one(), "weights sum to {total}, not 1");
    for (v, (got, want)) in dec.combination(n).iter().zip(&dec.target).enumerate() {
        ensure!(got == want, "coordinate {} is {got}, target {want}", v + 1);
    }
    Check::valid()
}

fn check_point(g: &Graph, point: &[Rational]) -> Result<()> {
    if point.len() != g.n() {
        return Err(Error::Shape(format!("point has {} entries, graph has {} vertices", point.len(), g.n())));
    }
    if let Some((v, x)) = point.iter().enumerate().find(|(_, x)| x.is_negative() || **x > Rational::one()) {
        return Err(Error::Domain(format!("coordinate {} = {x} outside [0, 1]", v + 1)));
    }
    Ok(())
}

/// The point with every coordinate equal to `value`.
pub fn uniform_point(n: usize, value: &Rational) -> Vec<Rational> {
    vec![value.clone(); n]
}

/// Decides `point ∈ STAB(g)` by an exact feasibility LP over all
/// independent sets. Members come with a decomposition; non-members with a
/// hyperplane read off the Farkas ray, re-checked on every independent set.
pub fn stab_membership(g: &Graph, point: &[Rational], limits: EnumerationLimits) -> Result<StabMembership> {
    check_point(g, point)?;
    let n = g.n();
    let sets = enumerate_independent_sets(g, false, limits)?;
    let mut lp = LinearProgram::new(vec![Rational::zero(); sets.len()])?;
    for (v, x) in point.iter().enumerate() {
        let row = sets.iter().map(|s| if s.contains(v) { Rational::one() } else { Rational::zero() }).collect();
        lp.add_constraint(row, Sense::Eq, x.clone())?;
    }
    lp.add_constraint(vec![Rational::one(); sets.len()], Sense::Eq, Rational::one())?;
    let sol = solve_lp(&lp)?;
    match sol.status {
        LpStatus::Optimal => {
            let terms = sets.into_iter().zip(sol.primal).filter(|(_, w)| !w.is_zero()).collect();
            let dec = ConvexDecomposition { terms, target: point.to_vec() };
            let check = verify_decomposition(g, &dec);
            if let Some(reason) = check.failure() {
                return Err(Error::Validation(format!("internal decomposition rejected: {reason}")));
            }
            Ok(StabMembership::Member(dec))
        }
        LpStatus::Infeasible => {
            // Farkas ray (a, y0): a·1_I + y0 <= 0 for all I, a·x + y0 > 0
            let ray = sol.farkas.expect("infeasible carries a ray");
            let hyperplane = SeparatingHyperplane { normal: ray[..n].to_vec(), offset: -&ray[n] };
            let check = hyperplane.separates(g, point, limits)?;
            if let Some(reason) = check.failure() {
                return Err(Error::Validation(format!("internal hyperplane rejected: {reason}")));
            }
            Ok(StabMembership::Separated(hyperplane))
        }
        LpStatus::Unbounded => unreachable!("zero objective cannot be unbounded"),
    }
}

/// `point ∈ QSTAB(g)`: every maximal clique sums to at most 1. Returns the
/// first violated clique, if any.
pub fn qstab_membership(g: &Graph, point: &[Rational], limits: EnumerationLimits) -> Result<Option<VertexSet>> {
    check_point(g, point)?;
    for clique in enumerate_maximal_cliques(g, limits)? {
        let sum: Rational = clique.members().iter().map(|&v| &point[v]).sum();
        if sum > Rational::one() {
            return Ok(Some(clique));
        }
    }
    Ok(None)
}
