use super::fractional::{fractional_chromatic_number, tighten_fractional_coloring, FractionalColoring};
use super::stab::{uniform_point, verify_decomposition, ConvexDecomposition};
use crate::error::{Error, Result};
use crate::graph::{EnumerationLimits, Graph, VertexSet};
use crate::rational::Rational;

/// Outcome of the state-independent contextuality test for rank-`rank`
/// projectors in dimension `dimension`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SicVerdict {
    pub dimension: u64,
    pub rank: u64,
    pub fractional_chromatic_number: Rational,
    /// χ_f > dimension / rank.
    pub is_sic: bool,
    /// Equality-form optimal colouring (upper bound on χ_f).
    pub coloring: FractionalColoring,
    /// Optimal fractional clique (lower bound on χ_f). When S-IC, this is
    /// also the hyperplane `y·z <= 1` cutting off the uniform point.
    pub fractional_clique: Vec<Rational>,
    /// Decomposition of the uniform point `rank/dimension`, when not S-IC.
    pub decomposition: Option<ConvexDecomposition>,
}

impl SicVerdict {
    pub fn threshold(&self) -> Rational {
        Rational::new(self.dimension as i64, self.rank as i64)
    }
}

/// Decides whether every state of dimension `d` has its rank-`r` expectation
/// vector outside STAB(g), i.e. whether χ_f(g) > d/r.
///
/// When it is not, the uniform point r/d is written as
/// `Σ (r/d)·w_I·1_I + (1 − χ_f·r/d)·1_∅` with `w` an equality-form optimal
/// colouring; the empty-set term is omitted when χ_f = d/r.
pub fn sic_test(g: &Graph, d: u64, r: u64, limits: EnumerationLimits) -> Result<SicVerdict> {
    if d == 0 || r == 0 || r > d {
        return Err(Error::Domain(format!("need 1 <= rank <= dimension, got rank {r}, dimension {d}")));
    }
    let (d_i, r_i) = (
        i64::try_from(d).map_err(|_| Error::Domain("dimension too large".into()))?,
        i64::try_from(r).map_err(|_| Error::Domain("rank too large".into()))?,
    );
    let chi = fractional_chromatic_number(g, limits)?;
    let coloring = tighten_fractional_coloring(g, &chi.coloring)?;
    debug_assert_eq!(coloring.total_weight(), chi.value);

    let threshold = Rational::new(d_i, r_i);
    let is_sic = chi.value > threshold;
    let decomposition = if is_sic {
        None
    } else {
        let scale = Rational::new(r_i, d_i);
        let mut terms: Vec<(VertexSet, Rational)> =
            coloring.terms().iter().map(|(s, w)| (s.clone(), w * &scale)).collect();
        let slack = Rational::one() - &chi.value * &scale;
        if !slack.is_zero() {
            terms.push((VertexSet::empty(), slack));
        }
        let dec = ConvexDecomposition { terms, target: uniform_point(g.n(), &scale) };
        if let Some(reason) = verify_decomposition(g, &dec).failure() {
            return Err(Error::Validation(format!("internal decomposition rejected: {reason}")));
        }
        Some(dec)
    };
    Ok(SicVerdict {
        dimension: d,
        rank: r,
        fractional_chromatic_number: chi.value,
        is_sic,
        coloring,
        fractional_clique: chi.fractional_clique,
        decomposition,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn equality_case_is_not_sic() {
        let k3 = Graph::complete(3).unwrap();
        let v = sic_test(&k3, 3, 1, Default::default()).unwrap();
        assert!(!v.is_sic);
        let dec = v.decomposition.unwrap();
        // case of equality: no empty-set padding
        assert!(dec.terms.iter().all(|(s, _)| !s.is_empty()));
        assert!(verify_decomposition(&k3, &dec).is_valid());
    }

    #[test]
    fn padding_case() {
        let c5 = Graph::cycle(5).unwrap();
        let v = sic_test(&c5, 3, 1, Default::default()).unwrap();
        assert!(!v.is_sic);
        let dec = v.decomposition.unwrap();
        let empty = dec.terms.iter().find(|(s, _)| s.is_empty()).unwrap();
        assert_eq!(empty.1, Rational::new(1, 6));
        assert!(sic_test(&c5, 2, 1, Default::default()).unwrap().is_sic);
    }

    #[test]
    fn parameter_domain() {
        let c5 = Graph::cycle(5).unwrap();
        for (d, r) in [(0, 1), (3, 0), (2, 3)] {
            assert!(matches!(sic_test(&c5, d, r, Default::default()), Err(Error::Domain(_))));
        }
    }
}
