//! JSON certificates.
//!
//! Schema `ksgraph-certificate`, version 1. Vertex labels are 1-based,
//! rationals are `"p/q"` strings. Every certificate names the graph size it
//! was issued for and one of the `kind`s below:
//!
//! ```json
//! {
//!   "format": "ksgraph-certificate",
//!   "version": 1,
//!   "graph": { "vertices": 5, "edges": 5 },
//!   "kind": "convex_decomposition",
//!   "target": ["2/5", "2/5", "2/5", "2/5", "2/5"],
//!   "terms": [ { "set": [1, 3], "weight": "1/5" }, ... ]
//! }
//! ```
//!
//! * `convex_decomposition`: `target`, `terms`.
//! * `fractional_coloring`: `total`, `sets`.
//! * `stab_membership`: `point`, `member`, and either `decomposition` or
//!   `separating_hyperplane` (`normal`, `offset`; meaning `normal·z <= offset`).
//! * `sic_verdict`: `dimension`, `rank`, `threshold`,
//!   `fractional_chromatic_number`, `is_sic`, `fractional_coloring`,
//!   `fractional_clique`, optional `decomposition`.

use std::path::Path;

use serde::{Deserialize, Serialize};

use super::fractional::{verify_fractional_clique, FractionalColoring};
use super::sic::SicVerdict;
use super::stab::{uniform_point, verify_decomposition, ConvexDecomposition, SeparatingHyperplane, StabMembership};
use super::Check;
use crate::error::{Error, Result};
use crate::graph::{EnumerationLimits, Graph, VertexSet};
use crate::rational::Rational;

pub const FORMAT: &str = "ksgraph-certificate";
pub const VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphSummary {
    pub vertices: usize,
    pub edges: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightedSet {
    /// 1-based vertex labels
    pub set: Vec<usize>,
    pub weight: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionJson {
    pub target: Vec<Rational>,
    pub terms: Vec<WeightedSet>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColoringJson {
    pub total: Rational,
    pub sets: Vec<WeightedSet>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HyperplaneJson {
    pub normal: Vec<Rational>,
    pub offset: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StabJson {
    pub point: Vec<Rational>,
    pub member: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub decomposition: Option<DecompositionJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub separating_hyperplane: Option<HyperplaneJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SicJson {
    pub dimension: u64,
    pub rank: u64,
    pub threshold: Rational,
    pub fractional_chromatic_number: Rational,
    pub is_sic: bool,
    pub fractional_coloring: ColoringJson,
    pub fractional_clique: Vec<Rational>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub decomposition: Option<DecompositionJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CertificateBody {
    ConvexDecomposition(DecompositionJson),
    FractionalColoring(ColoringJson),
    StabMembership(StabJson),
    SicVerdict(SicJson),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub format: String,
    pub version: u32,
    pub graph: GraphSummary,
    #[serde(flatten)]
    pub body: CertificateBody,
}

fn weighted(terms: &[(VertexSet, Rational)]) -> Vec<WeightedSet> {
    terms.iter().map(|(s, w)| WeightedSet { set: s.to_one_based(), weight: w.clone() }).collect()
}

fn unweighted(g: &Graph, sets: &[WeightedSet]) -> Result<Vec<(VertexSet, Rational)>> {
    sets.iter().map(|ws| Ok((VertexSet::from_one_based(&ws.set, g.n())?, ws.weight.clone()))).collect()
}

impl From<&ConvexDecomposition> for DecompositionJson {
    fn from(d: &ConvexDecomposition) -> Self {
        DecompositionJson { target: d.target.clone(), terms: weighted(&d.terms) }
    }
}

impl From<&FractionalColoring> for ColoringJson {
    fn from(c: &FractionalColoring) -> Self {
        ColoringJson { total: c.total_weight(), sets: weighted(c.terms()) }
    }
}

impl From<&SeparatingHyperplane> for HyperplaneJson {
    fn from(h: &SeparatingHyperplane) -> Self {
        HyperplaneJson { normal: h.normal.clone(), offset: h.offset.clone() }
    }
}

impl Certificate {
    pub fn new(g: &Graph, body: CertificateBody) -> Self {
        Certificate {
            format: FORMAT.to_string(),
            version: VERSION,
            graph: GraphSummary { vertices: g.n(), edges: g.edge_count() },
            body,
        }
    }

    pub fn decomposition(g: &Graph, dec: &ConvexDecomposition) -> Self {
        Certificate::new(g, CertificateBody::ConvexDecomposition(dec.into()))
    }

    pub fn sic(g: &Graph, v: &SicVerdict) -> Self {
        Certificate::new(
            g,
            CertificateBody::SicVerdict(SicJson {
                dimension: v.dimension,
                rank: v.rank,
                threshold: v.threshold(),
                fractional_chromatic_number: v.fractional_chromatic_number.clone(),
                is_sic: v.is_sic,
                fractional_coloring: (&v.coloring).into(),
                fractional_clique: v.fractional_clique.clone(),
                decomposition: v.decomposition.as_ref().map(Into::into),
            }),
        )
    }

    pub fn stab(g: &Graph, point: &[Rational], m: &StabMembership) -> Self {
        let body = match m {
            StabMembership::Member(d) => StabJson {
                point: point.to_vec(),
                member: true,
                decomposition: Some(d.into()),
                separating_hyperplane: None,
            },
            StabMembership::Separated(h) => StabJson {
                point: point.to_vec(),
                member: false,
                decomposition: None,
                separating_hyperplane: Some(h.into()),
            },
        };
        Certificate::new(g, CertificateBody::StabMembership(body))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificates always serialise") + "\n"
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn read(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Certificate::from_json(&text)
    }
}

fn decomposition_from_json(g: &Graph, d: &DecompositionJson) -> Result<ConvexDecomposition> {
    Ok(ConvexDecomposition { terms: unweighted(g, &d.terms)?, target: d.target.clone() })
}

fn coloring_from_json(g: &Graph, c: &ColoringJson) -> Result<FractionalColoring> {
    Ok(FractionalColoring::new(g.n(), unweighted(g, &c.sets)?))
}

/// Re-checks a certificate against `g` from scratch. Structural problems
/// (out-of-range labels) are reported as failed checks, not errors.
pub fn verify_certificate(g: &Graph, cert: &Certificate, limits: EnumerationLimits) -> Result<Check> {
    if cert.format != FORMAT || cert.version != VERSION {
        return Ok(Check::fail(format!("unsupported certificate {} v{}", cert.format, cert.version)));
    }
    if cert.graph.vertices != g.n() || cert.graph.edges != g.edge_count() {
        return Ok(Check::fail(format!(
            "certificate is for a graph with {} vertices and {} edges, got {} and {}",
            cert.graph.vertices,
            cert.graph.edges,
            g.n(),
            g.edge_count()
        )));
    }
    let structural = |e: Error| Ok(Check::fail(e.to_string()));
    match &cert.body {
        CertificateBody::ConvexDecomposition(d) => match decomposition_from_json(g, d) {
            Ok(dec) => Ok(verify_decomposition(g, &dec)),
            Err(e) => structural(e),
        },
        CertificateBody::FractionalColoring(c) => match coloring_from_json(g, c) {
            Ok(fc) => Ok(verify_coloring_total(g, &fc, &c.total)),
            Err(e) => structural(e),
        },
        CertificateBody::StabMembership(s) => verify_stab(g, s, limits),
        CertificateBody::SicVerdict(s) => verify_sic(g, s, limits),
    }
}

fn verify_coloring_total(g: &Graph, fc: &FractionalColoring, total: &Rational) -> Check {
    fc.validate(g).and_then(|| {
        let actual = fc.total_weight();
        if actual == *total {
            Check::valid()
        } else {
            Check::fail(format!("colouring weights sum to {actual}, stated total {total}"))
        }
    })
}

fn verify_stab(g: &Graph, s: &StabJson, limits: EnumerationLimits) -> Result<Check> {
    match (s.member, &s.decomposition, &s.separating_hyperplane) {
        (true, Some(d), None) => {
            let dec = match decomposition_from_json(g, d) {
                Ok(dec) => dec,
                Err(e) => return Ok(Check::fail(e.to_string())),
            };
            if dec.target != s.point {
                return Ok(Check::fail("decomposition target differs from the stated point"));
            }
            Ok(verify_decomposition(g, &dec))
        }
        (false, None, Some(h)) => {
            let hp = SeparatingHyperplane { normal: h.normal.clone(), offset: h.offset.clone() };
            hp.separates(g, &s.point, limits)
        }
        _ => Ok(Check::fail("membership flag does not match the attached evidence")),
    }
}

fn verify_sic(g: &Graph, s: &SicJson, limits: EnumerationLimits) -> Result<Check> {
    if s.dimension == 0 || s.rank == 0 || s.rank > s.dimension {
        return Ok(Check::fail("invalid dimension/rank"));
    }
    let threshold = Rational::new(s.dimension as i64, s.rank as i64);
    if s.threshold != threshold {
        return Ok(Check::fail(format!("threshold {} should be {threshold}", s.threshold)));
    }
    let fc = match coloring_from_json(g, &s.fractional_coloring) {
        Ok(fc) => fc,
        Err(e) => return Ok(Check::fail(e.to_string())),
    };
    let check = verify_coloring_total(g, &fc, &s.fractional_coloring.total);
    if !check.is_valid() {
        return Ok(check);
    }
    if s.fractional_coloring.total != s.fractional_chromatic_number {
        return Ok(Check::fail("colouring weight differs from the stated fractional chromatic number"));
    }
    let clique = verify_fractional_clique(g, &s.fractional_clique, &s.fractional_chromatic_number, limits)?;
    if !clique.is_valid() {
        return Ok(clique);
    }
    if s.is_sic != (s.fractional_chromatic_number > threshold) {
        return Ok(Check::fail("is_sic disagrees with the fractional chromatic number"));
    }
    match (&s.decomposition, s.is_sic) {
        (Some(_), true) => Ok(Check::fail("S-IC verdict must not carry a decomposition")),
        (None, false) => Ok(Check::fail("non-S-IC verdict needs a decomposition of the uniform point")),
        (None, true) => Ok(Check::valid()),
        (Some(d), false) => {
            let dec = match decomposition_from_json(g, d) {
                Ok(dec) => dec,
                Err(e) => return Ok(Check::fail(e.to_string())),
            };
            let expected = uniform_point(g.n(), &threshold.recip());
            if dec.target != expected {
                return Ok(Check::fail("decomposition target is not the uniform point rank/dimension"));
            }
            Ok(verify_decomposition(g, &dec))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope::{sic_test, stab_membership};

    #[test]
    fn sic_round_trip_and_tamper() {
        let c5 = Graph::cycle(5).unwrap();
        let v = sic_test(&c5, 3, 1, Default::default()).unwrap();
        let cert = Certificate::sic(&c5, &v);
        let text = cert.to_json();
        let back = Certificate::from_json(&text).unwrap();
        assert_eq!(back, cert);
        assert!(verify_certificate(&c5, &back, Default::default()).unwrap().is_valid());

        let mut tampered = back.clone();
        if let CertificateBody::SicVerdict(s) = &mut tampered.body {
            s.is_sic = true;
        }
        assert!(!verify_certificate(&c5, &tampered, Default::default()).unwrap().is_valid());

        let k5 = Graph::complete(5).unwrap();
        let wrong = verify_certificate(&k5, &back, Default::default()).unwrap();
        assert!(wrong.failure().unwrap().contains("edges"));
    }

    #[test]
    fn stab_certificate_both_ways() {
        let c5 = Graph::cycle(5).unwrap();
        for value in [Rational::new(2, 5), Rational::new(1, 2)] {
            let p = uniform_point(5, &value);
            let m = stab_membership(&c5, &p, Default::default()).unwrap();
            let cert = Certificate::stab(&c5, &p, &m);
            let back = Certificate::from_json(&cert.to_json()).unwrap();
            assert!(verify_certificate(&c5, &back, Default::default()).unwrap().is_valid());
        }
    }

    #[test]
    fn kind_tag_is_flat() {
        let c5 = Graph::cycle(5).unwrap();
        let dec = ConvexDecomposition {
            terms: vec![(VertexSet::empty(), Rational::one())],
            target: uniform_point(5, &Rational::zero()),
        };
        let json: serde_json::Value = serde_json::from_str(&Certificate::decomposition(&c5, &dec).to_json()).unwrap();
        assert_eq!(json["kind"], "convex_decomposition");
        assert_eq!(json["terms"][0]["weight"], "1/1");
        assert_eq!(json["format"], FORMAT);
    }
}
