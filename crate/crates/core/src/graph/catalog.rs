//! Built-in graphs with documented invariants.
//!
//! Fixed entries: `C5`, `G_YO`, `J_GYO_GYO`. Families: `K<n>` / `K_<n>`
//! (complete graphs), `C<n>` (cycles, n >= 3) and `odd_cycle_<n>` (odd n >= 3).

use serde::Serialize;

use super::Graph;
use crate::error::{Error, Result};
use crate::rational::Rational;

/// The thirteen Yu–Oh rays in C^3 (integer, unnormalised), ordered by the
/// 1-based vertex labels used for G_YO: the three axes, the six face
/// diagonals, then the four body diagonals.
pub const YU_OH_RAYS: [[i64; 3]; 13] = [
    [1, 0, 0],
    [0, 1, 0],
    [0, 0, 1],
    [0, 1, -1],
    [1, 0, -1],
    [1, -1, 0],
    [0, 1, 1],
    [1, 0, 1],
    [1, 1, 0],
    [-1, 1, 1],
    [1, -1, 1],
    [1, 1, -1],
    [1, 1, 1],
];

/// Orthogonal pairs of [`YU_OH_RAYS`], 0-based. Regenerated and compared in
/// the tests below.
#[rustfmt::skip]
const YU_OH_EDGES: [(usize, usize); 24] = [
    (0, 1), (0, 2), (0, 3), (0, 6), (1, 2), (1, 4), (1, 7), (2, 5),
    (2, 8), (3, 6), (3, 9), (3, 12), (4, 7), (4, 10), (4, 12), (5, 8),
    (5, 11), (5, 12), (6, 10), (6, 11), (7, 9), (7, 11), (8, 9), (8, 10),
];

const YU_OH_LABELS: [&str; 13] = ["z1", "z2", "z3", "y1-", "y2-", "y3-", "y1+", "y2+", "y3+", "h1", "h2", "h3", "h0"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    /// Reported in the literature; checked against computation by the tests.
    Published,
    /// Follows from a closed form or a direct computation.
    Computed,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Known<T> {
    pub value: T,
    pub provenance: Provenance,
}

fn published<T>(value: T) -> Option<Known<T>> {
    Some(Known { value, provenance: Provenance::Published })
}

fn computed<T>(value: T) -> Option<Known<T>> {
    Some(Known { value, provenance: Provenance::Computed })
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Metadata {
    pub clique_number: Option<Known<u64>>,
    pub chromatic_number: Option<Known<u64>>,
    pub fractional_chromatic_number: Option<Known<Rational>>,
    /// Smallest dimension with a faithful rank-1 realization.
    pub realization_dimension: Option<Known<u64>>,
}

#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub name: String,
    pub graph: Graph,
    pub metadata: Metadata,
}

const FIXED_NAMES: [&str; 3] = ["C5", "G_YO", "J_GYO_GYO"];
const FAMILY_PATTERNS: [&str; 3] = ["K<n>", "C<n>", "odd_cycle_<n>"];

/// Names and family patterns accepted by [`catalog_get`].
pub fn catalog_names() -> Vec<String> {
    FIXED_NAMES.iter().chain(FAMILY_PATTERNS.iter()).map(|s| s.to_string()).collect()
}

pub fn yu_oh_graph() -> Graph {
    let mut g = Graph::from_edges(13, &YU_OH_EDGES).expect("static edge list is valid");
    for (v, label) in YU_OH_LABELS.iter().enumerate() {
        g.set_label(v, *label).expect("13 labels");
    }
    g
}

pub fn catalog_get(name: &str) -> Result<CatalogEntry> {
    let entry = |graph: Graph, metadata: Metadata| CatalogEntry { name: name.to_string(), graph, metadata };
    match name {
        "G_YO" => Ok(entry(
            yu_oh_graph(),
            Metadata {
                clique_number: computed(3),
                chromatic_number: published(4),
                fractional_chromatic_number: published(Rational::new(35, 11)),
                realization_dimension: published(3),
            },
        )),
        "J_GYO_GYO" => {
            let g = yu_oh_graph();
            Ok(entry(
                g.join(&g),
                Metadata {
                    clique_number: published(6),
                    chromatic_number: published(8),
                    fractional_chromatic_number: published(Rational::new(70, 11)),
                    realization_dimension: published(6),
                },
            ))
        }
        _ => family(name)
            .map(|(graph, metadata)| entry(graph, metadata))
            .ok_or_else(|| Error::NotFound { name: name.to_string(), available: catalog_names().join(", ") }),
    }
}

fn family(name: &str) -> Option<(Graph, Metadata)> {
    if let Some(n) = name.strip_prefix("K_").or_else(|| name.strip_prefix('K')).and_then(parse_size) {
        let g = Graph::complete(n).ok()?;
        let n = n as u64;
        return Some((
            g,
            Metadata {
                clique_number: computed(n),
                chromatic_number: computed(n),
                fractional_chromatic_number: computed(Rational::from_integer(n as i64)),
                realization_dimension: computed(n),
            },
        ));
    }
    let (n, odd_only) = if let Some(n) = name.strip_prefix("odd_cycle_").and_then(parse_size) {
        (n, true)
    } else {
        (name.strip_prefix('C').and_then(parse_size)?, false)
    };
    if n < 3 || (odd_only && n % 2 == 0) {
        return None;
    }
    Some((Graph::cycle(n).ok()?, cycle_metadata(n)))
}

fn parse_size(s: &str) -> Option<usize> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok().filter(|&n| n >= 1)
}

fn cycle_metadata(n: usize) -> Metadata {
    let (omega, chi, chi_f) = if n == 3 {
        (3, 3, Rational::from_integer(3))
    } else if n.is_multiple_of(2) {
        (2, 2, Rational::from_integer(2))
    } else {
        // odd cycle: n colours, (n-1)/2 per vertex
        (2, 3, Rational::new(n as i64, (n as i64 - 1) / 2))
    };
    Metadata {
        clique_number: computed(omega),
        chromatic_number: computed(chi),
        fractional_chromatic_number: computed(chi_f),
        realization_dimension: if n == 5 { published(3) } else { None },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::VertexSet;

    fn dot(a: &[i64; 3], b: &[i64; 3]) -> i64 {
        a.iter().zip(b).map(|(x, y)| x * y).sum()
    }

    #[test]
    fn frozen_edges_match_ray_orthogonality() {
        let mut generated = Vec::new();
        for (u, a) in YU_OH_RAYS.iter().enumerate() {
            for (v, b) in YU_OH_RAYS.iter().enumerate().skip(u + 1) {
                if dot(a, b) == 0 {
                    generated.push((u, v));
                }
            }
        }
        assert_eq!(generated, YU_OH_EDGES.to_vec());
        assert_eq!(yu_oh_graph().edges().collect::<Vec<_>>(), generated);
    }

    #[test]
    fn published_decomposition_sets_are_independent() {
        let g = yu_oh_graph();
        let listed: [&[usize]; 13] = [
            &[1, 5, 6, 10],
            &[1, 5, 9, 12],
            &[1, 6, 8, 11],
            &[1, 10, 11, 12, 13],
            &[2, 4, 6, 11],
            &[2, 4, 9, 12],
            &[2, 6, 7, 10],
            &[2, 7, 9, 13],
            &[2, 10, 11, 12, 13],
            &[3, 4, 8, 11],
            &[3, 7, 8, 13],
            &[3, 10, 11, 12, 13],
            &[4, 5, 9, 12],
        ];
        for labels in listed {
            let s = VertexSet::from_one_based(labels, 13).unwrap();
            assert!(g.is_independent(&s).unwrap(), "{labels:?}");
        }
    }

    #[test]
    fn lookup() {
        assert_eq!(catalog_get("C5").unwrap().graph, Graph::cycle(5).unwrap());
        assert_eq!(catalog_get("K_4").unwrap().graph, Graph::complete(4).unwrap());
        assert_eq!(catalog_get("K3").unwrap().graph, Graph::complete(3).unwrap());
        assert_eq!(catalog_get("odd_cycle_7").unwrap().graph, Graph::cycle(7).unwrap());
        assert!(catalog_get("odd_cycle_6").is_err());
        let j = catalog_get("J_GYO_GYO").unwrap();
        assert_eq!(j.graph.n(), 26);
        assert_eq!(j.graph.edge_count(), 2 * 24 + 169);
        match catalog_get("nope") {
            Err(Error::NotFound { available, .. }) => assert!(available.contains("G_YO")),
            other => panic!("{other:?}"),
        }
    }
}
