//! Orthogonality graphs: one vertex per projector, an edge between every pair
//! of orthogonal projectors.
//!
//! Vertices are `0..n` internally. Every file format and every listing that
//! mirrors published vertex labels is 1-based; the conversion happens in the
//! I/O layer ([`format`], [`crate::polytope::certificate`]).

pub mod catalog;
pub mod enumerate;
pub mod format;

use std::fmt;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::Rational;

pub use catalog::{catalog_get, catalog_names, CatalogEntry, Known, Metadata, Provenance};
pub use enumerate::{
    enumerate_independent_sets, enumerate_maximal_cliques, EnumerationLimits, DEFAULT_ENUMERATION_CAP,
};

/// Simple undirected graph with a symmetric, irreflexive adjacency relation.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    adjacency: Vec<FixedBitSet>,
    labels: Option<Vec<String>>,
}

impl Graph {
    /// Edgeless graph on `n >= 1` vertices.
    pub fn empty(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidGraph("a graph needs at least one vertex".into()));
        }
        Ok(Graph { adjacency: (0..n).map(|_| FixedBitSet::with_capacity(n)).collect(), labels: None })
    }

    /// Builds a graph from 0-based edges. Repeated edges are merged.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n)?;
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Result<Self> {
        let mut g = Graph::empty(n)?;
        for u in 0..n {
            for v in u + 1..n {
                g.set_edge(u, v);
            }
        }
        Ok(g)
    }

    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidGraph(format!("a cycle needs at least 3 vertices, got {n}")));
        }
        let mut g = Graph::empty(n)?;
        for u in 0..n {
            g.set_edge(u, (u + 1) % n);
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(|row| row.count_ones(..)).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adjacency.iter().enumerate().flat_map(|(u, row)| row.ones().filter(move |&v| v > u).map(move |v| (u, v)))
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::InvalidGraph(format!("self-loop at vertex {u}")));
        }
        self.set_edge(u, v);
        Ok(())
    }

    fn set_edge(&mut self, u: usize, v: usize) {
        self.adjacency[u].insert(v);
        self.adjacency[v].insert(u);
    }

    /// Adjacency test. Out-of-range vertices are reported as non-adjacent.
    pub fn is_adjacent(&self, u: usize, v: usize) -> bool {
        u < self.n() && v < self.n() && self.adjacency[u].contains(v)
    }

    pub fn neighbors(&self, v: usize) -> &FixedBitSet {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].count_ones(..)
    }

    pub(crate) fn adjacency_rows(&self) -> &[FixedBitSet] {
        &self.adjacency
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n() {
            Ok(())
        } else {
            Err(Error::InvalidVertex { vertex: v, n: self.n() })
        }
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, v: usize) -> Option<&str> {
        self.labels.as_ref().and_then(|l| l.get(v)).map(String::as_str).filter(|s| !s.is_empty())
    }

    pub fn set_label(&mut self, v: usize, label: impl Into<String>) -> Result<()> {
        self.check_vertex(v)?;
        let n = self.n();
        let labels = self.labels.get_or_insert_with(|| vec![String::new(); n]);
        labels[v] = label.into();
        Ok(())
    }

    pub fn complement(&self) -> Graph {
        let n = self.n();
        let adjacency = self
            .adjacency
            .iter()
            .enumerate()
            .map(|(u, row)| {
                let mut c = row.clone();
                c.toggle_range(..);
                c.set(u, false);
                c
            })
            .collect::<Vec<_>>();
        debug_assert_eq!(adjacency.len(), n);
        Graph { adjacency, labels: self.labels.clone() }
    }

    /// Disjoint union of `self` and `other` plus every cross edge. Vertices of
    /// `other` are shifted by `self.n()`.
    pub fn join(&self, other: &Graph) -> Graph {
        let (n1, n2) = (self.n(), other.n());
        let mut g = Graph::empty(n1 + n2).expect("n1 + n2 >= 2");
        for (u, v) in self.edges() {
            g.set_edge(u, v);
        }
        for (u, v) in other.edges() {
            g.set_edge(n1 + u, n1 + v);
        }
        for u in 0..n1 {
            for v in 0..n2 {
                g.set_edge(u, n1 + v);
            }
        }
        if self.labels.is_some() || other.labels.is_some() {
            let left = self.labels.clone().unwrap_or_else(|| vec![String::new(); n1]);
            let right = other.labels.clone().unwrap_or_else(|| vec![String::new(); n2]);
            g.labels = Some(left.into_iter().chain(right).collect());
        }
        g
    }

    /// Graph with vertex `v` renamed to `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Graph> {
        let n = self.n();
        if perm.len() != n {
            return Err(Error::Shape(format!("permutation of length {} for {n} vertices", perm.len())));
        }
        let mut seen = vec![false; n];
        for &p in perm {
            if p >= n || std::mem::replace(&mut seen[p], true) {
                return Err(Error::Domain("not a permutation".into()));
            }
        }
        let mut g = Graph::empty(n)?;
        for (u, v) in self.edges() {
            g.set_edge(perm[u], perm[v]);
        }
        Ok(g)
    }

    /// True iff `s` is an independent set. Errors on out-of-range members.
    pub fn is_independent(&self, s: &VertexSet) -> Result<bool> {
        self.check_members(s)?;
        let m = s.members();
        Ok(m.iter().enumerate().all(|(i, &u)| m[i + 1..].iter().all(|&v| !self.is_adjacent(u, v))))
    }

    /// True iff `s` is a clique. Errors on out-of-range members.
    pub fn is_clique(&self, s: &VertexSet) -> Result<bool> {
        self.check_members(s)?;
        let m = s.members();
        Ok(m.iter().enumerate().all(|(i, &u)| m[i + 1..].iter().all(|&v| self.is_adjacent(u, v))))
    }

    fn check_members(&self, s: &VertexSet) -> Result<()> {
        s.members().iter().try_for_each(|&v| self.check_vertex(v))
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph").field("n", &self.n()).field("edges", &self.edges().collect::<Vec<_>>()).finish()
    }
}

/// Free-function form of [`Graph::is_independent`].
pub fn is_independent(g: &Graph, s: &VertexSet) -> Result<bool> {
    g.is_independent(s)
}

pub fn join(g1: &Graph, g2: &Graph) -> Graph {
    g1.join(g2)
}

pub fn complement(g: &Graph) -> Graph {
    g.complement()
}

/// Strictly increasing list of vertex indices.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct VertexSet(Vec<usize>);

impl VertexSet {
    /// Sorts `members`; rejects duplicates.
    pub fn new(mut members: Vec<usize>) -> Result<Self> {
        members.sort_unstable();
        if let Some(w) = members.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::Domain(format!("vertex {} listed twice", w[0])));
        }
        Ok(VertexSet(members))
    }

    /// Like [`VertexSet::new`], additionally checking every member is `< n`.
    pub fn new_in(members: Vec<usize>, n: usize) -> Result<Self> {
        let s = VertexSet::new(members)?;
        if let Some(&v) = s.0.iter().find(|&&v| v >= n) {
            return Err(Error::InvalidVertex { vertex: v, n });
        }
        Ok(s)
    }

    pub fn empty() -> Self {
        VertexSet(Vec::new())
    }

    /// Trusted constructor for already strictly increasing input.
    pub(crate) fn from_sorted(members: Vec<usize>) -> Self {
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        VertexSet(members)
    }

    pub fn members(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn without(&self, v: usize) -> VertexSet {
        VertexSet(self.0.iter().copied().filter(|&u| u != v).collect())
    }

    pub fn incidence(&self, n: usize) -> Result<IncidenceVector> {
        IncidenceVector::from_set(self, n)
    }

    /// Members shifted to 1-based labels.
    pub fn to_one_based(&self) -> Vec<usize> {
        self.0.iter().map(|v| v + 1).collect()
    }

    pub fn from_one_based(labels: &[usize], n: usize) -> Result<Self> {
        let members = labels
            .iter()
            .map(|&l| if l == 0 || l > n { Err(Error::InvalidVertex { vertex: l, n }) } else { Ok(l - 1) })
            .collect::<Result<Vec<_>>>()?;
        VertexSet::new(members)
    }
}

impl TryFrom<Vec<usize>> for VertexSet {
    type Error = Error;
    fn try_from(value: Vec<usize>) -> Result<Self> {
        VertexSet::new(value)
    }
}

impl From<VertexSet> for Vec<usize> {
    fn from(value: VertexSet) -> Self {
        value.0
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(&self.0).finish()
    }
}

/// Length-`n` rational point; `0/1` entries when built from a vertex set.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct IncidenceVector(Vec<Rational>);

impl IncidenceVector {
    pub fn zeros(n: usize) -> Self {
        IncidenceVector(vec![Rational::zero(); n])
    }

    pub fn uniform(n: usize, value: Rational) -> Self {
        IncidenceVector(vec![value; n])
    }

    pub fn from_set(s: &VertexSet, n: usize) -> Result<Self> {
        let mut v = IncidenceVector::zeros(n);
        for &k in s.members() {
            if k >= n {
                return Err(Error::InvalidVertex { vertex: k, n });
            }
            v.0[k] = Rational::one();
        }
        Ok(v)
    }

    pub fn from_entries(entries: Vec<Rational>) -> Self {
        IncidenceVector(entries)
    }

    pub fn entries(&self) -> &[Rational] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}
