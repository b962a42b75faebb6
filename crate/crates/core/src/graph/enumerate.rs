//! Independent-set and clique enumeration.
//!
//! Maximal sets come from Bron–Kerbosch with Tomita pivoting, run on the
//! complement for independent sets. Every listing is sorted lexicographically
//! by its (ascending) member list, so output order never depends on the
//! search order.

use fixedbitset::FixedBitSet;

use super::{Graph, VertexSet};
use crate::error::{Error, Result};

pub const DEFAULT_ENUMERATION_CAP: u64 = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerationLimits {
    pub max_sets: u64,
}

impl Default for EnumerationLimits {
    fn default() -> Self {
        EnumerationLimits { max_sets: DEFAULT_ENUMERATION_CAP }
    }
}

/// All independent sets (including the empty set), or only the
/// inclusion-maximal ones.
pub fn enumerate_independent_sets(g: &Graph, maximal_only: bool, limits: EnumerationLimits) -> Result<Vec<VertexSet>> {
    if maximal_only {
        let co = g.complement();
        bron_kerbosch(co.adjacency_rows(), limits, "maximal independent sets")
    } else {
        all_independent_sets(g, limits)
    }
}

/// All inclusion-maximal cliques.
pub fn enumerate_maximal_cliques(g: &Graph, limits: EnumerationLimits) -> Result<Vec<VertexSet>> {
    bron_kerbosch(g.adjacency_rows(), limits, "maximal cliques")
}

fn all_independent_sets(g: &Graph, limits: EnumerationLimits) -> Result<Vec<VertexSet>> {
    let n = g.n();
    let mut out = Vec::new();
    let mut current = Vec::new();
    let mut candidates = FixedBitSet::with_capacity(n);
    candidates.insert_range(..);
    // prefix-first DFS over increasing vertices already yields lexicographic order
    extend_independent(g, &mut current, &candidates, 0, &mut out, limits)?;
    Ok(out)
}

fn extend_independent(
    g: &Graph,
    current: &mut Vec<usize>,
    candidates: &FixedBitSet,
    start: usize,
    out: &mut Vec<VertexSet>,
    limits: EnumerationLimits,
) -> Result<()> {
    push_capped(out, VertexSet::from_sorted(current.clone()), limits, "independent sets")?;
    for v in candidates.ones().filter(|&v| v >= start) {
        let mut next = candidates.clone();
        next.difference_with(g.neighbors(v));
        current.push(v);
        extend_independent(g, current, &next, v + 1, out, limits)?;
        current.pop();
    }
    Ok(())
}

fn push_capped(out: &mut Vec<VertexSet>, set: VertexSet, limits: EnumerationLimits, what: &'static str) -> Result<()> {
    if out.len() as u64 >= limits.max_sets {
        return Err(Error::ResourceLimit { what, cap: limits.max_sets });
    }
    out.push(set);
    Ok(())
}

/// Maximal cliques of the graph whose adjacency rows are `adj`.
fn bron_kerbosch(adj: &[FixedBitSet], limits: EnumerationLimits, what: &'static str) -> Result<Vec<VertexSet>> {
    let n = adj.len();
    let mut p = FixedBitSet::with_capacity(n);
    p.insert_range(..);
    let x = FixedBitSet::with_capacity(n);
    let mut out = Vec::new();
    let mut r = Vec::new();
    bk_pivot(adj, &mut r, p, x, &mut out, limits, what)?;
    out.sort();
    Ok(out)
}

fn bk_pivot(
    adj: &[FixedBitSet],
    r: &mut Vec<usize>,
    mut p: FixedBitSet,
    mut x: FixedBitSet,
    out: &mut Vec<VertexSet>,
    limits: EnumerationLimits,
    what: &'static str,
) -> Result<()> {
    if p.is_clear() {
        if x.is_clear() {
            let mut members = r.clone();
            members.sort_unstable();
            push_capped(out, VertexSet::from_sorted(members), limits, what)?;
        }
        return Ok(());
    }
    let pivot = p
        .ones()
        .chain(x.ones())
        .max_by_key(|&u| (p.intersection(&adj[u]).count(), std::cmp::Reverse(u)))
        .expect("p is non-empty");
    let mut branch = p.clone();
    branch.difference_with(&adj[pivot]);
    for v in branch.ones() {
        let mut np = p.clone();
        np.intersect_with(&adj[v]);
        let mut nx = x.clone();
        nx.intersect_with(&adj[v]);
        r.push(v);
        bk_pivot(adj, r, np, nx, out, limits, what)?;
        r.pop();
        p.set(v, false);
        x.insert(v);
    }
    Ok(())
}
