//! Exact clique number and chromatic number.

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

pub const DEFAULT_NODE_BUDGET: u64 = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchLimits {
    pub max_nodes: u64,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits { max_nodes: DEFAULT_NODE_BUDGET }
    }
}

/// A maximum clique, found by branch and bound.
pub fn maximum_clique(g: &Graph, limits: SearchLimits) -> Result<VertexSet> {
    let n = g.n();
    let mut search = CliqueSearch { g, best: Vec::new(), nodes: 0, limits };
    let mut p = FixedBitSet::with_capacity(n);
    p.insert_range(..);
    search.expand(&mut Vec::new(), p)?;
    let mut best = search.best;
    best.sort_unstable();
    Ok(VertexSet::from_sorted(best))
}

pub fn clique_number(g: &Graph, limits: SearchLimits) -> Result<usize> {
    maximum_clique(g, limits).map(|c| c.len())
}

struct CliqueSearch<'a> {
    g: &'a Graph,
    best: Vec<usize>,
    nodes: u64,
    limits: SearchLimits,
}

impl CliqueSearch<'_> {
    fn expand(&mut self, r: &mut Vec<usize>, mut p: FixedBitSet) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.limits.max_nodes {
            return Err(Error::ResourceLimit { what: "clique search nodes", cap: self.limits.max_nodes });
        }
        if r.len() > self.best.len() {
            self.best = r.clone();
        }
        while let Some(v) = p.ones().next() {
            if r.len() + p.count_ones(..) <= self.best.len() {
                return Ok(());
            }
            let mut np = p.clone();
            np.intersect_with(self.g.neighbors(v));
            r.push(v);
            self.expand(r, np)?;
            r.pop();
            p.set(v, false);
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChromaticResult {
    pub chromatic_number: usize,
    /// Colour of each vertex, in `0..chromatic_number`.
    pub coloring: Vec<usize>,
    pub nodes: u64,
}

pub fn is_proper_coloring(g: &Graph, coloring: &[usize]) -> bool {
    coloring.len() == g.n() && g.edges().all(|(u, v)| coloring[u] != coloring[v])
}

/// Exact chromatic number by DSATUR branch and bound.
///
/// A maximum clique is coloured first (symmetry breaking and the lower
/// bound); the greedy DSATUR colouring gives the initial upper bound.
/// Branching vertex: highest saturation, then highest degree, then lowest
/// index.
pub fn chromatic_number(g: &Graph, limits: SearchLimits) -> Result<ChromaticResult> {
    let clique = maximum_clique(g, limits)?;
    let mut state = DsaturState::new(g);
    for (c, &v) in clique.members().iter().enumerate() {
        state.assign(v, c);
    }
    let greedy = state.clone().greedy();
    let upper = greedy.iter().max().map_or(0, |&c| c + 1);
    let mut search = ColoringSearch { best: greedy, best_k: upper, lower: clique.len(), nodes: 0, limits };
    if search.best_k > search.lower {
        search.branch(&mut state)?;
    }
    debug_assert!(is_proper_coloring(g, &search.best));
    Ok(ChromaticResult { chromatic_number: search.best_k, coloring: search.best, nodes: search.nodes })
}

#[derive(Clone)]
struct DsaturState<'a> {
    g: &'a Graph,
    color: Vec<Option<usize>>,
    /// neighbour colour multiplicities per vertex
    counts: Vec<Vec<u32>>,
    saturation: Vec<usize>,
    used: usize,
    uncolored: usize,
}

impl<'a> DsaturState<'a> {
    fn new(g: &'a Graph) -> Self {
        let n = g.n();
        DsaturState {
            g,
            color: vec![None; n],
            counts: vec![Vec::new(); n],
            saturation: vec![0; n],
            used: 0,
            uncolored: n,
        }
    }

    fn assign(&mut self, v: usize, c: usize) {
        self.color[v] = Some(c);
        self.uncolored -= 1;
        self.used = self.used.max(c + 1);
        for u in self.g.neighbors(v).ones() {
            let counts = &mut self.counts[u];
            if counts.len() <= c {
                counts.resize(c + 1, 0);
            }
            counts[c] += 1;
            if counts[c] == 1 {
                self.saturation[u] += 1;
            }
        }
    }

    fn unassign(&mut self, v: usize, c: usize, previous_used: usize) {
        self.color[v] = None;
        self.uncolored += 1;
        self.used = previous_used;
        for u in self.g.neighbors(v).ones() {
            self.counts[u][c] -= 1;
            if self.counts[u][c] == 0 {
                self.saturation[u] -= 1;
            }
        }
    }

    fn select(&self) -> Option<usize> {
        (0..self.g.n())
            .filter(|&v| self.color[v].is_none())
            .max_by_key(|&v| (self.saturation[v], self.g.degree(v), std::cmp::Reverse(v)))
    }

    fn allowed(&self, v: usize, c: usize) -> bool {
        self.counts[v].get(c).is_none_or(|&k| k == 0)
    }

    fn greedy(mut self) -> Vec<usize> {
        while let Some(v) = self.select() {
            let c = (0..).find(|&c| self.allowed(v, c)).expect("some colour is free");
            self.assign(v, c);
        }
        self.color.into_iter().map(|c| c.expect("all coloured")).collect()
    }
}

struct ColoringSearch {
    best: Vec<usize>,
    best_k: usize,
    lower: usize,
    nodes: u64,
    limits: SearchLimits,
}

impl ColoringSearch {
    fn branch(&mut self, state: &mut DsaturState<'_>) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.limits.max_nodes {
            return Err(Error::ResourceLimit { what: "colouring search nodes", cap: self.limits.max_nodes });
        }
        let Some(v) = state.select() else {
            if state.used < self.best_k {
                self.best_k = state.used;
                self.best = state.color.iter().map(|c| c.expect("complete")).collect();
            }
            return Ok(());
        };
        // a fresh colour is only tried while it stays below the incumbent
        let limit = (state.used + 1).min(self.best_k - 1);
        for c in 0..limit {
            if !state.allowed(v, c) {
                continue;
            }
            let previous_used = state.used;
            state.assign(v, c);
            self.branch(state)?;
            state.unassign(v, c, previous_used);
            if self.best_k <= self.lower {
                return Ok(());
            }
        }
        Ok(())
    }
}
