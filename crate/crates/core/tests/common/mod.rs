//! Slow but obviously correct reference computations shared by the
//! integration tests.

#![allow(dead_code, clippy::needless_range_loop)]

use ksgraph::lp::{Constraint, LinearProgram, Sense};
use ksgraph::{Graph, Rational};
use rand::Rng;

/// Graph from an upper-triangle edge mask in row-major order.
pub fn graph_from_mask(n: usize, mask: &[bool]) -> Graph {
    let mut g = Graph::empty(n).unwrap();
    let mut k = 0;
    for u in 0..n {
        for v in u + 1..n {
            if mask[k] {
                g.add_edge(u, v).unwrap();
            }
            k += 1;
        }
    }
    g
}

pub fn random_graph<R: Rng>(rng: &mut R, max_n: usize) -> Graph {
    let n = rng.gen_range(1..=max_n);
    let p: f64 = rng.gen_range(0.1..0.9);
    let mask: Vec<bool> = (0..n * (n - 1) / 2).map(|_| rng.gen_bool(p)).collect();
    graph_from_mask(n, &mask)
}

fn subset_is_independent(g: &Graph, mask: u32) -> bool {
    (0..g.n()).all(|u| mask >> u & 1 == 0 || (u + 1..g.n()).all(|v| mask >> v & 1 == 0 || !g.is_adjacent(u, v)))
}

fn subset_is_clique(g: &Graph, mask: u32) -> bool {
    (0..g.n()).all(|u| mask >> u & 1 == 0 || (u + 1..g.n()).all(|v| mask >> v & 1 == 0 || g.is_adjacent(u, v)))
}

/// Independent sets as bitmasks, by scanning all subsets.
pub fn brute_independent_sets(g: &Graph) -> Vec<u32> {
    assert!(g.n() <= 26);
    (0..1u32 << g.n()).filter(|&m| subset_is_independent(g, m)).collect()
}

pub fn brute_maximal_independent_sets(g: &Graph) -> Vec<u32> {
    let all = brute_independent_sets(g);
    all.iter()
        .copied()
        .filter(|&m| (0..g.n()).all(|v| m >> v & 1 == 1 || !subset_is_independent(g, m | 1 << v)))
        .collect()
}

pub fn brute_maximal_cliques(g: &Graph) -> Vec<u32> {
    (1..1u32 << g.n())
        .filter(|&m| subset_is_clique(g, m))
        .filter(|&m| (0..g.n()).all(|v| m >> v & 1 == 1 || !subset_is_clique(g, m | 1 << v)))
        .collect()
}

pub fn brute_clique_number(g: &Graph) -> usize {
    (0..1u32 << g.n()).filter(|&m| subset_is_clique(g, m)).map(|m| m.count_ones() as usize).max().unwrap()
}

fn colorable(g: &Graph, k: usize, colors: &mut Vec<usize>) -> bool {
    let v = colors.len();
    if v == g.n() {
        return true;
    }
    for c in 0..k {
        if (0..v).all(|u| !g.is_adjacent(u, v) || colors[u] != c) {
            colors.push(c);
            if colorable(g, k, colors) {
                return true;
            }
            colors.pop();
        }
    }
    false
}

/// Smallest `k` admitting a proper colouring, by plain backtracking.
pub fn brute_chromatic_number(g: &Graph) -> usize {
    (1..=g.n()).find(|&k| colorable(g, k, &mut Vec::new())).unwrap()
}

/// Solves `A x = b` over the rationals; `None` if singular.
fn solve_square(mut a: Vec<Vec<Rational>>, mut b: Vec<Rational>) -> Option<Vec<Rational>> {
    let n = b.len();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        b.swap(col, pivot);
        let inv = a[col][col].recip();
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = &a[r][col] * &inv;
                for c in col..n {
                    let delta = &f * &a[col][c];
                    a[r][c] = &a[r][c] - &delta;
                }
                let delta = &f * &b[col];
                b[r] = &b[r] - &delta;
            }
        }
    }
    Some((0..n).map(|i| &b[i] / &a[i][i]).collect())
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = combinations(n - 1, k);
    for mut c in combinations(n - 1, k - 1) {
        c.push(n - 1);
        out.push(c);
    }
    out
}

/// Minimum of a bounded LP by enumerating every basic solution: each choice
/// of `num_vars` tight rows among the constraints and `x >= 0`. `None` when
/// infeasible.
pub fn vertex_enumeration_min(lp: &LinearProgram) -> Option<Rational> {
    let n = lp.num_vars();
    let mut rows: Vec<(Vec<Rational>, Rational)> =
        lp.constraints().iter().map(|c| (c.coeffs.clone(), c.rhs.clone())).collect();
    for j in 0..n {
        let mut e = vec![Rational::zero(); n];
        e[j] = Rational::one();
        rows.push((e, Rational::zero()));
    }
    let feasible = |x: &[Rational]| {
        x.iter().all(|v| !v.is_negative()) && lp.constraints().iter().all(|c: &Constraint| c.is_satisfied(x))
    };
    let mut best: Option<Rational> = None;
    for pick in combinations(rows.len(), n) {
        let a = pick.iter().map(|&i| rows[i].0.clone()).collect();
        let b = pick.iter().map(|&i| rows[i].1.clone()).collect();
        if let Some(x) = solve_square(a, b) {
            if feasible(&x) {
                let value = lp.objective_value(&x);
                if best.as_ref().is_none_or(|b| value < *b) {
                    best = Some(value);
                }
            }
        }
    }
    best
}

/// Random LP on `n <= 3` variables with small integer data and the box
/// `x <= 10`, so it is bounded whenever feasible.
pub fn random_bounded_lp<R: Rng>(rng: &mut R) -> LinearProgram {
    let n = rng.gen_range(1..=3);
    let int = |rng: &mut R, lo: i64, hi: i64| Rational::from_integer(rng.gen_range(lo..=hi));
    let mut lp = LinearProgram::new((0..n).map(|_| int(rng, -5, 5)).collect()).unwrap();
    for _ in 0..rng.gen_range(1..=3) {
        let coeffs = (0..n).map(|_| int(rng, -4, 4)).collect();
        let sense = [Sense::Le, Sense::Ge, Sense::Eq][rng.gen_range(0..3)];
        lp.add_constraint(coeffs, sense, int(rng, -6, 12)).unwrap();
    }
    for j in 0..n {
        let mut e = vec![Rational::zero(); n];
        e[j] = Rational::one();
        lp.add_constraint(e, Sense::Le, Rational::from_integer(10)).unwrap();
    }
    lp
}
