//! Exact linear programming over [`Rational`].
//!
//! Dense two-phase tableau simplex with Bland's rule. Problems are
//! `minimize c·x  s.t.  A x (<=|>=|=) b,  x >= 0`. Every optimal solution
//! carries dual values; every infeasible one carries a Farkas ray, so both
//! outcomes are independently checkable.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sense {
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = ">=")]
    Ge,
    #[serde(rename = "=")]
    Eq,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Constraint {
    pub coeffs: Vec<Rational>,
    pub sense: Sense,
    pub rhs: Rational,
}

impl Constraint {
    pub fn lhs(&self, x: &[Rational]) -> Rational {
        self.coeffs.iter().zip(x).map(|(a, x)| a * x).sum()
    }

    pub fn is_satisfied(&self, x: &[Rational]) -> bool {
        let lhs = self.lhs(x);
        match self.sense {
            Sense::Le => lhs <= self.rhs,
            Sense::Ge => lhs >= self.rhs,
            Sense::Eq => lhs == self.rhs,
        }
    }
}

/// Minimisation problem over nonnegative variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearProgram {
    objective: Vec<Rational>,
    constraints: Vec<Constraint>,
}

impl LinearProgram {
    pub fn new(objective: Vec<Rational>) -> Result<Self> {
        if objective.is_empty() {
            return Err(Error::Shape("a linear program needs at least one variable".into()));
        }
        Ok(LinearProgram { objective, constraints: Vec::new() })
    }

    pub fn add_constraint(&mut self, coeffs: Vec<Rational>, sense: Sense, rhs: Rational) -> Result<()> {
        if coeffs.len() != self.num_vars() {
            return Err(Error::Shape(format!(
                "constraint row has {} coefficients, expected {}",
                coeffs.len(),
                self.num_vars()
            )));
        }
        self.constraints.push(Constraint { coeffs, sense, rhs });
        Ok(())
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn objective(&self) -> &[Rational] {
        &self.objective
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    pub fn objective_value(&self, x: &[Rational]) -> Rational {
        self.objective.iter().zip(x).map(|(c, x)| c * x).sum()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LpSolution {
    pub status: LpStatus,
    /// Optimal point, or the last feasible basic point for an unbounded problem.
    /// Empty when infeasible.
    pub primal: Vec<Rational>,
    /// Present iff `status == Optimal`.
    pub objective: Option<Rational>,
    /// One value per constraint; sign convention of the standard dual
    /// (`>=` rows nonnegative, `<=` rows nonpositive, `=` rows free).
    pub duals: Option<Vec<Rational>>,
    /// For infeasible problems: `y` with the dual sign convention,
    /// `Aᵀy <= 0` componentwise and `b·y > 0`.
    pub farkas: Option<Vec<Rational>>,
}

/// Exact feasibility check of `point` (including `x >= 0`).
pub fn check_feasible(lp: &LinearProgram, point: &[Rational]) -> Result<bool> {
    if point.len() != lp.num_vars() {
        return Err(Error::Shape(format!("point has {} entries, expected {}", point.len(), lp.num_vars())));
    }
    Ok(point.iter().all(|x| !x.is_negative()) && lp.constraints.iter().all(|c| c.is_satisfied(point)))
}

/// True iff `y` has the dual sign pattern for the constraints of `lp`.
pub fn dual_signs_ok(lp: &LinearProgram, y: &[Rational]) -> bool {
    y.len() == lp.constraints.len()
        && lp.constraints.iter().zip(y).all(|(c, y)| match c.sense {
            Sense::Ge => !y.is_negative(),
            Sense::Le => !y.is_positive(),
            Sense::Eq => true,
        })
}

/// `Aᵀ y`.
pub fn transpose_apply(lp: &LinearProgram, y: &[Rational]) -> Vec<Rational> {
    (0..lp.num_vars())
        .map(|j| lp.constraints.iter().zip(y).filter(|(_, y)| !y.is_zero()).map(|(c, y)| &c.coeffs[j] * y).sum())
        .collect()
}

pub fn solve_lp(lp: &LinearProgram) -> Result<LpSolution> {
    for c in &lp.constraints {
        if c.coeffs.len() != lp.num_vars() {
            return Err(Error::Shape("ragged constraint matrix".into()));
        }
    }
    // drop exact duplicate rows; they get dual 0
    let mut kept: Vec<usize> = Vec::new();
    for (i, c) in lp.constraints.iter().enumerate() {
        if !kept.iter().any(|&k| lp.constraints[k] == *c) {
            kept.push(i);
        }
    }
    let rows: Vec<&Constraint> = kept.iter().map(|&i| &lp.constraints[i]).collect();
    let mut tableau = Tableau::build(lp.num_vars(), &rows);
    let outcome = tableau.run(&lp.objective);

    let expand = |reduced: Vec<Rational>| {
        let mut full = vec![Rational::zero(); lp.constraints.len()];
        for (k, &i) in kept.iter().enumerate() {
            full[i] = reduced[k].clone();
        }
        full
    };

    Ok(match outcome {
        Outcome::Infeasible { farkas } => LpSolution {
            status: LpStatus::Infeasible,
            primal: Vec::new(),
            objective: None,
            duals: None,
            farkas: Some(expand(farkas)),
        },
        Outcome::Unbounded { primal } => {
            LpSolution { status: LpStatus::Unbounded, primal, objective: None, duals: None, farkas: None }
        }
        Outcome::Optimal { primal, duals } => {
            let objective = lp.objective_value(&primal);
            LpSolution {
                status: LpStatus::Optimal,
                primal,
                objective: Some(objective),
                duals: Some(expand(duals)),
                farkas: None,
            }
        }
    })
}

enum Outcome {
    Optimal { primal: Vec<Rational>, duals: Vec<Rational> },
    Infeasible { farkas: Vec<Rational> },
    Unbounded { primal: Vec<Rational> },
}

/// Columns: structural `0..n`, one slack per inequality row, then one
/// artificial per row. Artificial columns start as the identity, so they
/// always hold `B⁻¹`.
struct Tableau {
    n: usize,
    /// per row: +1 or -1, the factor applied to make the rhs nonnegative
    flip: Vec<bool>,
    cells: Vec<Vec<Rational>>,
    rhs: Vec<Rational>,
    basis: Vec<usize>,
    first_artificial: usize,
}

impl Tableau {
    fn build(n: usize, rows: &[&Constraint]) -> Self {
        let m = rows.len();
        let slacks = rows.iter().filter(|c| c.sense != Sense::Eq).count();
        let first_artificial = n + slacks;
        let width = first_artificial + m;
        let mut cells = Vec::with_capacity(m);
        let mut rhs = Vec::with_capacity(m);
        let mut flip = Vec::with_capacity(m);
        let mut slack = n;
        for (i, c) in rows.iter().enumerate() {
            let mut row = vec![Rational::zero(); width];
            row[..n].clone_from_slice(&c.coeffs);
            match c.sense {
                Sense::Le => {
                    row[slack] = Rational::one();
                    slack += 1;
                }
                Sense::Ge => {
                    row[slack] = -Rational::one();
                    slack += 1;
                }
                Sense::Eq => {}
            }
            let negate = c.rhs.is_negative();
            let mut b = c.rhs.clone();
            if negate {
                for x in row.iter_mut().take(first_artificial) {
                    *x = -&*x;
                }
                b = -b;
            }
            row[first_artificial + i] = Rational::one();
            cells.push(row);
            rhs.push(b);
            flip.push(negate);
        }
        Tableau { n, flip, cells, rhs, basis: (first_artificial..first_artificial + m).collect(), first_artificial }
    }

    fn width(&self) -> usize {
        self.first_artificial + self.cells.len()
    }

    fn reduced_costs(&self, cost: &[Rational]) -> (Vec<Rational>, Rational) {
        let zero = Rational::zero();
        let cost_of = |j: usize| cost.get(j).unwrap_or(&zero);
        let mut rc: Vec<Rational> = (0..self.width()).map(|j| cost_of(j).clone()).collect();
        let mut z = Rational::zero();
        for (i, &b) in self.basis.iter().enumerate() {
            let cb = cost_of(b);
            if cb.is_zero() {
                continue;
            }
            for (j, a) in self.cells[i].iter().enumerate() {
                if !a.is_zero() {
                    rc[j] -= &(cb * a);
                }
            }
            z += &(cb * &self.rhs[i]);
        }
        (rc, z)
    }

    fn pivot(&mut self, row: usize, col: usize, rc: &mut [Rational], z: &mut Rational) {
        let inv = self.cells[row][col].recip();
        for a in self.cells[row].iter_mut() {
            if !a.is_zero() {
                *a = &*a * &inv;
            }
        }
        self.rhs[row] = &self.rhs[row] * &inv;
        let pivot_row = self.cells[row].clone();
        let pivot_rhs = self.rhs[row].clone();
        let nonzero: Vec<usize> = (0..pivot_row.len()).filter(|&j| !pivot_row[j].is_zero()).collect();
        for i in 0..self.cells.len() {
            if i == row || self.cells[i][col].is_zero() {
                continue;
            }
            let factor = self.cells[i][col].clone();
            for &j in &nonzero {
                let delta = &factor * &pivot_row[j];
                self.cells[i][j] -= &delta;
            }
            self.rhs[i] -= &(&factor * &pivot_rhs);
        }
        if !rc[col].is_zero() {
            let factor = rc[col].clone();
            for &j in &nonzero {
                let delta = &factor * &pivot_row[j];
                rc[j] -= &delta;
            }
            *z += &(&factor * &pivot_rhs);
        }
        self.basis[row] = col;
    }

    /// Bland's rule iterations until optimal or unbounded. Returns false on
    /// unboundedness.
    fn iterate(&mut self, rc: &mut [Rational], z: &mut Rational) -> bool {
        loop {
            let Some(col) = (0..self.first_artificial).find(|&j| rc[j].is_negative()) else {
                return true;
            };
            let mut best: Option<(usize, Rational)> = None;
            for i in 0..self.cells.len() {
                let a = &self.cells[i][col];
                if !a.is_positive() {
                    continue;
                }
                let ratio = &self.rhs[i] / a;
                let better = match &best {
                    None => true,
                    Some((bi, br)) => ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi]),
                };
                if better {
                    best = Some((i, ratio));
                }
            }
            match best {
                Some((row, _)) => self.pivot(row, col, rc, z),
                None => return false,
            }
        }
    }

    fn primal(&self) -> Vec<Rational> {
        let mut x = vec![Rational::zero(); self.n];
        for (i, &b) in self.basis.iter().enumerate() {
            if b < self.n {
                x[b] = self.rhs[i].clone();
            }
        }
        x
    }

    /// Row duals of the original constraints from reduced costs of the
    /// artificial columns: `y_i = cost(a_i) - rc(a_i)`, undoing row flips.
    fn duals(&self, rc: &[Rational], artificial_cost: &Rational) -> Vec<Rational> {
        (0..self.cells.len())
            .map(|i| {
                let y = artificial_cost - &rc[self.first_artificial + i];
                if self.flip[i] {
                    -y
                } else {
                    y
                }
            })
            .collect()
    }

    fn run(&mut self, objective: &[Rational]) -> Outcome {
        let m = self.cells.len();
        let phase_one: Vec<Rational> = (0..self.width())
            .map(|j| if j >= self.first_artificial { Rational::one() } else { Rational::zero() })
            .collect();
        let (mut rc, mut z) = self.reduced_costs(&phase_one);
        let bounded = self.iterate(&mut rc, &mut z);
        debug_assert!(bounded, "phase one is bounded below by 0");
        if z.is_positive() {
            return Outcome::Infeasible { farkas: self.duals(&rc, &Rational::one()) };
        }
        // drive zero-level artificials out of the basis where possible
        for i in 0..m {
            if self.basis[i] >= self.first_artificial {
                if let Some(col) = (0..self.first_artificial).find(|&j| !self.cells[i][j].is_zero()) {
                    self.pivot(i, col, &mut rc, &mut z);
                }
            }
        }
        let (mut rc, mut z) = self.reduced_costs(objective);
        if !self.iterate(&mut rc, &mut z) {
            return Outcome::Unbounded { primal: self.primal() };
        }
        Outcome::Optimal { primal: self.primal(), duals: self.duals(&rc, &Rational::zero()) }
    }
}
