//! Exact linear programming.
//!
//! A [`LinearProgram`] is solved by a dense two-phase simplex with Bland's
//! rule ([`solve_lp`]). The dual vector is read off the final basis, so
//! complementary slackness holds by construction; [`check_certificates`]
//! re-verifies it independently. [`find_integral_dual`] searches the dual
//! polyhedron for an integer optimum by LP-based branch and bound.

mod certificate;
mod integral;
mod simplex;

pub use certificate::{check_certificates, DualityReport, DualityViolation};
pub use integral::{find_integral_dual, min_integral_dual, IntegralDualWitness};
pub use simplex::solve_lp;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::wire;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Maximize,
    Minimize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum RowSense {
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = ">=")]
    Ge,
}

impl RowSense {
    fn flipped(self) -> Self {
        match self {
            RowSense::Le => RowSense::Ge,
            RowSense::Ge => RowSense::Le,
        }
    }
}

/// One sparse row `coeffs · x (sense) rhs`.
#[derive(Debug, Clone, PartialEq)]
pub struct Constraint<T> {
    pub coeffs: Vec<(usize, T)>,
    pub sense: RowSense,
    pub rhs: T,
}

impl<T: Scalar> Constraint<T> {
    pub fn activity(&self, x: &[T]) -> T {
        self.coeffs
            .iter()
            .fold(T::zero(), |acc, (j, a)| acc + a.clone() * x[*j].clone())
    }
}

/// `direction c·x` subject to sparse rows and `x >= lower_bounds`.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearProgram<T> {
    pub direction: Direction,
    pub objective: Vec<T>,
    pub rows: Vec<Constraint<T>>,
    pub lower_bounds: Vec<T>,
}

impl<T: Scalar> LinearProgram<T> {
    /// A program with no rows and all lower bounds at zero.
    pub fn new(direction: Direction, objective: Vec<T>) -> Self {
        let n = objective.len();
        LinearProgram {
            direction,
            objective,
            rows: Vec::new(),
            lower_bounds: vec![T::zero(); n],
        }
    }

    pub fn maximize(objective: Vec<T>) -> Self {
        Self::new(Direction::Maximize, objective)
    }

    pub fn minimize(objective: Vec<T>) -> Self {
        Self::new(Direction::Minimize, objective)
    }

    pub fn add_row(&mut self, coeffs: Vec<(usize, T)>, sense: RowSense, rhs: T) -> &mut Self {
        self.rows.push(Constraint { coeffs, sense, rhs });
        self
    }

    /// Dense-row convenience used mostly by tests.
    pub fn add_dense_row(&mut self, coeffs: &[T], sense: RowSense, rhs: T) -> &mut Self {
        let sparse = coeffs
            .iter()
            .enumerate()
            .filter(|(_, a)| !a.is_zero())
            .map(|(j, a)| (j, a.clone()))
            .collect();
        self.add_row(sparse, sense, rhs)
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn objective_value(&self, x: &[T]) -> T {
        self.objective
            .iter()
            .zip(x)
            .fold(T::zero(), |acc, (c, x)| acc + c.clone() * x.clone())
    }

    /// Checks the structural invariants: consistent dimensions, in-range
    /// column indices, no repeated column within a row, and at least one
    /// nonzero entry per row.
    pub fn validate(&self) -> Result<()> {
        let n = self.num_vars();
        if self.lower_bounds.len() != n {
            return Err(Error::Malformed(format!(
                "{} lower bounds for {} variables",
                self.lower_bounds.len(),
                n
            )));
        }
        for (i, row) in self.rows.iter().enumerate() {
            let mut seen = vec![false; n];
            let mut nonzero = false;
            for (j, a) in &row.coeffs {
                if *j >= n {
                    return Err(Error::Malformed(format!("row {i} references column {j} of {n}")));
                }
                if std::mem::replace(&mut seen[*j], true) {
                    return Err(Error::Malformed(format!("row {i} repeats column {j}")));
                }
                nonzero |= !a.is_zero();
            }
            if !nonzero {
                return Err(Error::Malformed(format!("row {i} has no nonzero entry")));
            }
        }
        Ok(())
    }

    /// True for `max c·x, A x <= b, x >= 0`, the form whose dual is
    /// `min b·y, A^T y >= c, y >= 0`.
    pub fn is_canonical_packing(&self) -> bool {
        self.direction == Direction::Maximize
            && self.rows.iter().all(|r| r.sense == RowSense::Le)
            && self.lower_bounds.iter().all(|l| l.is_zero())
    }

    /// Column-major view: for each variable, its `(row, coefficient)` entries.
    pub fn columns(&self) -> Vec<Vec<(usize, T)>> {
        let mut cols = vec![Vec::new(); self.num_vars()];
        for (i, row) in self.rows.iter().enumerate() {
            for (j, a) in &row.coeffs {
                if !a.is_zero() {
                    cols[*j].push((i, a.clone()));
                }
            }
        }
        cols
    }

    /// The symmetric dual of a canonical packing program: one variable per
    /// row, one `>=` row per column.
    pub fn dual(&self) -> Result<LinearProgram<T>> {
        if !self.is_canonical_packing() {
            return Err(Error::Contract(
                "dual() needs max c.x subject to A x <= b, x >= 0".into(),
            ));
        }
        self.validate()?;
        let mut dual = LinearProgram::minimize(self.rows.iter().map(|r| r.rhs.clone()).collect());
        for (j, col) in self.columns().into_iter().enumerate() {
            if col.is_empty() {
                return Err(Error::Contract(format!("column {j} appears in no row")));
            }
            dual.add_row(col, RowSense::Ge, self.objective[j].clone());
        }
        Ok(dual)
    }

    /// The same program with the extra requirement `c·x = value`, i.e.
    /// restricted to its optimal face when `value` is the optimum. The
    /// objective is kept; callers usually replace it with a secondary one.
    pub fn restrict_to_level(&self, value: &T) -> LinearProgram<T> {
        let mut out = self.clone();
        let coeffs: Vec<(usize, T)> = self
            .objective
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(j, c)| (j, c.clone()))
            .collect();
        if !coeffs.is_empty() {
            out.add_row(coeffs.clone(), RowSense::Le, value.clone());
            out.add_row(coeffs, RowSense::Ge, value.clone());
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

/// Result of [`solve_lp`].
///
/// When `status` is optimal, `primal` is a basic feasible solution and
/// `dual` is the complementary basic dual, with the sign convention that
/// the dual objective is `b·y + l·d` where `d = c - A^T y` are the reduced
/// costs. `basis` lists basic columns: structural variables are `0..n`, the
/// slack or surplus of row `i` is `n + i`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "T: Scalar", deserialize = "T: Scalar"))]
pub struct LpSolution<T> {
    pub status: LpStatus,
    #[serde(with = "wire::scalar")]
    pub value: T,
    #[serde(with = "wire::scalar_vec")]
    pub primal: Vec<T>,
    #[serde(with = "wire::scalar_vec")]
    pub dual: Vec<T>,
    pub basis: Vec<usize>,
}

impl<T: Scalar> LpSolution<T> {
    pub(crate) fn without_optimum(status: LpStatus) -> Self {
        LpSolution {
            status,
            value: T::zero(),
            primal: Vec::new(),
            dual: Vec::new(),
            basis: Vec::new(),
        }
    }

    pub fn is_optimal(&self) -> bool {
        self.status == LpStatus::Optimal
    }

    /// Reduced costs `c - A^T y` for the stored dual.
    pub fn reduced_costs(&self, lp: &LinearProgram<T>) -> Vec<T> {
        let mut d = lp.objective.clone();
        for (row, y) in lp.rows.iter().zip(&self.dual) {
            if y.is_zero() {
                continue;
            }
            for (j, a) in &row.coeffs {
                d[*j] = d[*j].clone() - a.clone() * y.clone();
            }
        }
        d
    }

    /// `b·y + l·d`.
    pub fn dual_value(&self, lp: &LinearProgram<T>) -> T {
        let by = lp
            .rows
            .iter()
            .zip(&self.dual)
            .fold(T::zero(), |acc, (r, y)| acc + r.rhs.clone() * y.clone());
        let d = self.reduced_costs(lp);
        lp.lower_bounds
            .iter()
            .zip(&d)
            .fold(by, |acc, (l, d)| acc + l.clone() * d.clone())
    }
}
