//! Branch-and-bound search for integer optimal duals.
//!
//! For a packing program `max c·x, A x <= b, x >= 0` with `A, b >= 0` the
//! dual is the covering program `min b·y, A^T y >= c, y >= 0`. Each dual
//! variable gets the explicit cap `ceil(max_j c_j) * m` (`m` = number of
//! primal rows), tightened per variable by two facts that hold for every
//! integer optimum: `y_i <= max_{j: A_ij > 0} ceil(c_j / A_ij)` (a larger
//! value already covers every column of `i` on its own) and, when `b_i > 0`,
//! `y_i <= floor(target / b_i)`.

use serde::{Deserialize, Serialize};

use super::{solve_lp, Constraint, LinearProgram, LpStatus, RowSense};
use crate::error::{Error, Result};
use crate::scalar::{max_or_zero, Scalar};
use crate::wire;

/// Outcome of [`find_integral_dual`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "T: Scalar", deserialize = "T: Scalar"))]
pub struct IntegralDualWitness<T> {
    pub found: bool,
    /// One entry per primal row; empty when nothing was found.
    pub assignment: Vec<u64>,
    /// Dual objective of `assignment`, equal to the target when found.
    #[serde(with = "wire::scalar_opt")]
    pub objective_value: Option<T>,
    #[serde(with = "wire::scalar")]
    pub target: T,
    /// Branch-and-bound nodes whose relaxation was solved.
    pub nodes: usize,
}

struct Search<T> {
    /// Covering rows `A^T y >= c`, one per primal column.
    cover: LinearProgram<T>,
    caps: Vec<T>,
    b: Vec<T>,
    nodes: usize,
}

#[derive(Clone)]
struct Node<T> {
    lower: Vec<T>,
    upper: Vec<T>,
}

fn covering_program<T: Scalar>(lp: &LinearProgram<T>) -> Result<(LinearProgram<T>, Vec<T>)> {
    if !lp.is_canonical_packing() {
        return Err(Error::Contract(
            "integral dual search needs max c.x subject to A x <= b, x >= 0".into(),
        ));
    }
    lp.validate()?;
    for (i, row) in lp.rows.iter().enumerate() {
        if row.rhs.is_neg() || row.coeffs.iter().any(|(_, a)| a.is_neg()) {
            return Err(Error::UnboundedSearch(format!(
                "row {i} has a negative entry, so no finite bound on integer duals follows"
            )));
        }
    }
    let dual = lp.dual()?;
    let m = lp.num_rows();
    let global = max_or_zero(&lp.objective).ceil() * T::from_usize(m).expect("row count fits");

    let mut caps = vec![T::zero(); m];
    for row in &dual.rows {
        for (i, a) in &row.coeffs {
            if a.is_pos() && row.rhs.is_pos() {
                let need = (row.rhs.clone() / a.clone()).ceil();
                if need > caps[*i] {
                    caps[*i] = need;
                }
            }
        }
    }
    for c in caps.iter_mut() {
        if *c > global {
            *c = global.clone();
        }
    }
    Ok((dual, caps))
}

impl<T: Scalar> Search<T> {
    fn new(lp: &LinearProgram<T>) -> Result<Self> {
        let (cover, caps) = covering_program(lp)?;
        let b = lp.rows.iter().map(|r| r.rhs.clone()).collect();
        Ok(Search { cover, caps, b, nodes: 0 })
    }

    fn root(&self) -> Node<T> {
        Node {
            lower: vec![T::zero(); self.caps.len()],
            upper: self.caps.clone(),
        }
    }

    /// Relaxation of `node`; with `level` the dual objective is pinned to it
    /// and `sum y` is minimized instead.
    fn relax(&mut self, node: &Node<T>, level: Option<&T>) -> Result<Option<(T, Vec<T>)>> {
        self.nodes += 1;
        if node.lower.iter().zip(&node.upper).any(|(l, u)| l > u) {
            return Ok(None);
        }
        let m = self.caps.len();
        let mut lp = self.cover.clone();
        lp.lower_bounds = node.lower.clone();
        for (i, u) in node.upper.iter().enumerate() {
            lp.rows.push(Constraint {
                coeffs: vec![(i, T::one())],
                sense: RowSense::Le,
                rhs: u.clone(),
            });
        }
        if let Some(level) = level {
            let coeffs: Vec<(usize, T)> = self
                .b
                .iter()
                .enumerate()
                .filter(|(_, b)| !b.is_zero())
                .map(|(i, b)| (i, b.clone()))
                .collect();
            if coeffs.is_empty() {
                if !level.is_zero() {
                    return Ok(None);
                }
            } else {
                lp.add_row(coeffs.clone(), RowSense::Le, level.clone());
                lp.add_row(coeffs, RowSense::Ge, level.clone());
            }
            lp.objective = vec![T::one(); m];
        }
        let sol = solve_lp(&lp)?;
        match sol.status {
            LpStatus::Optimal => {
                let value = dot(&self.b, &sol.primal);
                Ok(Some((value, sol.primal)))
            }
            LpStatus::Infeasible => Ok(None),
            LpStatus::Unbounded => Err(Error::UnboundedSearch(
                "relaxation unbounded despite finite variable caps".into(),
            )),
        }
    }
}

fn dot<T: Scalar>(a: &[T], b: &[T]) -> T {
    a.iter()
        .zip(b)
        .fold(T::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
}

fn branch<T: Scalar>(node: &Node<T>, y: &[T]) -> Option<(Node<T>, Node<T>)> {
    let i = y.iter().position(|v| !v.is_integral())?;
    let mut down = node.clone();
    down.upper[i] = y[i].floor();
    let mut up = node.clone();
    up.lower[i] = y[i].ceil();
    Some((down, up))
}

fn to_counts<T: Scalar>(y: &[T]) -> Vec<u64> {
    y.iter()
        .map(|v| v.floor().to_u64().expect("integral dual entries fit in u64"))
        .collect()
}

/// Searches for an integer dual solution of the packing program `lp` whose
/// objective is exactly `target` (normally the LP optimum).
///
/// Exhaustive: `found = false` means no such integer vector exists within
/// the caps described in the module docs.
pub fn find_integral_dual<T: Scalar>(lp: &LinearProgram<T>, target: &T) -> Result<IntegralDualWitness<T>> {
    let mut search = Search::new(lp)?;
    let miss = |nodes| IntegralDualWitness {
        found: false,
        assignment: Vec::new(),
        objective_value: None,
        target: target.clone(),
        nodes,
    };

    // Integer y has an integer objective whenever b is integral.
    if search.b.iter().all(Scalar::is_integral) && !target.is_integral() {
        return Ok(miss(0));
    }
    for (i, b) in search.b.iter().enumerate() {
        if b.is_pos() {
            let cap = (target.clone() / b.clone()).floor();
            if cap < search.caps[i] {
                search.caps[i] = if cap.is_neg() { T::zero() } else { cap };
            }
        }
    }

    let mut stack = vec![search.root()];
    while let Some(node) = stack.pop() {
        let Some((value, y)) = search.relax(&node, Some(target))? else {
            continue;
        };
        debug_assert!(value.near_eq(target));
        match branch(&node, &y) {
            None => {
                return Ok(IntegralDualWitness {
                    found: true,
                    assignment: to_counts(&y),
                    objective_value: Some(value),
                    target: target.clone(),
                    nodes: search.nodes,
                })
            }
            Some((down, up)) => {
                stack.push(up);
                stack.push(down);
            }
        }
    }
    Ok(miss(search.nodes))
}

/// Minimum dual objective over integer dual solutions of the packing
/// program `lp`, with a minimizer. `None` if the covering program has no
/// integer point within the caps.
pub fn min_integral_dual<T: Scalar>(lp: &LinearProgram<T>) -> Result<Option<(T, Vec<u64>)>> {
    let mut search = Search::new(lp)?;
    let mut best: Option<(T, Vec<T>)> = None;
    let mut stack = vec![search.root()];
    while let Some(node) = stack.pop() {
        let Some((value, y)) = search.relax(&node, None)? else {
            continue;
        };
        if best.as_ref().is_some_and(|(b, _)| value >= *b) {
            continue;
        }
        match branch(&node, &y) {
            None => best = Some((value, y)),
            Some((down, up)) => {
                stack.push(up);
                stack.push(down);
            }
        }
    }
    Ok(best.map(|(v, y)| (v, to_counts(&y))))
}
