//! Dense two-phase tableau simplex with Bland's rule.

use super::{Direction, LinearProgram, LpSolution, LpStatus, RowSense};
use crate::error::Result;
use crate::scalar::Scalar;

#[derive(Clone, Copy, PartialEq, Eq)]
enum Phase {
    One,
    Two,
}

struct Tableau<T> {
    /// `m` rows of `B^-1 [A | I_aux | I_art] | B^-1 b`.
    rows: Vec<Vec<T>>,
    /// Reduced costs `c_j - c_B B^-1 a_j`; last entry is `-c_B B^-1 b`.
    obj: Vec<T>,
    basis: Vec<usize>,
    /// Columns `>= first_artificial` are artificial.
    first_artificial: usize,
}

impl<T: Scalar> Tableau<T> {
    fn rhs_col(&self) -> usize {
        self.obj.len() - 1
    }

    fn pivot(&mut self, row: usize, col: usize) {
        let rhs = self.rhs_col();
        let p = self.rows[row][col].clone();
        for v in self.rows[row].iter_mut() {
            if !v.is_zero() {
                *v = v.clone() / p.clone();
            }
        }
        let pivot_row = self.rows[row].clone();
        for (i, r) in self.rows.iter_mut().enumerate() {
            if i == row {
                continue;
            }
            eliminate(r, &pivot_row, col, rhs);
        }
        eliminate(&mut self.obj, &pivot_row, col, rhs);
        self.basis[row] = col;
    }

    /// Recomputes the objective row for `cost` from the current basis.
    fn price(&mut self, cost: &[T]) {
        let width = self.obj.len();
        let mut obj: Vec<T> = cost.to_vec();
        obj.push(T::zero());
        for (r, &b) in self.rows.iter().zip(&self.basis) {
            let cb = &cost[b];
            if cb.is_zero() {
                continue;
            }
            for j in 0..width {
                if !r[j].is_zero() {
                    obj[j] = obj[j].clone() - cb.clone() * r[j].clone();
                }
            }
        }
        self.obj = obj;
    }

    /// Runs Bland's rule to optimality. Returns `false` when unbounded.
    fn optimize(&mut self, phase: Phase) -> bool {
        let rhs = self.rhs_col();
        loop {
            let limit = match phase {
                Phase::One => rhs,
                Phase::Two => self.first_artificial,
            };
            let Some(enter) = (0..limit).find(|&j| self.obj[j].is_pos()) else {
                return true;
            };
            let mut leave: Option<(usize, T)> = None;
            for (i, r) in self.rows.iter().enumerate() {
                if !r[enter].is_pos() {
                    continue;
                }
                let ratio = r[rhs].clone() / r[enter].clone();
                leave = match leave {
                    None => Some((i, ratio)),
                    Some((k, best)) => {
                        if ratio < best && !ratio.near_eq(&best)
                            || ratio.near_eq(&best) && self.basis[i] < self.basis[k]
                        {
                            Some((i, ratio))
                        } else {
                            Some((k, best))
                        }
                    }
                };
            }
            match leave {
                None => return false,
                Some((row, _)) => self.pivot(row, enter),
            }
        }
    }
}

fn eliminate<T: Scalar>(target: &mut [T], pivot_row: &[T], col: usize, rhs: usize) {
    let f = target[col].clone();
    if f.is_zero() {
        return;
    }
    for j in 0..=rhs {
        if !pivot_row[j].is_zero() {
            target[j] = target[j].clone() - f.clone() * pivot_row[j].clone();
        }
    }
    // Exact zero in the pivot column even for inexact scalars.
    target[col] = T::zero();
}

/// Solves `lp` exactly (for exact scalars).
///
/// Infeasible and unbounded programs are reported through
/// [`LpSolution::status`]; only malformed programs are errors.
pub fn solve_lp<T: Scalar>(lp: &LinearProgram<T>) -> Result<LpSolution<T>> {
    lp.validate()?;
    let n = lp.num_vars();
    let m = lp.num_rows();
    if n == 0 {
        return Ok(LpSolution {
            status: LpStatus::Optimal,
            value: T::zero(),
            primal: Vec::new(),
            dual: vec![T::zero(); m],
            basis: Vec::new(),
        });
    }

    // Shift x = x' + l so that x' >= 0, then flip rows to get rhs >= 0.
    let sign = match lp.direction {
        Direction::Maximize => T::one(),
        Direction::Minimize => -T::one(),
    };
    let mut flip = vec![false; m];
    let mut senses = Vec::with_capacity(m);
    let mut rhs_vals = Vec::with_capacity(m);
    for (i, row) in lp.rows.iter().enumerate() {
        let shifted = row.rhs.clone() - row.activity(&lp.lower_bounds);
        flip[i] = shifted.is_neg();
        if flip[i] {
            senses.push(row.sense.flipped());
            rhs_vals.push(-shifted);
        } else {
            senses.push(row.sense);
            rhs_vals.push(shifted);
        }
    }

    let artificial_rows: Vec<usize> = (0..m).filter(|&i| senses[i] == RowSense::Ge).collect();
    let first_artificial = n + m;
    let width = first_artificial + artificial_rows.len() + 1;
    let rhs = width - 1;

    // Column of the initial identity for each row: the slack of a `<=` row
    // or the artificial of a `>=` row. Its final column holds B^-1 e_i.
    let mut ident_col = vec![0; m];
    let mut rows = vec![vec![T::zero(); width]; m];
    for (i, row) in lp.rows.iter().enumerate() {
        let r = &mut rows[i];
        for (j, a) in &row.coeffs {
            r[*j] = if flip[i] { -a.clone() } else { a.clone() };
        }
        r[n + i] = match senses[i] {
            RowSense::Le => T::one(),
            RowSense::Ge => -T::one(),
        };
        r[rhs] = rhs_vals[i].clone();
        if senses[i] == RowSense::Le {
            ident_col[i] = n + i;
        }
    }
    for (k, &i) in artificial_rows.iter().enumerate() {
        let col = first_artificial + k;
        rows[i][col] = T::one();
        ident_col[i] = col;
    }
    let basis = ident_col.clone();

    let mut tab = Tableau {
        rows,
        obj: vec![T::zero(); width],
        basis,
        first_artificial,
    };

    if !artificial_rows.is_empty() {
        let mut cost = vec![T::zero(); width - 1];
        for c in cost.iter_mut().skip(first_artificial) {
            *c = -T::one();
        }
        tab.price(&cost);
        tab.optimize(Phase::One);
        // obj[rhs] = -(phase-one objective) = sum of artificials.
        if tab.obj[rhs].is_pos() {
            return Ok(LpSolution::without_optimum(LpStatus::Infeasible));
        }
        // Drive zero-level artificials out of the basis where possible. Rows
        // where that fails are redundant and keep an artificial at zero.
        for i in 0..m {
            if tab.basis[i] < first_artificial {
                continue;
            }
            if let Some(j) = (0..first_artificial).find(|&j| !tab.rows[i][j].near_zero()) {
                tab.pivot(i, j);
            }
        }
    }

    let mut cost = vec![T::zero(); width - 1];
    for (c, o) in cost.iter_mut().zip(&lp.objective) {
        *c = sign.clone() * o.clone();
    }
    tab.price(&cost);
    if !tab.optimize(Phase::Two) {
        return Ok(LpSolution::without_optimum(LpStatus::Unbounded));
    }

    let mut primal = lp.lower_bounds.clone();
    for (i, &b) in tab.basis.iter().enumerate() {
        if b < n {
            primal[b] = primal[b].clone() + tab.rows[i][rhs].clone();
        }
    }
    let dual = (0..m)
        .map(|i| {
            let col = ident_col[i];
            let pi = tab
                .rows
                .iter()
                .zip(&tab.basis)
                .fold(T::zero(), |acc, (r, &b)| acc + cost[b].clone() * r[col].clone());
            let y = sign.clone() * pi;
            if flip[i] {
                -y
            } else {
                y
            }
        })
        .collect();
    let mut basis: Vec<usize> = tab.basis.iter().copied().filter(|&b| b < first_artificial).collect();
    basis.sort_unstable();

    Ok(LpSolution {
        status: LpStatus::Optimal,
        value: lp.objective_value(&primal),
        primal,
        dual,
        basis,
    })
}
