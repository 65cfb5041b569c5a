use serde::{Deserialize, Serialize};

use super::{Direction, LinearProgram, LpSolution, RowSense};
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::wire;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DualityViolation {
    /// `x_j < l_j`.
    PrimalBound { col: usize },
    /// Row `i` not satisfied by the primal.
    PrimalRow { row: usize },
    /// The row's dual has the wrong sign for its sense.
    DualSign { row: usize },
    /// The reduced cost of column `j` has the wrong sign.
    DualColumn { col: usize },
    /// Primal and dual objective values differ.
    ObjectiveGap,
    /// `y_i (A_i x - b_i) != 0`.
    SlacknessRow { row: usize },
    /// `d_j (x_j - l_j) != 0`.
    SlacknessColumn { col: usize },
}

/// Independent audit of a claimed primal/dual optimum pair.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "T: Scalar", deserialize = "T: Scalar"))]
pub struct DualityReport<T> {
    pub primal_feasible: bool,
    pub dual_feasible: bool,
    pub objectives_equal: bool,
    pub complementary_slackness: bool,
    #[serde(with = "wire::scalar")]
    pub primal_value: T,
    #[serde(with = "wire::scalar")]
    pub dual_value: T,
    pub violations: Vec<DualityViolation>,
}

impl<T> DualityReport<T> {
    pub fn all_pass(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Re-checks primal feasibility, dual feasibility, equality of objective
/// values and complementary slackness for an optimal `sol` of `lp`.
pub fn check_certificates<T: Scalar>(lp: &LinearProgram<T>, sol: &LpSolution<T>) -> Result<DualityReport<T>> {
    if !sol.is_optimal() {
        return Err(Error::Contract(format!(
            "certificates exist only for optimal solutions, got {:?}",
            sol.status
        )));
    }
    lp.validate()?;
    if sol.primal.len() != lp.num_vars() || sol.dual.len() != lp.num_rows() {
        return Err(Error::Contract("solution dimensions do not match the program".into()));
    }

    let mut violations = Vec::new();
    let x = &sol.primal;
    let y = &sol.dual;

    for (j, (xj, lj)) in x.iter().zip(&lp.lower_bounds).enumerate() {
        if (xj.clone() - lj.clone()).is_neg() {
            violations.push(DualityViolation::PrimalBound { col: j });
        }
    }
    let slack: Vec<T> = lp.rows.iter().map(|r| r.activity(x) - r.rhs.clone()).collect();
    for (i, (row, s)) in lp.rows.iter().zip(&slack).enumerate() {
        let bad = match row.sense {
            RowSense::Le => s.is_pos(),
            RowSense::Ge => s.is_neg(),
        };
        if bad {
            violations.push(DualityViolation::PrimalRow { row: i });
        }
    }
    let primal_feasible = violations.is_empty();

    // Sign conventions: for a maximization, `<=` rows carry y >= 0 and
    // `>=` rows y <= 0, with reduced costs d <= 0. Minimization mirrors it.
    let max = lp.direction == Direction::Maximize;
    let before = violations.len();
    for (i, (row, yi)) in lp.rows.iter().zip(y).enumerate() {
        let nonneg = (row.sense == RowSense::Le) == max;
        if (nonneg && yi.is_neg()) || (!nonneg && yi.is_pos()) {
            violations.push(DualityViolation::DualSign { row: i });
        }
    }
    let d = sol.reduced_costs(lp);
    for (j, dj) in d.iter().enumerate() {
        if (max && dj.is_pos()) || (!max && dj.is_neg()) {
            violations.push(DualityViolation::DualColumn { col: j });
        }
    }
    let dual_feasible = violations.len() == before;

    let primal_value = lp.objective_value(x);
    let dual_value = sol.dual_value(lp);
    let objectives_equal = primal_value.near_eq(&dual_value) && primal_value.near_eq(&sol.value);
    if !objectives_equal {
        violations.push(DualityViolation::ObjectiveGap);
    }

    let before = violations.len();
    for (i, (yi, s)) in y.iter().zip(&slack).enumerate() {
        if !(yi.clone() * s.clone()).near_zero() {
            violations.push(DualityViolation::SlacknessRow { row: i });
        }
    }
    for (j, dj) in d.iter().enumerate() {
        let gap = x[j].clone() - lp.lower_bounds[j].clone();
        if !(dj.clone() * gap).near_zero() {
            violations.push(DualityViolation::SlacknessColumn { col: j });
        }
    }
    let complementary_slackness = violations.len() == before;

    Ok(DualityReport {
        primal_feasible,
        dual_feasible,
        objectives_equal,
        complementary_slackness,
        primal_value,
        dual_value,
        violations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lp::{solve_lp, LpStatus};
    use crate::Rational;

    fn r(n: i64) -> Rational {
        Rational::from_int(n)
    }

    fn box_lp() -> LinearProgram<Rational> {
        let mut lp = LinearProgram::maximize(vec![r(1), r(1)]);
        lp.add_dense_row(&[r(1), r(0)], RowSense::Le, r(1));
        lp.add_dense_row(&[r(0), r(1)], RowSense::Le, r(1));
        lp
    }

    #[test]
    fn box_solution_certifies() {
        let lp = box_lp();
        let sol = solve_lp(&lp).unwrap();
        let rep = check_certificates(&lp, &sol).unwrap();
        assert!(rep.primal_feasible && rep.dual_feasible);
        assert!(rep.objectives_equal && rep.complementary_slackness);
        assert!(rep.all_pass());
    }

    #[test]
    fn perturbed_primal_is_caught_at_second_row() {
        let lp = box_lp();
        let mut sol = solve_lp(&lp).unwrap();
        sol.primal = vec![r(1), Rational::from_ratio(3, 2)];
        let rep = check_certificates(&lp, &sol).unwrap();
        assert!(!rep.primal_feasible);
        assert!(rep.dual_feasible);
        assert!(rep.violations.contains(&DualityViolation::PrimalRow { row: 1 }));
        assert!(!rep.violations.contains(&DualityViolation::PrimalRow { row: 0 }));
    }

    #[test]
    fn wrong_dual_sign_and_gap() {
        let lp = box_lp();
        let mut sol = solve_lp(&lp).unwrap();
        sol.dual = vec![r(-1), r(2)];
        let rep = check_certificates(&lp, &sol).unwrap();
        assert!(rep.violations.contains(&DualityViolation::DualSign { row: 0 }));
        assert!(rep.violations.contains(&DualityViolation::DualColumn { col: 0 }));
        assert!(!rep.dual_feasible);
    }

    #[test]
    fn non_optimal_is_a_contract_error() {
        let lp = box_lp();
        let sol = LpSolution::<Rational>::without_optimum(LpStatus::Infeasible);
        assert!(matches!(check_certificates(&lp, &sol), Err(Error::Contract(_))));
    }
}
