use serde::{Deserialize, Serialize};

use super::imputation::Imputation;
use super::GameInstance;
use crate::error::Result;
use crate::scalar::Scalar;
use crate::subset::Subset;
use crate::wire;

/// A coalition that would gain by seceding.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "T: Scalar", deserialize = "T: Scalar"))]
pub struct Violation<T> {
    pub coalition: Subset,
    #[serde(with = "wire::scalar")]
    pub worth: T,
    #[serde(with = "wire::scalar")]
    pub allocated: T,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "T: Scalar", deserialize = "T: Scalar"))]
pub struct CoreReport<T> {
    pub in_core: bool,
    /// worth of the grand coalition.
    #[serde(with = "wire::scalar")]
    pub worth_total: T,
    /// What the imputation hands out to the grand coalition.
    #[serde(with = "wire::scalar")]
    pub satisfaction_total: T,
    /// Proper sub-coalitions receiving less than their worth, by bit mask.
    pub violations: Vec<Violation<T>>,
    /// Nonempty coalitions examined, the grand coalition included.
    pub coalitions_checked: u64,
}

/// Exact dual feasibility of an imputation and its objective.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "T: Scalar", deserialize = "T: Scalar"))]
pub struct DualCheck<T> {
    pub feasible: bool,
    /// First uncovered constraint: an edge or column index for agent
    /// imputations, an agent for satisfaction imputations.
    pub first_violated: Option<usize>,
    #[serde(with = "wire::scalar")]
    pub value: T,
    #[serde(with = "wire::scalar")]
    pub worth: T,
    /// Feasible with objective equal to the worth of the game.
    pub optimal: bool,
}

impl<T: Scalar> GameInstance<T> {
    /// What coalition `t` receives: the members' payoffs (bottom-up) or
    /// `Σ_Q coef(Q ∩ t) y_Q` (top-down), where `coef` is one for cliques
    /// and stable sets and the rank for matroid subsets.
    pub fn allocation_to(&self, imp: &Imputation<T>, t: Subset) -> T {
        match imp {
            Imputation::Agent(a) => a.coalition_total(t),
            Imputation::Satisfaction(y) => y.support.iter().fold(T::zero(), |acc, (q, v)| {
                let part = q.intersection(t);
                if part.is_empty() || v.is_zero() {
                    acc
                } else {
                    acc + self.object_coefficient(part) * v.clone()
                }
            }),
        }
    }
}

/// Core verification against a precomputed characteristic function.
#[derive(Debug, Clone)]
pub struct CoreChecker<'a, T> {
    game: &'a GameInstance<T>,
    worth: Vec<T>,
}

impl<'a, T: Scalar> CoreChecker<'a, T> {
    /// Tabulates worth for all `2^n` coalitions; refuses `n > bound`.
    pub fn new(game: &'a GameInstance<T>, bound: usize) -> Result<Self> {
        Ok(CoreChecker { game, worth: game.worth_table(bound)? })
    }

    pub fn game(&self) -> &GameInstance<T> {
        self.game
    }

    pub fn worth(&self, t: Subset) -> &T {
        &self.worth[t.bits() as usize]
    }

    pub fn grand_worth(&self) -> &T {
        self.worth(self.game.agents())
    }

    /// Condition 1 (the grand coalition gets exactly its worth) and
    /// condition 2 (no proper sub-coalition gets less than its worth).
    pub fn check(&self, imp: &Imputation<T>) -> Result<CoreReport<T>> {
        imp.validate(self.game)?;
        let all = self.game.agents();
        let mut violations = Vec::new();
        let mut checked = 0u64;
        for t in all.subsets().skip(1) {
            checked += 1;
            if t == all {
                continue;
            }
            let allocated = self.game.allocation_to(imp, t);
            let worth = self.worth(t);
            if allocated < *worth {
                violations.push(Violation { coalition: t, worth: worth.clone(), allocated });
            }
        }
        let total = self.game.allocation_to(imp, all);
        let worth_total = self.grand_worth().clone();
        Ok(CoreReport {
            in_core: violations.is_empty() && total == worth_total,
            worth_total,
            satisfaction_total: total,
            violations,
            coalitions_checked: checked,
        })
    }

    /// Whether `imp` is a feasible dual with objective equal to the worth.
    pub fn dual_optimality(&self, imp: &Imputation<T>) -> Result<DualCheck<T>> {
        imp.validate(self.game)?;
        Ok(dual_check(self.game, imp, self.grand_worth().clone()))
    }
}

fn dual_check<T: Scalar>(game: &GameInstance<T>, imp: &Imputation<T>, worth: T) -> DualCheck<T> {
    let w = game.weights();
    let first_violated = match imp {
        Imputation::Agent(a) => {
            let supports: Vec<Subset> = match game {
                GameInstance::Assignment(g) => g.edges().iter().map(|&(u, v)| Subset::from_iter([u, v])).collect(),
                GameInstance::GenericPacking(p) => p.columns().to_vec(),
                _ => unreachable!("validated style"),
            };
            supports.iter().zip(w).position(|(s, wj)| a.coalition_total(*s) < *wj)
        }
        Imputation::Satisfaction(y) => (0..game.agent_count()).find(|&v| {
            let cover = y
                .support
                .iter()
                .filter(|(q, _)| q.contains(v))
                .fold(T::zero(), |acc, (_, val)| acc + val.clone());
            cover < w[v]
        }),
    };
    let value = game.allocation_to(imp, game.agents());
    let feasible = first_violated.is_none();
    DualCheck { feasible, first_violated, optimal: feasible && value == worth, value, worth }
}

/// Brute-force core membership over all `2^n - 1` nonempty coalitions.
pub fn verify_core_membership<T: Scalar>(
    game: &GameInstance<T>,
    imp: &Imputation<T>,
    bound: usize,
) -> Result<CoreReport<T>> {
    CoreChecker::new(game, bound)?.check(imp)
}

/// Exact dual feasibility and optimality of `imp`, without tabulating
/// the whole characteristic function.
pub fn dual_optimality<T: Scalar>(game: &GameInstance<T>, imp: &Imputation<T>) -> Result<DualCheck<T>> {
    imp.validate(game)?;
    Ok(dual_check(game, imp, game.worth(game.agents())))
}
