use serde::{Deserialize, Serialize};

use super::imputation::{AgentImputation, Imputation, ImputationStyle, SatisfactionImputation};
use super::GameInstance;
use crate::error::{Error, Result};
use crate::graphs::enumerate_maximal_cliques;
use crate::lp::{check_certificates, solve_lp, LinearProgram, LpStatus, RowSense};
use crate::scalar::Scalar;
use crate::subset::Subset;
use crate::wire;

/// The primal packing program of a game and its covering dual.
#[derive(Debug, Clone, PartialEq)]
pub struct GameLps<T> {
    pub primal: LinearProgram<T>,
    pub dual: LinearProgram<T>,
    /// What each primal row (dual variable) stands for: a singleton agent
    /// in agent-style games, an object otherwise.
    pub row_objects: Vec<Subset>,
}

/// Builds `max w·x, A x <= b, x >= 0` and its dual.
///
/// * assignment: one column per edge, one row per non-isolated vertex;
/// * stable set: one column per vertex, one row per maximal clique;
/// * clique: one column per vertex, one row per maximal stable set;
/// * matroid: one column per element, one row `x(S) <= r(S)` per nonempty
///   `S` (refused above `bound` elements);
/// * generic packing: the matrix itself, minus all-zero rows.
pub fn build_lps<T: Scalar>(game: &GameInstance<T>, bound: usize) -> Result<GameLps<T>> {
    let one = T::one;
    let mut primal = LinearProgram::maximize(game.weights().to_vec());
    let mut row_objects = Vec::new();
    match game {
        GameInstance::Assignment(a) => {
            for v in 0..a.graph().vertex_count() {
                let coeffs: Vec<(usize, T)> = a
                    .edges()
                    .iter()
                    .enumerate()
                    .filter(|(_, &(x, y))| x == v || y == v)
                    .map(|(j, _)| (j, one()))
                    .collect();
                if !coeffs.is_empty() {
                    primal.add_row(coeffs, RowSense::Le, one());
                    row_objects.push(Subset::singleton(v));
                }
            }
        }
        GameInstance::StableSet(wg) | GameInstance::Clique(wg) => {
            let host = match game {
                GameInstance::Clique(_) => wg.graph.complement(),
                _ => wg.graph.clone(),
            };
            for q in enumerate_maximal_cliques(&host) {
                primal.add_row(q.iter().map(|v| (v, one())).collect(), RowSense::Le, one());
                row_objects.push(q);
            }
        }
        GameInstance::Matroid(wm) => {
            Error::check_bound("matroid ground set", wm.matroid.ground_size(), bound)?;
            for s in wm.matroid.ground().subsets().skip(1) {
                let rank = T::from_int(wm.matroid.rank_of(s) as i64);
                primal.add_row(s.iter().map(|e| (e, one())).collect(), RowSense::Le, rank);
                row_objects.push(s);
            }
        }
        GameInstance::GenericPacking(p) => {
            for i in 0..p.row_count() {
                let coeffs: Vec<(usize, T)> = p
                    .columns()
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| c.contains(i))
                    .map(|(j, _)| (j, one()))
                    .collect();
                if !coeffs.is_empty() {
                    primal.add_row(coeffs, RowSense::Le, one());
                    row_objects.push(Subset::singleton(i));
                }
            }
        }
    }
    let dual = primal.dual()?;
    Ok(GameLps { primal, dual, row_objects })
}

/// An optimal dual packaged as the game's imputation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "T: Scalar", deserialize = "T: Scalar"))]
pub struct CoreSolution<T> {
    pub imputation: Imputation<T>,
    /// Common optimum of the primal and dual programs.
    #[serde(with = "wire::scalar")]
    pub value: T,
    /// The primal vertex, one entry per column.
    #[serde(with = "wire::scalar_vec")]
    pub primal: Vec<T>,
    /// The dual vector, one entry per primal row.
    #[serde(with = "wire::scalar_vec")]
    pub dual: Vec<T>,
    pub primal_integral: bool,
    /// Every duality certificate check passed.
    pub certified: bool,
}

/// Solves the primal program; its basic dual is the imputation.
pub fn solve_dual_core<T: Scalar>(game: &GameInstance<T>, bound: usize) -> Result<CoreSolution<T>> {
    let lps = build_lps(game, bound)?;
    let sol = solve_lp(&lps.primal)?;
    if sol.status != LpStatus::Optimal {
        return Err(Error::Contract(format!("packing program reported {:?}", sol.status)));
    }
    let certified = check_certificates(&lps.primal, &sol)?.all_pass();
    let imputation = dual_to_imputation(game, &lps.row_objects, &sol.dual);
    Ok(CoreSolution {
        imputation,
        primal_integral: sol.primal.iter().all(Scalar::is_integral),
        value: sol.value,
        primal: sol.primal,
        dual: sol.dual,
        certified,
    })
}

/// Packages a dual vector (one entry per primal row) as an imputation.
pub(crate) fn dual_to_imputation<T: Scalar>(game: &GameInstance<T>, row_objects: &[Subset], dual: &[T]) -> Imputation<T> {
    match game.imputation_style() {
        ImputationStyle::Agent => {
            let mut payoffs = vec![T::zero(); game.agent_count()];
            for (obj, y) in row_objects.iter().zip(dual) {
                payoffs[obj.first().expect("singleton")] = y.clone();
            }
            Imputation::Agent(AgentImputation::from_slice(&payoffs))
        }
        ImputationStyle::Satisfaction => {
            let support = row_objects
                .iter()
                .zip(dual)
                .filter(|(_, y)| !y.is_zero())
                .map(|(q, y)| (*q, y.clone()))
                .collect();
            Imputation::Satisfaction(SatisfactionImputation::new(support))
        }
    }
}
