use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::lps::build_lps;
use super::GameInstance;
use crate::error::{Error, Result};
use crate::graphs::is_perfect;
use crate::lp::{find_integral_dual, solve_lp, IntegralDualWitness};
use crate::scalar::Scalar;
use crate::subset::Subset;
use crate::wire;

/// Outcome of [`tdi_witness`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "T: Scalar", deserialize = "T: Scalar"))]
pub struct TdiReport<T> {
    #[serde(with = "wire::scalar")]
    pub lp_value: T,
    pub witness: IntegralDualWitness<T>,
    /// Nonzero entries of the witness by object (agent singletons for
    /// agent-style games).
    pub support: BTreeMap<Subset, u64>,
    /// Whether theory guarantees a witness: always for assignment and
    /// matroid games, iff the graph is perfect for stable-set and clique
    /// games, unknown for generic packing or graphs above the bound.
    pub witness_guaranteed: Option<bool>,
    pub note: String,
}

/// Searches for an integral optimal dual at the LP optimum.
///
/// Needs integral weights. A missing witness for a perfect graph or a
/// matroid would contradict total dual integrality.
pub fn tdi_witness<T: Scalar>(game: &GameInstance<T>, bound: usize) -> Result<TdiReport<T>> {
    if let Some(i) = game.weights().iter().position(|w| !w.is_integral()) {
        return Err(Error::Contract(format!(
            "integral dual search needs integral weights; weight {i} is {}",
            game.weights()[i]
        )));
    }
    let (witness_guaranteed, mut note) = guarantee(game, bound)?;
    let lps = build_lps(game, bound)?;
    let sol = solve_lp(&lps.primal)?;
    let witness = find_integral_dual(&lps.primal, &sol.value)?;
    let support = lps
        .row_objects
        .iter()
        .zip(&witness.assignment)
        .filter(|(_, &k)| k > 0)
        .map(|(q, &k)| (*q, k))
        .collect();
    if !witness.found {
        note.push_str(&format!("; no integral dual attains the optimum {}", sol.value));
    }
    Ok(TdiReport { lp_value: sol.value, witness, support, witness_guaranteed, note })
}

fn guarantee<T: Scalar>(game: &GameInstance<T>, bound: usize) -> Result<(Option<bool>, String)> {
    Ok(match game {
        GameInstance::Assignment(_) => (Some(true), "bipartite incidence matrix is totally unimodular".into()),
        GameInstance::Matroid(_) => (Some(true), "matroid rank system is totally dual integral".into()),
        GameInstance::GenericPacking(_) => (None, "no integrality guarantee for a generic 0/1 matrix".into()),
        GameInstance::StableSet(wg) | GameInstance::Clique(wg) => {
            if wg.graph.vertex_count() > bound {
                (None, format!("perfection not checked above {bound} vertices"))
            } else {
                let rep = is_perfect(&wg.graph, bound)?;
                if rep.is_perfect {
                    (Some(true), "graph is perfect".into())
                } else {
                    let t = rep.witness.expect("imperfect graphs have a witness");
                    (Some(false), format!("graph is not perfect: clique number < chromatic number on {{{t}}}"))
                }
            }
        }
    })
}
