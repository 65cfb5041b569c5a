use serde::{Deserialize, Serialize};

use super::cliques::clique_number_within;
use super::coloring::{chromatic_number_within, colorable_within};
use super::Graph;
use crate::error::{Error, Result};
use crate::subset::Subset;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PerfectionReport {
    pub is_perfect: bool,
    /// First vertex subset (in increasing mask order) whose induced
    /// subgraph has ω < χ.
    pub witness: Option<Subset>,
    pub omega: usize,
    pub chi: usize,
}

/// Checks ω(G[T]) = χ(G[T]) for every nonempty vertex subset `T`.
///
/// Exponential; refuses graphs with more than `bound` vertices.
pub fn is_perfect(g: &Graph, bound: usize) -> Result<PerfectionReport> {
    Error::check_bound("graph vertex count", g.vertex_count(), bound)?;
    let mut witness = None;
    for t in g.vertices().subsets().skip(1) {
        let omega = clique_number_within(g, t);
        if !colorable_within(g, t, omega) {
            witness = Some(t);
            break;
        }
    }
    let all = g.vertices();
    Ok(PerfectionReport {
        is_perfect: witness.is_none(),
        witness,
        omega: clique_number_within(g, all),
        chi: chromatic_number_within(g, all),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CycleKind {
    Hole,
    Antihole,
}

/// An induced odd cycle of length at least five, in `g` (a hole) or in its
/// complement (an antihole). `cycle` lists the vertices in cyclic order of
/// the graph it is induced in, starting from the smallest vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OddCycle {
    pub kind: CycleKind,
    pub cycle: Vec<usize>,
}

/// Returns a shortest odd hole, or failing that a shortest odd antihole.
pub fn find_odd_hole_or_antihole(g: &Graph, bound: usize) -> Result<Option<OddCycle>> {
    Error::check_bound("graph vertex count", g.vertex_count(), bound)?;
    if let Some(cycle) = shortest_odd_hole(g) {
        return Ok(Some(OddCycle { kind: CycleKind::Hole, cycle }));
    }
    Ok(shortest_odd_hole(&g.complement()).map(|cycle| OddCycle { kind: CycleKind::Antihole, cycle }))
}

fn shortest_odd_hole(g: &Graph) -> Option<Vec<usize>> {
    let n = g.vertex_count();
    (5..=n).step_by(2).find_map(|k| {
        g.vertices()
            .subsets()
            .filter(|s| s.len() == k)
            .find_map(|s| induced_cycle_order(g, s))
    })
}

/// Cyclic order of `s` if `g[s]` is a single cycle.
fn induced_cycle_order(g: &Graph, s: Subset) -> Option<Vec<usize>> {
    if s.iter().any(|v| g.neighbors(v).intersection(s).len() != 2) {
        return None;
    }
    let start = s.first()?;
    let mut order = vec![start];
    let mut prev = start;
    let mut cur = g.neighbors(start).intersection(s).first()?;
    while cur != start {
        order.push(cur);
        let next = g.neighbors(cur).intersection(s).without(prev).first()?;
        prev = cur;
        cur = next;
    }
    // A disjoint union of cycles returns early with a short order.
    (order.len() == s.len()).then_some(order)
}
