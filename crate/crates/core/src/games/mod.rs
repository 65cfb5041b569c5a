//! Cooperative packing games, their dual-LP core imputations, top-down
//! allocation, brute-force core verification, integral duals and audits.

mod audit;
mod core;
mod imputation;
mod lps;
mod tdi;

pub use self::audit::{equivalence_audit, AuditReport, Disagreement, ForwardCheck, SampleKind};
pub use self::core::{dual_optimality, verify_core_membership, CoreChecker, CoreReport, DualCheck, Violation};
pub use self::imputation::{
    allocate_top_down, satisfaction, AgentImputation, Allocation, Imputation, ImputationStyle,
    SatisfactionImputation,
};
pub use self::lps::{build_lps, solve_dual_core, CoreSolution, GameLps};
pub use self::tdi::{tdi_witness, TdiReport};

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::graphs::{check_nonnegative, max_weight_clique, max_weight_stable_set, Graph, WeightedGraph};
use crate::matroids::{greedy_within, WeightedMatroid};
use crate::scalar::Scalar;
use crate::subset::{Subset, MAX_ELEMENTS};

/// Default bound on the number of agents for coalition enumeration.
pub const DEFAULT_COALITION_BOUND: usize = 10;

/// Bipartite graph with declared sides and one weight per edge.
#[derive(Debug, Clone, PartialEq)]
pub struct AssignmentGame<T> {
    graph: Graph,
    left: Subset,
    right: Subset,
    edges: Vec<(usize, usize)>,
    weights: Vec<T>,
}

impl<T: Scalar> AssignmentGame<T> {
    /// `weights[i]` belongs to `graph.edges()[i]`. The sides must partition
    /// the vertices and every edge must cross them.
    pub fn new(graph: Graph, left: Subset, right: Subset, weights: Vec<T>) -> Result<Self> {
        let all = graph.vertices();
        if left.intersects(right) || left.union(right) != all {
            return Err(Error::NotBipartite(format!(
                "parts U={{{left}}} and V={{{right}}} do not partition the {} vertices",
                graph.vertex_count()
            )));
        }
        let edges = graph.edges();
        if let Some(&(u, v)) = edges.iter().find(|&&(u, v)| left.contains(u) == left.contains(v)) {
            return Err(Error::NotBipartite(format!("edge ({u},{v}) lies inside one part")));
        }
        if weights.len() != edges.len() {
            return Err(Error::Malformed(format!("{} weights for {} edges", weights.len(), edges.len())));
        }
        check_nonnegative(&weights)?;
        Ok(AssignmentGame { graph, left, right, edges, weights })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn left(&self) -> Subset {
        self.left
    }

    pub fn right(&self) -> Subset {
        self.right
    }

    /// Edges in [`Graph::edges`] order, aligned with [`Self::weights`].
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn weights(&self) -> &[T] {
        &self.weights
    }

    fn edge_weight(&self, u: usize, v: usize) -> &T {
        let key = (u.min(v), u.max(v));
        let i = self.edges.binary_search(&key).expect("edge exists");
        &self.weights[i]
    }

    /// Maximum weight matching inside `t`, memoized by coalition.
    fn matching_worth(&self, t: Subset, memo: &mut HashMap<Subset, T>) -> T {
        let Some(v) = t.iter().find(|&v| self.graph.neighbors(v).intersects(t)) else {
            return T::zero();
        };
        if let Some(w) = memo.get(&t) {
            return w.clone();
        }
        let rest = t.without(v);
        let mut best = self.matching_worth(rest, memo);
        for u in self.graph.neighbors(v).intersection(rest).iter() {
            let w = self.edge_weight(v, u).clone() + self.matching_worth(rest.without(u), memo);
            if w > best {
                best = w;
            }
        }
        memo.insert(t, best.clone());
        best
    }
}

/// Packing game `max w·x, A x <= 1, x in {0,1}` over a 0/1 matrix whose
/// rows are the agents and whose columns are the objects.
#[derive(Debug, Clone, PartialEq)]
pub struct PackingGame<T> {
    rows: usize,
    columns: Vec<Subset>,
    weights: Vec<T>,
}

impl<T: Scalar> PackingGame<T> {
    /// `matrix[i][j]` is the entry for agent `i` and column `j`.
    pub fn new(matrix: &[Vec<i64>], weights: Vec<T>) -> Result<Self> {
        let rows = matrix.len();
        let cols = matrix.first().map_or(0, Vec::len);
        if rows > MAX_ELEMENTS || cols > MAX_ELEMENTS {
            return Err(Error::Malformed(format!(
                "{rows}x{cols} matrix exceeds the {MAX_ELEMENTS} row or column limit"
            )));
        }
        let mut columns = vec![Subset::EMPTY; cols];
        for (i, row) in matrix.iter().enumerate() {
            if row.len() != cols {
                return Err(Error::Malformed(format!("matrix row {i} has {} entries, expected {cols}", row.len())));
            }
            for (j, &a) in row.iter().enumerate() {
                match a {
                    0 => {}
                    1 => columns[j].insert(i),
                    _ => return Err(Error::NonBinaryMatrix { row: i, col: j }),
                }
            }
        }
        if let Some(j) = columns.iter().position(|c| c.is_empty()) {
            return Err(Error::Malformed(format!("matrix column {j} has no nonzero entry")));
        }
        if weights.len() != cols {
            return Err(Error::Malformed(format!("{} weights for {cols} columns", weights.len())));
        }
        check_nonnegative(&weights)?;
        Ok(PackingGame { rows, columns, weights })
    }

    pub fn row_count(&self) -> usize {
        self.rows
    }

    /// Support (set of agents) of every column.
    pub fn columns(&self) -> &[Subset] {
        &self.columns
    }

    pub fn weights(&self) -> &[T] {
        &self.weights
    }

    pub fn matrix(&self) -> Vec<Vec<i64>> {
        (0..self.rows)
            .map(|i| self.columns.iter().map(|c| i64::from(c.contains(i))).collect())
            .collect()
    }

    /// Best packing of columns whose support lies inside `t`.
    fn packing_worth(&self, t: Subset) -> T {
        let usable: Subset = (0..self.columns.len()).filter(|&j| self.columns[j].is_subset(t)).collect();
        let compat: Vec<Subset> = self
            .columns
            .iter()
            .map(|c| (0..self.columns.len()).filter(|&k| !self.columns[k].intersects(*c)).collect())
            .collect();
        crate::graphs::max_weight_compatible_set(&compat, &self.weights, usable).1
    }
}

/// One of the five game families. Agents are always `0..agent_count()`.
#[derive(Debug, Clone, PartialEq)]
pub enum GameInstance<T> {
    /// Agents are the vertices; worth is a maximum weight matching.
    Assignment(AssignmentGame<T>),
    /// Agents are the vertices; worth is a maximum weight stable set.
    StableSet(WeightedGraph<T>),
    /// Agents are the vertices; worth is a maximum weight clique.
    Clique(WeightedGraph<T>),
    /// Agents are the elements; worth is a maximum weight independent set.
    Matroid(WeightedMatroid<T>),
    /// Agents are the matrix rows; worth is a best 0/1 packing.
    GenericPacking(PackingGame<T>),
}

impl<T: Scalar> GameInstance<T> {
    pub fn kind_name(&self) -> &'static str {
        match self {
            GameInstance::Assignment(_) => "assignment",
            GameInstance::StableSet(_) => "stable_set",
            GameInstance::Clique(_) => "clique",
            GameInstance::Matroid(_) => "matroid",
            GameInstance::GenericPacking(_) => "generic_packing",
        }
    }

    pub fn agent_count(&self) -> usize {
        match self {
            GameInstance::Assignment(a) => a.graph.vertex_count(),
            GameInstance::StableSet(wg) | GameInstance::Clique(wg) => wg.graph.vertex_count(),
            GameInstance::Matroid(wm) => wm.matroid.ground_size(),
            GameInstance::GenericPacking(p) => p.rows,
        }
    }

    /// The grand coalition.
    pub fn agents(&self) -> Subset {
        Subset::full(self.agent_count())
    }

    /// Agent-based (bottom-up) or object-based (top-down) imputations.
    pub fn imputation_style(&self) -> ImputationStyle {
        match self {
            GameInstance::Assignment(_) | GameInstance::GenericPacking(_) => ImputationStyle::Agent,
            _ => ImputationStyle::Satisfaction,
        }
    }

    /// The combinatorial weights: per edge, vertex, element or column.
    pub fn weights(&self) -> &[T] {
        match self {
            GameInstance::Assignment(a) => &a.weights,
            GameInstance::StableSet(wg) | GameInstance::Clique(wg) => &wg.weights,
            GameInstance::Matroid(wm) => &wm.weights,
            GameInstance::GenericPacking(p) => &p.weights,
        }
    }

    /// Whether `s` may carry satisfaction: a clique (stable-set game), a
    /// stable set (clique game) or a subset of the ground set (matroid).
    pub fn is_object(&self, s: Subset) -> bool {
        if s.is_empty() {
            return false;
        }
        match self {
            GameInstance::StableSet(wg) => wg.graph.is_clique(s),
            GameInstance::Clique(wg) => wg.graph.is_stable(s),
            GameInstance::Matroid(wm) => s.is_subset(wm.matroid.ground()),
            GameInstance::Assignment(_) | GameInstance::GenericPacking(_) => false,
        }
    }

    /// Objective coefficient of object `s` in the covering dual: one for a
    /// clique or stable set, `r(s)` for a matroid subset, zero when empty.
    pub fn object_coefficient(&self, s: Subset) -> T {
        if s.is_empty() {
            return T::zero();
        }
        match self {
            GameInstance::Matroid(wm) => T::from_int(wm.matroid.rank_of(s) as i64),
            _ => T::one(),
        }
    }

    /// worth(T): the optimum of the game's combinatorial problem on `t`.
    pub fn worth(&self, t: Subset) -> T {
        let t = t.intersection(self.agents());
        match self {
            GameInstance::Assignment(a) => a.matching_worth(t, &mut HashMap::new()),
            GameInstance::StableSet(wg) => max_weight_stable_set(wg, t).1,
            GameInstance::Clique(wg) => max_weight_clique(wg, t).1,
            GameInstance::Matroid(wm) => greedy_within(wm, t).1,
            GameInstance::GenericPacking(p) => p.packing_worth(t),
        }
    }

    /// worth of every coalition, indexed by its bit mask.
    pub fn worth_table(&self, bound: usize) -> Result<Vec<T>> {
        Error::check_bound("number of agents", self.agent_count(), bound)?;
        let all = self.agents();
        Ok(match self {
            GameInstance::Assignment(a) => {
                let mut memo = HashMap::new();
                all.subsets().map(|t| a.matching_worth(t, &mut memo)).collect()
            }
            _ => all.subsets().map(|t| self.worth(t)).collect(),
        })
    }
}
