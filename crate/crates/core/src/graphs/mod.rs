//! Simple undirected graphs on at most 64 vertices, with the exact
//! (exponential, desk-scale) algorithms the stable-set and clique games need.

mod cliques;
mod coloring;
mod perfect;
mod stable;

pub use cliques::{clique_number, enumerate_maximal_cliques, max_weight_clique, maximal_cliques_within};
pub use coloring::chromatic_number;
pub use perfect::{find_odd_hole_or_antihole, is_perfect, CycleKind, OddCycle, PerfectionReport};
pub use stable::max_weight_stable_set;
pub(crate) use stable::max_weight_compatible_set;

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::subset::{Subset, MAX_ELEMENTS};

/// Default size bound for the exhaustive perfection checks.
pub const DEFAULT_GRAPH_BOUND: usize = 12;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<Subset>,
}

impl Graph {
    pub fn empty(n: usize) -> Result<Self> {
        if n > MAX_ELEMENTS {
            return Err(Error::Malformed(format!(
                "graph with {n} vertices exceeds the {MAX_ELEMENTS}-vertex limit"
            )));
        }
        Ok(Graph { n, adj: vec![Subset::EMPTY; n] })
    }

    /// Builds a graph, rejecting self-loops, out-of-range endpoints and
    /// repeated edges (in either orientation).
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n)?;
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        if u >= self.n || v >= self.n {
            return Err(Error::Malformed(format!("edge [{u},{v}] out of range for n={}", self.n)));
        }
        if u == v {
            return Err(Error::Malformed(format!("self-loop at vertex {u}")));
        }
        if self.has_edge(u, v) {
            return Err(Error::Malformed(format!("duplicate edge [{u},{v}]")));
        }
        self.adj[u].insert(v);
        self.adj[v].insert(u);
        Ok(())
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::empty(n).expect("n within limit");
        for u in 0..n {
            g.adj[u] = Subset::full(n).without(u);
        }
        g
    }

    /// The cycle `0 - 1 - ... - (n-1) - 0`, `n >= 3`.
    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "cycles need at least three vertices");
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n, &edges).expect("cycle edges are valid")
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn vertices(&self) -> Subset {
        Subset::full(self.n)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adj[u].contains(v)
    }

    pub fn neighbors(&self, v: usize) -> Subset {
        self.adj[v]
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|a| a.len()).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.n)
            .flat_map(|u| self.adj[u].iter().filter(move |&v| v > u).map(move |v| (u, v)))
            .collect()
    }

    pub fn complement(&self) -> Graph {
        let all = self.vertices();
        Graph {
            n: self.n,
            adj: (0..self.n).map(|v| all.difference(self.adj[v]).without(v)).collect(),
        }
    }

    pub fn is_clique(&self, s: Subset) -> bool {
        s.is_subset(self.vertices()) && s.iter().all(|v| s.without(v).is_subset(self.adj[v]))
    }

    pub fn is_stable(&self, s: Subset) -> bool {
        s.is_subset(self.vertices()) && s.iter().all(|v| !self.adj[v].intersects(s))
    }

    /// Two-colouring `(U, V)` with the lowest vertex of every component in
    /// `U`, or `None` if the graph has an odd cycle.
    pub fn bipartition(&self) -> Option<(Subset, Subset)> {
        let mut side = vec![None; self.n];
        for s in 0..self.n {
            if side[s].is_some() {
                continue;
            }
            side[s] = Some(false);
            let mut stack = vec![s];
            while let Some(u) = stack.pop() {
                let su = side[u].expect("visited");
                for v in self.adj[u].iter() {
                    match side[v] {
                        None => {
                            side[v] = Some(!su);
                            stack.push(v);
                        }
                        Some(sv) if sv == su => return None,
                        Some(_) => {}
                    }
                }
            }
        }
        let left = (0..self.n).filter(|&v| side[v] == Some(false)).collect();
        let right = (0..self.n).filter(|&v| side[v] == Some(true)).collect();
        Some((left, right))
    }
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

/// A graph with a nonnegative weight on every vertex.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedGraph<T> {
    pub graph: Graph,
    pub weights: Vec<T>,
}

impl<T: Scalar> WeightedGraph<T> {
    pub fn new(graph: Graph, weights: Vec<T>) -> Result<Self> {
        if weights.len() != graph.vertex_count() {
            return Err(Error::Malformed(format!(
                "{} weights for {} vertices",
                weights.len(),
                graph.vertex_count()
            )));
        }
        check_nonnegative(&weights)?;
        Ok(WeightedGraph { graph, weights })
    }

    pub fn unit(graph: Graph) -> Self {
        let n = graph.vertex_count();
        WeightedGraph { graph, weights: vec![T::one(); n] }
    }

    pub fn weight_of(&self, s: Subset) -> T {
        s.iter().fold(T::zero(), |acc, v| acc + self.weights[v].clone())
    }
}

pub(crate) fn check_nonnegative<T: Scalar>(weights: &[T]) -> Result<()> {
    match weights.iter().position(|w| w.is_neg()) {
        Some(i) => Err(Error::NegativeWeight { index: i, value: weights[i].to_repr() }),
        None => Ok(()),
    }
}
