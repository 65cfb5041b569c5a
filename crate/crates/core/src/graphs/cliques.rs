use super::stable::max_weight_compatible_set;
use super::{Graph, WeightedGraph};
use crate::scalar::Scalar;
use crate::subset::Subset;

/// All inclusion-maximal cliques of `g`, each once, sorted by their
/// ascending member lists.
pub fn enumerate_maximal_cliques(g: &Graph) -> Vec<Subset> {
    maximal_cliques_within(g, g.vertices())
}

/// Maximal cliques of the induced subgraph `g[t]`.
pub fn maximal_cliques_within(g: &Graph, t: Subset) -> Vec<Subset> {
    let mut out = Vec::new();
    if !t.is_empty() {
        bron_kerbosch(g, Subset::EMPTY, t, Subset::EMPTY, &mut out);
    }
    out.sort_by(|a, b| a.lex_cmp(*b));
    out
}

/// Bron–Kerbosch with Tomita pivoting on bit sets.
fn bron_kerbosch(g: &Graph, r: Subset, mut p: Subset, mut x: Subset, out: &mut Vec<Subset>) {
    if p.is_empty() {
        if x.is_empty() {
            out.push(r);
        }
        return;
    }
    let pivot = p
        .union(x)
        .iter()
        .max_by_key(|&u| (p.intersection(g.neighbors(u)).len(), std::cmp::Reverse(u)))
        .expect("p is nonempty");
    for v in p.difference(g.neighbors(pivot)).iter() {
        let nv = g.neighbors(v);
        bron_kerbosch(g, r.with(v), p.intersection(nv), x.intersection(nv), out);
        p.remove(v);
        x.insert(v);
    }
}

/// ω(g[t]): size of a largest clique in the induced subgraph.
pub fn clique_number_within(g: &Graph, t: Subset) -> usize {
    fn grow(g: &Graph, size: usize, cand: Subset, best: &mut usize) {
        if size + cand.len() <= *best {
            return;
        }
        let Some(v) = cand.first() else {
            *best = size;
            return;
        };
        grow(g, size + 1, cand.intersection(g.neighbors(v)), best);
        grow(g, size, cand.without(v), best);
    }
    let mut best = 0;
    grow(g, 0, t, &mut best);
    best
}

/// ω(g).
pub fn clique_number(g: &Graph) -> usize {
    clique_number_within(g, g.vertices())
}

/// Maximum weight clique of `g[t]`; ties go to the lexicographically
/// smallest vertex list.
pub fn max_weight_clique<T: Scalar>(wg: &WeightedGraph<T>, t: Subset) -> (Subset, T) {
    let g = &wg.graph;
    let compat: Vec<Subset> = (0..g.vertex_count()).map(|v| g.neighbors(v)).collect();
    max_weight_compatible_set(&compat, &wg.weights, t.intersection(g.vertices()))
}
