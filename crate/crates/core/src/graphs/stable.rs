use std::cmp::Ordering;

use super::WeightedGraph;
use crate::scalar::Scalar;
use crate::subset::Subset;

/// Maximum weight stable set of `g[t]`; ties go to the lexicographically
/// smallest vertex list.
pub fn max_weight_stable_set<T: Scalar>(wg: &WeightedGraph<T>, t: Subset) -> (Subset, T) {
    let g = &wg.graph;
    let all = g.vertices();
    let compat: Vec<Subset> = (0..g.vertex_count())
        .map(|v| all.difference(g.neighbors(v)).without(v))
        .collect();
    max_weight_compatible_set(&compat, &wg.weights, t.intersection(all))
}

/// Branch and bound over sets whose members are pairwise compatible
/// (`compat[v]` lists the vertices that may join `v`).
pub(crate) fn max_weight_compatible_set<T: Scalar>(compat: &[Subset], weights: &[T], t: Subset) -> (Subset, T) {
    struct Best<T> {
        set: Subset,
        weight: T,
    }

    fn go<T: Scalar>(compat: &[Subset], w: &[T], chosen: Subset, cand: Subset, weight: T, best: &mut Best<T>) {
        let bound = cand.iter().fold(weight.clone(), |acc, v| acc + w[v].clone());
        if bound < best.weight && !bound.near_eq(&best.weight) {
            return;
        }
        let Some(v) = cand.first() else {
            let better = weight > best.weight && !weight.near_eq(&best.weight)
                || weight.near_eq(&best.weight) && chosen.lex_cmp(best.set) == Ordering::Less;
            if better {
                best.set = chosen;
                best.weight = weight;
            }
            return;
        };
        go(compat, w, chosen.with(v), cand.without(v).intersection(compat[v]), weight.clone() + w[v].clone(), best);
        go(compat, w, chosen, cand.without(v), weight, best);
    }

    // The empty set is always feasible and lexicographically first.
    let mut best = Best { set: Subset::EMPTY, weight: T::zero() };
    go(compat, weights, Subset::EMPTY, t, T::zero(), &mut best);
    (best.set, best.weight)
}
