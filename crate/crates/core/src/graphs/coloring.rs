use super::cliques::clique_number_within;
use super::Graph;
use crate::subset::Subset;

/// Whether `g[t]` has a proper colouring with `k` colours.
pub(crate) fn colorable_within(g: &Graph, t: Subset, k: usize) -> bool {
    // Highest degree first keeps the backtracking shallow.
    let mut order: Vec<usize> = t.iter().collect();
    order.sort_by_key(|&v| std::cmp::Reverse(g.neighbors(v).intersection(t).len()));
    let mut color = vec![usize::MAX; g.vertex_count()];

    fn assign(g: &Graph, order: &[usize], idx: usize, k: usize, used: usize, color: &mut [usize]) -> bool {
        let Some(&v) = order.get(idx) else {
            return true;
        };
        // A fresh colour is only tried once (colour symmetry).
        for c in 0..k.min(used + 1) {
            if g.neighbors(v).iter().any(|u| color[u] == c) {
                continue;
            }
            color[v] = c;
            if assign(g, order, idx + 1, k, used.max(c + 1), color) {
                return true;
            }
        }
        color[v] = usize::MAX;
        false
    }

    assign(g, &order, 0, k, 0, &mut color)
}

/// χ(g[t]).
pub(crate) fn chromatic_number_within(g: &Graph, t: Subset) -> usize {
    let mut k = clique_number_within(g, t);
    while !colorable_within(g, t, k) {
        k += 1;
    }
    k
}

/// χ(g): fewest colours in a proper vertex colouring.
pub fn chromatic_number(g: &Graph) -> usize {
    chromatic_number_within(g, g.vertices())
}
