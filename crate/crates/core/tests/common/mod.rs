//! Seeded instance generators and brute-force oracles shared by the
//! integration tests.
#![allow(dead_code)]

use dualcore::games::{AssignmentGame, GameInstance};
use dualcore::graphs::{Graph, WeightedGraph};
use dualcore::matroids::{Matroid, WeightedMatroid};
use dualcore::{Rational, Scalar, Subset};
use rand::Rng;

pub fn r(n: i64) -> Rational {
    Rational::from_int(n)
}

pub fn int_weights(rng: &mut impl Rng, n: usize, max: i64) -> Vec<Rational> {
    (0..n).map(|_| r(rng.gen_range(0..=max))).collect()
}

/// Nonnegative rationals `p/q` with `p <= 12`, `q <= 4`.
pub fn rational_weights(rng: &mut impl Rng, n: usize) -> Vec<Rational> {
    (0..n).map(|_| Rational::from_ratio(rng.gen_range(0..=12), rng.gen_range(1..=4))).collect()
}

pub fn random_graph(rng: &mut impl Rng, n: usize, p: f64) -> Graph {
    let mut g = Graph::empty(n).unwrap();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                g.add_edge(u, v).unwrap();
            }
        }
    }
    g
}

/// Random bipartite graph with random sides; returns the sides too.
pub fn random_bipartite(rng: &mut impl Rng, n: usize, p: f64) -> (Graph, Subset, Subset) {
    let left: Subset = (0..n).filter(|_| rng.gen_bool(0.5)).collect();
    let right = Subset::full(n).difference(left);
    let mut g = Graph::empty(n).unwrap();
    for u in left.iter() {
        for v in right.iter() {
            if rng.gen_bool(p) {
                g.add_edge(u, v).unwrap();
            }
        }
    }
    (g, left, right)
}

/// Chordal graph: each new vertex joins a random clique of earlier ones,
/// so the reverse insertion order is a perfect elimination ordering.
pub fn random_chordal(rng: &mut impl Rng, n: usize) -> Graph {
    let mut g = Graph::empty(n).unwrap();
    for v in 1..n {
        if rng.gen_bool(0.15) {
            continue;
        }
        let u = rng.gen_range(0..v);
        let mut clique = Subset::singleton(u);
        for x in g.neighbors(u).iter().filter(|&x| x < v) {
            if rng.gen_bool(0.6) && clique.iter().all(|c| g.has_edge(c, x)) {
                clique.insert(x);
            }
        }
        for c in clique.iter() {
            g.add_edge(c, v).unwrap();
        }
    }
    g
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PerfectFamily {
    Bipartite,
    CoBipartite,
    Chordal,
}

pub fn perfect_graph(rng: &mut impl Rng, family: PerfectFamily, n: usize) -> Graph {
    let p = rng.gen_range(0.2..0.8);
    match family {
        PerfectFamily::Bipartite => random_bipartite(rng, n, p).0,
        PerfectFamily::CoBipartite => random_bipartite(rng, n, p).0.complement(),
        PerfectFamily::Chordal => random_chordal(rng, n),
    }
}

/// Random assignment game with `|U|, |V| <= max_side` and integer
/// weights in `0..=max_w`.
pub fn random_assignment(rng: &mut impl Rng, max_side: usize, max_w: i64) -> GameInstance<Rational> {
    let nu = rng.gen_range(1..=max_side);
    let nv = rng.gen_range(1..=max_side);
    let n = nu + nv;
    let p = rng.gen_range(0.3..1.0);
    let mut g = Graph::empty(n).unwrap();
    for u in 0..nu {
        for v in nu..n {
            if rng.gen_bool(p) {
                g.add_edge(u, v).unwrap();
            }
        }
    }
    let w = int_weights(rng, g.edge_count(), max_w);
    let game = AssignmentGame::new(g, Subset::full(nu), Subset::full(n).difference(Subset::full(nu)), w).unwrap();
    GameInstance::Assignment(game)
}

pub fn stable_game(g: Graph, w: Vec<Rational>) -> GameInstance<Rational> {
    GameInstance::StableSet(WeightedGraph::new(g, w).unwrap())
}

pub const MATROID_KINDS: [&str; 4] = ["uniform", "graphic", "partition", "explicit"];

/// A random matroid of the named kind on at most `max_n` elements.
pub fn random_matroid(rng: &mut impl Rng, kind: &str, max_n: usize) -> Matroid {
    match kind {
        "uniform" => {
            let n = rng.gen_range(1..=max_n);
            Matroid::uniform(n, rng.gen_range(0..=n)).unwrap()
        }
        "graphic" => loop {
            let (n, p) = (rng.gen_range(2..=5), rng.gen_range(0.3..0.9));
            let g = random_graph(rng, n, p);
            if (1..=max_n).contains(&g.edge_count()) {
                return Matroid::graphic(g).unwrap();
            }
        },
        "partition" => {
            let n = rng.gen_range(1..=max_n);
            let blocks_n = rng.gen_range(1..=n);
            let mut blocks = vec![Vec::new(); blocks_n];
            for e in 0..n {
                blocks[if e < blocks_n { e } else { rng.gen_range(0..blocks_n) }].push(e);
            }
            for b in &mut blocks {
                b.sort_unstable();
            }
            let caps = blocks.iter().map(|b| rng.gen_range(0..=b.len())).collect();
            Matroid::partition(n, &blocks, caps).unwrap()
        }
        "explicit" => {
            // the independence list of a random matroid of another kind
            let base = ["uniform", "graphic", "partition"][rng.gen_range(0..3)];
            let inner = random_matroid(rng, base, max_n);
            let list: Vec<Vec<usize>> = inner
                .ground()
                .subsets()
                .filter(|s| inner.is_independent(*s))
                .map(|s| s.to_vec())
                .collect();
            Matroid::explicit(inner.ground_size(), &list).unwrap()
        }
        other => panic!("unknown kind {other}"),
    }
}

pub fn matroid_game(m: Matroid, w: Vec<Rational>) -> GameInstance<Rational> {
    GameInstance::Matroid(WeightedMatroid::new(m, w).unwrap())
}

/// Maximum weight stable set by enumerating all subsets.
pub fn brute_stable(wg: &WeightedGraph<Rational>, t: Subset) -> Rational {
    t.subsets().filter(|s| wg.graph.is_stable(*s)).map(|s| wg.weight_of(s)).max().unwrap()
}

/// Maximum weight clique by enumerating all subsets.
pub fn brute_clique(wg: &WeightedGraph<Rational>, t: Subset) -> Rational {
    t.subsets().filter(|s| wg.graph.is_clique(*s)).map(|s| wg.weight_of(s)).max().unwrap()
}
