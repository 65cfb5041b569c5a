//! Matroids given by a rank oracle, the greedy algorithm, and exhaustive
//! axiom checks for matroids that come from untrusted files.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graphs::{check_nonnegative, Graph};
use crate::scalar::Scalar;
use crate::subset::{Subset, MAX_ELEMENTS};

/// Default size bound for exhaustive matroid checks and subset LPs.
pub const DEFAULT_MATROID_BOUND: usize = 10;

#[derive(Debug, Clone, PartialEq)]
pub enum MatroidKind {
    /// Every set of size at most `k` is independent.
    Uniform { k: usize },
    /// Elements are the edges of `graph` in [`Graph::edges`] order; a set is
    /// independent iff it is a forest.
    Graphic { graph: Graph, edges: Vec<(usize, usize)> },
    /// At most `capacities[b]` elements from each block `blocks[b]`.
    Partition { blocks: Vec<Subset>, capacities: Vec<usize> },
    /// The independent sets listed explicitly.
    Explicit { independent: Vec<Subset> },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Matroid {
    n: usize,
    kind: MatroidKind,
}

fn check_ground(n: usize) -> Result<()> {
    if n > MAX_ELEMENTS {
        return Err(Error::Malformed(format!(
            "ground set of {n} elements exceeds the {MAX_ELEMENTS}-element limit"
        )));
    }
    Ok(())
}

impl Matroid {
    pub fn uniform(n: usize, k: usize) -> Result<Self> {
        check_ground(n)?;
        Ok(Matroid { n, kind: MatroidKind::Uniform { k } })
    }

    pub fn graphic(graph: Graph) -> Result<Self> {
        let edges = graph.edges();
        check_ground(edges.len())?;
        Ok(Matroid { n: edges.len(), kind: MatroidKind::Graphic { graph, edges } })
    }

    /// `blocks` must partition `0..n`.
    pub fn partition(n: usize, blocks: &[Vec<usize>], capacities: Vec<usize>) -> Result<Self> {
        check_ground(n)?;
        if blocks.len() != capacities.len() {
            return Err(Error::Malformed(format!(
                "{} blocks but {} capacities",
                blocks.len(),
                capacities.len()
            )));
        }
        let mut seen = Subset::EMPTY;
        let mut sets = Vec::with_capacity(blocks.len());
        for (b, block) in blocks.iter().enumerate() {
            let mut s = Subset::EMPTY;
            for &e in block {
                if e >= n || seen.contains(e) {
                    return Err(Error::Malformed(format!(
                        "block {b}: element {e} is out of range or already in another block"
                    )));
                }
                seen.insert(e);
                s.insert(e);
            }
            sets.push(s);
        }
        if seen != Subset::full(n) {
            return Err(Error::Malformed("partition blocks do not cover the ground set".into()));
        }
        Ok(Matroid { n, kind: MatroidKind::Partition { blocks: sets, capacities } })
    }

    /// The listed sets, deduplicated. Axioms are not checked here; see
    /// [`verify_rank_axioms`].
    pub fn explicit(n: usize, independent: &[Vec<usize>]) -> Result<Self> {
        check_ground(n)?;
        let mut sets = Vec::with_capacity(independent.len());
        for (i, list) in independent.iter().enumerate() {
            if let Some(&e) = list.iter().find(|&&e| e >= n) {
                return Err(Error::Malformed(format!("independent set {i} has element {e} >= {n}")));
            }
            sets.push(list.iter().collect::<Subset>());
        }
        sets.sort();
        sets.dedup();
        Ok(Matroid { n, kind: MatroidKind::Explicit { independent: sets } })
    }

    pub fn ground_size(&self) -> usize {
        self.n
    }

    pub fn ground(&self) -> Subset {
        Subset::full(self.n)
    }

    pub fn kind(&self) -> &MatroidKind {
        &self.kind
    }

    pub fn kind_name(&self) -> &'static str {
        match self.kind {
            MatroidKind::Uniform { .. } => "uniform",
            MatroidKind::Graphic { .. } => "graphic",
            MatroidKind::Partition { .. } => "partition",
            MatroidKind::Explicit { .. } => "explicit",
        }
    }

    /// r(S): size of a largest independent subset of `s`.
    pub fn rank(&self, s: Subset) -> Result<usize> {
        if !s.is_subset(self.ground()) {
            return Err(Error::Malformed(format!(
                "set {{{s}}} is not inside the ground set of {} elements",
                self.n
            )));
        }
        Ok(self.rank_of(s))
    }

    /// Rank of a set already known to lie in the ground set.
    pub(crate) fn rank_of(&self, s: Subset) -> usize {
        match &self.kind {
            MatroidKind::Uniform { k } => s.len().min(*k),
            MatroidKind::Graphic { graph, edges } => {
                let mut parent: Vec<usize> = (0..graph.vertex_count()).collect();
                fn find(p: &mut [usize], mut x: usize) -> usize {
                    while p[x] != x {
                        p[x] = p[p[x]];
                        x = p[x];
                    }
                    x
                }
                let mut rank = 0;
                for e in s.iter() {
                    let (u, v) = edges[e];
                    let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
                    if ru != rv {
                        parent[ru] = rv;
                        rank += 1;
                    }
                }
                rank
            }
            MatroidKind::Partition { blocks, capacities } => blocks
                .iter()
                .zip(capacities)
                .map(|(b, &c)| b.intersection(s).len().min(c))
                .sum(),
            MatroidKind::Explicit { independent } => independent
                .iter()
                .filter(|i| i.is_subset(s))
                .map(|i| i.len())
                .max()
                .unwrap_or(0),
        }
    }

    pub fn is_independent(&self, s: Subset) -> bool {
        s.is_subset(self.ground()) && self.rank_of(s) == s.len()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct WeightedMatroid<T> {
    pub matroid: Matroid,
    pub weights: Vec<T>,
}

impl<T: Scalar> WeightedMatroid<T> {
    pub fn new(matroid: Matroid, weights: Vec<T>) -> Result<Self> {
        if weights.len() != matroid.ground_size() {
            return Err(Error::Malformed(format!(
                "{} weights for {} elements",
                weights.len(),
                matroid.ground_size()
            )));
        }
        check_nonnegative(&weights)?;
        Ok(WeightedMatroid { matroid, weights })
    }

    pub fn weight_of(&self, s: Subset) -> T {
        s.iter().fold(T::zero(), |acc, e| acc + self.weights[e].clone())
    }
}

/// First axiom violation found by [`verify_rank_axioms`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "axiom", rename_all = "snake_case")]
pub enum AxiomViolation {
    EmptySetMissing,
    NotDownwardClosed { set: Subset, missing: Subset },
    ExchangeFails { smaller: Subset, larger: Subset },
    EmptyRankNonzero { rank: usize },
    RankOutOfRange { set: Subset, rank: usize },
    NotMonotone { set: Subset, element: usize },
    UnitIncrease { set: Subset, element: usize },
    NotSubmodular { s: Subset, t: Subset },
}

impl fmt::Display for AxiomViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use AxiomViolation::*;
        match self {
            EmptySetMissing => write!(f, "the empty set is not listed as independent"),
            NotDownwardClosed { set, missing } => {
                write!(f, "{{{missing}}} missing although it is a subset of independent {{{set}}}")
            }
            ExchangeFails { smaller, larger } => {
                write!(f, "no element of {{{larger}}} extends {{{smaller}}}")
            }
            EmptyRankNonzero { rank } => write!(f, "rank of the empty set is {rank}"),
            RankOutOfRange { set, rank } => write!(f, "rank {rank} of {{{set}}} exceeds its size"),
            NotMonotone { set, element } => {
                write!(f, "adding {element} to {{{set}}} lowers the rank")
            }
            UnitIncrease { set, element } => {
                write!(f, "adding {element} to {{{set}}} raises the rank by more than one")
            }
            NotSubmodular { s, t } => write!(f, "r(S)+r(T) < r(S&T)+r(S|T) for S={{{s}}}, T={{{t}}}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomReport {
    pub kind: String,
    pub ground_size: usize,
    pub ok: bool,
    pub violation: Option<AxiomViolation>,
}

/// Exhaustively checks the rank axioms (and, for explicit matroids, the
/// independence axioms of the list). Refuses ground sets above `bound`.
pub fn verify_rank_axioms(m: &Matroid, bound: usize) -> Result<AxiomReport> {
    Error::check_bound("matroid ground set", m.ground_size(), bound)?;
    let violation = first_violation(m);
    Ok(AxiomReport {
        kind: m.kind_name().to_string(),
        ground_size: m.ground_size(),
        ok: violation.is_none(),
        violation,
    })
}

fn first_violation(m: &Matroid) -> Option<AxiomViolation> {
    if let MatroidKind::Explicit { independent } = &m.kind {
        if let Some(v) = list_violation(independent) {
            return Some(v);
        }
    }
    let ground = m.ground();
    let ranks: Vec<usize> = ground.subsets().map(|s| m.rank_of(s)).collect();
    let r = |s: Subset| ranks[s.bits() as usize];

    if r(Subset::EMPTY) != 0 {
        return Some(AxiomViolation::EmptyRankNonzero { rank: r(Subset::EMPTY) });
    }
    for s in ground.subsets() {
        if r(s) > s.len() {
            return Some(AxiomViolation::RankOutOfRange { set: s, rank: r(s) });
        }
        for e in ground.difference(s).iter() {
            let grown = r(s.with(e));
            if grown < r(s) {
                return Some(AxiomViolation::NotMonotone { set: s, element: e });
            }
            if grown > r(s) + 1 {
                return Some(AxiomViolation::UnitIncrease { set: s, element: e });
            }
        }
    }
    for s in ground.subsets() {
        for t in ground.subsets() {
            if r(s) + r(t) < r(s.intersection(t)) + r(s.union(t)) {
                return Some(AxiomViolation::NotSubmodular { s, t });
            }
        }
    }
    None
}

fn list_violation(independent: &[Subset]) -> Option<AxiomViolation> {
    let listed = |s: Subset| independent.binary_search(&s).is_ok();
    if !listed(Subset::EMPTY) {
        return Some(AxiomViolation::EmptySetMissing);
    }
    for &i in independent {
        if let Some(missing) = i.subsets().find(|s| !listed(*s)) {
            return Some(AxiomViolation::NotDownwardClosed { set: i, missing });
        }
    }
    for &i in independent {
        for &j in independent {
            if i.len() < j.len() && !j.difference(i).iter().any(|e| listed(i.with(e))) {
                return Some(AxiomViolation::ExchangeFails { smaller: i, larger: j });
            }
        }
    }
    None
}

/// Whether [`greedy_max_weight_independent`] should verify the axioms first.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AxiomPolicy {
    Verify { bound: usize },
    Waive,
}

/// The greedy algorithm: scan elements by decreasing weight (ties by
/// ascending index) and keep `e_i` iff `r(e_1..e_i) > r(e_1..e_{i-1})`.
pub fn greedy_max_weight_independent<T: Scalar>(wm: &WeightedMatroid<T>, policy: AxiomPolicy) -> Result<(Subset, T)> {
    if let AxiomPolicy::Verify { bound } = policy {
        let report = verify_rank_axioms(&wm.matroid, bound)?;
        if let Some(v) = report.violation {
            return Err(Error::Contract(format!("greedy needs a matroid: {v}")));
        }
    }
    Ok(greedy_within(wm, wm.matroid.ground()))
}

/// Greedy on the restriction of the matroid to `t`.
pub fn greedy_within<T: Scalar>(wm: &WeightedMatroid<T>, t: Subset) -> (Subset, T) {
    let mut order: Vec<usize> = t.intersection(wm.matroid.ground()).iter().collect();
    // Stable sort keeps ascending index among equal weights.
    order.sort_by(|&a, &b| wm.weights[b].partial_cmp(&wm.weights[a]).expect("weights are ordered"));
    let mut prefix = Subset::EMPTY;
    let mut prefix_rank = 0;
    let mut picked = Subset::EMPTY;
    for e in order {
        prefix.insert(e);
        let r = wm.matroid.rank_of(prefix);
        if r > prefix_rank {
            picked.insert(e);
        }
        prefix_rank = r;
    }
    (picked, wm.weight_of(picked))
}

/// Exhaustive maximum over all independent sets (`r(S) = |S|`). Ties go to
/// the first set in increasing mask order.
pub fn brute_force_max_weight_independent<T: Scalar>(wm: &WeightedMatroid<T>, bound: usize) -> Result<(Subset, T)> {
    Error::check_bound("matroid ground set", wm.matroid.ground_size(), bound)?;
    let mut best = (Subset::EMPTY, T::zero());
    for s in wm.matroid.ground().subsets() {
        if wm.matroid.rank_of(s) != s.len() {
            continue;
        }
        let w = wm.weight_of(s);
        if w > best.1 {
            best = (s, w);
        }
    }
    Ok(best)
}
