use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::core::CoreChecker;
use super::imputation::{AgentImputation, Imputation, SatisfactionImputation};
use super::lps::{build_lps, dual_to_imputation, GameLps};
use super::GameInstance;
use crate::error::{Error, Result};
use crate::graphs::is_perfect;
use crate::lp::{solve_lp, LpStatus};
use crate::scalar::Scalar;
use crate::subset::Subset;
use crate::wire;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SampleKind {
    /// Random nonnegative values rescaled to total the worth.
    Random,
    /// A convex combination of two points of the optimal dual face.
    FacePoint,
    /// A face point with some value moved between two agents or objects.
    Perturbed,
}

/// The solver's own dual optimum, checked both ways.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ForwardCheck {
    pub in_core: bool,
    pub dual_optimal: bool,
    pub violations: usize,
}

/// A sample on which core membership and dual optimality differ.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "T: Scalar", deserialize = "T: Scalar"))]
pub struct Disagreement<T> {
    pub trial: usize,
    pub kind: SampleKind,
    pub in_core: bool,
    pub dual_optimal: bool,
    pub imputation: Imputation<T>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "T: Scalar", deserialize = "T: Scalar"))]
pub struct AuditReport<T> {
    pub game: String,
    pub agents: usize,
    pub trials: usize,
    pub seed: u64,
    #[serde(with = "wire::scalar")]
    pub worth: T,
    #[serde(with = "wire::scalar")]
    pub lp_value: T,
    /// Whether the instance satisfies the hypothesis under which the dual
    /// optimum is guaranteed to be a core imputation.
    pub hypothesis_holds: bool,
    pub hypothesis: String,
    pub forward: ForwardCheck,
    /// Samples in the core and dual optimal.
    pub both_true: usize,
    /// Samples neither in the core nor dual optimal.
    pub both_false: usize,
    pub disagreements: Vec<Disagreement<T>>,
    /// A counterexample to the characterization on an instance that
    /// satisfies its hypothesis.
    pub falsified: bool,
}

/// Samples `trials` imputations and checks that brute-force core
/// membership agrees with exact dual optimality on every one, and that
/// the solver's dual optimum is in the core.
///
/// Samples cycle through [`SampleKind::Random`], [`SampleKind::FacePoint`]
/// and [`SampleKind::Perturbed`]; all randomness comes from a ChaCha8
/// generator seeded with `seed`.
pub fn equivalence_audit<T: Scalar>(game: &GameInstance<T>, trials: usize, seed: u64, bound: usize) -> Result<AuditReport<T>> {
    let checker = CoreChecker::new(game, bound)?;
    let lps = build_lps(game, bound)?;
    let sol = solve_lp(&lps.primal)?;
    if sol.status != LpStatus::Optimal {
        return Err(Error::Contract(format!("packing program reported {:?}", sol.status)));
    }
    let base = dual_to_imputation(game, &lps.row_objects, &sol.dual);
    let core = checker.check(&base)?;
    let dual = checker.dual_optimality(&base)?;
    let forward = ForwardCheck { in_core: core.in_core, dual_optimal: dual.optimal, violations: core.violations.len() };
    let (hypothesis_holds, hypothesis) = hypothesis(game, bound, sol.primal.iter().all(Scalar::is_integral))?;

    let mut sampler = Sampler::new(game, &lps, &sol.value, checker.grand_worth().clone(), base, seed);
    let (mut both_true, mut both_false) = (0, 0);
    let mut disagreements = Vec::new();
    for trial in 0..trials {
        let kind = [SampleKind::Random, SampleKind::FacePoint, SampleKind::Perturbed][trial % 3];
        let imp = sampler.sample(kind)?;
        let in_core = checker.check(&imp)?.in_core;
        let dual_optimal = checker.dual_optimality(&imp)?.optimal;
        match (in_core, dual_optimal) {
            (true, true) => both_true += 1,
            (false, false) => both_false += 1,
            _ => disagreements.push(Disagreement { trial, kind, in_core, dual_optimal, imputation: imp }),
        }
    }
    let falsified = hypothesis_holds && (!forward.in_core || !forward.dual_optimal || !disagreements.is_empty());
    Ok(AuditReport {
        game: game.kind_name().to_string(),
        agents: game.agent_count(),
        trials,
        seed,
        worth: checker.grand_worth().clone(),
        lp_value: sol.value,
        hypothesis_holds,
        hypothesis,
        forward,
        both_true,
        both_false,
        disagreements,
        falsified,
    })
}

fn hypothesis<T: Scalar>(game: &GameInstance<T>, bound: usize, primal_integral: bool) -> Result<(bool, String)> {
    Ok(match game {
        GameInstance::Assignment(_) => (true, "bipartite graph".into()),
        GameInstance::StableSet(wg) | GameInstance::Clique(wg) => {
            let rep = is_perfect(&wg.graph, bound)?;
            match rep.witness {
                None => (true, "graph is perfect".into()),
                Some(t) => (false, format!("graph is not perfect: clique number < chromatic number on {{{t}}}")),
            }
        }
        GameInstance::Matroid(wm) => {
            let loop_ = (0..wm.matroid.ground_size())
                .find(|&e| wm.weights[e].is_pos() && wm.matroid.rank_of(Subset::singleton(e)) == 0);
            match loop_ {
                None => (true, "matroid without positive-weight loops".into()),
                Some(e) => (
                    false,
                    format!("element {e} is a loop of positive weight; its coalition receives no satisfaction"),
                ),
            }
        }
        GameInstance::GenericPacking(_) if primal_integral => (true, "packing LP has an integral optimum".into()),
        GameInstance::GenericPacking(_) => (false, "packing LP optimum found is fractional".into()),
    })
}

struct Sampler<'a, T> {
    game: &'a GameInstance<T>,
    lps: &'a GameLps<T>,
    lp_value: &'a T,
    worth: T,
    base: Imputation<T>,
    /// Objects with a positive coefficient that random supports draw from.
    pool: Vec<Subset>,
    rng: ChaCha8Rng,
}

impl<'a, T: Scalar> Sampler<'a, T> {
    fn new(game: &'a GameInstance<T>, lps: &'a GameLps<T>, lp_value: &'a T, worth: T, base: Imputation<T>, seed: u64) -> Self {
        let pool = lps
            .row_objects
            .iter()
            .copied()
            .filter(|q| game.object_coefficient(*q).is_pos())
            .collect();
        Sampler { game, lps, lp_value, worth, base, pool, rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    fn small(&mut self, lo: i64, hi: i64) -> T {
        T::from_int(self.rng.gen_range(lo..=hi))
    }

    fn sample(&mut self, kind: SampleKind) -> Result<Imputation<T>> {
        match kind {
            SampleKind::Random => Ok(self.random()),
            SampleKind::FacePoint => self.face_point(),
            SampleKind::Perturbed => {
                let p = self.face_point()?;
                Ok(self.perturb(p))
            }
        }
    }

    /// Random values rescaled so that the grand coalition gets its worth.
    fn random(&mut self) -> Imputation<T> {
        match self.game.imputation_style() {
            super::ImputationStyle::Agent => {
                let raw: Vec<T> = (0..self.game.agent_count()).map(|_| self.small(0, 9)).collect();
                let total = raw.iter().fold(T::zero(), |a, v| a + v.clone());
                let payoffs = if total.is_zero() {
                    let mut p = vec![T::zero(); raw.len()];
                    if let Some(first) = p.first_mut() {
                        *first = self.worth.clone();
                    }
                    p
                } else {
                    raw.into_iter().map(|v| v * self.worth.clone() / total.clone()).collect()
                };
                Imputation::Agent(AgentImputation::from_slice(&payoffs))
            }
            super::ImputationStyle::Satisfaction => {
                let mut y = SatisfactionImputation::default();
                if self.pool.is_empty() || self.worth.is_zero() {
                    return Imputation::Satisfaction(y);
                }
                let k = self.rng.gen_range(1..=self.pool.len().min(4));
                for _ in 0..k {
                    let host = *self.pool.choose(&mut self.rng).expect("nonempty pool");
                    let q = self.sub_object(host);
                    let v = self.small(1, 9);
                    y.add(q, v);
                }
                let scale = self.game.allocation_to(&Imputation::Satisfaction(y.clone()), self.game.agents());
                for v in y.support.values_mut() {
                    *v = v.clone() * self.worth.clone() / scale.clone();
                }
                Imputation::Satisfaction(y)
            }
        }
    }

    /// `host` itself, or now and then a nonempty part of it, which is still
    /// a clique, stable set or subset.
    fn sub_object(&mut self, host: Subset) -> Subset {
        if host.len() < 2 || self.rng.gen_range(0..3) != 0 {
            return host;
        }
        let members = host.to_vec();
        loop {
            let part: Subset = members.iter().filter(|_| self.rng.gen_bool(0.5)).collect();
            if !part.is_empty() && self.game.object_coefficient(part).is_pos() {
                return part;
            }
        }
    }

    /// A vertex of the optimal dual face for a random nonnegative
    /// objective, mixed with the solver's optimum.
    fn face_point(&mut self) -> Result<Imputation<T>> {
        let mut face = self.lps.dual.restrict_to_level(self.lp_value);
        face.objective = (0..face.num_vars()).map(|_| self.small(0, 9)).collect();
        let sol = solve_lp(&face)?;
        if sol.status != LpStatus::Optimal {
            return Ok(self.base.clone());
        }
        let vertex = dual_to_imputation(self.game, &self.lps.row_objects, &sol.primal);
        let lambda = T::from_ratio(self.rng.gen_range(0..=10), 10);
        Ok(mix(&self.base, &vertex, &lambda))
    }

    /// Moves part of one entry's share of the total to another entry.
    fn perturb(&mut self, imp: Imputation<T>) -> Imputation<T> {
        let frac = T::from_ratio(self.rng.gen_range(1..=10), 10);
        match imp {
            Imputation::Agent(mut a) => {
                let donors: Vec<usize> = a.payoffs.iter().filter(|(_, v)| v.is_pos()).map(|(k, _)| *k).collect();
                let n = self.game.agent_count();
                if let (Some(&from), true) = (donors.choose(&mut self.rng), n > 1) {
                    let to = (from + self.rng.gen_range(1..n)) % n;
                    let delta = a.payoff(from) * frac;
                    a.payoffs.insert(from, a.payoff(from) - delta.clone());
                    a.payoffs.insert(to, a.payoff(to) + delta);
                }
                Imputation::Agent(a)
            }
            Imputation::Satisfaction(mut y) => {
                let donors: Vec<Subset> = y
                    .support
                    .iter()
                    .filter(|(q, v)| v.is_pos() && self.game.object_coefficient(**q).is_pos())
                    .map(|(q, _)| *q)
                    .collect();
                if let (Some(&from), false) = (donors.choose(&mut self.rng), self.pool.is_empty()) {
                    let host = *self.pool.choose(&mut self.rng).expect("nonempty pool");
                    let to = self.sub_object(host);
                    let (cf, ct) = (self.game.object_coefficient(from), self.game.object_coefficient(to));
                    let delta = y.support[&from].clone() * cf.clone() * frac;
                    y.add(from, -(delta.clone() / cf));
                    y.add(to, delta / ct);
                    y.support.retain(|_, v| !v.is_zero());
                }
                Imputation::Satisfaction(y)
            }
        }
    }
}

/// `λ a + (1 - λ) b` entrywise.
fn mix<T: Scalar>(a: &Imputation<T>, b: &Imputation<T>, lambda: &T) -> Imputation<T> {
    let mu = T::one() - lambda.clone();
    match (a, b) {
        (Imputation::Agent(a), Imputation::Agent(b)) => {
            let mut out = AgentImputation::default();
            for k in a.payoffs.keys().chain(b.payoffs.keys()) {
                out.payoffs.insert(*k, lambda.clone() * a.payoff(*k) + mu.clone() * b.payoff(*k));
            }
            Imputation::Agent(out)
        }
        (Imputation::Satisfaction(a), Imputation::Satisfaction(b)) => {
            let mut out = SatisfactionImputation::default();
            for (q, v) in &a.support {
                out.add(*q, lambda.clone() * v.clone());
            }
            for (q, v) in &b.support {
                out.add(*q, mu.clone() * v.clone());
            }
            out.support.retain(|_, v| !v.is_zero());
            Imputation::Satisfaction(out)
        }
        _ => unreachable!("same game, same style"),
    }
}
