use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::GameInstance;
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::subset::Subset;
use crate::wire;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ImputationStyle {
    /// Payoffs to agents; a coalition receives the sum over its members.
    Agent,
    /// Satisfaction on objects, passed down to sub-coalitions top-down.
    Satisfaction,
}

/// Payoff per agent. Agents absent from the map receive zero.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent, bound(serialize = "T: Scalar", deserialize = "T: Scalar"))]
pub struct AgentImputation<T> {
    #[serde(with = "wire::scalar_map")]
    pub payoffs: BTreeMap<usize, T>,
}

impl<T> Default for AgentImputation<T> {
    fn default() -> Self {
        AgentImputation { payoffs: BTreeMap::new() }
    }
}

impl<T: Scalar> AgentImputation<T> {
    /// Payoff `values[i]` for agent `i`.
    pub fn from_slice(values: &[T]) -> Self {
        AgentImputation { payoffs: values.iter().cloned().enumerate().collect() }
    }

    pub fn payoff(&self, agent: usize) -> T {
        self.payoffs.get(&agent).cloned().unwrap_or_else(T::zero)
    }

    /// Sum of the payoffs of the members of `t`.
    pub fn coalition_total(&self, t: Subset) -> T {
        self.payoffs
            .iter()
            .filter(|(a, _)| **a < 64 && t.contains(**a))
            .fold(T::zero(), |acc, (_, v)| acc + v.clone())
    }

    pub fn total(&self) -> T {
        self.payoffs.values().fold(T::zero(), |acc, v| acc + v.clone())
    }
}

/// Satisfaction `y_Q` per object `Q`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent, bound(serialize = "T: Scalar", deserialize = "T: Scalar"))]
pub struct SatisfactionImputation<T> {
    #[serde(with = "wire::scalar_map")]
    pub support: BTreeMap<Subset, T>,
}

impl<T> Default for SatisfactionImputation<T> {
    fn default() -> Self {
        SatisfactionImputation { support: BTreeMap::new() }
    }
}

impl<T: Scalar> SatisfactionImputation<T> {
    pub fn new(support: BTreeMap<Subset, T>) -> Self {
        SatisfactionImputation { support }
    }

    /// Adds `value` to the satisfaction of `object`.
    pub fn add(&mut self, object: Subset, value: T) {
        let slot = self.support.entry(object).or_insert_with(T::zero);
        *slot = slot.clone() + value;
    }

    /// satisfaction of the grand coalition: the plain sum of all `y_Q`.
    pub fn total(&self) -> T {
        self.support.values().fold(T::zero(), |acc, v| acc + v.clone())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", content = "values", rename_all = "lowercase")]
#[serde(bound(serialize = "T: Scalar", deserialize = "T: Scalar"))]
pub enum Imputation<T> {
    Agent(AgentImputation<T>),
    Satisfaction(SatisfactionImputation<T>),
}

impl<T: Scalar> Imputation<T> {
    pub fn style(&self) -> ImputationStyle {
        match self {
            Imputation::Agent(_) => ImputationStyle::Agent,
            Imputation::Satisfaction(_) => ImputationStyle::Satisfaction,
        }
    }

    /// Checks that the imputation fits `game`: matching style, known agents
    /// or valid objects, nonnegative values.
    pub fn validate(&self, game: &GameInstance<T>) -> Result<()> {
        if self.style() != game.imputation_style() {
            return Err(Error::Malformed(format!(
                "a {} game takes {:?} imputations",
                game.kind_name(),
                game.imputation_style()
            )
            .to_lowercase()));
        }
        let negative = |key: String, v: &T| Error::Malformed(format!("negative value {v} for {key}"));
        match self {
            Imputation::Agent(a) => {
                for (&agent, v) in &a.payoffs {
                    if agent >= game.agent_count() {
                        return Err(Error::Malformed(format!("unknown agent {agent}")));
                    }
                    if v.is_neg() {
                        return Err(negative(format!("agent {agent}"), v));
                    }
                }
            }
            Imputation::Satisfaction(s) => {
                for (&q, v) in &s.support {
                    if !game.is_object(q) {
                        return Err(Error::Malformed(format!(
                            "{{{q}}} is not an object of the {} game",
                            game.kind_name()
                        )));
                    }
                    if v.is_neg() {
                        return Err(negative(format!("object {{{q}}}"), v));
                    }
                }
            }
        }
        Ok(())
    }
}

/// The function `z` a sub-coalition inherits from `y`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "T: Scalar", deserialize = "T: Scalar"))]
pub struct Allocation<T> {
    pub coalition: Subset,
    #[serde(with = "wire::scalar_map")]
    pub sub_support: BTreeMap<Subset, T>,
}

impl<T: Scalar> Allocation<T> {
    pub fn total(&self) -> T {
        self.sub_support.values().fold(T::zero(), |acc, v| acc + v.clone())
    }
}

/// Top-down allocation: every object `Q` meeting `t` passes `y_Q` to
/// `Q ∩ t`, so `z_{Q'} = Σ_{Q ∩ t = Q'} y_Q`.
pub fn allocate_top_down<T: Scalar>(y: &SatisfactionImputation<T>, t: Subset) -> Allocation<T> {
    let mut sub_support: BTreeMap<Subset, T> = BTreeMap::new();
    for (q, v) in &y.support {
        let part = q.intersection(t);
        if part.is_empty() || v.is_zero() {
            continue;
        }
        let slot = sub_support.entry(part).or_insert_with(T::zero);
        *slot = slot.clone() + v.clone();
    }
    Allocation { coalition: t, sub_support }
}

/// `Σ_{Q ∩ t ≠ ∅} y_Q`, the total of [`allocate_top_down`].
pub fn satisfaction<T: Scalar>(y: &SatisfactionImputation<T>, t: Subset) -> T {
    y.support
        .iter()
        .filter(|(q, _)| q.intersects(t))
        .fold(T::zero(), |acc, (_, v)| acc + v.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    fn r(n: i64) -> Rational {
        Rational::from_int(n)
    }

    fn set(v: &[usize]) -> Subset {
        v.iter().collect()
    }

    fn y(entries: &[(&[usize], i64)]) -> SatisfactionImputation<Rational> {
        SatisfactionImputation::new(entries.iter().map(|(q, v)| (set(q), r(*v))).collect())
    }

    #[test]
    fn allocation_examples() {
        let (a, b, c) = (0, 1, 2);
        let k3 = y(&[(&[a, b, c], 1)]);
        let z = allocate_top_down(&k3, set(&[a, b]));
        assert_eq!(z.sub_support, [(set(&[a, b]), r(1))].into_iter().collect());

        let two = y(&[(&[a, b], 1), (&[b, c], 1)]);
        let z = allocate_top_down(&two, set(&[b]));
        assert_eq!(z.sub_support, [(set(&[b]), r(2))].into_iter().collect());

        let one = y(&[(&[a, b], 1)]);
        let z = allocate_top_down(&one, set(&[c]));
        assert!(z.sub_support.is_empty());
        assert_eq!(satisfaction(&one, set(&[c])), r(0));
    }

    #[test]
    fn satisfaction_examples() {
        assert_eq!(satisfaction(&y(&[(&[0, 1, 2], 1)]), set(&[0, 1, 2])), r(1));
        assert_eq!(satisfaction(&y(&[(&[0, 1], 1), (&[1, 2], 1)]), set(&[0, 2])), r(2));
        // an integral clique cover of C5
        let cover = y(&[(&[0, 1], 1), (&[2, 3], 1), (&[4, 0], 1)]);
        assert_eq!(satisfaction(&cover, Subset::full(5)), r(3));
    }

    #[test]
    fn imputation_json_shape() {
        let imp = Imputation::Satisfaction(y(&[(&[0, 2], 1)]));
        let json = serde_json::to_string(&imp).unwrap();
        assert_eq!(json, r#"{"type":"satisfaction","values":{"0,2":"1"}}"#);
        assert_eq!(serde_json::from_str::<Imputation<Rational>>(&json).unwrap(), imp);

        let imp = Imputation::Agent(AgentImputation::from_slice(&[r(5), Rational::new(1.into(), 2.into())]));
        let json = serde_json::to_string(&imp).unwrap();
        assert_eq!(json, r#"{"type":"agent","values":{"0":"5","1":"1/2"}}"#);
        assert_eq!(serde_json::from_str::<Imputation<Rational>>(&json).unwrap(), imp);
    }
}
