//! Weighted automata: a [`FiniteAutomaton`] skeleton plus per-transition,
//! initial and final weights.

use crate::automaton::{FiniteAutomaton, RawAutomaton, RawTransition, StateId, Transition};
use crate::error::{Error, Result};
use crate::semiring::Semiring;

#[derive(Debug, Clone, PartialEq)]
pub struct WeightedAutomaton<W> {
    skeleton: FiniteAutomaton,
    weights: Vec<W>,
    initial_weights: Vec<W>,
    final_weights: Vec<W>,
}

/// Weights parallel to the vectors of a [`RawAutomaton`].
#[derive(Debug, Clone, Default, PartialEq)]
pub struct RawWeights {
    pub transitions: Vec<f64>,
    pub initial: Vec<f64>,
    pub finals: Vec<f64>,
}

impl<W: Semiring> WeightedAutomaton<W> {
    /// Weights indexed by canonical transition index and by state; states
    /// outside I (resp. F) must carry zero.
    pub fn new(skeleton: FiniteAutomaton, weights: Vec<W>, initial_weights: Vec<W>, final_weights: Vec<W>) -> Result<Self> {
        let n = skeleton.num_states();
        if weights.len() != skeleton.num_transitions() || initial_weights.len() != n || final_weights.len() != n {
            return Err(Error::InternalInvariant("weight vector length mismatch".into()));
        }
        Ok(WeightedAutomaton { skeleton, weights, initial_weights, final_weights })
    }

    pub fn skeleton(&self) -> &FiniteAutomaton {
        &self.skeleton
    }

    pub fn weight(&self, t: usize) -> &W {
        &self.weights[t]
    }

    pub fn weights(&self) -> &[W] {
        &self.weights
    }

    pub fn initial_weight(&self, q: StateId) -> &W {
        &self.initial_weights[q]
    }

    pub fn final_weight(&self, q: StateId) -> &W {
        &self.final_weights[q]
    }

    /// Maps every weight into another semiring.
    pub fn map<V: Semiring>(
        &self,
        mut transition: impl FnMut(&Transition, &W) -> Result<V>,
        mut initial: impl FnMut(&W) -> Result<V>,
        mut finals: impl FnMut(&W) -> Result<V>,
    ) -> Result<WeightedAutomaton<V>> {
        let weights = self
            .skeleton
            .transitions()
            .iter()
            .zip(&self.weights)
            .map(|(t, w)| transition(t, w))
            .collect::<Result<_>>()?;
        let n = self.skeleton.num_states();
        let initial_weights = (0..n)
            .map(|q| if self.skeleton.is_initial(q) { initial(&self.initial_weights[q]) } else { Ok(V::zero()) })
            .collect::<Result<_>>()?;
        let final_weights = (0..n)
            .map(|q| if self.skeleton.is_final(q) { finals(&self.final_weights[q]) } else { Ok(V::zero()) })
            .collect::<Result<_>>()?;
        Ok(WeightedAutomaton { skeleton: self.skeleton.clone(), weights, initial_weights, final_weights })
    }

    /// Restricts to useful states of the skeleton.
    pub fn trim(&self) -> Self {
        let (skeleton, kept) = self.skeleton.trim_with_map();
        let mut keep = vec![false; self.skeleton.num_states()];
        for &q in &kept {
            keep[q] = true;
        }
        // monotone renumbering keeps surviving transitions in order
        let weights = self
            .skeleton
            .transitions()
            .iter()
            .zip(&self.weights)
            .filter(|(t, _)| keep[t.src] && keep[t.dst])
            .map(|(_, w)| w.clone())
            .collect();
        let initial_weights = kept.iter().map(|&q| self.initial_weights[q].clone()).collect();
        let final_weights = kept.iter().map(|&q| self.final_weights[q].clone()).collect();
        WeightedAutomaton { skeleton, weights, initial_weights, final_weights }
    }
}

impl WeightedAutomaton<f64> {
    /// Builds a probability-weighted automaton: transition weights in `(0, 1]`,
    /// initial and final weights in `[0, 1]`.
    pub fn probabilistic(raw: RawAutomaton, weights: RawWeights) -> Result<Self> {
        if weights.transitions.len() != raw.transitions.len()
            || weights.initial.len() != raw.initial.len()
            || weights.finals.len() != raw.final_states.len()
        {
            return Err(Error::InternalInvariant("weight vector length mismatch".into()));
        }
        for &w in &weights.transitions {
            if w.is_nan() || w <= 0.0 {
                return Err(Error::NonPositiveWeight(w));
            }
            if w > 1.0 {
                return Err(Error::WeightOutOfRange(w));
            }
        }
        for &w in weights.initial.iter().chain(&weights.finals) {
            if w.is_nan() || !(0.0..=1.0).contains(&w) {
                return Err(Error::WeightOutOfRange(w));
            }
        }
        let n = raw.num_states;
        let mut initial_weights = vec![0.0; n];
        let mut final_weights = vec![0.0; n];
        let initial = raw.initial.clone();
        let finals = raw.final_states.clone();
        let (skeleton, perm) = FiniteAutomaton::validate_indexed(raw)?;
        for (&q, &w) in initial.iter().zip(&weights.initial) {
            initial_weights[q] = w;
        }
        for (&q, &w) in finals.iter().zip(&weights.finals) {
            final_weights[q] = w;
        }
        let w = perm.iter().map(|&i| weights.transitions[i]).collect();
        Self::new(skeleton, w, initial_weights, final_weights)
    }

    /// Convenience constructor from `(src, label, weight, dst)` tuples.
    pub fn from_tuples(
        num_states: usize,
        initial: &[(StateId, f64)],
        finals: &[(StateId, f64)],
        transitions: &[(StateId, &str, f64, StateId)],
    ) -> Result<Self> {
        let raw = RawAutomaton {
            num_states,
            alphabet: None,
            initial: initial.iter().map(|&(q, _)| q).collect(),
            final_states: finals.iter().map(|&(q, _)| q).collect(),
            transitions: transitions.iter().map(|&(s, l, _, d)| RawTransition::new(s, l, d)).collect(),
        };
        let weights = RawWeights {
            transitions: transitions.iter().map(|t| t.2).collect(),
            initial: initial.iter().map(|t| t.1).collect(),
            finals: finals.iter().map(|t| t.1).collect(),
        };
        Self::probabilistic(raw, weights)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weights_follow_canonical_order() {
        let w = WeightedAutomaton::from_tuples(
            2,
            &[(0, 1.0)],
            &[(1, 1.0)],
            &[(0, "b", 0.25, 1), (0, "a", 0.75, 1)],
        )
        .unwrap();
        let a = w.skeleton();
        let ta = a.find_transition(0, crate::automaton::Label::Sym(0), 1).unwrap();
        assert_eq!(*w.weight(ta), 0.75);
    }

    #[test]
    fn rejects_bad_weights() {
        let zero = WeightedAutomaton::from_tuples(2, &[(0, 1.0)], &[(1, 1.0)], &[(0, "a", 0.0, 1)]);
        assert_eq!(zero.unwrap_err(), Error::NonPositiveWeight(0.0));
        let big = WeightedAutomaton::from_tuples(2, &[(0, 1.0)], &[(1, 1.5)], &[(0, "a", 0.5, 1)]);
        assert_eq!(big.unwrap_err(), Error::WeightOutOfRange(1.5));
    }

    #[test]
    fn trim_keeps_weights_aligned() {
        let w = WeightedAutomaton::from_tuples(
            4,
            &[(0, 1.0)],
            &[(2, 1.0)],
            &[(0, "a", 0.5, 2), (0, "b", 0.5, 1), (1, "a", 1.0, 3), (0, "c", 0.25, 2)],
        )
        .unwrap();
        let t = w.trim();
        assert_eq!(t.skeleton().num_states(), 2);
        assert_eq!(t.weights(), &[0.5, 0.25]);
    }
}
