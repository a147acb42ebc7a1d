//! Seeded random automata.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::automaton::{FiniteAutomaton, RawAutomaton, RawTransition};
use crate::error::Result;
use crate::weighted::WeightedAutomaton;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RandomSpec {
    pub states: usize,
    pub symbols: usize,
    /// Probability of each symbol transition `(p, a, q)`.
    pub density: f64,
    /// Probability of each epsilon-transition `(p, ε, q)` with `p < q`.
    pub eps_density: f64,
    pub seed: u64,
}

pub(crate) fn symbol_name(i: usize) -> String {
    if i < 26 {
        ((b'a' + i as u8) as char).to_string()
    } else {
        format!("s{i}")
    }
}

/// Trimmed, epsilon-cycle free random automaton, determined by the seed.
///
/// State 0 is initial; the last state is final, as is every other state with
/// probability 1/4.
pub fn random_automaton(spec: RandomSpec) -> FiniteAutomaton {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let n = spec.states.max(1);
    let alphabet: Vec<String> = (0..spec.symbols).map(symbol_name).collect();
    let mut transitions = Vec::new();
    for p in 0..n {
        for name in &alphabet {
            for q in 0..n {
                if rng.gen_bool(spec.density.clamp(0.0, 1.0)) {
                    transitions.push(RawTransition { src: p, label: Some(name.clone()), dst: q });
                }
            }
        }
        for q in p + 1..n {
            if rng.gen_bool(spec.eps_density.clamp(0.0, 1.0)) {
                transitions.push(RawTransition { src: p, label: None, dst: q });
            }
        }
    }
    let mut final_states = vec![n - 1];
    for q in 1..n.saturating_sub(1) {
        if rng.gen_bool(0.25) {
            final_states.push(q);
        }
    }
    if n > 1 && rng.gen_bool(0.25) {
        final_states.push(0);
    }
    let raw = RawAutomaton { num_states: n, alphabet: Some(alphabet), initial: vec![0], final_states, transitions };
    FiniteAutomaton::validate(raw).expect("generated automaton is valid").trim()
}

/// Random probability weights on `skeleton`: at each state the outgoing
/// weights and the final weight sum to one, and the initial weight is spread
/// uniformly over the initial states. Every final state gets positive final
/// weight.
///
/// Mass one holds when every state reaches a final state, which is the case
/// for trim skeletons.
pub fn random_probabilistic(skeleton: &FiniteAutomaton, seed: u64) -> Result<WeightedAutomaton<f64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = skeleton.num_states();
    let mut weights = vec![0.0; skeleton.num_transitions()];
    let mut finals = vec![0.0; n];
    for (q, rho_q) in finals.iter_mut().enumerate() {
        let range = skeleton.out_range(q);
        let mut raw: Vec<f64> = range.clone().map(|_| rng.gen_range(0.1..1.0)).collect();
        let rho = if skeleton.is_final(q) { rng.gen_range(0.1..1.0) } else { 0.0 };
        raw.push(rho);
        let total: f64 = raw.iter().sum();
        for (i, w) in range.zip(&raw) {
            weights[i] = w / total;
        }
        *rho_q = rho / total;
    }
    let initials = skeleton.initial_states().count().max(1) as f64;
    let lambda = (0..n).map(|q| if skeleton.is_initial(q) { 1.0 / initials } else { 0.0 }).collect();
    WeightedAutomaton::new(skeleton.clone(), weights, lambda, finals)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(seed: u64) -> RandomSpec {
        RandomSpec { states: 4, symbols: 2, density: 0.4, eps_density: 0.1, seed }
    }

    #[test]
    fn deterministic_in_seed() {
        assert_eq!(random_automaton(spec(7)), random_automaton(spec(7)));
    }

    #[test]
    fn always_trim_and_epsilon_acyclic() {
        for seed in 0..1000 {
            let a = random_automaton(RandomSpec { eps_density: 0.3, ..spec(seed) });
            assert!(a.is_trim(), "seed {seed}");
            assert!(!a.has_epsilon_cycle(), "seed {seed}");
        }
    }

    #[test]
    fn zero_density_has_no_transitions() {
        let a = random_automaton(RandomSpec { density: 0.0, eps_density: 0.0, ..spec(3) });
        assert_eq!(a.num_transitions(), 0);
    }

    #[test]
    fn weights_are_locally_stochastic() {
        let a = random_automaton(spec(11));
        let w = random_probabilistic(&a, 5).unwrap();
        for q in 0..a.num_states() {
            let s: f64 = a.out_range(q).map(|i| w.weight(i)).sum::<f64>() + w.final_weight(q);
            assert!((s - 1.0).abs() < 1e-12);
        }
    }
}
