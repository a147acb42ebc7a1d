#![allow(dead_code)]

use ambig::testkit::{
    count_paths, eliminate_epsilon_transition, random_automaton, split_transition, RandomSpec,
};
use ambig::FiniteAutomaton;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Seeded corpus of non-empty random automata with at most 5 states, two
/// symbols and densities from 0.15 to 0.3.
pub fn corpus(size: usize, base_seed: u64) -> Vec<(u64, FiniteAutomaton)> {
    let mut out = Vec::with_capacity(size);
    let mut seed = base_seed;
    while out.len() < size {
        let spec = RandomSpec {
            states: 2 + (seed % 4) as usize,
            symbols: 2,
            density: [0.15, 0.2, 0.25, 0.3][(seed / 4 % 4) as usize],
            eps_density: 0.15,
            seed,
        };
        let a = random_automaton(spec);
        if a.num_states() > 0 {
            out.push((seed, a));
        }
        seed += 1;
    }
    out
}

/// Every string over `alphabet` of length at most `max_len`.
pub fn all_strings(alphabet: &[String], max_len: usize) -> Vec<Vec<String>> {
    let mut out = vec![Vec::new()];
    let mut layer = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for s in alphabet {
                let mut x: Vec<String> = w.clone();
                x.push(s.clone());
                next.push(x);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

/// Path count, zero for strings with symbols outside the alphabet.
pub fn count_or_zero(a: &FiniteAutomaton, x: &[String]) -> u128 {
    if x.iter().any(|s| a.symbol_id(s).is_none()) {
        return 0;
    }
    let x: Vec<&str> = x.iter().map(String::as_str).collect();
    count_paths(a, &x).expect("epsilon-acyclic")
}

pub fn shuffled(a: &FiniteAutomaton, seed: u64) -> FiniteAutomaton {
    let mut perm: Vec<usize> = (0..a.num_states()).collect();
    perm.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    a.renamed(&perm).expect("permutation")
}

/// Path-count preserving variants of `a`, labeled by the transform applied.
pub fn variants(a: &FiniteAutomaton, seed: u64) -> Vec<(String, FiniteAutomaton)> {
    let mut out = vec![("rename".to_string(), shuffled(a, seed)), ("reverse".to_string(), a.reversed())];
    for (i, t) in a.transitions().iter().enumerate() {
        if t.label.is_eps() {
            out.push((format!("eliminate {i}"), eliminate_epsilon_transition(a, i).expect("epsilon")));
        } else {
            out.push((format!("split {i}"), split_transition(a, i).expect("symbol")));
        }
    }
    out
}
