//! Transforms that preserve the number of successful paths for every string.

use std::collections::HashSet;

use crate::automaton::{FiniteAutomaton, RawAutomaton, RawTransition, StateId};
use crate::error::{Error, Result};

fn key(t: &RawTransition) -> (StateId, Option<String>, StateId) {
    (t.src, t.label.clone(), t.dst)
}

/// Removes epsilon-transition `e0 = (p, ε, n)` by adding `(p, l, t)` for every
/// `(n, l, t)`, and making `p` final when `n` is.
///
/// Where a shortcut `(p, l, t)` already exists, it is routed to a fresh copy
/// of `t` instead, and where `p` is already final a fresh final copy of `p`
/// with the same incoming transitions is added. Both keep a label-preserving
/// bijection between successful paths.
pub fn eliminate_epsilon_transition(a: &FiniteAutomaton, e0: usize) -> Result<FiniteAutomaton> {
    if e0 >= a.num_transitions() {
        return Err(Error::NoSuchTransition(e0));
    }
    let t0 = *a.transition(e0);
    if !t0.label.is_eps() {
        return Err(Error::NotEpsilon(e0));
    }
    if a.has_epsilon_cycle() {
        return Err(Error::EpsilonCycleInput);
    }
    let (p, n) = (t0.src, t0.dst);
    let mut raw = a.to_raw();
    raw.transitions.remove(e0);
    let mut present: HashSet<_> = raw.transitions.iter().map(key).collect();
    let mut collisions: Vec<(Option<String>, StateId)> = Vec::new();
    for t in a.out(n) {
        let label = match t.label {
            crate::automaton::Label::Eps => None,
            crate::automaton::Label::Sym(s) => Some(a.alphabet()[s as usize].clone()),
        };
        let shortcut = RawTransition { src: p, label: label.clone(), dst: t.dst };
        if present.insert(key(&shortcut)) {
            raw.transitions.push(shortcut);
        } else {
            collisions.push((label, t.dst));
        }
    }
    let mut final_clone = false;
    if a.is_final(n) {
        if raw.final_states.contains(&p) {
            final_clone = true;
        } else {
            raw.final_states.push(p);
        }
    }

    // route colliding shortcuts to fresh copies of their targets
    let mut clones: Vec<(StateId, StateId)> = Vec::new();
    for (label, target) in collisions {
        let c = raw.num_states;
        raw.num_states += 1;
        raw.transitions.push(RawTransition { src: p, label, dst: c });
        clones.push((c, target));
    }
    let snapshot = raw.transitions.clone();
    for &(c, target) in &clones {
        for t in snapshot.iter().filter(|t| t.src == target) {
            raw.transitions.push(RawTransition { src: c, label: t.label.clone(), dst: t.dst });
        }
        if raw.final_states.contains(&target) {
            raw.final_states.push(c);
        }
    }

    if final_clone {
        // one final copy for p and for each copy of p
        let targets: Vec<StateId> =
            std::iter::once(p).chain(clones.iter().filter(|&&(_, t)| t == p).map(|&(c, _)| c)).collect();
        for x in targets {
            let hat = raw.num_states;
            raw.num_states += 1;
            let incoming: Vec<RawTransition> = raw.transitions.iter().filter(|t| t.dst == x).cloned().collect();
            for t in incoming {
                raw.transitions.push(RawTransition { src: t.src, label: t.label, dst: hat });
            }
            if raw.initial.contains(&x) {
                raw.initial.push(hat);
            }
            raw.final_states.push(hat);
        }
    }
    FiniteAutomaton::validate(raw)
}

/// Applies [`eliminate_epsilon_transition`] until no epsilon-transition is left.
pub fn eliminate_all_epsilons(a: &FiniteAutomaton) -> Result<FiniteAutomaton> {
    let mut cur = a.clone();
    while let Some(i) = cur.transitions().iter().position(|t| t.label.is_eps()) {
        cur = eliminate_epsilon_transition(&cur, i)?;
    }
    Ok(cur)
}

/// Replaces `(p, a, q)` by `(p, ε, r), (r, a, q)` with a fresh state `r`.
pub fn split_transition(a: &FiniteAutomaton, e: usize) -> Result<FiniteAutomaton> {
    if e >= a.num_transitions() {
        return Err(Error::NoSuchTransition(e));
    }
    if a.transition(e).label.is_eps() {
        return Err(Error::EpsilonInput(e));
    }
    let mut raw: RawAutomaton = a.to_raw();
    let old = raw.transitions.remove(e);
    let r = raw.num_states;
    raw.num_states += 1;
    raw.transitions.push(RawTransition { src: old.src, label: None, dst: r });
    raw.transitions.push(RawTransition { src: r, label: old.label, dst: old.dst });
    FiniteAutomaton::validate(raw)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automaton::Label;
    use crate::testkit::{count_paths, fixtures, growth_table};

    #[test]
    fn split_poly1_gives_eps_fixture() {
        let a = fixtures::ex_poly1();
        let e = a.find_transition(0, Label::Sym(0), 1).unwrap();
        assert_eq!(split_transition(&a, e).unwrap(), fixtures::ex_eps());
    }

    #[test]
    fn split_rejects_epsilon() {
        let a = fixtures::ex_eps();
        let e = a.transitions().iter().position(|t| t.label.is_eps()).unwrap();
        assert_eq!(split_transition(&a, e).unwrap_err(), Error::EpsilonInput(e));
    }

    #[test]
    fn eliminate_on_eps_fixture() {
        let a = fixtures::ex_eps();
        let e = a.transitions().iter().position(|t| t.label.is_eps()).unwrap();
        let b = eliminate_epsilon_transition(&a, e).unwrap();
        assert_eq!(b.num_epsilon_transitions(), 0);
        for n in 0..=8 {
            let w = vec!["a"; n];
            assert_eq!(count_paths(&b, &w).unwrap(), n as u128);
            assert_eq!(count_paths(&a, &w).unwrap(), n as u128);
        }
    }

    #[test]
    fn eliminate_rejects_symbol_transition() {
        let a = fixtures::ex_poly1();
        assert_eq!(eliminate_epsilon_transition(&a, 0).unwrap_err(), Error::NotEpsilon(0));
    }

    #[test]
    fn eliminate_handles_parallel_shortcut() {
        // 0 -ε-> 1 -a-> 2 next to an existing 0 -a-> 2
        let a = FiniteAutomaton::from_triples(3, &[0], &[2], &[(0, "<eps>", 1), (1, "a", 2), (0, "a", 2)])
            .unwrap();
        assert_eq!(count_paths(&a, &["a"]).unwrap(), 2);
        let b = eliminate_all_epsilons(&a).unwrap();
        assert_eq!(count_paths(&b, &["a"]).unwrap(), 2);
    }

    #[test]
    fn eliminate_handles_final_collision() {
        // both 0 and 1 final, accepted string ε on two paths
        let a = FiniteAutomaton::from_triples(2, &[0], &[0, 1], &[(0, "<eps>", 1), (0, "a", 0)]).unwrap();
        let b = eliminate_all_epsilons(&a).unwrap();
        for n in 0..=5 {
            let w = vec!["a"; n];
            assert_eq!(count_paths(&a, &w).unwrap(), count_paths(&b, &w).unwrap(), "n={n}");
        }
    }

    #[test]
    fn round_trip_split_then_eliminate() {
        let a = fixtures::ex_poly2();
        for e in 0..a.num_transitions() {
            let s = split_transition(&a, e).unwrap();
            let eps = s.transitions().iter().position(|t| t.label.is_eps()).unwrap();
            let back = eliminate_epsilon_transition(&s, eps).unwrap();
            assert_eq!(growth_table(&back, 8).unwrap(), growth_table(&a, 8).unwrap());
        }
    }
}
