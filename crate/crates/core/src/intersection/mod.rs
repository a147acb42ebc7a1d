//! Epsilon-filtered intersection and the self-intersection powers.
//!
//! The marking of the operands (renamed epsilons plus self-loops) is never
//! materialized: the worklist enumerates the four move kinds directly and asks
//! [`filter_step`] whether each is allowed from the current filter state.

mod filter;

pub use filter::{filter_step, EpsMove, FilterState};

use std::collections::HashMap;

use crate::automaton::{FiniteAutomaton, Label, StateId, SymbolId, Transition};
use crate::error::{Error, Result};

/// Result of one or more filtered intersections.
///
/// Every state of `underlying` projects to one state per factor, and to one
/// filter state per intersection performed (left-associated).
#[derive(Debug, Clone)]
pub struct ProductAutomaton {
    underlying: FiniteAutomaton,
    factors: Vec<FiniteAutomaton>,
    arity: usize,
    components: Vec<StateId>,
    filters: Vec<FilterState>,
}

impl ProductAutomaton {
    /// The trivial product with a single factor.
    pub fn identity(a: &FiniteAutomaton) -> Self {
        ProductAutomaton {
            underlying: a.clone(),
            factors: vec![a.clone()],
            arity: 1,
            components: (0..a.num_states()).collect(),
            filters: Vec::new(),
        }
    }

    pub fn underlying(&self) -> &FiniteAutomaton {
        &self.underlying
    }

    pub fn into_underlying(self) -> FiniteAutomaton {
        self.underlying
    }

    pub fn factors(&self) -> &[FiniteAutomaton] {
        &self.factors
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn num_states(&self) -> usize {
        self.underlying.num_states()
    }

    /// Factor states of product state `q`.
    pub fn components(&self, q: StateId) -> &[StateId] {
        &self.components[q * self.arity..(q + 1) * self.arity]
    }

    /// Filter states of product state `q`, one per intersection.
    pub fn filters(&self, q: StateId) -> &[FilterState] {
        let k = self.arity - 1;
        &self.filters[q * k..(q + 1) * k]
    }

    /// For product transition `t`, the transition taken in each factor, or
    /// `None` where that factor stays put on a virtual self-loop.
    pub fn component_transitions(&self, t: usize) -> Result<Vec<Option<usize>>> {
        let tr = *self.underlying.transition(t);
        let label = match tr.label {
            Label::Eps => None,
            Label::Sym(s) => Some(self.underlying.alphabet()[s as usize].as_str()),
        };
        let mut out = vec![None; self.arity];
        self.derive(self.arity, tr.src, tr.dst, label, &mut out)?;
        Ok(out)
    }

    fn derive(
        &self,
        k: usize,
        src: StateId,
        dst: StateId,
        label: Option<&str>,
        out: &mut [Option<usize>],
    ) -> Result<()> {
        let (sc, dc) = (self.components(src), self.components(dst));
        let lookup = |i: usize| -> Result<usize> {
            let f = &self.factors[i];
            let l = match label {
                None => Label::Eps,
                Some(name) => Label::Sym(f.symbol_id(name).ok_or_else(|| {
                    Error::InternalInvariant(format!("symbol {name} missing from factor {i}"))
                })?),
            };
            f.find_transition(sc[i], l, dc[i]).ok_or_else(|| {
                Error::InternalInvariant(format!(
                    "no factor-{i} transition ({}, {:?}, {})",
                    sc[i], label, dc[i]
                ))
            })
        };
        if k == 1 {
            out[0] = Some(lookup(0)?);
            return Ok(());
        }
        // The target filter state identifies the move: F1 only via E1E1, F2
        // only via E2E2, F0 via a symbol match or E2E1.
        let (left_moves, right_moves) = match self.filters(dst)[k - 2] {
            FilterState::F1 => (false, true),
            FilterState::F2 => (true, false),
            FilterState::F0 => (true, true),
        };
        if right_moves {
            out[k - 1] = Some(lookup(k - 1)?);
        }
        if left_moves {
            self.derive(k - 1, src, dst, label, out)?;
        }
        Ok(())
    }

    /// Splits a path of the product into one transition sequence per factor.
    pub fn project_path(&self, path: &[usize]) -> Result<Vec<Vec<usize>>> {
        let mut out = vec![Vec::new(); self.arity];
        for &t in path {
            for (i, c) in self.component_transitions(t)?.into_iter().enumerate() {
                if let Some(c) = c {
                    out[i].push(c);
                }
            }
        }
        Ok(out)
    }
}

const DENSE_INDEX_LIMIT: usize = 1 << 25;

enum StateIndex {
    Dense { right: usize, slots: Vec<u32> },
    Sparse(HashMap<(u32, u32, u8), u32>),
}

impl StateIndex {
    fn new(left: usize, right: usize) -> Self {
        match left.checked_mul(right).and_then(|x| x.checked_mul(3)) {
            Some(size) if size <= DENSE_INDEX_LIMIT => {
                StateIndex::Dense { right, slots: vec![u32::MAX; size] }
            }
            _ => StateIndex::Sparse(HashMap::new()),
        }
    }

    fn get_or_insert(&mut self, key: (StateId, StateId, FilterState), next: usize) -> (usize, bool) {
        match self {
            StateIndex::Dense { right, slots } => {
                let slot = &mut slots[(key.0 * *right + key.1) * 3 + key.2.index()];
                if *slot == u32::MAX {
                    *slot = next as u32;
                    (next, true)
                } else {
                    (*slot as usize, false)
                }
            }
            StateIndex::Sparse(map) => {
                let k = (key.0 as u32, key.1 as u32, key.2.index() as u8);
                match map.get(&k) {
                    Some(&id) => (id as usize, false),
                    None => {
                        map.insert(k, next as u32);
                        (next, true)
                    }
                }
            }
        }
    }
}

/// Intersects a product with one more automaton.
pub fn extend(left: &ProductAutomaton, right: &FiniteAutomaton) -> Result<ProductAutomaton> {
    let l = &left.underlying;
    if l.has_epsilon_cycle() || right.has_epsilon_cycle() {
        return Err(Error::EpsilonCycleInput);
    }
    let mut alphabet: Vec<String> = l.alphabet().iter().chain(right.alphabet()).cloned().collect();
    alphabet.sort();
    alphabet.dedup();
    let union_id = |name: &str| alphabet.binary_search_by(|s| s.as_str().cmp(name)).unwrap() as SymbolId;
    let l_to_union: Vec<SymbolId> = l.alphabet().iter().map(|s| union_id(s)).collect();
    let l_to_right: Vec<Option<SymbolId>> = l.alphabet().iter().map(|s| right.symbol_id(s)).collect();

    let mut index = StateIndex::new(l.num_states(), right.num_states());
    let mut states: Vec<(StateId, StateId, FilterState)> = Vec::new();
    let mut initial = Vec::new();
    let mut transitions: Vec<Transition> = Vec::new();

    let mut intern = |key: (StateId, StateId, FilterState),
                      states: &mut Vec<(StateId, StateId, FilterState)>,
                      queue: &mut Vec<usize>| {
        let (id, fresh) = index.get_or_insert(key, states.len());
        if fresh {
            states.push(key);
            queue.push(id);
        }
        id
    };

    let mut queue: Vec<usize> = Vec::new();
    for q1 in l.initial_states() {
        for q2 in right.initial_states() {
            let id = intern((q1, q2, FilterState::F0), &mut states, &mut queue);
            initial.push(id);
        }
    }
    let mut head = 0;
    while head < queue.len() {
        let src = queue[head];
        head += 1;
        let (q1, q2, f) = states[src];

        // symbol matches
        for t1 in l.out(q1) {
            let Label::Sym(a) = t1.label else { continue };
            let Some(b) = l_to_right[a as usize] else { continue };
            let next_f = filter_step(f, EpsMove::MatchSymbol).expect("matches are always allowed");
            for i in right.out_label_range(q2, Label::Sym(b)) {
                let t2 = right.transition(i);
                let dst = intern((t1.dst, t2.dst, next_f), &mut states, &mut queue);
                transitions.push(Transition { src, label: Label::Sym(l_to_union[a as usize]), dst });
            }
        }
        let eps1 = l.out_label_range(q1, Label::Eps);
        let eps2 = right.out_label_range(q2, Label::Eps);
        if let Some(next_f) = filter_step(f, EpsMove::E2E1) {
            for i in eps1.clone() {
                for j in eps2.clone() {
                    let key = (l.transition(i).dst, right.transition(j).dst, next_f);
                    let dst = intern(key, &mut states, &mut queue);
                    transitions.push(Transition { src, label: Label::Eps, dst });
                }
            }
        }
        if let Some(next_f) = filter_step(f, EpsMove::E1E1) {
            for j in eps2.clone() {
                let dst = intern((q1, right.transition(j).dst, next_f), &mut states, &mut queue);
                transitions.push(Transition { src, label: Label::Eps, dst });
            }
        }
        if let Some(next_f) = filter_step(f, EpsMove::E2E2) {
            for i in eps1.clone() {
                let dst = intern((l.transition(i).dst, q2, next_f), &mut states, &mut queue);
                transitions.push(Transition { src, label: Label::Eps, dst });
            }
        }
    }

    let n = states.len();
    let mut init_flags = vec![false; n];
    for id in initial {
        init_flags[id] = true;
    }
    let finals: Vec<bool> = states.iter().map(|&(a, b, _)| l.is_final(a) && right.is_final(b)).collect();
    transitions.sort_by_key(|t| (t.src, t.label, t.dst));
    let full = FiniteAutomaton::assemble(alphabet, n, init_flags, finals, transitions);
    let (underlying, kept) = full.trim_with_map();

    let arity = left.arity + 1;
    let mut components = Vec::with_capacity(kept.len() * arity);
    let mut filters = Vec::with_capacity(kept.len() * (arity - 1));
    for &old in &kept {
        let (q1, q2, f) = states[old];
        components.extend_from_slice(left.components(q1));
        components.push(q2);
        filters.extend_from_slice(left.filters(q1));
        filters.push(f);
    }
    let mut factors = left.factors.clone();
    factors.push(right.clone());
    Ok(ProductAutomaton { underlying, factors, arity, components, filters })
}

/// Filtered intersection of two automata, trimmed.
pub fn intersect(a1: &FiniteAutomaton, a2: &FiniteAutomaton) -> Result<ProductAutomaton> {
    extend(&ProductAutomaton::identity(a1), a2)
}

/// `A ∩ A`.
pub fn square(a: &FiniteAutomaton) -> Result<ProductAutomaton> {
    let p = intersect(a, a)?;
    let bound = 3 * a.num_states() * a.num_states();
    if p.num_states() > bound {
        return Err(Error::InternalInvariant(format!(
            "square has {} states, bound is {bound}",
            p.num_states()
        )));
    }
    Ok(p)
}

/// `(A ∩ A) ∩ A`.
pub fn cube(a: &FiniteAutomaton) -> Result<ProductAutomaton> {
    extend(&square(a)?, a)
}
