//! Unweighted finite automata with epsilon-transitions.
//!
//! A [`FiniteAutomaton`] is immutable once validated. Its transitions are kept
//! in canonical `(src, label, dst)` order, so a transition index is stable for
//! a given automaton and matches the order in which the text format writes
//! `trans` lines.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};

pub type StateId = usize;
pub type SymbolId = u32;

/// Token reserved for the empty label.
pub const EPS_TOKEN: &str = "<eps>";

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Label {
    Eps,
    Sym(SymbolId),
}

impl Label {
    pub fn is_eps(self) -> bool {
        matches!(self, Label::Eps)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Transition {
    pub src: StateId,
    pub label: Label,
    pub dst: StateId,
}

impl Transition {
    fn key(&self) -> (StateId, Label, StateId) {
        (self.src, self.label, self.dst)
    }
}

/// Unchecked description of an automaton, as read from a file or built by hand.
///
/// `label: None` denotes epsilon. When `alphabet` is `None` it is inferred from
/// the transition labels.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct RawAutomaton {
    pub num_states: usize,
    pub alphabet: Option<Vec<String>>,
    pub initial: Vec<StateId>,
    pub final_states: Vec<StateId>,
    pub transitions: Vec<RawTransition>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawTransition {
    pub src: StateId,
    pub label: Option<String>,
    pub dst: StateId,
}

impl RawTransition {
    pub fn new(src: StateId, label: &str, dst: StateId) -> Self {
        let label = if label == EPS_TOKEN { None } else { Some(label.to_string()) };
        RawTransition { src, label, dst }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteAutomaton {
    alphabet: Vec<String>,
    num_states: usize,
    initial: Vec<bool>,
    finals: Vec<bool>,
    transitions: Vec<Transition>,
    // CSR offsets into `transitions`, indexed by source state.
    offsets: Vec<usize>,
}

impl FiniteAutomaton {
    /// Validates a raw description.
    pub fn validate(raw: RawAutomaton) -> Result<Self> {
        Self::validate_indexed(raw).map(|(a, _)| a)
    }

    /// Like [`validate`](Self::validate), also returning for each canonical
    /// transition the index it had in `raw.transitions`.
    pub fn validate_indexed(raw: RawAutomaton) -> Result<(Self, Vec<usize>)> {
        let n = raw.num_states;
        let check = |id: StateId| {
            if id >= n {
                Err(Error::DanglingStateId { id, num_states: n })
            } else {
                Ok(())
            }
        };
        let explicit = raw.alphabet.is_some();
        let mut symbols: BTreeSet<String> = raw.alphabet.unwrap_or_default().into_iter().collect();
        for s in &symbols {
            if s == EPS_TOKEN || s.is_empty() || s.chars().any(char::is_whitespace) {
                return Err(Error::ReservedLabelInAlphabet(s.clone()));
            }
        }
        for t in &raw.transitions {
            check(t.src)?;
            check(t.dst)?;
            if let Some(l) = &t.label {
                if l.is_empty() || l == EPS_TOKEN || l.chars().any(char::is_whitespace) {
                    return Err(Error::ReservedLabelInAlphabet(l.clone()));
                }
                if !symbols.contains(l) {
                    if explicit {
                        return Err(Error::SymbolNotInAlphabet(l.clone()));
                    }
                    symbols.insert(l.clone());
                }
            }
        }
        let alphabet: Vec<String> = symbols.into_iter().collect();
        let mut initial = vec![false; n];
        let mut finals = vec![false; n];
        for &q in &raw.initial {
            check(q)?;
            initial[q] = true;
        }
        for &q in &raw.final_states {
            check(q)?;
            finals[q] = true;
        }
        let mut indexed: Vec<(Transition, usize)> = raw
            .transitions
            .iter()
            .enumerate()
            .map(|(i, t)| {
                let label = match &t.label {
                    None => Label::Eps,
                    Some(l) => Label::Sym(alphabet.binary_search(l).unwrap() as SymbolId),
                };
                (Transition { src: t.src, label, dst: t.dst }, i)
            })
            .collect();
        indexed.sort_by_key(|(t, _)| t.key());
        for w in indexed.windows(2) {
            if w[0].0 == w[1].0 {
                let t = w[0].0;
                return Err(Error::DuplicateTransition {
                    src: t.src,
                    label: label_name(&alphabet, t.label).to_string(),
                    dst: t.dst,
                });
            }
        }
        let (transitions, perm): (Vec<_>, Vec<_>) = indexed.into_iter().unzip();
        Ok((Self::assemble(alphabet, n, initial, finals, transitions), perm))
    }

    /// Builds from already-checked parts; `transitions` must be sorted and unique.
    pub(crate) fn assemble(
        alphabet: Vec<String>,
        num_states: usize,
        initial: Vec<bool>,
        finals: Vec<bool>,
        transitions: Vec<Transition>,
    ) -> Self {
        debug_assert!(transitions.windows(2).all(|w| w[0].key() < w[1].key()));
        let mut offsets = vec![0usize; num_states + 1];
        for t in &transitions {
            offsets[t.src + 1] += 1;
        }
        for q in 0..num_states {
            offsets[q + 1] += offsets[q];
        }
        FiniteAutomaton { alphabet, num_states, initial, finals, transitions, offsets }
    }

    /// Builds and validates from `(src, label, dst)` triples; `"<eps>"` is epsilon.
    pub fn from_triples(
        num_states: usize,
        initial: &[StateId],
        final_states: &[StateId],
        triples: &[(StateId, &str, StateId)],
    ) -> Result<Self> {
        Self::validate(RawAutomaton {
            num_states,
            alphabet: None,
            initial: initial.to_vec(),
            final_states: final_states.to_vec(),
            transitions: triples.iter().map(|&(s, l, d)| RawTransition::new(s, l, d)).collect(),
        })
    }

    pub fn empty() -> Self {
        Self::assemble(Vec::new(), 0, Vec::new(), Vec::new(), Vec::new())
    }

    pub fn num_states(&self) -> usize {
        self.num_states
    }

    pub fn num_transitions(&self) -> usize {
        self.transitions.len()
    }

    pub fn alphabet(&self) -> &[String] {
        &self.alphabet
    }

    pub fn symbol_id(&self, name: &str) -> Option<SymbolId> {
        self.alphabet.binary_search_by(|s| s.as_str().cmp(name)).ok().map(|i| i as SymbolId)
    }

    pub fn label_name(&self, label: Label) -> &str {
        label_name(&self.alphabet, label)
    }

    pub fn transitions(&self) -> &[Transition] {
        &self.transitions
    }

    pub fn transition(&self, index: usize) -> &Transition {
        &self.transitions[index]
    }

    /// Index range of the transitions leaving `q`.
    pub fn out_range(&self, q: StateId) -> std::ops::Range<usize> {
        self.offsets[q]..self.offsets[q + 1]
    }

    pub fn out(&self, q: StateId) -> &[Transition] {
        &self.transitions[self.out_range(q)]
    }

    /// Index range of the transitions leaving `q` with the given label.
    pub fn out_label_range(&self, q: StateId, label: Label) -> std::ops::Range<usize> {
        let base = self.offsets[q];
        let out = self.out(q);
        let lo = out.partition_point(|t| t.label < label);
        let hi = out.partition_point(|t| t.label <= label);
        base + lo..base + hi
    }

    pub fn find_transition(&self, src: StateId, label: Label, dst: StateId) -> Option<usize> {
        if src >= self.num_states {
            return None;
        }
        let base = self.offsets[src];
        self.out(src).binary_search_by(|t| (t.label, t.dst).cmp(&(label, dst))).ok().map(|i| base + i)
    }

    pub fn is_initial(&self, q: StateId) -> bool {
        self.initial[q]
    }

    pub fn is_final(&self, q: StateId) -> bool {
        self.finals[q]
    }

    pub fn initial_states(&self) -> impl Iterator<Item = StateId> + '_ {
        (0..self.num_states).filter(|&q| self.initial[q])
    }

    pub fn final_states(&self) -> impl Iterator<Item = StateId> + '_ {
        (0..self.num_states).filter(|&q| self.finals[q])
    }

    pub fn num_epsilon_transitions(&self) -> usize {
        self.transitions.iter().filter(|t| t.label.is_eps()).count()
    }

    pub fn to_raw(&self) -> RawAutomaton {
        RawAutomaton {
            num_states: self.num_states,
            alphabet: Some(self.alphabet.clone()),
            initial: self.initial_states().collect(),
            final_states: self.final_states().collect(),
            transitions: self
                .transitions
                .iter()
                .map(|t| RawTransition {
                    src: t.src,
                    label: match t.label {
                        Label::Eps => None,
                        Label::Sym(s) => Some(self.alphabet[s as usize].clone()),
                    },
                    dst: t.dst,
                })
                .collect(),
        }
    }

    /// States reachable from an initial state and co-reachable to a final one.
    pub fn useful_states(&self) -> Vec<bool> {
        let n = self.num_states;
        let mut fwd = vec![false; n];
        let mut stack: Vec<StateId> = self.initial_states().collect();
        for &q in &stack {
            fwd[q] = true;
        }
        while let Some(q) = stack.pop() {
            for t in self.out(q) {
                if !fwd[t.dst] {
                    fwd[t.dst] = true;
                    stack.push(t.dst);
                }
            }
        }
        let mut preds: Vec<Vec<StateId>> = vec![Vec::new(); n];
        for t in &self.transitions {
            preds[t.dst].push(t.src);
        }
        let mut bwd = vec![false; n];
        let mut stack: Vec<StateId> = self.final_states().collect();
        for &q in &stack {
            bwd[q] = true;
        }
        while let Some(q) = stack.pop() {
            for &p in &preds[q] {
                if !bwd[p] {
                    bwd[p] = true;
                    stack.push(p);
                }
            }
        }
        (0..n).map(|q| fwd[q] && bwd[q]).collect()
    }

    pub fn is_trim(&self) -> bool {
        self.useful_states().iter().all(|&u| u)
    }

    /// Restricts to useful states, compacting ids in increasing order.
    pub fn trim(&self) -> FiniteAutomaton {
        self.trim_with_map().0
    }

    /// Trims, also returning the old id of every kept state.
    ///
    /// The renumbering is monotone, so the kept transitions stay in canonical
    /// order and appear in the same relative order as in `self`.
    pub fn trim_with_map(&self) -> (FiniteAutomaton, Vec<StateId>) {
        let keep = self.useful_states();
        self.restrict(&keep)
    }

    pub(crate) fn restrict(&self, keep: &[bool]) -> (FiniteAutomaton, Vec<StateId>) {
        let mut new_id = vec![usize::MAX; self.num_states];
        let mut old_ids = Vec::new();
        for q in 0..self.num_states {
            if keep[q] {
                new_id[q] = old_ids.len();
                old_ids.push(q);
            }
        }
        let transitions = self
            .transitions
            .iter()
            .filter(|t| keep[t.src] && keep[t.dst])
            .map(|t| Transition { src: new_id[t.src], label: t.label, dst: new_id[t.dst] })
            .collect();
        let initial = old_ids.iter().map(|&q| self.initial[q]).collect();
        let finals = old_ids.iter().map(|&q| self.finals[q]).collect();
        let a = Self::assemble(self.alphabet.clone(), old_ids.len(), initial, finals, transitions);
        (a, old_ids)
    }

    pub fn has_epsilon_cycle(&self) -> bool {
        self.epsilon_cycle_search().0
    }

    /// Iterative three-colour DFS over epsilon-transitions only. Returns the
    /// verdict and the number of edge visits, which never exceeds `|E|`.
    pub fn epsilon_cycle_search(&self) -> (bool, usize) {
        const WHITE: u8 = 0;
        const GREY: u8 = 1;
        const BLACK: u8 = 2;
        let n = self.num_states;
        let mut color = vec![WHITE; n];
        let mut visits = 0usize;
        // (state, next index into its epsilon range)
        let mut stack: Vec<(StateId, usize)> = Vec::new();
        for root in 0..n {
            if color[root] != WHITE {
                continue;
            }
            color[root] = GREY;
            stack.push((root, self.out_label_range(root, Label::Eps).start));
            while let Some(&mut (q, ref mut next)) = stack.last_mut() {
                let end = self.out_label_range(q, Label::Eps).end;
                if *next < end {
                    let t = self.transitions[*next];
                    *next += 1;
                    visits += 1;
                    match color[t.dst] {
                        GREY => return (true, visits),
                        WHITE => {
                            color[t.dst] = GREY;
                            stack.push((t.dst, self.out_label_range(t.dst, Label::Eps).start));
                        }
                        _ => {}
                    }
                } else {
                    color[q] = BLACK;
                    stack.pop();
                }
            }
        }
        (false, visits)
    }

    /// Swaps initial and final states and reverses every transition.
    pub fn reversed(&self) -> FiniteAutomaton {
        let mut transitions: Vec<Transition> = self
            .transitions
            .iter()
            .map(|t| Transition { src: t.dst, label: t.label, dst: t.src })
            .collect();
        transitions.sort_by_key(Transition::key);
        Self::assemble(
            self.alphabet.clone(),
            self.num_states,
            self.finals.clone(),
            self.initial.clone(),
            transitions,
        )
    }

    /// Renames state `q` to `perm[q]`; `perm` must be a permutation of `0..n`.
    pub fn renamed(&self, perm: &[StateId]) -> Result<FiniteAutomaton> {
        let n = self.num_states;
        let mut seen = vec![false; n];
        if perm.len() != n {
            return Err(Error::InternalInvariant("permutation length mismatch".into()));
        }
        for &p in perm {
            if p >= n || seen[p] {
                return Err(Error::InternalInvariant("not a permutation".into()));
            }
            seen[p] = true;
        }
        let mut initial = vec![false; n];
        let mut finals = vec![false; n];
        for q in 0..n {
            initial[perm[q]] = self.initial[q];
            finals[perm[q]] = self.finals[q];
        }
        let mut transitions: Vec<Transition> = self
            .transitions
            .iter()
            .map(|t| Transition { src: perm[t.src], label: t.label, dst: perm[t.dst] })
            .collect();
        transitions.sort_by_key(Transition::key);
        Ok(Self::assemble(self.alphabet.clone(), n, initial, finals, transitions))
    }
}

pub(crate) fn label_name(alphabet: &[String], label: Label) -> &str {
    match label {
        Label::Eps => EPS_TOKEN,
        Label::Sym(s) => &alphabet[s as usize],
    }
}

impl fmt::Display for FiniteAutomaton {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "automaton: {} states, {} transitions", self.num_states, self.transitions.len())
    }
}

/// A sequence of adjacent transitions of some automaton.
#[derive(Debug, Clone, PartialEq, Eq, Hash, serde::Serialize)]
#[serde(transparent)]
pub struct Path {
    transitions: Vec<usize>,
}

impl Path {
    /// Checks adjacency and index bounds against `a`.
    pub fn new(a: &FiniteAutomaton, transitions: Vec<usize>) -> Result<Path> {
        for &i in &transitions {
            if i >= a.num_transitions() {
                return Err(Error::NoSuchTransition(i));
            }
        }
        for w in transitions.windows(2) {
            if a.transition(w[0]).dst != a.transition(w[1]).src {
                return Err(Error::InvalidPath(format!(
                    "transitions {} and {} are not adjacent",
                    w[0], w[1]
                )));
            }
        }
        Ok(Path { transitions })
    }

    pub fn transitions(&self) -> &[usize] {
        &self.transitions
    }

    pub fn len(&self) -> usize {
        self.transitions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.transitions.is_empty()
    }

    pub fn origin(&self, a: &FiniteAutomaton) -> Option<StateId> {
        self.transitions.first().map(|&i| a.transition(i).src)
    }

    pub fn destination(&self, a: &FiniteAutomaton) -> Option<StateId> {
        self.transitions.last().map(|&i| a.transition(i).dst)
    }

    /// Concatenation of the non-epsilon labels.
    pub fn label(&self, a: &FiniteAutomaton) -> Vec<SymbolId> {
        self.transitions
            .iter()
            .filter_map(|&i| match a.transition(i).label {
                Label::Sym(s) => Some(s),
                Label::Eps => None,
            })
            .collect()
    }

    pub fn label_names(&self, a: &FiniteAutomaton) -> Vec<String> {
        self.label(a).into_iter().map(|s| a.alphabet()[s as usize].clone()).collect()
    }

    /// State sequence visited, starting at the origin.
    pub fn states(&self, a: &FiniteAutomaton) -> Vec<StateId> {
        let mut out: Vec<StateId> = self.origin(a).into_iter().collect();
        out.extend(self.transitions.iter().map(|&i| a.transition(i).dst));
        out
    }
}
