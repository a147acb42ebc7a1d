//! Brute-force ground truth for the analyses: exact path counting, growth
//! tables, path-preserving transforms, fixtures and random automata.
//!
//! Nothing here depends on the product construction or the SCC-based tests,
//! so it can be used to check them.

pub mod fixtures;
mod random;
mod transform;

pub use random::{random_automaton, random_probabilistic, RandomSpec};
pub use transform::{eliminate_all_epsilons, eliminate_epsilon_transition, split_transition};

use serde::Serialize;

use crate::automaton::{FiniteAutomaton, Label, StateId, SymbolId};
use crate::error::{Error, Result};

/// Hard caps on exhaustive tables.
pub const MAX_TABLE_ALPHABET: usize = 4;
pub const MAX_TABLE_LEN: usize = 14;

/// Maps symbol names to ids, failing on unknown symbols.
pub fn encode_word(a: &FiniteAutomaton, word: &[&str]) -> Result<Vec<SymbolId>> {
    word.iter()
        .map(|s| a.symbol_id(s).ok_or_else(|| Error::SymbolNotInAlphabet(s.to_string())))
        .collect()
}

/// Splits a command-line word: whitespace-separated tokens if it contains
/// whitespace, single characters otherwise.
pub fn split_word(s: &str) -> Vec<String> {
    if s.chars().any(char::is_whitespace) {
        s.split_whitespace().map(str::to_string).collect()
    } else {
        s.chars().map(|c| c.to_string()).collect()
    }
}

/// States in an order where every epsilon-transition goes forward.
pub(crate) fn epsilon_topological_order(a: &FiniteAutomaton) -> Result<Vec<StateId>> {
    let n = a.num_states();
    let mut indeg = vec![0usize; n];
    for t in a.transitions() {
        if t.label.is_eps() {
            indeg[t.dst] += 1;
        }
    }
    let mut order: Vec<StateId> = (0..n).filter(|&q| indeg[q] == 0).collect();
    let mut head = 0;
    while head < order.len() {
        let q = order[head];
        head += 1;
        for i in a.out_label_range(q, Label::Eps) {
            let d = a.transition(i).dst;
            indeg[d] -= 1;
            if indeg[d] == 0 {
                order.push(d);
            }
        }
    }
    if order.len() != n {
        return Err(Error::EpsilonCycleInput);
    }
    Ok(order)
}

/// Number of successful paths labeled `word`, counting transition sequences
/// (paths that differ only in epsilon-steps are distinct).
///
/// Backward dynamic program over (state, position).
pub fn count_paths(a: &FiniteAutomaton, word: &[&str]) -> Result<u128> {
    let word = encode_word(a, word)?;
    count_paths_ids(a, &word)
}

pub fn count_paths_ids(a: &FiniteAutomaton, word: &[SymbolId]) -> Result<u128> {
    let order = epsilon_topological_order(a)?;
    let n = a.num_states();
    let len = word.len();
    // from[q] = number of paths from q reading word[i..] and ending final
    let mut next = vec![0u128; n];
    let mut cur = vec![0u128; n];
    for i in (0..=len).rev() {
        for &q in order.iter().rev() {
            let mut c: u128 = if i == len && a.is_final(q) { 1 } else { 0 };
            for t in a.out(q) {
                match t.label {
                    Label::Eps => c += cur[t.dst],
                    Label::Sym(s) if i < len && s == word[i] => c += next[t.dst],
                    Label::Sym(_) => {}
                }
            }
            cur[q] = c;
        }
        std::mem::swap(&mut next, &mut cur);
    }
    Ok(a.initial_states().map(|q| next[q]).sum())
}

/// Enumerates successful paths labeled `word` one by one with an explicit
/// stack. Exponential; meant for cross-checking on small inputs.
pub fn enumerate_paths(a: &FiniteAutomaton, word: &[&str]) -> Result<u128> {
    if a.has_epsilon_cycle() {
        return Err(Error::EpsilonCycleInput);
    }
    let word = encode_word(a, word)?;
    let mut total = 0u128;
    let mut stack: Vec<(StateId, usize)> = a.initial_states().map(|q| (q, 0)).collect();
    while let Some((q, i)) = stack.pop() {
        if i == word.len() && a.is_final(q) {
            total += 1;
        }
        for t in a.out(q) {
            match t.label {
                Label::Eps => stack.push((t.dst, i)),
                Label::Sym(s) if i < word.len() && s == word[i] => stack.push((t.dst, i + 1)),
                Label::Sym(_) => {}
            }
        }
    }
    Ok(total)
}

/// Forward propagation of path counts: a vector indexed by state, pushed
/// through one symbol matrix followed by the epsilon closure.
pub(crate) struct Propagator<'a> {
    a: &'a FiniteAutomaton,
    order: Vec<StateId>,
}

impl<'a> Propagator<'a> {
    pub(crate) fn new(a: &'a FiniteAutomaton) -> Result<Self> {
        Ok(Propagator { a, order: epsilon_topological_order(a)? })
    }

    fn close(&self, v: &mut [u128]) {
        for &q in &self.order {
            if v[q] == 0 {
                continue;
            }
            for i in self.a.out_label_range(q, Label::Eps) {
                let d = self.a.transition(i).dst;
                v[d] += v[q];
            }
        }
    }

    pub(crate) fn start(&self) -> Vec<u128> {
        let mut v = vec![0u128; self.a.num_states()];
        for q in self.a.initial_states() {
            v[q] = 1;
        }
        self.close(&mut v);
        v
    }

    pub(crate) fn step(&self, v: &[u128], sym: SymbolId, out: &mut Vec<u128>) {
        out.clear();
        out.resize(self.a.num_states(), 0);
        for (q, &c) in v.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for i in self.a.out_label_range(q, Label::Sym(sym)) {
                out[self.a.transition(i).dst] += c;
            }
        }
        self.close(out);
    }

    pub(crate) fn accepted(&self, v: &[u128]) -> u128 {
        self.a.final_states().map(|q| v[q]).sum()
    }
}

/// Path count by forward propagation; independent of [`count_paths`].
pub fn count_paths_by_propagation(a: &FiniteAutomaton, word: &[&str]) -> Result<u128> {
    let word = encode_word(a, word)?;
    let p = Propagator::new(a)?;
    let mut v = p.start();
    let mut buf = Vec::new();
    for &s in &word {
        p.step(&v, s, &mut buf);
        std::mem::swap(&mut v, &mut buf);
    }
    Ok(p.accepted(&v))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GrowthRow {
    pub len: usize,
    pub max_paths: u128,
    /// Lexicographically first string attaining `max_paths`, absent when no
    /// string of this length is accepted.
    pub argmax: Option<Vec<String>>,
}

/// For each length `n`, the largest number of successful paths over all
/// strings of length `n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GrowthTable {
    pub rows: Vec<GrowthRow>,
}

impl GrowthTable {
    pub fn max_at(&self, n: usize) -> u128 {
        self.rows[n].max_paths
    }

    /// Largest entry over lengths in `range`.
    pub fn max_over(&self, range: std::ops::RangeInclusive<usize>) -> u128 {
        self.rows[range].iter().map(|r| r.max_paths).max().unwrap_or(0)
    }
}

/// Exhaustive table for lengths `0..=max_len`.
pub fn growth_table(a: &FiniteAutomaton, max_len: usize) -> Result<GrowthTable> {
    if a.alphabet().len() > MAX_TABLE_ALPHABET {
        return Err(Error::AlphabetTooLarge { size: a.alphabet().len(), max: MAX_TABLE_ALPHABET });
    }
    if max_len > MAX_TABLE_LEN {
        return Err(Error::LengthTooLarge { len: max_len, max: MAX_TABLE_LEN });
    }
    let p = Propagator::new(a)?;
    let k = a.alphabet().len() as SymbolId;
    let mut best: Vec<(u128, Option<Vec<SymbolId>>)> = vec![(0, None); max_len + 1];
    // depth-first over strings in lexicographic order; vectors[d] holds the
    // counts after reading prefix[..d]
    let mut vectors: Vec<Vec<u128>> = vec![p.start()];
    let mut prefix: Vec<SymbolId> = Vec::new();
    let mut next_sym: Vec<SymbolId> = vec![0];
    let record = |best: &mut Vec<(u128, Option<Vec<SymbolId>>)>, v: &[u128], prefix: &[SymbolId]| {
        let c = p.accepted(v);
        let slot = &mut best[prefix.len()];
        if c > slot.0 {
            *slot = (c, Some(prefix.to_vec()));
        }
    };
    record(&mut best, &vectors[0], &prefix);
    while let Some(sym) = next_sym.last_mut() {
        let depth = prefix.len();
        if depth == max_len || *sym >= k {
            next_sym.pop();
            if prefix.pop().is_some() {
                vectors.pop();
            }
            continue;
        }
        let s = *sym;
        *sym += 1;
        let mut v = Vec::new();
        p.step(&vectors[depth], s, &mut v);
        if v.iter().all(|&c| c == 0) {
            continue;
        }
        prefix.push(s);
        record(&mut best, &v, &prefix);
        vectors.push(v);
        next_sym.push(0);
    }
    let rows = best
        .into_iter()
        .enumerate()
        .map(|(len, (max_paths, arg))| GrowthRow {
            len,
            max_paths,
            argmax: arg.map(|w| w.into_iter().map(|s| a.alphabet()[s as usize].clone()).collect()),
        })
        .collect();
    Ok(GrowthTable { rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use fixtures::*;

    fn aa(n: usize) -> Vec<&'static str> {
        vec!["a"; n]
    }

    #[test]
    fn fixture_counts() {
        assert_eq!(count_paths(&ex_exp(), &aa(3)).unwrap(), 4);
        assert_eq!(count_paths(&ex_poly1(), &aa(4)).unwrap(), 4);
        assert_eq!(count_paths(&ex_fin2(), &["b", "a"]).unwrap(), 0);
        assert_eq!(count_paths(&ex_fin2(), &["a", "b"]).unwrap(), 2);
    }

    #[test]
    fn unknown_symbol() {
        assert_eq!(
            count_paths(&ex_poly1(), &["z"]).unwrap_err(),
            Error::SymbolNotInAlphabet("z".into())
        );
    }

    #[test]
    fn three_methods_agree_on_fixtures() {
        for a in [ex_fin2(), ex_poly1(), ex_poly2(), ex_exp(), ex_eps()] {
            for n in 0..=7 {
                let w = aa(n);
                if a.symbol_id("a").is_none() {
                    continue;
                }
                let c = count_paths(&a, &w).unwrap();
                assert_eq!(c, count_paths_by_propagation(&a, &w).unwrap());
                assert_eq!(c, enumerate_paths(&a, &w).unwrap());
            }
        }
    }

    #[test]
    fn growth_rows() {
        let t = growth_table(&ex_poly2(), 6).unwrap();
        assert_eq!((t.max_at(2), t.max_at(3), t.max_at(4)), (1, 3, 6));
        let t = growth_table(&ex_exp(), 6).unwrap();
        assert_eq!((1..=4).map(|n| t.max_at(n)).collect::<Vec<_>>(), vec![1, 2, 4, 8]);
        let t = growth_table(&ex_fin2(), 8).unwrap();
        assert!(t.rows.iter().all(|r| r.max_paths <= 2));
        assert_eq!(t.rows[2].argmax.as_deref(), Some(&["a".to_string(), "b".to_string()][..]));
        assert_eq!(t.rows[3].argmax, None);
    }

    #[test]
    fn growth_caps() {
        assert!(matches!(growth_table(&ex_exp(), 15), Err(Error::LengthTooLarge { .. })));
        let big = FiniteAutomaton::from_triples(
            1,
            &[0],
            &[0],
            &[(0, "a", 0), (0, "b", 0), (0, "c", 0), (0, "d", 0), (0, "e", 0)],
        )
        .unwrap();
        assert!(matches!(growth_table(&big, 2), Err(Error::AlphabetTooLarge { size: 5, max: 4 })));
    }

    #[test]
    fn split_word_forms() {
        assert_eq!(split_word("ab"), vec!["a", "b"]);
        assert_eq!(split_word("x1 y2"), vec!["x1", "y2"]);
    }
}
