//! Finite / polynomial / exponential ambiguity tests.
//!
//! * Exponential ambiguity: some SCC of `A²` holds a state projecting to
//!   `(p, p)` and one projecting to `(q, q')` with `q != q'`.
//! * Infinite ambiguity: `A³` is extended with a `#` edge from every state
//!   projecting to `(p, q, q)` to every state projecting to `(p, p, q)`; some
//!   SCC must hold both a `#` edge and a symbol transition. The `#` edges of
//!   one pair are routed through a single hub node, which leaves the SCC
//!   structure unchanged and keeps their number at `O(|Q|²)`.
//! * Degree: longest path, counted in `#` edges, in the condensation of `A`
//!   extended with one `#` edge per certified pair.
//!
//! All entry points expect a trim, epsilon-cycle free automaton, except
//! [`classify`], which trims first.

mod witness;

pub use witness::{DpaWitness, EdaWitness, IdaWitness, Witness};

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use serde::Serialize;

use crate::automaton::{FiniteAutomaton, Path, StateId};
use crate::error::{Error, Result};
use crate::intersection::{cube, square, ProductAutomaton};
use crate::scc::{tarjan, Components, Digraph};
use witness::IdMap;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AmbiguityClass {
    Finite,
    /// Degree is at least 1.
    Polynomial(u32),
    Exponential,
}

impl AmbiguityClass {
    pub fn name(self) -> &'static str {
        match self {
            AmbiguityClass::Finite => "FINITE",
            AmbiguityClass::Polynomial(_) => "POLYNOMIAL",
            AmbiguityClass::Exponential => "EXPONENTIAL",
        }
    }

    /// Degree of polynomial ambiguity; `None` when exponential.
    pub fn dpa(self) -> Option<u32> {
        match self {
            AmbiguityClass::Finite => Some(0),
            AmbiguityClass::Polynomial(d) => Some(d),
            AmbiguityClass::Exponential => None,
        }
    }
}

impl fmt::Display for AmbiguityClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AmbiguityClass::Polynomial(d) => write!(f, "POLYNOMIAL degree={d}"),
            other => f.write_str(other.name()),
        }
    }
}

impl Serialize for AmbiguityClass {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AmbiguityReport {
    pub class: AmbiguityClass,
    /// Ids refer to the automaton passed to [`classify`].
    pub witness: Option<Witness>,
}

fn check_input(a: &FiniteAutomaton) -> Result<()> {
    if a.has_epsilon_cycle() {
        return Err(Error::EpsilonCycleInput);
    }
    if !a.is_trim() {
        return Err(Error::NotTrim);
    }
    Ok(())
}

fn graph_of(a: &FiniteAutomaton) -> Digraph {
    Digraph::from_edges(a.num_states(), a.transitions().iter().map(|t| (t.src, t.dst)))
}

/// Shortest path from any `from` state to any `to` state inside `allowed`,
/// as product transition indices.
fn bfs_path(
    a: &FiniteAutomaton,
    from: &[StateId],
    is_target: impl Fn(StateId) -> bool,
    allowed: impl Fn(StateId) -> bool,
) -> Option<Vec<usize>> {
    let mut parent: Vec<Option<usize>> = vec![None; a.num_states()];
    let mut seen = vec![false; a.num_states()];
    let mut queue = VecDeque::new();
    for &s in from {
        seen[s] = true;
        queue.push_back(s);
    }
    while let Some(q) = queue.pop_front() {
        for i in a.out_range(q) {
            let d = a.transition(i).dst;
            if !allowed(d) || seen[d] {
                continue;
            }
            seen[d] = true;
            parent[d] = Some(i);
            if is_target(d) {
                let mut path = vec![i];
                let mut cur = q;
                while let Some(p) = parent[cur] {
                    path.push(p);
                    cur = a.transition(p).src;
                }
                path.reverse();
                return Some(path);
            }
            queue.push_back(d);
        }
    }
    None
}

fn eda_in_square(a: &FiniteAutomaton, sq: &ProductAutomaton) -> Result<Option<EdaWitness>> {
    let u = sq.underlying();
    let comps = tarjan(&graph_of(u));
    let mut first_diag: Vec<Option<StateId>> = vec![None; comps.count];
    let mut has_off = vec![false; comps.count];
    for s in 0..u.num_states() {
        let c = comps.component[s];
        let pq = sq.components(s);
        if pq[0] == pq[1] {
            first_diag[c].get_or_insert(s);
        } else {
            has_off[c] = true;
        }
    }
    let Some(d) = (0..comps.count)
        .filter(|&c| has_off[c])
        .filter_map(|c| first_diag[c])
        .min()
    else {
        return Ok(None);
    };
    let c = comps.component[d];
    let in_comp = |s: StateId| comps.component[s] == c;
    let off = |s: StateId| {
        let pq = sq.components(s);
        pq[0] != pq[1]
    };
    let to_off = bfs_path(u, &[d], |s| off(s) && in_comp(s), in_comp)
        .ok_or_else(|| Error::InternalInvariant("no path to off-diagonal state".into()))?;
    let o = u.transition(*to_off.last().unwrap()).dst;
    let back = bfs_path(u, &[o], |s| s == d, in_comp)
        .ok_or_else(|| Error::InternalInvariant("no path back to diagonal state".into()))?;
    let cycle: Vec<usize> = to_off.into_iter().chain(back).collect();
    let mut parts = sq.project_path(&cycle)?.into_iter();
    let c1 = Path::new(a, parts.next().unwrap())?;
    let c2 = Path::new(a, parts.next().unwrap())?;
    Ok(Some(EdaWitness { state: sq.components(d)[0], label: c1.label_names(a), cycles: [c1, c2] }))
}

/// Exponential-ambiguity test on a trim automaton.
pub fn test_eda(a: &FiniteAutomaton) -> Result<bool> {
    Ok(eda_witness(a)?.is_some())
}

pub fn eda_witness(a: &FiniteAutomaton) -> Result<Option<EdaWitness>> {
    check_input(a)?;
    eda_in_square(a, &square(a)?)
}

/// The cube of `A` together with the pairs certified by the `#` criterion.
///
/// With epsilon-transitions the criterion also certifies pairs whose three
/// paths are one run cut at different epsilon-transitions: `1 -ε-> 2 -a-> 1`
/// gives `1 ->a 1`, `1 ->a 2` and `2 ->a 2` in an unambiguous automaton. Such
/// a pair always lies inside one strongly connected component, and a genuine
/// pair inside one component implies EDA, so for automata without EDA only
/// the pairs spanning two components count.
pub struct IdaAnalysis {
    cube: ProductAutomaton,
    pairs: Vec<(StateId, StateId)>,
    spanning: Vec<(StateId, StateId)>,
}

impl IdaAnalysis {
    pub fn new(a: &FiniteAutomaton) -> Result<Self> {
        check_input(a)?;
        Self::build(a)
    }

    fn build(a: &FiniteAutomaton) -> Result<Self> {
        let cube = cube(a)?;
        let u = cube.underlying();
        let n = u.num_states();
        // hub per pair (p, q): sources are (p,q,q) representatives, targets (p,p,q)
        let mut hubs: HashMap<(StateId, StateId), (Vec<StateId>, Vec<StateId>)> = HashMap::new();
        for s in 0..n {
            let c = cube.components(s);
            if c[0] == c[1] && c[1] != c[2] {
                hubs.entry((c[0], c[2])).or_default().1.push(s);
            } else if c[1] == c[2] && c[0] != c[1] {
                hubs.entry((c[0], c[1])).or_default().0.push(s);
            }
        }
        let mut hub_pairs: Vec<(StateId, StateId)> =
            hubs.iter().filter(|(_, (src, dst))| !src.is_empty() && !dst.is_empty()).map(|(k, _)| *k).collect();
        hub_pairs.sort_unstable();
        let mut edges: Vec<(usize, usize)> = u.transitions().iter().map(|t| (t.src, t.dst)).collect();
        for (h, pair) in hub_pairs.iter().enumerate() {
            let (src, dst) = &hubs[pair];
            edges.extend(src.iter().map(|&s| (s, n + h)));
            edges.extend(dst.iter().map(|&d| (n + h, d)));
        }
        let comps = tarjan(&Digraph::from_edges(n + hub_pairs.len(), edges));
        let mut has_sigma = vec![false; comps.count];
        for t in u.transitions() {
            if !t.label.is_eps() && comps.component[t.src] == comps.component[t.dst] {
                has_sigma[comps.component[t.src]] = true;
            }
        }
        let sizes = comps.sizes();
        let pairs = hub_pairs
            .iter()
            .enumerate()
            .filter(|&(h, _)| {
                let c = comps.component[n + h];
                sizes[c] > 1 && has_sigma[c]
            })
            .map(|(_, &p)| p)
            .collect::<Vec<_>>();
        let sccs = tarjan(&graph_of(a));
        let spanning = pairs.iter().copied().filter(|&(p, q)| sccs.component[p] != sccs.component[q]).collect();
        Ok(IdaAnalysis { cube, pairs, spanning })
    }

    pub fn cube(&self) -> &ProductAutomaton {
        &self.cube
    }

    /// Every pair `(p, q)` certified by the criterion, sorted.
    pub fn pairs(&self) -> &[(StateId, StateId)] {
        &self.pairs
    }

    /// Certified pairs whose states lie in different strongly connected
    /// components, sorted.
    pub fn spanning_pairs(&self) -> &[(StateId, StateId)] {
        &self.spanning
    }

    /// Infinite ambiguity, assuming `A` does not satisfy EDA.
    pub fn is_infinitely_ambiguous(&self) -> bool {
        !self.spanning.is_empty()
    }

    /// Three same-labeled paths for `(p, q)`, read off a non-epsilon cube path
    /// from a `(p, p, q)` state to a `(p, q, q)` state.
    pub fn witness(&self, a: &FiniteAutomaton, p: StateId, q: StateId) -> Result<Option<IdaWitness>> {
        let u = self.cube.underlying();
        let n = u.num_states();
        let starts: Vec<StateId> = (0..n).filter(|&s| self.cube.components(s) == [p, p, q]).collect();
        let is_target = |s: StateId| self.cube.components(s) == [p, q, q];
        // BFS over (state, has read a symbol)
        let idx = |s: StateId, f: bool| 2 * s + f as usize;
        let mut parent: Vec<Option<(usize, usize)>> = vec![None; 2 * n];
        let mut seen = vec![false; 2 * n];
        let mut queue = VecDeque::new();
        for &s in &starts {
            seen[idx(s, false)] = true;
            queue.push_back((s, false));
        }
        let mut goal = None;
        'search: while let Some((s, f)) = queue.pop_front() {
            for i in u.out_range(s) {
                let t = u.transition(i);
                let nf = f || !t.label.is_eps();
                let k = idx(t.dst, nf);
                if seen[k] {
                    continue;
                }
                seen[k] = true;
                parent[k] = Some((idx(s, f), i));
                if nf && is_target(t.dst) {
                    goal = Some(k);
                    break 'search;
                }
                queue.push_back((t.dst, nf));
            }
        }
        let Some(mut k) = goal else { return Ok(None) };
        let mut path = Vec::new();
        while let Some((prev, i)) = parent[k] {
            path.push(i);
            k = prev;
        }
        path.reverse();
        let mut parts = self.cube.project_path(&path)?.into_iter();
        let paths = [
            Path::new(a, parts.next().unwrap())?,
            Path::new(a, parts.next().unwrap())?,
            Path::new(a, parts.next().unwrap())?,
        ];
        Ok(Some(IdaWitness { p, q, label: paths[0].label_names(a), paths }))
    }
}

/// Infinite-ambiguity test on a trim automaton.
pub fn test_ida(a: &FiniteAutomaton) -> Result<bool> {
    let ida = IdaAnalysis::new(a)?;
    Ok(ida.is_infinitely_ambiguous() || (!ida.pairs().is_empty() && test_eda(a)?))
}

/// IDA pairs of a trim automaton: every certified pair under EDA, otherwise
/// the certified pairs spanning two strongly connected components.
pub fn ida_pairs(a: &FiniteAutomaton) -> Result<BTreeSet<(StateId, StateId)>> {
    let ida = IdaAnalysis::new(a)?;
    let pairs = if ida.spanning_pairs().len() < ida.pairs().len() && test_eda(a)? {
        ida.pairs()
    } else {
        ida.spanning_pairs()
    };
    Ok(pairs.iter().copied().collect())
}

/// Edge of the condensation to a component, with the pair when it is a `#` edge.
type ChainEdge = (usize, Option<(StateId, StateId)>);

fn longest_hash_chain(a: &FiniteAutomaton, pairs: &[(StateId, StateId)]) -> Result<(u32, Vec<(StateId, StateId)>)> {
    let comps: Components = tarjan(&graph_of(a));
    // edges of the condensation, grouped by source component;
    // `Some(pair)` marks a `#` edge
    let mut out: Vec<Vec<ChainEdge>> = vec![Vec::new(); comps.count];
    for t in a.transitions() {
        let (cs, cd) = (comps.component[t.src], comps.component[t.dst]);
        if cs != cd {
            out[cs].push((cd, None));
        }
    }
    for &(p, q) in pairs {
        let (cp, cq) = (comps.component[p], comps.component[q]);
        if cp == cq {
            return Err(Error::InternalInvariant(format!(
                "IDA pair ({p}, {q}) lies inside one strongly connected component"
            )));
        }
        out[cp].push((cq, Some((p, q))));
    }
    // successors always have a smaller component number
    let mut best = vec![0u32; comps.count];
    let mut choice: Vec<Option<ChainEdge>> = vec![None; comps.count];
    for c in 0..comps.count {
        for &(d, pair) in &out[c] {
            let v = best[d] + pair.is_some() as u32;
            if v > best[c] {
                best[c] = v;
                choice[c] = Some((d, pair));
            }
        }
    }
    let Some(start) = (0..comps.count).max_by_key(|&c| (best[c], std::cmp::Reverse(c))) else {
        return Ok((0, Vec::new()));
    };
    let mut chain = Vec::new();
    let mut c = start;
    while let Some((d, pair)) = choice[c] {
        if let Some(p) = pair {
            chain.push(p);
        }
        c = d;
    }
    Ok((best[start], chain))
}

/// Degree of polynomial ambiguity of a trim, not exponentially ambiguous automaton.
pub fn dpa(a: &FiniteAutomaton) -> Result<u32> {
    Ok(dpa_with_witness(a)?.0)
}

pub fn dpa_with_witness(a: &FiniteAutomaton) -> Result<(u32, Option<DpaWitness>)> {
    check_input(a)?;
    if eda_in_square(a, &square(a)?)?.is_some() {
        return Err(Error::ExponentiallyAmbiguousInput);
    }
    let ida = IdaAnalysis::build(a)?;
    dpa_from(a, &ida)
}

fn dpa_from(a: &FiniteAutomaton, ida: &IdaAnalysis) -> Result<(u32, Option<DpaWitness>)> {
    let (d, chain) = longest_hash_chain(a, ida.spanning_pairs())?;
    if d == 0 {
        return Ok((0, None));
    }
    let links = chain
        .iter()
        .map(|&(p, q)| {
            ida.witness(a, p, q)?
                .ok_or_else(|| Error::InternalInvariant(format!("certified pair ({p}, {q}) has no cube path")))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((d, Some(DpaWitness { pairs: chain, links })))
}

/// Trims `a` and classifies its ambiguity, with a witness for infinite
/// ambiguity.
pub fn classify(a: &FiniteAutomaton) -> Result<AmbiguityReport> {
    if a.has_epsilon_cycle() {
        return Err(Error::EpsilonCycleInput);
    }
    let (t, kept) = a.trim_with_map();
    if t.num_states() == 0 {
        return Ok(AmbiguityReport { class: AmbiguityClass::Finite, witness: None });
    }
    let trans_map: Vec<usize> = t
        .transitions()
        .iter()
        .map(|tr| a.find_transition(kept[tr.src], tr.label, kept[tr.dst]).expect("trim keeps transitions"))
        .collect();
    let ids = IdMap { states: &kept, transitions: &trans_map };

    if let Some(w) = eda_in_square(&t, &square(&t)?)? {
        let w = ids.eda(a, w)?;
        w.validate(a).map_err(|e| Error::InternalInvariant(format!("EDA witness rejected: {e}")))?;
        return Ok(AmbiguityReport { class: AmbiguityClass::Exponential, witness: Some(Witness::Eda(w)) });
    }
    let ida = IdaAnalysis::build(&t)?;
    if !ida.is_infinitely_ambiguous() {
        return Ok(AmbiguityReport { class: AmbiguityClass::Finite, witness: None });
    }
    let (d, w) = dpa_from(&t, &ida)?;
    let w = w.ok_or_else(|| Error::InternalInvariant("IDA holds but the degree is 0".into()))?;
    Ok(AmbiguityReport {
        class: AmbiguityClass::Polynomial(d),
        witness: Some(Witness::Dpa(ids.dpa(a, w)?)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testkit::fixtures::*;
    use crate::testkit::growth_table;

    #[test]
    fn eda_fixtures() {
        assert!(test_eda(&ex_exp()).unwrap());
        assert!(!test_eda(&ex_poly2()).unwrap());
        assert!(!test_eda(&ex_fin2()).unwrap());
        let det = FiniteAutomaton::from_triples(2, &[0], &[1], &[(0, "a", 1), (1, "a", 0), (1, "b", 1)]).unwrap();
        assert!(!test_eda(&det).unwrap());
    }

    #[test]
    fn eda_witness_on_exp() {
        let a = ex_exp();
        let w = eda_witness(&a).unwrap().unwrap();
        w.validate(&a).unwrap();
        assert_eq!(w.state, 0);
        assert_eq!(w.label, vec!["a", "a"]);
        let mut cycles: Vec<Vec<StateId>> = w.cycles.iter().map(|c| c.states(&a)).collect();
        cycles.sort();
        assert_eq!(cycles, vec![vec![0, 0, 0], vec![0, 1, 0]]);
    }

    #[test]
    fn ida_fixtures() {
        assert!(test_ida(&ex_poly1()).unwrap());
        assert!(!test_ida(&ex_fin2()).unwrap());
        assert!(test_ida(&ex_eps()).unwrap());
        assert!(test_ida(&ex_exp()).unwrap());
    }

    #[test]
    fn pairs_of_fixtures() {
        assert_eq!(ida_pairs(&ex_poly1()).unwrap(), BTreeSet::from([(0, 1)]));
        // (0, 2) is certified through aa: 0 -> 0 -> 0, 0 -> 1 -> 2, 2 -> 2 -> 2
        assert_eq!(ida_pairs(&ex_poly2()).unwrap(), BTreeSet::from([(0, 1), (0, 2), (1, 2)]));
        assert!(ida_pairs(&ex_fin2()).unwrap().is_empty());
    }

    #[test]
    fn every_certified_pair_has_a_witness() {
        for a in [ex_poly1(), ex_poly2(), ex_eps(), ex_exp()] {
            let ida = IdaAnalysis::new(&a).unwrap();
            for &(p, q) in ida.pairs() {
                ida.witness(&a, p, q).unwrap().unwrap().validate(&a).unwrap();
            }
        }
        let a = ex_poly2();
        let w = IdaAnalysis::new(&a).unwrap().witness(&a, 0, 2).unwrap().unwrap();
        assert_eq!(w.label, vec!["a", "a"]);
    }

    #[test]
    fn ida_witness_on_poly1() {
        let a = ex_poly1();
        let ida = IdaAnalysis::new(&a).unwrap();
        let w = ida.witness(&a, 0, 1).unwrap().unwrap();
        w.validate(&a).unwrap();
        assert_eq!(w.label, vec!["a"]);
    }

    #[test]
    fn degrees() {
        let (d, w) = dpa_with_witness(&ex_poly2()).unwrap();
        assert_eq!(d, 2);
        let w = w.unwrap();
        assert_eq!(w.pairs, vec![(0, 1), (1, 2)]);
        w.validate(&ex_poly2()).unwrap();
        assert_eq!(dpa(&ex_fin2()).unwrap(), 0);
        assert_eq!(dpa(&ex_eps()).unwrap(), 1);
        assert_eq!(dpa(&ex_exp()).unwrap_err(), Error::ExponentiallyAmbiguousInput);
    }

    #[test]
    fn classify_fixtures() {
        assert_eq!(classify(&ex_fin2()).unwrap().class, AmbiguityClass::Finite);
        assert_eq!(classify(&ex_poly1()).unwrap().class, AmbiguityClass::Polynomial(1));
        assert_eq!(classify(&ex_poly2()).unwrap().class, AmbiguityClass::Polynomial(2));
        assert_eq!(classify(&ex_exp()).unwrap().class, AmbiguityClass::Exponential);
        assert_eq!(classify(&ex_eps()).unwrap().class, AmbiguityClass::Polynomial(1));
        assert_eq!(classify(&FiniteAutomaton::empty()).unwrap().class, AmbiguityClass::Finite);
    }

    #[test]
    fn preconditions() {
        assert_eq!(classify(&eps_cycle()).unwrap_err(), Error::EpsilonCycleInput);
        let untrim = FiniteAutomaton::from_triples(3, &[0], &[1], &[(0, "a", 1), (2, "a", 2)]).unwrap();
        assert_eq!(test_eda(&untrim).unwrap_err(), Error::NotTrim);
        assert_eq!(test_ida(&untrim).unwrap_err(), Error::NotTrim);
        assert_eq!(classify(&untrim).unwrap().class, AmbiguityClass::Finite);
    }

    #[test]
    fn witness_ids_refer_to_untrimmed_input() {
        // EX_EXP with an extra dead state 2 at the front
        let a = FiniteAutomaton::from_triples(
            3,
            &[1],
            &[1],
            &[(0, "a", 0), (1, "a", 1), (1, "a", 2), (2, "a", 1), (2, "a", 2)],
        )
        .unwrap();
        let r = classify(&a).unwrap();
        assert_eq!(r.class, AmbiguityClass::Exponential);
        r.witness.unwrap().validate(&a).unwrap();
    }

    #[test]
    fn epsilon_rotation_is_not_infinite_ambiguity() {
        // 1 -ε-> 2 -a-> 1 certifies (1, 2) with one run cut in three places
        let a = FiniteAutomaton::from_triples(
            3,
            &[0],
            &[1, 2],
            &[(0, "<eps>", 1), (0, "<eps>", 2), (0, "a", 1), (0, "b", 2), (1, "<eps>", 2), (2, "a", 1)],
        )
        .unwrap();
        let ida = IdaAnalysis::new(&a).unwrap();
        assert!(ida.pairs().contains(&(1, 2)));
        assert!(ida.witness(&a, 1, 2).unwrap().unwrap().validate(&a).is_ok());
        assert!(ida.spanning_pairs().is_empty());
        assert!(!test_ida(&a).unwrap());
        assert!(ida_pairs(&a).unwrap().is_empty());
        assert_eq!(classify(&a).unwrap().class, AmbiguityClass::Finite);
        let table = growth_table(&a, 10).unwrap();
        assert_eq!(table.max_over(1..=10), table.max_at(1));
    }

    #[test]
    fn epsilon_only_language_is_finite() {
        let a = FiniteAutomaton::from_triples(2, &[0], &[1], &[(0, "<eps>", 1)]).unwrap();
        assert_eq!(classify(&a).unwrap().class, AmbiguityClass::Finite);
    }
}
