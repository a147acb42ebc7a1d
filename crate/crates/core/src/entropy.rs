//! Entropy of probabilistic automata: the path-entropy estimate `S`, the
//! expected string length `L`, brute-force string entropy, and the interval
//! that the ambiguity class gives for the true entropy `H`.

use std::f64::consts::LN_2;

use serde::Serialize;

use crate::ambiguity::{classify, AmbiguityClass};
use crate::automaton::{Label, SymbolId};
use crate::error::{Error, Result};
use crate::shortest_distance::{map_entropy, map_expectation, shortest_distance, DistanceOptions};
use crate::testkit::{epsilon_topological_order, growth_table, MAX_TABLE_ALPHABET, MAX_TABLE_LEN};
use crate::weighted::WeightedAutomaton;

/// A trim, epsilon-cycle free weighted automaton whose string probabilities
/// sum to one. Built by [`validate_probabilistic`].
#[derive(Debug, Clone, PartialEq)]
pub struct ProbabilisticAutomaton {
    inner: WeightedAutomaton<f64>,
    mass: f64,
}

impl ProbabilisticAutomaton {
    pub fn automaton(&self) -> &WeightedAutomaton<f64> {
        &self.inner
    }

    /// Total probability mass computed during validation.
    pub fn mass(&self) -> f64 {
        self.mass
    }
}

/// Trims `w` and checks that its total mass is within `mass_tol` of one.
pub fn validate_probabilistic(
    w: &WeightedAutomaton<f64>,
    mass_tol: f64,
    opts: &DistanceOptions,
) -> Result<ProbabilisticAutomaton> {
    let inner = w.trim();
    let mass = shortest_distance(&map_entropy(&inner)?, opts)?.total.first;
    if (mass - 1.0).abs() > mass_tol {
        return Err(Error::MassNotOne(mass));
    }
    Ok(ProbabilisticAutomaton { inner, mass })
}

/// `S(A)`, in nats: entropy of the path distribution, which equals the string
/// entropy when `A` is unambiguous.
pub fn entropy_semiring_estimate(p: &ProbabilisticAutomaton, opts: &DistanceOptions) -> Result<f64> {
    Ok(shortest_distance(&map_entropy(&p.inner)?, opts)?.total.second)
}

/// Expected length of the accepted strings.
pub fn expected_length(p: &ProbabilisticAutomaton, opts: &DistanceOptions) -> Result<f64> {
    Ok(shortest_distance(&map_expectation(&p.inner)?, opts)?.total.second)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BruteEntropy {
    /// `-Σ p ln p` over the enumerated strings.
    pub entropy: f64,
    /// `1 - Σ p` over the enumerated strings.
    pub residual_mass: f64,
}

/// Visits every string of length at most `max_len` with positive
/// probability, depth first in lexicographic order, passing its length and
/// probability.
pub fn for_each_string(p: &ProbabilisticAutomaton, max_len: usize, mut visit: impl FnMut(usize, f64)) -> Result<()> {
    let w = &p.inner;
    let a = w.skeleton();
    if a.alphabet().len() > MAX_TABLE_ALPHABET {
        return Err(Error::AlphabetTooLarge { size: a.alphabet().len(), max: MAX_TABLE_ALPHABET });
    }
    let order = epsilon_topological_order(a)?;
    let n = a.num_states();
    let close = |v: &mut [f64]| {
        for &q in &order {
            if v[q] == 0.0 {
                continue;
            }
            for i in a.out_label_range(q, Label::Eps) {
                v[a.transition(i).dst] += v[q] * w.weight(i);
            }
        }
    };
    let accepted = |v: &[f64]| (0..n).map(|q| v[q] * w.final_weight(q)).sum::<f64>();
    let mut start: Vec<f64> = (0..n).map(|q| *w.initial_weight(q)).collect();
    close(&mut start);
    let k = a.alphabet().len() as SymbolId;
    let mut vectors = vec![start];
    let mut next_sym: Vec<SymbolId> = vec![0];
    let p0 = accepted(&vectors[0]);
    if p0 > 0.0 {
        visit(0, p0);
    }
    while let Some(sym) = next_sym.last_mut() {
        let depth = vectors.len() - 1;
        if depth == max_len || *sym >= k {
            next_sym.pop();
            vectors.pop();
            continue;
        }
        let s = *sym;
        *sym += 1;
        let cur = &vectors[depth];
        let mut v = vec![0.0; n];
        for (q, &x) in cur.iter().enumerate() {
            if x == 0.0 {
                continue;
            }
            for i in a.out_label_range(q, Label::Sym(s)) {
                v[a.transition(i).dst] += x * w.weight(i);
            }
        }
        if v.iter().all(|&x| x == 0.0) {
            continue;
        }
        close(&mut v);
        let pr = accepted(&v);
        if pr > 0.0 {
            visit(depth + 1, pr);
        }
        vectors.push(v);
        next_sym.push(0);
    }
    Ok(())
}

/// String entropy by enumeration of all strings up to `max_len`; the
/// alphabet may hold at most four symbols.
pub fn brute_entropy(p: &ProbabilisticAutomaton, max_len: usize) -> Result<BruteEntropy> {
    let mut h = 0.0;
    let mut mass = 0.0;
    for_each_string(p, max_len, |_, pr| {
        h -= pr * pr.ln();
        mass += pr;
    })?;
    Ok(BruteEntropy { entropy: h, residual_mass: 1.0 - mass })
}

/// Probability mass of each string length up to `max_len`, by dynamic
/// programming over (state, length); no enumeration, any alphabet size.
pub fn length_distribution(p: &ProbabilisticAutomaton, max_len: usize) -> Result<Vec<f64>> {
    let w = &p.inner;
    let a = w.skeleton();
    let order = epsilon_topological_order(a)?;
    let n = a.num_states();
    let close = |v: &mut [f64]| {
        for &q in &order {
            if v[q] != 0.0 {
                for i in a.out_label_range(q, Label::Eps) {
                    v[a.transition(i).dst] += v[q] * w.weight(i);
                }
            }
        }
    };
    let mut v: Vec<f64> = (0..n).map(|q| *w.initial_weight(q)).collect();
    close(&mut v);
    let mut out = Vec::with_capacity(max_len + 1);
    for len in 0..=max_len {
        out.push((0..n).map(|q| v[q] * w.final_weight(q)).sum());
        if len == max_len {
            break;
        }
        let mut next = vec![0.0; n];
        for (i, t) in a.transitions().iter().enumerate() {
            if !t.label.is_eps() {
                next[t.dst] += v[t.src] * w.weight(i);
            }
        }
        close(&mut next);
        v = next;
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum LogBase {
    #[default]
    E,
    Two,
}

impl LogBase {
    fn scale(self, nats: f64) -> f64 {
        match self {
            LogBase::E => nats,
            LogBase::Two => nats / LN_2,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            LogBase::E => "e",
            LogBase::Two => "2",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EntropyOptions {
    pub distance: DistanceOptions,
    pub mass_tol: f64,
    /// Enumerate strings up to this length for `h_brute`.
    pub brute_max_len: Option<usize>,
    /// Longest string length examined when observing the path bound `k` of a
    /// finitely ambiguous skeleton.
    pub growth_horizon: usize,
    pub log_base: LogBase,
}

impl Default for EntropyOptions {
    fn default() -> Self {
        EntropyOptions {
            distance: DistanceOptions::default(),
            mass_tol: 1e-6,
            brute_max_len: None,
            growth_horizon: 8,
            log_base: LogBase::E,
        }
    }
}

/// Entropy figures and the interval `[bound_low, bound_high]` for `H`.
/// Entropies and bounds are in `log_base` units.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EntropyReport {
    pub s: f64,
    pub h_brute: Option<f64>,
    pub residual_mass: Option<f64>,
    pub l: f64,
    pub ambiguity: AmbiguityClass,
    pub dpa: Option<u32>,
    pub bound_low: Option<f64>,
    pub bound_high: Option<f64>,
    pub log_base: &'static str,
    /// Largest path count seen over strings up to the growth horizon; used as
    /// `k` for finitely ambiguous automata.
    #[serde(skip)]
    pub k_observed: Option<u128>,
    /// Polynomial case with `L <= 1`, where `d ln L` does not widen the
    /// interval; the bounds are collapsed to `S`.
    #[serde(skip)]
    pub short_length_regime: bool,
}

impl EntropyReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

pub fn entropy_report(p: &ProbabilisticAutomaton, opts: &EntropyOptions) -> Result<EntropyReport> {
    let skeleton = p.inner.skeleton();
    let class = classify(skeleton)?.class;
    let s = entropy_semiring_estimate(p, &opts.distance)?;
    let l = expected_length(p, &opts.distance)?;
    let brute = opts.brute_max_len.map(|n| brute_entropy(p, n)).transpose()?;
    let mut k_observed = None;
    let mut short_length_regime = false;
    let bounds = match class {
        AmbiguityClass::Finite => {
            if skeleton.alphabet().len() <= MAX_TABLE_ALPHABET {
                let k = growth_table(skeleton, opts.growth_horizon.min(MAX_TABLE_LEN))?
                    .rows
                    .iter()
                    .map(|r| r.max_paths)
                    .max()
                    .unwrap_or(0);
                k_observed = Some(k);
                (k > 0).then(|| (s - (k as f64).ln(), s))
            } else {
                None
            }
        }
        AmbiguityClass::Polynomial(d) => {
            if l > 1.0 {
                Some((s - d as f64 * l.ln(), s))
            } else {
                short_length_regime = true;
                Some((s, s))
            }
        }
        AmbiguityClass::Exponential => None,
    };
    let base = opts.log_base;
    Ok(EntropyReport {
        s: base.scale(s),
        h_brute: brute.map(|b| base.scale(b.entropy)),
        residual_mass: brute.map(|b| b.residual_mass),
        l,
        ambiguity: class,
        dpa: class.dpa(),
        bound_low: bounds.map(|b| base.scale(b.0)),
        bound_high: bounds.map(|b| base.scale(b.1)),
        log_base: base.name(),
        k_observed,
        short_length_regime,
    })
}

/// Validates `w` with the options' tolerances and builds the report.
pub fn report_for(w: &WeightedAutomaton<f64>, opts: &EntropyOptions) -> Result<EntropyReport> {
    let p = validate_probabilistic(w, opts.mass_tol, &opts.distance)?;
    entropy_report(&p, opts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testkit::fixtures::*;

    fn valid(w: &WeightedAutomaton<f64>) -> ProbabilisticAutomaton {
        validate_probabilistic(w, 1e-6, &DistanceOptions::default()).unwrap()
    }

    fn opts() -> DistanceOptions {
        DistanceOptions::default()
    }

    #[test]
    fn validation() {
        assert!((valid(&ex_geo()).mass() - 1.0).abs() < 1e-9);
        assert!((valid(&ex_unif()).mass() - 1.0).abs() < 1e-12);
        let heavy = WeightedAutomaton::from_tuples(2, &[(0, 1.0)], &[(1, 1.0)], &[(0, "a", 0.6, 1), (0, "b", 0.6, 1)])
            .unwrap();
        match validate_probabilistic(&heavy, 1e-6, &opts()) {
            Err(Error::MassNotOne(m)) => assert!((m - 1.2).abs() < 1e-12),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn fixture_entropies() {
        let g = valid(&ex_geo());
        assert!((entropy_semiring_estimate(&g, &opts()).unwrap() - 2.0 * LN_2).abs() < 1e-6);
        assert!((expected_length(&g, &opts()).unwrap() - 1.0).abs() < 1e-6);
        let u = valid(&ex_unif());
        assert!((entropy_semiring_estimate(&u, &opts()).unwrap() - LN_2).abs() < 1e-9);
        assert!((expected_length(&u, &opts()).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn degenerate_distributions() {
        let one = WeightedAutomaton::from_tuples(2, &[(0, 1.0)], &[(1, 1.0)], &[(0, "a", 1.0, 1)]).unwrap();
        let one = valid(&one);
        assert_eq!(entropy_semiring_estimate(&one, &opts()).unwrap(), 0.0);
        let empty = WeightedAutomaton::from_tuples(1, &[(0, 1.0)], &[(0, 1.0)], &[]).unwrap();
        let empty = valid(&empty);
        assert_eq!(expected_length(&empty, &opts()).unwrap(), 0.0);
        let b = brute_entropy(&empty, 3).unwrap();
        assert_eq!((b.entropy, b.residual_mass), (0.0, 0.0));
    }

    #[test]
    fn brute_force() {
        let b = brute_entropy(&valid(&ex_unif()), 1).unwrap();
        assert!((b.entropy - LN_2).abs() < 1e-12);
        assert!(b.residual_mass.abs() < 1e-15);
        let g = valid(&ex_geo());
        let b = brute_entropy(&g, 40).unwrap();
        assert!((b.entropy - 2.0 * LN_2).abs() < 1e-6);
        assert!(b.residual_mass < 1e-11);
        let big = WeightedAutomaton::from_tuples(
            2,
            &[(0, 1.0)],
            &[(1, 1.0)],
            &[(0, "a", 0.2, 1), (0, "b", 0.2, 1), (0, "c", 0.2, 1), (0, "d", 0.2, 1), (0, "e", 0.2, 1)],
        )
        .unwrap();
        assert!(matches!(brute_entropy(&valid(&big), 1), Err(Error::AlphabetTooLarge { .. })));
    }

    #[test]
    fn epsilon_steps_do_not_count_as_length() {
        let w = WeightedAutomaton::from_tuples(
            3,
            &[(0, 1.0)],
            &[(2, 1.0)],
            &[(0, "<eps>", 0.5, 1), (0, "a", 0.5, 1), (1, "a", 1.0, 2)],
        )
        .unwrap();
        let p = valid(&w);
        assert!((expected_length(&p, &opts()).unwrap() - 1.5).abs() < 1e-12);
        let dist = length_distribution(&p, 3).unwrap();
        assert_eq!(dist, vec![0.0, 0.5, 0.5, 0.0]);
        let mut by_enumeration = vec![0.0; 4];
        for_each_string(&p, 3, |len, pr| by_enumeration[len] += pr).unwrap();
        assert_eq!(dist, by_enumeration);
    }

    #[test]
    fn report_on_geometric() {
        let r = entropy_report(&valid(&ex_geo()), &EntropyOptions::default()).unwrap();
        assert_eq!(r.ambiguity, AmbiguityClass::Finite);
        assert_eq!(r.k_observed, Some(1));
        assert!((r.bound_low.unwrap() - r.s).abs() < 1e-12);
        assert!((r.s - 2.0 * LN_2).abs() < 1e-6);
        let json: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        let mut keys: Vec<&str> = json.as_object().unwrap().keys().map(String::as_str).collect();
        keys.sort_unstable();
        assert_eq!(
            keys,
            ["ambiguity", "bound_high", "bound_low", "dpa", "h_brute", "l", "log_base", "residual_mass", "s"]
        );
        assert_eq!(json["ambiguity"], "FINITE");
    }

    #[test]
    fn two_paths_per_string_saturates_finite_bound() {
        let p = valid(&prob_fin2());
        let r = entropy_report(&p, &EntropyOptions { brute_max_len: Some(4), ..Default::default() }).unwrap();
        assert_eq!(r.k_observed, Some(2));
        assert!(r.h_brute.unwrap().abs() < 1e-12);
        assert!((r.s - LN_2).abs() < 1e-9);
        assert!((r.bound_low.unwrap() - 0.0).abs() < 1e-9);
    }

    #[test]
    fn polynomial_bound_holds_on_fixtures() {
        for (w, d, l) in [(prob_poly1(), 1, 2.0), (prob_poly2(), 2, 3.5)] {
            let p = valid(&w);
            let r = entropy_report(&p, &EntropyOptions { brute_max_len: Some(60), ..Default::default() }).unwrap();
            assert_eq!(r.dpa, Some(d));
            assert!((r.l - l).abs() < 1e-8);
            let h = r.h_brute.unwrap();
            assert!(r.residual_mass.unwrap() < 1e-9);
            assert!(h - 1e-9 <= r.s);
            assert!(r.s <= h + d as f64 * l.ln() + 1e-6);
            assert!(r.bound_low.unwrap() <= h + 1e-6);
        }
    }

    #[test]
    fn jensen_on_enumerated_lengths() {
        for w in [prob_poly1(), prob_poly2()] {
            let dist = length_distribution(&valid(&w), 60).unwrap();
            assert_eq!(dist[0], 0.0);
            let mass: f64 = dist.iter().sum();
            let mean: f64 = dist.iter().enumerate().map(|(n, p)| n as f64 * p).sum::<f64>() / mass;
            let mean_log: f64 =
                dist.iter().enumerate().skip(1).map(|(n, p)| (n as f64).ln() * p).sum::<f64>() / mass;
            assert!(mean_log <= mean.ln() + 1e-12);
        }
    }

    #[test]
    fn base_two_scales_entropies() {
        let p = valid(&ex_unif());
        let r = entropy_report(&p, &EntropyOptions { log_base: LogBase::Two, ..Default::default() }).unwrap();
        assert!((r.s - 1.0).abs() < 1e-12);
        assert_eq!(r.log_base, "2");
        assert!((r.l - 1.0).abs() < 1e-12);
    }
}
