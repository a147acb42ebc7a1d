//! Line-oriented text format.
//!
//! ```text
//! # comment
//! initial <id> [<weight>]
//! final <id> [<weight>]
//! trans <src> <dst> <label> [<weight>]
//! ```
//!
//! `<eps>` labels an epsilon-transition. A file is either fully weighted or
//! fully unweighted. States are declared by mention; two optional comment
//! pragmas, `# states: N` and `# alphabet: a b ...`, declare isolated states
//! and unused symbols so that serialization round-trips exactly.

use std::fmt::Write as _;

use crate::automaton::{FiniteAutomaton, Label, RawAutomaton, RawTransition, StateId, EPS_TOKEN};
use crate::error::{Error, Result};
use crate::intersection::ProductAutomaton;
use crate::weighted::{RawWeights, WeightedAutomaton};

#[derive(Debug, Clone, PartialEq)]
pub enum ParsedAutomaton {
    Unweighted(FiniteAutomaton),
    Weighted(WeightedAutomaton<f64>),
}

impl ParsedAutomaton {
    pub fn skeleton(&self) -> &FiniteAutomaton {
        match self {
            ParsedAutomaton::Unweighted(a) => a,
            ParsedAutomaton::Weighted(w) => w.skeleton(),
        }
    }

    pub fn is_weighted(&self) -> bool {
        matches!(self, ParsedAutomaton::Weighted(_))
    }
}

fn parse_error(line: usize, reason: impl Into<String>) -> Error {
    Error::Parse { line, reason: reason.into() }
}

fn state_id(tok: &str, line: usize) -> Result<StateId> {
    tok.parse().map_err(|_| parse_error(line, format!("invalid state id `{tok}`")))
}

fn weight(tok: &str, line: usize) -> Result<f64> {
    match tok.parse::<f64>() {
        Ok(w) if w.is_finite() => Ok(w),
        _ => Err(parse_error(line, format!("invalid weight `{tok}`"))),
    }
}

pub fn parse(text: &str) -> Result<ParsedAutomaton> {
    let mut raw = RawAutomaton::default();
    let mut weights = RawWeights::default();
    let mut declared_states = 0;
    let mut weighted: Option<bool> = None;
    let mut max_id: Option<StateId> = None;
    for (i, line) in text.lines().enumerate() {
        let lineno = i + 1;
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(comment) = line.strip_prefix('#') {
            let mut toks = comment.split_whitespace();
            match toks.next() {
                Some("states:") => {
                    let n = toks.next().ok_or_else(|| parse_error(lineno, "missing state count"))?;
                    declared_states = n.parse().map_err(|_| parse_error(lineno, format!("invalid state count `{n}`")))?;
                }
                Some("alphabet:") => raw.alphabet.get_or_insert_with(Vec::new).extend(toks.map(str::to_string)),
                _ => {}
            }
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        let (arity, w) = match toks[0] {
            "initial" | "final" => (2, toks.get(2)),
            "trans" => (4, toks.get(4)),
            other => return Err(parse_error(lineno, format!("unknown directive `{other}`"))),
        };
        if toks.len() < arity {
            return Err(parse_error(lineno, format!("`{}` needs {} arguments", toks[0], arity - 1)));
        }
        if toks.len() > arity + 1 {
            return Err(parse_error(lineno, "trailing tokens"));
        }
        let has_weight = w.is_some();
        if *weighted.get_or_insert(has_weight) != has_weight {
            return Err(Error::MixedWeightedness { line: lineno });
        }
        let w = w.map(|t| weight(t, lineno)).transpose()?;
        let mut mention = |q: StateId| max_id = Some(max_id.map_or(q, |m| m.max(q)));
        match toks[0] {
            "initial" => {
                let q = state_id(toks[1], lineno)?;
                mention(q);
                raw.initial.push(q);
                weights.initial.extend(w);
            }
            "final" => {
                let q = state_id(toks[1], lineno)?;
                mention(q);
                raw.final_states.push(q);
                weights.finals.extend(w);
            }
            _ => {
                let src = state_id(toks[1], lineno)?;
                let dst = state_id(toks[2], lineno)?;
                mention(src);
                mention(dst);
                raw.transitions.push(RawTransition::new(src, toks[3], dst));
                weights.transitions.extend(w);
            }
        }
    }
    raw.num_states = declared_states.max(max_id.map_or(0, |m| m + 1));
    if weighted == Some(true) {
        Ok(ParsedAutomaton::Weighted(WeightedAutomaton::probabilistic(raw, weights)?))
    } else {
        Ok(ParsedAutomaton::Unweighted(FiniteAutomaton::validate(raw)?))
    }
}

/// Parses and drops weights, if any.
pub fn parse_unweighted(text: &str) -> Result<FiniteAutomaton> {
    Ok(match parse(text)? {
        ParsedAutomaton::Unweighted(a) => a,
        ParsedAutomaton::Weighted(w) => w.skeleton().clone(),
    })
}

fn header(out: &mut String, a: &FiniteAutomaton) {
    let _ = writeln!(out, "# states: {}", a.num_states());
    if !a.alphabet().is_empty() {
        let _ = writeln!(out, "# alphabet: {}", a.alphabet().join(" "));
    }
}

fn label_token(a: &FiniteAutomaton, l: Label) -> &str {
    match l {
        Label::Eps => EPS_TOKEN,
        Label::Sym(s) => &a.alphabet()[s as usize],
    }
}

/// Canonical text: initial lines, final lines, then transitions in index order.
pub fn serialize(a: &FiniteAutomaton) -> String {
    let mut out = String::new();
    header(&mut out, a);
    for q in a.initial_states() {
        let _ = writeln!(out, "initial {q}");
    }
    for q in a.final_states() {
        let _ = writeln!(out, "final {q}");
    }
    for t in a.transitions() {
        let _ = writeln!(out, "trans {} {} {}", t.src, t.dst, label_token(a, t.label));
    }
    out
}

pub fn serialize_weighted(w: &WeightedAutomaton<f64>) -> String {
    let a = w.skeleton();
    let mut out = String::new();
    header(&mut out, a);
    for q in a.initial_states() {
        let _ = writeln!(out, "initial {q} {}", w.initial_weight(q));
    }
    for q in a.final_states() {
        let _ = writeln!(out, "final {q} {}", w.final_weight(q));
    }
    for (i, t) in a.transitions().iter().enumerate() {
        let _ = writeln!(out, "trans {} {} {} {}", t.src, t.dst, label_token(a, t.label), w.weight(i));
    }
    out
}

/// Serializes the underlying automaton behind a comment block mapping each
/// product state to its component states and filter states.
pub fn serialize_product(p: &ProductAutomaton) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# product of {} automata", p.arity());
    for q in 0..p.num_states() {
        let comps: Vec<String> = p.components(q).iter().map(ToString::to_string).collect();
        let filters: Vec<String> = p.filters(q).iter().map(ToString::to_string).collect();
        let _ = writeln!(out, "# state {q} = ({}) filter {}", comps.join(", "), filters.join(" "));
    }
    out.push_str(&serialize(p.underlying()));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::intersection::intersect;
    use crate::testkit::fixtures::*;
    use crate::testkit::{random_automaton, RandomSpec};
    use proptest::prelude::*;

    #[test]
    fn minimal_file() {
        let a = parse_unweighted("initial 0\nfinal 1\ntrans 0 1 a\n").unwrap();
        assert_eq!(a.num_states(), 2);
        assert_eq!(a.num_transitions(), 1);
        assert!(!parse("initial 0\n").unwrap().is_weighted());
    }

    #[test]
    fn weighted_file() {
        let p = parse("initial 0 1.0\nfinal 0 0.5\ntrans 0 0 a 0.5\n").unwrap();
        let ParsedAutomaton::Weighted(w) = p else { panic!("expected weights") };
        assert_eq!(w, ex_geo());
    }

    #[test]
    fn errors_carry_line_numbers() {
        assert!(matches!(parse("trans 0 1"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse("# c\ninitial x"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse("start 0"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse("initial 0 1.0\nfinal 1"), Err(Error::MixedWeightedness { line: 2 })));
        assert!(matches!(parse("trans 0 1 a 0.5 9"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse("trans 0 1 a\ntrans 0 1 a"), Err(Error::DuplicateTransition { .. })));
    }

    #[test]
    fn fixtures_round_trip() {
        for a in [ex_fin2(), ex_poly1(), ex_poly2(), ex_exp(), ex_eps(), eps_cycle(), FiniteAutomaton::empty()] {
            assert_eq!(parse_unweighted(&serialize(&a)).unwrap(), a);
        }
        for w in [ex_geo(), ex_unif(), prob_fin2(), prob_poly1(), prob_poly2()] {
            assert_eq!(parse(&serialize_weighted(&w)).unwrap(), ParsedAutomaton::Weighted(w));
        }
    }

    #[test]
    fn serialization_is_canonical() {
        let text = serialize(&ex_fin2());
        let lines: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).collect();
        assert_eq!(
            lines,
            ["initial 0", "final 3", "trans 0 1 a", "trans 0 2 a", "trans 1 3 b", "trans 2 3 b"]
        );
    }

    #[test]
    fn product_header() {
        let p = intersect(&ex_poly1(), &ex_poly1()).unwrap();
        let text = serialize_product(&p);
        assert!(text.starts_with("# product of 2 automata\n# state 0 = (0, 0) filter F0\n"));
        assert_eq!(parse_unweighted(&text).unwrap(), *p.underlying());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(500))]

        #[test]
        fn random_round_trip(seed in any::<u64>(), states in 1usize..8, symbols in 1usize..4) {
            let a = random_automaton(RandomSpec { states, symbols, density: 0.3, eps_density: 0.2, seed });
            prop_assert_eq!(parse_unweighted(&serialize(&a)).unwrap(), a);
        }
    }
}
