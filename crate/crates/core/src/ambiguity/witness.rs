//! Certificates for the ambiguity verdicts, checkable by direct path
//! inspection in the analyzed automaton.

use std::collections::VecDeque;

use serde::Serialize;

use crate::automaton::{FiniteAutomaton, Path, StateId};
use crate::error::{Error, Result};

/// Two distinct cycles at `state` sharing the label `label`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EdaWitness {
    pub state: StateId,
    pub label: Vec<String>,
    pub cycles: [Path; 2],
}

/// Paths `p -> p`, `p -> q` and `q -> q`, all labeled `label`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdaWitness {
    pub p: StateId,
    pub q: StateId,
    pub label: Vec<String>,
    pub paths: [Path; 3],
}

/// A chain of IDA configurations `(p_i, q_i)` with `q_{i-1}` connected to `p_i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DpaWitness {
    pub pairs: Vec<(StateId, StateId)>,
    pub links: Vec<IdaWitness>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Witness {
    Eda(EdaWitness),
    Ida(IdaWitness),
    Dpa(DpaWitness),
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidWitness(msg.into())
}

fn check_path(a: &FiniteAutomaton, path: &Path, from: StateId, to: StateId, label: &[String]) -> Result<()> {
    let path = Path::new(a, path.transitions().to_vec())?;
    if path.is_empty() {
        return Err(invalid("empty path"));
    }
    if path.origin(a) != Some(from) || path.destination(a) != Some(to) {
        return Err(invalid(format!("path does not run from {from} to {to}")));
    }
    if path.label_names(a) != label {
        return Err(invalid("path label differs from the witness label"));
    }
    Ok(())
}

impl EdaWitness {
    pub fn validate(&self, a: &FiniteAutomaton) -> Result<()> {
        for c in &self.cycles {
            check_path(a, c, self.state, self.state, &self.label)?;
        }
        if self.cycles[0] == self.cycles[1] {
            return Err(invalid("cycles are identical"));
        }
        Ok(())
    }
}

impl IdaWitness {
    pub fn validate(&self, a: &FiniteAutomaton) -> Result<()> {
        if self.p == self.q {
            return Err(invalid("p equals q"));
        }
        if self.label.is_empty() {
            return Err(invalid("empty label"));
        }
        check_path(a, &self.paths[0], self.p, self.p, &self.label)?;
        check_path(a, &self.paths[1], self.p, self.q, &self.label)?;
        check_path(a, &self.paths[2], self.q, self.q, &self.label)?;
        Ok(())
    }
}

fn reaches(a: &FiniteAutomaton, from: StateId, to: StateId) -> bool {
    let mut seen = vec![false; a.num_states()];
    let mut queue = VecDeque::from([from]);
    seen[from] = true;
    while let Some(q) = queue.pop_front() {
        if q == to {
            return true;
        }
        for t in a.out(q) {
            if !seen[t.dst] {
                seen[t.dst] = true;
                queue.push_back(t.dst);
            }
        }
    }
    false
}

impl DpaWitness {
    pub fn validate(&self, a: &FiniteAutomaton) -> Result<()> {
        if self.pairs.is_empty() || self.pairs.len() != self.links.len() {
            return Err(invalid("pair and link counts differ"));
        }
        for (pair, link) in self.pairs.iter().zip(&self.links) {
            if *pair != (link.p, link.q) {
                return Err(invalid("link does not match its pair"));
            }
            link.validate(a)?;
        }
        for w in self.pairs.windows(2) {
            if !reaches(a, w[0].1, w[1].0) {
                return Err(invalid(format!("{} does not reach {}", w[0].1, w[1].0)));
            }
        }
        Ok(())
    }
}

impl Witness {
    pub fn validate(&self, a: &FiniteAutomaton) -> Result<()> {
        match self {
            Witness::Eda(w) => w.validate(a),
            Witness::Ida(w) => w.validate(a),
            Witness::Dpa(w) => w.validate(a),
        }
    }
}

/// Translates witness ids from a trimmed automaton back to the original.
pub(crate) struct IdMap<'a> {
    pub states: &'a [StateId],
    pub transitions: &'a [usize],
}

impl IdMap<'_> {
    fn path(&self, a: &FiniteAutomaton, p: &Path) -> Result<Path> {
        Path::new(a, p.transitions().iter().map(|&t| self.transitions[t]).collect())
    }

    pub(crate) fn eda(&self, a: &FiniteAutomaton, w: EdaWitness) -> Result<EdaWitness> {
        Ok(EdaWitness {
            state: self.states[w.state],
            label: w.label,
            cycles: [self.path(a, &w.cycles[0])?, self.path(a, &w.cycles[1])?],
        })
    }

    pub(crate) fn ida(&self, a: &FiniteAutomaton, w: IdaWitness) -> Result<IdaWitness> {
        Ok(IdaWitness {
            p: self.states[w.p],
            q: self.states[w.q],
            label: w.label,
            paths: [self.path(a, &w.paths[0])?, self.path(a, &w.paths[1])?, self.path(a, &w.paths[2])?],
        })
    }

    pub(crate) fn dpa(&self, a: &FiniteAutomaton, w: DpaWitness) -> Result<DpaWitness> {
        Ok(DpaWitness {
            pairs: w.pairs.iter().map(|&(p, q)| (self.states[p], self.states[q])).collect(),
            links: w.links.into_iter().map(|l| self.ida(a, l)).collect::<Result<_>>()?,
        })
    }
}
