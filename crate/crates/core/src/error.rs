use thiserror::Error;

use crate::automaton::StateId;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("duplicate transition ({src}, {label}, {dst})")]
    DuplicateTransition {
        src: StateId,
        label: String,
        dst: StateId,
    },
    #[error("state id {id} out of range for an automaton with {num_states} states")]
    DanglingStateId { id: StateId, num_states: usize },
    #[error("reserved label {0:?} cannot be used as an alphabet symbol")]
    ReservedLabelInAlphabet(String),
    #[error("label {0:?} is not in the alphabet")]
    SymbolNotInAlphabet(String),
    #[error("automaton has an epsilon-cycle")]
    EpsilonCycleInput,
    #[error("automaton is not trim")]
    NotTrim,
    #[error("automaton is exponentially ambiguous")]
    ExponentiallyAmbiguousInput,
    #[error("transition {0} is not an epsilon-transition")]
    NotEpsilon(usize),
    #[error("transition {0} is an epsilon-transition")]
    EpsilonInput(usize),
    #[error("transition index {0} out of range")]
    NoSuchTransition(usize),
    #[error("alphabet has {size} symbols, at most {max} supported")]
    AlphabetTooLarge { size: usize, max: usize },
    #[error("string length {len} exceeds the limit of {max}")]
    LengthTooLarge { len: usize, max: usize },
    #[error("weight {0} is not positive")]
    NonPositiveWeight(f64),
    #[error("weight {0} is outside the unit interval")]
    WeightOutOfRange(f64),
    #[error("total probability mass is {0}, expected 1")]
    MassNotOne(f64),
    #[error("no convergence after {iterations} iterations (last change {residual:e})")]
    NonConvergent { iterations: usize, residual: f64 },
    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },
    #[error("file mixes weighted and unweighted directives (line {line})")]
    MixedWeightedness { line: usize },
    #[error("invalid path: {0}")]
    InvalidPath(String),
    #[error("invalid witness: {0}")]
    InvalidWitness(String),
    #[error("internal invariant violated: {0}")]
    InternalInvariant(String),
}
