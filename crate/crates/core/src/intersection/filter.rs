//! The three-state epsilon filter.
//!
//! With the left automaton's epsilons renamed `ε2` plus an `ε1` self-loop on
//! every state, and the right automaton's epsilons renamed `ε1` plus an `ε2`
//! self-loop, the filter admits exactly one interleaving of any pair of
//! epsilon-paths. The forbidden move pairs are `E1E1 E2E2`, `E2E2 E1E1`,
//! `E1E1 E2E1` and `E2E2 E2E1`.

use std::fmt;

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EpsMove {
    /// Both sides read the same symbol.
    MatchSymbol,
    /// Left stays on its `ε1` self-loop, right follows one of its epsilons.
    E1E1,
    /// Left follows one of its epsilons, right stays on its `ε2` self-loop.
    E2E2,
    /// Both sides follow an epsilon at once.
    E2E1,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum FilterState {
    F0,
    F1,
    F2,
}

impl FilterState {
    pub fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for FilterState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// Filter transition, `None` when the move is blocked.
pub fn filter_step(state: FilterState, mv: EpsMove) -> Option<FilterState> {
    use EpsMove::*;
    use FilterState::*;
    match (state, mv) {
        (_, MatchSymbol) => Some(F0),
        (F0, E2E1) => Some(F0),
        (F0 | F1, E1E1) => Some(F1),
        (F0 | F2, E2E2) => Some(F2),
        _ => None,
    }
}
