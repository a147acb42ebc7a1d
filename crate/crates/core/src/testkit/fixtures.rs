//! Small hand-built automata with known ambiguity and entropy.

use crate::automaton::FiniteAutomaton;
use crate::weighted::WeightedAutomaton;

fn fa(n: usize, init: &[usize], fin: &[usize], t: &[(usize, &str, usize)]) -> FiniteAutomaton {
    FiniteAutomaton::from_triples(n, init, fin, t).expect("fixture is valid")
}

fn wa(
    n: usize,
    init: &[(usize, f64)],
    fin: &[(usize, f64)],
    t: &[(usize, &str, f64, usize)],
) -> WeightedAutomaton<f64> {
    WeightedAutomaton::from_tuples(n, init, fin, t).expect("fixture is valid")
}

/// Accepts only `ab`, on two paths.
pub fn ex_fin2() -> FiniteAutomaton {
    fa(4, &[0], &[3], &[(0, "a", 1), (0, "a", 2), (1, "b", 3), (2, "b", 3)])
}

/// `a^n` on `n` paths.
pub fn ex_poly1() -> FiniteAutomaton {
    fa(2, &[0], &[1], &[(0, "a", 0), (0, "a", 1), (1, "a", 1)])
}

/// `a^n` on `C(n, 2)` paths.
pub fn ex_poly2() -> FiniteAutomaton {
    fa(3, &[0], &[2], &[(0, "a", 0), (0, "a", 1), (1, "a", 1), (1, "a", 2), (2, "a", 2)])
}

/// `a^n` on `2^(n-1)` paths.
pub fn ex_exp() -> FiniteAutomaton {
    fa(2, &[0], &[0], &[(0, "a", 0), (0, "a", 1), (1, "a", 0), (1, "a", 1)])
}

/// [`ex_poly1`] with `(0, a, 1)` split through a fresh state 2.
pub fn ex_eps() -> FiniteAutomaton {
    fa(3, &[0], &[1], &[(0, "a", 0), (0, "<eps>", 2), (2, "a", 1), (1, "a", 1)])
}

/// Epsilon-cycle between states 0 and 1.
pub fn eps_cycle() -> FiniteAutomaton {
    fa(2, &[0], &[1], &[(0, "<eps>", 1), (1, "<eps>", 0), (0, "a", 1)])
}

/// `a` and `b` with probability 1/2 each; entropy `ln 2`.
pub fn ex_unif() -> WeightedAutomaton<f64> {
    wa(2, &[(0, 1.0)], &[(1, 1.0)], &[(0, "a", 0.5, 1), (0, "b", 0.5, 1)])
}

/// `a^n` with probability `2^-(n+1)`; entropy `2 ln 2`, expected length 1.
pub fn ex_geo() -> WeightedAutomaton<f64> {
    wa(1, &[(0, 1.0)], &[(0, 0.5)], &[(0, "a", 0.5, 0)])
}

/// [`ex_fin2`] with both `a`-transitions at 1/2: `ab` has probability 1 on
/// two paths, so the path entropy exceeds the string entropy by `ln 2`.
pub fn prob_fin2() -> WeightedAutomaton<f64> {
    wa(
        4,
        &[(0, 1.0)],
        &[(3, 1.0)],
        &[(0, "a", 0.5, 1), (0, "a", 0.5, 2), (1, "b", 1.0, 3), (2, "b", 1.0, 3)],
    )
}

/// Locally stochastic weighting of [`ex_poly1`]; expected length 2.
pub fn prob_poly1() -> WeightedAutomaton<f64> {
    wa(
        2,
        &[(0, 1.0)],
        &[(1, 2.0 / 3.0)],
        &[(0, "a", 1.0 / 3.0, 0), (0, "a", 2.0 / 3.0, 1), (1, "a", 1.0 / 3.0, 1)],
    )
}

/// Locally stochastic weighting of [`ex_poly2`]; expected length 3.5.
pub fn prob_poly2() -> WeightedAutomaton<f64> {
    wa(
        3,
        &[(0, 1.0)],
        &[(2, 2.0 / 3.0)],
        &[
            (0, "a", 1.0 / 3.0, 0),
            (0, "a", 2.0 / 3.0, 1),
            (1, "a", 1.0 / 3.0, 1),
            (1, "a", 2.0 / 3.0, 2),
            (2, "a", 1.0 / 3.0, 2),
        ],
    )
}
