//! Ambiguity of finite automata with epsilon-transitions, and entropy of
//! probabilistic automata.
//!
//! * [`intersection`]: epsilon-filtered products, where every pair of
//!   successful paths maps to exactly one product path.
//! * [`ambiguity`]: exponential and infinite ambiguity tests on the square
//!   and cube of an automaton, the degree of polynomial ambiguity, and
//!   checkable witnesses.
//! * [`shortest_distance`] and [`entropy`]: generalized shortest distance over
//!   the entropy semiring, expected length, and entropy bounds by ambiguity
//!   class.
//! * [`testkit`]: brute-force path counting, growth tables, path-preserving
//!   transforms, fixtures and random automata.
//! * [`io`] and [`cli`]: text format and command-line front end.
//!
//! ```
//! use ambig::{classify, AmbiguityClass, FiniteAutomaton};
//!
//! let a = FiniteAutomaton::from_triples(2, &[0], &[1], &[(0, "a", 0), (0, "a", 1), (1, "a", 1)])?;
//! assert_eq!(classify(&a)?.class, AmbiguityClass::Polynomial(1));
//! # Ok::<(), ambig::Error>(())
//! ```

pub mod ambiguity;
pub mod automaton;
pub mod cli;
pub mod entropy;
pub mod error;
pub mod intersection;
pub mod io;
pub mod scc;
pub mod semiring;
pub mod shortest_distance;
pub mod testkit;
pub mod weighted;

pub use ambiguity::{classify, dpa, ida_pairs, test_eda, test_ida, AmbiguityClass, AmbiguityReport, Witness};
pub use automaton::{FiniteAutomaton, Label, Path, RawAutomaton, RawTransition, StateId, SymbolId, Transition};
pub use entropy::{
    brute_entropy, entropy_report, entropy_semiring_estimate, expected_length, validate_probabilistic, EntropyOptions,
    EntropyReport, LogBase, ProbabilisticAutomaton,
};
pub use error::{Error, Result};
pub use intersection::{cube, extend, intersect, square, ProductAutomaton};
pub use semiring::{PairWeight, Semiring};
pub use shortest_distance::{map_entropy, map_expectation, shortest_distance, DistanceOptions, Strategy};
pub use weighted::WeightedAutomaton;
