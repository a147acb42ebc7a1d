//! Intersects two automata with epsilon-transitions and checks, string by
//! string, that the product has exactly one path per pair of paths.

use ambig::testkit::count_paths;
use ambig::{intersect, FiniteAutomaton};

fn main() -> ambig::Result<()> {
    // a* with an epsilon before every a
    let a1 = FiniteAutomaton::from_triples(2, &[0], &[0], &[(0, "<eps>", 1), (1, "a", 0)])?;
    // (a | ab)* with two ways to read each a
    let a2 = FiniteAutomaton::from_triples(
        3,
        &[0],
        &[0],
        &[(0, "a", 0), (0, "<eps>", 1), (1, "a", 0), (1, "a", 2), (2, "b", 0)],
    )?;
    let p = intersect(&a1, &a2)?;
    println!("product: {} states, {} transitions", p.num_states(), p.underlying().num_transitions());

    for n in 0..=6 {
        let x = vec!["a"; n];
        let (c1, c2) = (count_paths(&a1, &x)?, count_paths(&a2, &x)?);
        let c = count_paths(p.underlying(), &x)?;
        println!("a^{n}: {c1} x {c2} = {c}");
        assert_eq!(c, c1 * c2);
    }
    Ok(())
}
