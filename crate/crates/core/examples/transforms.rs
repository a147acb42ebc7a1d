//! Transforms that keep the number of paths for every string: splitting a
//! transition with an epsilon, removing an epsilon-transition, renaming and
//! reversing. The class is the same for all of them.

use ambig::testkit::{eliminate_all_epsilons, fixtures, growth_table, split_transition};
use ambig::{classify, FiniteAutomaton};

fn line(name: &str, a: &FiniteAutomaton) -> ambig::Result<()> {
    let t = growth_table(a, 8)?;
    let row: Vec<u128> = t.rows.iter().map(|r| r.max_paths).collect();
    println!(
        "{name:<22} {:>2} states {:>2} eps  {:<22} {row:?}",
        a.num_states(),
        a.num_epsilon_transitions(),
        classify(a)?.class.to_string()
    );
    Ok(())
}

fn main() -> ambig::Result<()> {
    let a = fixtures::ex_poly2();
    line("original", &a)?;
    let mut split = a.clone();
    for _ in 0..a.num_transitions() {
        // split the first transition that still reads a symbol directly from
        // an original state
        let e = split.transitions().iter().position(|t| !t.label.is_eps() && t.src < a.num_states()).unwrap();
        split = split_transition(&split, e)?;
    }
    line("every transition split", &split)?;
    line("epsilons removed", &eliminate_all_epsilons(&split)?)?;
    let perm: Vec<usize> = (0..a.num_states()).rev().collect();
    line("renamed", &a.renamed(&perm)?)?;
    line("reversed", &a.reversed())?;
    Ok(())
}
