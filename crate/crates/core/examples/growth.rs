//! Brute-force growth tables next to the classification of random automata.
//!
//!     cargo run --example growth [SEED]

use ambig::classify;
use ambig::testkit::{growth_table, random_automaton, RandomSpec};

fn main() -> ambig::Result<()> {
    let base: u64 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(1);
    for seed in base..base + 8 {
        let a = random_automaton(RandomSpec { states: 4, symbols: 2, density: 0.2, eps_density: 0.15, seed });
        if a.num_states() == 0 {
            println!("seed {seed}: empty language");
            continue;
        }
        let class = classify(&a)?.class;
        let t = growth_table(&a, 12)?;
        let row: Vec<String> = t.rows.iter().map(|r| r.max_paths.to_string()).collect();
        println!("seed {seed}: {:<22} {}", class.to_string(), row.join(" "));
    }
    Ok(())
}
