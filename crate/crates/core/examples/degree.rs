//! Degree of polynomial ambiguity with its chain of IDA pairs, checked
//! against exact path counts.

use ambig::ambiguity::dpa_with_witness;
use ambig::testkit::{fixtures, growth_table};

fn main() -> ambig::Result<()> {
    let a = fixtures::ex_poly2();
    let (d, witness) = dpa_with_witness(&a)?;
    println!("dpa = {d}");
    if let Some(w) = &witness {
        w.validate(&a)?;
        for link in &w.links {
            let runs: Vec<_> = link.paths.iter().map(|p| p.states(&a)).collect();
            println!("  ({}, {}) on {:?}: {:?}", link.p, link.q, link.label, runs);
        }
    }

    // the number of paths of a^n grows like n^d
    let t = growth_table(&a, 12)?;
    for row in &t.rows {
        println!("  n = {:2}  max paths {}", row.len, row.max_paths);
    }
    Ok(())
}
