//! Classifies the built-in fixtures, or the automaton files given as
//! arguments, and prints the witness for each verdict.
//!
//!     cargo run --example classify [FILE...]

use ambig::testkit::fixtures;
use ambig::{classify, FiniteAutomaton, Witness};

fn show(name: &str, a: &FiniteAutomaton) -> ambig::Result<()> {
    let report = classify(a)?;
    println!("{name}: {}", report.class);
    match &report.witness {
        Some(Witness::Eda(w)) => {
            println!("  two cycles at state {} reading {:?}", w.state, w.label);
            for c in &w.cycles {
                println!("    {:?}", c.states(a));
            }
        }
        Some(Witness::Dpa(w)) => {
            for link in &w.links {
                println!("  pair ({}, {}) reading {:?}", link.p, link.q, link.label);
            }
        }
        Some(Witness::Ida(w)) => println!("  pair ({}, {}) reading {:?}", w.p, w.q, w.label),
        None => {}
    }
    if let Some(w) = &report.witness {
        w.validate(a)?;
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let files: Vec<String> = std::env::args().skip(1).collect();
    if files.is_empty() {
        for (name, a) in [
            ("EX_FIN2", fixtures::ex_fin2()),
            ("EX_POLY1", fixtures::ex_poly1()),
            ("EX_POLY2", fixtures::ex_poly2()),
            ("EX_EXP", fixtures::ex_exp()),
            ("EX_EPS", fixtures::ex_eps()),
        ] {
            show(name, &a)?;
        }
    }
    for f in files {
        let a = ambig::io::parse(&std::fs::read_to_string(&f)?)?.skeleton().clone();
        show(&f, &a)?;
    }
    Ok(())
}
