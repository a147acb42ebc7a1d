//! Entropy of probabilistic automata: the semiring estimate, the brute-force
//! entropy of the string distribution, and the bounds that relate them.

use ambig::testkit::fixtures;
use ambig::{entropy_report, validate_probabilistic, DistanceOptions, EntropyOptions};

fn main() -> ambig::Result<()> {
    let opts = EntropyOptions { brute_max_len: Some(18), ..Default::default() };
    for (name, w) in [
        ("uniform", fixtures::ex_unif()),
        ("geometric", fixtures::ex_geo()),
        ("finite, two paths for ab", fixtures::prob_fin2()),
        ("polynomial degree 1", fixtures::prob_poly1()),
        ("polynomial degree 2", fixtures::prob_poly2()),
    ] {
        let p = validate_probabilistic(&w, opts.mass_tol, &DistanceOptions::default())?;
        let r = entropy_report(&p, &opts)?;
        println!("{name}");
        println!("  S = {:.6}  H = {:.6}  L = {:.6}  {}", r.s, r.h_brute.unwrap_or(f64::NAN), r.l, r.ambiguity);
        match (r.bound_low, r.bound_high) {
            (Some(lo), Some(hi)) => println!("  H lies in [{lo:.6}, {hi:.6}]"),
            _ => println!("  no bound"),
        }
        println!("  {}", r.to_json());
    }
    Ok(())
}
