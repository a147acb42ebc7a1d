//! Reads and writes the line-based text format, weighted and unweighted,
//! and writes the square of an automaton with its state tuples.

use ambig::io::{parse, serialize, serialize_product, serialize_weighted, ParsedAutomaton};
use ambig::square;

const TEXT: &str = "\
# a geometric distribution over a*
initial 0 1
final 0 0.5
trans 0 0 a 0.5
";

fn main() -> ambig::Result<()> {
    let ParsedAutomaton::Weighted(w) = parse(TEXT)? else { unreachable!("file has weights") };
    print!("{}", serialize_weighted(&w));

    let a = w.skeleton().clone();
    let back = parse(&serialize(&a))?;
    assert_eq!(back.skeleton(), &a);

    print!("{}", serialize_product(&square(&a)?));

    match parse("initial 0\ntrans 0 1 a 0.5\ntrans 1 2 b\n") {
        Err(e) => println!("rejected: {e}"),
        Ok(_) => unreachable!("mixed weightedness"),
    }
    Ok(())
}
