//! Command-line front end. [`run`] takes the argument list and output streams
//! and returns the process exit code:
//!
//! | code | meaning |
//! |------|---------|
//! | 0 | success |
//! | 2 | usage or parse error |
//! | 3 | epsilon-cycle in the input |
//! | 4 | probabilistic validation or convergence failure |
//! | 5 | internal invariant violation |

use std::io::Write;
use std::path::{Path as FsPath, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::ambiguity::{classify, AmbiguityClass, Witness};
use crate::automaton::{FiniteAutomaton, Path};
use crate::entropy::{
    brute_entropy, entropy_report, entropy_semiring_estimate, expected_length, validate_probabilistic, EntropyOptions,
    LogBase,
};
use crate::error::Error;
use crate::intersection::{cube, intersect, square};
use crate::io::{parse, serialize, serialize_product, serialize_weighted, ParsedAutomaton};
use crate::shortest_distance::DistanceOptions;
use crate::testkit::{count_paths, growth_table, random_automaton, split_word, RandomSpec};

#[derive(Debug, Parser)]
#[command(name = "ambig", version, about = "Ambiguity and entropy of finite automata")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print FINITE, POLYNOMIAL degree=<d> or EXPONENTIAL.
    Classify {
        file: PathBuf,
        #[arg(long)]
        json: bool,
        /// Include a certificate for infinite ambiguity.
        #[arg(long)]
        witness: bool,
    },
    /// Degree of polynomial ambiguity (`inf` when exponential).
    Dpa { file: PathBuf },
    /// Epsilon-filtered intersection.
    Intersect {
        a: PathBuf,
        b: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Self-intersection of order 2 or 3.
    Power {
        file: PathBuf,
        #[arg(short, value_parser = clap::value_parser!(u8).range(2..=3))]
        n: u8,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Remove states not on any successful path.
    Trim {
        file: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Size and structure summary.
    Info { file: PathBuf },
    /// Entropy of a probabilistic automaton.
    Entropy {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Method::Semiring)]
        method: Method,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        /// String length bound for brute-force enumeration.
        #[arg(long)]
        max_len: Option<usize>,
        #[arg(long, value_enum, default_value_t = Base::E)]
        base: Base,
        /// Full report as one JSON object.
        #[arg(long)]
        report: bool,
    },
    /// Expected length of accepted strings.
    ExpectedLength {
        file: PathBuf,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
    },
    /// Brute-force path counting.
    Oracle {
        #[command(subcommand)]
        command: OracleCommand,
    },
    /// Seeded random trim automaton.
    Gen {
        #[arg(long)]
        states: usize,
        #[arg(long)]
        symbols: usize,
        #[arg(long)]
        density: f64,
        #[arg(long, default_value_t = 0.0)]
        eps_density: f64,
        #[arg(long)]
        seed: u64,
        #[arg(short, long)]
        output: PathBuf,
    },
}

#[derive(Debug, Subcommand)]
enum OracleCommand {
    /// Number of successful paths labeled STRING (characters, or
    /// whitespace-separated symbols).
    Da { file: PathBuf, string: String },
    /// Largest path count per string length.
    Table {
        file: PathBuf,
        #[arg(long)]
        max_len: usize,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Method {
    Semiring,
    Brute,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Base {
    E,
    #[value(name = "2")]
    Two,
}

/// Exit code for a library error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::EpsilonCycleInput => 3,
        Error::MassNotOne(_) | Error::NonConvergent { .. } | Error::NonPositiveWeight(_) | Error::WeightOutOfRange(_) => 4,
        Error::InternalInvariant(_) | Error::InvalidWitness(_) => 5,
        _ => 2,
    }
}

enum Failure {
    Lib(Error),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e.to_string())
    }
}

type CmdResult = std::result::Result<(), Failure>;

fn read(path: &FsPath) -> std::result::Result<ParsedAutomaton, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
    Ok(parse(&text)?)
}

fn read_unweighted(path: &FsPath) -> std::result::Result<FiniteAutomaton, Failure> {
    Ok(match read(path)? {
        ParsedAutomaton::Unweighted(a) => a,
        ParsedAutomaton::Weighted(w) => w.skeleton().clone(),
    })
}

fn write_file(path: &FsPath, text: &str) -> CmdResult {
    std::fs::write(path, text).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn path_text(a: &FiniteAutomaton, p: &Path) -> String {
    let states: Vec<String> = p.states(a).iter().map(ToString::to_string).collect();
    states.join(" -> ")
}

fn describe_witness(a: &FiniteAutomaton, w: &Witness, out: &mut dyn Write) -> std::io::Result<()> {
    match w {
        Witness::Eda(w) => {
            writeln!(out, "two cycles at state {} labeled {}", w.state, w.label.join(" "))?;
            for c in &w.cycles {
                writeln!(out, "  {}", path_text(a, c))?;
            }
        }
        Witness::Ida(w) => {
            writeln!(out, "pair ({}, {}) labeled {}", w.p, w.q, w.label.join(" "))?;
            for p in &w.paths {
                writeln!(out, "  {}", path_text(a, p))?;
            }
        }
        Witness::Dpa(w) => {
            for link in &w.links {
                describe_witness(a, &Witness::Ida(link.clone()), out)?;
            }
        }
    }
    Ok(())
}

fn probabilistic(path: &FsPath) -> std::result::Result<crate::weighted::WeightedAutomaton<f64>, Failure> {
    match read(path)? {
        ParsedAutomaton::Weighted(w) => Ok(w),
        ParsedAutomaton::Unweighted(_) => {
            Err(Failure::Lib(Error::Parse { line: 0, reason: "expected a weighted automaton".into() }))
        }
    }
}

fn execute(cmd: Command, out: &mut dyn Write) -> CmdResult {
    match cmd {
        Command::Classify { file, json, witness } => {
            let a = read_unweighted(&file)?;
            let r = classify(&a)?;
            if json {
                let mut obj = serde_json::Map::new();
                obj.insert("class".into(), json!(r.class.name()));
                if let Some(d) = r.class.dpa() {
                    obj.insert("dpa".into(), json!(d));
                }
                if let (true, Some(w)) = (witness, &r.witness) {
                    obj.insert("witness".into(), serde_json::to_value(w).expect("witness serializes"));
                }
                writeln!(out, "{}", serde_json::Value::Object(obj))?;
            } else {
                writeln!(out, "{}", r.class)?;
                if let (true, Some(w)) = (witness, &r.witness) {
                    describe_witness(&a, w, out)?;
                }
            }
        }
        Command::Dpa { file } => {
            let a = read_unweighted(&file)?;
            match classify(&a)?.class {
                AmbiguityClass::Exponential => writeln!(out, "inf")?,
                c => writeln!(out, "{}", c.dpa().unwrap_or(0))?,
            }
        }
        Command::Intersect { a, b, output } => {
            let p = intersect(&read_unweighted(&a)?, &read_unweighted(&b)?)?;
            write_file(&output, &serialize_product(&p))?;
            writeln!(out, "states {} transitions {}", p.num_states(), p.underlying().num_transitions())?;
        }
        Command::Power { file, n, output } => {
            let a = read_unweighted(&file)?;
            let p = if n == 2 { square(&a)? } else { cube(&a)? };
            write_file(&output, &serialize_product(&p))?;
            writeln!(out, "states {} transitions {}", p.num_states(), p.underlying().num_transitions())?;
        }
        Command::Trim { file, output } => match read(&file)? {
            ParsedAutomaton::Unweighted(a) => write_file(&output, &serialize(&a.trim()))?,
            ParsedAutomaton::Weighted(w) => write_file(&output, &serialize_weighted(&w.trim()))?,
        },
        Command::Info { file } => {
            let p = read(&file)?;
            let a = p.skeleton();
            writeln!(out, "states {}", a.num_states())?;
            writeln!(out, "transitions {}", a.num_transitions())?;
            writeln!(out, "epsilon_transitions {}", a.num_epsilon_transitions())?;
            writeln!(out, "alphabet {}", a.alphabet().join(" "))?;
            writeln!(out, "initial {}", a.initial_states().count())?;
            writeln!(out, "final {}", a.final_states().count())?;
            writeln!(out, "trim {}", a.is_trim())?;
            writeln!(out, "epsilon_cycle {}", a.has_epsilon_cycle())?;
            writeln!(out, "weighted {}", p.is_weighted())?;
        }
        Command::Entropy { file, method, tol, max_len, base, report } => {
            let w = probabilistic(&file)?;
            let log_base = match base {
                Base::E => LogBase::E,
                Base::Two => LogBase::Two,
            };
            let distance = DistanceOptions { tol, ..Default::default() };
            let brute_len = match method {
                Method::Brute => Some(max_len.unwrap_or(20)),
                Method::Semiring => max_len,
            };
            let opts = EntropyOptions { distance, brute_max_len: brute_len, log_base, ..Default::default() };
            let p = validate_probabilistic(&w, opts.mass_tol, &distance)?;
            let scale = |x: f64| if matches!(base, Base::Two) { x / std::f64::consts::LN_2 } else { x };
            if report {
                writeln!(out, "{}", entropy_report(&p, &opts)?.to_json())?;
            } else {
                match method {
                    Method::Semiring => writeln!(out, "{:.6}", scale(entropy_semiring_estimate(&p, &distance)?))?,
                    Method::Brute => {
                        let b = brute_entropy(&p, brute_len.unwrap_or(20))?;
                        writeln!(out, "{:.6} residual {:.6e}", scale(b.entropy), b.residual_mass)?;
                    }
                }
            }
        }
        Command::ExpectedLength { file, tol } => {
            let w = probabilistic(&file)?;
            let distance = DistanceOptions { tol, ..Default::default() };
            let p = validate_probabilistic(&w, EntropyOptions::default().mass_tol, &distance)?;
            writeln!(out, "{:.6}", expected_length(&p, &distance)?)?;
        }
        Command::Oracle { command: OracleCommand::Da { file, string } } => {
            let a = read_unweighted(&file)?;
            let word = split_word(&string);
            let word: Vec<&str> = word.iter().map(String::as_str).collect();
            writeln!(out, "{}", count_paths(&a, &word)?)?;
        }
        Command::Oracle { command: OracleCommand::Table { file, max_len, json } } => {
            let a = read_unweighted(&file)?;
            let t = growth_table(&a, max_len)?;
            if json {
                let rows: Vec<_> = t
                    .rows
                    .iter()
                    .map(|r| json!({"len": r.len, "max_paths": r.max_paths.to_string(), "argmax": r.argmax}))
                    .collect();
                writeln!(out, "{}", json!({ "rows": rows }))?;
            } else {
                writeln!(out, "{:>4}  {:>12}  argmax", "len", "max_paths")?;
                for r in &t.rows {
                    let arg = r.argmax.as_ref().map_or("-".to_string(), |w| w.join(" "));
                    writeln!(out, "{:>4}  {:>12}  {}", r.len, r.max_paths, if arg.is_empty() { "<eps>" } else { &arg })?;
                }
            }
        }
        Command::Gen { states, symbols, density, eps_density, seed, output } => {
            if !(0.0..=1.0).contains(&density) || !(0.0..1.0).contains(&eps_density) || states == 0 {
                return Err(Failure::Lib(Error::Parse {
                    line: 0,
                    reason: "need states > 0, density in [0, 1], eps-density in [0, 1)".into(),
                }));
            }
            let a = random_automaton(RandomSpec { states, symbols, density, eps_density, seed });
            write_file(&output, &serialize(&a))?;
            writeln!(out, "states {} transitions {}", a.num_states(), a.num_transitions())?;
        }
    }
    Ok(())
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(()) => 0,
        Err(Failure::Lib(e)) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
        Err(Failure::Io(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
    }
}
