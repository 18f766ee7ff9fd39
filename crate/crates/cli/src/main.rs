//! `irta`: command-line front-end for one-clock integer-reset timed automata.
//!
//! Exit codes: 0 for success or a positive answer, 1 for a negative answer (`member`,
//! `equiv`), 2 for usage, format and precondition errors.

mod random;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};
use irta_core::automaton::{build_k_acceptor, from_dot, from_json, strictify, to_dot, to_json, KAcceptor, OneClockTA};
use irta_core::canonical::{equivalent, minimize};
use irta_core::learner::{learn, LearnOptions, Limits, SimulatedTeacher};
use irta_core::rescale::{rescale_word, RescaleContext};
use irta_core::{Rational, TimedWord};
use log::info;

#[derive(Parser)]
#[command(
    name = "irta",
    version,
    about = "One-clock integer-reset timed automata: strict form, K-acceptors, minimization and learning"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the structural flags of an automaton.
    Validate { input: PathBuf },
    /// Remove equality guards that do not reset.
    Strictify {
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Build the K-acceptor of an automaton (normalize, strictify, complete, product).
    Acceptor {
        input: PathBuf,
        #[arg(long)]
        k: u32,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Minimize the K-acceptor of an automaton.
    Minimize {
        input: PathBuf,
        /// Defaults to the constant stored in the file, else the largest guard constant.
        #[arg(long)]
        k: Option<u32>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Learn the canonical K-acceptor of a target automaton's language.
    Learn {
        #[arg(long)]
        target: PathBuf,
        #[arg(long)]
        k: u32,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Write every table snapshot as one JSON object per line.
        #[arg(long)]
        log: Option<PathBuf>,
        #[arg(long, default_value_t = Limits::default().max_equivalence_queries)]
        max_eq: usize,
        #[arg(long, default_value_t = Limits::default().max_membership_queries)]
        max_mq: usize,
    },
    /// Exit 0 if the word is accepted, 1 otherwise. Words look like `1/2:a; 1:b`.
    Member { input: PathBuf, word: String },
    /// Exit 0 if both automata recognize the same language, else print a counterexample and exit 1.
    Equiv {
        left: PathBuf,
        right: PathBuf,
        #[arg(long)]
        k: Option<u32>,
    },
    /// Apply the rescaling bijection from clock value X to X' to a word.
    Rescale { x: String, x_prime: String, k: u32, word: String },
    /// Export to Graphviz.
    Dot {
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Generate a random K-acceptor.
    Random {
        #[arg(long)]
        k: u32,
        #[arg(long, default_value_t = 5)]
        states: usize,
        #[arg(long, default_value = "a")]
        alphabet: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

fn load(path: &Path) -> Result<OneClockTA> {
    let text = fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    let parsed = if path.extension().is_some_and(|e| e == "dot") { from_dot(&text) } else { from_json(&text) };
    parsed.with_context(|| format!("cannot parse {}", path.display()))
}

/// The automaton itself when it already is a K-acceptor, otherwise the one built from it.
fn load_acceptor(path: &Path, k: Option<u32>) -> Result<KAcceptor> {
    let ta = load(path)?;
    let k = k.or(ta.k()).unwrap_or_else(|| ta.max_constant());
    if let Ok(b) = KAcceptor::new(ta.clone(), k) {
        return Ok(b);
    }
    build_k_acceptor(&ta, k).with_context(|| format!("cannot build a {k}-acceptor from {}", path.display()))
}

fn emit(output: Option<&Path>, text: &str) -> Result<()> {
    match output {
        Some(p) => fs::write(p, text).with_context(|| format!("cannot write {}", p.display())),
        None => {
            let mut out = std::io::stdout().lock();
            let newline = if text.ends_with('\n') { "" } else { "\n" };
            match write!(out, "{text}{newline}") {
                Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(e.into()),
                _ => Ok(()),
            }
        }
    }
}

/// Summary lines go to stdout, unless stdout already carries the JSON result.
fn report(to_stdout: bool, line: &str) {
    if to_stdout {
        println!("{line}");
    } else {
        eprintln!("{line}");
    }
}

fn rational(s: &str) -> Result<Rational> {
    s.parse().with_context(|| format!("invalid rational `{s}`"))
}

fn word(s: &str) -> Result<TimedWord> {
    if s.trim() == "ε" {
        return Ok(TimedWord::empty());
    }
    s.parse().with_context(|| format!("invalid timed word `{s}`"))
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Validate { input } => {
            let flags = load(&input)?.validate();
            println!("{}", serde_json::to_string_pretty(&flags)?);
        }
        Command::Strictify { input, output } => {
            let s = strictify(&load(&input)?)?;
            info!("strict automaton has {} states", s.num_states());
            emit(output.as_deref(), &to_json(&s))?;
        }
        Command::Acceptor { input, k, output } => {
            let b = build_k_acceptor(&load(&input)?, k)?;
            info!("{k}-acceptor has {} states", b.num_states());
            emit(output.as_deref(), &to_json(b.ta()))?;
        }
        Command::Minimize { input, k, output } => {
            let m = minimize(&load_acceptor(&input, k)?);
            emit(output.as_deref(), &to_json(m.ta()))?;
            report(output.is_some(), &format!("states={}", m.num_states()));
        }
        Command::Learn { target, k, output, log, max_eq, max_mq } => {
            let target = load_acceptor(&target, Some(k))?;
            let mut teacher = SimulatedTeacher::new(target.clone());
            let limits = Limits { max_equivalence_queries: max_eq, max_membership_queries: max_mq };
            let options = LearnOptions { limits, record_snapshots: log.is_some() };
            let result = learn(&mut teacher, target.alphabet(), k, options)?;
            if let Some(path) = log {
                let mut f = fs::File::create(&path).with_context(|| format!("cannot write {}", path.display()))?;
                for s in &result.snapshots {
                    writeln!(f, "{}", serde_json::to_string(s)?)?;
                }
            }
            emit(output.as_deref(), &to_json(result.acceptor.ta()))?;
            let stats = format!(
                "MQ={} EQ={} states={}",
                result.membership_queries,
                result.equivalence_queries,
                result.acceptor.num_states()
            );
            report(output.is_some(), &stats);
        }
        Command::Member { input, word: text } => {
            let a = load(&input)?;
            let u = word(&text)?;
            u.check_alphabet(a.alphabet())?;
            let accepted = a.member(&u);
            println!("{}", if accepted { "accepted" } else { "rejected" });
            return Ok(if accepted { 0 } else { 1 });
        }
        Command::Equiv { left, right, k } => {
            let k = match k {
                Some(k) => k,
                None => {
                    let (l, r) = (load(&left)?, load(&right)?);
                    [l.k().unwrap_or(0), r.k().unwrap_or(0), l.max_constant(), r.max_constant()]
                        .into_iter()
                        .max()
                        .unwrap()
                }
            };
            let (b1, b2) = (load_acceptor(&left, Some(k))?, load_acceptor(&right, Some(k))?);
            match equivalent(&b1, &b2)? {
                None => println!("equivalent"),
                Some(cex) => {
                    let shown = if cex.is_empty() { "ε".to_string() } else { cex.to_string() };
                    println!("counterexample: {shown}");
                    return Ok(1);
                }
            }
        }
        Command::Rescale { x, x_prime, k, word: text } => {
            let ctx = RescaleContext::new(rational(&x)?, rational(&x_prime)?, k)?;
            println!("{}", rescale_word(&ctx, &word(&text)?));
        }
        Command::Dot { input, output } => emit(output.as_deref(), &to_dot(&load(&input)?))?,
        Command::Random { k, states, alphabet, seed, output } => {
            let symbols: Vec<&str> = alphabet.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
            anyhow::ensure!(!symbols.is_empty(), "empty alphabet");
            let b = random::acceptor(seed, k, states, &symbols);
            emit(output.as_deref(), &to_json(b.ta()))?;
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
