use std::io::Write;
use std::path::Path;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

mod commands;

use submonoid::formats::parse_word_set;
use submonoid::words::FiniteWordSet;
use submonoid::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Dot,
}

/// Codes, finite automata and the transition monoids of finite sets of words.
#[derive(Debug, Parser)]
#[command(name = "submonoid", version)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Flower automaton of a word set.
    Flower { set: String },
    /// Prefix automaton of a word set.
    Prefix { set: String },
    /// Flower or prefix transducer of a coding morphism.
    Transducer {
        beta: String,
        #[arg(long, value_enum, default_value_t = TransducerKind::Flower)]
        kind: TransducerKind,
    },
    /// Number of factorizations of a word.
    Count { set: String, word: String },
    /// Degree d(X) of the generated submonoid.
    Degree { set: String },
    /// The group G(X).
    Group { set: String },
    /// Shortest synchronizing word, or a verdict on a given word.
    Sync {
        set: String,
        #[arg(long)]
        check: Option<String>,
    },
    /// Composition X = Y ∘ Z and, for complete Y, the degree product.
    Compose { y: String, beta: String },
    /// Minimal D-class of the transition monoid.
    Monoid {
        set: String,
        /// Automaton JSON to use instead of the flower automaton; it must
        /// recognize X* with multiplicities.
        #[arg(long)]
        automaton: Option<String>,
    },
    /// Code, completeness and reduction checks.
    Check {
        #[command(subcommand)]
        kind: CheckKind,
    },
    /// Invariants of a seeded random corpus of word sets.
    Corpus {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 20)]
        count: usize,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TransducerKind {
    Flower,
    Prefix,
}

#[derive(Debug, Subcommand)]
enum CheckKind {
    Code { set: String },
    Complete { set: String },
    /// Whether a state map between two automata is a reduction.
    Reduction { source: String, target: String, map: String },
}

/// Outcome of a command: printed output plus the exit status to use.
pub struct Outcome {
    pub output: String,
    pub status: u8,
}

impl Outcome {
    pub fn ok(output: String) -> Self {
        Outcome { output, status: 0 }
    }
}

/// Reads a file, or returns the argument itself when no such file exists.
pub fn read_input(arg: &str) -> Result<String, Error> {
    let path = Path::new(arg);
    if path.is_file() {
        std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{arg}: {e}")))
    } else {
        Ok(arg.to_string())
    }
}

pub fn read_set(arg: &str) -> Result<FiniteWordSet, Error> {
    parse_word_set(&read_input(arg)?)
}

fn exit_status(e: &Error) -> u8 {
    match e {
        Error::Parse(_) | Error::Input(_) => 2,
        Error::Invariant(_) => 3,
        Error::Hypothesis(_) => 4,
        Error::Resource(_) => 5,
    }
}

fn run(cli: Cli) -> Result<Outcome, Error> {
    let f = cli.format;
    match cli.command {
        Command::Flower { set } => commands::automaton(&read_set(&set)?, false, f),
        Command::Prefix { set } => commands::automaton(&read_set(&set)?, true, f),
        Command::Transducer { beta, kind } => commands::transducer(&beta, kind, f),
        Command::Count { set, word } => commands::count(&read_set(&set)?, &word, f),
        Command::Degree { set } => commands::degree(&read_set(&set)?, f),
        Command::Group { set } => commands::group(&read_set(&set)?, f),
        Command::Sync { set, check } => commands::sync(&read_set(&set)?, check.as_deref(), f),
        Command::Compose { y, beta } => commands::compose(&y, &beta, f),
        Command::Monoid { set, automaton } => commands::monoid(&read_set(&set)?, automaton.as_deref(), f),
        Command::Check { kind } => match kind {
            CheckKind::Code { set } => commands::check_code(&read_set(&set)?, f),
            CheckKind::Complete { set } => commands::check_complete(&read_set(&set)?, f),
            CheckKind::Reduction { source, target, map } => {
                commands::check_reduction(&source, &target, &map, f)
            }
        },
        Command::Corpus { seed, count, jobs } => commands::corpus(seed, count, jobs, f),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            // a closed pipe (e.g. `| head`) is not an error worth reporting
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(out.output.as_bytes());
            if !out.output.ends_with('\n') && !out.output.is_empty() {
                let _ = writeln!(stdout);
            }
            ExitCode::from(out.status)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_status(&e))
        }
    }
}
