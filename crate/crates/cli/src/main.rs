use std::process::ExitCode;

use clap::{Parser, Subcommand};
use comlang::{Alphabet, Count, Limits};
use comlang_cli::{CliError, DfaFormat, SessionConfig, DEFAULT_BOUND};

/// Algebra of commutative regular languages.
#[derive(Debug, Parser)]
#[command(name = "comlang", version)]
struct Cli {
    /// Alphabet, e.g. `abc`. Defaults to the letters of the expression.
    #[arg(long, global = true)]
    alphabet: Option<String>,
    /// Coordinate-sum bound for `check`.
    #[arg(long, global = true, default_value_t = DEFAULT_BOUND)]
    bound: Count,
    /// Largest number of terms produced by distributing intersections.
    #[arg(long, global = true)]
    guard_clauses: Option<usize>,
    /// Largest number of automaton states.
    #[arg(long, global = true)]
    guard_states: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the normal form as JSON.
    Normalize { expr: String },
    /// Test whether a word belongs to the language.
    Member { word: String, expr: String },
    /// Decide regularity; prints a verdict with a `status` key.
    #[command(name = "regular?", alias = "regular")]
    Regular { expr: String },
    /// Compile to an automaton.
    Dfa {
        expr: String,
        #[arg(long, conflicts_with = "json")]
        dot: bool,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        minimize: bool,
    },
    /// Compare against brute-force enumeration up to `--bound`.
    Check { expr: String },
    /// Classify the minimal automaton.
    Report { expr: String },
}

fn run(cli: Cli) -> Result<String, CliError> {
    let mut limits = Limits::default();
    if let Some(n) = cli.guard_clauses {
        limits.max_clauses = n;
    }
    if let Some(n) = cli.guard_states {
        limits.max_states = n;
    }
    let alphabet = cli.alphabet.as_deref().map(Alphabet::parse).transpose()?;
    let config = SessionConfig { alphabet, bound: cli.bound, limits };
    match cli.command {
        Command::Normalize { expr } => comlang_cli::normalize(&expr, &config),
        Command::Member { word, expr } => comlang_cli::member(&word, &expr, &config).map(|b| b.to_string()),
        Command::Regular { expr } => comlang_cli::regular(&expr, &config),
        Command::Dfa { expr, dot, minimize, .. } => {
            let d = comlang_cli::dfa(&expr, &config, minimize)?;
            Ok(comlang_cli::render_dfa(&d, if dot { DfaFormat::Dot } else { DfaFormat::Json }))
        }
        Command::Check { expr } => comlang_cli::check(&expr, &config).map(|r| r.render()),
        Command::Report { expr } => comlang_cli::report(&expr, &config),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(out) => {
            println!("{}", out.trim_end());
            ExitCode::SUCCESS
        }
        Err(CliError::Mismatch(report)) => {
            println!("{}", report.render());
            eprintln!("error: symbolic result disagrees with the oracle");
            ExitCode::from(5)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
