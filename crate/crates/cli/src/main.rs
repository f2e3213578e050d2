//! `w22`: batch front end for the W(2,2) engine.
//!
//! Exit status: 0 when every check behaves as recorded, 1 on an unexpected
//! violation, 2 on a usage error.

mod commands;
mod emit;
mod suite;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, CommandFactory, Parser, Subcommand};
use w22_core::verma::{DEFAULT_MAX_LEVEL, DEFAULT_MAX_SYMBOLIC_LEVEL};
use w22_core::{parse_rational, Rational};

use crate::emit::Format;

#[derive(Debug, Parser)]
#[command(
    name = "w22",
    version,
    about = "Exact computations in the W-algebra W(2,2)"
)]
pub struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    /// Highest Verma level any command may touch.
    #[arg(long, global = true, env = "W22_MAX_LEVEL", default_value_t = DEFAULT_MAX_LEVEL)]
    pub max_level: usize,

    /// Highest level for symbolic Gram matrices and determinants.
    #[arg(long, global = true, env = "W22_MAX_SYMBOLIC_LEVEL", default_value_t = DEFAULT_MAX_SYMBOLIC_LEVEL)]
    pub max_symbolic_level: usize,

    #[command(subcommand)]
    pub command: Command,
}

fn rational(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

/// Highest-weight data as exact rationals (`p`, `-p`, `p/q`).
#[derive(Debug, Clone, Args)]
pub struct Point {
    #[arg(long, value_parser = rational, allow_hyphen_values = true)]
    pub lambda: Option<Rational>,
    #[arg(long, value_parser = rational, allow_hyphen_values = true)]
    pub c: Option<Rational>,
    #[arg(long, value_parser = rational, allow_hyphen_values = true)]
    pub c0: Option<Rational>,
    #[arg(long, value_parser = rational, allow_hyphen_values = true)]
    pub c1: Option<Rational>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Antisymmetry and Jacobi on all basis triples with |index| <= N.
    Jacobi {
        #[arg(long, default_value_t = 6)]
        max_index: i64,
    },
    /// Identity corpus, axioms, semidirect check and criterion samples.
    PaperSuite {
        /// Alternative identity corpus (TOML).
        #[arg(long)]
        corpus: Option<PathBuf>,
    },
    /// Dimensions of levels 0..=N.
    VermaDim {
        #[arg(long)]
        level: usize,
    },
    /// Contravariant form on one level.
    Gram {
        #[arg(long)]
        level: usize,
        #[command(flatten)]
        point: Point,
        /// Keep lambda, c, c0, c1 as indeterminates.
        #[arg(long, conflicts_with_all = ["lambda", "c", "c0", "c1"])]
        symbolic: bool,
    },
    /// Determinant of the contravariant form on one level.
    Det {
        #[arg(long)]
        level: usize,
        #[command(flatten)]
        point: Point,
        #[arg(long, conflicts_with_all = ["lambda", "c", "c0", "c1"])]
        symbolic: bool,
    },
    /// Basis of vectors on one level killed by L(1), L(2), I(1), I(2).
    Singular {
        #[arg(long)]
        level: usize,
        #[command(flatten)]
        point: Point,
    },
    /// Reducibility predicate in (c0, c1), optionally probed against determinants.
    Criterion {
        #[arg(long, value_parser = rational, allow_hyphen_values = true)]
        c0: Rational,
        #[arg(long, value_parser = rational, allow_hyphen_values = true)]
        c1: Rational,
        /// Use the sign under which the determinants actually vanish.
        #[arg(long)]
        bracket_convention: bool,
        /// Also compute determinants and singular vectors up to this level
        /// (needs --lambda and --c).
        #[arg(long, requires_all = ["lambda", "c"])]
        check_levels: Option<usize>,
        #[arg(long, value_parser = rational, allow_hyphen_values = true)]
        lambda: Option<Rational>,
        #[arg(long, value_parser = rational, allow_hyphen_values = true)]
        c: Option<Rational>,
    },
    /// Matrix of I(0) on one level with its nilpotency report.
    I0 {
        #[arg(long)]
        level: usize,
        #[command(flatten)]
        point: Point,
    },
    /// Witt-module, semidirect and intermediate-series window checks.
    Realization {
        #[arg(long, default_value_t = 8)]
        window: i64,
        #[arg(long, value_parser = rational, allow_hyphen_values = true, default_value = "0")]
        a: Rational,
        #[arg(long, value_parser = rational, allow_hyphen_values = true, default_value = "-1")]
        b: Rational,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(out) => {
            print!("{}", out.text);
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(commands::Failure::Usage(msg)) => Cli::command()
            .error(clap::error::ErrorKind::ValueValidation, msg)
            .exit(),
        Err(commands::Failure::Engine(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
