//! Command-line front end. `run` is pure (no printing, no exiting) so the
//! binary and the tests share one code path.

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use crate::classifier::{self, LineTuple};
use crate::error::Error;
use crate::exec::Exec;
use crate::extension::ExtensionState;
use crate::gns::{self, SimContext};
use crate::io::{self, LoadError};
use crate::measure::CircleMeasure;
use crate::parse::parse_element;
use crate::product_state::ProductState;
use crate::report::Report;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_DOMAIN: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "cuntzkit", version, about = "States, extensions and endomorphisms of the Cuntz algebras")]
pub struct Cli {
    /// Emit a JSON object instead of key/value lines.
    #[arg(long, global = true)]
    pub json: bool,

    /// Run randomized sweeps and shift searches on one thread.
    #[arg(long, global = true)]
    pub sequential: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate the product state on a degree-zero expression.
    EvalState {
        #[arg(long)]
        seq: PathBuf,
        #[arg(long)]
        expr: String,
    },
    /// Period of the sequence.
    Period {
        #[arg(long)]
        seq: PathBuf,
    },
    /// Canonical line tuple of the quasi-orbit.
    QuasiOrbit {
        #[arg(long)]
        seq: PathBuf,
    },
    /// Evaluate the extension `ρ̃[μ]` on an expression.
    ExtendEval {
        #[arg(long)]
        seq: PathBuf,
        #[arg(long)]
        measure: PathBuf,
        #[arg(long)]
        expr: String,
    },
    /// Unitary equivalence or disjointness of two extensions.
    CompareExtensions {
        #[arg(long)]
        seq: PathBuf,
        #[arg(long)]
        measure: PathBuf,
        #[arg(long)]
        seq2: PathBuf,
        #[arg(long)]
        measure2: PathBuf,
    },
    /// Conjugacy of the induced endomorphisms.
    ClassifyEndo {
        #[arg(long)]
        seq: PathBuf,
        #[arg(long)]
        measure: PathBuf,
        #[arg(long)]
        seq2: PathBuf,
        #[arg(long)]
        measure2: PathBuf,
    },
    /// Conjugacy of the endomorphisms of two periodic line tuples.
    ClassifyCuntz {
        #[arg(long)]
        tuple: PathBuf,
        #[arg(long)]
        tuple2: PathBuf,
    },
    /// Randomized check of the model relations plus agreement with the
    /// closed-form extension.
    SimulateCheck {
        #[arg(long)]
        seq: PathBuf,
        #[arg(long)]
        measure: PathBuf,
        #[arg(long, default_value_t = 4)]
        max_len: usize,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long, env = "CUNTZKIT_SEED", default_value_t = 0)]
        seed: u64,
        /// Degree bound for the oracle sweep.
        #[arg(long, default_value_t = 6)]
        max_degree: usize,
        #[arg(long, default_value_t = 500)]
        oracle_trials: usize,
    },
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Load(#[from] LoadError),
    #[error("expression: {0}")]
    Expression(Error),
    #[error(transparent)]
    Domain(#[from] Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Load(_) | CliError::Expression(_) => EXIT_INPUT,
            CliError::Domain(e) if e.is_input_error() => EXIT_INPUT,
            CliError::Domain(_) => EXIT_DOMAIN,
        }
    }
}

fn expression(text: &str, n: usize) -> Result<crate::algebra::AlgebraElement, CliError> {
    parse_element(text, n).map_err(CliError::Expression)
}

fn state_and_measure(seq: &Path, measure: &Path) -> Result<(ProductState, CircleMeasure), CliError> {
    Ok((io::load_state(seq)?, io::load_measure(measure)?))
}

/// Execute one subcommand and build its report.
pub fn execute(command: &Command, exec: Exec) -> Result<Report, CliError> {
    let mut r = Report::new();
    match command {
        Command::EvalState { seq, expr } => {
            let f = io::load_state(seq)?;
            let x = expression(expr, f.n())?;
            r.complex("value", f.eval(&x)?);
        }
        Command::Period { seq } => {
            let f = io::load_state(seq)?;
            r.int("period", f.period() as u64);
        }
        Command::QuasiOrbit { seq } => {
            let f = io::load_state(seq)?;
            r.int("period", f.period() as u64).vectors("lines", f.quasi_orbit_rep().lines());
        }
        Command::ExtendEval { seq, measure, expr } => {
            let (f, mu) = state_and_measure(seq, measure)?;
            let x = expression(expr, f.n())?;
            r.complex("value", ExtensionState::new(f, mu).eval(&x)?);
        }
        Command::CompareExtensions { seq, measure, seq2, measure2 } => {
            let (f, mu) = state_and_measure(seq, measure)?;
            let (g, nu) = state_and_measure(seq2, measure2)?;
            r.verdict(&classifier::extension_compare(&f, &mu, &g, &nu)?);
        }
        Command::ClassifyEndo { seq, measure, seq2, measure2 } => {
            let (f, mu) = state_and_measure(seq, measure)?;
            let (g, nu) = state_and_measure(seq2, measure2)?;
            r.verdict(&classifier::endo_conjugate(&f, &mu, &g, &nu, exec)?);
        }
        Command::ClassifyCuntz { tuple, tuple2 } => {
            let f: LineTuple = io::load_tuple(tuple)?;
            let g: LineTuple = io::load_tuple(tuple2)?;
            r.verdict(&classifier::cuntz_state_conjugate(&f, &g, exec)?);
        }
        Command::SimulateCheck { seq, measure, max_len, trials, seed, max_degree, oracle_trials } => {
            let (f, mu) = state_and_measure(seq, measure)?;
            let ctx = SimContext::new(f, &mu)?;
            let rel = gns::check_relations(&ctx, *max_len, *trials, *seed, exec)?;
            let oracle = gns::oracle_agreement(&ctx, *max_len, *max_degree, *oracle_trials, *seed, exec)?;
            r.relations(&rel).oracle(&oracle);
        }
    }
    Ok(r)
}

/// Run a parsed command line: exit code plus stdout text (or stderr text on
/// failure).
pub fn run(cli: &Cli) -> (i32, String) {
    let exec = if cli.sequential { Exec::Sequential } else { Exec::Parallel };
    match execute(&cli.command, exec) {
        Ok(report) if cli.json => (EXIT_OK, format!("{}\n", report.to_json())),
        Ok(report) => (EXIT_OK, report.render_text()),
        Err(e) => (e.exit_code(), format!("error: {e}\n")),
    }
}
