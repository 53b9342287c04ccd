//! `code-ent`: injective norm and geometric entanglement of code states.

mod commands;
mod source;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use crate::source::CodeSource;

#[derive(Debug, Parser)]
#[command(
    name = "code-ent",
    version,
    about = "Geometric entanglement of binary linear and CSS code states"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print length, dimension, rate and canonical generator.
    Info {
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long)]
        json: bool,
    },
    /// Compute j(C), the injective norm and the geometric entanglement.
    Analyze {
        #[command(flatten)]
        code: CodeArgs,
        #[command(flatten)]
        optimizer: NumericArgs,
        /// Also numerically estimate the injective norm on the dense state.
        #[arg(long)]
        numeric: bool,
        /// Cross-check j against the brute-force oracles (n <= 20).
        #[arg(long)]
        oracle: bool,
        #[arg(long)]
        json: bool,
    },
    /// Common injective norm of the basis states of the CSS code (C1, C2).
    Css {
        /// Generator file of the outer code C1.
        #[arg(long, value_name = "PATH")]
        c1: PathBuf,
        /// Generator file of the inner code C2, which must be a subcode of C1.
        #[arg(long, value_name = "PATH")]
        c2: PathBuf,
        /// Estimate the norm of every basis state numerically.
        #[arg(long)]
        enumerate_cosets: bool,
        #[command(flatten)]
        numeric: NumericArgs,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
    /// Run the seeded invariant suite; exit 3 if anything fails.
    Verify {
        /// Largest code length in the suite.
        #[arg(long, default_value_t = 8)]
        max_n: usize,
        #[arg(long, default_value_t = 40)]
        random_codes: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        restarts: usize,
        #[arg(long)]
        json: bool,
        /// Inject a known defect to exercise the failure path.
        #[arg(long, hide = true, value_name = "FAULT")]
        inject_fault: Option<String>,
    },
    /// Write the generator of a builtin family in the text format.
    Gen {
        #[command(flatten)]
        code: CodeArgs,
        /// Output file (stdout if omitted).
        #[arg(long, short, value_name = "PATH")]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
struct CodeArgs {
    /// Builtin family: repetition, full, zero, even-weight, hamming, toric, random.
    #[arg(
        long,
        value_name = "NAME",
        conflicts_with = "file",
        required_unless_present = "file"
    )]
    family: Option<String>,
    /// Generator-matrix file.
    #[arg(long, value_name = "PATH")]
    file: Option<PathBuf>,
    /// Code length (families other than hamming and toric).
    #[arg(long)]
    n: Option<usize>,
    /// Dimension (random family).
    #[arg(long)]
    k: Option<usize>,
    /// Lattice size (toric family).
    #[arg(long = "L", value_name = "L")]
    l: Option<usize>,
    /// Master seed; the random family and the optimizer derive sub-seeds from it.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Debug, Args)]
struct NumericArgs {
    /// Restarts of the numerical optimizer.
    #[arg(long, default_value_t = 100)]
    restarts: usize,
}

impl CodeArgs {
    fn source(&self) -> CodeSource {
        match (&self.family, &self.file) {
            (_, Some(path)) => CodeSource::File(path.clone()),
            (Some(name), None) => CodeSource::Family {
                name: name.clone(),
                n: self.n,
                k: self.k,
                l: self.l,
                seed: self.seed,
            },
            (None, None) => unreachable!("clap requires --family or --file"),
        }
    }
}

/// Failure classes, mapped to exit codes 2 and 3.
#[derive(Debug)]
pub enum CliError {
    Input(String),
    Verification(String),
}

impl From<code_ent_core::Error> for CliError {
    fn from(e: code_ent_core::Error) -> Self {
        if e.is_input_error() {
            CliError::Input(e.to_string())
        } else {
            CliError::Verification(e.to_string())
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let mut out = std::io::stdout().lock();
    match cli.command {
        Command::Info { code, json } => commands::info(&mut out, &code.source(), json),
        Command::Analyze {
            code,
            optimizer,
            numeric,
            oracle,
            json,
        } => commands::analyze(
            &mut out,
            &code.source(),
            &commands::AnalyzeOptions {
                numeric: numeric.then_some((optimizer.restarts, code.seed)),
                oracle,
                json,
            },
        ),
        Command::Css {
            c1,
            c2,
            enumerate_cosets,
            numeric,
            seed,
            json,
        } => commands::css(
            &mut out,
            &c1,
            &c2,
            enumerate_cosets.then_some((numeric.restarts, seed)),
            json,
        ),
        Command::Verify {
            max_n,
            random_codes,
            seed,
            restarts,
            json,
            inject_fault,
        } => commands::verify(
            &mut out,
            max_n,
            random_codes,
            seed,
            restarts,
            json,
            inject_fault.as_deref(),
        ),
        Command::Gen { code, out: path } => {
            commands::gen(&mut out, &code.source(), path.as_deref())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Verification(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(3)
        }
    }
}
