//! `simal`: command-line front end.
//!
//! Exit codes: 0 success, 1 input or validation error, 2 property violation,
//! 3 budget exceeded.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;
use simal_core::budget::set_limit_budget;
use simal_core::corpus::Profile;
use simal_core::io::to_pretty;
use simal_core::SimalError;

use report::{assemble, error_outcome, exit_code_for, Outcome};

#[derive(Parser, Debug)]
#[command(
    name = "simal",
    version,
    about = "Simplicial algebra over finite Mal'tsev algebras"
)]
pub struct Cli {
    /// Maximum number of elements of any computed limit; for `factorize
    /// --mode ml` it also caps the congruences explored.
    #[arg(long, global = true, env = "SIMAL_BUDGET")]
    budget: Option<usize>,
    /// Seed for randomized generator choices that do not carry their own.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Output file (or directory for `reflect` and `factorize`).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Print the full JSON run report on stdout.
    #[arg(long, global = true)]
    json: bool,
    #[arg(long, global = true, value_enum, default_value_t = ProfileArg::Desk)]
    profile: ProfileArg,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ProfileArg {
    Desk,
    Deep,
}

impl From<ProfileArg> for Profile {
    fn from(p: ProfileArg) -> Self {
        match p {
            ProfileArg::Desk => Profile::Desk,
            ProfileArg::Deep => Profile::Deep,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum, PartialEq, Eq)]
pub enum Mode {
    Em,
    Ml,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Parse and validate an algebra, homomorphism, simplicial object or morphism.
    Validate { file: PathBuf },
    /// Generate an artifact: `simal gen <kind> [key=value ...]`, values in JSON.
    Gen {
        kind: Option<String>,
        params: Vec<String>,
        /// Read the full generator spec from a JSON file instead.
        #[arg(long)]
        spec: Option<PathBuf>,
    },
    /// Reflect a simplicial object into internal groupoids.
    Reflect { file: PathBuf },
    /// Decide whether a simplicial object is the nerve of an internal groupoid.
    GroupoidCheck { file: PathBuf },
    /// Classify a levelwise-surjective simplicial morphism.
    Classify { file: PathBuf },
    /// Factor a simplicial morphism.
    Factorize {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Mode::Em)]
        mode: Mode,
    },
    /// Kan condition of an object, or Kan fibration condition of a morphism.
    Kan { file: PathBuf },
    /// Coskeleton of a truncated simplicial object.
    Cosk {
        file: PathBuf,
        #[arg(long, default_value_t = 3)]
        to: usize,
    },
    /// The commutator chain of a simplicial object or graph.
    Commutators { file: PathBuf },
    /// Run the acceptance battery over the default corpus.
    Suite {
        /// Comma-separated criterion numbers; all when omitted.
        #[arg(long, value_delimiter = ',')]
        criteria: Vec<u8>,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Validate { .. } => "validate",
            Command::Gen { .. } => "gen",
            Command::Reflect { .. } => "reflect",
            Command::GroupoidCheck { .. } => "groupoid-check",
            Command::Classify { .. } => "classify",
            Command::Factorize { .. } => "factorize",
            Command::Kan { .. } => "kan",
            Command::Cosk { .. } => "cosk",
            Command::Commutators { .. } => "commutators",
            Command::Suite { .. } => "suite",
        }
    }

    /// Whether `--out` names an artifact rather than the report file.
    fn out_is_artifact(&self) -> bool {
        matches!(
            self,
            Command::Gen { .. }
                | Command::Cosk { .. }
                | Command::Reflect { .. }
                | Command::Factorize { .. }
        )
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    ExitCode::from(run(&cli) as u8)
}

fn run(cli: &Cli) -> i32 {
    if let Some(b) = cli.budget {
        set_limit_budget(b);
    }
    let start = Instant::now();
    let parameters = json!({
        "budget": cli.budget,
        "seed": cli.seed,
        "profile": format!("{:?}", cli.profile).to_lowercase(),
        "args": commands::describe(&cli.command),
    });
    let mut inputs = Vec::new();
    let (outcome, code) = match commands::dispatch(cli, &mut inputs) {
        Ok(o) => {
            let code = if o.violations.is_empty() {
                0
            } else if o.budget_exceeded {
                3
            } else {
                2
            };
            (o, code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            (error_outcome(inputs, &e), exit_code_for(e.kind()))
        }
    };
    let elapsed = start.elapsed().as_secs_f64() * 1000.0;
    let report = assemble(cli.command.name(), parameters, &outcome, elapsed);
    if let Err(e) = emit(cli, &outcome, &report) {
        eprintln!("error: {e}");
        return exit_code_for(e.kind());
    }
    code
}

fn emit(cli: &Cli, outcome: &Outcome, report: &serde_json::Value) -> Result<(), SimalError> {
    let text = to_pretty(report);
    if let (Some(out), false) = (&cli.out, cli.command.out_is_artifact()) {
        std::fs::write(out, &text)
            .map_err(|e| SimalError::Io(format!("{}: {e}", out.display())))?;
    }
    if cli.json {
        print!("{text}");
        return Ok(());
    }
    // Artifact commands without --out print the document itself.
    if let Some(doc) = outcome.results.get("document") {
        print!("{}", to_pretty(doc));
        return Ok(());
    }
    print!("{}", commands::summary(cli.command.name(), outcome));
    Ok(())
}
