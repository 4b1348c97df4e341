use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;

/// Power-budgeted mission scheduling and edge off-loading simulation.
#[derive(Debug, Parser)]
#[command(name = "swapsched", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Solve an optimize scenario and write a report.
    Solve(SolveArgs),
    /// Run several solvers at several budgets and emit CSV.
    Compare(CompareArgs),
    /// Run a simulate scenario and write its metrics.
    Simulate(SimulateArgs),
    /// Generate a random scenario.
    Gen(GenArgs),
    /// Check a scenario file and print every problem found.
    Validate(ValidateArgs),
}

#[derive(Debug, Args)]
struct SolveArgs {
    #[arg(long)]
    scenario: PathBuf,
    /// greedy, local, ga, exact, or anytime:<one of those>.
    #[arg(long, default_value = "greedy")]
    solver: SolverChoice,
    #[arg(long, value_enum, default_value_t = ModeArg::Rated)]
    mode: ModeArg,
    /// Wall-clock budget for local search and anytime solvers.
    #[arg(long, value_parser = positive_budget)]
    budget_ms: Option<u64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Report destination; standard output when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct CompareArgs {
    #[arg(long)]
    scenario: PathBuf,
    /// Solvers to run, comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    solver: Vec<SolverChoice>,
    #[arg(long, value_enum, default_value_t = ModeArg::Rated)]
    mode: ModeArg,
    /// Budgets to run every solver at, comma separated.
    #[arg(long, value_delimiter = ',', value_parser = positive_budget, default_value = "1000")]
    budget_ms: Vec<u64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// CSV destination; standard output when omitted.
    #[arg(long)]
    csv: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct SimulateArgs {
    #[arg(long)]
    scenario: PathBuf,
    /// Policy pairs to run, comma separated, each `admission[/assignment]`,
    /// e.g. `terminate,offload/priority_first`. Defaults to the file's policies.
    #[arg(long, value_delimiter = ',')]
    policies: Vec<PolicyPair>,
    /// Override the scenario horizon.
    #[arg(long)]
    ticks: Option<u64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Metrics destination; standard output when omitted. With several
    /// policies each run gets `<stem>.<policy>.<ext>`.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Write the event log here (same naming rule as `--out`).
    #[arg(long)]
    log: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct GenArgs {
    #[arg(long, value_enum, default_value_t = KindArg::Optimize)]
    kind: KindArg,
    #[arg(long, default_value_t = 4)]
    missions: usize,
    #[arg(long, default_value_t = 8)]
    slots: usize,
    /// Simulate scenarios: number of nodes.
    #[arg(long, default_value_t = 3)]
    nodes: usize,
    /// Simulate scenarios: number of jobs.
    #[arg(long, default_value_t = 20)]
    jobs: usize,
    /// Simulate scenarios: horizon.
    #[arg(long, default_value_t = 30)]
    ticks: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct ValidateArgs {
    #[arg(long)]
    scenario: PathBuf,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ModeArg {
    Raw,
    Rated,
}

impl From<ModeArg> for swapsched::model::Mode {
    fn from(mode: ModeArg) -> Self {
        match mode {
            ModeArg::Raw => Self::Raw,
            ModeArg::Rated => Self::Rated,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum KindArg {
    Optimize,
    Simulate,
}

#[derive(Debug, Clone)]
enum SolverChoice {
    Direct(swapsched::solvers::InnerSolver),
    Anytime(swapsched::solvers::InnerSolver),
}

impl SolverChoice {
    fn name(&self) -> String {
        match self {
            SolverChoice::Direct(inner) => inner.name().to_string(),
            SolverChoice::Anytime(inner) => format!("anytime:{}", inner.name()),
        }
    }
}

impl FromStr for SolverChoice {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parse = |name: &str| {
            name.parse().map_err(|_| format!("unknown solver `{s}` (expected greedy, local, ga, exact or anytime:<solver>)"))
        };
        match s.strip_prefix("anytime:") {
            Some(inner) => parse(inner).map(SolverChoice::Anytime),
            None => parse(s).map(SolverChoice::Direct),
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct PolicyPair {
    admission: swapsched::sim::AdmissionPolicy,
    assignment: Option<swapsched::sim::AssignmentPolicy>,
}

impl FromStr for PolicyPair {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        fn named<T: serde::de::DeserializeOwned>(name: &str, what: &str) -> Result<T, String> {
            serde_json::from_value(serde_json::Value::String(name.into())).map_err(|_| format!("unknown {what} policy `{name}`"))
        }
        let (admission, assignment) = match s.split_once('/') {
            Some((a, b)) => (a, Some(b)),
            None => (s, None),
        };
        Ok(PolicyPair {
            admission: named(admission, "admission")?,
            assignment: assignment.map(|b| named(b, "assignment")).transpose()?,
        })
    }
}

fn positive_budget(s: &str) -> Result<u64, String> {
    match s.parse::<u64>() {
        Ok(0) => Err("budget must be positive".into()),
        Ok(ms) => Ok(ms),
        Err(e) => Err(e.to_string()),
    }
}

/// A failure that maps to exit code 1.
#[derive(Debug)]
pub struct Failure(String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(e.to_string())
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure(format!("cannot read {}: {e}", path.display())))
}

fn write(path: Option<&Path>, text: &str) -> Result<(), Failure> {
    match path {
        Some(path) => std::fs::write(path, text).map_err(|e| Failure(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Solve(args) => commands::solve(args),
        Command::Compare(args) => commands::compare(args),
        Command::Simulate(args) => commands::simulate(args),
        Command::Gen(args) => commands::generate(args),
        Command::Validate(args) => commands::validate(args),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure(message)) => {
            for line in message.lines() {
                eprintln!("error: {line}");
            }
            ExitCode::from(1)
        }
    }
}
