//! `mobm`: generate instances, run the online algorithms, verify and audit
//! traces, and sweep competitive ratios to CSV.
//!
//! Exit codes: 0 success or pass, 1 verification failure, 2 usage or input error.

mod commands;
mod fmt;
mod fspec;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use mobm::algorithms::Algorithm;

#[derive(Parser)]
#[command(
    name = "mobm",
    version,
    about = "Online matroid bipartite matching and vertex cover harness"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a generated instance as JSON.
    Generate {
        #[command(subcommand)]
        kind: GenerateKind,
    },
    /// Run one algorithm on an instance and print a CSV summary line.
    Run(RunArgs),
    /// Check every guarantee that applies to a trace.
    Verify(CheckArgs),
    /// Audit the charging argument (waterfilling) or the per-round gap (greedy).
    Audit(AuditArgs),
    /// Run algorithms over many instances and seeds, writing one CSV row per run.
    Sweep(SweepArgs),
}

#[derive(Subcommand)]
enum GenerateKind {
    /// Upper-triangular instance with cardinality budget.
    Triangular {
        #[arg(long)]
        n: usize,
        /// Output file; stdout if omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Independent edges with probability p.
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        p: f64,
        /// Budget function, e.g. `cardinality`, `uniform:2`, `partition:0,1|2:1,1`.
        #[arg(long, default_value = "cardinality")]
        f: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// A benchmark suite written as one file per instance.
    Suite {
        #[arg(long, value_enum)]
        kind: SuiteKind,
        #[arg(long)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out_dir: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
pub enum SuiteKind {
    /// Mixed submodular budgets, n, m ≤ 12.
    Vc,
    /// Matroid rank budgets, n, m ≤ 8.
    Matroid,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum ArrivalKind {
    /// Listed order; greedy uses t = k/|R|.
    Adversarial,
    Permutation,
    Timestamps,
}

#[derive(Args)]
pub struct Tol {
    /// Feasibility and gap tolerance.
    #[arg(long, default_value_t = mobm::TOL)]
    tol: f64,
    /// Tolerance on ratios against the offline optimum.
    #[arg(long, default_value_t = mobm::verify::RATIO_TOL)]
    ratio_tol: f64,
}

impl Tol {
    fn get(&self) -> mobm::verify::Tolerances {
        mobm::verify::Tolerances {
            tol: self.tol,
            ratio: self.ratio_tol,
        }
    }
}

#[derive(Args)]
pub struct RunArgs {
    #[arg(long)]
    algorithm: Algorithm,
    #[arg(long)]
    instance: PathBuf,
    /// Arrival model; defaults to timestamps for greedy-ra, adversarial otherwise.
    #[arg(long, value_enum)]
    arrival: Option<ArrivalKind>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Independent arrival draws; the trace written is the first one.
    #[arg(long, default_value_t = 1)]
    trials: usize,
    /// JSON array of per-arrival preference lists (greedy-ra).
    #[arg(long)]
    prefs: Option<PathBuf>,
    /// Trace output file.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
pub struct CheckArgs {
    #[arg(long)]
    trace: PathBuf,
    #[arg(long)]
    instance: PathBuf,
    #[command(flatten)]
    tol: Tol,
    /// Also write the report as JSON.
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Args)]
pub struct AuditArgs {
    #[command(flatten)]
    check: CheckArgs,
    /// For greedy-ra traces: also check the random-arrival lemmas over this
    /// many timestamp draws.
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    prefs: Option<PathBuf>,
}

#[derive(Args)]
pub struct SweepArgs {
    /// `triangular:N`, `random:N:M:P`, `vc-suite` or `matroid-suite`.
    #[arg(long, conflicts_with = "dir")]
    generator: Option<String>,
    /// Directory of instance files, taken in file-name order.
    #[arg(long)]
    dir: Option<PathBuf>,
    /// Number of generated instances.
    #[arg(long, default_value_t = 1)]
    count: usize,
    /// Seed for instance generation.
    #[arg(long, default_value_t = 0)]
    gen_seed: u64,
    /// Budget function for `random:` generators.
    #[arg(long, default_value = "cardinality")]
    f: String,
    /// Comma-separated algorithm names; may be empty.
    #[arg(long, default_value = "obvc,mobvc,mobm-pd")]
    algorithms: String,
    /// Arrival seeds: `A..B` (inclusive) or a comma-separated list.
    #[arg(long, default_value = "0")]
    seeds: String,
    /// Arrival model; defaults to timestamps for greedy-ra, adversarial otherwise.
    #[arg(long, value_enum)]
    arrival: Option<ArrivalKind>,
    /// Fill the `ms` column with wall time; off by default so reruns are byte-identical.
    #[arg(long)]
    timing: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Generate { kind } => commands::generate(kind),
        Command::Run(args) => commands::run(args),
        Command::Verify(args) => commands::verify(args),
        Command::Audit(args) => commands::audit(args),
        Command::Sweep(args) => commands::sweep(args),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
