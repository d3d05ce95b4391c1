use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{anyhow, Context, Result};
use clap::{Args, Parser, Subcommand};

use prbdim_cli::{run_study, Overrides, ScenarioFile, StudyKind};

#[derive(Parser)]
#[command(
    name = "prbdim",
    version,
    about = "PRB dimensioning for users on Poisson line process roads"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analytic and Monte Carlo congestion probability over an M grid.
    Congestion(Common),
    /// Minimal PRB count per throughput and target congestion.
    Dimension(Common),
    /// Congestion under road users versus a spatial PPP with the same mean count.
    Compare(Common),
    /// Per-region dimensioning, plus the whole cell with and without interference.
    Regions(Common),
    /// Runs the study named by `study.kind` in the scenario file.
    Run(Common),
}

#[derive(Args)]
struct Common {
    #[arg(long)]
    scenario: PathBuf,
    /// Replaces `estimator.seed`.
    #[arg(long)]
    seed: Option<u64>,
    /// Output CSV path; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Replaces `estimator.n_realizations`.
    #[arg(long)]
    realizations: Option<usize>,
    /// Worker threads; all cores when absent. Output does not depend on it.
    #[arg(long)]
    threads: Option<usize>,
    #[arg(long)]
    quiet: bool,
}

fn execute(kind: Option<StudyKind>, args: &Common) -> Result<()> {
    let file = ScenarioFile::load(&args.scenario)?;
    let kind = match kind.or(file.study.kind) {
        Some(k) => k,
        None => return Err(anyhow!("study: `run` needs `kind` in the [study] table")),
    };
    if args.realizations == Some(0) {
        return Err(anyhow!("--realizations must be >= 1"));
    }
    let overrides = Overrides {
        seed: args.seed,
        realizations: args.realizations,
    };
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(n) = args.threads {
        if n == 0 {
            return Err(anyhow!("--threads must be >= 1"));
        }
        pool = pool.num_threads(n);
    }
    let pool = pool.build().context("cannot start worker threads")?;

    let start = Instant::now();
    if !args.quiet {
        eprintln!(
            "prbdim: {} study on {}",
            kind.name(),
            args.scenario.display()
        );
    }
    let table = pool.install(|| run_study(&file, kind, overrides))?;
    let csv = table.to_csv()?;
    match &args.out {
        Some(path) => {
            std::fs::write(path, csv).with_context(|| format!("cannot write {}", path.display()))?
        }
        None => print!("{csv}"),
    }
    if !args.quiet {
        let failed = table
            .rows
            .iter()
            .filter(|r| r.last().is_some_and(|s| s != "ok"))
            .count();
        eprintln!(
            "prbdim: {} rows ({} flagged) in {:.1?}",
            table.rows.len(),
            failed,
            start.elapsed()
        );
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (kind, args) = match &cli.command {
        Command::Congestion(a) => (Some(StudyKind::Congestion), a),
        Command::Dimension(a) => (Some(StudyKind::Dimension), a),
        Command::Compare(a) => (Some(StudyKind::Compare), a),
        Command::Regions(a) => (Some(StudyKind::Regions), a),
        Command::Run(a) => (None, a),
    };
    match execute(kind, args) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("prbdim: error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
