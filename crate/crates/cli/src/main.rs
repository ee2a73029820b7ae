//! `wiman`: verification reports and probes over the curve catalog.

mod commands;
mod report;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use rayon::prelude::*;

use commands::CliError;
use report::Report;
use wiman_core::curves::{load_catalog, shipped_catalog, CurveEntry};

#[derive(Parser)]
#[command(name = "wiman", version, about = "Exact checks of automorphism groups of curves of genus 4, 5 and 6")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Catalog file (defaults to the shipped catalog)
    #[arg(long, global = true)]
    catalog: Option<PathBuf>,
    /// Seed for moduli instantiation and random charts
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    /// Machine-readable output
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads for per-entry work
    #[arg(long, global = true)]
    jobs: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Verify catalog entries
    Verify {
        /// Restrict to these entries (repeatable)
        #[arg(long)]
        entry: Vec<String>,
    },
    /// Admissible cyclic group data for a genus
    Zeuthen {
        #[arg(long)]
        genus: u64,
        /// Largest cyclic order (default 4p + 2)
        #[arg(long)]
        max_n: Option<u64>,
        #[arg(long)]
        primes_only: bool,
    },
    /// Characteristic numbers of the genus-4 space sextic
    Chars {
        #[arg(long, allow_hyphen_values = true)]
        theta: i64,
        #[arg(long, allow_hyphen_values = true)]
        delta: i64,
    },
    /// Degenerate members of a net of quadrics
    Delta5 {
        #[arg(long)]
        entry: String,
    },
    /// Finite-field evidence: point counts, singularity search and fixed counts
    Probe {
        #[arg(long)]
        entry: String,
        /// Prime to reduce at (default: 241 and 601)
        #[arg(long)]
        prime: Option<u64>,
        /// Largest extension degree for fixed counts
        #[arg(long, default_value_t = 4)]
        ext: usize,
    },
    /// Closure of the listed generators
    Group {
        #[arg(long)]
        entry: String,
    },
    /// Exact fixed points and cyclic quotients of the listed generators
    Fixed {
        #[arg(long)]
        entry: String,
        #[arg(long)]
        generator: Option<usize>,
    },
}

fn catalog(path: &Option<PathBuf>) -> Result<(String, Vec<CurveEntry>), CliError> {
    match path {
        Some(p) => {
            let bytes = std::fs::read(p).map_err(|e| CliError::Input(format!("{}: {e}", p.display())))?;
            let cat = load_catalog(&bytes).map_err(|e| CliError::Input(e.to_string()))?;
            Ok((p.display().to_string(), cat))
        }
        None => Ok(("shipped".into(), shipped_catalog().map_err(|e| CliError::Input(e.to_string()))?)),
    }
}

fn find(cat: &[CurveEntry], id: &str) -> Result<CurveEntry, CliError> {
    cat.iter().find(|e| e.id == id).cloned().ok_or_else(|| CliError::Input(format!("no entry {id}")))
}

fn verify(cli: &Cli, ids: &[String]) -> Result<(), CliError> {
    let (name, cat) = catalog(&cli.catalog)?;
    let selected: Vec<CurveEntry> = if ids.is_empty() {
        cat
    } else {
        ids.iter().map(|id| find(&cat, id)).collect::<Result<_, _>>()?
    };
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(j) = cli.jobs {
        pool = pool.num_threads(j.max(1));
    }
    let pool = pool.build().map_err(|e| CliError::Input(e.to_string()))?;
    let seed = cli.seed;
    let entries = pool.install(|| selected.par_iter().map(|e| verify::verify_entry(e, seed)).collect());
    let report = Report::new(seed, name, entries);
    commands::emit(cli.json, &report, Report::human);
    match report.exit_code() {
        0 => Ok(()),
        3 => Err(CliError::Resource("a resource cap was hit".into())),
        _ => Err(CliError::Failed),
    }
}

fn run(cli: &Cli) -> Result<(), CliError> {
    let entry = |id: &str| -> Result<CurveEntry, CliError> { find(&catalog(&cli.catalog)?.1, id) };
    match &cli.command {
        Command::Verify { entry } => verify(cli, entry),
        Command::Zeuthen { genus, max_n, primes_only } => commands::zeuthen(*genus, *max_n, *primes_only, cli.json),
        Command::Chars { theta, delta } => commands::chars(*theta, *delta, cli.json),
        Command::Delta5 { entry: id } => commands::delta5_cmd(&entry(id)?, cli.seed, cli.json),
        Command::Probe { entry: id, prime, ext } => commands::probe(&entry(id)?, *prime, *ext, cli.seed, cli.json),
        Command::Group { entry: id } => commands::group(&entry(id)?, cli.seed, cli.json),
        Command::Fixed { entry: id, generator } => commands::fixed(&entry(id)?, *generator, cli.seed, cli.json),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            if !matches!(e, CliError::Failed) {
                eprintln!("error: {e}");
            }
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
