mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use frustra::solver::SolverConfig;

/// Frustration index analysis of signed graphs.
#[derive(Parser, Debug)]
#[command(name = "frustra", version, about)]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Wall-clock limit per solve, in seconds.
    #[arg(long, global = true, value_name = "SECONDS")]
    pub time_limit: Option<f64>,
    /// Stop once (upper - lower) / upper is at most this value.
    #[arg(long, global = true, default_value_t = 0.0)]
    pub gap: f64,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Local-search restarts used for incumbents.
    #[arg(long, global = true, default_value_t = 32)]
    pub restarts: usize,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Worker threads (default: available parallelism).
    #[arg(long, global = true, env = "FRUSTRA_WORKERS")]
    pub workers: Option<usize>,
}

impl Common {
    pub fn solver_config(&self) -> anyhow::Result<SolverConfig> {
        let time_limit = match self.time_limit {
            Some(t) if !(t >= 0.0 && t.is_finite()) => anyhow::bail!("--time-limit must be a non-negative number of seconds"),
            Some(t) => Some(Duration::from_secs_f64(t)),
            None => None,
        };
        let cfg = SolverConfig {
            time_limit,
            target_gap: self.gap,
            seed: self.seed,
            heuristic_restarts: self.restarts,
        };
        cfg.validate()?;
        Ok(cfg)
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Solve one graph and report L, F, H and the spectral indices.
    Analyze { graph: PathBuf },
    /// Z score against sign-reshuffled copies of the graph.
    Zscore {
        graph: PathBuf,
        #[arg(long, default_value_t = 500)]
        runs: usize,
        #[arg(long, value_enum, default_value_t = Mode::Exact)]
        mode: Mode,
    },
    /// Optimal two-group partition and its frustrated edges.
    Partition {
        graph: PathBuf,
        /// Side file of `node group` lines to compare the partition against.
        #[arg(long)]
        labels: Option<PathBuf>,
    },
    /// Threshold correlation matrices into signed networks and classify them.
    Portfolio {
        /// CSV files, or directories of `.csv` files.
        #[arg(required = true)]
        inputs: Vec<PathBuf>,
        #[arg(long, default_value_t = 0.2)]
        threshold: f64,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Frustration over a series of frames (directory or `label path` manifest).
    Series { input: PathBuf },
    /// Frustration statistics over random-coupling lattices.
    Ising {
        #[arg(long, required_unless_present = "hypercube", conflicts_with = "hypercube")]
        dim: Option<usize>,
        #[arg(long, requires = "dim")]
        side: Option<usize>,
        /// Hypercube dimension, instead of --dim/--side.
        #[arg(long)]
        hypercube: Option<usize>,
        /// Negative-edge fractions, comma separated.
        #[arg(long = "neg", value_delimiter = ',', default_value = "0.5")]
        negative_fractions: Vec<f64>,
        #[arg(long, default_value_t = 10)]
        instances: usize,
    },
    /// Bipartite edge frustration and spectral bipartivity of unsigned graphs.
    Bipartivity {
        #[arg(required = true)]
        graphs: Vec<PathBuf>,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Exact,
    Bounds,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

/// Exit status: 0 when every value is proven optimal, 2 when some are bounds.
pub enum Outcome {
    Exact,
    Bounds,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(w) = cli.common.workers {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(w).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    match commands::run(&cli) {
        Ok(Outcome::Exact) => ExitCode::SUCCESS,
        Ok(Outcome::Bounds) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
