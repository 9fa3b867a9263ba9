//! Command-line front end: experiment sweeps, dataset approximation and
//! rate fitting, all reading and writing CSV.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use mls_vsdk::config::{ApproximateConfig, ExperimentConfig};
use mls_vsdk::error::Error;
use mls_vsdk::experiments::{
    fit_rate_levels, fit_rate_n_levels, infer_dim, read_level_rows, run_experiment,
};
use mls_vsdk::geometry::{uniform_nodes, DomainBox, NodeSet};
use mls_vsdk::io::{read_nodes, write_nodes_file};
use mls_vsdk::mls::{MlsConfig, MlsEngine, PolynomialBasis};

#[derive(Parser)]
#[command(name = "mls-vsdk", version, about = "Moving least squares with discontinuity-scaled weights")]
struct Cli {
    /// Worker threads for per-point solves (0 = auto).
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a refinement sweep and write its report CSV.
    Experiment(ExperimentArgs),
    /// Approximate a sampled node CSV on a grid or point list.
    Approximate(ApproximateArgs),
    /// Fit convergence rates from a report CSV.
    Rate(RateArgs),
}

#[derive(Args)]
struct ExperimentArgs {
    /// Experiment config file (TOML).
    #[arg(short, long)]
    config: PathBuf,
    /// Output report CSV.
    #[arg(short, long)]
    output: PathBuf,
    /// Config overrides, `key=value`.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    set: Vec<String>,
    /// Overrides the config's seed.
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Args)]
struct ApproximateArgs {
    /// Node CSV with a value column.
    #[arg(short, long)]
    nodes: PathBuf,
    /// Approximation config file (TOML).
    #[arg(short, long)]
    config: PathBuf,
    /// Evaluation points: `grid:lo,hi,count[;lo,hi,count...]` or a CSV path.
    #[arg(short, long)]
    grid: String,
    /// Output CSV.
    #[arg(short, long)]
    output: PathBuf,
}

#[derive(Args)]
struct RateArgs {
    /// Report CSV produced by the experiment command.
    #[arg(short, long)]
    report: PathBuf,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.threads > 0 {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(cli.threads)
            .build_global()
        {
            eprintln!("error: failed to configure thread pool: {e}");
            return ExitCode::from(1);
        }
    }
    let result = match cli.command {
        Command::Experiment(args) => cmd_experiment(args),
        Command::Approximate(args) => cmd_approximate(args),
        Command::Rate(args) => cmd_rate(args),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn cmd_experiment(args: ExperimentArgs) -> Result<u8, Error> {
    let text = std::fs::read_to_string(&args.config)?;
    let mut cfg = ExperimentConfig::parse(&text)?;
    for kv in &args.set {
        let (key, value) = kv
            .split_once('=')
            .ok_or_else(|| Error::Config(format!("override {kv:?} is not key=value")))?;
        cfg.apply_override(key.trim(), value.trim())?;
    }
    if let Some(seed) = args.seed {
        cfg.seed = seed;
    }
    let spec = cfg.to_spec()?;
    let report = run_experiment(&spec)?;
    report.write_csv_file(&args.output)?;
    for f in &report.failed {
        eprintln!(
            "warning: level {} (N = {}) skipped: {}",
            f.level, f.n_nodes, f.reason
        );
    }
    Ok(if report.failed.is_empty() { 0 } else { 2 })
}

fn cmd_approximate(args: ApproximateArgs) -> Result<u8, Error> {
    let nodes = read_nodes(std::fs::File::open(&args.nodes)?)?;
    if nodes.values().is_none() {
        return Err(Error::invalid("node CSV needs a value column"));
    }
    let text = std::fs::read_to_string(&args.config)?;
    let cfg = ApproximateConfig::parse(&text)?;

    let weight = cfg.weight_spec()?;
    let basis = PolynomialBasis::new(nodes.dim(), cfg.degree)?;
    let default_n = 2 * basis.size();
    let mut mls = MlsConfig::new(basis, weight)
        .with_stencil_size(cfg.stencil_size.unwrap_or(default_n));
    mls.scale_fn = cfg.scale_fn()?;

    let eval = parse_grid_spec(&args.grid, nodes.dim())?;
    let engine = MlsEngine::new(&mls, &nodes)?;
    let values = engine.evaluate_many(eval.points())?;
    let out = NodeSet::new(eval.dim(), eval.points().to_vec())?.with_values(values)?;
    write_nodes_file(&out, &args.output)?;
    Ok(0)
}

fn parse_grid_spec(spec: &str, dim: usize) -> Result<NodeSet, Error> {
    if let Some(rest) = spec.strip_prefix("grid:") {
        let mut lower = Vec::new();
        let mut upper = Vec::new();
        let mut counts = Vec::new();
        for axis in rest.split(';') {
            let parts: Vec<&str> = axis.split(',').collect();
            if parts.len() != 3 {
                return Err(Error::invalid(format!(
                    "grid axis {axis:?} is not lo,hi,count"
                )));
            }
            lower.push(parts[0].trim().parse().map_err(|_| {
                Error::invalid(format!("bad grid bound {:?}", parts[0]))
            })?);
            upper.push(parts[1].trim().parse().map_err(|_| {
                Error::invalid(format!("bad grid bound {:?}", parts[1]))
            })?);
            counts.push(parts[2].trim().parse().map_err(|_| {
                Error::invalid(format!("bad grid count {:?}", parts[2]))
            })?);
        }
        if lower.len() != dim {
            return Err(Error::invalid(format!(
                "grid spec has {} axes, node set has dimension {}",
                lower.len(),
                dim
            )));
        }
        uniform_nodes(&DomainBox::new(lower, upper)?, &counts)
    } else {
        let pts = read_nodes(std::fs::File::open(Path::new(spec))?)?;
        if pts.dim() != dim {
            return Err(Error::invalid(format!(
                "evaluation points have dimension {}, node set has {}",
                pts.dim(),
                dim
            )));
        }
        Ok(pts)
    }
}

fn cmd_rate(args: RateArgs) -> Result<u8, Error> {
    let rows = read_level_rows(std::fs::File::open(&args.report)?)?;
    let rate_h = fit_rate_levels(&rows)?;
    let dim = infer_dim(&rows).unwrap_or(1);
    let rate_n = fit_rate_n_levels(&rows, dim)?;
    println!("rate_h={}", format_rate(rate_h));
    println!("rate_n={}", format_rate(rate_n));
    Ok(0)
}

fn format_rate(v: f64) -> String {
    format!("{v:.6}")
}
