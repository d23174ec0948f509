use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;
use zkpoly::nonclassical::{nc_from_ring, nc_to_ring, NCPoly};
use zkpoly::search::{gamma_exact_with, search_space_size, ExactOptions, DEFAULT_BUDGET};
use zkpoly::{gamma_heuristic, k_lift, RingPoly, SearchMode};

mod experiment;
mod record;
mod source;
mod verify;

use record::{frac, write_output, ExperimentRecord};
use source::FnArgs;

#[derive(Debug, Parser)]
#[command(name = "zkpoly", version, about = "Low-degree polynomial approximation over Z/2^k")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Best agreement of a degree-d polynomial over Z/2^k with F_k
    Gamma(GammaArgs),
    /// Sweeps and samples that produce tables
    #[command(subcommand)]
    Experiment(experiment::Experiment),
    /// Exhaustive checks; exit code 1 on failure
    #[command(subcommand)]
    Verify(verify::Verify),
    /// Values of the k-lift of a function
    Lift(LiftArgs),
    /// Convert between ring and non-classical polynomial JSON
    Convert(ConvertArgs),
    /// Write a function's truth table as a BFN1 file
    Table(TableArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Mode {
    Exact,
    Heuristic,
}

#[derive(Debug, clap::Args)]
struct GammaArgs {
    #[command(flatten)]
    f: FnArgs,
    #[arg(long)]
    d: u32,
    #[arg(long, default_value_t = 1)]
    k: u32,
    #[arg(long, value_enum, default_value_t = Mode::Exact)]
    mode: Mode,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Random restarts for the heuristic
    #[arg(long, default_value_t = 16)]
    restarts: u32,
    /// Largest search space the exact mode will enumerate
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u128,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, clap::Args)]
struct LiftArgs {
    #[command(flatten)]
    f: FnArgs,
    #[arg(long, default_value_t = 1)]
    k: u32,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Target {
    Nc,
    Ring,
}

#[derive(Debug, clap::Args)]
struct ConvertArgs {
    /// JSON file holding a ring polynomial (for --to nc) or an NCPoly (for --to ring)
    #[arg(long)]
    input: PathBuf,
    #[arg(long, value_enum)]
    to: Target,
    /// Degree bound of the resulting ring polynomial
    #[arg(long)]
    d: Option<u32>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, clap::Args)]
struct TableArgs {
    #[command(flatten)]
    f: FnArgs,
    #[arg(long)]
    out: PathBuf,
}

fn init_threads() -> anyhow::Result<()> {
    if let Ok(v) = std::env::var("ZKPOLY_THREADS") {
        let threads: usize = v
            .parse()
            .with_context(|| format!("ZKPOLY_THREADS={v:?} is not a number"))?;
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()?;
    }
    Ok(())
}

fn cmd_gamma(a: &GammaArgs) -> anyhow::Result<bool> {
    let started = Instant::now();
    let (f, fn_desc) = source::load(&a.f)?;
    let space = search_space_size(f.n(), a.d, a.k);
    let result = match a.mode {
        Mode::Exact => {
            if space > a.budget.into() {
                bail!(
                    "refusing: search space (2^{})^binom({}, <={}) = {space} exceeds budget {}",
                    a.k,
                    f.n(),
                    a.d,
                    a.budget
                );
            }
            gamma_exact_with(
                &f,
                a.d,
                a.k,
                ExactOptions {
                    budget: a.budget,
                    prefix: None,
                },
            )?
        }
        Mode::Heuristic => gamma_heuristic(&f, a.d, a.k, a.restarts, a.seed)?,
    };
    let rechecked = result.recheck(&f)?;
    let seed = matches!(result.mode, SearchMode::Heuristic).then_some(a.seed);
    let parameters = json!({
        "function": fn_desc, "n": f.n(), "d": a.d, "k": a.k, "mode": result.mode,
        "restarts": seed.map(|_| a.restarts), "budget": a.budget.to_string(),
    });
    let payload = json!({
        "gamma": frac(&result.gamma),
        "lower_bound_only": matches!(result.mode, SearchMode::Heuristic),
        "witness": result.witness,
        "search_space_size": result.search_space_size.to_string(),
        "rechecked": rechecked,
    });
    eprintln!("gamma_{{{},{}}} = {} ({:?})", a.d, a.k, result.gamma, result.mode);
    ExperimentRecord::new("gamma", seed, parameters, payload, started).emit(a.out.as_deref())?;
    Ok(rechecked)
}

fn cmd_lift(a: &LiftArgs) -> anyhow::Result<bool> {
    let started = Instant::now();
    let (f, fn_desc) = source::load(&a.f)?;
    let lifted = k_lift(&f, a.k)?;
    let parameters = json!({ "function": fn_desc, "k": a.k });
    ExperimentRecord::new("lift", None, parameters, serde_json::to_value(&lifted)?, started)
        .emit(a.out.as_deref())?;
    Ok(true)
}

fn cmd_convert(a: &ConvertArgs) -> anyhow::Result<bool> {
    let text = std::fs::read_to_string(&a.input)
        .with_context(|| format!("reading {}", a.input.display()))?;
    let json = match a.to {
        Target::Nc => {
            let p = RingPoly::from_json(&text)?;
            serde_json::to_string(&nc_from_ring(&p)?)?
        }
        Target::Ring => {
            let p: NCPoly = serde_json::from_str(&text)?;
            let d = a.d.unwrap_or_else(|| p.degree());
            nc_to_ring(&p, d)?.to_json()?
        }
    };
    write_output(a.out.as_deref(), (json + "\n").as_bytes())?;
    Ok(true)
}

fn cmd_table(a: &TableArgs) -> anyhow::Result<bool> {
    let (f, _) = source::load(&a.f)?;
    std::fs::write(&a.out, f.to_bytes())?;
    eprintln!("wrote {} ({} variables)", a.out.display(), f.n());
    Ok(true)
}

fn run(cli: &Cli) -> anyhow::Result<bool> {
    init_threads()?;
    match &cli.command {
        Command::Gamma(a) => cmd_gamma(a),
        Command::Experiment(e) => experiment::run(e),
        Command::Verify(v) => verify::run(v),
        Command::Lift(a) => cmd_lift(a),
        Command::Convert(a) => cmd_convert(a),
        Command::Table(a) => cmd_table(a),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
