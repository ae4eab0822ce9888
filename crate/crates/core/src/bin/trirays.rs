use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use trirays::experiments::{self as ex, load_config, ExperimentConfig, Params, RunContext, RunError, RunResult};

#[derive(Parser)]
#[command(name = "trirays", version, about = "Experiments on meromorphic functions with radially distributed values")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct Common {
    /// JSON config; defaults apply when omitted.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output directory (default: config `out`, else `out/<command>`).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Overrides the config seed.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Worker threads.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Also write SVG plots where available.
    #[arg(long, global = true)]
    svg: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Root scans, rays, Schwarzian, sector limits and growth of the example map.
    VerifyExample1,
    /// Locate a-points of a map in a region.
    Roots,
    /// Compare S(f) against an expected rational function on a grid.
    SchwarzianCheck,
    /// Projective monodromy of the Elfving family.
    Monodromy,
    /// Pólya peak search on a growth sample.
    Peaks,
    /// Minimal covering sectors for seeded unit tuples.
    SectorSearch,
    /// Walk-on-spheres harmonic measure.
    Harmonic,
}

fn run<P: Params>(c: &Common, body: fn(&P, &mut RunContext) -> RunResult<()>) -> RunResult<PathBuf> {
    let mut cfg: ExperimentConfig<P> = load_config(c.config.as_deref())?;
    if let Some(s) = c.seed {
        cfg.seed = s;
    }
    let out = c.out.clone().or_else(|| cfg.out.clone()).unwrap_or_else(|| Path::new("out").join(P::COMMAND));
    cfg.out = None;
    ex::execute(&cfg, &out, c.svg, body)?;
    Ok(out)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let c = &cli.common;
    if let Some(n) = c.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global() {
            eprintln!("{}", RunError::Config(vec![format!("--jobs: {e}")]));
            return ExitCode::from(2);
        }
    }
    let res = match cli.command {
        Command::VerifyExample1 => run(c, ex::verify_example1),
        Command::Roots => run(c, ex::roots),
        Command::SchwarzianCheck => run(c, ex::schwarzian_check),
        Command::Monodromy => run(c, ex::monodromy),
        Command::Peaks => run(c, ex::peaks),
        Command::SectorSearch => run(c, ex::sector_search),
        Command::Harmonic => run(c, ex::harmonic),
    };
    match res {
        Ok(out) => {
            println!("ok: outputs in {}", out.display());
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
