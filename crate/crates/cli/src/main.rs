use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::Parser;

use levy_extremes_cli::{parse_config, run_command, RunError};

/// Simulate first hitting times of subordinate Brownian motions and the
/// statistics of the fastest searchers.
#[derive(Parser, Debug)]
#[command(name = "levy-extremes", version)]
struct Args {
    /// Experiment config (`key = value` per line).
    #[arg(long)]
    config: PathBuf,
    /// Overrides the config's seed.
    #[arg(long)]
    seed: Option<u64>,
    /// Worker threads (default: one per core).
    #[arg(long)]
    threads: Option<usize>,
    /// Overrides the config's output_path.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("info"))
        .format_timestamp(None)
        .init();
    let args = Args::parse();
    match run(args) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => match e.downcast_ref::<RunError>() {
            Some(run) => {
                log::error!("{run}");
                ExitCode::from(run.exit_code() as u8)
            }
            None => {
                log::error!("{e:#}");
                ExitCode::from(1)
            }
        },
    }
}

fn run(args: Args) -> anyhow::Result<()> {
    let text =
        std::fs::read_to_string(&args.config).with_context(|| format!("cannot read {}", args.config.display()))?;
    let mut cfg = parse_config(&text).map_err(RunError::from)?;
    if let Some(seed) = args.seed {
        cfg.set_seed(seed);
    }
    if let Some(out) = args.out {
        cfg.set_output_path(out);
    }
    if let Some(n) = args.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .context("cannot configure the thread pool")?;
    }
    run_command(&cfg)?;
    Ok(())
}
