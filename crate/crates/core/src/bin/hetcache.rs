use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use hetcache::experiments::{load_config, run_config, run_preset, ConfigRequest, Engines, PresetOptions};
use hetcache::model::ModelConfig;

#[derive(Parser)]
#[command(name = "hetcache", version, about = "Coverage, success probability and ASE of cache-enabled mmWave HetNets")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the experiment described by a config file.
    Run { config: PathBuf },
    /// Run a figure preset on the default model.
    Preset {
        name: String,
        /// analytic, mc or both.
        #[arg(long, default_value = "analytic")]
        engine: String,
        #[arg(long)]
        drops: Option<u64>,
        #[arg(long)]
        seed: Option<u64>,
        /// Output directory, one CSV per curve.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a config file without running it.
    Validate { config: PathBuf },
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Run { config } => run_config(&config).map(|paths| {
            for p in paths {
                println!("{}", p.display());
            }
        }),
        Command::Preset { name, engine, drops, seed, out } => Engines::parse(&engine).and_then(|engines| {
            let options = PresetOptions {
                engines,
                n_drops: drops,
                seed,
                out_dir: out.unwrap_or_else(|| PathBuf::from(&name)),
            };
            for (path, _) in run_preset(&name, &ModelConfig::default(), &options)? {
                println!("{}", path.display());
            }
            Ok(())
        }),
        Command::Validate { config } => load_config(&config).and_then(|request| {
            let model = match &request {
                ConfigRequest::Sweep(spec) => &spec.model,
                ConfigRequest::Preset { model, .. } => model,
            };
            for warning in model.build()?.validate()? {
                println!("warning: {warning}");
            }
            println!("ok");
            Ok(())
        }),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("hetcache: {e}");
            ExitCode::FAILURE
        }
    }
}
