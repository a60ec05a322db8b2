//! Runs a sweep described by a config file and prints the resulting table.
//!
//! `cargo run --example run_config -- examples/configs/pico_coverage.toml`

use std::path::PathBuf;

use hetcache::experiments::{load_config, run, ConfigRequest};

fn main() -> hetcache::Result<()> {
    let path = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/configs/pico_coverage.toml")));
    let ConfigRequest::Sweep(mut spec) = load_config(&path)? else {
        eprintln!("{} names a preset; use `hetcache preset` for those", path.display());
        std::process::exit(2);
    };
    spec.output = std::env::temp_dir().join(spec.output.file_name().unwrap_or_default());
    let table = run(&spec)?;
    print!("{}", table.to_csv_string()?);
    eprintln!("written to {}", spec.output.display());
    Ok(())
}
