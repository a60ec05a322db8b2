use std::fs;
use std::path::Path;
use std::process::Command;

use hetcache::analytic::Scheme;
use hetcache::experiments::{
    evaluate, parse_config, run, run_config, AxisVariable, ConfigRequest, Engines, ExperimentSpec, ResultTable, Row,
};
use hetcache::montecarlo::Metric;

fn cli(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_hetcache")).args(args).output().unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn table_survives_a_csv_round_trip() {
    let table = ResultTable {
        rows: vec![
            Row {
                axis: 1e8,
                value_analytic: Some(0.545_123_456_789),
                value_mc: Some(0.5478),
                mc_half_width: Some(0.0098),
                n_drops: Some(10_000),
                seed: Some(7),
            },
            Row {
                axis: 1e9,
                value_analytic: None,
                value_mc: Some(0.0),
                mc_half_width: Some(0.0),
                n_drops: Some(10_000),
                seed: Some(7),
            },
        ],
    };
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("nested/out.csv");
    table.write_csv(&path).unwrap();
    assert_eq!(ResultTable::read_csv(&path).unwrap(), table);
}

#[test]
fn seeded_reruns_write_identical_bytes() {
    let dir = tempfile::tempdir().unwrap();
    let mut spec = ExperimentSpec::new(
        "success",
        Metric::Success,
        Scheme::MaxRate,
        AxisVariable::RateThreshold,
        vec![1e7, 1e8, 1e9],
    );
    spec.engines = Engines::BOTH;
    spec.n_drops = 2_000;
    spec.seed = Some(99);
    spec.output = dir.path().join("a.csv");
    run(&spec).unwrap();
    spec.output = dir.path().join("b.csv");
    run(&spec).unwrap();
    assert_eq!(fs::read(dir.path().join("a.csv")).unwrap(), fs::read(dir.path().join("b.csv")).unwrap());
}

#[test]
fn single_point_sweep_fills_both_columns() {
    let mut spec = ExperimentSpec::new(
        "one",
        Metric::Coverage {
            tier: hetcache::model::Tier::Macro,
            file: 1,
        },
        Scheme::MaxRp,
        AxisVariable::TauDb,
        vec![0.0],
    );
    spec.engines = Engines::BOTH;
    spec.n_drops = 20_000;
    spec.seed = Some(1);
    let table = evaluate(&spec).unwrap();
    assert_eq!(table.rows.len(), 1);
    let row = &table.rows[0];
    let (a, m, hw) = (row.value_analytic.unwrap(), row.value_mc.unwrap(), row.mc_half_width.unwrap());
    assert!((a - 0.5601).abs() < 1e-3);
    assert!((a - m).abs() < hw + 0.01);
}

#[test]
fn invalid_sweeps_are_rejected() {
    let mut spec = ExperimentSpec::new("bad", Metric::Success, Scheme::MaxRp, AxisVariable::RateThreshold, vec![1e8, 1e7]);
    assert!(spec.validate().is_err());
    spec.values = vec![1e7, 1e8];
    spec.engines = Engines::MONTECARLO;
    assert!(spec.validate().is_err(), "Monte Carlo needs a seed");
    spec.seed = Some(0);
    assert!(spec.validate().is_ok());
    spec.axis = AxisVariable::TauDb;
    assert!(spec.validate().is_err());
}

#[test]
fn config_files_parse_into_sweeps_and_presets() {
    let sweep = parse_config(
        r#"
[pico]
density = 30.0

[experiment]
name = "pico_cov"
metric = "coverage"
tier = 2
axis = "tau_db"
values = [-10.0, 0.0, 10.0]
"#,
    )
    .unwrap();
    match sweep {
        ConfigRequest::Sweep(spec) => {
            assert_eq!(spec.model.pico.density, 30.0);
            assert_eq!(spec.values.len(), 3);
        }
        other => panic!("{other:?}"),
    }
    let preset = parse_config("[experiment]\npreset = \"fig_ase\"\n").unwrap();
    assert!(matches!(preset, ConfigRequest::Preset { ref name, .. } if name == "fig_ase"));
    assert!(parse_config("[experiment]\npreset = \"fig_nothing\"\n").is_err());
    assert!(parse_config("[pico]\ndensty = 3.0\n[experiment]\npreset = \"fig_ase\"\n").is_err());
    assert!(parse_config("[pico]\ndensity = 3.0\n").is_err());
}

#[test]
fn run_config_writes_the_requested_csv() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("ase.csv");
    let config = write(
        dir.path(),
        "ase.toml",
        &format!(
            "[experiment]\nmetric = \"ase\"\nscheme = \"max_rate\"\naxis = \"rate_threshold\"\nvalues = [1e8, 1e9]\noutput = {:?}\n",
            out.to_string_lossy()
        ),
    );
    let written = run_config(Path::new(&config)).unwrap();
    assert_eq!(written, vec![out.clone()]);
    let table = ResultTable::read_csv(&out).unwrap();
    assert!(table.rows.iter().all(|r| r.value_analytic.unwrap() > 0.0 && r.value_mc.is_none()));
}

#[test]
fn cli_reports_errors_with_nonzero_exit() {
    let out = cli(&["preset", "fig_nothing"]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("hetcache:"));

    let dir = tempfile::tempdir().unwrap();
    let out_dir = dir.path().join("x");
    let out = cli(&["preset", "fig_coverage", "--engine", "mc", "--out", out_dir.to_str().unwrap()]);
    assert!(!out.status.success(), "Monte Carlo without a seed must fail");

    let bad = write(dir.path(), "bad.toml", "[macro]\ndensity = -1.0\n[experiment]\npreset = \"fig_ase\"\n");
    let out = cli(&["validate", &bad]);
    assert!(!out.status.success());
    assert!(!String::from_utf8_lossy(&out.stderr).trim().is_empty());

    let out = cli(&["run", dir.path().join("missing.toml").to_str().unwrap()]);
    assert!(!out.status.success());
}

#[test]
fn cli_validates_and_runs_a_config() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("carrier.csv");
    let config = write(
        dir.path(),
        "carrier.toml",
        &format!(
            "[experiment]\nmetric = \"success\"\naxis = \"carrier\"\nvalues = [28.0, 73.0]\nrate_threshold = 1e9\noutput = {:?}\n",
            csv.to_string_lossy()
        ),
    );
    let out = cli(&["validate", &config]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(String::from_utf8_lossy(&out.stdout).contains("ok"));
    let out = cli(&["run", &config]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(ResultTable::read_csv(&csv).unwrap().rows.len(), 2);
}

#[test]
fn cli_preset_writes_one_csv_per_curve() {
    let dir = tempfile::tempdir().unwrap();
    let out_dir = dir.path().join("success");
    let out = cli(&["preset", "fig_success", "--out", out_dir.to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let mut files: Vec<_> = fs::read_dir(&out_dir).unwrap().map(|e| e.unwrap().file_name()).collect();
    files.sort();
    assert_eq!(files, ["max_rate.csv", "max_rp.csv"]);
}
