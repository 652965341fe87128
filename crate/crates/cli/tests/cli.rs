//! End-to-end tests of the `rabisim` binary: exit codes, file layouts,
//! config/flag precedence, and byte-level determinism. All runs use tiny
//! grids and small R so the whole file stays fast.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn run_in(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rabisim"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary should spawn")
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn read(dir: &Path, name: &str) -> String {
    let path = dir.join(name);
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

/// Data rows of a CSV: everything after the `#` comments and the header.
fn data_rows(text: &str) -> Vec<Vec<String>> {
    text.lines()
        .filter(|l| !l.starts_with('#') && !l.is_empty())
        .skip(1)
        .map(|l| l.split(',').map(str::to_owned).collect())
        .collect()
}

fn configs_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("configs")
}

#[test]
fn spectrum_writes_density_esqpt_and_report() {
    let tmp = tempfile::tempdir().unwrap();
    let out = run_in(
        tmp.path(),
        &[
            "spectrum",
            "--lambda-grid",
            "0:1.5:4",
            "--epsilon-grid",
            "-1:0:11",
            "--out",
            "out",
        ],
    );
    assert!(out.status.success(), "{}", stderr(&out));

    let density = read(&tmp.path().join("out"), "spectrum_density.csv");
    assert!(density.starts_with("# {"), "missing config echo");
    let rows = data_rows(&density);
    assert_eq!(rows.len(), 4 * 11);
    assert_eq!(rows[0][0], "0.000000000000e0");

    // The free-field density is exactly 1 strictly inside the band
    // ε ∈ (−1/2, 1/2): λ=0, ε=−0.4 (the edge itself is a step).
    let free: f64 = rows[6][2].parse().unwrap();
    assert!((free - 1.0).abs() < 0.02, "free density {free}");

    let esqpt = read(&tmp.path().join("out"), "spectrum_esqpt.csv");
    assert!(data_rows(&esqpt)
        .iter()
        .any(|r| r[2] == "log_divergence" || r[2] == "downward_step"));

    let report: serde_json::Value =
        serde_json::from_str(&read(&tmp.path().join("out"), "spectrum_report.json")).unwrap();
    assert_eq!(report["failures"].as_array().unwrap().len(), 0);
    assert_eq!(report["config"]["command"], "spectrum");
}

#[test]
fn empty_grid_is_a_config_error() {
    let tmp = tempfile::tempdir().unwrap();
    let out = run_in(tmp.path(), &["spectrum", "--lambda-grid", "0:1:0", "--out", "out"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("empty grid"), "{}", stderr(&out));
}

#[test]
fn unknown_flags_exit_2() {
    let tmp = tempfile::tempdir().unwrap();
    let out = run_in(tmp.path(), &["spectrum", "--no-such-flag"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn phases_requires_stationary_vacuum() {
    let tmp = tempfile::tempdir().unwrap();
    let out = run_in(tmp.path(), &["phases", "--mu", "0.3", "--out", "out"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("stationary"), "{}", stderr(&out));
}

#[test]
fn phases_labels_and_determinant_signs() {
    let tmp = tempfile::tempdir().unwrap();
    let out = run_in(
        tmp.path(),
        &[
            "phases",
            "--lambda-grid",
            "0.4:1.3:3", // λ ∈ {0.4, 0.85, 1.3} against λ_c=0.5, λ_0=1
            "--delta-grid",
            "0.5:0.5:1",
            "--out",
            "out",
        ],
    );
    assert!(out.status.success(), "{}", stderr(&out));

    let rows = data_rows(&read(&tmp.path().join("out"), "phase_diagram.csv"));
    assert_eq!(rows.len(), 3);
    let det: Vec<f64> = rows.iter().map(|r| r[2].parse().unwrap()).collect();
    let labels: Vec<&str> = rows.iter().map(|r| r[3].as_str()).collect();
    assert_eq!(labels, ["N", "S1", "S2"]);
    assert!(det[0] > 0.0 && det[1] < 0.0 && det[2] > 0.0, "{det:?}");
}

#[test]
fn quench_reruns_are_byte_identical() {
    let args = [
        "quench", "--r", "6", "--lambda", "0.75", "--t-max", "5", "--t-points", "11", "--out",
        "out",
    ];
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    assert!(run_in(a.path(), &args).status.success());
    assert!(run_in(b.path(), &args).status.success());
    for name in ["quench_series.csv", "quench_averages.json"] {
        let lhs = read(&a.path().join("out"), name);
        let rhs = read(&b.path().join("out"), name);
        assert_eq!(lhs, rhs, "{name} differs between identical runs");
    }
}

#[test]
fn quench_rejects_bad_time_grids() {
    let tmp = tempfile::tempdir().unwrap();
    let out = run_in(tmp.path(), &["quench", "--t-max", "0", "--out", "out"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run_in(tmp.path(), &["quench", "--log-times", "--t-min", "0", "--out", "out"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("t_min > 0"), "{}", stderr(&out));
}

#[test]
fn wigner_requested_times_and_overlap_cross_check() {
    let tmp = tempfile::tempdir().unwrap();
    let out = run_in(
        tmp.path(),
        &[
            "wigner", "--r", "5", "--times", "0,1", "--grid-points", "41", "--out", "out",
        ],
    );
    assert!(out.status.success(), "{}", stderr(&out));

    let dir = tmp.path().join("out");
    for name in ["wigner_vacuum.csv", "wigner_t0.csv", "wigner_t1.csv"] {
        assert!(dir.join(name).exists(), "missing {name}");
    }
    let report: serde_json::Value =
        serde_json::from_str(&read(&dir, "wigner_report.json")).unwrap();
    let snaps = report["wigner"]["snapshots"].as_array().unwrap();
    assert_eq!(snaps.len(), 2);
    for snap in snaps {
        let overlap = snap["vacuum_overlap"].as_f64().unwrap();
        let survival = snap["field_survival"].as_f64().unwrap();
        assert!(
            (overlap - survival).abs() < 1e-5,
            "phase-space overlap {overlap} vs field survival {survival}"
        );
    }
    assert!((snaps[0]["vacuum_overlap"].as_f64().unwrap() - 1.0).abs() < 1e-5);

    // The matrix dimensions promised by the JSON header hold.
    let csv = read(&dir, "wigner_t0.csv");
    let header: serde_json::Value =
        serde_json::from_str(csv.lines().next().unwrap().trim_start_matches("# ")).unwrap();
    assert_eq!(header["q_points"], 41);
    let matrix_rows = csv.lines().filter(|l| !l.starts_with('#')).count();
    assert_eq!(matrix_rows, 41);
}

#[test]
fn scaling_table_is_consistent() {
    let tmp = tempfile::tempdir().unwrap();
    let out = run_in(
        tmp.path(),
        &["scaling", "--r-values", "3,6", "--lambda", "0.5", "--out", "out"],
    );
    assert!(out.status.success(), "{}", stderr(&out));
    let rows = data_rows(&read(&tmp.path().join("out"), "scaling.csv"));
    assert_eq!(rows.len(), 2);
    for row in &rows {
        let pq: f64 = row[2].parse().unwrap();
        let release: f64 = row[3].parse().unwrap();
        assert!((pq + release - 1.0).abs() < 1e-12);
    }

    let out = run_in(tmp.path(), &["scaling", "--r-values", "6,3", "--out", "out"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn config_file_drives_run_and_flags_override() {
    let tmp = tempfile::tempdir().unwrap();
    std::fs::write(
        tmp.path().join("run.toml"),
        "[model]\nr = 5\nlambda = 0.4\n\n[output]\ndir = \"from_file\"\n\n\
         [quench]\nt_max = 2.0\nt_points = 5\n",
    )
    .unwrap();

    let out = run_in(
        tmp.path(),
        &["quench", "--config", "run.toml", "--lambda", "0.9"],
    );
    assert!(out.status.success(), "{}", stderr(&out));
    let series = read(&tmp.path().join("from_file"), "quench_series.csv");
    let echo: serde_json::Value =
        serde_json::from_str(series.lines().next().unwrap().trim_start_matches("# ")).unwrap();
    assert_eq!(echo["model"]["lambda"], 0.9, "flag must beat file");
    assert_eq!(echo["model"]["r"], 5.0, "file value must survive");
    assert_eq!(data_rows(&series).len(), 5);

    // Unknown keys anywhere in the file are rejected before any work.
    std::fs::write(tmp.path().join("bad.toml"), "[model]\nlambad = 0.4\n").unwrap();
    let out = run_in(tmp.path(), &["quench", "--config", "bad.toml"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn sweep_window_zero_copies_raw_into_smoothed() {
    let tmp = tempfile::tempdir().unwrap();
    let out = run_in(
        tmp.path(),
        &[
            "sweep", "--r", "5", "--lambda-grid", "0.3:0.9:3", "--window", "0", "--out", "out",
        ],
    );
    assert!(out.status.success(), "{}", stderr(&out));
    let rows = data_rows(&read(&tmp.path().join("out"), "sweep.csv"));
    assert_eq!(rows.len(), 3);
    for row in &rows {
        assert_eq!(&row[2..6], &row[8..12], "smoothed must equal raw at window 0");
    }
}

#[test]
fn sweep_smoothing_mixes_neighbours() {
    let tmp = tempfile::tempdir().unwrap();
    let out = run_in(
        tmp.path(),
        &[
            "sweep", "--r", "5", "--lambda-grid", "0.3:0.9:3", "--window", "1", "--out", "out",
        ],
    );
    assert!(out.status.success(), "{}", stderr(&out));
    let rows = data_rows(&read(&tmp.path().join("out"), "sweep.csv"));
    let raw: f64 = rows[1][2].parse().unwrap();
    let smooth: f64 = rows[1][8].parse().unwrap();
    let mean = (rows[0][2].parse::<f64>().unwrap()
        + raw
        + rows[2][2].parse::<f64>().unwrap())
        / 3.0;
    assert!((smooth - mean).abs() < 1e-12, "window-1 average should be the 3-point mean");
}

/// Every golden config parses and drives its subcommand (grids shrunk and
/// R lowered through flag overrides to keep the runs small).
#[test]
fn golden_configs_drive_runs() {
    let configs = configs_dir();
    let cases: &[(&str, &[&str])] = &[
        ("spectrum", &["--lambda-grid", "0:0.75:2", "--epsilon-grid", "-0.6:-0.4:3"]),
        ("phases", &["--lambda-grid", "0:1:3", "--delta-grid", "-1:1:3"]),
        ("quench", &["--r", "4", "--t-max", "2", "--t-points", "5"]),
        (
            "sweep",
            &["--r", "4", "--lambda-grid", "0.3:0.9:2", "--delta-grid", "-0.5:0.5:2"],
        ),
        ("wigner", &["--r", "4", "--times", "0,0.5", "--grid-points", "31"]),
        ("scaling", &["--r-values", "2,4", "--lambda", "0.4"]),
    ];
    for (name, extra) in cases {
        let tmp = tempfile::tempdir().unwrap();
        let config = configs.join(format!("{name}.toml"));
        let mut args = vec![*name, "--config", config.to_str().unwrap(), "--out", "out"];
        args.extend_from_slice(extra);
        let out = run_in(tmp.path(), &args);
        assert!(out.status.success(), "{name}: {}", stderr(&out));
        assert!(
            tmp.path().join("out").read_dir().unwrap().count() >= 2,
            "{name} wrote too few files"
        );
    }
}
