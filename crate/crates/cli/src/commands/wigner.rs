//! `wigner`: renders the reduced field state of a quench as Wigner
//! functions — either at explicitly requested times or at the auto-located
//! early/dip/revival instants of the survival signal — all on one shared
//! grid together with the initial vacuum.

use rabisim::phase_space::{wigner_overlap, GridSpec, SnapshotLabel, SnapshotSet};
use serde_json::json;

use crate::config::FileConfig;
use crate::output::{create, write_json};
use crate::CliError;

fn label_name(label: SnapshotLabel) -> &'static str {
    match label {
        SnapshotLabel::Early => "early",
        SnapshotLabel::Dip => "dip",
        SnapshotLabel::Revival => "revival",
        SnapshotLabel::Requested => "requested",
    }
}

/// Checks the snapshot request before any heavy work so that bad input is
/// reported as a configuration error.
fn validate_request(
    times: Option<&[f64]>,
    horizon: f64,
    grid_points: usize,
) -> Result<(), CliError> {
    if grid_points < 2 {
        return Err(CliError::Config(format!(
            "phase-space grid needs at least 2 points per axis, got {grid_points}"
        )));
    }
    match times {
        Some([]) => Err(CliError::Config("empty grid: snapshot times".into())),
        Some(ts) => match ts.iter().find(|t| !t.is_finite() || **t < 0.0) {
            Some(bad) => {
                Err(CliError::Config(format!("snapshot times must be finite and ≥ 0, got {bad}")))
            }
            None => Ok(()),
        },
        None if !(horizon > 0.0) || !horizon.is_finite() => Err(CliError::Config(format!(
            "scan horizon must be positive and finite, got {horizon}"
        ))),
        None => Ok(()),
    }
}

/// Shared renderer used by both `wigner` and `quench --snapshots`: computes
/// the snapshot set, writes one CSV per state (vacuum included) under
/// `prefix`, and returns the report fragment describing them.
pub fn render_snapshots(
    cfg: &FileConfig,
    echo: &serde_json::Value,
    times: Option<&[f64]>,
    horizon: f64,
    grid_points: usize,
    prefix: &str,
) -> Result<serde_json::Value, CliError> {
    validate_request(times, horizon, grid_points)?;
    let spec = GridSpec {
        q_points: grid_points,
        p_points: grid_points,
        q_range: None,
        p_range: None,
    };
    let set: SnapshotSet = rabisim::phase_space::wigner_snapshots(&cfg.model, times, horizon, &spec)?;

    let vacuum_file = format!("{prefix}_vacuum.csv");
    {
        let extra = json!({ "label": "vacuum", "time": 0.0, "config": echo });
        let mut out = create(&cfg.output.dir.join(&vacuum_file))?;
        set.vacuum.export_csv(Some(&extra), &mut out)?;
    }

    let mut described = Vec::with_capacity(set.snapshots.len());
    for (i, snap) in set.snapshots.iter().enumerate() {
        let file = match snap.label {
            SnapshotLabel::Requested => format!("{prefix}_t{i}.csv"),
            label => format!("{prefix}_{}.csv", label_name(label)),
        };
        // Cross-check the phase-space form of the field survival.
        let vacuum_overlap = wigner_overlap(&snap.grid, &set.vacuum)?;
        let extra = json!({
            "label": label_name(snap.label),
            "time": snap.time,
            "survival": snap.survival,
            "qubit_survival": snap.qubit_survival,
            "field_survival": snap.field_survival,
            "vacuum_overlap": vacuum_overlap,
            "config": echo,
        });
        let mut out = create(&cfg.output.dir.join(&file))?;
        snap.grid.export_csv(Some(&extra), &mut out)?;

        described.push(json!({
            "file": file,
            "time": snap.time,
            "label": label_name(snap.label),
            "survival": snap.survival,
            "qubit_survival": snap.qubit_survival,
            "field_survival": snap.field_survival,
            "vacuum_overlap": vacuum_overlap,
            "tail_warning": snap.grid.tail_warning,
        }));
    }

    Ok(json!({
        "n_max": set.n_max,
        "instants": set.instants.map(|w| json!({
            "early": w.early,
            "dip": w.dip,
            "revival": w.revival,
        })),
        "vacuum_file": vacuum_file,
        "snapshots": described,
    }))
}

pub fn run(cfg: &FileConfig) -> Result<usize, CliError> {
    let echo = cfg.echo("wigner", serde_json::to_value(&cfg.wigner).unwrap());
    let fragment = render_snapshots(
        cfg,
        &echo,
        cfg.wigner.times.as_deref(),
        cfg.wigner.horizon,
        cfg.wigner.grid_points,
        "wigner",
    )?;
    let report = json!({ "config": echo, "wigner": fragment });
    write_json(&cfg.output.dir.join("wigner_report.json"), &report)?;
    Ok(0)
}
