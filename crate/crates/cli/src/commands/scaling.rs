//! `scaling`: P̄ and P̄_q of the vacuum quench across system sizes R. The
//! released qubit fraction 1 − P̄_q is the column that decays toward the
//! classical limit.

use rabisim::quench::size_scaling_study;
use serde_json::json;

use crate::config::FileConfig;
use crate::output::{fmt, write_csv, write_json};
use crate::CliError;

pub fn run(cfg: &FileConfig) -> Result<usize, CliError> {
    let rs = &cfg.scaling.r_values;
    if rs.is_empty() {
        return Err(CliError::Config("empty grid: scaling sizes".into()));
    }
    if rs.windows(2).any(|w| w[0] >= w[1]) {
        return Err(CliError::Config("R list must be strictly ascending".into()));
    }
    if rs[0] < 1.0 || !rs.iter().all(|r| r.is_finite()) {
        return Err(CliError::Config("every R must be finite and ≥ 1".into()));
    }

    let echo = cfg.echo("scaling", serde_json::to_value(&cfg.scaling).unwrap());
    let points = size_scaling_study(&cfg.model, rs)?;

    let rows = points.iter().map(|p| {
        format!(
            "{},{},{},{}",
            fmt(p.r),
            fmt(p.survival),
            fmt(p.qubit_survival),
            fmt(1.0 - p.qubit_survival),
        )
    });
    write_csv(
        &cfg.output.dir.join("scaling.csv"),
        &echo,
        "r,pbar,pbar_qubit,qubit_release",
        rows,
    )?;

    let report = json!({
        "config": echo,
        "points": points
            .iter()
            .map(|p| json!({
                "r": p.r,
                "pbar": p.survival,
                "pbar_qubit": p.qubit_survival,
                "qubit_release": 1.0 - p.qubit_survival,
            }))
            .collect::<Vec<_>>(),
    });
    write_json(&cfg.output.dir.join("scaling_report.json"), &report)?;
    Ok(0)
}
