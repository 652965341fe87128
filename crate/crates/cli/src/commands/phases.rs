//! `phases`: ground-state (vacuum) phase diagram over the (λ, δ) plane.
//! Each point carries det κ(0,0) — the Hessian determinant of the classical
//! energy surface at the origin, whose sign changes draw the boundaries —
//! and the phase label N/S0/S1/S2.

use rabisim::model::ModelParams;
use rabisim::semiclassics::{classify_vacuum_phase, hessian_at, ClassicalPoint, PhaseLabel};
use rayon::prelude::*;
use serde_json::json;

use super::M_PRIME;
use crate::config::FileConfig;
use crate::output::{fmt, write_csv, write_json, Failure};
use crate::CliError;

pub fn phase_name(label: PhaseLabel) -> &'static str {
    match label {
        PhaseLabel::N => "N",
        PhaseLabel::S0 => "S0",
        PhaseLabel::S1 => "S1",
        PhaseLabel::S2 => "S2",
    }
}

pub fn run(cfg: &FileConfig) -> Result<usize, CliError> {
    let model = cfg.model;
    if model.mu != 0.0 && model.gamma != 1.0 {
        return Err(CliError::Config(format!(
            "phase diagram needs a stationary vacuum: mu = 0 or gamma = 1 (got mu={}, gamma={})",
            model.mu, model.gamma
        )));
    }
    let lambdas = cfg.phases.lambda.to_vec()?;
    let deltas = cfg.phases.delta.to_vec()?;
    if lambdas[0] < 0.0 {
        return Err(CliError::Config("lambda grid must be nonnegative".into()));
    }
    if deltas[0] < -1.0 || *deltas.last().unwrap() > 1.0 {
        return Err(CliError::Config("delta grid leaves [-1, 1]".into()));
    }

    let echo = cfg.echo("phases", serde_json::to_value(&cfg.phases).unwrap());

    // δ-major grid order; each point is independent.
    let points: Vec<(f64, f64)> = deltas
        .iter()
        .flat_map(|&d| lambdas.iter().map(move |&l| (l, d)))
        .collect();
    let results: Vec<Result<(f64, &'static str), String>> = points
        .par_iter()
        .map(|&(lambda, delta)| {
            let p = ModelParams { lambda, delta, ..model };
            let det = hessian_at(&p, M_PRIME, ClassicalPoint::new(0.0, 0.0)).determinant();
            classify_vacuum_phase(&p)
                .map(|phase| (det, phase_name(phase.label)))
                .map_err(|e| e.to_string())
        })
        .collect();

    let mut failures = Vec::new();
    let mut counts = std::collections::BTreeMap::new();
    let mut rows = Vec::with_capacity(points.len());
    for (&(lambda, delta), result) in points.iter().zip(&results) {
        match result {
            Ok((det, label)) => {
                *counts.entry(*label).or_insert(0usize) += 1;
                rows.push(format!("{},{},{},{label}", fmt(lambda), fmt(delta), fmt(*det)));
            }
            Err(message) => {
                failures.push(Failure {
                    coordinates: vec![lambda, delta],
                    stage: "classify",
                    error: message.clone(),
                });
                rows.push(format!("{},{},NaN,-", fmt(lambda), fmt(delta)));
            }
        }
    }
    write_csv(
        &cfg.output.dir.join("phase_diagram.csv"),
        &echo,
        "lambda,delta,det_kappa,phase",
        rows,
    )?;

    let report = json!({
        "config": echo,
        "lambda_points": lambdas.len(),
        "delta_points": deltas.len(),
        "phase_counts": counts,
        "failures": failures,
    });
    write_json(&cfg.output.dir.join("phases_report.json"), &report)?;
    Ok(failures.len())
}
