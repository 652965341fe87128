//! `sweep`: infinite-time averages of the quench observables over a λ grid,
//! optionally crossed with a δ grid. Every point gets its own converged
//! Fock cutoff; smoothed companion columns are a moving average along λ.

use rabisim::model::{boson_operator, build_hamiltonian, BosonKind, ModelParams};
use rabisim::quench::{
    field_vacuum_projector, infinite_time_averages, qubit_vacuum_projector, smooth_curve,
};
use rabisim::semiclassics::classify_vacuum_phase;
use rabisim::spectrum::{converged_basis, diagonalize};
use rayon::prelude::*;
use serde_json::json;

use crate::config::FileConfig;
use crate::output::{fmt, write_csv, write_json, Failure};
use crate::CliError;

/// Raw per-point outputs, NaN-filled when the point failed.
struct Point {
    pbar: f64,
    pbar_qubit: f64,
    pbar_field: f64,
    nbar: f64,
    phase: &'static str,
    n_max: usize,
}

fn evaluate(p: &ModelParams) -> rabisim::Result<Point> {
    let p = p.validate()?;
    let (basis, _) = converged_basis(&p)?;
    let h = build_hamiltonian(&p, &basis);
    let eigs = diagonalize(&h, &p, &basis, p.mu == 0.0)?;

    let mut vacuum = vec![0.0; basis.dimension()];
    vacuum[basis.vacuum_index()] = 1.0;
    let projectors =
        [qubit_vacuum_projector(&basis), field_vacuum_projector(&basis)];
    let number = boson_operator(&basis, BosonKind::Number, &p);
    let observables = [&projectors[0], &projectors[1], &number];
    let (pbar, values) = infinite_time_averages(&eigs, &vacuum, &observables)?;

    // The label is well-defined only where the vacuum is stationary.
    let phase = classify_vacuum_phase(&p)
        .map(|v| super::phases::phase_name(v.label))
        .unwrap_or("-");

    Ok(Point {
        pbar,
        pbar_qubit: values[0],
        pbar_field: values[1],
        nbar: values[2],
        phase,
        n_max: basis.n_max,
    })
}

pub fn run(cfg: &FileConfig) -> Result<usize, CliError> {
    let model = cfg.model;
    let lambdas = cfg.sweep.lambda.to_vec()?;
    if lambdas[0] < 0.0 {
        return Err(CliError::Config("lambda grid must be nonnegative".into()));
    }
    let deltas = match cfg.sweep.delta {
        Some(grid) => {
            let d = grid.to_vec()?;
            if d[0] < -1.0 || *d.last().unwrap() > 1.0 {
                return Err(CliError::Config("delta grid leaves [-1, 1]".into()));
            }
            d
        }
        None => vec![model.delta],
    };

    let echo = cfg.echo("sweep", serde_json::to_value(&cfg.sweep).unwrap());

    // δ-major grid, parallel over all points, ordered aggregation.
    let points: Vec<(f64, f64)> = deltas
        .iter()
        .flat_map(|&d| lambdas.iter().map(move |&l| (l, d)))
        .collect();
    let results: Vec<Result<Point, String>> = points
        .par_iter()
        .map(|&(lambda, delta)| {
            evaluate(&ModelParams { lambda, delta, ..model }).map_err(|e| e.to_string())
        })
        .collect();

    let mut failures = Vec::new();
    let nan = Point {
        pbar: f64::NAN,
        pbar_qubit: f64::NAN,
        pbar_field: f64::NAN,
        nbar: f64::NAN,
        phase: "-",
        n_max: 0,
    };
    let resolved: Vec<&Point> = points
        .iter()
        .zip(&results)
        .map(|(&(lambda, delta), result)| match result {
            Ok(point) => point,
            Err(message) => {
                failures.push(Failure {
                    coordinates: vec![lambda, delta],
                    stage: "averages",
                    error: message.clone(),
                });
                &nan
            }
        })
        .collect();

    // Moving average along λ within each δ row.
    let mut smoothed: Vec<[f64; 4]> = Vec::with_capacity(points.len());
    for row in 0..deltas.len() {
        let slice = &resolved[row * lambdas.len()..(row + 1) * lambdas.len()];
        let columns = [
            smooth_curve(&slice.iter().map(|p| p.pbar).collect::<Vec<_>>(), cfg.sweep.window),
            smooth_curve(&slice.iter().map(|p| p.pbar_qubit).collect::<Vec<_>>(), cfg.sweep.window),
            smooth_curve(&slice.iter().map(|p| p.pbar_field).collect::<Vec<_>>(), cfg.sweep.window),
            smooth_curve(&slice.iter().map(|p| p.nbar).collect::<Vec<_>>(), cfg.sweep.window),
        ];
        for k in 0..lambdas.len() {
            smoothed.push([columns[0][k], columns[1][k], columns[2][k], columns[3][k]]);
        }
    }

    let rows = points.iter().enumerate().map(|(i, &(lambda, delta))| {
        let p = resolved[i];
        let s = smoothed[i];
        format!(
            "{},{},{},{},{},{},{},{},{},{},{},{}",
            fmt(lambda),
            fmt(delta),
            fmt(p.pbar),
            fmt(p.pbar_qubit),
            fmt(p.pbar_field),
            fmt(p.nbar),
            p.phase,
            p.n_max,
            fmt(s[0]),
            fmt(s[1]),
            fmt(s[2]),
            fmt(s[3]),
        )
    });
    write_csv(
        &cfg.output.dir.join("sweep.csv"),
        &echo,
        "lambda,delta,pbar,pbar_qubit,pbar_field,nbar,phase,n_max,\
         pbar_smooth,pbar_qubit_smooth,pbar_field_smooth,nbar_smooth",
        rows,
    )?;

    let report = json!({
        "config": echo,
        "lambda_points": lambdas.len(),
        "delta_points": deltas.len(),
        "window": cfg.sweep.window,
        "failures": failures,
    });
    write_json(&cfg.output.dir.join("sweep_report.json"), &report)?;
    Ok(failures.len())
}
