//! `spectrum`: semiclassical level density ρ̄(ε; λ) on the lower branch,
//! the ESQPT borderlines over the λ sweep, and (optionally) the smoothed
//! quantum level density from exact diagonalization.

use rabisim::model::{build_hamiltonian, ModelParams};
use rabisim::semiclassics::{esqpt_critical_lines, semiclassical_level_density, Singularity};
use rabisim::spectrum::{converged_basis, diagonalize, smoothed_level_density};
use rayon::prelude::*;
use serde_json::json;

use super::M_PRIME;
use crate::config::FileConfig;
use crate::output::{fmt, write_csv, write_json, Failure};
use crate::CliError;

pub fn singularity_name(s: Singularity) -> &'static str {
    match s {
        Singularity::None => "none",
        Singularity::UpwardStep => "upward_step",
        Singularity::LogDivergence => "log_divergence",
        Singularity::DownwardStep => "downward_step",
    }
}

pub fn run(cfg: &FileConfig) -> Result<usize, CliError> {
    let lambdas = cfg.spectrum.lambda.to_vec()?;
    let epsilons = cfg.spectrum.epsilon.to_vec()?;
    if lambdas[0] < 0.0 {
        return Err(CliError::Config("lambda grid must be nonnegative".into()));
    }
    if cfg.spectrum.quantum_density && !(cfg.spectrum.kernel_width > 0.0) {
        return Err(CliError::Config(format!(
            "kernel width must be positive, got {}",
            cfg.spectrum.kernel_width
        )));
    }

    let echo = cfg.echo("spectrum", serde_json::to_value(&cfg.spectrum).unwrap());
    let model = cfg.model;
    let mut failures: Vec<Failure> = Vec::new();

    // Semiclassical density, parallel over λ, aggregated in grid order.
    let semi: Vec<Result<Vec<f64>, String>> = lambdas
        .par_iter()
        .map(|&lambda| {
            let p = ModelParams { lambda, ..model };
            semiclassical_level_density(&p, M_PRIME, &epsilons).map_err(|e| e.to_string())
        })
        .collect();

    let mut rows = Vec::with_capacity(lambdas.len() * epsilons.len());
    for (i, result) in semi.iter().enumerate() {
        match result {
            Ok(rho) => {
                for (k, &eps) in epsilons.iter().enumerate() {
                    rows.push(format!("{},{},{}", fmt(lambdas[i]), fmt(eps), fmt(rho[k])));
                }
            }
            Err(message) => {
                failures.push(Failure {
                    coordinates: vec![lambdas[i]],
                    stage: "semiclassical_density",
                    error: message.clone(),
                });
                for &eps in &epsilons {
                    rows.push(format!("{},{},NaN", fmt(lambdas[i]), fmt(eps)));
                }
            }
        }
    }
    write_csv(&cfg.output.dir.join("spectrum_density.csv"), &echo, "lambda,epsilon,rho", rows)?;

    // ESQPT borderlines: every stationary point above the band bottom.
    let esqpt_rows = match esqpt_critical_lines(&model, &lambdas, M_PRIME) {
        Ok(lines) => lines
            .iter()
            .map(|l| {
                format!("{},{},{}", fmt(l.lambda), fmt(l.energy), singularity_name(l.singularity))
            })
            .collect(),
        Err(e) => {
            failures.push(Failure {
                coordinates: Vec::new(),
                stage: "esqpt_lines",
                error: e.to_string(),
            });
            Vec::new()
        }
    };
    write_csv(
        &cfg.output.dir.join("spectrum_esqpt.csv"),
        &echo,
        "lambda,epsilon,signature",
        esqpt_rows,
    )?;

    // Optional quantum route: diagonalize at every λ and smooth the levels.
    let mut cutoffs: Vec<serde_json::Value> = Vec::new();
    if cfg.spectrum.quantum_density {
        let quantum: Vec<Result<(usize, Vec<f64>), String>> = lambdas
            .par_iter()
            .map(|&lambda| {
                let p = ModelParams { lambda, ..model };
                let compute = || -> rabisim::Result<(usize, Vec<f64>)> {
                    let (basis, _) = converged_basis(&p)?;
                    let h = build_hamiltonian(&p, &basis);
                    let eigs = diagonalize(&h, &p, &basis, p.mu == 0.0)?;
                    let density = smoothed_level_density(&eigs, cfg.spectrum.kernel_width)?;
                    Ok((basis.n_max, density.sample(&epsilons)))
                };
                compute().map_err(|e| e.to_string())
            })
            .collect();

        let mut rows = Vec::with_capacity(lambdas.len() * epsilons.len());
        for (i, result) in quantum.iter().enumerate() {
            match result {
                Ok((n_max, rho)) => {
                    cutoffs.push(json!({ "lambda": lambdas[i], "n_max": n_max }));
                    for (k, &eps) in epsilons.iter().enumerate() {
                        rows.push(format!("{},{},{}", fmt(lambdas[i]), fmt(eps), fmt(rho[k])));
                    }
                }
                Err(message) => {
                    failures.push(Failure {
                        coordinates: vec![lambdas[i]],
                        stage: "quantum_density",
                        error: message.clone(),
                    });
                    for &eps in &epsilons {
                        rows.push(format!("{},{},NaN", fmt(lambdas[i]), fmt(eps)));
                    }
                }
            }
        }
        write_csv(
            &cfg.output.dir.join("spectrum_quantum.csv"),
            &echo,
            "lambda,epsilon,rho_quantum",
            rows,
        )?;
    }

    let report = json!({
        "config": echo,
        "lambda_points": lambdas.len(),
        "epsilon_points": epsilons.len(),
        "cutoffs": cutoffs,
        "failures": failures,
    });
    write_json(&cfg.output.dir.join("spectrum_report.json"), &report)?;
    Ok(failures.len())
}
