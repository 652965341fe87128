//! `quench`: evolves the qubit-vacuum product state under the post-quench
//! Hamiltonian and records the observable time series (survivals, Bloch
//! vector, field quadratures, purity) plus spectral infinite-time averages.

use rabisim::quench::{linear_times, log_times, quench_record};
use serde_json::json;

use crate::config::FileConfig;
use crate::output::{create, write_json};
use crate::CliError;

pub fn run(cfg: &FileConfig) -> Result<usize, CliError> {
    let q = &cfg.quench;
    if q.t_points < 2 {
        return Err(CliError::Config(format!(
            "time grid needs at least 2 points, got {}",
            q.t_points
        )));
    }
    if !q.t_min.is_finite() || !q.t_max.is_finite() || q.t_max <= q.t_min {
        return Err(CliError::Config(format!(
            "time window [{}, {}] is not finite and increasing",
            q.t_min, q.t_max
        )));
    }
    if q.log_times && q.t_min <= 0.0 {
        return Err(CliError::Config(format!(
            "logarithmic time grid requires t_min > 0, got {}",
            q.t_min
        )));
    }

    let echo = cfg.echo("quench", serde_json::to_value(q).unwrap());
    let times = if q.log_times {
        log_times(q.t_min, q.t_max, q.t_points)
    } else {
        linear_times(q.t_min, q.t_max, q.t_points)
    };

    let record = quench_record(&cfg.model, &times)?;

    let series = cfg.output.dir.join("quench_series.csv");
    {
        let mut out = create(&series)?;
        use std::io::Write;
        writeln!(out, "# {echo}")
            .map_err(|e| CliError::Run(format!("{}: {e}", series.display())))?;
        record.export_csv(&mut out)?;
    }

    let report = json!({
        "config": echo,
        "n_max": record.n_max,
        "solver_residual": record.solver_residual,
        "max_tail_weight": record.max_tail_weight,
        "averages": record.averages,
    });

    if q.snapshots {
        let fragment = super::wigner::render_snapshots(
            cfg,
            &echo,
            None,
            q.horizon,
            q.grid_points,
            "quench_wigner",
        )?;
        let mut report = report;
        report["wigner"] = fragment;
        write_json(&cfg.output.dir.join("quench_averages.json"), &report)?;
    } else {
        write_json(&cfg.output.dir.join("quench_averages.json"), &report)?;
    }
    Ok(0)
}
