//! End-to-end quench runs: time series, infinite-time averages, exports,
//! and the two-step protocol that prepares the quench from a frozen stage.

use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{
    build_basis, build_hamiltonian, boson_operator, quasispin_operator, BosonKind, HilbertBasis,
    ModelParams, OperatorMatrix, SpinComponent,
};
use crate::quench::averages::{averaged_expectation, averaged_survival};
use crate::quench::evolve::{evolve, survival_probability, Propagator};
use crate::quench::state::{
    bloch_and_purity, initial_state, subsystem_survivals, tail_weight, QuenchState,
};
use crate::spectrum::convergence::converged_basis;
use crate::spectrum::eigen::diagonalize;
use crate::spectrum::strength::overlap_amplitudes;

/// Scalar infinite-time averages of one quench.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct InfiniteTimeSummary {
    pub survival: f64,
    pub qubit_survival: f64,
    pub field_survival: f64,
    pub jx: f64,
    pub jy: f64,
    pub jz: f64,
    pub n: f64,
    pub q: f64,
    pub p: f64,
}

/// Full observable history of one quench plus its averages and provenance.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct QuenchRecord {
    pub params: ModelParams,
    pub n_max: usize,
    pub times: Vec<f64>,
    pub survival: Vec<f64>,
    pub qubit_survival: Vec<f64>,
    pub field_survival: Vec<f64>,
    pub jx: Vec<f64>,
    pub jy: Vec<f64>,
    pub jz: Vec<f64>,
    pub n: Vec<f64>,
    pub q: Vec<f64>,
    pub p: Vec<f64>,
    /// Normalized qubit purity ℘(t); present only for N = 1.
    pub polarization: Option<Vec<f64>>,
    pub averages: InfiniteTimeSummary,
    /// Largest population found above 0.9·n_max over the sampled times.
    pub max_tail_weight: f64,
    /// ‖HV − VΛ‖_max of the decomposition used.
    pub solver_residual: f64,
}

/// Log-spaced time grid, the default for survival plots (10⁻¹…10⁵, 400 pts).
pub fn log_times(t_min: f64, t_max: f64, count: usize) -> Vec<f64> {
    assert!(t_min > 0.0 && t_max > t_min && count > 1);
    let step = (t_max / t_min).ln() / (count - 1) as f64;
    (0..count).map(|k| t_min * (step * k as f64).exp()).collect()
}

/// Uniform time grid including both endpoints.
pub fn linear_times(t_min: f64, t_max: f64, count: usize) -> Vec<f64> {
    assert!(t_max > t_min && count > 1);
    let step = (t_max - t_min) / (count - 1) as f64;
    (0..count).map(|k| t_min + step * k as f64).collect()
}

const TAIL_LIMIT: f64 = 1e-8;
const TAIL_FRACTION: f64 = 0.9;
const MAX_TAIL_ESCALATIONS: u32 = 3;

/// Projector onto the qubit component of the initial product state.
pub fn qubit_vacuum_projector(basis: &HilbertBasis) -> OperatorMatrix {
    let nf = basis.n_max + 1;
    let diag = (0..basis.dimension()).map(|i| if i < nf { 1.0 } else { 0.0 }).collect();
    OperatorMatrix::diagonal(diag)
}

/// Projector onto the field vacuum.
pub fn field_vacuum_projector(basis: &HilbertBasis) -> OperatorMatrix {
    let nf = basis.n_max + 1;
    let diag = (0..basis.dimension()).map(|i| if i % nf == 0 { 1.0 } else { 0.0 }).collect();
    OperatorMatrix::diagonal(diag)
}

/// Runs the quench of the vacuum product state at the given times.
///
/// The Fock cutoff starts from the certified ground-state value and is
/// escalated if any sampled state leaks weight into the top tenth of the
/// basis. Time series, spectral infinite-time averages, and solver health
/// numbers are returned together.
pub fn quench_record(p: &ModelParams, times: &[f64]) -> Result<QuenchRecord> {
    let (mut basis, _report) = converged_basis(p)?;
    for _ in 0..=MAX_TAIL_ESCALATIONS {
        let h = build_hamiltonian(p, &basis);
        let eigs = diagonalize(&h, p, &basis, p.mu == 0.0)?;
        let s0 = initial_state(&basis);
        let states = evolve(&eigs, &s0, times)?;
        let max_tail = states
            .iter()
            .map(|st| tail_weight(st, &basis, TAIL_FRACTION))
            .fold(0.0f64, f64::max);
        if max_tail > TAIL_LIMIT {
            let bumped = basis.n_max + basis.n_max / 2;
            basis = build_basis(p.j(), bumped);
            continue;
        }

        let jx_op = quasispin_operator(&basis, SpinComponent::X);
        let jy_op = quasispin_operator(&basis, SpinComponent::Y);
        let jz_op = quasispin_operator(&basis, SpinComponent::Z);
        let n_op = boson_operator(&basis, BosonKind::Number, p);
        let q_op = boson_operator(&basis, BosonKind::Position, p);
        let p_op = boson_operator(&basis, BosonKind::Momentum, p);

        let count = states.len();
        let mut record = QuenchRecord {
            params: p.clone(),
            n_max: basis.n_max,
            times: times.to_vec(),
            survival: Vec::with_capacity(count),
            qubit_survival: Vec::with_capacity(count),
            field_survival: Vec::with_capacity(count),
            jx: Vec::with_capacity(count),
            jy: Vec::with_capacity(count),
            jz: Vec::with_capacity(count),
            n: Vec::with_capacity(count),
            q: Vec::with_capacity(count),
            p: Vec::with_capacity(count),
            polarization: (p.n_qubits == 1).then(|| Vec::with_capacity(count)),
            averages: InfiniteTimeSummary {
                survival: 0.0,
                qubit_survival: 0.0,
                field_survival: 0.0,
                jx: 0.0,
                jy: 0.0,
                jz: 0.0,
                n: 0.0,
                q: 0.0,
                p: 0.0,
            },
            max_tail_weight: max_tail,
            solver_residual: eigs.residual_defect(&h),
        };
        for st in &states {
            record.survival.push(survival_probability(&s0, st));
            let (p_q, p_b) = subsystem_survivals(st, &basis);
            record.qubit_survival.push(p_q);
            record.field_survival.push(p_b);
            record.jx.push(jx_op.expectation(&st.coefficients));
            record.jy.push(jy_op.expectation(&st.coefficients));
            record.jz.push(jz_op.expectation(&st.coefficients));
            record.n.push(n_op.expectation(&st.coefficients));
            record.q.push(q_op.expectation(&st.coefficients));
            record.p.push(p_op.expectation(&st.coefficients));
            if let Some(pol) = record.polarization.as_mut() {
                let (_, _, _, polarization) = bloch_and_purity(st, &basis)?;
                pol.push(polarization);
            }
        }

        let initial: Vec<f64> = s0.coefficients.iter().map(|z| z.re).collect();
        let amplitudes = overlap_amplitudes(&eigs, &initial)?;
        let avg = |obs: &OperatorMatrix| averaged_expectation(&eigs, &amplitudes, obs);
        record.averages = InfiniteTimeSummary {
            survival: averaged_survival(&eigs, &amplitudes),
            qubit_survival: avg(&qubit_vacuum_projector(&basis)),
            field_survival: avg(&field_vacuum_projector(&basis)),
            jx: avg(&jx_op),
            jy: avg(&jy_op),
            jz: avg(&jz_op),
            n: avg(&n_op),
            q: avg(&q_op),
            p: avg(&p_op),
        };
        return Ok(record);
    }
    Err(Error::NotConverged {
        n_max: basis.n_max,
        reason: "state keeps leaking into the Fock tail during evolution".into(),
    })
}

impl QuenchRecord {
    /// One row per time point under a `# {json}` provenance header.
    pub fn export_csv(&self, writer: &mut impl Write) -> Result<()> {
        let meta = serde_json::json!({
            "params": self.params,
            "n_max": self.n_max,
            "solver_residual": self.solver_residual,
        });
        writeln!(writer, "# {meta}")?;
        writeln!(writer, "t,P,P_q,P_b,Jx,Jy,Jz,n,q,p,polarization")?;
        for i in 0..self.times.len() {
            let pol = self
                .polarization
                .as_ref()
                .map_or(String::new(), |v| format!("{:.12e}", v[i]));
            writeln!(
                writer,
                "{:.12e},{:.12e},{:.12e},{:.12e},{:.12e},{:.12e},{:.12e},{:.12e},{:.12e},{:.12e},{}",
                self.times[i],
                self.survival[i],
                self.qubit_survival[i],
                self.field_survival[i],
                self.jx[i],
                self.jy[i],
                self.jz[i],
                self.n[i],
                self.q[i],
                self.p[i],
                pol,
            )?;
        }
        Ok(())
    }

    /// Scalar averages and provenance as a JSON sidecar.
    pub fn export_summary_json(&self, writer: &mut impl Write) -> Result<()> {
        let doc = serde_json::json!({
            "params": self.params,
            "n_max": self.n_max,
            "solver_residual": self.solver_residual,
            "max_tail_weight": self.max_tail_weight,
            "averages": self.averages,
        });
        serde_json::to_writer_pretty(&mut *writer, &doc)
            .map_err(|e| Error::Protocol(e.to_string()))?;
        writeln!(writer)?;
        Ok(())
    }
}

/// Two-step preparation: stage 1 holds the system at δ = +1 (where the
/// vacuum product state is an exact eigenstate and stays frozen while λ is
/// ramped), stage 2 jumps to the target δ. Returns the state at the stage
/// boundary, ready to be evolved under the target Hamiltonian.
pub fn two_step_quench(
    p_target: &ModelParams,
    basis: &HilbertBasis,
    stage1_time: f64,
) -> Result<QuenchState> {
    if p_target.mu != 0.0 {
        return Err(Error::Protocol(
            "two-step protocol requires a parity-conserving target (μ = 0)".into(),
        ));
    }
    if p_target.delta == 1.0 {
        return Err(Error::Protocol(
            "target δ = 1 never leaves the frozen stage; nothing to quench".into(),
        ));
    }
    let stage1 = ModelParams { delta: 1.0, ..p_target.clone() }.validate()?;
    let h = build_hamiltonian(&stage1, basis);
    let eigs = diagonalize(&h, &stage1, basis, true)?;
    let s0 = initial_state(basis);
    let propagator = Propagator::new(&eigs, &s0)?;
    let mut boundary = propagator.at(stage1_time);
    boundary.time = 0.0;
    Ok(boundary)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn record_is_internally_consistent() {
        let p = ModelParams { fock_cutoff: Some(120), ..ModelParams::default() }
            .validate()
            .unwrap();
        let times = log_times(0.1, 1e3, 60);
        let record = quench_record(&p, &times).unwrap();
        assert_eq!(record.survival.len(), 60);
        assert!(record.max_tail_weight < 1e-8);
        for i in 0..record.times.len() {
            for series in [
                &record.survival,
                &record.qubit_survival,
                &record.field_survival,
            ] {
                assert!(series[i] >= -1e-12 && series[i] <= 1.0 + 1e-10);
            }
            // Parity-conserving quench: transverse observables stay dark.
            assert!(record.jx[i].abs() < 1e-8);
            assert!(record.q[i].abs() < 1e-8);
            // One qubit: P_q = ½ − J_z and ℘ = 2|J_z|.
            assert_relative_eq!(
                record.qubit_survival[i],
                0.5 - record.jz[i],
                epsilon = 1e-10
            );
            let pol = record.polarization.as_ref().unwrap()[i];
            assert_relative_eq!(pol, 2.0 * record.jz[i].abs(), epsilon = 1e-10);
            // Field survival equals total survival for N=1, μ=0, and the
            // qubit survival dominates both.
            assert_relative_eq!(record.field_survival[i], record.survival[i], epsilon = 1e-10);
            assert!(record.qubit_survival[i] >= record.survival[i] - 1e-10);
        }
        assert!(record.averages.survival > 0.0 && record.averages.survival < 1.0);
        assert_eq!(record.averages.jy, 0.0);
        assert_eq!(record.averages.p, 0.0);
        // For one qubit with μ=0 the field survival coincides with the total.
        assert_relative_eq!(
            record.averages.field_survival,
            record.averages.survival,
            epsilon = 1e-12
        );
        assert_relative_eq!(
            record.averages.qubit_survival,
            0.5 - record.averages.jz,
            epsilon = 1e-10
        );
    }

    #[test]
    fn survival_drops_deep_in_the_first_superradiant_phase() {
        // The first deep minimum sits near t ≈ 9; scan P(t) densely through
        // the strength function, which is cheap per time sample.
        let p = ModelParams { fock_cutoff: Some(300), ..ModelParams::default() }
            .validate()
            .unwrap();
        let basis = build_basis(p.j(), 300);
        let h = build_hamiltonian(&p, &basis);
        let eigs = diagonalize(&h, &p, &basis, true).unwrap();
        let s0 = initial_state(&basis);
        let initial: Vec<f64> = s0.coefficients.iter().map(|z| z.re).collect();
        let sf = crate::spectrum::strength_function(&eigs, &initial).unwrap();
        let times = linear_times(0.0, 10.0, 2001);
        let min = times
            .iter()
            .map(|&t| crate::quench::evolve::survival_from_strength(&sf.pairs, t))
            .fold(f64::INFINITY, f64::min);
        assert!(min < 0.02, "first survival minimum only reaches {min}");
        assert!(min > 0.0);
    }

    #[test]
    fn csv_and_json_exports_carry_the_run() {
        let p = ModelParams { fock_cutoff: Some(80), ..ModelParams::default() }
            .validate()
            .unwrap();
        let record = quench_record(&p, &linear_times(0.0, 1.0, 5)).unwrap();
        let mut csv = Vec::new();
        record.export_csv(&mut csv).unwrap();
        let text = String::from_utf8(csv).unwrap();
        assert_eq!(text.lines().count(), 2 + 5);
        assert!(text.lines().nth(1).unwrap().starts_with("t,P,P_q,P_b"));
        let mut json = Vec::new();
        record.export_summary_json(&mut json).unwrap();
        let doc: serde_json::Value = serde_json::from_slice(&json).unwrap();
        // The tail check may have escalated the cutoff past the request.
        assert!(doc["n_max"].as_u64().unwrap() >= 80);
        assert!(doc["averages"]["survival"].as_f64().unwrap() > 0.0);
    }

    #[test]
    fn two_step_preparation_matches_the_direct_quench() {
        let p = ModelParams { fock_cutoff: Some(60), ..ModelParams::default() }
            .validate()
            .unwrap();
        let basis = build_basis(p.j(), 60);
        let boundary = two_step_quench(&p, &basis, 7.5).unwrap();
        // Stage 1 left the occupation untouched: overlap probability 1.
        let s0 = initial_state(&basis);
        assert_relative_eq!(survival_probability(&s0, &boundary), 1.0, epsilon = 1e-10);

        // Stage 2 under the target Hamiltonian reproduces the direct quench.
        let h = build_hamiltonian(&p, &basis);
        let eigs = diagonalize(&h, &p, &basis, true).unwrap();
        let times = [0.3, 1.1, 4.0];
        let from_boundary = evolve(&eigs, &boundary, &times).unwrap();
        let direct = evolve(&eigs, &s0, &times).unwrap();
        for (a, b) in from_boundary.iter().zip(&direct) {
            assert_relative_eq!(
                survival_probability(&boundary, a),
                survival_probability(&s0, b),
                epsilon = 1e-10
            );
        }
    }

    #[test]
    fn two_step_rejects_incompatible_targets() {
        let basis = build_basis(0.5, 10);
        let with_drive = ModelParams { mu: 0.2, gamma: 1.0, ..ModelParams::default() }
            .validate()
            .unwrap();
        assert!(two_step_quench(&with_drive, &basis, 1.0).is_err());
        let frozen = ModelParams { delta: 1.0, ..ModelParams::default() }.validate().unwrap();
        assert!(two_step_quench(&frozen, &basis, 1.0).is_err());
    }
}
