//! Hamiltonian controls and their validation.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// All controls of the extended Rabi Hamiltonian
///
/// ```text
/// H = ω (b†b + R Jz) + 2√(NR) { λ [(b†+b) Jx − iδ (b†−b) Jy] + μ (b†+b)(Jz + γj) }
/// ```
///
/// plus the optional Fock-space truncation override. The collective
/// quasispin length is fixed to its maximal value `j = N/2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ModelParams {
    /// Boson quantum energy ω (> 0, energy units).
    pub omega: f64,
    /// Qubit-to-boson energy ratio R = ω_q/ω (dimensionless, ≥ 1). This is
    /// the size parameter; 1/NR plays the role of an effective Planck
    /// constant.
    pub r: f64,
    /// Number of qubits N (≥ 1); j = N/2.
    pub n_qubits: u32,
    /// Parity-conserving coupling λ (≥ 0, energy units).
    pub lambda: f64,
    /// Rotating/counter-rotating asymmetry δ ∈ [−1, +1]. δ=+1 is the
    /// Jaynes-Cummings limit, δ=−1 the anti-Jaynes-Cummings one.
    pub delta: f64,
    /// Parity-violating coupling μ (≥ 0, energy units).
    pub mu: f64,
    /// Drive switch γ, 0 or 1. Values within 1e-12 of {0,1} are snapped
    /// exactly during validation; other values require
    /// `allow_general_gamma` (the continuous generalization adds nothing
    /// qualitatively new but is permitted for exploration).
    pub gamma: f64,
    /// Explicit Fock cutoff. `None` lets downstream consumers pick an
    /// adaptively converged cutoff.
    pub fock_cutoff: Option<usize>,
    /// Permit γ outside {0,1}.
    pub allow_general_gamma: bool,
}

impl Default for ModelParams {
    fn default() -> Self {
        ModelParams {
            omega: 1.0,
            r: 100.0,
            n_qubits: 1,
            lambda: 0.75,
            delta: 0.5,
            mu: 0.0,
            gamma: 0.0,
            fock_cutoff: None,
            allow_general_gamma: false,
        }
    }
}

impl ModelParams {
    /// Quasispin length j = N/2.
    pub fn j(&self) -> f64 {
        f64::from(self.n_qubits) / 2.0
    }

    /// The product NR (inverse effective Planck constant).
    pub fn nr(&self) -> f64 {
        f64::from(self.n_qubits) * self.r
    }

    /// Qubit energy ω_q = Rω.
    pub fn omega_q(&self) -> f64 {
        self.r * self.omega
    }

    /// Convenience constructor for the common single-qubit studies.
    pub fn single_qubit(r: f64, lambda: f64, delta: f64) -> Self {
        ModelParams { r, lambda, delta, ..ModelParams::default() }
    }

    pub fn validate(self) -> Result<Self> {
        validate_params(self)
    }
}

fn err(field: &'static str, message: impl Into<String>) -> Error {
    Error::InvalidParameter { field, message: message.into() }
}

/// Checks all parameter invariants, returning the (possibly normalized)
/// parameter set. γ within 1e-12 of 0 or 1 is snapped to the exact value.
pub fn validate_params(p: ModelParams) -> Result<ModelParams> {
    let mut p = p;
    if !(p.omega > 0.0) || !p.omega.is_finite() {
        return Err(err("omega", format!("must be positive and finite, got {}", p.omega)));
    }
    if !(p.r >= 1.0) || !p.r.is_finite() {
        return Err(err("r", format!("size ratio must satisfy R >= 1, got {}", p.r)));
    }
    if p.n_qubits < 1 {
        return Err(err("n_qubits", "at least one qubit required"));
    }
    if !(p.lambda >= 0.0) || !p.lambda.is_finite() {
        return Err(err("lambda", format!("lambda negative or non-finite: {}", p.lambda)));
    }
    if !(p.delta.abs() <= 1.0) {
        return Err(err("delta", format!("delta out of [-1,1]: {}", p.delta)));
    }
    if !(p.mu >= 0.0) || !p.mu.is_finite() {
        return Err(err("mu", format!("mu negative or non-finite: {}", p.mu)));
    }
    if !p.gamma.is_finite() {
        return Err(err("gamma", "gamma must be finite"));
    }
    if (p.gamma - 0.0).abs() < 1e-12 {
        p.gamma = 0.0;
    } else if (p.gamma - 1.0).abs() < 1e-12 {
        p.gamma = 1.0;
    } else if !p.allow_general_gamma {
        return Err(err(
            "gamma",
            format!("gamma must be 0 or 1 (got {}); set allow_general_gamma to override", p.gamma),
        ));
    }
    if let Some(n_max) = p.fock_cutoff {
        if n_max == 0 {
            return Err(err("fock_cutoff", "cutoff must allow at least the Fock vacuum"));
        }
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn accepts_reference_parameters() {
        let p = ModelParams::single_qubit(100.0, 0.75, 0.5);
        let v = validate_params(p).unwrap();
        assert_eq!(v, p);
    }

    #[test]
    fn rejects_delta_out_of_range() {
        let p = ModelParams { delta: 1.5, ..ModelParams::default() };
        let e = validate_params(p).unwrap_err();
        assert!(e.to_string().contains("delta"), "{e}");
    }

    #[test]
    fn rejects_negative_lambda() {
        let p = ModelParams { lambda: -0.1, ..ModelParams::default() };
        let e = validate_params(p).unwrap_err();
        assert!(e.to_string().contains("lambda"), "{e}");
    }

    #[test]
    fn snaps_gamma_to_exact_switch_values() {
        let p = ModelParams { gamma: 1.0 - 4e-13, ..ModelParams::default() };
        assert_eq!(validate_params(p).unwrap().gamma, 1.0);
        let p = ModelParams { gamma: 3e-13, ..ModelParams::default() };
        assert_eq!(validate_params(p).unwrap().gamma, 0.0);
    }

    #[test]
    fn general_gamma_needs_override() {
        let p = ModelParams { gamma: 0.3, ..ModelParams::default() };
        assert!(validate_params(p).is_err());
        let p = ModelParams { allow_general_gamma: true, ..p };
        assert_eq!(validate_params(p).unwrap().gamma, 0.3);
    }

    #[test]
    fn rejects_sub_unit_size_ratio() {
        let p = ModelParams { r: 0.5, ..ModelParams::default() };
        assert!(validate_params(p).is_err());
    }

    #[test]
    fn half_integer_j_for_odd_qubit_counts() {
        let p = ModelParams { n_qubits: 3, ..ModelParams::default() };
        assert_eq!(p.j(), 1.5);
        assert_eq!(p.nr(), 300.0);
    }
}
