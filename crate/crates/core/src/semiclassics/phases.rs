//! Vacuum phase diagram, linearized flow around the vacuum, and the
//! first-order critical coupling of the symmetrically driven model.

use super::classical::{critical_couplings, hessian_at, ClassicalPoint};
use super::stationary::{stationary_points, PointKind};
use crate::error::{Error, Result};
use crate::model::ModelParams;
use crate::C64;

/// Phase of the field vacuum. `S2` covers both mirror regions δ ≷ 0 — every
/// classical quantity depends on |δ| only.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PhaseLabel {
    /// Vacuum is the global minimum and the only stationary point.
    N,
    /// Vacuum still a local minimum, but a deformed minimum lies deeper.
    S0,
    /// Vacuum is a saddle (unstable in q).
    S1,
    /// Vacuum is a local maximum (unstable in q and p).
    S2,
}

#[derive(Debug, Clone, Copy)]
pub struct VacuumPhase {
    pub label: PhaseLabel,
    pub lambda_c: f64,
    /// λ_0 = λ_c/|δ|; infinite for δ = 0 (the S2 region is unreachable).
    pub lambda_0: f64,
    /// First-order critical coupling: equal to λ_c for μ = 0, strictly
    /// below it for a symmetric drive with 0 < μ < 0.5, zero for μ ≥ 0.5.
    pub lambda_prime_c: Option<f64>,
}

fn require_stationary_vacuum(p: &ModelParams) -> Result<()> {
    if p.mu != 0.0 && p.gamma != 1.0 {
        return Err(Error::VacuumNotStationary { gamma: p.gamma, mu: p.mu });
    }
    Ok(())
}

/// Eigenvalues of the stability matrix of the linearized flow at the vacuum:
/// δẋ = [[κ_qp, κ_pp], [−κ_qq, −κ_qp]] δx, giving ±√(κ_qp² − κ_qq κ_pp).
/// Elliptic (pure imaginary pair) where the vacuum is a minimum or maximum,
/// hyperbolic (real pair) where it is a saddle.
pub fn linearized_flow(p: &ModelParams, m_prime: f64) -> Result<(C64, C64)> {
    require_stationary_vacuum(p)?;
    let k = hessian_at(p, m_prime, ClassicalPoint::new(0.0, 0.0));
    let disc = k[(0, 1)] * k[(0, 1)] - k[(0, 0)] * k[(1, 1)];
    if disc >= 0.0 {
        let e = disc.sqrt();
        Ok((C64::new(e, 0.0), C64::new(-e, 0.0)))
    } else {
        let e = (-disc).sqrt();
        Ok((C64::new(0.0, e), C64::new(0.0, -e)))
    }
}

/// Classifies the vacuum phase on the lowest branch m′ = −j.
pub fn classify_vacuum_phase(p: &ModelParams) -> Result<VacuumPhase> {
    require_stationary_vacuum(p)?;
    let (lambda_c, lambda_0) = critical_couplings(p);
    let lambda_prime_c = if p.mu == 0.0 {
        Some(lambda_c)
    } else if p.mu < lambda_c {
        Some(first_order_critical(p)?)
    } else {
        // At λ=0 the deformed minimum reaches −1/2 exactly when μ = ω/2N,
        // so beyond it no normal phase survives at any coupling.
        Some(0.0)
    };
    let label = if p.lambda >= lambda_0 {
        PhaseLabel::S2
    } else if p.lambda >= lambda_c {
        PhaseLabel::S1
    } else if p.lambda >= lambda_prime_c.unwrap() {
        if p.mu == 0.0 { PhaseLabel::N } else { PhaseLabel::S0 }
    } else {
        PhaseLabel::N
    };
    Ok(VacuumPhase { label, lambda_c, lambda_0, lambda_prime_c })
}

/// Locates the first-order transition of the symmetrically driven model
/// (γ = 1, 0 < μ < λ_c — the familiar interval (0, 0.5) for a single qubit
/// at ω = 1): the coupling λ′_c at which the deformed minimum of the lowest
/// branch dips below the vacuum energy −1/2. Bisection on the sign of
/// min over deformed minima of [h(min) − h(0,0)] to 10⁻⁶ in λ.
pub fn first_order_critical(p: &ModelParams) -> Result<f64> {
    let (lambda_c, _) = critical_couplings(p);
    if p.gamma != 1.0 || p.mu <= 0.0 || p.mu >= lambda_c {
        return Err(Error::InvalidParameter {
            field: "mu",
            message: format!(
                "first-order locator needs gamma=1 and mu in (0, ω/2N); got gamma={}, mu={}",
                p.gamma, p.mu
            ),
        });
    }
    let j = p.j();

    // Positive while the vacuum is the global minimum, negative after the swap.
    let excess = |lambda: f64| -> Result<f64> {
        let trial = ModelParams { lambda, ..*p };
        let pts = stationary_points(&trial, -j)?;
        let deformed = pts
            .iter()
            .filter(|s| {
                s.point.distance(&ClassicalPoint::new(0.0, 0.0)) > 1e-6
                    && matches!(s.kind, PointKind::Minimum | PointKind::Degenerate)
            })
            .map(|s| s.energy)
            .fold(f64::INFINITY, f64::min);
        Ok(deformed - (-0.5))
    };

    let mut lo = 1e-6;
    let mut hi = lambda_c * (1.0 - 1e-9);
    let f_lo = excess(lo)?;
    let f_hi = excess(hi)?;
    if !(f_lo > 0.0 && f_hi < 0.0) {
        return Err(Error::BracketingFailure {
            context: format!(
                "minimum-swap sign does not bracket on [{lo}, {hi}]: f(lo)={f_lo}, f(hi)={f_hi}"
            ),
        });
    }
    while hi - lo > 1e-6 {
        let mid = 0.5 * (lo + hi);
        if excess(mid)? > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}
