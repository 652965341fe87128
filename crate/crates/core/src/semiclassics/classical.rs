//! Classical energy surface of the scaled model in the R → ∞ limit.
//!
//! For a fixed quasispin projection m′ the scaled Hamiltonian reduces to one
//! degree of freedom,
//!
//! ```text
//! h_m′(q,p) = (q²+p²)/2 + √2 N (μγ/ω) q
//!           + m′ √( (8λ²/ω²) q² + (8λ²δ²/ω²) p² + (1/N + √8 (μ/ω) q)² )
//! ```
//!
//! with q and p commuting variables. Everything in this module is an exact
//! closed-form property of h: the value, its analytic gradient and Hessian,
//! and the two critical couplings λ_c = ω/2N and λ_0 = λ_c/|δ| at which the
//! curvature of the lowest branch at the origin changes sign in the q and p
//! directions respectively.

use crate::model::ModelParams;
use nalgebra::Matrix2;

/// A point of the scaled classical phase space.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClassicalPoint {
    pub q: f64,
    pub p: f64,
}

impl ClassicalPoint {
    pub fn new(q: f64, p: f64) -> Self {
        Self { q, p }
    }

    /// Euclidean distance to another point.
    pub fn distance(&self, other: &ClassicalPoint) -> f64 {
        (self.q - other.q).hypot(self.p - other.p)
    }
}

/// Coefficients of h collected once per parameter set: the linear drive a,
/// the radicand g(q,p) = c1 q² + c2 p² + (d + e q)².
#[derive(Debug, Clone, Copy)]
pub(crate) struct SurfaceCoeffs {
    pub a: f64,
    pub c1: f64,
    pub c2: f64,
    pub d: f64,
    pub e: f64,
}

pub(crate) fn surface_coeffs(p: &ModelParams) -> SurfaceCoeffs {
    let n = f64::from(p.n_qubits);
    SurfaceCoeffs {
        a: 2.0_f64.sqrt() * n * p.mu * p.gamma / p.omega,
        c1: 8.0 * p.lambda * p.lambda / (p.omega * p.omega),
        c2: 8.0 * p.lambda * p.lambda * p.delta * p.delta / (p.omega * p.omega),
        d: 1.0 / n,
        e: 8.0_f64.sqrt() * p.mu / p.omega,
    }
}

impl SurfaceCoeffs {
    pub fn radicand(&self, x: ClassicalPoint) -> f64 {
        let lin = self.d + self.e * x.q;
        self.c1 * x.q * x.q + self.c2 * x.p * x.p + lin * lin
    }
}

/// Scaled classical energy h_m′(q,p) on the branch with quasispin projection m′.
pub fn classical_hamiltonian(p: &ModelParams, m_prime: f64, x: ClassicalPoint) -> f64 {
    let c = surface_coeffs(p);
    0.5 * (x.q * x.q + x.p * x.p) + c.a * x.q + m_prime * c.radicand(x).sqrt()
}

/// Analytic gradient (∂h/∂q, ∂h/∂p).
pub fn classical_gradient(p: &ModelParams, m_prime: f64, x: ClassicalPoint) -> (f64, f64) {
    let c = surface_coeffs(p);
    let root = c.radicand(x).sqrt();
    let gq = c.c1 * x.q + c.e * (c.d + c.e * x.q);
    (
        x.q + c.a + m_prime * gq / root,
        x.p + m_prime * c.c2 * x.p / root,
    )
}

/// Analytic Hessian of h at x; symmetric 2×2 with entries κ_qq, κ_qp, κ_pp.
pub fn hessian_at(p: &ModelParams, m_prime: f64, x: ClassicalPoint) -> Matrix2<f64> {
    let c = surface_coeffs(p);
    let g = c.radicand(x);
    let root = g.sqrt();
    let root3 = g * root;
    let gq = c.c1 * x.q + c.e * (c.d + c.e * x.q); // (∂g/∂q)/2
    let gp = c.c2 * x.p; // (∂g/∂p)/2
    let kqq = 1.0 + m_prime * ((c.c1 + c.e * c.e) / root - gq * gq / root3);
    let kpp = 1.0 + m_prime * (c.c2 / root - gp * gp / root3);
    let kqp = -m_prime * gq * gp / root3;
    Matrix2::new(kqq, kqp, kqp, kpp)
}

/// (λ_c, λ_0): the couplings at which the origin loses stability in the
/// q and p directions on the lowest branch. λ_0 is +∞ for δ = 0.
pub fn critical_couplings(p: &ModelParams) -> (f64, f64) {
    let lambda_c = p.omega / (2.0 * f64::from(p.n_qubits));
    let lambda_0 = if p.delta == 0.0 { f64::INFINITY } else { lambda_c / p.delta.abs() };
    (lambda_c, lambda_0)
}
