//! Stationary points of the classical energy surface and their classification.
//!
//! For μ = 0 the stationary set on any branch is known in closed form: the
//! origin, plus a symmetric pair on the q axis once λ exceeds the branch
//! threshold, plus a symmetric pair on the p axis once λ|δ| does. For μ ≠ 0
//! reflection symmetry is lost and the roots of ∇h = 0 are located by a
//! damped Newton iteration started from a fixed seed grid; converged roots
//! are deduplicated and classified through the analytic Hessian.

use super::classical::{
    classical_gradient, classical_hamiltonian, hessian_at, surface_coeffs, ClassicalPoint,
};
use crate::error::{Error, Result};
use crate::model::ModelParams;
use nalgebra::Matrix2;

/// Morse classification by the Hessian eigenvalue signs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PointKind {
    Minimum,
    Saddle,
    Maximum,
    Degenerate,
}

/// Nonanalyticity the point imprints on the level density ρ̄(ε): a stationary
/// point of index r produces a logarithmic divergence for r = 1 and a step
/// of sign (−1)^(r/2) for even r; the global minimum only starts the band.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Singularity {
    None,
    UpwardStep,
    LogDivergence,
    DownwardStep,
}

#[derive(Debug, Clone)]
pub struct StationaryPoint {
    pub point: ClassicalPoint,
    /// Scaled energy ε = h(point).
    pub energy: f64,
    pub hessian: Matrix2<f64>,
    /// Number of negative Hessian eigenvalues (0, 1 or 2).
    pub index_r: usize,
    /// A Hessian eigenvalue vanishes within tolerance (bifurcation point).
    pub degenerate: bool,
    pub kind: PointKind,
    pub singularity: Singularity,
}

const GRAD_TOL: f64 = 1e-12;
const DEDUP_TOL: f64 = 1e-8;
const DEGENERACY_TOL: f64 = 1e-8;

/// All stationary points of h_m′, sorted by energy (then coordinates).
///
/// The seed grid for the μ ≠ 0 search is 21×11 over q ∈ [−3,3], p ∈ [−1.5,1.5],
/// augmented with the μ = 0 closed-form points as warm starts; this window
/// covers every stationary point arising for couplings up to a few λ_c.
pub fn stationary_points(p: &ModelParams, m_prime: f64) -> Result<Vec<StationaryPoint>> {
    let j = p.j();
    if m_prime < -j - 1e-9 || m_prime > j + 1e-9 || ((m_prime + j) - (m_prime + j).round()).abs() > 1e-9 {
        return Err(Error::InvalidParameter {
            field: "m_prime",
            message: format!("projection {m_prime} not in {{-{j}, .., {j}}}"),
        });
    }

    let mut roots: Vec<ClassicalPoint> = if p.mu == 0.0 {
        closed_form_roots(p, m_prime)
    } else {
        let mut seeds = Vec::with_capacity(21 * 11 + 5);
        for iq in 0..21 {
            for ip in 0..11 {
                seeds.push(ClassicalPoint::new(
                    -3.0 + 0.3 * iq as f64,
                    -1.5 + 0.3 * ip as f64,
                ));
            }
        }
        let zero_mu = ModelParams { mu: 0.0, ..*p };
        seeds.extend(closed_form_roots(&zero_mu, m_prime));
        let mut found = Vec::new();
        for seed in seeds {
            if let Some(root) = newton_root(p, m_prime, seed) {
                if !found.iter().any(|r: &ClassicalPoint| r.distance(&root) < DEDUP_TOL) {
                    found.push(root);
                }
            }
        }
        found
    };

    roots.sort_by(|a, b| (a.q, a.p).partial_cmp(&(b.q, b.p)).unwrap());
    let mut points: Vec<StationaryPoint> = roots
        .into_iter()
        .map(|x| classify(p, m_prime, x))
        .collect();
    points.sort_by(|a, b| {
        (a.energy, a.point.q, a.point.p)
            .partial_cmp(&(b.energy, b.point.q, b.point.p))
            .unwrap()
    });

    // The global minimum (possibly a symmetric pair) carries no ρ̄ singularity.
    if let Some(e_min) = points.first().map(|s| s.energy) {
        for s in &mut points {
            if s.energy <= e_min + 1e-12 {
                s.singularity = Singularity::None;
            }
        }
    }
    Ok(points)
}

/// μ = 0 stationary set of h_m′ from the closed forms. Writing
/// g = c1 q² + c2 p² + 1/N², the off-origin branches solve √g = −m′ c1
/// (q axis) and √g = −m′ c2 (p axis), which requires m′ < 0 and a
/// sufficiently strong coupling.
fn closed_form_roots(p: &ModelParams, m_prime: f64) -> Vec<ClassicalPoint> {
    let c = surface_coeffs(p);
    let mut roots = vec![ClassicalPoint::new(0.0, 0.0)];
    if m_prime < 0.0 {
        for (coef, on_q) in [(c.c1, true), (c.c2, false)] {
            if coef > 0.0 {
                let amp2 = m_prime * m_prime * coef - c.d * c.d / coef;
                if amp2 > 0.0 {
                    let amp = amp2.sqrt();
                    if on_q {
                        roots.push(ClassicalPoint::new(-amp, 0.0));
                        roots.push(ClassicalPoint::new(amp, 0.0));
                    } else {
                        roots.push(ClassicalPoint::new(0.0, -amp));
                        roots.push(ClassicalPoint::new(0.0, amp));
                    }
                }
            }
        }
    }
    roots
}

fn newton_root(p: &ModelParams, m_prime: f64, seed: ClassicalPoint) -> Option<ClassicalPoint> {
    let mut x = seed;
    let mut grad = classical_gradient(p, m_prime, x);
    let mut norm = grad.0.hypot(grad.1);
    for _ in 0..100 {
        if norm < GRAD_TOL {
            return Some(x);
        }
        let k = hessian_at(p, m_prime, x);
        let det = k[(0, 0)] * k[(1, 1)] - k[(0, 1)] * k[(1, 0)];
        if det.abs() < 1e-14 {
            return None;
        }
        let dq = (k[(1, 1)] * grad.0 - k[(0, 1)] * grad.1) / det;
        let dp = (k[(0, 0)] * grad.1 - k[(1, 0)] * grad.0) / det;
        // Damping: halve the step until the gradient norm decreases.
        let mut step = 1.0;
        let mut improved = false;
        for _ in 0..25 {
            let trial = ClassicalPoint::new(x.q - step * dq, x.p - step * dp);
            let g_trial = classical_gradient(p, m_prime, trial);
            let n_trial = g_trial.0.hypot(g_trial.1);
            if n_trial < norm {
                x = trial;
                grad = g_trial;
                norm = n_trial;
                improved = true;
                break;
            }
            step *= 0.5;
        }
        if !improved {
            return None;
        }
    }
    (norm < GRAD_TOL).then_some(x)
}

fn classify(p: &ModelParams, m_prime: f64, x: ClassicalPoint) -> StationaryPoint {
    let hessian = hessian_at(p, m_prime, x);
    let half_tr = 0.5 * (hessian[(0, 0)] + hessian[(1, 1)]);
    let det = hessian[(0, 0)] * hessian[(1, 1)] - hessian[(0, 1)] * hessian[(1, 0)];
    let disc = (half_tr * half_tr - det).max(0.0).sqrt();
    let eigs = [half_tr - disc, half_tr + disc];
    let scale = eigs[0].abs().max(eigs[1].abs()).max(1.0);
    let tol = DEGENERACY_TOL * scale;
    let index_r = eigs.iter().filter(|&&e| e < -tol).count();
    let degenerate = eigs.iter().any(|e| e.abs() <= tol);
    let kind = if degenerate {
        PointKind::Degenerate
    } else {
        match index_r {
            0 => PointKind::Minimum,
            1 => PointKind::Saddle,
            _ => PointKind::Maximum,
        }
    };
    let singularity = match index_r {
        0 => Singularity::UpwardStep,
        1 => Singularity::LogDivergence,
        _ => Singularity::DownwardStep,
    };
    StationaryPoint {
        point: x,
        energy: classical_hamiltonian(p, m_prime, x),
        hessian,
        index_r,
        degenerate,
        kind,
        singularity,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn reference(lambda: f64) -> ModelParams {
        ModelParams { lambda, ..ModelParams::default() }.validate().unwrap()
    }

    #[test]
    fn weak_coupling_has_only_the_vacuum_minimum() {
        let pts = stationary_points(&reference(0.4), -0.5).unwrap();
        assert_eq!(pts.len(), 1);
        assert_eq!(pts[0].point, ClassicalPoint::new(0.0, 0.0));
        assert_eq!(pts[0].kind, PointKind::Minimum);
        assert_relative_eq!(pts[0].energy, -0.5, epsilon = 1e-14);
        assert_eq!(pts[0].singularity, Singularity::None);
    }

    #[test]
    fn first_superradiant_regime_has_three_points() {
        let pts = stationary_points(&reference(0.75), -0.5).unwrap();
        assert_eq!(pts.len(), 3);
        // Deepest: the degenerate pair of minima at q = ±0.9501…, ε = −0.6736…
        for s in &pts[..2] {
            assert_eq!(s.kind, PointKind::Minimum);
            assert_eq!(s.singularity, Singularity::None);
            assert_relative_eq!(s.point.q.abs(), 0.950_146_187_582_615, epsilon = 1e-10);
            assert_relative_eq!(s.point.p, 0.0, epsilon = 1e-12);
            assert_relative_eq!(s.energy, -0.673_611_111_111_111_1, epsilon = 1e-12);
        }
        // The origin turns into an index-1 saddle: a log divergence of ρ̄.
        let origin = &pts[2];
        assert_eq!(origin.point, ClassicalPoint::new(0.0, 0.0));
        assert_eq!(origin.index_r, 1);
        assert_eq!(origin.kind, PointKind::Saddle);
        assert_eq!(origin.singularity, Singularity::LogDivergence);
    }

    #[test]
    fn second_superradiant_regime_has_five_points() {
        let pts = stationary_points(&reference(1.5), -0.5).unwrap();
        assert_eq!(pts.len(), 5);
        // Momentum-axis saddle pair from the λ > λ_0 branch: ε = −(2.25 + 1/2.25)/4.
        let saddles: Vec<_> = pts.iter().filter(|s| s.kind == PointKind::Saddle).collect();
        assert_eq!(saddles.len(), 2);
        for s in &saddles {
            assert_relative_eq!(s.point.q, 0.0, epsilon = 1e-12);
            assert!(s.point.p.abs() > 0.5);
            assert_relative_eq!(s.energy, -(2.25 + 1.0 / 2.25) / 4.0, epsilon = 1e-12);
            assert_eq!(s.singularity, Singularity::LogDivergence);
        }
        // The origin is now a local maximum: downward step.
        let origin = pts.iter().find(|s| s.point.distance(&ClassicalPoint::new(0.0, 0.0)) < 1e-12).unwrap();
        assert_eq!(origin.index_r, 2);
        assert_eq!(origin.kind, PointKind::Maximum);
        assert_eq!(origin.singularity, Singularity::DownwardStep);
    }

    #[test]
    fn gradient_vanishes_at_every_reported_point() {
        let cases = [
            reference(0.4),
            reference(0.75),
            reference(1.5),
            ModelParams { mu: 0.4, gamma: 1.0, ..reference(0.3) }.validate().unwrap(),
            ModelParams { mu: 0.4, gamma: 0.0, ..reference(0.75) }.validate().unwrap(),
            ModelParams { mu: 0.2, gamma: 1.0, n_qubits: 2, ..reference(0.6) }.validate().unwrap(),
        ];
        for p in cases {
            for m_step in 0..=p.n_qubits {
                let m_prime = f64::from(m_step) - p.j();
                for s in stationary_points(&p, m_prime).unwrap() {
                    let (gq, gp) = classical_gradient(&p, m_prime, s.point);
                    assert!(
                        gq.hypot(gp) < 1e-10,
                        "residual gradient {:e} at {:?} (m'={m_prime}, {p:?})",
                        gq.hypot(gp),
                        s.point,
                    );
                }
            }
        }
    }

    #[test]
    fn origin_remains_stationary_with_symmetric_drive() {
        let p = ModelParams { lambda: 0.9, mu: 0.4, gamma: 1.0, ..ModelParams::default() }
            .validate()
            .unwrap();
        let pts = stationary_points(&p, -0.5).unwrap();
        assert!(pts.iter().any(|s| s.point.distance(&ClassicalPoint::new(0.0, 0.0)) < 1e-12));
    }

    #[test]
    fn newton_search_recovers_closed_forms_when_symmetry_breaking_is_tiny() {
        // μ → 0 continuity: a negligible μ must reproduce the μ = 0 points.
        let exact = stationary_points(&reference(1.5), -0.5).unwrap();
        let p = ModelParams { mu: 1e-13, gamma: 1.0, allow_general_gamma: false, ..reference(1.5) }
            .validate()
            .unwrap();
        let near = stationary_points(&p, -0.5).unwrap();
        assert_eq!(exact.len(), near.len());
        for (a, b) in exact.iter().zip(&near) {
            assert!(a.point.distance(&b.point) < 1e-6);
            assert_relative_eq!(a.energy, b.energy, epsilon = 1e-8);
        }
    }

    #[test]
    fn positive_projections_only_keep_the_origin() {
        let pts = stationary_points(&reference(1.5), 0.5).unwrap();
        assert_eq!(pts.len(), 1);
        assert_eq!(pts[0].kind, PointKind::Minimum);
    }

    #[test]
    fn rejects_projection_outside_branch_range() {
        assert!(stationary_points(&reference(0.75), 1.5).is_err());
        assert!(stationary_points(&reference(0.75), 0.0).is_err());
    }

    #[test]
    fn mirrored_asymmetry_gives_identical_stationary_sets() {
        let plus = stationary_points(&reference(1.5), -0.5).unwrap();
        let minus = stationary_points(
            &ModelParams { delta: -0.5, ..reference(1.5) }.validate().unwrap(),
            -0.5,
        )
        .unwrap();
        assert_eq!(plus.len(), minus.len());
        for (a, b) in plus.iter().zip(&minus) {
            assert_eq!(a.point, b.point);
            assert_eq!(a.energy, b.energy);
            assert_eq!(a.kind, b.kind);
        }
    }
}
