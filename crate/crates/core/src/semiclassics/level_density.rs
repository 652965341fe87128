//! Semiclassical level density ρ̄(ε) = (1/2π) dA/dε, with A(ε) the area of
//! the classically allowed region {h_m′ ≤ ε} in the scaled phase plane.
//!
//! A is measured by counting cells of a uniform grid over a bounding box of
//! the allowed region, which makes it non-decreasing in ε by construction;
//! the grid is refined (doubling resolution) until the resulting densities
//! are stable away from the stationary energies. The derivative uses central
//! differences on the caller's ε grid, switching to one-sided stencils next
//! to a stationary energy so the step and divergence signatures stay sharp.

use super::classical::{classical_hamiltonian, surface_coeffs, ClassicalPoint};
use super::stationary::{stationary_points, Singularity};
use crate::error::{Error, Result};
use crate::model::ModelParams;

/// One ESQPT borderline sample: at coupling λ a stationary point above the
/// global minimum sits at scaled energy ε and imprints the given ρ̄ signature.
#[derive(Debug, Clone, Copy)]
pub struct CriticalLine {
    pub lambda: f64,
    pub energy: f64,
    pub singularity: Singularity,
}

const REFINE_LEVELS: [usize; 3] = [1024, 2048, 4096];
const REFINE_TARGET: f64 = 0.005;
const REFINE_FAIL: f64 = 0.05;
/// Exclusion radius (in ε) around stationary energies for refinement checks.
const SAFE_DISTANCE: f64 = 0.03;

/// ρ̄ sampled on `eps_grid` (sorted ascending) for the branch m′.
pub fn semiclassical_level_density(
    p: &ModelParams,
    m_prime: f64,
    eps_grid: &[f64],
) -> Result<Vec<f64>> {
    if eps_grid.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::GridMismatch("eps_grid must be sorted ascending".into()));
    }
    let Some(&eps_max) = eps_grid.last() else {
        return Ok(Vec::new());
    };

    let critical: Vec<f64> = stationary_points(p, m_prime)?.iter().map(|s| s.energy).collect();

    let Some(bbox) = bounding_box(p, m_prime, eps_max) else {
        return Ok(vec![0.0; eps_grid.len()]); // grid entirely below the band
    };

    let mut previous: Option<Vec<f64>> = None;
    let mut last_disagreement = 0.0;
    for cells in REFINE_LEVELS {
        let (values, cell_area) = allowed_cell_energies(p, m_prime, &bbox, cells, eps_max);
        let rho = differentiate_area(&values, cell_area, eps_grid, &critical);
        if let Some(prev) = previous {
            last_disagreement = refinement_disagreement(&rho, &prev, eps_grid, &critical);
            if last_disagreement < REFINE_TARGET {
                return Ok(rho);
            }
        }
        previous = Some(rho);
    }
    if last_disagreement < REFINE_FAIL {
        Ok(previous.unwrap())
    } else {
        Err(Error::AreaUnderResolved(format!(
            "density still moving by {last_disagreement:.3} after {} cells per side",
            REFINE_LEVELS.last().unwrap()
        )))
    }
}

/// ESQPT borderlines over a coupling sweep: every stationary point above the
/// global minimum of the branch, tagged with its level-density signature.
pub fn esqpt_critical_lines(
    p: &ModelParams,
    lambda_grid: &[f64],
    m_prime: f64,
) -> Result<Vec<CriticalLine>> {
    let mut lines = Vec::new();
    for &lambda in lambda_grid {
        let trial = ModelParams { lambda, ..*p };
        for s in stationary_points(&trial, m_prime)? {
            if s.singularity != Singularity::None {
                lines.push(CriticalLine { lambda, energy: s.energy, singularity: s.singularity });
            }
        }
    }
    Ok(lines)
}

struct BoundingBox {
    q0: f64,
    q1: f64,
    p0: f64,
    p1: f64,
}

/// Scans rays from the origin-region to box the sublevel set {h ≤ eps_cap}.
/// Returns None when the set is empty (eps_cap below the global band edge).
fn bounding_box(p: &ModelParams, m_prime: f64, eps_cap: f64) -> Option<BoundingBox> {
    let c = surface_coeffs(p);
    // h grows as r²/2 − O(r), so the allowed region lies inside a disk whose
    // radius we overestimate from the linear-term budget.
    let slope = c.a.abs() + m_prime.abs() * (c.c1.sqrt() + c.c2.sqrt() + c.e);
    let r_hi = 3.0 + 2.0 * slope + 2.0 * (2.0 * (eps_cap + m_prime.abs() * c.d + slope * slope)).max(0.0).sqrt();

    let angles = 128;
    let steps = 400;
    let mut found = false;
    let (mut q0, mut q1, mut p0, mut p1) = (f64::MAX, f64::MIN, f64::MAX, f64::MIN);
    for ia in 0..angles {
        let th = std::f64::consts::TAU * ia as f64 / angles as f64;
        let (sin, cos) = th.sin_cos();
        for ir in 0..=steps {
            let r = r_hi * ir as f64 / steps as f64;
            let x = ClassicalPoint::new(r * cos, r * sin);
            if classical_hamiltonian(p, m_prime, x) <= eps_cap {
                found = true;
                q0 = q0.min(x.q);
                q1 = q1.max(x.q);
                p0 = p0.min(x.p);
                p1 = p1.max(x.p);
            }
        }
    }
    if !found {
        return None;
    }
    let pad_q = 0.02 * (q1 - q0) + 2.0 * r_hi / steps as f64;
    let pad_p = 0.02 * (p1 - p0) + 2.0 * r_hi / steps as f64;
    Some(BoundingBox { q0: q0 - pad_q, q1: q1 + pad_q, p0: p0 - pad_p, p1: p1 + pad_p })
}

/// Energies of all grid cells (by center) inside the allowed region, sorted,
/// together with the cell area. A(ε) is then cell_area × count(values ≤ ε).
fn allowed_cell_energies(
    p: &ModelParams,
    m_prime: f64,
    bbox: &BoundingBox,
    cells: usize,
    eps_cap: f64,
) -> (Vec<f64>, f64) {
    let dq = (bbox.q1 - bbox.q0) / cells as f64;
    let dp = (bbox.p1 - bbox.p0) / cells as f64;
    let c = surface_coeffs(p);
    let mut values = Vec::with_capacity(cells * cells / 2);
    for iq in 0..cells {
        let q = bbox.q0 + (iq as f64 + 0.5) * dq;
        let lin = c.d + c.e * q;
        let gq = c.c1 * q * q + lin * lin;
        let base = 0.5 * q * q + c.a * q;
        for ip in 0..cells {
            let pp = bbox.p0 + (ip as f64 + 0.5) * dp;
            let h = base + 0.5 * pp * pp + m_prime * (gq + c.c2 * pp * pp).sqrt();
            if h <= eps_cap {
                values.push(h);
            }
        }
    }
    values.sort_unstable_by(|a, b| a.partial_cmp(b).unwrap());
    (values, dq * dp)
}

fn area_at(values: &[f64], cell_area: f64, eps: f64) -> f64 {
    cell_area * values.partition_point(|&v| v <= eps) as f64
}

/// dA/dε via differences on the ε grid; stencils never straddle a stationary
/// energy when a one-sided alternative exists.
fn differentiate_area(
    values: &[f64],
    cell_area: f64,
    eps_grid: &[f64],
    critical: &[f64],
) -> Vec<f64> {
    let n = eps_grid.len();
    let area: Vec<f64> = eps_grid.iter().map(|&e| area_at(values, cell_area, e)).collect();
    let crosses = |a: f64, b: f64| critical.iter().any(|&c| a < c && c < b);
    let mut rho = vec![0.0; n];
    if n == 1 {
        return rho;
    }
    for i in 0..n {
        let backward = i > 0 && !crosses(eps_grid[i - 1], eps_grid[i]);
        let forward = i + 1 < n && !crosses(eps_grid[i], eps_grid[i + 1]);
        let (lo, hi) = match (backward, forward) {
            (true, true) => (i - 1, i + 1),
            (true, false) => (i - 1, i),
            (false, true) => (i, i + 1),
            // Both neighbors lie across stationary energies: fall back to the
            // widest available stencil.
            (false, false) => (i.saturating_sub(1), (i + 1).min(n - 1)),
        };
        let de = eps_grid[hi] - eps_grid[lo];
        if de > 0.0 {
            rho[i] = (area[hi] - area[lo]) / de / std::f64::consts::TAU;
        }
    }
    rho
}

fn refinement_disagreement(
    rho: &[f64],
    prev: &[f64],
    eps_grid: &[f64],
    critical: &[f64],
) -> f64 {
    let mut worst: f64 = 0.0;
    for i in 0..rho.len() {
        let safe = critical.iter().all(|&c| (eps_grid[i] - c).abs() > SAFE_DISTANCE);
        if safe && (rho[i].abs() > 1e-6 || prev[i].abs() > 1e-6) {
            worst = worst.max((rho[i] - prev[i]).abs() / prev[i].abs().max(1e-3));
        }
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;

    fn with_lambda(lambda: f64) -> ModelParams {
        ModelParams { lambda, ..ModelParams::default() }.validate().unwrap()
    }

    fn grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
        (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect()
    }

    #[test]
    fn free_oscillator_density_is_unity() {
        let p = ModelParams { lambda: 0.0, ..ModelParams::default() }.validate().unwrap();
        let eps = grid(-0.4, 0.9, 27);
        let rho = semiclassical_level_density(&p, -0.5, &eps).unwrap();
        for (e, r) in eps.iter().zip(&rho) {
            assert!((r - 1.0).abs() < 0.02, "ρ̄({e}) = {r}");
        }
    }

    #[test]
    fn density_vanishes_below_the_band() {
        let p = with_lambda(0.4);
        let rho = semiclassical_level_density(&p, -0.5, &grid(-1.2, -0.7, 6)).unwrap();
        assert!(rho.iter().all(|&r| r == 0.0));
    }

    #[test]
    fn saddle_produces_a_growing_peak() {
        // First superradiant phase: ρ̄ diverges logarithmically at ε = −1/2.
        let p = with_lambda(0.75);
        let eps: Vec<f64> = vec![-0.64, -0.60, -0.56, -0.52, -0.508, -0.502];
        let rho = semiclassical_level_density(&p, -0.5, &eps).unwrap();
        for w in rho.windows(2) {
            assert!(w[1] > w[0], "expected growth toward the saddle: {rho:?}");
        }
        // Logarithmic growth is slow; the frozen scan gives ≈ 2.66 → 4.20.
        assert!(rho.last().unwrap() > &(1.4 * rho[0]), "{rho:?}");
    }

    #[test]
    fn local_maximum_produces_a_downward_step() {
        // Second superradiant phase: the origin is a local maximum; crossing
        // its energy from below loses one of the two sheets of the region.
        let p = with_lambda(1.5);
        let eps = [-0.54, -0.52, -0.51, -0.49, -0.47, -0.46];
        let rho = semiclassical_level_density(&p, -0.5, &eps).unwrap();
        // Frozen scan: ρ̄(−0.51) ≈ 2.63 against ρ̄(−0.49) ≈ 2.29.
        assert!(
            rho[2] > rho[3] * 1.08,
            "expected a downward step across ε = −0.5: {rho:?}"
        );
    }

    #[test]
    fn density_is_nonnegative_and_area_monotone() {
        let p = ModelParams { mu: 0.4, gamma: 1.0, ..with_lambda(0.6) }.validate().unwrap();
        let eps = grid(-0.9, 0.4, 40);
        let rho = semiclassical_level_density(&p, -0.5, &eps).unwrap();
        assert!(rho.iter().all(|&r| r >= 0.0));
    }

    #[test]
    fn rejects_unsorted_grid() {
        let p = with_lambda(0.4);
        assert!(semiclassical_level_density(&p, -0.5, &[0.0, -0.4]).is_err());
    }

    #[test]
    fn critical_lines_match_the_phase_structure() {
        let p = with_lambda(0.75);
        let lines = esqpt_critical_lines(&p, &[0.4, 0.75, 1.5], -0.5).unwrap();
        // λ = 0.4: no stationary point above the minimum.
        assert!(lines.iter().all(|l| l.lambda != 0.4));
        // λ = 0.75: exactly the saddle at ε = −1/2 (log divergence).
        let at_075: Vec<_> = lines.iter().filter(|l| l.lambda == 0.75).collect();
        assert_eq!(at_075.len(), 1);
        assert!((at_075[0].energy + 0.5).abs() < 1e-12);
        assert_eq!(at_075[0].singularity, Singularity::LogDivergence);
        // λ = 1.5: momentum-axis saddle pair at e2 plus the origin maximum.
        let at_15: Vec<_> = lines.iter().filter(|l| l.lambda == 1.5).collect();
        assert_eq!(at_15.len(), 3);
        let e2 = -(2.25 + 1.0 / 2.25) / 4.0;
        assert_eq!(
            at_15.iter().filter(|l| (l.energy - e2).abs() < 1e-10
                && l.singularity == Singularity::LogDivergence).count(),
            2
        );
        assert_eq!(
            at_15.iter().filter(|l| (l.energy + 0.5).abs() < 1e-12
                && l.singularity == Singularity::DownwardStep).count(),
            1
        );
    }

    #[test]
    fn asymmetric_drive_has_no_vacuum_line() {
        let p = ModelParams { mu: 0.4, gamma: 0.0, ..with_lambda(0.75) }.validate().unwrap();
        let lines = esqpt_critical_lines(&p, &[0.75], -0.5).unwrap();
        assert!(lines.iter().all(|l| (l.energy + 0.5).abs() > 1e-6));
    }
}
