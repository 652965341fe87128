//! Wigner function of the reduced field state.
//!
//! Everything is computed in standard oscillator quadratures x = (b+b†)/√2,
//! p = i(b†−b)/√2 with unit effective Planck constant, where the vacuum is
//! W(q,p) = e^{−q²−p²}/π. The model's scaled quadratures (commutator i/NR)
//! differ only by the axis relabeling q → q/√(NR); [`WignerGrid::rescaled`]
//! applies it for display without touching the evaluation.
//!
//! ρ_b is split into its spectral pure components ρ = Σ_k w_k |φ_k⟩⟨φ_k|
//! (rank ≤ N+1 when it comes from a pure global state). Each component is
//! sampled as a coordinate wavefunction on a lattice commensurate with the
//! requested grid, and
//!
//! ```text
//! W(q,p) = (1/π) ∫ φ(q+s) φ*(q−s) e^{−2ips} ds
//! ```
//!
//! is evaluated by an FFT over s for a whole momentum row at once. The
//! lattice step is chosen against the largest Fock wavevector √(2 n_max + 1),
//! so the quadrature error of the Gaussian-decaying integrand sits far below
//! the grid tolerances.

use faer::{Mat, Side};
use nalgebra::DMatrix;
use rayon::prelude::*;
use rustfft::FftPlanner;
use serde_json::json;

use crate::error::{Error, Result};
use crate::quench::{ReducedDensity, Subsystem};
use crate::C64;

use super::hermite::wavefunction_samples;

/// Marginal width of the vacuum Gaussian, 1/√2.
const VACUUM_WIDTH: f64 = std::f64::consts::FRAC_1_SQRT_2;
/// Pure-component weights below this are dropped.
const COMPONENT_FLOOR: f64 = 1e-12;
/// Occupancy of the top tenth of the Fock ladder above this flags aliasing.
const TAIL_LIMIT: f64 = 1e-6;
/// Margin around the second-moment box, in vacuum widths.
const BOX_MARGIN: f64 = 6.0;
/// Half-width of the second-moment box, in standard deviations. Quench
/// states are far from Gaussian; one σ would clip enough tail to break the
/// 1e-4 normalization contract.
const SIGMA_MARGIN: f64 = 3.0;

/// Which quadrature units the axes of a [`WignerGrid`] are expressed in.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum QuadratureConvention {
    /// x = (b+b†)/√2, vacuum width 1/√2, ∬W dq dp = 1.
    Standard,
    /// Axes divided by √(NR) (values multiplied by NR) so that classical
    /// structures appear at size-independent positions.
    Scaled { nr: f64 },
}

/// Requested evaluation window. `None` ranges auto-size to the state's
/// second-moment box padded by six vacuum widths.
#[derive(Debug, Clone, Copy)]
pub struct GridSpec {
    pub q_points: usize,
    pub p_points: usize,
    pub q_range: Option<(f64, f64)>,
    pub p_range: Option<(f64, f64)>,
}

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec { q_points: 201, p_points: 201, q_range: None, p_range: None }
    }
}

/// Wigner function sampled on a uniform rectangular grid.
///
/// The axes are the ones actually used: spacings are snapped to values
/// commensurate with the Fourier evaluation, so they can differ slightly
/// from the request (same centers, same point counts).
#[derive(Debug, Clone)]
pub struct WignerGrid {
    pub q_axis: Vec<f64>,
    pub p_axis: Vec<f64>,
    /// `values[i][j]` = W(q_axis[i], p_axis[j]).
    pub values: Vec<Vec<f64>>,
    pub convention: QuadratureConvention,
    /// Set when the top tenth of the Fock ladder holds weight above 1e-6;
    /// the transform is then at risk of truncation artifacts.
    pub tail_warning: bool,
}

impl WignerGrid {
    fn dq(&self) -> f64 {
        self.q_axis[1] - self.q_axis[0]
    }

    fn dp(&self) -> f64 {
        self.p_axis[1] - self.p_axis[0]
    }

    /// 2π for standard quadratures, 2π/NR for rescaled axes — the factor
    /// that makes `overlap` of normalized states a trace inner product.
    fn overlap_prefactor(&self) -> f64 {
        match self.convention {
            QuadratureConvention::Standard => 2.0 * std::f64::consts::PI,
            QuadratureConvention::Scaled { nr } => 2.0 * std::f64::consts::PI / nr,
        }
    }

    /// ∬ W dq dp over the grid; 1 for a well-covered normalized state.
    pub fn integral(&self) -> f64 {
        let cell = self.dq() * self.dp();
        self.values.iter().flatten().sum::<f64>() * cell
    }

    /// 2π ∬ W² dq dp (convention-consistent prefactor); equals Tr ρ².
    pub fn purity(&self) -> f64 {
        let cell = self.dq() * self.dp();
        let sq: f64 = self.values.iter().flatten().map(|w| w * w).sum();
        self.overlap_prefactor() * sq * cell
    }

    /// W at the grid point nearest to (q, p).
    pub fn value_near(&self, q: f64, p: f64) -> f64 {
        let qi = nearest_index(&self.q_axis, q);
        let pj = nearest_index(&self.p_axis, p);
        self.values[qi][pj]
    }

    /// ∫ W dp for every q — the coordinate marginal ⟨q|ρ|q⟩.
    pub fn coordinate_marginal(&self) -> Vec<f64> {
        let dp = self.dp();
        self.values.iter().map(|row| row.iter().sum::<f64>() * dp).collect()
    }

    /// Relabels the axes into scaled quadratures q/√(NR). Total probability
    /// and overlaps are preserved; only display units change.
    pub fn rescaled(&self, nr: f64) -> Result<WignerGrid> {
        if self.convention != QuadratureConvention::Standard {
            return Err(Error::InvalidParameter {
                field: "convention",
                message: "grid is already in scaled units".into(),
            });
        }
        if !(nr > 0.0) {
            return Err(Error::InvalidParameter {
                field: "nr",
                message: format!("NR must be positive, got {nr}"),
            });
        }
        let root = nr.sqrt();
        Ok(WignerGrid {
            q_axis: self.q_axis.iter().map(|q| q / root).collect(),
            p_axis: self.p_axis.iter().map(|p| p / root).collect(),
            values: self
                .values
                .iter()
                .map(|row| row.iter().map(|w| w * nr).collect())
                .collect(),
            convention: QuadratureConvention::Scaled { nr },
            tail_warning: self.tail_warning,
        })
    }

    /// Plain-matrix CSV: a `# {json}` header line carrying the axes and
    /// convention (merged with `extra`, e.g. a time stamp and run
    /// parameters), then one comma-separated row per q value.
    pub fn export_csv<W: std::io::Write>(
        &self,
        extra: Option<&serde_json::Value>,
        out: &mut W,
    ) -> Result<()> {
        let mut header = json!({
            "q_start": self.q_axis[0],
            "q_step": self.dq(),
            "q_points": self.q_axis.len(),
            "p_start": self.p_axis[0],
            "p_step": self.dp(),
            "p_points": self.p_axis.len(),
            "convention": match self.convention {
                QuadratureConvention::Standard => json!("standard"),
                QuadratureConvention::Scaled { nr } => json!({"scaled": nr}),
            },
            "tail_warning": self.tail_warning,
        });
        if let Some(serde_json::Value::Object(map)) = extra {
            for (k, v) in map {
                header[k.as_str()] = v.clone();
            }
        }
        writeln!(out, "# {header}")?;
        for row in &self.values {
            let line: Vec<String> = row.iter().map(|w| format!("{w:.12e}")).collect();
            writeln!(out, "{}", line.join(","))?;
        }
        Ok(())
    }
}

fn nearest_index(axis: &[f64], value: f64) -> usize {
    let step = axis[1] - axis[0];
    let raw = ((value - axis[0]) / step).round();
    (raw.max(0.0) as usize).min(axis.len() - 1)
}

/// First and second quadrature moments of a Fock-basis density matrix:
/// (⟨x⟩, ⟨p⟩, σ_x, σ_p).
pub(crate) fn quadrature_moments(rho: &DMatrix<C64>) -> (f64, f64, f64, f64) {
    let nf = rho.nrows();
    let mut b_mean = C64::new(0.0, 0.0); // ⟨b⟩ = Σ √(n+1) ρ_{n+1,n}
    let mut b2_mean = C64::new(0.0, 0.0); // ⟨b²⟩ = Σ √((n+1)(n+2)) ρ_{n+2,n}
    let mut n_mean = 0.0;
    for n in 0..nf {
        n_mean += n as f64 * rho[(n, n)].re;
        if n + 1 < nf {
            b_mean += ((n + 1) as f64).sqrt() * rho[(n + 1, n)];
        }
        if n + 2 < nf {
            b2_mean += (((n + 1) * (n + 2)) as f64).sqrt() * rho[(n + 2, n)];
        }
    }
    let mx = std::f64::consts::SQRT_2 * b_mean.re;
    let mp = std::f64::consts::SQRT_2 * b_mean.im;
    let x2 = 0.5 * (1.0 + 2.0 * n_mean + 2.0 * b2_mean.re);
    let p2 = 0.5 * (1.0 + 2.0 * n_mean - 2.0 * b2_mean.re);
    let sx = (x2 - mx * mx).max(0.0).sqrt();
    let sp = (p2 - mp * mp).max(0.0).sqrt();
    (mx, mp, sx, sp)
}

/// The auto-sizing box for one state: the three-standard-deviation box
/// padded by six vacuum widths on every side.
pub(crate) fn moment_box(rho: &DMatrix<C64>) -> ((f64, f64), (f64, f64)) {
    let (mx, mp, sx, sp) = quadrature_moments(rho);
    let pad = BOX_MARGIN * VACUUM_WIDTH;
    let (hx, hp) = (SIGMA_MARGIN * sx + pad, SIGMA_MARGIN * sp + pad);
    ((mx - hx, mx + hx), (mp - hp, mp + hp))
}

struct PureComponent {
    weight: f64,
    coeffs: Vec<C64>,
}

fn spectral_components(rho: &DMatrix<C64>) -> Result<Vec<PureComponent>> {
    let nf = rho.nrows();
    let m = Mat::<faer::c64>::from_fn(nf, nf, |r, c| rho[(r, c)]);
    let evd = m
        .self_adjoint_eigen(Side::Lower)
        .map_err(|_| Error::SolverFailure { residual: f64::NAN })?;
    let mut components = Vec::new();
    for k in 0..nf {
        let weight = evd.S().column_vector()[k].re;
        if weight > COMPONENT_FLOOR {
            let coeffs: Vec<C64> = (0..nf).map(|i| evd.U()[(i, k)]).collect();
            components.push(PureComponent { weight, coeffs });
        }
    }
    Ok(components)
}

fn validate_density(rho: &ReducedDensity) -> Result<()> {
    if rho.subsystem != Subsystem::Field {
        return Err(Error::InvalidParameter {
            field: "subsystem",
            message: "Wigner transform expects the reduced field state".into(),
        });
    }
    let nf = rho.matrix.nrows();
    if nf < 2 || rho.matrix.ncols() != nf {
        return Err(Error::InvalidParameter {
            field: "rho",
            message: format!("need a square Fock matrix of dimension ≥ 2, got {nf}"),
        });
    }
    let trace = rho.trace();
    if (trace - 1.0).abs() > 1e-8 {
        return Err(Error::InvalidParameter {
            field: "rho",
            message: format!("trace must be 1, got {trace:.3e}"),
        });
    }
    Ok(())
}

fn oriented(range: (f64, f64), field: &'static str) -> Result<(f64, f64)> {
    if !(range.1 > range.0) || !range.0.is_finite() || !range.1.is_finite() {
        return Err(Error::InvalidParameter {
            field,
            message: format!("range ({}, {}) is not increasing and finite", range.0, range.1),
        });
    }
    Ok(range)
}

/// Wigner function of the reduced field state on (approximately) the
/// requested grid.
///
/// The momentum spacing is matched to a power-of-two Fourier length and the
/// coordinate spacing snapped to a multiple of the sampling lattice, so the
/// returned axes — same centers, same counts — are authoritative.
pub fn wigner(rho: &ReducedDensity, spec: &GridSpec) -> Result<WignerGrid> {
    validate_density(rho)?;
    if spec.q_points < 2 || spec.p_points < 2 {
        return Err(Error::InvalidParameter {
            field: "grid",
            message: "need at least 2 points per axis".into(),
        });
    }
    let nf = rho.matrix.nrows();
    let (auto_q, auto_p) = moment_box(&rho.matrix);
    let (q0, q1) = oriented(spec.q_range.unwrap_or(auto_q), "q_range")?;
    let (p0, p1) = oriented(spec.p_range.unwrap_or(auto_p), "p_range")?;

    // Fourier layout: Δp π/(h K) with K a power of two and h below both an
    // absolute bound and the Nyquist bound for the largest Fock wavevector.
    let dp = (p1 - p0) / (spec.p_points - 1) as f64;
    let k_max = (2.0 * (nf - 1) as f64 + 1.0).sqrt().max(4.0);
    let h_target = (0.25 * std::f64::consts::PI / k_max).min(0.04);
    let fft_len = (std::f64::consts::PI / (h_target * dp)).ceil() as usize;
    let fft_len = fft_len.next_power_of_two();
    if fft_len > (1 << 22) {
        return Err(Error::AreaUnderResolved(format!(
            "momentum spacing {dp:.3e} needs a {fft_len}-point transform"
        )));
    }
    if spec.p_points > fft_len {
        return Err(Error::InvalidParameter {
            field: "p_points",
            message: format!("{} exceeds the transform length {fft_len}", spec.p_points),
        });
    }
    let h = std::f64::consts::PI / (fft_len as f64 * dp);

    let dq_req = (q1 - q0) / (spec.q_points - 1) as f64;
    let stride = ((dq_req / h).round() as usize).max(1);
    let dq = stride as f64 * h;
    let q_center = 0.5 * (q0 + q1);
    let p_center = 0.5 * (p0 + p1);
    let q_axis: Vec<f64> = (0..spec.q_points)
        .map(|i| q_center + (i as f64 - (spec.q_points - 1) as f64 / 2.0) * dq)
        .collect();
    let half = ((spec.p_points - 1) / 2) as i64;
    let p_axis: Vec<f64> =
        (0..spec.p_points).map(|j| p_center + (j as i64 - half) as f64 * dp).collect();

    // Shared sampling lattice covering every q ± s pairing.
    let lattice_len = (spec.q_points - 1) * stride + fft_len + 1;
    let x0 = q_axis[0] - (fft_len / 2) as f64 * h;
    let lattice: Vec<f64> = (0..lattice_len).map(|i| x0 + i as f64 * h).collect();

    let components = spectral_components(&rho.matrix)?;
    let sampled: Vec<(f64, Vec<C64>)> = components
        .par_iter()
        .map(|c| (c.weight, wavefunction_samples(&c.coeffs, &lattice)))
        .collect();

    // e^{−2i p_center k h} modulation shifting the momentum window.
    let modulation: Vec<C64> = (0..fft_len)
        .map(|k| {
            let kk = if k < fft_len / 2 { k as i64 } else { k as i64 - fft_len as i64 };
            let phase = -2.0 * p_center * kk as f64 * h;
            C64::new(phase.cos(), phase.sin())
        })
        .collect();

    let fft = FftPlanner::<f64>::new().plan_fft_forward(fft_len);
    let scale = h / std::f64::consts::PI;
    let values: Vec<Vec<f64>> = (0..spec.q_points)
        .into_par_iter()
        .map(|qi| {
            let base = qi * stride + fft_len / 2;
            let mut row = vec![0.0; spec.p_points];
            let mut buf = vec![C64::new(0.0, 0.0); fft_len];
            for (weight, phi) in &sampled {
                for (k, slot) in buf.iter_mut().enumerate() {
                    let kk = if k < fft_len / 2 { k as i64 } else { k as i64 - fft_len as i64 };
                    let plus = phi[(base as i64 + kk) as usize];
                    let minus = phi[(base as i64 - kk) as usize];
                    *slot = plus * minus.conj() * modulation[k];
                }
                fft.process(&mut buf);
                for (j, value) in row.iter_mut().enumerate() {
                    let freq = (j as i64 - half).rem_euclid(fft_len as i64) as usize;
                    *value += weight * scale * buf[freq].re;
                }
            }
            row
        })
        .collect();

    let tail_floor = (0.9 * (nf - 1) as f64).ceil() as usize;
    let tail: f64 = (tail_floor..nf).map(|n| rho.matrix[(n, n)].re).sum();

    Ok(WignerGrid {
        q_axis,
        p_axis,
        values,
        convention: QuadratureConvention::Standard,
        tail_warning: tail > TAIL_LIMIT,
    })
}

/// Trace inner product 2π ∬ W₁ W₂ dq dp = Tr ρ₁ρ₂ (with the
/// convention-consistent prefactor). Both grids must share axes and
/// convention exactly.
pub fn wigner_overlap(a: &WignerGrid, b: &WignerGrid) -> Result<f64> {
    if a.convention != b.convention {
        return Err(Error::GridMismatch("quadrature conventions differ".into()));
    }
    if a.q_axis.len() != b.q_axis.len() || a.p_axis.len() != b.p_axis.len() {
        return Err(Error::GridMismatch(format!(
            "{}×{} grid vs {}×{}",
            a.q_axis.len(),
            a.p_axis.len(),
            b.q_axis.len(),
            b.p_axis.len()
        )));
    }
    let axes_match = a
        .q_axis
        .iter()
        .zip(&b.q_axis)
        .chain(a.p_axis.iter().zip(&b.p_axis))
        .all(|(x, y)| (x - y).abs() <= 1e-9 * (1.0 + x.abs()));
    if !axes_match {
        return Err(Error::GridMismatch("axes differ; evaluate on a shared box".into()));
    }
    let cell = a.dq() * a.dp();
    let mut acc = 0.0;
    for (ra, rb) in a.values.iter().zip(&b.values) {
        for (wa, wb) in ra.iter().zip(rb) {
            acc += wa * wb;
        }
    }
    Ok(a.overlap_prefactor() * acc * cell)
}
