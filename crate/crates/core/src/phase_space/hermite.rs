//! Harmonic-oscillator eigenfunctions by stable upward recurrence.
//!
//! ψ_{k+1}(ξ) = √(2/(k+1)) ξ ψ_k(ξ) − √(k/(k+1)) ψ_{k−1}(ξ), starting from
//! the normalized Gaussian. The pair (ψ_{k−1}, ψ_k) is carried as mantissas
//! against a shared power-of-two exponent, so the deep classically forbidden
//! region — where ψ_0 underflows while ψ_n near its turning point does not —
//! stays representable up to n ≈ 5000 without factorials ever appearing.

use crate::C64;

const PI_QUARTER_INV: f64 = 0.751_125_544_464_942_9; // π^{−1/4}
const MANTISSA_LIMIT: f64 = 8.98846567431158e307; // 2^1023
const RESCALE: f64 = 7.458340731200207e-155; // 2^−512
const RESCALE_EXP: i64 = 512;

/// Walks ψ_0, ψ_1, … at one fixed argument ξ.
struct HermiteLadder {
    prev: f64,
    cur: f64,
    exponent: i64,
    level: usize,
}

impl HermiteLadder {
    fn start(xi: f64) -> Self {
        // ψ_0 = π^{−1/4} e^{−ξ²/2}, kept as mantissa · 2^exponent.
        let log2_value = -0.5 * xi * xi * std::f64::consts::LOG2_E;
        let exponent = log2_value.floor();
        let mantissa = PI_QUARTER_INV * (log2_value - exponent).exp2();
        HermiteLadder { prev: 0.0, cur: mantissa, exponent: exponent as i64, level: 0 }
    }

    /// ψ at the current level, in absolute scale (0.0 on true underflow).
    fn value(&self) -> f64 {
        if self.exponent < -1100 {
            return 0.0;
        }
        self.cur * (self.exponent as f64).exp2()
    }

    fn advance(&mut self, xi: f64) {
        let k = self.level as f64;
        let next = (2.0 / (k + 1.0)).sqrt() * xi * self.cur - (k / (k + 1.0)).sqrt() * self.prev;
        self.prev = self.cur;
        self.cur = next;
        self.level += 1;
        let magnitude = self.cur.abs().max(self.prev.abs());
        if magnitude > MANTISSA_LIMIT * RESCALE {
            self.cur *= RESCALE;
            self.prev *= RESCALE;
            self.exponent += RESCALE_EXP;
        } else if magnitude > 0.0 && magnitude < RESCALE / PI_QUARTER_INV {
            self.cur /= RESCALE;
            self.prev /= RESCALE;
            self.exponent -= RESCALE_EXP;
        }
    }
}

/// Normalized oscillator eigenfunction ψ_n(x) for the effective Planck
/// constant `scale`: ψ_n(x; ħ) = ħ^{−1/4} ψ_n(x/√ħ; 1).
pub fn oscillator_wavefunction(n: usize, x: f64, scale: f64) -> f64 {
    assert!(scale > 0.0, "scale must be positive");
    let xi = x / scale.sqrt();
    let mut ladder = HermiteLadder::start(xi);
    for _ in 0..n {
        ladder.advance(xi);
    }
    ladder.value() * scale.powf(-0.25)
}

/// Σ_n c_n ψ_n(ξ) at unit scale, one recurrence pass per evaluation point.
pub(crate) fn wavefunction_samples(coeffs: &[C64], xis: &[f64]) -> Vec<C64> {
    xis.iter()
        .map(|&xi| {
            let mut ladder = HermiteLadder::start(xi);
            let mut acc = coeffs[0] * ladder.value();
            for c in &coeffs[1..] {
                ladder.advance(xi);
                if c.re != 0.0 || c.im != 0.0 {
                    acc += c * ladder.value();
                }
            }
            acc
        })
        .collect()
}
