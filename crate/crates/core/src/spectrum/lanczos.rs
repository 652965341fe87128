//! Lanczos iteration for the lowest eigenpair of a sparse symmetric operator.
//!
//! Used where only the ground state is needed — cutoff-convergence probes and
//! ground-state curves — at a fraction of the dense-solve cost. Full
//! reorthogonalization keeps the Krylov basis clean; the basis is small
//! (a few hundred vectors), so the quadratic cost is irrelevant next to a
//! dense solve of the full dimension.

use crate::error::{Error, Result};
use crate::model::OperatorMatrix;
use crate::spectrum::eigen::solve_dense_symmetric;
use nalgebra::DMatrix;

const CHECK_EVERY: usize = 5;

/// Lowest eigenvalue and eigenvector of `h`. The seed, when given, biases
/// the Krylov space (and confines it to an invariant subspace, e.g. a parity
/// block, if the seed lies in one); otherwise a fixed deterministic vector
/// with support everywhere is used.
pub fn lanczos_ground_state(
    h: &OperatorMatrix,
    seed: Option<&[f64]>,
    max_iter: usize,
    tol: f64,
) -> Result<(f64, Vec<f64>)> {
    let dim = h.dimension;
    let mut q = match seed {
        Some(s) => {
            if s.len() != dim {
                return Err(Error::GridMismatch(format!(
                    "seed length {} vs operator dimension {dim}",
                    s.len()
                )));
            }
            s.to_vec()
        }
        None => (0..dim).map(|i| 1.0 + 0.3 * ((i + 1) as f64).sin()).collect(),
    };
    normalize(&mut q);

    let mut basis: Vec<Vec<f64>> = vec![q.clone()];
    let mut alphas: Vec<f64> = Vec::new();
    let mut betas: Vec<f64> = Vec::new();
    let mut w = vec![0.0; dim];
    let mut previous_theta = f64::INFINITY;

    for k in 0..max_iter {
        h.matvec(&basis[k], &mut w);
        let alpha = dot(&basis[k], &w);
        alphas.push(alpha);
        for (wi, qi) in w.iter_mut().zip(&basis[k]) {
            *wi -= alpha * qi;
        }
        if k > 0 {
            let beta_prev = betas[k - 1];
            for (wi, qi) in w.iter_mut().zip(&basis[k - 1]) {
                *wi -= beta_prev * qi;
            }
        }
        // Two rounds of full reorthogonalization.
        for _ in 0..2 {
            for b in &basis {
                let c = dot(b, &w);
                for (wi, bi) in w.iter_mut().zip(b) {
                    *wi -= c * bi;
                }
            }
        }
        let beta = dot(&w, &w).sqrt();

        let at_checkpoint = (k + 1) % CHECK_EVERY == 0 || k + 1 == max_iter || beta < 1e-13;
        if at_checkpoint {
            let (theta, ritz_small) = lowest_ritz_pair(&alphas, &betas)?;
            let scale = theta.abs().max(1.0);
            let residual = if beta < 1e-13 {
                0.0
            } else {
                beta * ritz_small.last().unwrap().abs()
            };
            let theta_settled = beta < 1e-13 || (previous_theta - theta).abs() < 1e-11 * scale;
            if residual < tol * scale && theta_settled {
                let mut ground = vec![0.0; dim];
                for (c, b) in ritz_small.iter().zip(&basis) {
                    for (gi, bi) in ground.iter_mut().zip(b) {
                        *gi += c * bi;
                    }
                }
                normalize(&mut ground);
                return Ok((theta, ground));
            }
            previous_theta = theta;
            if beta < 1e-13 {
                // Krylov space exhausted without meeting the tolerance.
                return Err(Error::NotConverged {
                    n_max: dim,
                    reason: format!("invariant subspace of size {} reached", basis.len()),
                });
            }
        }

        betas.push(beta);
        let mut next = w.clone();
        for x in &mut next {
            *x /= beta;
        }
        basis.push(next);
    }
    Err(Error::NotConverged {
        n_max: dim,
        reason: format!("no Lanczos convergence within {max_iter} iterations"),
    })
}

fn lowest_ritz_pair(alphas: &[f64], betas: &[f64]) -> Result<(f64, Vec<f64>)> {
    let k = alphas.len();
    let mut t = DMatrix::<f64>::zeros(k, k);
    for i in 0..k {
        t[(i, i)] = alphas[i];
        if i > 0 {
            t[(i, i - 1)] = betas[i - 1];
            t[(i - 1, i)] = betas[i - 1];
        }
    }
    let (es, vs) = solve_dense_symmetric(&t)?;
    Ok((es[0], vs.column(0).iter().copied().collect()))
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn normalize(v: &mut [f64]) {
    let n = dot(v, v).sqrt();
    for x in v {
        *x /= n;
    }
}
