//! One-sided (Hestenes) Jacobi singular value decomposition.
//!
//! Small singular values come out with absolute error `O(ε‖M‖)` instead
//! of the `O(√(ε‖M‖))` one gets by square-rooting eigenvalues of `M†M`.
//! Wootters' λ's and `√(ρ†ρ)` of rank-deficient states both need that.

use super::{CMat, C64};
use crate::error::{Error, Result};

const MAX_SWEEPS: usize = 60;

/// `M = U · diag(σ) · V†` with `σ` sorted in decreasing order.
#[derive(Clone, Debug)]
pub struct Svd<const N: usize> {
    pub singular_values: [f64; N],
    /// Left singular vectors as columns. Columns belonging to zero singular
    /// values are left as zero vectors.
    pub u: CMat<N>,
    /// Right singular vectors as columns (always a full unitary).
    pub v: CMat<N>,
}

impl<const N: usize> Svd<N> {
    /// `√(M†M) = V · diag(σ) · V†`
    pub fn abs(&self) -> CMat<N> {
        let d = CMat::<N>::from_real_diag(&self.singular_values);
        (self.v * d * self.v.adjoint()).hermitian_part()
    }
}

pub fn singular_value_decomposition<const N: usize>(m: &CMat<N>) -> Result<Svd<N>> {
    m.ensure_finite()?;
    let mut a = *m;
    let mut v = CMat::<N>::identity();
    let col_dot = |a: &CMat<N>, i: usize, j: usize| -> C64 {
        (0..N).map(|r| a.0[r][i].conj() * a.0[r][j]).sum()
    };
    let col_sq = |a: &CMat<N>, i: usize| -> f64 { (0..N).map(|r| a.0[r][i].norm_sqr()).sum() };

    let mut converged = false;
    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for i in 0..N {
            for j in i + 1..N {
                let alpha = col_sq(&a, i);
                let beta = col_sq(&a, j);
                let g = col_dot(&a, i, j);
                let gn = g.norm();
                if gn == 0.0 || gn <= f64::EPSILON * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let phase = g / gn;
                let zeta = (beta - alpha) / (2.0 * gn);
                let t = zeta.signum() / (zeta.abs() + zeta.hypot(1.0));
                let c = 1.0 / t.hypot(1.0);
                let s = c * t;
                // columns (i, j) ← (c·a_i − s·ā_j, s·a_i + c·ā_j), ā_j = e^{-iφ} a_j
                for r in 0..N {
                    let xi = a.0[r][i];
                    let xj = a.0[r][j] * phase.conj();
                    a.0[r][i] = xi * c - xj * s;
                    a.0[r][j] = xi * s + xj * c;
                    let yi = v.0[r][i];
                    let yj = v.0[r][j] * phase.conj();
                    v.0[r][i] = yi * c - yj * s;
                    v.0[r][j] = yi * s + yj * c;
                }
            }
        }
        if !rotated {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::ConvergenceFailure {
            tol: f64::EPSILON,
            residual: f64::NAN,
        });
    }

    let norms: [f64; N] = std::array::from_fn(|k| col_sq(&a, k).sqrt());
    let mut order: [usize; N] = std::array::from_fn(|k| k);
    order.sort_by(|&x, &y| norms[y].total_cmp(&norms[x]));
    let singular_values = order.map(|k| norms[k]);
    let v_sorted = CMat::<N>::from_fn(|r, c| v.0[r][order[c]]);
    let u = CMat::<N>::from_fn(|r, c| {
        let k = order[c];
        if norms[k] > 0.0 {
            a.0[r][k] / norms[k]
        } else {
            C64::new(0.0, 0.0)
        }
    });
    Ok(Svd {
        singular_values,
        u,
        v: v_sorted,
    })
}
