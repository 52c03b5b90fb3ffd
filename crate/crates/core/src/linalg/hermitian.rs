//! Cyclic Jacobi eigensolver for small Hermitian matrices.

use super::{CMat, C64, ZERO};
use crate::error::{Error, Result};

/// Eigenvalues below this are treated as rounding noise on an exact zero.
pub const PSD_CLAMP: f64 = 1e-10;

const HERMITIAN_TOL: f64 = 1e-12;
const MAX_SWEEPS: usize = 60;

/// Real eigenvalues (ascending) and orthonormal eigenvectors, stored as the
/// columns of `vectors`.
#[derive(Clone, Debug)]
pub struct HermitianEigen<const N: usize> {
    pub values: [f64; N],
    pub vectors: CMat<N>,
}

impl<const N: usize> HermitianEigen<N> {
    pub fn vector(&self, k: usize) -> [C64; N] {
        self.vectors.column(k)
    }

    /// `V · diag(f(λ)) · V†`
    pub fn map_spectrum(&self, f: impl Fn(f64) -> f64) -> CMat<N> {
        let d = CMat::<N>::from_real_diag(&self.values.map(f));
        self.vectors * d * self.vectors.adjoint()
    }
}

fn off_diagonal_sq<const N: usize>(a: &CMat<N>) -> f64 {
    let mut s = 0.0;
    for r in 0..N {
        for c in 0..N {
            if r != c {
                s += a.0[r][c].norm_sqr();
            }
        }
    }
    s
}

/// Eigendecomposition of a Hermitian matrix.
///
/// Fails with [`Error::NotHermitian`] when `‖M − M†‖_max` exceeds `1e-12`
/// relative to `max(1, ‖M‖_max)`.
pub fn hermitian_eig<const N: usize>(m: &CMat<N>) -> Result<HermitianEigen<N>> {
    m.ensure_finite()?;
    let asym = m.max_abs_diff(&m.adjoint());
    if asym > HERMITIAN_TOL * m.max_abs().max(1.0) {
        return Err(Error::NotHermitian { asymmetry: asym });
    }
    let mut a = m.hermitian_part();
    let mut v = CMat::<N>::identity();
    let total = a.frobenius_norm().powi(2);
    let stop = (f64::EPSILON * 1e-4).powi(2) * total;

    for _ in 0..MAX_SWEEPS {
        if off_diagonal_sq(&a) <= stop {
            break;
        }
        for p in 0..N {
            for q in p + 1..N {
                rotate(&mut a, &mut v, p, q);
            }
        }
    }

    let mut order: [usize; N] = std::array::from_fn(|k| k);
    order.sort_by(|&x, &y| a.0[x][x].re.total_cmp(&a.0[y][y].re));
    let values = order.map(|k| a.0[k][k].re);
    let vectors = CMat::<N>::from_fn(|r, c| v.0[r][order[c]]);
    Ok(HermitianEigen { values, vectors })
}

/// One Jacobi rotation annihilating `a[p][q]`.
fn rotate<const N: usize>(a: &mut CMat<N>, v: &mut CMat<N>, p: usize, q: usize) {
    let apq = a.0[p][q];
    let b = apq.norm();
    if b == 0.0 {
        return;
    }
    let phase = apq / b;
    let (app, aqq) = (a.0[p][p].re, a.0[q][q].re);
    let theta = (aqq - app) / (2.0 * b);
    let t = if theta.is_finite() {
        theta.signum() / (theta.abs() + theta.hypot(1.0))
    } else {
        0.0
    };
    let c = 1.0 / t.hypot(1.0);
    let s = t * c;
    // U = diag(1, e^{-iφ}) · [[c, s], [-s, c]] on the (p, q) plane
    let u_pp = C64::new(c, 0.0);
    let u_pq = C64::new(s, 0.0);
    let u_qp = -phase.conj() * s;
    let u_qq = phase.conj() * c;

    // A ← A U
    for r in 0..N {
        let (x, y) = (a.0[r][p], a.0[r][q]);
        a.0[r][p] = x * u_pp + y * u_qp;
        a.0[r][q] = x * u_pq + y * u_qq;
    }
    // A ← U† A
    for col in 0..N {
        let (x, y) = (a.0[p][col], a.0[q][col]);
        a.0[p][col] = u_pp.conj() * x + u_qp.conj() * y;
        a.0[q][col] = u_pq.conj() * x + u_qq.conj() * y;
    }
    a.0[p][q] = ZERO;
    a.0[q][p] = ZERO;
    a.0[p][p] = C64::new(a.0[p][p].re, 0.0);
    a.0[q][q] = C64::new(a.0[q][q].re, 0.0);
    for r in 0..N {
        let (x, y) = (v.0[r][p], v.0[r][q]);
        v.0[r][p] = x * u_pp + y * u_qp;
        v.0[r][q] = x * u_pq + y * u_qq;
    }
}

/// Principal square root of a Hermitian positive semidefinite matrix.
///
/// Eigenvalues in `[-1e-10, 0)` are clamped to zero; anything more negative
/// is rejected with [`Error::NotPsd`].
pub fn psd_sqrt<const N: usize>(m: &CMat<N>) -> Result<CMat<N>> {
    let eig = hermitian_eig(m)?;
    if let Some(&bad) = eig.values.iter().find(|&&x| x < -PSD_CLAMP) {
        return Err(Error::NotPsd { eigenvalue: bad });
    }
    Ok(eig.map_spectrum(|x| x.max(0.0).sqrt()).hermitian_part())
}
