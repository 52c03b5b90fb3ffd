//! General complex eigensolver: Hessenberg reduction, shifted QR to complex
//! Schur form, triangular back-substitution for right eigenvectors, and
//! left eigenvectors from the inverse of the right eigenvector matrix so
//! that `⟨l_j|r_k⟩ = δ_jk` holds by construction.

use super::{inner, inverse, norm, CMat, CVec, Givens, C64, ONE, ZERO};
use crate::error::{Error, Result};

const MAX_ITER_PER_EIGENVALUE: usize = 100;

/// `|⟨l̂|r̂⟩|` below this (unit vectors) signals a defective matrix.
pub const NEAR_DEFECTIVE_OVERLAP: f64 = 1e-8;

/// Eigenvalues with paired right and left eigenvectors.
///
/// Right vectors have unit norm; left vectors are scaled so that
/// `⟨l_j|r_k⟩ = δ_jk`. Ordering is by real part, then imaginary part.
#[derive(Clone, Debug)]
pub struct EigenPairs<const N: usize> {
    pub values: [C64; N],
    pub right_vectors: [CVec<N>; N],
    pub left_vectors: [CVec<N>; N],
    /// `max_j ‖M r_j − λ_j r_j‖` over the unit right vectors.
    pub residual: f64,
}

impl<const N: usize> EigenPairs<N> {
    /// `Σ_j f(λ_j) |r_j⟩⟨l_j|`
    pub fn assemble(&self, f: impl Fn(C64) -> C64) -> CMat<N> {
        let mut out = CMat::<N>::zeros();
        for j in 0..N {
            out +=
                CMat::outer(&self.right_vectors[j], &self.left_vectors[j]).scale(f(self.values[j]));
        }
        out
    }

    /// Spectral projector onto the eigenvalues selected by `keep`.
    pub fn projector(&self, keep: impl Fn(usize) -> bool) -> CMat<N> {
        let mut out = CMat::<N>::zeros();
        for j in (0..N).filter(|&j| keep(j)) {
            out += CMat::outer(&self.right_vectors[j], &self.left_vectors[j]);
        }
        out
    }
}

struct Schur<const N: usize> {
    q: CMat<N>,
    t: CMat<N>,
}

fn hessenberg<const N: usize>(m: &CMat<N>) -> (CMat<N>, CMat<N>) {
    let mut h = *m;
    let mut q = CMat::<N>::identity();
    for k in 0..N.saturating_sub(2) {
        let alpha_norm = (k + 1..N).map(|r| h.0[r][k].norm_sqr()).sum::<f64>().sqrt();
        if alpha_norm == 0.0 {
            continue;
        }
        let x0 = h.0[k + 1][k];
        let phase = if x0.norm() > 0.0 { x0 / x0.norm() } else { ONE };
        let alpha = -phase * alpha_norm;
        let mut v = [ZERO; N];
        for r in k + 1..N {
            v[r] = h.0[r][k];
        }
        v[k + 1] -= alpha;
        let vn2: f64 = v.iter().map(|z| z.norm_sqr()).sum();
        if vn2 == 0.0 {
            continue;
        }
        // P = I − 2 v v† / (v†v); H ← P H P, Q ← Q P
        let p = CMat::<N>::identity() - CMat::outer(&v, &v).scale_re(2.0 / vn2);
        h = p * h * p;
        q = q * p;
        for r in k + 2..N {
            h.0[r][k] = ZERO;
        }
    }
    (h, q)
}

/// Eigenvalues of `[[a, b], [c, d]]`, the one closer to `d` first.
fn eig2(a: C64, b: C64, c: C64, d: C64) -> (C64, C64) {
    let half_tr = (a + d) * 0.5;
    let disc = ((a - d) * 0.5).powi(2) + b * c;
    let root = disc.sqrt();
    let (l1, l2) = (half_tr + root, half_tr - root);
    if (l1 - d).norm() <= (l2 - d).norm() {
        (l1, l2)
    } else {
        (l2, l1)
    }
}

fn complex_schur<const N: usize>(m: &CMat<N>) -> Result<Schur<N>> {
    let (mut t, mut q) = hessenberg(m);
    let scale = t.frobenius_norm();
    if scale == 0.0 {
        return Ok(Schur { q, t });
    }
    let eps = f64::EPSILON;
    let mut hi = N - 1;
    let mut iter = 0usize;
    let mut total_iter = 0usize;

    while hi > 0 {
        // find start of the unreduced block ending at `hi`
        let mut lo = hi;
        while lo > 0 {
            let sub = t.0[lo][lo - 1].norm();
            let mut local = t.0[lo - 1][lo - 1].norm() + t.0[lo][lo].norm();
            if local == 0.0 {
                local = scale;
            }
            if sub <= eps * local {
                t.0[lo][lo - 1] = ZERO;
                break;
            }
            lo -= 1;
        }
        if lo == hi {
            hi -= 1;
            iter = 0;
            continue;
        }
        if hi - lo == 1 {
            // 2x2 block: rotate an eigenvector onto e_lo
            let (a, b, c, d) = (t.0[lo][lo], t.0[lo][hi], t.0[hi][lo], t.0[hi][hi]);
            let (lambda, _) = eig2(a, b, c, d);
            let v1 = (b, lambda - a);
            let v2 = (lambda - d, c);
            let (x, y) = if v1.0.norm_sqr() + v1.1.norm_sqr() >= v2.0.norm_sqr() + v2.1.norm_sqr() {
                v1
            } else {
                v2
            };
            let g = Givens::zeroing(x, y);
            g.rotate_rows(&mut t, lo, lo..N);
            g.rotate_cols(&mut t, lo, 0..N);
            g.rotate_cols(&mut q, lo, 0..N);
            t.0[hi][lo] = ZERO;
            if lo == 0 {
                break;
            }
            hi = lo - 1;
            iter = 0;
            continue;
        }

        iter += 1;
        total_iter += 1;
        if total_iter > MAX_ITER_PER_EIGENVALUE * N {
            return Err(Error::ConvergenceFailure {
                tol: eps,
                residual: t.0[hi][hi - 1].norm(),
            });
        }
        let shift = if iter % 11 == 10 {
            // exceptional shift to break cycles
            t.0[hi][hi] + C64::new(0.75 * t.0[hi][hi - 1].norm(), 0.0)
        } else {
            eig2(
                t.0[hi - 1][hi - 1],
                t.0[hi - 1][hi],
                t.0[hi][hi - 1],
                t.0[hi][hi],
            )
            .0
        };

        // explicit shifted QR step on rows/cols lo..=hi
        for k in lo..=hi {
            t.0[k][k] -= shift;
        }
        let mut rotations = Vec::with_capacity(hi - lo);
        for k in lo..hi {
            let g = Givens::zeroing(t.0[k][k], t.0[k + 1][k]);
            g.rotate_rows(&mut t, k, k..N);
            t.0[k + 1][k] = ZERO;
            rotations.push((k, g));
        }
        for (k, g) in rotations {
            g.rotate_cols(&mut t, k, 0..(k + 2).min(hi + 1));
            g.rotate_cols(&mut q, k, 0..N);
        }
        for k in lo..=hi {
            t.0[k][k] += shift;
        }
    }
    for r in 1..N {
        for c in 0..r {
            t.0[r][c] = ZERO;
        }
    }
    Ok(Schur { q, t })
}

/// Eigenvalues only, in Schur order (unsorted).
pub fn eigenvalues_general<const N: usize>(m: &CMat<N>) -> Result<[C64; N]> {
    m.ensure_finite()?;
    Ok(complex_schur(m)?.t.diag())
}

/// Orders by real part ascending; real parts within `tie` count as equal and
/// are ordered by imaginary part.
fn sort_order<const N: usize>(values: &[C64; N], tie: f64) -> [usize; N] {
    let mut order: [usize; N] = std::array::from_fn(|k| k);
    // insertion sort: the tolerant comparison is not a total order
    for i in 1..N {
        let mut j = i;
        while j > 0 {
            let (a, b) = (values[order[j - 1]], values[order[j]]);
            let before = if (a.re - b.re).abs() <= tie {
                b.im < a.im
            } else {
                b.re < a.re
            };
            if !before {
                break;
            }
            order.swap(j - 1, j);
            j -= 1;
        }
    }
    order
}

/// Eigenvalues with right and left eigenvectors of a general complex matrix.
///
/// Fails with [`Error::NearDefective`] when some `|⟨l̂_j|r̂_j⟩| < 1e-8`
/// (unit-normalized vectors), i.e. the eigenvector matrix is numerically
/// singular, and with [`Error::ConvergenceFailure`] when the residual
/// exceeds `tol`.
pub fn eig_general<const N: usize>(m: &CMat<N>, tol: f64) -> Result<EigenPairs<N>> {
    if !(tol > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    m.ensure_finite()?;
    let Schur { q, t } = complex_schur(m)?;
    let tnorm = t.frobenius_norm();
    let smin = (f64::EPSILON * tnorm).max(f64::MIN_POSITIVE);

    // eigenvectors of the triangular factor
    let mut right = [[ZERO; N]; N];
    for k in 0..N {
        let lambda = t.0[k][k];
        let mut x = [ZERO; N];
        x[k] = ONE;
        for j in (0..k).rev() {
            let rhs: C64 = (j + 1..=k).map(|c| t.0[j][c] * x[c]).sum();
            let mut den = t.0[j][j] - lambda;
            if den.norm() < smin {
                den = C64::new(smin, 0.0);
            }
            x[j] = -rhs / den;
        }
        let v = q.mul_vec(&x);
        let n = norm(&v);
        right[k] = v.map(|z| z / n);
    }

    let vmat = CMat::<N>::from_columns(&right);
    let vinv = inverse(&vmat, f64::EPSILON).ok_or(Error::NearDefective { overlap: 0.0 })?;
    let mut left = [[ZERO; N]; N];
    for k in 0..N {
        left[k] = vinv.row(k).map(|z| z.conj());
    }

    let mut worst_overlap = f64::INFINITY;
    for k in 0..N {
        // r is unit, ⟨l|r⟩ = 1, so |⟨l̂|r̂⟩| = 1/‖l‖
        worst_overlap = worst_overlap.min(1.0 / norm(&left[k]));
    }
    if !(worst_overlap >= NEAR_DEFECTIVE_OVERLAP) {
        return Err(Error::NearDefective {
            overlap: worst_overlap,
        });
    }

    let values = t.diag();
    let mut residual: f64 = 0.0;
    for k in 0..N {
        let mv = m.mul_vec(&right[k]);
        let r: CVec<N> = std::array::from_fn(|i| mv[i] - values[k] * right[k][i]);
        residual = residual.max(norm(&r));
    }
    if !(residual <= tol) {
        return Err(Error::ConvergenceFailure { tol, residual });
    }

    let tie = 1e-12 * tnorm.max(1.0);
    let order = sort_order(&values, tie);
    Ok(EigenPairs {
        values: order.map(|k| values[k]),
        right_vectors: order.map(|k| right[k]),
        left_vectors: order.map(|k| left[k]),
        residual,
    })
}

/// `max_{j,k} |⟨l_j|r_k⟩ − δ_jk|`
pub fn biorthogonality_error<const N: usize>(pairs: &EigenPairs<N>) -> f64 {
    let mut worst: f64 = 0.0;
    for j in 0..N {
        for k in 0..N {
            let target = if j == k { ONE } else { ZERO };
            worst =
                worst.max((inner(&pairs.left_vectors[j], &pairs.right_vectors[k]) - target).norm());
        }
    }
    worst
}
