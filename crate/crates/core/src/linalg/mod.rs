//! Dense fixed-size complex linear algebra.
//!
//! Everything here works on `N x N` matrices stored inline, with `N = 4`
//! (two qubits, basis `{↑↑, ↑↓, ↓↑, ↓↓}`) and `N = 2` (one qubit, basis
//! `{↑, ↓}`) being the only sizes the rest of the crate uses.

mod eig;
mod expm;
mod hermitian;
mod svd;

pub use eig::{
    biorthogonality_error, eig_general, eigenvalues_general, EigenPairs, NEAR_DEFECTIVE_OVERLAP,
};
pub use expm::matrix_exp;
pub use hermitian::{hermitian_eig, psd_sqrt, HermitianEigen, PSD_CLAMP};
pub use svd::{singular_value_decomposition, Svd};

use std::ops::{Add, AddAssign, Index, IndexMut, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;

/// Column vector of length `N`.
pub type CVec<const N: usize> = [C64; N];

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);
pub const I: C64 = C64::new(0.0, 1.0);

/// Dense `N x N` complex matrix, row-major.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CMat<const N: usize>(pub [[C64; N]; N]);

/// Two-qubit operator in the basis `{↑↑, ↑↓, ↓↑, ↓↓}`.
pub type ComplexMatrix4 = CMat<4>;

/// Single-qubit operator in the basis `{↑, ↓}`.
pub type ComplexMatrix2 = CMat<2>;

impl<const N: usize> Default for CMat<N> {
    fn default() -> Self {
        Self::zeros()
    }
}

impl<const N: usize> CMat<N> {
    pub const fn zeros() -> Self {
        CMat([[ZERO; N]; N])
    }

    pub fn identity() -> Self {
        Self::from_diag(&[ONE; N])
    }

    pub fn from_diag(d: &[C64; N]) -> Self {
        let mut m = Self::zeros();
        for (k, &v) in d.iter().enumerate() {
            m.0[k][k] = v;
        }
        m
    }

    pub fn from_real_diag(d: &[f64; N]) -> Self {
        Self::from_diag(&d.map(|x| C64::new(x, 0.0)))
    }

    pub fn from_real(rows: [[f64; N]; N]) -> Self {
        CMat(rows.map(|r| r.map(|x| C64::new(x, 0.0))))
    }

    pub fn from_fn(mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut m = Self::zeros();
        for r in 0..N {
            for c in 0..N {
                m.0[r][c] = f(r, c);
            }
        }
        m
    }

    /// `|u⟩⟨v|`
    pub fn outer(u: &CVec<N>, v: &CVec<N>) -> Self {
        Self::from_fn(|r, c| u[r] * v[c].conj())
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(|r, c| self.0[c][r].conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(|r, c| self.0[c][r])
    }

    /// Entrywise complex conjugate.
    pub fn conj(&self) -> Self {
        Self::from_fn(|r, c| self.0[r][c].conj())
    }

    pub fn trace(&self) -> C64 {
        (0..N).map(|k| self.0[k][k]).sum()
    }

    pub fn diag(&self) -> CVec<N> {
        std::array::from_fn(|k| self.0[k][k])
    }

    pub fn scale(&self, s: C64) -> Self {
        Self::from_fn(|r, c| self.0[r][c] * s)
    }

    pub fn scale_re(&self, s: f64) -> Self {
        Self::from_fn(|r, c| self.0[r][c] * s)
    }

    pub fn mul_vec(&self, v: &CVec<N>) -> CVec<N> {
        std::array::from_fn(|r| (0..N).map(|c| self.0[r][c] * v[c]).sum())
    }

    pub fn column(&self, c: usize) -> CVec<N> {
        std::array::from_fn(|r| self.0[r][c])
    }

    pub fn row(&self, r: usize) -> CVec<N> {
        self.0[r]
    }

    pub fn from_columns(cols: &[CVec<N>; N]) -> Self {
        Self::from_fn(|r, c| cols[c][r])
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.0
            .iter()
            .flatten()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.0
            .iter()
            .flatten()
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// Maximum absolute column sum.
    pub fn one_norm(&self) -> f64 {
        (0..N)
            .map(|c| (0..N).map(|r| self.0[r][c].norm()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    pub fn is_finite(&self) -> bool {
        self.0
            .iter()
            .flatten()
            .all(|z| z.re.is_finite() && z.im.is_finite())
    }

    /// Largest entry of `self - other` in modulus.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        (*self - *other).max_abs()
    }

    /// `‖A − A†‖_max ≤ tol · max(1, ‖A‖_max)`
    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.max_abs_diff(&self.adjoint()) <= tol * self.max_abs().max(1.0)
    }

    /// `(A + A†)/2`
    pub fn hermitian_part(&self) -> Self {
        (*self + self.adjoint()).scale_re(0.5)
    }

    pub fn ensure_finite(&self) -> Result<()> {
        if self.is_finite() {
            Ok(())
        } else {
            Err(Error::NonFinite)
        }
    }
}

impl CMat<2> {
    /// `A ⊗ B` in the basis `{↑↑, ↑↓, ↓↑, ↓↓}`.
    pub fn kron(&self, other: &Self) -> CMat<4> {
        CMat::<4>::from_fn(|r, c| self.0[r / 2][c / 2] * other.0[r % 2][c % 2])
    }
}

impl<const N: usize> Index<(usize, usize)> for CMat<N> {
    type Output = C64;
    fn index(&self, (r, c): (usize, usize)) -> &C64 {
        &self.0[r][c]
    }
}

impl<const N: usize> IndexMut<(usize, usize)> for CMat<N> {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut C64 {
        &mut self.0[r][c]
    }
}

impl<const N: usize> Add for CMat<N> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::from_fn(|r, c| self.0[r][c] + rhs.0[r][c])
    }
}

impl<const N: usize> AddAssign for CMat<N> {
    fn add_assign(&mut self, rhs: Self) {
        for r in 0..N {
            for c in 0..N {
                self.0[r][c] += rhs.0[r][c];
            }
        }
    }
}

impl<const N: usize> Sub for CMat<N> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::from_fn(|r, c| self.0[r][c] - rhs.0[r][c])
    }
}

impl<const N: usize> Neg for CMat<N> {
    type Output = Self;
    fn neg(self) -> Self {
        Self::from_fn(|r, c| -self.0[r][c])
    }
}

impl<const N: usize> Mul for CMat<N> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Self::from_fn(|r, c| (0..N).map(|k| self.0[r][k] * rhs.0[k][c]).sum())
    }
}

impl<const N: usize> Mul<C64> for CMat<N> {
    type Output = Self;
    fn mul(self, s: C64) -> Self {
        self.scale(s)
    }
}

impl<const N: usize> Mul<f64> for CMat<N> {
    type Output = Self;
    fn mul(self, s: f64) -> Self {
        self.scale_re(s)
    }
}

/// `⟨a|b⟩`
pub fn inner<const N: usize>(a: &CVec<N>, b: &CVec<N>) -> C64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

pub fn norm<const N: usize>(v: &CVec<N>) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

pub fn normalized<const N: usize>(v: &CVec<N>) -> CVec<N> {
    let n = norm(v);
    v.map(|z| z / n)
}

/// Which qubit of a two-qubit operator to keep.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Qubit {
    First,
    Second,
}

/// Partial trace of a two-qubit operator over the qubit that is not kept.
pub fn partial_trace(rho: &ComplexMatrix4, keep: Qubit) -> Result<ComplexMatrix2> {
    rho.ensure_finite()?;
    // basis index = 2 * (qubit 1 bit) + (qubit 2 bit)
    let out = match keep {
        Qubit::First => {
            CMat::<2>::from_fn(|a, b| (0..2).map(|k| rho.0[2 * a + k][2 * b + k]).sum())
        }
        Qubit::Second => {
            CMat::<2>::from_fn(|a, b| (0..2).map(|k| rho.0[2 * k + a][2 * k + b]).sum())
        }
    };
    Ok(out)
}

/// Pauli `σ^y ⊗ σ^y` in the two-qubit basis.
pub fn sigma_y_sigma_y() -> ComplexMatrix4 {
    CMat::from_real([
        [0.0, 0.0, 0.0, -1.0],
        [0.0, 0.0, 1.0, 0.0],
        [0.0, 1.0, 0.0, 0.0],
        [-1.0, 0.0, 0.0, 0.0],
    ])
}

/// Inverse by Gaussian elimination with partial pivoting. Returns `None`
/// when a pivot falls below `rel_pivot · ‖M‖_max`.
pub(crate) fn inverse<const N: usize>(m: &CMat<N>, rel_pivot: f64) -> Option<CMat<N>> {
    let scale = m.max_abs();
    if scale == 0.0 {
        return None;
    }
    let mut a = *m;
    let mut inv = CMat::<N>::identity();
    for col in 0..N {
        let piv = (col..N)
            .max_by(|&x, &y| a.0[x][col].norm().total_cmp(&a.0[y][col].norm()))
            .unwrap_or(col);
        if a.0[piv][col].norm() <= rel_pivot * scale {
            return None;
        }
        a.0.swap(col, piv);
        inv.0.swap(col, piv);
        let p = a.0[col][col];
        for c in 0..N {
            a.0[col][c] /= p;
            inv.0[col][c] /= p;
        }
        for r in 0..N {
            if r != col {
                let f = a.0[r][col];
                if f != ZERO {
                    for c in 0..N {
                        let (ac, ic) = (a.0[col][c], inv.0[col][c]);
                        a.0[r][c] -= f * ac;
                        inv.0[r][c] -= f * ic;
                    }
                }
            }
        }
    }
    Some(inv)
}

/// Complex Givens rotation `G = [[c, s], [-s̄, c]]` with `G·[a, b]ᵀ = [r, 0]ᵀ`.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Givens {
    c: f64,
    s: C64,
}

impl Givens {
    pub(crate) fn zeroing(a: C64, b: C64) -> Self {
        if b == ZERO {
            return Givens { c: 1.0, s: ZERO };
        }
        let an = a.norm();
        if an == 0.0 {
            return Givens {
                c: 0.0,
                s: b.conj() / b.norm(),
            };
        }
        let nrm = an.hypot(b.norm());
        Givens {
            c: an / nrm,
            s: (a / an) * b.conj() / nrm,
        }
    }

    /// `A ← G A` acting on rows `p`, `p+1`, columns `cols`.
    pub(crate) fn rotate_rows<const N: usize>(
        &self,
        a: &mut CMat<N>,
        p: usize,
        cols: std::ops::Range<usize>,
    ) {
        for c in cols {
            let (x, y) = (a.0[p][c], a.0[p + 1][c]);
            a.0[p][c] = x * self.c + self.s * y;
            a.0[p + 1][c] = -self.s.conj() * x + y * self.c;
        }
    }

    /// `A ← A G†` acting on columns `p`, `p+1`, rows `rows`.
    pub(crate) fn rotate_cols<const N: usize>(
        &self,
        a: &mut CMat<N>,
        p: usize,
        rows: std::ops::Range<usize>,
    ) {
        for r in rows {
            let (x, y) = (a.0[r][p], a.0[r][p + 1]);
            a.0[r][p] = x * self.c + y * self.s.conj();
            a.0[r][p + 1] = -x * self.s + y * self.c;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn partial_trace_of_bell_projector_is_maximally_mixed() {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let bell = [c(s, 0.0), ZERO, ZERO, c(-s, 0.0)];
        let rho = CMat::outer(&bell, &bell);
        for keep in [Qubit::First, Qubit::Second] {
            let r = partial_trace(&rho, keep).unwrap();
            assert!(r.max_abs_diff(&CMat::<2>::identity().scale_re(0.5)) < 1e-15);
        }
    }

    #[test]
    fn partial_trace_of_product_state() {
        let up_down = [ZERO, ONE, ZERO, ZERO];
        let rho = CMat::outer(&up_down, &up_down);
        let first = partial_trace(&rho, Qubit::First).unwrap();
        let second = partial_trace(&rho, Qubit::Second).unwrap();
        assert_eq!(first, CMat::from_real([[1.0, 0.0], [0.0, 0.0]]));
        assert_eq!(second, CMat::from_real([[0.0, 0.0], [0.0, 1.0]]));
    }

    #[test]
    fn partial_trace_rejects_nan() {
        let mut m = ComplexMatrix4::identity();
        m[(1, 2)] = c(f64::NAN, 0.0);
        assert!(matches!(
            partial_trace(&m, Qubit::First),
            Err(Error::NonFinite)
        ));
    }

    #[test]
    fn kron_matches_basis_ordering() {
        // σ^y ⊗ σ^y assembled from single-qubit Paulis
        let sy = CMat::<2>([[ZERO, -I], [I, ZERO]]);
        assert_eq!(sy.kron(&sy), sigma_y_sigma_y());
    }

    #[test]
    fn givens_zeroes_second_component() {
        let (a, b) = (c(0.3, -1.2), c(-2.0, 0.7));
        let g = Givens::zeroing(a, b);
        let mut m = CMat::<2>([[a, ZERO], [b, ZERO]]);
        g.rotate_rows(&mut m, 0, 0..2);
        assert!(m[(1, 0)].norm() < 1e-15);
        assert!((m[(0, 0)].norm() - a.norm().hypot(b.norm())).abs() < 1e-14);
    }

    #[test]
    fn inverse_round_trip() {
        let m = CMat::<4>::from_fn(|r, k| {
            c(
                (r * 3 + k) as f64 * 0.1 + if r == k { 2.0 } else { 0.0 },
                r as f64 - k as f64,
            )
        });
        let inv = inverse(&m, 1e-14).unwrap();
        assert!((m * inv).max_abs_diff(&CMat::identity()) < 1e-13);
        assert!(inverse(&CMat::<4>::zeros(), 1e-14).is_none());
    }
}
