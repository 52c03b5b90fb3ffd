//! Hamiltonian families of the two-qubit XY model with asymmetric exchange,
//! their closed-form spectra and bi-orthogonal eigensystems.
//!
//! Units: `ħ = k_B = 1`, so couplings, energies and temperatures share one
//! energy unit. Basis order is `{↑↑, ↑↓, ↓↑, ↓↓}` (indices 0..3) throughout.
//!
//! Levels are labelled as in the closed-form solution, not by energy:
//!
//! | label | state | energy |
//! |-------|-------|--------|
//! | 0 | `(s·|↑↓⟩ − |↓↑⟩)/√2` | `−√((J+γ₁)(J+γ₂))` |
//! | 1 | `(|↑↑⟩ − |↓↓⟩)/√2` | `−Jδ` |
//! | 2 | `(|↑↑⟩ + |↓↓⟩)/√2` | `+Jδ` |
//! | 3 | `(s·|↑↓⟩ + |↓↑⟩)/√2` | `+√((J+γ₁)(J+γ₂))` |
//!
//! with `s = √((J+γ₂)/(J+γ₁))`. Use [`BiorthoSystem::ascending_order`] for
//! the energy ordering.

use crate::error::{Error, Result};
use crate::linalg::{inner, CMat, CVec, ComplexMatrix4, C64, I, ONE, ZERO};
use crate::spin::{self, Site};

/// Relative distance of `J+γ₁` or `J+γ₂` from zero below which the
/// closed-form eigenvectors are refused.
pub const EP_MARGIN: f64 = 1e-8;

/// Relative tolerance used by [`classify_point`].
pub const CLASSIFY_TOL: f64 = 1e-10;

/// Energies closer than `DEGENERACY_TOL · J` are treated as degenerate.
pub const DEGENERACY_TOL: f64 = 1e-12;

pub const SINGLET_LOW: usize = 0;
pub const BELL_MINUS: usize = 1;
pub const BELL_PLUS: usize = 2;
pub const SINGLET_HIGH: usize = 3;

/// Couplings of `H = H_XY + γ₁ S₁⁻S₂⁺ + γ₂ S₁⁺S₂⁻`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ModelParams {
    j: f64,
    delta: f64,
    gamma1: f64,
    gamma2: f64,
}

fn check_coupling(j: f64, delta: f64) -> Result<()> {
    if !(j.is_finite() && j > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "J must be positive and finite, got {j}"
        )));
    }
    if !(0.0..=1.0).contains(&delta) {
        return Err(Error::InvalidParameter(format!(
            "delta must lie in [0, 1], got {delta}"
        )));
    }
    Ok(())
}

impl ModelParams {
    pub fn new(j: f64, delta: f64, gamma1: f64, gamma2: f64) -> Result<Self> {
        check_coupling(j, delta)?;
        if !(gamma1.is_finite() && gamma2.is_finite()) {
            return Err(Error::InvalidParameter(
                "gamma1 and gamma2 must be finite".into(),
            ));
        }
        Ok(Self {
            j,
            delta,
            gamma1,
            gamma2,
        })
    }

    /// `γ₁ = −γ₂ = γ`, the regime where the non-Hermitian part is
    /// anti-Hermitian.
    pub fn anti_hermitian(j: f64, delta: f64, gamma: f64) -> Result<Self> {
        Self::new(j, delta, gamma, -gamma)
    }

    pub fn j(&self) -> f64 {
        self.j
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn gamma1(&self) -> f64 {
        self.gamma1
    }

    pub fn gamma2(&self) -> f64 {
        self.gamma2
    }

    /// `γ` when `γ₁ = −γ₂`.
    pub fn anti_hermitian_gamma(&self) -> Option<f64> {
        (self.gamma1 == -self.gamma2).then_some(self.gamma1)
    }

    /// `(J+γ₁)(J+γ₂)`, the square of the singlet-sector energies.
    pub fn exchange_product(&self) -> f64 {
        (self.j + self.gamma1) * (self.j + self.gamma2)
    }

    /// `J√(1−δ²)`: value of `γ` on the anti-Hermitian slice where the two
    /// lowest levels cross.
    pub fn critical_gamma(&self) -> f64 {
        critical_gamma(self.j, self.delta)
    }

    fn ensure_away_from_ep(&self) -> Result<()> {
        let (a, b) = (self.j + self.gamma1, self.j + self.gamma2);
        if a * b < 0.0 && a.abs().min(b.abs()) > EP_MARGIN * self.j {
            return Err(Error::ComplexSpectrum { product: a * b });
        }
        if a.abs().min(b.abs()) <= EP_MARGIN * self.j {
            return Err(Error::ExceptionalPointProximity {
                a,
                b,
                margin: EP_MARGIN * self.j,
            });
        }
        Ok(())
    }
}

pub fn critical_gamma(j: f64, delta: f64) -> f64 {
    j * (1.0 - delta * delta).max(0.0).sqrt()
}

/// Hermitian XY model in a transverse field, `H_XY + B(S₁ᶻ + S₂ᶻ)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FieldParams {
    j: f64,
    delta: f64,
    b: f64,
}

impl FieldParams {
    pub fn new(j: f64, delta: f64, b: f64) -> Result<Self> {
        check_coupling(j, delta)?;
        if !b.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "B must be finite, got {b}"
            )));
        }
        Ok(Self { j, delta, b })
    }

    pub fn j(&self) -> f64 {
        self.j
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    /// `α± = B ± √(J²+B²)`
    pub fn alphas(&self) -> (f64, f64) {
        let r = self.j.hypot(self.b);
        (self.b + r, self.b - r)
    }
}

/// `H_XY = 2J[(1+δ) S₁ˣS₂ˣ + (1−δ) S₁ʸS₂ʸ]`, assembled from spin operators.
pub fn xy_hamiltonian(j: f64, delta: f64) -> ComplexMatrix4 {
    let xx = spin::on(Site::One, &spin::sx()) * spin::on(Site::Two, &spin::sx());
    let yy = spin::on(Site::One, &spin::sy()) * spin::on(Site::Two, &spin::sy());
    (xx.scale_re(1.0 + delta) + yy.scale_re(1.0 - delta)).scale_re(2.0 * j)
}

/// The model Hamiltonian written out in the product basis:
/// `⟨↑↑|H|↓↓⟩ = ⟨↓↓|H|↑↑⟩ = Jδ`, `⟨↓↑|H|↑↓⟩ = J+γ₁`, `⟨↑↓|H|↓↑⟩ = J+γ₂`.
pub fn build_hamiltonian(p: &ModelParams) -> ComplexMatrix4 {
    let jd = p.j * p.delta;
    CMat::from_real([
        [0.0, 0.0, 0.0, jd],
        [0.0, 0.0, p.j + p.gamma2, 0.0],
        [0.0, p.j + p.gamma1, 0.0, 0.0],
        [jd, 0.0, 0.0, 0.0],
    ])
}

/// `H̄ = H_XY − iγ S₁⁺S₁⁻ − iγ S₂⁻S₂⁺`: loss acting locally on each qubit.
pub fn build_local_loss_hamiltonian(j: f64, delta: f64, gamma: f64) -> Result<ComplexMatrix4> {
    check_coupling(j, delta)?;
    if !(gamma.is_finite() && gamma >= 0.0) {
        return Err(Error::InvalidParameter(format!(
            "gamma must be non-negative, got {gamma}"
        )));
    }
    let up1 = spin::on(Site::One, &spin::raising()) * spin::on(Site::One, &spin::lowering());
    let down2 = spin::on(Site::Two, &spin::lowering()) * spin::on(Site::Two, &spin::raising());
    Ok(xy_hamiltonian(j, delta) - (up1 + down2).scale(I * gamma))
}

pub fn build_field_hamiltonian(f: &FieldParams) -> ComplexMatrix4 {
    let sz = spin::on(Site::One, &spin::sz()) + spin::on(Site::Two, &spin::sz());
    xy_hamiltonian(f.j, f.delta) + sz.scale_re(f.b)
}

/// Closed-form spectrum of the field model, ascending:
/// `{±√(J²δ²+B²), ±J}`.
pub fn field_spectrum(f: &FieldParams) -> [f64; 4] {
    let r = (f.j * f.delta).hypot(f.b);
    let mut e = [-r, -f.j, f.j, r];
    e.sort_by(f64::total_cmp);
    e
}

/// Closed-form spectrum sorted by real part, then imaginary part.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Spectrum {
    pub values: [C64; 4],
    /// `(J+γ₁)(J+γ₂) < 0`: the singlet-sector pair is `±i√|…|`.
    pub complex: bool,
}

pub fn analytic_spectrum(p: &ModelParams) -> Spectrum {
    let prod = p.exchange_product();
    let jd = p.j * p.delta;
    let root = if prod >= 0.0 {
        C64::new(prod.sqrt(), 0.0)
    } else {
        C64::new(0.0, (-prod).sqrt())
    };
    let mut values = [-root, C64::new(-jd, 0.0), C64::new(jd, 0.0), root];
    values.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    Spectrum {
        values,
        complex: prod < 0.0,
    }
}

/// Signed gap `E₁ − E₀ = √((J+γ₁)(J+γ₂)) − Jδ` between the Bell level and
/// the lower singlet-sector level. Negative once the Bell state is the
/// ground state; `NaN` for a complex spectrum.
pub fn gap01(p: &ModelParams) -> f64 {
    p.exchange_product().sqrt() - p.j * p.delta
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpectralKind {
    Generic,
    /// Two real levels coincide with distinct eigenvectors.
    HermitianDegeneracy,
    /// `(J+γ₁)(J+γ₂) = 0`: singlet-sector eigenvectors coalesce.
    ExceptionalPoint,
    ComplexSpectrum,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpectralClass {
    pub kind: SpectralKind,
    /// `J√(1−δ²)`, meaningful on the anti-Hermitian slice.
    pub critical_gamma: f64,
}

pub fn classify_point(p: &ModelParams) -> SpectralClass {
    let prod = p.exchange_product();
    let j2 = p.j * p.j;
    let kind = if prod.abs() <= CLASSIFY_TOL * j2 {
        SpectralKind::ExceptionalPoint
    } else if prod < 0.0 {
        SpectralKind::ComplexSpectrum
    } else if (prod - j2 * p.delta * p.delta).abs() <= CLASSIFY_TOL * j2 {
        SpectralKind::HermitianDegeneracy
    } else {
        SpectralKind::Generic
    };
    SpectralClass {
        kind,
        critical_gamma: p.critical_gamma(),
    }
}

/// Closed-form right and left eigenvectors, indexed by level label.
#[derive(Clone, Debug)]
pub struct BiorthoSystem {
    energies: [f64; 4],
    right: [CVec<4>; 4],
    left: [CVec<4>; 4],
    gap01: f64,
    scale: f64,
}

impl BiorthoSystem {
    /// Energies by level label (not sorted).
    pub fn energies(&self) -> [f64; 4] {
        self.energies
    }

    pub fn right(&self, level: usize) -> &CVec<4> {
        &self.right[level]
    }

    pub fn left(&self, level: usize) -> &CVec<4> {
        &self.left[level]
    }

    pub fn gap01(&self) -> f64 {
        self.gap01
    }

    /// `|R_j⟩⟨L_j|`
    pub fn projector(&self, level: usize) -> ComplexMatrix4 {
        CMat::outer(&self.right[level], &self.left[level])
    }

    /// `Σ_j w(E_j) |R_j⟩⟨L_j|`
    pub fn assemble(&self, weight: impl Fn(f64) -> f64) -> ComplexMatrix4 {
        let mut out = ComplexMatrix4::zeros();
        for j in 0..4 {
            out += self.projector(j).scale_re(weight(self.energies[j]));
        }
        out
    }

    /// Level labels in ascending energy. Exact ties (within
    /// `DEGENERACY_TOL·J`) put the `{↑↓, ↓↑}`-sector level first.
    pub fn ascending_order(&self) -> [usize; 4] {
        let tie = DEGENERACY_TOL * self.scale;
        let sector = |l: usize| usize::from(l == BELL_MINUS || l == BELL_PLUS);
        let mut order = [SINGLET_LOW, BELL_MINUS, BELL_PLUS, SINGLET_HIGH];
        for i in 1..4 {
            let mut k = i;
            while k > 0 {
                let (a, b) = (order[k - 1], order[k]);
                let (ea, eb) = (self.energies[a], self.energies[b]);
                let swap = if (ea - eb).abs() <= tie {
                    sector(b) < sector(a)
                } else {
                    eb < ea
                };
                if !swap {
                    break;
                }
                order.swap(k - 1, k);
                k -= 1;
            }
        }
        order
    }

    pub fn ground_level(&self) -> usize {
        self.ascending_order()[0]
    }

    /// Whether the two lowest levels coincide within `DEGENERACY_TOL·J`.
    pub fn ground_degenerate(&self) -> bool {
        let o = self.ascending_order();
        (self.energies[o[1]] - self.energies[o[0]]).abs() <= DEGENERACY_TOL * self.scale
    }

    /// `max_{j,k} |⟨L_j|R_k⟩ − δ_jk|`
    pub fn biorthonormality_error(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for j in 0..4 {
            for k in 0..4 {
                let target = if j == k { ONE } else { ZERO };
                worst = worst.max((inner(&self.left[j], &self.right[k]) - target).norm());
            }
        }
        worst
    }

    /// `‖Σ_j |R_j⟩⟨L_j| − I‖_max`
    pub fn completeness_error(&self) -> f64 {
        self.assemble(|_| 1.0)
            .max_abs_diff(&ComplexMatrix4::identity())
    }
}

/// Closed-form bi-orthonormal eigensystem.
///
/// Requires a real spectrum and `min(|J+γ₁|, |J+γ₂|) > 1e-8·J`.
pub fn analytic_biortho(p: &ModelParams) -> Result<BiorthoSystem> {
    p.ensure_away_from_ep()?;
    let (a, b) = (p.j + p.gamma2, p.j + p.gamma1);
    let sign = a.signum();
    let root = (a * b).sqrt();
    let jd = p.j * p.delta;
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let re = |x: f64| C64::new(x, 0.0);

    let r_ratio = sign * (a / b).sqrt();
    let l_ratio = sign * (b / a).sqrt();
    let right = [
        [ZERO, re(h * r_ratio), re(-h), ZERO],
        [re(h), ZERO, ZERO, re(-h)],
        [re(h), ZERO, ZERO, re(h)],
        [ZERO, re(h * r_ratio), re(h), ZERO],
    ];
    let left = [
        [ZERO, re(h * l_ratio), re(-h), ZERO],
        right[BELL_MINUS],
        right[BELL_PLUS],
        [ZERO, re(h * l_ratio), re(h), ZERO],
    ];
    Ok(BiorthoSystem {
        energies: [-root, -jd, jd, root],
        right,
        left,
        gap01: root - jd,
        scale: p.j,
    })
}

/// Bisection for the sign change of [`gap01`] along the anti-Hermitian
/// slice `γ ∈ [0, J)`. Returns the crossing `γ` to within `tol`.
pub fn locate_degeneracy(j: f64, delta: f64, tol: f64) -> Result<f64> {
    check_coupling(j, delta)?;
    let gap = |g: f64| -> Result<f64> { Ok(gap01(&ModelParams::anti_hermitian(j, delta, g)?)) };
    let mut lo = 0.0;
    let mut hi = j * (1.0 - EP_MARGIN);
    let (glo, ghi) = (gap(lo)?, gap(hi)?);
    if glo == 0.0 {
        return Ok(lo);
    }
    if glo.signum() == ghi.signum() {
        return Err(Error::OutOfRange {
            name: "delta",
            value: delta,
            range: "(0, 1] (no level crossing below the exceptional point)",
        });
    }
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        let gm = gap(mid)?;
        if gm == 0.0 {
            return Ok(mid);
        }
        if gm.signum() == glo.signum() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{eig_general, norm};

    fn ah(j: f64, d: f64, g: f64) -> ModelParams {
        ModelParams::anti_hermitian(j, d, g).unwrap()
    }

    #[test]
    fn parameter_validation() {
        assert!(ModelParams::new(0.0, 0.5, 0.0, 0.0).is_err());
        assert!(ModelParams::new(1.0, 1.5, 0.0, 0.0).is_err());
        assert!(ModelParams::new(1.0, -0.1, 0.0, 0.0).is_err());
        assert!(ModelParams::new(1.0, 0.5, f64::NAN, 0.0).is_err());
        assert_eq!(ah(1.0, 0.3, 0.2).anti_hermitian_gamma(), Some(0.2));
        assert_eq!(
            ModelParams::new(1.0, 0.3, 0.2, 0.1)
                .unwrap()
                .anti_hermitian_gamma(),
            None
        );
        assert!(FieldParams::new(-1.0, 1.0, 0.5).is_err());
    }

    #[test]
    fn ising_hermitian_matrix() {
        let h = build_hamiltonian(&ModelParams::new(1.0, 1.0, 0.0, 0.0).unwrap());
        let want = CMat::from_real([
            [0.0, 0.0, 0.0, 1.0],
            [0.0, 0.0, 1.0, 0.0],
            [0.0, 1.0, 0.0, 0.0],
            [1.0, 0.0, 0.0, 0.0],
        ]);
        assert_eq!(h, want);
    }

    #[test]
    fn asymmetric_exchange_entries() {
        let h = build_hamiltonian(&ModelParams::new(1.0, 0.5, 0.3, -0.3).unwrap());
        assert!((h[(2, 1)].re - 1.3).abs() < 1e-15);
        assert!((h[(1, 2)].re - 0.7).abs() < 1e-15);
        assert_eq!(h[(0, 3)].re, 0.5);
        assert_eq!(h[(3, 0)].re, 0.5);
    }

    #[test]
    fn symmetric_exchange_is_hermitian() {
        let h = build_hamiltonian(&ModelParams::new(1.0, 0.4, 0.2, 0.2).unwrap());
        assert_eq!(h, h.adjoint());
    }

    #[test]
    fn closed_form_matches_spin_operator_assembly() {
        // H_XY + γ₁ S₁⁻S₂⁺ + γ₂ S₁⁺S₂⁻
        let (g1, g2) = (0.37, -0.81);
        let p = ModelParams::new(1.3, 0.6, g1, g2).unwrap();
        let hop = spin::on(Site::One, &spin::lowering()) * spin::on(Site::Two, &spin::raising());
        let hop_back =
            spin::on(Site::One, &spin::raising()) * spin::on(Site::Two, &spin::lowering());
        let assembled = xy_hamiltonian(1.3, 0.6) + hop.scale_re(g1) + hop_back.scale_re(g2);
        assert!(assembled.max_abs_diff(&build_hamiltonian(&p)) < 1e-15);
    }

    #[test]
    fn local_loss_hamiltonian() {
        let plain = build_local_loss_hamiltonian(1.0, 0.5, 0.0).unwrap();
        assert_eq!(plain, xy_hamiltonian(1.0, 0.5));

        let g = 0.4;
        let h = build_local_loss_hamiltonian(1.0, 0.5, g).unwrap();
        let d = h.diag();
        let want = [-g, -2.0 * g, 0.0, -g];
        for k in 0..4 {
            assert!((d[k] - C64::new(0.0, want[k])).norm() < 1e-15);
        }

        // Spec(H̄) = Spec(H) − iγ
        let e = eig_general(&h, 1e-12).unwrap();
        let s = 0.84_f64.sqrt();
        for (got, re) in e.values.iter().zip([-s, -0.5, 0.5, s]) {
            assert!((got - C64::new(re, -g)).norm() < 1e-12, "{got}");
        }
        assert!(build_local_loss_hamiltonian(1.0, 0.5, -0.1).is_err());
    }

    #[test]
    fn local_loss_ground_state_is_bell_above_critical_gamma() {
        let (j, delta) = (1.0, 0.5);
        let g = critical_gamma(j, delta) + 0.05;
        let e = eig_general(&build_local_loss_hamiltonian(j, delta, g).unwrap(), 1e-12).unwrap();
        let r = e.right_vectors[0];
        let h = std::f64::consts::FRAC_1_SQRT_2;
        // up to a global phase
        let phase = r[0] / r[0].norm();
        let bell = [h, 0.0, 0.0, -h].map(|x| phase * x);
        for k in 0..4 {
            assert!((r[k] - bell[k]).norm() < 1e-12);
        }
    }

    #[test]
    fn field_model() {
        let spec = |b: f64| {
            let f = FieldParams::new(1.0, 1.0, b).unwrap();
            let h = build_field_hamiltonian(&f);
            assert!(h.is_hermitian(0.0));
            crate::linalg::hermitian_eig(&h).unwrap().values
        };
        for (got, want) in spec(0.0).iter().zip([-1.0, -1.0, 1.0, 1.0]) {
            assert!((got - want).abs() < 1e-14);
        }
        let r2 = 2.0_f64.sqrt();
        for (got, want) in spec(1.0).iter().zip([-r2, -1.0, 1.0, r2]) {
            assert!((got - want).abs() < 1e-14);
        }
        let (ap, am) = FieldParams::new(1.0, 1.0, 1.0).unwrap().alphas();
        assert!((ap - (1.0 + r2)).abs() < 1e-15 && (am - (1.0 - r2)).abs() < 1e-15);
    }

    #[test]
    fn spectrum_examples() {
        let s = analytic_spectrum(&ah(1.0, 0.5, 0.3));
        let r = 0.91_f64.sqrt();
        assert!((s.values[0].re + 0.953_939_201_416_945_6).abs() < 1e-15);
        assert_eq!(s.values.map(|z| z.re), [-r, -0.5, 0.5, r]);
        assert!(!s.complex);

        let s = analytic_spectrum(&ah(1.0, 0.6, 0.8));
        for (got, want) in s.values.iter().zip([-0.6, -0.6, 0.6, 0.6]) {
            assert!((got.re - want).abs() < 1e-15);
        }

        let s = analytic_spectrum(&ModelParams::new(1.0, 0.0, 0.0, 0.0).unwrap());
        assert_eq!(s.values.map(|z| z.re), [-1.0, 0.0, 0.0, 1.0]);
    }

    #[test]
    fn complex_spectrum_is_flagged_and_sorted() {
        let s = analytic_spectrum(&ah(1.0, 0.5, 1.2));
        assert!(s.complex);
        let w = (0.44_f64).sqrt();
        let want = [
            C64::new(-0.5, 0.0),
            C64::new(0.0, -w),
            C64::new(0.0, w),
            C64::new(0.5, 0.0),
        ];
        for (got, want) in s.values.iter().zip(want) {
            assert!((got - want).norm() < 1e-15);
        }
    }

    #[test]
    fn hermitian_limit_eigenvectors() {
        let b = analytic_biortho(&ah(1.0, 0.5, 0.0)).unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let singlet = [0.0, h, -h, 0.0];
        for k in 0..4 {
            assert!((b.right(0)[k].re - singlet[k]).abs() < 1e-16);
            assert_eq!(b.right(0)[k], b.left(0)[k]);
        }
    }

    #[test]
    fn amplitude_ratio_of_lower_singlet_state() {
        let b = analytic_biortho(&ModelParams::new(1.0, 0.5, 0.6, -0.6).unwrap()).unwrap();
        let r = b.right(SINGLET_LOW);
        assert!((r[1].re / -r[2].re - 0.5).abs() < 1e-15);
    }

    #[test]
    fn exceptional_point_is_refused() {
        let err = analytic_biortho(&ModelParams::new(1.0, 0.3, 1.0, -1.0).unwrap()).unwrap_err();
        assert!(matches!(err, Error::ExceptionalPointProximity { .. }));
        let err = analytic_biortho(&ah(1.0, 0.3, 1.5)).unwrap_err();
        assert!(matches!(err, Error::ComplexSpectrum { .. }));
        assert!(analytic_biortho(&ah(1.0, 0.3, 1.0 - 1e-6)).is_ok());
    }

    #[test]
    fn both_exchange_factors_negative() {
        // (J+γ₁), (J+γ₂) < 0 still gives a real spectrum
        let p = ModelParams::new(1.0, 0.4, -1.5, -3.0).unwrap();
        let b = analytic_biortho(&p).unwrap();
        let h = build_hamiltonian(&p);
        for l in 0..4 {
            let hv = h.mul_vec(b.right(l));
            let lhs = b.left(l).map(|z| z.conj());
            let lh: CVec<4> = std::array::from_fn(|c| (0..4).map(|r| lhs[r] * h[(r, c)]).sum());
            for k in 0..4 {
                assert!((hv[k] - b.right(l)[k] * b.energies()[l]).norm() < 1e-14);
                assert!((lh[k] - lhs[k] * b.energies()[l]).norm() < 1e-14);
            }
        }
        assert!(b.biorthonormality_error() < 1e-15);
        assert!(b.completeness_error() < 1e-15);
    }

    #[test]
    fn classification_examples() {
        let c = classify_point(&ah(1.0, 0.6, 0.8));
        assert_eq!(c.kind, SpectralKind::HermitianDegeneracy);
        assert!((c.critical_gamma - 0.8).abs() < 1e-15);
        assert_eq!(
            classify_point(&ah(1.0, 0.0, 1.0)).kind,
            SpectralKind::ExceptionalPoint
        );
        let c = classify_point(&ah(1.0, 1.0, 0.5));
        assert_eq!(c.kind, SpectralKind::Generic);
        assert_eq!(c.critical_gamma, 0.0);
        assert_eq!(
            classify_point(&ah(1.0, 1.0, 0.0)).kind,
            SpectralKind::HermitianDegeneracy
        );
        assert_eq!(
            classify_point(&ah(1.0, 0.5, 1.3)).kind,
            SpectralKind::ComplexSpectrum
        );
    }

    #[test]
    fn ordering_at_exact_degeneracy_puts_singlet_sector_first() {
        let b = analytic_biortho(&ah(1.0, 0.6, 0.8)).unwrap();
        assert!(b.ground_degenerate());
        assert_eq!(
            b.ascending_order(),
            [SINGLET_LOW, BELL_MINUS, SINGLET_HIGH, BELL_PLUS]
        );
        let b = analytic_biortho(&ah(1.0, 0.6, 0.9)).unwrap();
        assert_eq!(b.ground_level(), BELL_MINUS);
        assert!(!b.ground_degenerate());
    }

    #[test]
    fn degeneracy_bisection() {
        let g = locate_degeneracy(1.0, 0.6, 1e-13).unwrap();
        assert!((g - 0.8).abs() < 1e-12);
        assert_eq!(locate_degeneracy(1.0, 1.0, 1e-13).unwrap(), 0.0);
        assert!(locate_degeneracy(1.0, 0.0, 1e-13).is_err());
    }

    #[test]
    fn unit_right_vectors_for_bell_levels() {
        let b = analytic_biortho(&ah(2.0, 0.2, 0.7)).unwrap();
        assert!((norm(b.right(BELL_MINUS)) - 1.0).abs() < 1e-15);
        assert!((norm(b.right(BELL_PLUS)) - 1.0).abs() < 1e-15);
    }
}
