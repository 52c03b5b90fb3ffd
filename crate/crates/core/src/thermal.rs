//! Bi-orthogonal thermal states, their SVD-normalized counterparts and the
//! two-level low-temperature approximation.

use crate::error::{Error, Result};
use crate::linalg::{hermitian_eig, singular_value_decomposition, ComplexMatrix4};
use crate::model::{analytic_biortho, ModelParams, BELL_MINUS, SINGLET_LOW};

pub const TRACE_TOL: f64 = 1e-12;
pub const HERMITIAN_TOL: f64 = 1e-10;
/// `Tr√(ρ†ρ)` below this is refused by [`svd_normalize`].
pub const MIN_SVD_TRACE: f64 = 1e-14;
/// Gap below which [`two_level_thermal`] reports a degenerate pair.
pub const DEGENERATE_GAP: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Form {
    /// `Σ w_j |R_j⟩⟨L_j|`; need not be Hermitian.
    Biortho,
    /// `√(ρ†ρ) / Tr√(ρ†ρ)`
    SvdNormalized,
    Hermitian,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Temperature {
    Finite(f64),
    ZeroLimit,
}

/// A unit-trace 4×4 state tagged with how it was built.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix {
    matrix: ComplexMatrix4,
    form: Form,
    temperature: Option<Temperature>,
}

impl DensityMatrix {
    /// Checks unit trace, and Hermiticity plus positivity unless `form` is
    /// [`Form::Biortho`].
    pub fn new(
        matrix: ComplexMatrix4,
        form: Form,
        temperature: Option<Temperature>,
    ) -> Result<Self> {
        matrix.ensure_finite()?;
        let tr = matrix.trace();
        if (tr.re - 1.0).abs() > TRACE_TOL || tr.im.abs() > TRACE_TOL {
            return Err(Error::NonUnitTrace(tr.re));
        }
        if form != Form::Biortho {
            let asym = matrix.max_abs_diff(&matrix.adjoint());
            if asym > HERMITIAN_TOL {
                return Err(Error::NotHermitian { asymmetry: asym });
            }
            let low = hermitian_eig(&matrix.hermitian_part())?.values[0];
            if low < -HERMITIAN_TOL {
                return Err(Error::NotPsd { eigenvalue: low });
            }
        }
        Ok(Self {
            matrix,
            form,
            temperature,
        })
    }

    pub fn matrix(&self) -> &ComplexMatrix4 {
        &self.matrix
    }

    pub fn form(&self) -> Form {
        self.form
    }

    pub fn temperature(&self) -> Option<Temperature> {
        self.temperature
    }
}

fn check_temperature(t: f64) -> Result<()> {
    if t.is_nan() || t <= 0.0 {
        return Err(Error::NonpositiveTemperature(t));
    }
    if t.is_infinite() {
        return Err(Error::InvalidParameter("temperature must be finite".into()));
    }
    Ok(())
}

/// `Z⁻¹ Σ_j e^{−E_j/T} |R_j⟩⟨L_j|`
pub fn thermal_density(p: &ModelParams, t: f64) -> Result<DensityMatrix> {
    check_temperature(t)?;
    let sys = analytic_biortho(p)?;
    let e = sys.energies();
    let e_min = e.iter().copied().fold(f64::INFINITY, f64::min);
    let z: f64 = e.iter().map(|&x| (-(x - e_min) / t).exp()).sum();
    let rho = sys.assemble(|x| (-(x - e_min) / t).exp() / z);
    DensityMatrix::new(rho, Form::Biortho, Some(Temperature::Finite(t)))
}

/// `Z = Σ_j e^{−E_j/T}`. Overflows for `T` small compared to the spread of
/// energies; see [`log_partition_function`].
pub fn partition_function(p: &ModelParams, t: f64) -> Result<f64> {
    let z = log_partition_function(p, t)?.exp();
    if !z.is_finite() {
        return Err(Error::Overflow);
    }
    Ok(z)
}

pub fn log_partition_function(p: &ModelParams, t: f64) -> Result<f64> {
    check_temperature(t)?;
    let e = analytic_biortho(p)?.energies();
    let e_min = e.iter().copied().fold(f64::INFINITY, f64::min);
    let s: f64 = e.iter().map(|&x| (-(x - e_min) / t).exp()).sum();
    Ok(s.ln() - e_min / t)
}

/// Thermal matrix of the anti-Hermitian slice written out entrywise:
///
/// ```text
///        ⎡ ch(Jδ)    0          0        −sh(Jδ) ⎤
/// Z⁻¹ ·  ⎢   0     ch(s)    −r·sh(s)        0    ⎥
///        ⎢   0    −sh(s)/r    ch(s)          0    ⎥
///        ⎣ −sh(Jδ)   0          0         ch(Jδ) ⎦
/// ```
///
/// with `s = √(J²−γ²)`, `r = √((J−γ)/(J+γ))`, arguments divided by `T`, and
/// `Z = 2(cosh(Jδ/T) + cosh(s/T))`. Valid for `|γ| < J`. Hyperbolic
/// functions are rescaled by `e^{−max}` so small `T` does not overflow.
pub fn explicit_thermal_matrix(j: f64, delta: f64, gamma: f64, t: f64) -> Result<ComplexMatrix4> {
    check_temperature(t)?;
    let p = ModelParams::anti_hermitian(j, delta, gamma)?;
    if gamma.abs() >= j {
        return Err(Error::OutOfRange {
            name: "gamma",
            value: gamma,
            range: "|gamma| < J",
        });
    }
    let u = p.j() * p.delta() / t;
    let v = (j * j - gamma * gamma).sqrt() / t;
    let m = u.max(v);
    let ch = |x: f64| 0.5 * ((x - m).exp() + (-x - m).exp());
    let sh = |x: f64| 0.5 * ((x - m).exp() - (-x - m).exp());
    let z = 2.0 * (ch(u) + ch(v));
    let r = ((j - gamma) / (j + gamma)).sqrt();
    let (cu, su, cv, sv) = (ch(u) / z, sh(u) / z, ch(v) / z, sh(v) / z);
    Ok(ComplexMatrix4::from_real([
        [cu, 0.0, 0.0, -su],
        [0.0, cv, -r * sv, 0.0],
        [0.0, -sv / r, cv, 0.0],
        [-su, 0.0, 0.0, cu],
    ]))
}

/// `√(ρ†ρ)/Tr√(ρ†ρ)` for an arbitrary finite matrix.
pub fn svd_normalized_matrix(m: &ComplexMatrix4) -> Result<ComplexMatrix4> {
    let abs = singular_value_decomposition(m)?.abs();
    let tr = abs.trace().re;
    if tr < MIN_SVD_TRACE {
        return Err(Error::DegenerateTrace(tr));
    }
    Ok(abs.scale_re(1.0 / tr))
}

pub fn svd_normalize(rho: &DensityMatrix) -> Result<DensityMatrix> {
    let m = svd_normalized_matrix(rho.matrix())?;
    DensityMatrix::new(m, Form::SvdNormalized, rho.temperature())
}

/// `|R_j⟩⟨L_j|` for level label `j`.
pub fn pure_biortho_density(p: &ModelParams, level: usize) -> Result<DensityMatrix> {
    if level > 3 {
        return Err(Error::OutOfRange {
            name: "level",
            value: level as f64,
            range: "0..=3",
        });
    }
    let sys = analytic_biortho(p)?;
    DensityMatrix::new(sys.projector(level), Form::Biortho, None)
}

#[derive(Clone, Debug)]
pub struct TwoLevelState {
    pub density: DensityMatrix,
    /// Boltzmann weights of levels 0 and 1.
    pub weights: [f64; 2],
    /// `E₁ − E₀`
    pub gap: f64,
    /// `|E₁ − E₀| < 1e-12`: both weights are 1/2.
    pub degenerate_gap: bool,
}

/// Thermal mixture restricted to levels 0 and 1. Only meaningful for
/// `T ≲ |E₁ − E₀|` and where these are the two lowest levels.
pub fn two_level_thermal(p: &ModelParams, t: f64) -> Result<TwoLevelState> {
    check_temperature(t)?;
    let sys = analytic_biortho(p)?;
    let e = sys.energies();
    let gap = e[BELL_MINUS] - e[SINGLET_LOW];
    let degenerate_gap = gap.abs() < DEGENERATE_GAP;
    let weights = if degenerate_gap {
        [0.5, 0.5]
    } else {
        // logistic in the gap, stable for either sign
        let x = gap / t;
        if x >= 0.0 {
            let q = (-x).exp();
            [1.0 / (1.0 + q), q / (1.0 + q)]
        } else {
            let q = x.exp();
            [q / (1.0 + q), 1.0 / (1.0 + q)]
        }
    };
    let m = sys.projector(SINGLET_LOW).scale_re(weights[0])
        + sys.projector(BELL_MINUS).scale_re(weights[1]);
    Ok(TwoLevelState {
        density: DensityMatrix::new(m, Form::Biortho, Some(Temperature::Finite(t)))?,
        weights,
        gap,
        degenerate_gap,
    })
}
