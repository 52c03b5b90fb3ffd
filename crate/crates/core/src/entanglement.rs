//! Concurrence, reduced entropy, entanglement of formation and the closed
//! forms for the ground-state and low-temperature concurrence.

use crate::error::{Error, Result};
use crate::linalg::{
    eigenvalues_general, hermitian_eig, partial_trace, sigma_y_sigma_y,
    singular_value_decomposition, CMat, ComplexMatrix4, Qubit, PSD_CLAMP,
};
use crate::model::{analytic_biortho, ModelParams, EP_MARGIN};
use crate::thermal::{svd_normalize, thermal_density, DensityMatrix, Form, Temperature};

/// `|γ − γ_c| ≤ CRITICAL_TOL · J` counts as sitting on the transition.
pub const CRITICAL_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ConcurrenceReport {
    pub concurrence: f64,
    /// Eigenvalues of `R`, decreasing.
    pub lambdas: [f64; 4],
    /// Form of the state handed in.
    pub input_form: Form,
    /// Whether the state was SVD-normalized before evaluation.
    pub svd_applied: bool,
}

impl ConcurrenceReport {
    fn from_lambdas(
        mut lambdas: [f64; 4],
        input_form: Form,
        svd_applied: bool,
        clamp: bool,
    ) -> Self {
        lambdas.sort_by(|a, b| b.total_cmp(a));
        let mut c = (lambdas[0] - lambdas[1] - lambdas[2] - lambdas[3]).max(0.0);
        if clamp {
            c = c.min(1.0);
        }
        Self {
            concurrence: c,
            lambdas,
            input_form,
            svd_applied,
        }
    }

    /// A concurrence above 1 cannot come from a physical state.
    pub fn is_physical(&self) -> bool {
        self.concurrence <= 1.0 + 1e-12
    }
}

/// λ's as singular values of `Wᵀ(σʸ⊗σʸ)W` with `ρ = WW†`. Their squares
/// are the eigenvalues of `ρ(σʸ⊗σʸ)ρ*(σʸ⊗σʸ)`.
fn spin_flip_lambdas(rho: &ComplexMatrix4) -> Result<[f64; 4]> {
    let eig = hermitian_eig(&rho.hermitian_part())?;
    if eig.values[0] < -PSD_CLAMP {
        return Err(Error::NotPsd {
            eigenvalue: eig.values[0],
        });
    }
    let w = CMat::from_fn(|r, c| eig.vectors[(r, c)] * eig.values[c].max(0.0).sqrt());
    let tau = w.transpose() * sigma_y_sigma_y() * w;
    Ok(singular_value_decomposition(&tau)?.singular_values)
}

/// Wootters concurrence. Bi-orthogonal input is SVD-normalized first.
pub fn wootters_concurrence(rho: &DensityMatrix) -> Result<ConcurrenceReport> {
    let (state, svd_applied) = match rho.form() {
        Form::Biortho => (svd_normalize(rho)?, true),
        _ => (rho.clone(), false),
    };
    let lambdas = spin_flip_lambdas(state.matrix())?;
    Ok(ConcurrenceReport::from_lambdas(
        lambdas,
        rho.form(),
        svd_applied,
        state.form() == Form::SvdNormalized,
    ))
}

/// The same algebra applied to the raw (possibly non-Hermitian) matrix.
/// Not an entanglement measure for bi-orthogonal states: the result can
/// exceed 1 and is never clamped. Zero λ's carry `O(√ε)` noise.
pub fn naive_concurrence(rho: &DensityMatrix) -> Result<ConcurrenceReport> {
    let m = rho.matrix();
    let y = sigma_y_sigma_y();
    let product = *m * y * m.conj() * y;
    let mu = eigenvalues_general(&product)?;
    let lambdas = mu.map(|z| z.re.max(0.0).sqrt());
    Ok(ConcurrenceReport::from_lambdas(
        lambdas,
        rho.form(),
        false,
        false,
    ))
}

/// `h(x) = −x log₂x − (1−x) log₂(1−x)`
pub fn binary_entropy(x: f64) -> f64 {
    let term = |p: f64| if p <= 0.0 { 0.0 } else { -p * p.log2() };
    term(x) + term(1.0 - x)
}

/// Von Neumann entropy (bits) of the reduced state of `qubit`.
pub fn reduced_entropy(rho: &DensityMatrix, qubit: Qubit) -> Result<f64> {
    if rho.form() == Form::Biortho {
        return Err(Error::NotHermitianState);
    }
    let r = partial_trace(rho.matrix(), qubit)?;
    let a = r[(0, 0)].re;
    let d = r[(1, 1)].re;
    let off = r[(0, 1)].norm();
    let mean = 0.5 * (a + d);
    let radius = (0.5 * (a - d)).hypot(off);
    let x = (mean + radius).clamp(0.0, 1.0);
    Ok(binary_entropy(x).clamp(0.0, 1.0))
}

/// `ξ(C) = h((1 + √(1−C²))/2)`
pub fn entanglement_of_formation(c: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&c) {
        return Err(Error::OutOfRange {
            name: "concurrence",
            value: c,
            range: "[0, 1]",
        });
    }
    Ok(binary_entropy(0.5 * (1.0 + (1.0 - c * c).sqrt())))
}

/// `(γ, √(J²−γ²))` for the anti-Hermitian slice with `0 ≤ γ < J`.
fn slice_gamma(p: &ModelParams) -> Result<(f64, f64)> {
    let g = p
        .anti_hermitian_gamma()
        .ok_or_else(|| Error::InvalidParameter("requires gamma1 = -gamma2".into()))?;
    if g < 0.0 {
        return Err(Error::OutOfRange {
            name: "gamma",
            value: g,
            range: "[0, J)",
        });
    }
    let j = p.j();
    if j - g <= EP_MARGIN * j {
        return Err(Error::ExceptionalPointProximity {
            a: j + g,
            b: j - g,
            margin: EP_MARGIN * j,
        });
    }
    Ok((g, ((j - g) * (j + g)).sqrt()))
}

/// Concurrence of the two-level thermal state on the anti-Hermitian slice,
///
/// `C = s·|e^{s/T} − e^{Jδ/T}| / (J·e^{s/T} + s·e^{Jδ/T})`, `s = √(J²−γ²)`,
///
/// evaluated with the larger exponential factored out.
pub fn low_t_concurrence(p: &ModelParams, t: f64) -> Result<f64> {
    if t.is_nan() || t <= 0.0 {
        return Err(Error::NonpositiveTemperature(t));
    }
    let (_, s) = slice_gamma(p)?;
    let j = p.j();
    let x = (s - j * p.delta()) / t;
    let c = if x >= 0.0 {
        s * -(-x).exp_m1() / (j + s * (-x).exp())
    } else {
        s * -x.exp_m1() / (j * x.exp() + s)
    };
    Ok(c)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Branch {
    /// Ground state in the `{↑↓, ↓↑}` sector.
    Below,
    Critical,
    /// Bell ground state.
    Above,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TransitionReport {
    pub gamma_c: f64,
    /// `√(J²−γ²)/J`
    pub below_value: f64,
    pub above_value: f64,
    pub critical_value: f64,
    pub branch: Branch,
    pub concurrence: f64,
}

/// Zero-temperature concurrence on the anti-Hermitian slice: `√(J²−γ²)/J`
/// below `γ_c = J√(1−δ²)`, 0 at `γ_c` and 1 above.
pub fn zero_t_concurrence(p: &ModelParams) -> Result<TransitionReport> {
    let (g, s) = slice_gamma(p)?;
    let j = p.j();
    let gamma_c = p.critical_gamma();
    let branch = if (g - gamma_c).abs() <= CRITICAL_TOL * j {
        Branch::Critical
    } else if g < gamma_c {
        Branch::Below
    } else {
        Branch::Above
    };
    let below_value = s / j;
    let concurrence = match branch {
        Branch::Below => below_value,
        Branch::Critical => 0.0,
        Branch::Above => 1.0,
    };
    Ok(TransitionReport {
        gamma_c,
        below_value,
        above_value: 1.0,
        critical_value: 0.0,
        branch,
        concurrence,
    })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TemperatureBound {
    /// `(J² − s)/ln[(CJ + s)/((1−C)s)]` with `s = √(J²−γ²)`, taken
    /// literally with `J` as a number.
    pub printed: f64,
    /// Same expression with `J − s` in the numerator; the exact inverse of
    /// [`low_t_concurrence`] at `δ = 1`.
    pub inverted: f64,
    /// Root of `low_t_concurrence(T) = C` found by bisection.
    pub bisected: f64,
}

/// Temperature below which the `δ = 1` concurrence stays above `target`.
pub fn temperature_bound(j: f64, gamma: f64, target: f64) -> Result<TemperatureBound> {
    if !(target > 0.0 && target < 1.0) {
        return Err(Error::OutOfRange {
            name: "C_target",
            value: target,
            range: "(0, 1)",
        });
    }
    let p = ModelParams::anti_hermitian(j, 1.0, gamma)?;
    if !(gamma > 0.0) {
        return Err(Error::OutOfRange {
            name: "gamma",
            value: gamma,
            range: "(0, J)",
        });
    }
    let (_, s) = slice_gamma(&p)?;
    let log = ((target * j + s) / ((1.0 - target) * s)).ln();
    let printed = (j * j - s) / log;
    let inverted = (j - s) / log;

    let f = |t: f64| low_t_concurrence(&p, t).map(|c| c - target);
    let mut lo = inverted;
    let mut hi = inverted;
    while f(lo)? <= 0.0 {
        lo *= 0.5;
    }
    while f(hi)? > 0.0 {
        hi *= 2.0;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if f(mid)? > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(TemperatureBound {
        printed,
        inverted,
        bisected: 0.5 * (lo + hi),
    })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GroundConcurrence {
    pub concurrence: f64,
    /// Label of the ground level (0 or 1).
    pub ground_level: usize,
    /// On the contour `(J+γ₁)(J+γ₂) = J²δ²`.
    pub degenerate: bool,
}

/// Ground-state concurrence for arbitrary real `γ₁, γ₂`: 1 when
/// `(J+γ₁)(J+γ₂) < J²δ²` (Bell ground state), otherwise
/// `2√((J+γ₁)(J+γ₂))/|2J+γ₁+γ₂|`; 0 on the contour.
pub fn ground_concurrence_general(
    j: f64,
    gamma1: f64,
    gamma2: f64,
    delta: f64,
) -> Result<GroundConcurrence> {
    let p = ModelParams::new(j, delta, gamma1, gamma2)?;
    let prod = p.exchange_product();
    if prod < 0.0 {
        return Err(Error::ComplexSpectrum { product: prod });
    }
    if prod == 0.0 {
        return Err(Error::ExceptionalPointProximity {
            a: j + gamma1,
            b: j + gamma2,
            margin: 0.0,
        });
    }
    let jd2 = (j * delta).powi(2);
    if (prod - jd2).abs() <= CRITICAL_TOL * j * j {
        return Ok(GroundConcurrence {
            concurrence: 0.0,
            ground_level: crate::model::SINGLET_LOW,
            degenerate: true,
        });
    }
    if prod < jd2 {
        return Ok(GroundConcurrence {
            concurrence: 1.0,
            ground_level: crate::model::BELL_MINUS,
            degenerate: false,
        });
    }
    Ok(GroundConcurrence {
        concurrence: 2.0 * prod.sqrt() / (2.0 * j + gamma1 + gamma2).abs(),
        ground_level: crate::model::SINGLET_LOW,
        degenerate: false,
    })
}

/// `γ₂(γ₁) = J²δ²/(J+γ₁) − J`, the level-crossing contour.
pub fn transition_contour(j: f64, delta: f64, gamma1: &[f64]) -> Result<Vec<f64>> {
    ModelParams::new(j, delta, 0.0, 0.0)?;
    gamma1
        .iter()
        .map(|&g1| {
            let d = j + g1;
            if d == 0.0 {
                return Err(Error::DivisionByZero(format!(
                    "J + gamma1 = 0 at gamma1 = {g1}"
                )));
            }
            Ok((j * delta).powi(2) / d - j)
        })
        .collect()
}

/// Zero-temperature limit of the full thermal state: the ground projector,
/// or the equal mixture of the two lowest levels when they coincide.
#[derive(Clone, Debug)]
pub struct ZeroTemperatureState {
    pub density: DensityMatrix,
    pub report: ConcurrenceReport,
    pub degenerate: bool,
}

pub fn zero_temperature_pipeline(p: &ModelParams) -> Result<ZeroTemperatureState> {
    let sys = analytic_biortho(p)?;
    let order = sys.ascending_order();
    let degenerate = sys.ground_degenerate();
    let m = if degenerate {
        (sys.projector(order[0]) + sys.projector(order[1])).scale_re(0.5)
    } else {
        sys.projector(order[0])
    };
    let density = DensityMatrix::new(m, Form::Biortho, Some(Temperature::ZeroLimit))?;
    let report = wootters_concurrence(&density)?;
    Ok(ZeroTemperatureState {
        density,
        report,
        degenerate,
    })
}

/// Concurrence of the SVD-normalized four-level thermal state.
pub fn thermal_concurrence(p: &ModelParams, t: f64) -> Result<f64> {
    Ok(wootters_concurrence(&thermal_density(p, t)?)?.concurrence)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::C64;
    use crate::model::{BELL_MINUS, SINGLET_HIGH, SINGLET_LOW};
    use crate::thermal::{pure_biortho_density, two_level_thermal};

    fn ah(j: f64, d: f64, g: f64) -> ModelParams {
        ModelParams::anti_hermitian(j, d, g).unwrap()
    }

    fn hermitian(m: ComplexMatrix4) -> DensityMatrix {
        DensityMatrix::new(m, Form::Hermitian, None).unwrap()
    }

    #[test]
    fn bell_state_is_maximally_entangled() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let v = [
            C64::new(h, 0.0),
            C64::new(0.0, 0.0),
            C64::new(0.0, 0.0),
            C64::new(-h, 0.0),
        ];
        let r = wootters_concurrence(&hermitian(CMat::outer(&v, &v))).unwrap();
        assert!((r.concurrence - 1.0).abs() < 1e-15);
        assert!(!r.svd_applied);
    }

    #[test]
    fn product_state_is_separable() {
        let r =
            wootters_concurrence(&hermitian(CMat::from_real_diag(&[0.0, 1.0, 0.0, 0.0]))).unwrap();
        assert_eq!(r.concurrence, 0.0);
        let r =
            wootters_concurrence(&hermitian(ComplexMatrix4::identity().scale_re(0.25))).unwrap();
        assert!(r.concurrence < 1e-15);
        assert!(r.lambdas.iter().all(|l| (l - 0.25).abs() < 1e-15));
    }

    #[test]
    fn werner_state() {
        // p|Ψ⁻⟩⟨Ψ⁻| + (1−p)I/4 has C = max(0, (3p−1)/2)
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let v = [
            C64::new(0.0, 0.0),
            C64::new(h, 0.0),
            C64::new(-h, 0.0),
            C64::new(0.0, 0.0),
        ];
        for p in [0.2, 1.0 / 3.0, 0.5, 0.8, 1.0] {
            let m = CMat::outer(&v, &v).scale_re(p)
                + ComplexMatrix4::identity().scale_re((1.0 - p) / 4.0);
            let c = wootters_concurrence(&hermitian(m)).unwrap().concurrence;
            assert!((c - ((3.0 * p - 1.0) / 2.0).max(0.0)).abs() < 1e-14, "{p}");
        }
    }

    #[test]
    fn svd_state_of_lower_singlet_level() {
        let rho = pure_biortho_density(&ah(1.0, 0.5, 0.6), SINGLET_LOW).unwrap();
        let r = wootters_concurrence(&rho).unwrap();
        assert!(r.svd_applied);
        assert_eq!(r.input_form, Form::Biortho);
        assert!((r.concurrence - 0.8).abs() < 1e-14);
        assert!((r.lambdas[0] - 0.8).abs() < 1e-14);
        assert!(r.lambdas[1..].iter().all(|l| *l < 1e-15));
    }

    #[test]
    fn naive_concurrence_examples() {
        let rho = pure_biortho_density(&ah(1.0, 0.5, 0.6), SINGLET_LOW).unwrap();
        let r = naive_concurrence(&rho).unwrap();
        assert!((r.lambdas[0] - 1.25).abs() < 1e-13);
        assert!((r.concurrence - 1.25).abs() < 1e-6);
        assert!(!r.is_physical());

        let rho = pure_biortho_density(&ah(1.0, 0.5, 0.0), SINGLET_LOW).unwrap();
        assert!((naive_concurrence(&rho).unwrap().concurrence - 1.0).abs() < 1e-6);

        let rho = pure_biortho_density(&ah(1.0, 0.5, 0.99), SINGLET_HIGH).unwrap();
        let c = naive_concurrence(&rho).unwrap().concurrence;
        assert!((c - 7.088_812_050_1).abs() < 1e-5, "{c}");
    }

    #[test]
    fn entropy_examples() {
        let s = |g: f64| {
            let rho = svd_normalize(&pure_biortho_density(&ah(1.0, 0.5, g), SINGLET_LOW).unwrap())
                .unwrap();
            reduced_entropy(&rho, Qubit::First).unwrap()
        };
        assert!((s(0.0) - 1.0).abs() < 1e-14);
        assert!((s(0.5) - 0.811_278_124_5).abs() < 1e-10);
        assert!(s(1.0 - 1e-7) < 1e-5);
        let raw = pure_biortho_density(&ah(1.0, 0.5, 0.5), SINGLET_LOW).unwrap();
        assert_eq!(
            reduced_entropy(&raw, Qubit::Second),
            Err(Error::NotHermitianState)
        );
    }

    #[test]
    fn formation_examples() {
        assert_eq!(entanglement_of_formation(0.0).unwrap(), 0.0);
        assert!((entanglement_of_formation(1.0).unwrap() - 1.0).abs() < 1e-15);
        assert!((entanglement_of_formation(0.8).unwrap() - 0.721_928_094_9).abs() < 1e-10);
        assert!(entanglement_of_formation(1.25).is_err());
        assert!(entanglement_of_formation(-0.1).is_err());
        let mut prev = -1.0;
        for k in 0..=100 {
            let x = entanglement_of_formation(k as f64 / 100.0).unwrap();
            assert!(x >= prev);
            prev = x;
        }
    }

    #[test]
    fn low_t_examples() {
        // at γ_c the numerator vanishes
        for t in [0.01, 0.3, 5.0] {
            assert!(low_t_concurrence(&ah(1.0, 0.6, 0.8), t).unwrap().abs() < 1e-15);
        }
        let c = low_t_concurrence(&ah(1.0, 1.0, 0.6), 0.05).unwrap();
        let direct = 0.8 * (20f64.exp() - 16f64.exp()) / (16f64.exp() + 0.8 * 20f64.exp());
        assert!((c - direct).abs() < 1e-15);
        assert!((c - 0.959_712_183_9).abs() < 1e-10);
        assert!(low_t_concurrence(&ah(1.0, 1.0, 0.6), 1e-5)
            .unwrap()
            .is_finite());
        assert!(matches!(
            low_t_concurrence(&ah(1.0, 1.0, 1.0), 0.1),
            Err(Error::ExceptionalPointProximity { .. })
        ));
    }

    #[test]
    fn low_t_matches_two_level_pipeline() {
        for &(d, g, t) in &[
            (1.0, 0.6, 0.05),
            (0.5, 0.3, 0.01),
            (0.5, 0.95, 0.02),
            (0.2, 0.1, 0.1),
        ] {
            let p = ah(1.0, d, g);
            let st = two_level_thermal(&p, t).unwrap();
            let c = wootters_concurrence(&st.density).unwrap().concurrence;
            assert!(
                (c - low_t_concurrence(&p, t).unwrap()).abs() < 1e-12,
                "{d} {g} {t}"
            );
        }
    }

    #[test]
    fn zero_t_examples() {
        let r = zero_t_concurrence(&ah(1.0, 0.5, 0.5)).unwrap();
        assert_eq!(r.branch, Branch::Below);
        assert!((r.concurrence - 0.75_f64.sqrt()).abs() < 1e-15);
        assert_eq!(
            zero_t_concurrence(&ah(1.0, 0.5, 0.9)).unwrap().concurrence,
            1.0
        );
        let r = zero_t_concurrence(&ah(1.0, 0.6, 0.8)).unwrap();
        assert_eq!(r.branch, Branch::Critical);
        assert_eq!(r.concurrence, 0.0);
        assert!((r.below_value - 0.6).abs() < 1e-15);
    }

    #[test]
    fn bound_examples() {
        let b = temperature_bound(1.0, 0.8, 0.9).unwrap();
        assert!((b.printed - 0.4 / 25f64.ln()).abs() < 1e-15);
        assert!((b.bisected - b.inverted).abs() < 1e-12);
        let c = low_t_concurrence(&ah(1.0, 1.0, 0.8), b.bisected).unwrap();
        assert!((c - 0.9).abs() < 1e-12);
        assert!(temperature_bound(1.0, 0.8, 1.0 - 1e-12).unwrap().printed < 0.02);
        assert!(temperature_bound(1.0, 0.8, 1.0).is_err());
        // the two expressions differ once J ≠ 1
        let b = temperature_bound(2.0, 0.8, 0.9).unwrap();
        assert!((b.bisected - b.inverted).abs() < 1e-12);
        assert!((b.printed - b.inverted).abs() > 0.1);
    }

    #[test]
    fn general_ground_concurrence() {
        let g = ground_concurrence_general(1.0, 0.5, 0.2, 0.5).unwrap();
        assert!((g.concurrence - 2.0 * 1.8_f64.sqrt() / 2.7).abs() < 1e-15);
        assert!((g.concurrence - 0.993_807_990_0).abs() < 1e-9);
        assert_eq!(
            ground_concurrence_general(1.0, 0.0, 0.0, 0.5)
                .unwrap()
                .concurrence,
            1.0
        );
        for g in [0.1, 0.4, 0.7] {
            let c = ground_concurrence_general(1.0, g, -g, 0.2)
                .unwrap()
                .concurrence;
            assert!((c - (1.0 - g * g).sqrt()).abs() < 1e-15);
        }
        let c = ground_concurrence_general(1.0, 0.8, -0.8, 0.6).unwrap();
        assert!(c.degenerate && c.concurrence == 0.0);
        assert_eq!(
            ground_concurrence_general(1.0, 0.9, -0.9, 0.6)
                .unwrap()
                .ground_level,
            BELL_MINUS
        );
        assert!(matches!(
            ground_concurrence_general(1.0, 1.5, -1.5, 0.6),
            Err(Error::ComplexSpectrum { .. })
        ));
    }

    #[test]
    fn general_ground_concurrence_matches_pipeline() {
        for &(g1, g2, d) in &[
            (0.5, 0.2, 0.5),
            (-0.4, 0.9, 0.3),
            (-1.5, -3.0, 0.4),
            (2.0, -0.5, 0.9),
        ] {
            let p = ModelParams::new(1.0, d, g1, g2).unwrap();
            let closed = ground_concurrence_general(1.0, g1, g2, d)
                .unwrap()
                .concurrence;
            let numeric = zero_temperature_pipeline(&p).unwrap().report.concurrence;
            assert!((closed - numeric).abs() < 1e-12, "{g1} {g2} {d}");
        }
    }

    #[test]
    fn contour_examples() {
        assert_eq!(transition_contour(1.0, 1.0, &[0.0]).unwrap(), vec![0.0]);
        assert!((transition_contour(1.0, 0.5, &[0.0]).unwrap()[0] + 0.75).abs() < 1e-15);
        let d: f64 = 0.6;
        let g = (1.0 - d * d).sqrt();
        assert!((transition_contour(1.0, d, &[g]).unwrap()[0] + g).abs() < 1e-15);
        assert!(matches!(
            transition_contour(1.0, 0.5, &[0.0, -1.0]),
            Err(Error::DivisionByZero(_))
        ));
    }

    #[test]
    fn zero_t_pipeline_matches_closed_form() {
        for g in [0.0, 0.3, 0.5, 0.86, 0.87, 0.95] {
            let p = ah(1.0, 0.5, g);
            let closed = zero_t_concurrence(&p).unwrap().concurrence;
            let numeric = zero_temperature_pipeline(&p).unwrap().report.concurrence;
            assert!((closed - numeric).abs() < 1e-12, "{g}");
        }
        assert!(
            zero_temperature_pipeline(&ah(1.0, 0.6, 0.8))
                .unwrap()
                .degenerate
        );
    }
}
