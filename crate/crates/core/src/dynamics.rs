//! Hybrid Liouvillian evolution with pairwise jump operators, interpolating
//! between full Lindblad dynamics (`q = 1`) and postselected no-jump
//! evolution under `H_eff` (`q = 0`).

use crate::error::{Error, Result};
use crate::linalg::{matrix_exp, ComplexMatrix4, I};
use crate::model::{analytic_biortho, build_hamiltonian, xy_hamiltonian, ModelParams};
use crate::spin::{self, Site};
use crate::thermal::{DensityMatrix, Form};

/// Largest accepted step-halving error estimate per step.
pub const STEP_ERROR_LIMIT: f64 = 1e-6;

/// `L₁₂ = √(γ/2)(S₁⁻ − iS₂⁻)`, `G₁₂ = √(γ/2)(S₁⁺ + iS₂⁺)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct JumpOperators {
    pub l12: ComplexMatrix4,
    pub g12: ComplexMatrix4,
    pub gamma: f64,
}

impl JumpOperators {
    pub fn new(gamma: f64) -> Result<Self> {
        if !(gamma.is_finite() && gamma >= 0.0) {
            return Err(Error::InvalidParameter(format!(
                "gamma must be non-negative, got {gamma}"
            )));
        }
        let k = (gamma / 2.0).sqrt();
        let lower = spin::on(Site::One, &spin::lowering())
            - spin::on(Site::Two, &spin::lowering()).scale(I);
        let raise =
            spin::on(Site::One, &spin::raising()) + spin::on(Site::Two, &spin::raising()).scale(I);
        Ok(Self {
            l12: lower.scale_re(k),
            g12: raise.scale_re(k),
            gamma,
        })
    }

    pub fn as_array(&self) -> [ComplexMatrix4; 2] {
        [self.l12, self.g12]
    }
}

/// `H_XY − iL₁₂†L₁₂ − iG₁₂†G₁₂`, assembled from the jump operators.
pub fn effective_hamiltonian(j: f64, delta: f64, gamma: f64) -> Result<ComplexMatrix4> {
    ModelParams::new(j, delta, 0.0, 0.0)?;
    let ops = JumpOperators::new(gamma)?;
    let loss = ops.l12.adjoint() * ops.l12 + ops.g12.adjoint() * ops.g12;
    Ok(xy_hamiltonian(j, delta) - loss.scale(I))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EvolutionConfig {
    pub q: f64,
    pub t_final: f64,
    pub dt: f64,
    /// Divide by the trace after every step.
    pub renormalize: bool,
}

impl EvolutionConfig {
    pub fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.q) {
            return Err(Error::OutOfRange {
                name: "q",
                value: self.q,
                range: "[0, 1]",
            });
        }
        if !(self.dt.is_finite() && self.dt > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "dt must be positive, got {}",
                self.dt
            )));
        }
        if !(self.t_final.is_finite() && self.t_final >= 0.0) {
            return Err(Error::InvalidParameter(format!(
                "t_final must be non-negative, got {}",
                self.t_final
            )));
        }
        Ok(())
    }
}

/// `ρ ↦ −i(H_eff ρ − ρ H_eff†) + 2q Σ_k Z_k ρ Z_k†`
#[derive(Clone, Debug, PartialEq)]
pub struct Generator {
    pub h_eff: ComplexMatrix4,
    pub jumps: Vec<ComplexMatrix4>,
    pub q: f64,
}

impl Generator {
    /// Jump operators `L₁₂, G₁₂` with `H_eff` from [`effective_hamiltonian`].
    pub fn hybrid(j: f64, delta: f64, gamma: f64, q: f64) -> Result<Self> {
        Ok(Self {
            h_eff: effective_hamiltonian(j, delta, gamma)?,
            jumps: JumpOperators::new(gamma)?.as_array().to_vec(),
            q,
        })
    }

    /// No-jump evolution under an arbitrary (possibly non-Hermitian) `h`.
    pub fn no_jump(h: ComplexMatrix4) -> Self {
        Self {
            h_eff: h,
            jumps: Vec::new(),
            q: 0.0,
        }
    }

    pub fn apply(&self, rho: &ComplexMatrix4) -> ComplexMatrix4 {
        let mut out = (self.h_eff * *rho - *rho * self.h_eff.adjoint()).scale(-I);
        if self.q != 0.0 {
            for z in &self.jumps {
                out += (*z * *rho * z.adjoint()).scale_re(2.0 * self.q);
            }
        }
        out
    }

    fn rk4(&self, y: &ComplexMatrix4, h: f64) -> ComplexMatrix4 {
        let k1 = self.apply(y);
        let k2 = self.apply(&(*y + k1.scale_re(h / 2.0)));
        let k3 = self.apply(&(*y + k2.scale_re(h / 2.0)));
        let k4 = self.apply(&(*y + k3.scale_re(h)));
        *y + (k1 + k2.scale_re(2.0) + k3.scale_re(2.0) + k4).scale_re(h / 6.0)
    }
}

pub fn liouvillian_apply(
    rho: &ComplexMatrix4,
    j: f64,
    delta: f64,
    gamma: f64,
    q: f64,
) -> Result<ComplexMatrix4> {
    rho.ensure_finite()?;
    if !(0.0..=1.0).contains(&q) {
        return Err(Error::OutOfRange {
            name: "q",
            value: q,
            range: "[0, 1]",
        });
    }
    Ok(Generator::hybrid(j, delta, gamma, q)?.apply(rho))
}

#[derive(Clone, Debug)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub states: Vec<ComplexMatrix4>,
    /// Largest per-step error estimate encountered.
    pub max_step_error: f64,
}

impl Trajectory {
    pub fn last(&self) -> (f64, &ComplexMatrix4) {
        let k = self.times.len() - 1;
        (self.times[k], &self.states[k])
    }
}

/// Fixed-step RK4 under the hybrid Liouvillian. `ρ₀` must be a unit-trace
/// Hermitian PSD matrix.
pub fn evolve(
    rho0: &ComplexMatrix4,
    cfg: &EvolutionConfig,
    j: f64,
    delta: f64,
    gamma: f64,
) -> Result<Trajectory> {
    cfg.validate()?;
    evolve_with(&Generator::hybrid(j, delta, gamma, cfg.q)?, rho0, cfg)
}

/// Integrates with a given generator; `cfg.q` is ignored in favour of
/// `generator.q`. The step is `t_final / n` with `n = ⌈t_final/dt⌉`. Each
/// step is compared with two half steps; the difference, scaled by 16/15,
/// estimates the local error of the full step.
pub fn evolve_with(
    generator: &Generator,
    rho0: &ComplexMatrix4,
    cfg: &EvolutionConfig,
) -> Result<Trajectory> {
    cfg.validate()?;
    DensityMatrix::new(*rho0, Form::Hermitian, None)?;
    let n = ((cfg.t_final / cfg.dt) - 1e-9).ceil().max(0.0) as usize;
    let h = if n == 0 { 0.0 } else { cfg.t_final / n as f64 };

    let mut times = Vec::with_capacity(n + 1);
    let mut states = Vec::with_capacity(n + 1);
    times.push(0.0);
    states.push(*rho0);
    let mut y = *rho0;
    let mut max_step_error: f64 = 0.0;
    for step in 1..=n {
        let full = generator.rk4(&y, h);
        let half = generator.rk4(&generator.rk4(&y, h / 2.0), h / 2.0);
        let estimate = (full - half).frobenius_norm() * 16.0 / 15.0;
        if !(estimate <= STEP_ERROR_LIMIT) {
            return Err(Error::StepTooLarge {
                estimate,
                limit: STEP_ERROR_LIMIT,
            });
        }
        max_step_error = max_step_error.max(estimate);
        y = full;
        if cfg.renormalize {
            let tr = y.trace().re;
            if !(tr.abs() > f64::MIN_POSITIVE) {
                return Err(Error::DegenerateTrace(tr));
            }
            y = y.scale_re(1.0 / tr);
        }
        y.ensure_finite()?;
        times.push(step as f64 * h);
        states.push(y);
    }
    Ok(Trajectory {
        times,
        states,
        max_step_error,
    })
}

/// `e^{−itH}ρ e^{itH†}`
pub fn no_jump_propagation(
    h: &ComplexMatrix4,
    rho: &ComplexMatrix4,
    t: f64,
) -> Result<ComplexMatrix4> {
    let u = matrix_exp(&h.scale(-I * t))?;
    Ok(u * *rho * u.adjoint())
}

#[derive(Clone, Debug)]
pub struct ImaginaryTimePropagator {
    /// `e^{−τH}` via the matrix exponential.
    pub expm: ComplexMatrix4,
    /// `Σ_j e^{−τE_j}|R_j⟩⟨L_j|`
    pub spectral: ComplexMatrix4,
    /// Largest entrywise difference relative to the largest entry.
    pub deviation: f64,
}

pub fn imaginary_time_propagator(p: &ModelParams, tau: f64) -> Result<ImaginaryTimePropagator> {
    if !(tau.is_finite() && tau > 0.0) {
        return Err(Error::OutOfRange {
            name: "tau",
            value: tau,
            range: "(0, inf)",
        });
    }
    let sys = analytic_biortho(p)?;
    let spectral = sys.assemble(|e| (-tau * e).exp());
    spectral.ensure_finite()?;
    let expm = matrix_exp(&build_hamiltonian(p).scale_re(-tau))?;
    let deviation = expm.max_abs_diff(&spectral) / spectral.max_abs().max(f64::MIN_POSITIVE);
    Ok(ImaginaryTimePropagator {
        expm,
        spectral,
        deviation,
    })
}
