//! Grid sweeps over the model parameters, one CSV row per grid point.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use rayon::prelude::*;
use sha2::{Digest, Sha256};

use nhxy_core::dynamics::{evolve_with, EvolutionConfig, Generator};
use nhxy_core::entanglement::{
    entanglement_of_formation, low_t_concurrence, naive_concurrence, reduced_entropy,
    thermal_concurrence, wootters_concurrence, zero_t_concurrence, zero_temperature_pipeline,
    Branch,
};
use nhxy_core::linalg::{hermitian_eig, matrix_exp, CMat, ComplexMatrix4, Qubit, C64};
use nhxy_core::model::{
    analytic_spectrum, build_field_hamiltonian, classify_point, gap01, FieldParams, ModelParams,
    SpectralKind, BELL_MINUS, DEGENERACY_TOL, SINGLET_LOW,
};
use nhxy_core::thermal::{pure_biortho_density, svd_normalize, DensityMatrix, Form};

use crate::error::{status_tag, ConfigError, ExplorerError};
use crate::table::{format_number, ResultTable, Row};

/// Largest |γ| allowed on sweeps that need the bi-orthogonal eigensystem.
pub const MAX_GAMMA_FRACTION: f64 = 0.999;
/// Closed-form and pipeline columns must agree to this.
pub const AGREEMENT_TOL: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    SpectrumGamma,
    ConcurrenceGammaT,
    ConcurrenceGammaDelta,
    ContourGamma1Gamma2,
    AppendixADemo,
    LindbladCheck,
    FieldComparison,
}

impl Mode {
    pub const ALL: [Mode; 7] = [
        Mode::SpectrumGamma,
        Mode::ConcurrenceGammaT,
        Mode::ConcurrenceGammaDelta,
        Mode::ContourGamma1Gamma2,
        Mode::AppendixADemo,
        Mode::LindbladCheck,
        Mode::FieldComparison,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Mode::SpectrumGamma => "spectrum-gamma",
            Mode::ConcurrenceGammaT => "concurrence-gamma-T",
            Mode::ConcurrenceGammaDelta => "concurrence-gamma-delta",
            Mode::ContourGamma1Gamma2 => "contour-gamma1-gamma2",
            Mode::AppendixADemo => "appendix-a-demo",
            Mode::LindbladCheck => "lindblad-check",
            Mode::FieldComparison => "field-comparison",
        }
    }

    pub fn axis_names(self) -> &'static [&'static str] {
        match self {
            Mode::SpectrumGamma | Mode::AppendixADemo => &["gamma"],
            Mode::ConcurrenceGammaT => &["gamma", "T"],
            Mode::ConcurrenceGammaDelta => &["gamma", "delta"],
            Mode::ContourGamma1Gamma2 => &["gamma1", "gamma2"],
            Mode::LindbladCheck => &["t"],
            Mode::FieldComparison => &["B"],
        }
    }

    pub fn columns(self) -> &'static [&'static str] {
        match self {
            Mode::SpectrumGamma => &[
                "gamma", "E0_re", "E0_im", "E1_re", "E1_im", "E2_re", "E2_im", "E3_re", "E3_im",
                "gap01",
            ],
            Mode::ConcurrenceGammaT => &["gamma", "T", "C_full", "C_lowT"],
            Mode::ConcurrenceGammaDelta => &["gamma", "delta", "C_zeroT_closed", "C_pipeline"],
            Mode::ContourGamma1Gamma2 => &["gamma1", "gamma2", "C_ground", "phase"],
            Mode::AppendixADemo => &["gamma", "S", "C_svd", "xi", "C_naive", "xi_naive"],
            Mode::LindbladCheck => &["t", "frobenius_error", "trace"],
            Mode::FieldComparison => &["B", "E0", "E1", "E2", "E3", "C_ground"],
        }
    }

    fn default_axes(self, fixed: &Fixed) -> Vec<Axis> {
        let j = fixed.j;
        let ax = |start: f64, stop: f64, count: usize| Axis { start, stop, count };
        match self {
            Mode::SpectrumGamma => vec![ax(0.0, 1.2 * j, 121)],
            Mode::ConcurrenceGammaT => vec![ax(0.0, 0.99 * j, 100), ax(0.05 * j, j, 20)],
            Mode::ConcurrenceGammaDelta => vec![ax(0.0, 0.99 * j, 100), ax(0.0, 1.0, 101)],
            Mode::ContourGamma1Gamma2 => vec![ax(-j, j, 201), ax(-j, j, 201)],
            Mode::AppendixADemo => vec![ax(0.0, 0.99 * j, 100)],
            Mode::LindbladCheck => vec![ax(0.0, fixed.evolution.t_final, 11)],
            Mode::FieldComparison => vec![ax(0.0, 3.0 * j, 31)],
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Mode::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| {
                let names: Vec<_> = Mode::ALL.iter().map(|m| m.name()).collect();
                format!("unknown mode {s:?}; expected one of {}", names.join(", "))
            })
    }
}

/// `count` evenly spaced values from `start` to `stop` inclusive.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Axis {
    pub start: f64,
    pub stop: f64,
    pub count: usize,
}

impl Axis {
    pub fn values(&self) -> Vec<f64> {
        let last = self.count.saturating_sub(1).max(1) as f64;
        (0..self.count)
            .map(|k| {
                if k + 1 == self.count {
                    self.stop
                } else {
                    self.start + (self.stop - self.start) * k as f64 / last
                }
            })
            .collect()
    }

    pub fn step(&self) -> f64 {
        (self.stop - self.start) / (self.count.max(2) - 1) as f64
    }
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}:{}:{}",
            format_number(self.start),
            format_number(self.stop),
            self.count
        )
    }
}

impl FromStr for Axis {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parts: Vec<&str> = s.split(':').map(str::trim).collect();
        if parts.len() != 3 {
            return Err(format!("grid {s:?} is not start:stop:count"));
        }
        let num = |x: &str| {
            x.parse::<f64>()
                .map_err(|_| format!("bad number {x:?} in grid {s:?}"))
        };
        let count = parts[2]
            .parse::<usize>()
            .map_err(|_| format!("bad count {:?} in grid {s:?}", parts[2]))?;
        Ok(Axis {
            start: num(parts[0])?,
            stop: num(parts[1])?,
            count,
        })
    }
}

/// Parameters held fixed during a sweep. `gamma1 = -gamma2` unless both
/// rates were given separately.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Fixed {
    pub j: f64,
    pub delta: f64,
    pub gamma1: f64,
    pub gamma2: f64,
    pub b: f64,
    pub t: f64,
    pub evolution: EvolutionConfig,
}

impl Fixed {
    fn describe(&self) -> String {
        let e = &self.evolution;
        format!(
            "J={} delta={} gamma1={} gamma2={} B={} T={} q={} t-final={} dt={} renormalize={}",
            format_number(self.j),
            format_number(self.delta),
            format_number(self.gamma1),
            format_number(self.gamma2),
            format_number(self.b),
            format_number(self.t),
            format_number(e.q),
            format_number(e.t_final),
            format_number(e.dt),
            e.renormalize
        )
    }

    fn slice(&self, delta: f64, gamma: f64) -> nhxy_core::Result<ModelParams> {
        ModelParams::anti_hermitian(self.j, delta, gamma)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepSpec {
    pub mode: Mode,
    pub axes: Vec<Axis>,
    pub fixed: Fixed,
    pub out: Option<PathBuf>,
}

impl SweepSpec {
    /// Missing trailing axes take the mode's defaults.
    pub fn new(
        mode: Mode,
        mut axes: Vec<Axis>,
        fixed: Fixed,
        out: Option<PathBuf>,
    ) -> Result<Self, ConfigError> {
        let names = mode.axis_names();
        if axes.len() > names.len() {
            return Err(ConfigError::Validation(format!(
                "mode {mode} sweeps {} axis(es) ({}), got {} grids",
                names.len(),
                names.join(", "),
                axes.len()
            )));
        }
        let defaults = mode.default_axes(&fixed);
        axes.extend_from_slice(&defaults[axes.len()..]);
        let spec = Self {
            mode,
            axes,
            fixed,
            out,
        };
        spec.validate()?;
        Ok(spec)
    }

    fn validate(&self) -> Result<(), ConfigError> {
        let bad = |m: String| Err(ConfigError::Validation(m));
        for (axis, name) in self.axes.iter().zip(self.mode.axis_names()) {
            if axis.count < 2 {
                return bad(format!(
                    "{name} grid needs at least 2 points, got {}",
                    axis.count
                ));
            }
            if !(axis.start.is_finite() && axis.stop.is_finite()) {
                return bad(format!("{name} grid bounds must be finite"));
            }
            let (lo, hi) = (axis.start.min(axis.stop), axis.start.max(axis.stop));
            match *name {
                "gamma" if self.mode != Mode::SpectrumGamma => {
                    if lo < 0.0 || hi > MAX_GAMMA_FRACTION * self.fixed.j {
                        return bad(format!(
                            "gamma grid must lie in [0, {MAX_GAMMA_FRACTION}·J] to stay clear of the exceptional point"
                        ));
                    }
                }
                "delta" if lo < 0.0 || hi > 1.0 => {
                    return bad("delta grid must lie in [0, 1]".into())
                }
                "T" if lo < 0.0 => return bad("T grid must be non-negative".into()),
                "t" if lo < 0.0 => return bad("t grid must be non-negative".into()),
                _ => {}
            }
        }
        Ok(())
    }

    /// Grid points in axis-major order (first axis varies slowest).
    pub fn points(&self) -> Vec<Vec<f64>> {
        let mut points = vec![Vec::new()];
        for axis in &self.axes {
            let values = axis.values();
            points = points
                .into_iter()
                .flat_map(|p| {
                    values.iter().map(move |&v| {
                        let mut q = p.clone();
                        q.push(v);
                        q
                    })
                })
                .collect();
        }
        points
    }

    /// SHA-256 over the mode name and the bit patterns of every grid point.
    pub fn grid_hash(&self) -> String {
        let mut h = Sha256::new();
        h.update(self.mode.name().as_bytes());
        for p in self.points() {
            for v in p {
                h.update(v.to_le_bytes());
            }
        }
        h.finalize().iter().map(|b| format!("{b:02x}")).collect()
    }

    fn provenance(&self) -> Vec<(String, String)> {
        let axes: Vec<String> = self
            .axes
            .iter()
            .zip(self.mode.axis_names())
            .map(|(a, n)| format!("{n}={a}"))
            .collect();
        vec![
            (
                "generator".into(),
                format!("nhxy-explorer {}", env!("CARGO_PKG_VERSION")),
            ),
            ("mode".into(), self.mode.name().into()),
            ("parameters".into(), self.fixed.describe()),
            ("axes".into(), axes.join(" ")),
            ("grid-sha256".into(), self.grid_hash()),
        ]
    }
}

fn failed(coords: &[f64], width: usize, e: &nhxy_core::Error) -> Row {
    let mut values = coords.to_vec();
    values.resize(width, f64::NAN);
    Row {
        values,
        status: status_tag(e).into(),
    }
}

fn spectrum_row(f: &Fixed, gamma: f64) -> nhxy_core::Result<Row> {
    let p = f.slice(f.delta, gamma)?;
    let spec = analytic_spectrum(&p);
    let mut values = vec![gamma];
    for e in spec.values {
        values.push(e.re);
        values.push(e.im);
    }
    values.push(if spec.complex { f64::NAN } else { gap01(&p) });
    let status = match classify_point(&p).kind {
        SpectralKind::Generic => "ok",
        SpectralKind::HermitianDegeneracy => "hermitian-degeneracy",
        SpectralKind::ExceptionalPoint => "exceptional-point",
        SpectralKind::ComplexSpectrum => "complex-spectrum",
    };
    Ok(Row {
        values,
        status: status.into(),
    })
}

fn concurrence_gamma_t_row(f: &Fixed, gamma: f64, t: f64) -> nhxy_core::Result<Row> {
    let p = f.slice(f.delta, gamma)?;
    let (full, low) = if t == 0.0 {
        (
            zero_temperature_pipeline(&p)?.report.concurrence,
            zero_t_concurrence(&p)?.concurrence,
        )
    } else {
        (thermal_concurrence(&p, t)?, low_t_concurrence(&p, t)?)
    };
    Ok(Row::ok(vec![gamma, t, full, low]))
}

fn concurrence_gamma_delta_row(f: &Fixed, gamma: f64, delta: f64) -> nhxy_core::Result<Row> {
    let p = f.slice(delta, gamma)?;
    let closed = zero_t_concurrence(&p)?;
    let pipeline = if f.t == 0.0 {
        zero_temperature_pipeline(&p)?.report.concurrence
    } else {
        thermal_concurrence(&p, f.t)?
    };
    let status = if f.t == 0.0 && (pipeline - closed.concurrence).abs() > AGREEMENT_TOL {
        "mismatch"
    } else if closed.branch == Branch::Critical {
        "critical"
    } else {
        "ok"
    };
    Ok(Row {
        values: vec![gamma, delta, closed.concurrence, pipeline],
        status: status.into(),
    })
}

fn contour_row(f: &Fixed, g1: f64, g2: f64) -> nhxy_core::Result<Row> {
    let g = nhxy_core::entanglement::ground_concurrence_general(f.j, g1, g2, f.delta)?;
    let phase = if g.degenerate {
        0.5
    } else if g.ground_level == BELL_MINUS {
        1.0
    } else {
        0.0
    };
    Ok(Row {
        values: vec![g1, g2, g.concurrence, phase],
        status: if g.degenerate { "degenerate" } else { "ok" }.into(),
    })
}

fn demo_row(f: &Fixed, gamma: f64) -> nhxy_core::Result<Row> {
    let p = f.slice(f.delta, gamma)?;
    let raw = pure_biortho_density(&p, SINGLET_LOW)?;
    let svd = svd_normalize(&raw)?;
    let s = reduced_entropy(&svd, Qubit::First)?;
    let c = wootters_concurrence(&svd)?.concurrence;
    let xi = entanglement_of_formation(c)?;
    let naive = naive_concurrence(&raw)?.concurrence;
    let (xi_naive, status) = match entanglement_of_formation(naive) {
        Ok(x) => (x, "ok"),
        Err(_) => (f64::NAN, "xi-naive-undefined"),
    };
    Ok(Row {
        values: vec![gamma, s, c, xi, naive, xi_naive],
        status: status.into(),
    })
}

fn field_row(f: &Fixed, b: f64) -> nhxy_core::Result<Row> {
    let fp = FieldParams::new(f.j, f.delta, b)?;
    let eig = hermitian_eig(&build_field_hamiltonian(&fp))?;
    let e = eig.values;
    let degenerate = (e[1] - e[0]).abs() <= DEGENERACY_TOL * f.j;
    let ground = |k: usize| {
        let v = eig.vector(k);
        CMat::outer(&v, &v)
    };
    let rho = if degenerate {
        (ground(0) + ground(1)).scale_re(0.5)
    } else {
        ground(0)
    };
    let rho = DensityMatrix::new(rho.hermitian_part(), Form::Hermitian, None)?;
    let c = wootters_concurrence(&rho)?.concurrence;
    Ok(Row {
        values: vec![b, e[0], e[1], e[2], e[3], c],
        status: if degenerate {
            "degenerate-ground"
        } else {
            "ok"
        }
        .into(),
    })
}

/// `|↑↓⟩⟨↑↓|`, the initial state of the Lindblad check.
pub fn lindblad_initial_state() -> ComplexMatrix4 {
    CMat::from_real_diag(&[0.0, 1.0, 0.0, 0.0])
}

/// Matrix of `ρ ↦ Gρ` acting on row-major `vec(ρ)`.
fn superoperator(g: &Generator) -> CMat<16> {
    let mut s = CMat::<16>::zeros();
    for k in 0..16 {
        let mut basis = ComplexMatrix4::zeros();
        basis[(k / 4, k % 4)] = C64::new(1.0, 0.0);
        let image = g.apply(&basis);
        for r in 0..16 {
            s[(r, k)] = image[(r / 4, r % 4)];
        }
    }
    s
}

/// RK4 trajectory against `exp(tL)` of the 16×16 superoperator.
fn lindblad_rows(spec: &SweepSpec) -> nhxy_core::Result<Vec<Row>> {
    let f = &spec.fixed;
    let axis = spec.axes[0];
    let t_end = axis.start.max(axis.stop);
    let cfg = EvolutionConfig {
        t_final: t_end,
        ..f.evolution
    };
    let generator = Generator::hybrid(f.j, f.delta, f.gamma1, cfg.q)?;
    if f.gamma1 != -f.gamma2 || f.gamma1 < 0.0 {
        return Err(nhxy_core::Error::InvalidParameter(
            "lindblad-check needs gamma >= 0 with gamma1 = -gamma2".into(),
        ));
    }
    let rho0 = lindblad_initial_state();
    let traj = evolve_with(&generator, &rho0, &cfg)?;
    let steps = traj.times.len() - 1;
    let sup = superoperator(&generator);
    let mut rows = Vec::with_capacity(axis.count);
    for t in axis.values() {
        let k = if t_end == 0.0 {
            0
        } else {
            ((t / t_end) * steps as f64).round() as usize
        };
        let (tk, state) = (traj.times[k], &traj.states[k]);
        let prop = matrix_exp(&sup.scale_re(tk))?;
        let mut exact = ComplexMatrix4::zeros();
        for r in 0..16 {
            exact[(r / 4, r % 4)] = (0..16).map(|c| prop[(r, c)] * rho0[(c / 4, c % 4)]).sum();
        }
        if cfg.renormalize {
            exact = exact.scale_re(1.0 / exact.trace().re);
        }
        let err = (*state - exact).frobenius_norm();
        rows.push(Row::ok(vec![tk, err, state.trace().re]));
    }
    Ok(rows)
}

fn evaluate(spec: &SweepSpec, p: &[f64]) -> Row {
    let f = &spec.fixed;
    let row = match spec.mode {
        Mode::SpectrumGamma => spectrum_row(f, p[0]),
        Mode::ConcurrenceGammaT => concurrence_gamma_t_row(f, p[0], p[1]),
        Mode::ConcurrenceGammaDelta => concurrence_gamma_delta_row(f, p[0], p[1]),
        Mode::ContourGamma1Gamma2 => contour_row(f, p[0], p[1]),
        Mode::AppendixADemo => demo_row(f, p[0]),
        Mode::FieldComparison => field_row(f, p[0]),
        Mode::LindbladCheck => unreachable!("lindblad-check is evaluated as one trajectory"),
    };
    row.unwrap_or_else(|e| failed(p, spec.mode.columns().len(), &e))
}

/// Evaluates every grid point. Failures at single points become status
/// rows; the sweep itself only fails on setup errors. `workers = None`
/// uses rayon's global pool.
pub fn run_sweep(spec: &SweepSpec, workers: Option<usize>) -> Result<ResultTable, ExplorerError> {
    let mut table = ResultTable::new(spec.mode.columns());
    table.provenance = spec.provenance();
    let rows = if spec.mode == Mode::LindbladCheck {
        lindblad_rows(spec)?
    } else {
        let points = spec.points();
        let work = || {
            points
                .par_iter()
                .map(|p| evaluate(spec, p))
                .collect::<Vec<_>>()
        };
        match workers {
            Some(n) => rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| ExplorerError::Pool(e.to_string()))?
                .install(work),
            None => work(),
        }
    };
    for row in rows {
        table.push(row);
    }
    Ok(table)
}

/// Single-point subcommands of the CLI.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Spectrum,
    Concurrence,
    Lindblad,
    Demo,
}

impl Command {
    fn mode(self) -> Mode {
        match self {
            Command::Spectrum => Mode::SpectrumGamma,
            Command::Concurrence => Mode::ConcurrenceGammaT,
            Command::Lindblad => Mode::LindbladCheck,
            Command::Demo => Mode::AppendixADemo,
        }
    }
}

/// Evaluates one command at the fixed parameters. Unlike sweeps, a
/// numerical failure is an error.
pub fn run_single(
    command: Command,
    fixed: &Fixed,
    grid: Vec<Axis>,
) -> Result<ResultTable, ExplorerError> {
    let mode = command.mode();
    if command != Command::Spectrum && fixed.gamma1 != -fixed.gamma2 {
        return Err(ConfigError::Validation(format!(
            "{} needs gamma1 = -gamma2; pass --gamma",
            mode.name()
        ))
        .into());
    }
    if command == Command::Lindblad {
        let spec = SweepSpec::new(mode, grid, *fixed, None)?;
        return run_sweep(&spec, Some(1));
    }
    if !grid.is_empty() {
        return Err(
            ConfigError::Validation("--grid is only used by sweep and lindblad".into()).into(),
        );
    }
    let gamma = fixed.gamma1;
    let row = match command {
        Command::Spectrum => {
            let p = ModelParams::new(fixed.j, fixed.delta, fixed.gamma1, fixed.gamma2)?;
            let spec = analytic_spectrum(&p);
            let mut values = vec![gamma];
            for e in spec.values {
                values.push(e.re);
                values.push(e.im);
            }
            values.push(if spec.complex { f64::NAN } else { gap01(&p) });
            Row::ok(values)
        }
        Command::Concurrence => concurrence_gamma_t_row(fixed, gamma, fixed.t)?,
        Command::Demo => demo_row(fixed, gamma)?,
        Command::Lindblad => unreachable!(),
    };
    let mut table = ResultTable::new(mode.columns());
    table.provenance = vec![
        (
            "generator".into(),
            format!("nhxy-explorer {}", env!("CARGO_PKG_VERSION")),
        ),
        ("mode".into(), mode.name().into()),
        ("parameters".into(), fixed.describe()),
    ];
    table.push(row);
    Ok(table)
}
