use nhxy_core::dynamics::EvolutionConfig;
use nhxy_core::model::critical_gamma;
use nhxy_explorer::sweep::{run_sweep, Axis, Fixed, Mode, SweepSpec};

fn fixed(delta: f64, t: f64) -> Fixed {
    Fixed {
        j: 1.0,
        delta,
        gamma1: 0.0,
        gamma2: 0.0,
        b: 0.0,
        t,
        evolution: EvolutionConfig {
            q: 0.0,
            t_final: 1.0,
            dt: 1e-3,
            renormalize: false,
        },
    }
}

fn axis(start: f64, stop: f64, count: usize) -> Axis {
    Axis { start, stop, count }
}

/// Midpoint of the first grid cell where `pred` flips from true to false.
fn first_flip(xs: &[f64], pred: impl Fn(usize) -> bool) -> Option<f64> {
    (1..xs.len())
        .find(|&k| pred(k - 1) && !pred(k))
        .map(|k| 0.5 * (xs[k - 1] + xs[k]))
}

#[test]
fn gap_sign_change_and_concurrence_jump_coincide() {
    let gammas = axis(0.01, 0.99, 99);
    let cell = gammas.step() * (1.0 + 1e-9);
    for delta in [0.3, 0.5, 0.6, 0.9] {
        let spectrum = run_sweep(
            &SweepSpec::new(Mode::SpectrumGamma, vec![gammas], fixed(delta, 0.1), None).unwrap(),
            Some(2),
        )
        .unwrap();
        let g = spectrum.column("gamma").unwrap();
        let gap = spectrum.column("gap01").unwrap();
        let from_gap = first_flip(&g, |k| gap[k] > 0.0).unwrap();

        let spec = SweepSpec::new(
            Mode::ConcurrenceGammaDelta,
            vec![gammas, axis(delta, delta, 2)],
            fixed(delta, 0.0),
            None,
        )
        .unwrap();
        let table = run_sweep(&spec, Some(2)).unwrap();
        let rows: Vec<_> = table.rows.iter().step_by(2).collect();
        let g2: Vec<f64> = rows.iter().map(|r| r.values[0]).collect();
        let from_jump = first_flip(&g2, |k| rows[k].values[3] < 1.0 - 1e-9).unwrap();

        assert!(
            (from_gap - from_jump).abs() <= cell,
            "{delta}: {from_gap} vs {from_jump}"
        );
        assert!(
            (from_gap - critical_gamma(1.0, delta)).abs() <= cell,
            "{delta}"
        );
    }
}

#[test]
fn zero_temperature_closed_form_and_pipeline_agree() {
    let spec = SweepSpec::new(
        Mode::ConcurrenceGammaDelta,
        vec![axis(0.0, 0.99, 34), axis(0.0, 1.0, 21)],
        fixed(1.0, 0.0),
        None,
    )
    .unwrap();
    let table = run_sweep(&spec, None).unwrap();
    for row in &table.rows {
        assert_ne!(row.status, "mismatch", "{:?}", row.values);
        assert!(
            (row.values[2] - row.values[3]).abs() <= 1e-6,
            "{:?}",
            row.values
        );
    }
}

#[test]
fn spectrum_sweep_flags_exceptional_and_complex_rows() {
    let spec = SweepSpec::new(Mode::SpectrumGamma, vec![], fixed(0.5, 0.1), None).unwrap();
    let table = run_sweep(&spec, Some(3)).unwrap();
    assert_eq!(table.rows.len(), 121);
    let status = |g: f64| {
        let k = table
            .rows
            .iter()
            .position(|r| (r.values[0] - g).abs() < 1e-12)
            .unwrap();
        table.rows[k].status.as_str()
    };
    assert_eq!(status(0.5), "ok");
    assert_eq!(status(1.0), "exceptional-point");
    assert_eq!(status(1.1), "complex-spectrum");
    let gap = table.column("gap01").unwrap();
    assert!(gap[110].is_nan());
}

#[test]
fn thermal_sweep_orders_rows_axis_major() {
    let spec = SweepSpec::new(
        Mode::ConcurrenceGammaT,
        vec![axis(0.0, 0.9, 4), axis(0.05, 0.2, 3)],
        fixed(0.5, 0.1),
        None,
    )
    .unwrap();
    let table = run_sweep(&spec, Some(4)).unwrap();
    let t = table.column("T").unwrap();
    let g = table.column("gamma").unwrap();
    assert_eq!(&t[..3], &[0.05, 0.125, 0.2]);
    assert_eq!(g[3], 0.3);
    for row in &table.rows {
        assert!((0.0..=1.0).contains(&row.values[2]));
    }
}

#[test]
fn provenance_is_independent_of_workers() {
    let spec = SweepSpec::new(
        Mode::AppendixADemo,
        vec![axis(0.0, 0.9, 10)],
        fixed(0.5, 0.1),
        None,
    )
    .unwrap();
    let csv = run_sweep(&spec, Some(1)).unwrap().to_csv();
    assert_eq!(csv, run_sweep(&spec, Some(3)).unwrap().to_csv());
    assert!(csv.lines().take(5).all(|l| l.starts_with('#')));
    assert!(csv.contains("# grid-sha256: "));
    let other = SweepSpec::new(
        Mode::AppendixADemo,
        vec![axis(0.0, 0.9, 11)],
        fixed(0.5, 0.1),
        None,
    )
    .unwrap();
    assert_ne!(spec.grid_hash(), other.grid_hash());
}
