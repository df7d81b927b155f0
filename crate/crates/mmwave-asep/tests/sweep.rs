//! Sweep-harness tests: JSON config parsing with defaults, unit conversion
//! at the boundary, grid-ordered row evaluation with failure flagging,
//! deterministic CSV emission, the validation verdict, and the figure
//! presets.

use mmwave_asep::errorprob::Mode;
use mmwave_asep::sweep::{
    preset, run_sweep, validate, write_csv, SweepAxis, SweepSpec, ValidationReport, CSV_HEADER,
};
use std::io::Write;

fn quick_spec() -> SweepSpec {
    SweepSpec {
        grid: vec![0.0, 10.0],
        trials: 20_000,
        ..SweepSpec::default()
    }
}

#[test]
fn config_defaults_fill_unnamed_fields() {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    write!(
        file,
        r#"{{"axis": "lambda_bs", "grid": [1e-5, 1e-4], "mc": false}}"#
    )
    .unwrap();
    let spec = SweepSpec::from_path(file.path()).unwrap();
    assert_eq!(spec.axis, SweepAxis::LambdaBs);
    assert_eq!(spec.grid, vec![1e-5, 1e-4]);
    assert!(!spec.mc);
    // Everything unnamed comes from the defaults.
    assert_eq!(spec.snr_db, 10.0);
    assert_eq!(spec.trials, 200_000);
    assert_eq!(spec.seed, 42);
    assert_eq!(spec.mode, Mode::MmWave);
    assert_eq!(spec.label, "sweep");
    assert_eq!(spec.ball_radius_m, 141.0);
}

#[test]
fn config_round_trips_through_json() {
    let spec = SweepSpec {
        axis: SweepAxis::SigmaBe,
        grid: vec![0.0, 2.0, 5.0],
        mode: Mode::OmniBaseline,
        label: "custom".to_string(),
        ..SweepSpec::default()
    };
    let text = serde_json::to_string(&spec).unwrap();
    let back: SweepSpec = serde_json::from_str(&text).unwrap();
    assert_eq!(back.axis, spec.axis);
    assert_eq!(back.grid, spec.grid);
    assert_eq!(back.mode, spec.mode);
    assert_eq!(back.label, spec.label);
}

#[test]
fn config_rejects_unknown_keys_bad_axes_and_bad_grids() {
    assert!(serde_json::from_str::<SweepSpec>(r#"{"axsi": "snr_db"}"#).is_err());
    assert!(serde_json::from_str::<SweepSpec>(r#"{"axis": "snr"}"#).is_err());
    assert!(serde_json::from_str::<SweepSpec>(r#"{"mode": "mmWave"}"#).is_err());

    let empty = SweepSpec {
        grid: vec![],
        ..SweepSpec::default()
    };
    assert!(empty.check().is_err());
    let fractional_order = SweepSpec {
        axis: SweepAxis::ModulationOrder,
        grid: vec![2.0, 2.5],
        ..SweepSpec::default()
    };
    assert!(fractional_order.check().is_err());
    let tiny_order = SweepSpec {
        axis: SweepAxis::ModulationOrder,
        grid: vec![1.0],
        ..SweepSpec::default()
    };
    assert!(tiny_order.check().is_err());
}

#[test]
fn instantiate_converts_units_at_the_boundary() {
    let spec = SweepSpec {
        main_gain_db: 20.0,
        side_gain_db: -10.0,
        beamwidth_deg: 15.0,
        snr_db: 0.0,
        noise_level: 2.0,
        fading_power: 0.5,
        sigma_be_deg: 5.0,
        ..SweepSpec::default()
    };
    let (scenario, beam) = spec.instantiate(0.0).unwrap();
    assert_eq!(scenario.pattern.main_gain, 100.0);
    assert_eq!(scenario.pattern.side_gain, 0.1);
    assert_eq!(scenario.pattern.beamwidth, 15f64.to_radians());
    // SNR = E₀σ₀/(4N₀): 0 dB with N₀ = 2, σ₀ = 0.5 needs E₀ = 16.
    assert_eq!(scenario.budget.symbol_energy, 16.0);
    assert_eq!(scenario.budget.serving_gain, 10_000.0);
    assert_eq!(beam.sigma_be, 5f64.to_radians());

    // The axis overrides exactly one knob.
    let (at_20db, _) = spec.instantiate(20.0).unwrap();
    assert_eq!(at_20db.budget.symbol_energy, 1600.0);

    let lambda_axis = SweepSpec {
        axis: SweepAxis::LambdaBs,
        ..spec.clone()
    };
    let (thinned, _) = lambda_axis.instantiate(3e-5).unwrap();
    assert_eq!(thinned.params.lambda_bs, 3e-5);

    let order_axis = SweepSpec {
        axis: SweepAxis::ModulationOrder,
        ..spec.clone()
    };
    let (psk8, _) = order_axis.instantiate(8.0).unwrap();
    assert_eq!(psk8.modulation.order, 8);

    let sigma_axis = SweepAxis::SigmaBe;
    let (_, widened) = SweepSpec {
        axis: sigma_axis,
        ..spec.clone()
    }
    .instantiate(8.0)
    .unwrap();
    assert_eq!(widened.sigma_be, 8f64.to_radians());

    // The omnidirectional baseline serves with unit gain and unit pattern.
    let omni = SweepSpec {
        mode: Mode::OmniBaseline,
        ..spec
    };
    let (baseline, _) = omni.instantiate(0.0).unwrap();
    assert_eq!(baseline.budget.serving_gain, 1.0);
    assert_eq!(baseline.pattern.main_gain, 1.0);
}

#[test]
fn sweep_rows_keep_grid_order_and_flag_bad_points() {
    let spec = SweepSpec {
        axis: SweepAxis::LambdaBs,
        grid: vec![1e-4, -1.0, 1e-5],
        mc: false,
        ..SweepSpec::default()
    };
    let rows = run_sweep(&spec).unwrap();
    assert_eq!(rows.len(), 3);
    for (row, &v) in rows.iter().zip(&spec.grid) {
        assert_eq!(row.value, v);
        assert_eq!(row.axis, SweepAxis::LambdaBs);
    }
    assert!(rows[0].asep_analytic.is_some());
    assert!(rows[2].asep_analytic.is_some());
    // The bad point becomes a flagged row, not an abort.
    let bad = &rows[1];
    assert!(bad.asep_analytic.is_none());
    assert!(bad.flags.iter().any(|f| f.starts_with("config-error:")));
    for f in &bad.flags {
        assert!(!f.contains(',') && !f.contains('\n'), "unsanitized flag {f:?}");
    }
    // MC was off: no estimates, no z-scores anywhere.
    assert!(rows.iter().all(|r| r.asep_mc.is_none() && r.z_score.is_none()));
}

#[test]
fn csv_is_deterministic_except_for_the_seconds_column() {
    let spec = quick_spec();
    let render = || {
        let rows = run_sweep(&spec).unwrap();
        let mut buf = Vec::new();
        write_csv(&mut buf, &rows).unwrap();
        String::from_utf8(buf).unwrap()
    };
    let (a, b) = (render(), render());

    let strip_seconds = |text: &str| -> Vec<String> {
        text.lines()
            .map(|l| l.rsplit_once(',').unwrap().0.to_string())
            .collect()
    };
    assert_eq!(strip_seconds(&a), strip_seconds(&b));

    let mut lines = a.lines();
    assert_eq!(lines.next().unwrap(), CSV_HEADER);
    for line in lines {
        let fields: Vec<&str> = line.split(',').collect();
        assert_eq!(fields.len(), 8, "malformed row {line:?}");
        assert_eq!(fields[0], "snr_db");
        // Probabilities are rendered in scientific notation; both routes and
        // the z-score are present on healthy MC rows.
        assert!(fields[2].contains('e'), "analytic column: {line:?}");
        assert!(fields[3].contains('e'), "mc column: {line:?}");
        assert!(!fields[5].is_empty(), "z column empty: {line:?}");
        assert!(fields[7].parse::<f64>().unwrap() >= 0.0);
    }
}

#[test]
fn validation_passes_on_an_interference_free_grid() {
    // The interference-free mode has an independent closed-form analytic
    // route, so analytic vs MC must agree within 3σ at healthy trial counts.
    let spec = SweepSpec {
        mode: Mode::NoiseOnly,
        grid: vec![0.0, 10.0],
        trials: 50_000,
        mc: false, // validate() forces the oracle on
        ..SweepSpec::default()
    };
    let report = validate(&spec).unwrap();
    assert!(report.passed(), "failing rows: {:?}", report.failing);
    assert!(report.max_abs_z <= 3.0);
    assert!(report.rows.iter().all(|r| r.asep_mc.is_some()));

    // Same verdict at a different seed: 3σ with 5·10⁴ trials is not fragile.
    let reseeded = SweepSpec { seed: 43, ..spec };
    assert!(validate(&reseeded).unwrap().passed());
}

#[test]
fn validation_fails_rows_missing_either_route() {
    // λ = 0 cannot average over the serving distance: the analytic route
    // errors, the row is flagged, and validation reports it failing.
    let spec = SweepSpec {
        axis: SweepAxis::LambdaBs,
        grid: vec![1e-4, 0.0],
        trials: 20_000,
        ..SweepSpec::default()
    };
    let report = validate(&spec).unwrap();
    assert!(!report.passed());
    assert_eq!(report.failing, vec![1]);

    // The z-gate itself: a synthetic report with an out-of-band row.
    let synthetic = ValidationReport {
        rows: Vec::new(),
        max_abs_z: 4.2,
        failing: vec![2],
    };
    assert!(!synthetic.passed());
}

#[test]
fn presets_pin_the_published_parameter_studies() {
    let fig1 = preset("fig1").unwrap();
    assert_eq!(fig1.len(), 4);
    let labels: Vec<&str> = fig1.iter().map(|s| s.label.as_str()).collect();
    assert_eq!(
        labels,
        [
            "mmwave-lam1e-05",
            "mmwave-lam1e-04",
            "omni-lam1e-05",
            "omni-lam1e-04"
        ]
    );
    for s in &fig1 {
        assert_eq!(s.axis, SweepAxis::SnrDb);
        assert_eq!(s.grid.first(), Some(&0.0));
        assert_eq!(s.grid.last(), Some(&60.0));
        assert_eq!(s.modulation_order, 2);
        assert_eq!(s.main_gain_db, 10.0);
    }
    assert_eq!(fig1[0].lambda_bs, 1e-5);
    assert_eq!(fig1[1].lambda_bs, 1e-4);
    assert!(matches!(fig1[2].mode, Mode::OmniBaseline));
    assert!(matches!(fig1[3].mode, Mode::OmniBaseline));

    let fig2 = preset("fig2").unwrap();
    assert_eq!(fig2.len(), 2);
    assert_eq!((fig2[0].main_gain_db, fig2[0].lambda_bs), (20.0, 1e-5));
    assert_eq!((fig2[1].main_gain_db, fig2[1].lambda_bs), (10.0, 1e-4));

    let fig3 = preset("fig3").unwrap();
    let orders: Vec<u32> = fig3.iter().map(|s| s.modulation_order).collect();
    assert_eq!(orders, [2, 4, 8]);
    assert!(fig3.iter().all(|s| s.main_gain_db == 20.0 && s.lambda_bs == 1e-4));
    assert_eq!(fig3[2].label, "psk8");

    let fig4 = preset("fig4").unwrap();
    let sigmas: Vec<f64> = fig4.iter().map(|s| s.sigma_be_deg).collect();
    assert_eq!(sigmas, [0.0, 2.0, 5.0, 8.0]);
    assert!(fig4.iter().all(|s| s.main_gain_db == 20.0 && s.lambda_bs == 1e-5));
    assert_eq!(fig4[3].label, "sigma8deg");

    let err = preset("fig9").unwrap_err().to_string();
    assert!(err.contains("fig1"), "unhelpful error: {err}");
}
