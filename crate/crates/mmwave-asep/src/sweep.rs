//! Sweep harness: flat JSON configs, parameter grids, analytic-vs-Monte-Carlo
//! validation rows, figure presets, and deterministic CSV emission.
//!
//! Unit boundary: configs use dB for gains and SNR and degrees for angles;
//! everything is converted to linear/radians here, once, at the edge.

use crate::errorprob::{
    asep, asep_with_beam_error, AsepOutcome, BeamErrorModel, Mode, Scenario,
};
use crate::error::{Error, Result};
use crate::mc::{estimate_asep, estimate_asep_with_beam_error, McConfig};
use crate::model::{AntennaPattern, LinkBudget, Modulation, NetworkParams};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::io::Write;
use std::path::Path;
use std::time::Instant;

/// Which parameter the grid varies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepAxis {
    /// SNR = E₀σ₀/(4N₀) in dB; sets the symbol energy.
    SnrDb,
    /// BS density λ in m⁻².
    LambdaBs,
    /// Main-lobe gain M in dB (serving gain follows as M²).
    MainGainDb,
    /// PSK modulation order γ (values must be integers ≥ 2).
    ModulationOrder,
    /// Beamsteering-error standard deviation σ_BE in degrees.
    SigmaBe,
}

impl fmt::Display for SweepAxis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            SweepAxis::SnrDb => "snr_db",
            SweepAxis::LambdaBs => "lambda_bs",
            SweepAxis::MainGainDb => "main_gain_db",
            SweepAxis::ModulationOrder => "modulation_order",
            SweepAxis::SigmaBe => "sigma_be",
        };
        f.write_str(s)
    }
}

fn db_to_linear(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

/// One sweep: an axis, its grid, and the fixed configuration around it.
/// Deserializes from a flat JSON document; every field has a default so a
/// config file only needs to name what it changes.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SweepSpec {
    /// Varied parameter.
    pub axis: SweepAxis,
    /// Axis values (dB, m⁻², dB, order, degrees — per the axis).
    pub grid: Vec<f64>,
    /// BS density λ, m⁻².
    pub lambda_bs: f64,
    /// LOS ball radius, meters.
    pub ball_radius_m: f64,
    /// LOS path-loss exponent.
    pub alpha_los: f64,
    /// NLOS path-loss exponent.
    pub alpha_nlos: f64,
    /// Main-lobe gain, dB.
    pub main_gain_db: f64,
    /// Side-lobe gain, dB.
    pub side_gain_db: f64,
    /// Main-lobe beamwidth θ, degrees.
    pub beamwidth_deg: f64,
    /// SNR = E₀σ₀/(4N₀), dB.
    pub snr_db: f64,
    /// Noise spectral level N₀.
    pub noise_level: f64,
    /// Mean fading power σ₀.
    pub fading_power: f64,
    /// PSK order γ.
    pub modulation_order: u32,
    /// Beamsteering-error standard deviation, degrees (0 = perfect).
    pub sigma_be_deg: f64,
    /// Interference population: `mmwave`, `omni_baseline`, or `noise_only`.
    pub mode: Mode,
    /// Run the Monte Carlo oracle next to the analytic value.
    pub mc: bool,
    /// Monte Carlo trials per grid point.
    pub trials: u64,
    /// Base RNG seed.
    pub seed: u64,
    /// Curve label (used in per-curve CSV names).
    pub label: String,
}

impl Default for SweepSpec {
    fn default() -> Self {
        SweepSpec {
            axis: SweepAxis::SnrDb,
            grid: (0..=12).map(|i| 5.0 * i as f64).collect(),
            lambda_bs: 1e-4,
            ball_radius_m: 141.0,
            alpha_los: 2.1,
            alpha_nlos: 4.0,
            main_gain_db: 10.0,
            side_gain_db: -10.0,
            beamwidth_deg: 15.0,
            snr_db: 10.0,
            noise_level: 1.0,
            fading_power: 1.0,
            modulation_order: 2,
            sigma_be_deg: 0.0,
            mode: Mode::MmWave,
            mc: true,
            trials: 200_000,
            seed: 42,
            label: "sweep".to_string(),
        }
    }
}

impl SweepSpec {
    /// Reads a spec from a flat JSON file.
    pub fn from_path(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        let spec: SweepSpec = serde_json::from_str(&text)?;
        spec.check()?;
        Ok(spec)
    }

    /// Structural validation beyond what deserialization enforces.
    pub fn check(&self) -> Result<()> {
        if self.grid.is_empty() {
            return Err(Error::invalid("grid", "must be nonempty".to_string()));
        }
        if self.axis == SweepAxis::ModulationOrder {
            for &v in &self.grid {
                if v < 2.0 || v.fract() != 0.0 || v > u32::MAX as f64 {
                    return Err(Error::invalid(
                        "grid",
                        format!("modulation orders must be integers ≥ 2, got {v}"),
                    ));
                }
            }
        }
        Ok(())
    }

    /// The scenario and beam-error model at one axis value.
    pub fn instantiate(&self, value: f64) -> Result<(Scenario, BeamErrorModel)> {
        let mut lambda = self.lambda_bs;
        let mut main_db = self.main_gain_db;
        let mut snr_db = self.snr_db;
        let mut order = self.modulation_order;
        let mut sigma_deg = self.sigma_be_deg;
        match self.axis {
            SweepAxis::SnrDb => snr_db = value,
            SweepAxis::LambdaBs => lambda = value,
            SweepAxis::MainGainDb => main_db = value,
            SweepAxis::ModulationOrder => order = value as u32,
            SweepAxis::SigmaBe => sigma_deg = value,
        }
        let params = NetworkParams::new(lambda, self.ball_radius_m, self.alpha_los, self.alpha_nlos)?;
        let pattern = AntennaPattern::new(
            db_to_linear(main_db),
            db_to_linear(self.side_gain_db),
            self.beamwidth_deg.to_radians(),
        )?;
        // SNR = E₀σ₀/(4N₀) defines the symbol energy at the boundary.
        let symbol_energy = 4.0 * self.noise_level * db_to_linear(snr_db) / self.fading_power;
        let serving_gain = match self.mode {
            Mode::OmniBaseline => 1.0,
            _ => pattern.main_gain * pattern.main_gain,
        };
        let budget = LinkBudget::new(
            symbol_energy,
            self.noise_level,
            self.fading_power,
            serving_gain,
        )?;
        let modulation = Modulation::psk(order)?;
        let scenario = match self.mode {
            Mode::MmWave => Scenario::mmwave(params, pattern, budget, modulation),
            Mode::OmniBaseline => Scenario::omni_baseline(params, budget, modulation),
            Mode::NoiseOnly => Scenario::noise_only(params, pattern, budget, modulation),
        };
        Ok((scenario, BeamErrorModel::new(sigma_deg.to_radians())?))
    }
}

/// One evaluated grid point.
#[derive(Debug, Clone)]
pub struct SweepRow {
    /// Axis the row belongs to.
    pub axis: SweepAxis,
    /// Axis value (in the axis's config units).
    pub value: f64,
    /// Analytic ASEP, absent on numeric failure.
    pub asep_analytic: Option<f64>,
    /// Monte Carlo ASEP, absent when MC is off or failed.
    pub asep_mc: Option<f64>,
    /// Standard error of `asep_mc`.
    pub mc_stderr: Option<f64>,
    /// (mc − analytic) / stderr; absent when either side is absent or the
    /// stderr is degenerate (zero observed errors).
    pub z_score: Option<f64>,
    /// Diagnostics: clamps, route switches, error messages.
    pub flags: Vec<String>,
    /// Wall-clock seconds spent on the row.
    pub seconds: f64,
}

/// Flags never contain commas (CSV) — error text is sanitized here.
fn sanitize_flag(s: &str) -> String {
    s.replace([',', '\n'], ";")
}

fn analytic_point(
    scenario: &Scenario,
    beam: &BeamErrorModel,
) -> Result<AsepOutcome> {
    if beam.sigma_be > 0.0 {
        asep_with_beam_error(scenario, beam)
    } else {
        asep(scenario)
    }
}

fn mc_point(
    scenario: &Scenario,
    beam: &BeamErrorModel,
    trials: u64,
    seed: u64,
) -> Result<crate::mc::McEstimate> {
    let cfg = McConfig::new(trials, seed, scenario)?;
    if beam.sigma_be > 0.0 {
        estimate_asep_with_beam_error(&cfg, scenario, beam)
    } else {
        estimate_asep(&cfg, scenario)
    }
}

/// Evaluates one grid point; never fails — problems become flags.
fn evaluate_row(spec: &SweepSpec, index: usize, value: f64) -> SweepRow {
    let start = Instant::now();
    let mut row = SweepRow {
        axis: spec.axis,
        value,
        asep_analytic: None,
        asep_mc: None,
        mc_stderr: None,
        z_score: None,
        flags: Vec::new(),
        seconds: 0.0,
    };
    match spec.instantiate(value) {
        Ok((scenario, beam)) => {
            let quad_before = crate::cf::quad_route_uses();
            match analytic_point(&scenario, &beam) {
                Ok(outcome) => {
                    row.asep_analytic = Some(outcome.value);
                    if outcome.clamped {
                        row.flags.push("clamped".to_string());
                    }
                }
                Err(e) => row.flags.push(sanitize_flag(&format!("analytic-error:{e}"))),
            }
            if crate::cf::quad_route_uses() > quad_before {
                row.flags.push("quad-route".to_string());
            }
            if spec.mc {
                // Decorrelate seeds across grid points while staying a pure
                // function of (seed, index).
                let point_seed = spec.seed.wrapping_add(1 + index as u64);
                match mc_point(&scenario, &beam, spec.trials, point_seed) {
                    Ok(est) => {
                        row.asep_mc = Some(est.mean);
                        row.mc_stderr = Some(est.std_error);
                        match (row.asep_analytic, est.std_error > 0.0) {
                            (Some(a), true) => {
                                row.z_score = Some((est.mean - a) / est.std_error)
                            }
                            (Some(_), false) => {
                                row.flags.push("mc-degenerate".to_string())
                            }
                            _ => {}
                        }
                    }
                    Err(e) => row.flags.push(sanitize_flag(&format!("mc-error:{e}"))),
                }
            }
        }
        Err(e) => row.flags.push(sanitize_flag(&format!("config-error:{e}"))),
    }
    row.seconds = start.elapsed().as_secs_f64();
    row
}

/// Runs the sweep: one row per grid value, ordered by grid index regardless
/// of worker scheduling.
pub fn run_sweep(spec: &SweepSpec) -> Result<Vec<SweepRow>> {
    spec.check()?;
    Ok(spec
        .grid
        .par_iter()
        .enumerate()
        .map(|(i, &v)| evaluate_row(spec, i, v))
        .collect())
}

/// The CSV schema every writer in this crate emits, byte for byte.
pub const CSV_HEADER: &str = "axis,value,asep_analytic,asep_mc,mc_stderr,z_score,flags,seconds";

fn fmt_opt(v: Option<f64>) -> String {
    match v {
        Some(x) => format!("{x:.10e}"),
        None => String::new(),
    }
}

/// Writes rows as CSV. Every column except `seconds` is deterministic for a
/// fixed config and seed; `seconds` is wall time.
pub fn write_csv<W: Write>(mut out: W, rows: &[SweepRow]) -> std::io::Result<()> {
    writeln!(out, "{CSV_HEADER}")?;
    for r in rows {
        writeln!(
            out,
            "{},{},{},{},{},{},{},{:.3}",
            r.axis,
            r.value,
            fmt_opt(r.asep_analytic),
            fmt_opt(r.asep_mc),
            fmt_opt(r.mc_stderr),
            fmt_opt(r.z_score),
            r.flags.join(";"),
            r.seconds,
        )?;
    }
    Ok(())
}

/// Validation verdict over a sweep.
#[derive(Debug, Clone)]
pub struct ValidationReport {
    /// Rows with both routes evaluated.
    pub rows: Vec<SweepRow>,
    /// Largest |z| over comparable rows.
    pub max_abs_z: f64,
    /// Grid indices where |z| > 3 or a route failed to produce a value.
    pub failing: Vec<usize>,
}

impl ValidationReport {
    /// True when every comparable row sits within 3 standard errors.
    pub fn passed(&self) -> bool {
        self.failing.is_empty()
    }
}

/// Runs analytic vs Monte Carlo on every grid point (MC forced on) and
/// reports z-scores; any |z| > 3 or missing value marks the row failing.
pub fn validate(spec: &SweepSpec) -> Result<ValidationReport> {
    let mut spec = spec.clone();
    spec.mc = true;
    let rows = run_sweep(&spec)?;
    let mut max_abs_z = 0.0f64;
    let mut failing = Vec::new();
    for (i, r) in rows.iter().enumerate() {
        match (r.asep_analytic, r.asep_mc, r.z_score) {
            (Some(_), Some(_), Some(z)) => {
                max_abs_z = max_abs_z.max(z.abs());
                if z.abs() > 3.0 {
                    failing.push(i);
                }
            }
            // A degenerate stderr with matching zero/zero is fine; anything
            // else (missing route, degenerate stderr with a discrepancy)
            // fails the point.
            (Some(a), Some(m), None) => {
                if (a - m).abs() > 1e-12 {
                    failing.push(i);
                }
            }
            _ => failing.push(i),
        }
    }
    Ok(ValidationReport {
        rows,
        max_abs_z,
        failing,
    })
}

/// Named figure presets: each returns labelled curves to sweep. Grids follow
/// the published parameter study; where the study fixes a figure's geometry
/// it is α_L=2.1, α_N=4, R_B=141 m, θ=15°, side lobes at −10 dB.
pub fn preset(name: &str) -> Result<Vec<SweepSpec>> {
    let snr_grid: Vec<f64> = (0..=12).map(|i| 5.0 * i as f64).collect();
    let base = SweepSpec {
        axis: SweepAxis::SnrDb,
        grid: snr_grid,
        ..SweepSpec::default()
    };
    let curves = match name {
        // ASEP vs SNR for two densities, with the omnidirectional baseline.
        "fig1" => vec![
            SweepSpec {
                lambda_bs: 1e-5,
                label: "mmwave-lam1e-05".to_string(),
                ..base.clone()
            },
            SweepSpec {
                lambda_bs: 1e-4,
                label: "mmwave-lam1e-04".to_string(),
                ..base.clone()
            },
            SweepSpec {
                lambda_bs: 1e-5,
                mode: Mode::OmniBaseline,
                label: "omni-lam1e-05".to_string(),
                ..base.clone()
            },
            SweepSpec {
                lambda_bs: 1e-4,
                mode: Mode::OmniBaseline,
                label: "omni-lam1e-04".to_string(),
                ..base.clone()
            },
        ],
        // Density–gain equivalence: (M=20 dB, λ=10⁻⁵) vs (M=10 dB, λ=10⁻⁴).
        "fig2" => vec![
            SweepSpec {
                main_gain_db: 20.0,
                lambda_bs: 1e-5,
                label: "gain20db-lam1e-05".to_string(),
                ..base.clone()
            },
            SweepSpec {
                main_gain_db: 10.0,
                lambda_bs: 1e-4,
                label: "gain10db-lam1e-04".to_string(),
                ..base.clone()
            },
        ],
        // Modulation orders at M=20 dB, λ=10⁻⁴.
        "fig3" => [2u32, 4, 8]
            .iter()
            .map(|&g| SweepSpec {
                main_gain_db: 20.0,
                lambda_bs: 1e-4,
                modulation_order: g,
                label: format!("psk{g}"),
                ..base.clone()
            })
            .collect(),
        // Beamsteering-error severities at M=20 dB, λ=10⁻⁵, BPSK.
        "fig4" => [0.0f64, 2.0, 5.0, 8.0]
            .iter()
            .map(|&s| SweepSpec {
                main_gain_db: 20.0,
                lambda_bs: 1e-5,
                sigma_be_deg: s,
                label: format!("sigma{s:.0}deg"),
                ..base.clone()
            })
            .collect(),
        other => {
            return Err(Error::invalid(
                "preset",
                format!("unknown preset '{other}' (expected fig1..fig4)"),
            ))
        }
    };
    Ok(curves)
}
