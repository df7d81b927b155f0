//! The error-probability pipeline: conditional pairwise error probability by
//! Gil-Pelaez inversion of the interference-plus-noise CF, its average over
//! Rayleigh fading and the serving distance (APEP), the nearest-neighbor
//! symbol-error approximation (ASEP), and the beamsteering-error mixture.

use crate::cf::{self, CfContext, CfRoute};
use crate::error::{Error, Result};
use crate::model::{
    serving_distance_pdf, AntennaPattern, GainClass, GainDistribution, GainEntry, LinkBudget,
    Modulation, NetworkParams,
};
use crate::specfun::{self, QuadratureConfig};

/// Which interference population the pipeline sees.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    /// Full model: six thinned interferer classes (three gains × LOS/NLOS).
    #[serde(rename = "mmwave")]
    MmWave,
    /// Conventional baseline: unit gains everywhere and a single all-LOS
    /// exponent α_L (requires α_L > 2 for the infinite field to converge).
    OmniBaseline,
    /// No interferers at all; serving geometry still uses λ. This is the
    /// "λ → 0 with the serving link held fixed" limit used by noise-only
    /// validation — taking λ → 0 literally would also push the serving BS
    /// to infinity.
    NoiseOnly,
}

/// Complete description of one analyzable configuration.
#[derive(Debug, Clone, Copy)]
pub struct Scenario {
    pub params: NetworkParams,
    pub pattern: AntennaPattern,
    pub budget: LinkBudget,
    pub modulation: Modulation,
    pub mode: Mode,
}

impl Scenario {
    /// Full mmWave scenario.
    pub fn mmwave(
        params: NetworkParams,
        pattern: AntennaPattern,
        budget: LinkBudget,
        modulation: Modulation,
    ) -> Self {
        Scenario {
            params,
            pattern,
            budget,
            modulation,
            mode: Mode::MmWave,
        }
    }

    /// Omnidirectional baseline: unit antenna gains, all links LOS.
    pub fn omni_baseline(
        params: NetworkParams,
        budget: LinkBudget,
        modulation: Modulation,
    ) -> Self {
        let pattern = AntennaPattern::new(1.0, 1.0, 2.0 * std::f64::consts::PI)
            .expect("unit pattern is always valid");
        Scenario {
            params,
            pattern,
            budget,
            modulation,
            mode: Mode::OmniBaseline,
        }
    }

    /// Interference-free scenario (noise-only validation limit).
    pub fn noise_only(
        params: NetworkParams,
        pattern: AntennaPattern,
        budget: LinkBudget,
        modulation: Modulation,
    ) -> Self {
        Scenario {
            params,
            pattern,
            budget,
            modulation,
            mode: Mode::NoiseOnly,
        }
    }

    /// Same scenario with the serving gain replaced (beam-error branches).
    pub fn with_serving_gain(&self, serving_gain: f64) -> Result<Self> {
        let budget = LinkBudget::new(
            self.budget.symbol_energy,
            self.budget.noise_level,
            self.budget.fading_power,
            serving_gain,
        )?;
        Ok(Scenario { budget, ..*self })
    }

    /// CF of interference plus noise at frequency w, conditioned on serving
    /// distance `xi`.
    fn cf_u(&self, w: f64, xi: f64) -> Result<f64> {
        let noise = cf::cf_noise(w, &self.budget);
        let interference = match self.mode {
            Mode::MmWave => {
                let ctx = CfContext::new(self.params, self.pattern, self.budget, xi)?;
                cf::cf_aggregate(w, &ctx)?
            }
            Mode::OmniBaseline => cf::cf_annulus(
                w,
                1.0,
                self.params.lambda_bs,
                self.params.alpha_los,
                xi,
                None,
                &self.budget,
                CfRoute::Auto,
            )?,
            Mode::NoiseOnly => 1.0,
        };
        Ok(interference * noise)
    }
}

/// Tolerance window for clamping tiny numerical excursions of probabilities
/// outside their exact range; larger excursions are reported as failures.
const CLAMP_TOL: f64 = 1e-7;

fn clamp_probability(p: f64, hi: f64, op: &'static str) -> Result<f64> {
    if (0.0..=hi).contains(&p) {
        return Ok(p);
    }
    if (-CLAMP_TOL..0.0).contains(&p) {
        return Ok(0.0);
    }
    if p > hi && p <= hi + CLAMP_TOL {
        return Ok(hi);
    }
    Err(Error::numeric(
        op,
        format!("probability {p} escaped [0, {hi}] beyond the numerical-noise window"),
    ))
}

/// Pairwise error probability conditioned on the fading magnitude and the
/// serving distance, by Gil-Pelaez inversion:
/// 1/2 − (1/π)∫₀^∞ sin(T·w)/w · Φ_U(w) dw with
/// T = √(G₀E₀)·delta·h0_mag/(2·r0^α_L).
pub fn pep_conditional(h0_mag: f64, r0: f64, delta: f64, scenario: &Scenario) -> Result<f64> {
    if !h0_mag.is_finite() || h0_mag < 0.0 {
        return Err(Error::invalid("h0_mag", format!("must be ≥ 0, got {h0_mag}")));
    }
    if !r0.is_finite() || r0 <= 0.0 {
        return Err(Error::invalid("r0", format!("must be > 0, got {r0}")));
    }
    if !delta.is_finite() || delta < 0.0 {
        return Err(Error::invalid("delta", format!("must be ≥ 0, got {delta}")));
    }
    let b = &scenario.budget;
    let t_shift = (b.serving_gain * b.symbol_energy).sqrt() * delta * h0_mag
        / (2.0 * r0.powf(scenario.params.alpha_los));
    if t_shift == 0.0 {
        return Ok(0.5);
    }
    let cfg = QuadratureConfig::default();
    let mut inner_err = None;
    let integral = specfun::integrate_semi_infinite(
        |w| match scenario.cf_u(w, r0) {
            Ok(phi) => (t_shift * w).sin() / w * phi,
            Err(e) => {
                inner_err.get_or_insert(e);
                f64::NAN
            }
        },
        0.0,
        &cfg,
    );
    if let Some(e) = inner_err {
        return Err(e);
    }
    clamp_probability(
        0.5 - integral? / std::f64::consts::PI,
        0.5,
        "pep_conditional",
    )
}

/// CDF of the real part of the decision variable U (interference plus noise)
/// at `u`, conditioned on serving distance `r0`:
/// 1/2 + (1/π)∫₀^∞ sin(u·w)/w · Φ_U(w) dw.
pub fn cdf_u_re(u: f64, r0: f64, scenario: &Scenario) -> Result<f64> {
    if !u.is_finite() {
        return Err(Error::invalid("u", format!("must be finite, got {u}")));
    }
    if u == 0.0 {
        return Ok(0.5); // circular symmetry
    }
    let cfg = QuadratureConfig::default();
    let mut inner_err = None;
    let integral = specfun::integrate_semi_infinite(
        |w| match scenario.cf_u(w, r0) {
            Ok(phi) => (u * w).sin() / w * phi,
            Err(e) => {
                inner_err.get_or_insert(e);
                f64::NAN
            }
        },
        0.0,
        &cfg,
    );
    if let Some(e) = inner_err {
        return Err(e);
    }
    clamp_probability(0.5 + integral? / std::f64::consts::PI, 1.0, "cdf_u_re")
}

/// Serving-distance truncation: beyond this radius the nearest-BS density
/// carries less than 1e-10 of its mass.
fn xi_max(lambda_bs: f64) -> f64 {
    (10.0_f64.powi(10).ln() / (std::f64::consts::PI * lambda_bs)).sqrt()
}

/// Pairwise error probability averaged over Rayleigh fading and the serving
/// distance.
///
/// The fading average of the Gil-Pelaez numerator has a closed form — for
/// Rayleigh |h₀| with power σ₀, E{sin(c·|h₀|·w)}/w = √π·β·exp(−β²w²) with
/// β = √(G₀E₀σ₀)·delta/(4·ξ^α_L) — leaving a nonnegative double integral
/// (outer w, inner ξ) that needs no oscillation handling:
/// APEP = 1/2 − (1/π)∫₀^∞ ∫₀^ξmax √π·β·e^(−β²w²)·f_r0(ξ)·Φ_U(w; ξ) dξ dw.
pub fn apep(delta: f64, scenario: &Scenario) -> Result<f64> {
    if !delta.is_finite() || delta < 0.0 {
        return Err(Error::invalid("delta", format!("must be ≥ 0, got {delta}")));
    }
    if delta == 0.0 {
        return Ok(0.5);
    }
    let lambda = scenario.params.lambda_bs;
    if lambda <= 0.0 {
        return Err(Error::invalid(
            "lambda_bs",
            "averaging over the serving distance needs λ > 0; use Mode::NoiseOnly \
             with a positive λ for the interference-free limit"
                .to_string(),
        ));
    }
    let b = &scenario.budget;
    let beta_num = (b.serving_gain * b.symbol_energy * b.fading_power).sqrt() * delta / 4.0;
    let alpha_l = scenario.params.alpha_los;
    let xi_hi = xi_max(lambda);

    let inner_cfg = QuadratureConfig {
        rel_tol: 1e-9,
        abs_tol: 1e-13,
        ..QuadratureConfig::default()
    };
    let outer_cfg = QuadratureConfig::default();
    let sqrt_pi = std::f64::consts::PI.sqrt();

    let mut inner_err = None;
    let outer = specfun::integrate_semi_infinite(
        |w| {
            let inner = specfun::integrate_finite(
                |xi| {
                    let beta = beta_num * xi.powf(-alpha_l);
                    let damp_exp = beta * beta * w * w;
                    if !damp_exp.is_finite() || damp_exp > 700.0 {
                        return 0.0; // kernel underflows; CF not needed
                    }
                    let kernel = sqrt_pi * beta * (-damp_exp).exp();
                    let pdf = serving_distance_pdf(xi, lambda)
                        .expect("xi and lambda validated positive");
                    match scenario.cf_u(w, xi) {
                        Ok(phi) => kernel * pdf * phi,
                        Err(e) => {
                            inner_err.get_or_insert(e);
                            f64::NAN
                        }
                    }
                },
                0.0,
                xi_hi,
                &inner_cfg,
            );
            match inner {
                Ok(v) => v,
                Err(e) => {
                    inner_err.get_or_insert(e);
                    f64::NAN
                }
            }
        },
        0.0,
        &outer_cfg,
    );
    if let Some(e) = inner_err {
        return Err(e);
    }
    clamp_probability(0.5 - outer? / std::f64::consts::PI, 0.5, "apep")
}

/// ASEP outcome: the nearest-neighbor estimate and whether the union-style
/// multiplication had to be clamped back into [0, 1].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AsepOutcome {
    /// k_dmin · APEP(Δ_min), clamped to 1.
    pub value: f64,
    /// True when the raw product exceeded 1 (approximation breakdown at
    /// very low SNR); the value was clamped.
    pub clamped: bool,
}

/// Average symbol error probability under the nearest-neighbor
/// approximation: neighbor_count · apep(min_distance).
pub fn asep(scenario: &Scenario) -> Result<AsepOutcome> {
    let m = &scenario.modulation;
    let raw = m.neighbor_count as f64 * apep(m.min_distance, scenario)?;
    Ok(AsepOutcome {
        value: raw.min(1.0),
        clamped: raw > 1.0,
    })
}

/// Gaussian beamsteering-error model: the pointing error is zero-mean
/// Gaussian with deviation `sigma_be`, so its magnitude is half-normal with
/// CDF F(x) = erf(x/(√2·σ_BE)).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BeamErrorModel {
    /// Standard deviation of the pointing error, radians.
    pub sigma_be: f64,
}

impl BeamErrorModel {
    /// Validates and builds the model; σ_BE = 0 means perfect alignment.
    pub fn new(sigma_be: f64) -> Result<Self> {
        if !sigma_be.is_finite() || sigma_be < 0.0 {
            return Err(Error::invalid(
                "sigma_be",
                format!("must be finite and ≥ 0, got {sigma_be}"),
            ));
        }
        Ok(BeamErrorModel { sigma_be })
    }

    /// P(|ε| ≤ θ/2): the probability that the misaligned beam still covers
    /// the intended direction.
    pub fn coverage(&self, beamwidth: f64) -> f64 {
        if self.sigma_be == 0.0 {
            return 1.0;
        }
        specfun::erf(beamwidth / (2.0 * std::f64::consts::SQRT_2 * self.sigma_be))
    }
}

/// Distribution of the *serving* gain under beamsteering errors on both ends:
/// each end stays inside the beam with probability F = F_|ε|(θ/2), so the
/// serving link sees MM, Mm, mm with weights F², 2F(1−F), (1−F)².
pub fn misalignment_gain_pdf(
    model: &BeamErrorModel,
    pattern: &AntennaPattern,
) -> GainDistribution {
    let f = model.coverage(pattern.beamwidth);
    let (m_big, m_small) = (pattern.main_gain, pattern.side_gain);
    GainDistribution {
        entries: [
            GainEntry {
                class: GainClass::MainMain,
                gain: m_big * m_big,
                probability: f * f,
            },
            GainEntry {
                class: GainClass::MainSide,
                gain: m_big * m_small,
                probability: 2.0 * f * (1.0 - f),
            },
            GainEntry {
                class: GainClass::SideSide,
                gain: m_small * m_small,
                probability: (1.0 - f) * (1.0 - f),
            },
        ],
    }
}

/// APEP under beamsteering errors: the convex mixture of three APEP branches
/// whose serving gain is replaced by MM, Mm, mm with the misalignment
/// weights. Interference statistics are unchanged — pointing errors at the
/// served user do not re-aim the interferers.
pub fn apep_with_beam_error(
    delta: f64,
    scenario: &Scenario,
    model: &BeamErrorModel,
) -> Result<f64> {
    let weights = misalignment_gain_pdf(model, &scenario.pattern);
    let mut acc = 0.0;
    for entry in weights.entries {
        if entry.probability == 0.0 {
            continue; // exact degenerate mixture when σ_BE = 0
        }
        let branch = scenario.with_serving_gain(entry.gain)?;
        acc += entry.probability * apep(delta, &branch)?;
    }
    Ok(acc)
}

/// ASEP under beamsteering errors (nearest-neighbor scaling of the mixture).
pub fn asep_with_beam_error(scenario: &Scenario, model: &BeamErrorModel) -> Result<AsepOutcome> {
    let m = &scenario.modulation;
    let raw = m.neighbor_count as f64 * apep_with_beam_error(m.min_distance, scenario, model)?;
    Ok(AsepOutcome {
        value: raw.min(1.0),
        clamped: raw > 1.0,
    })
}
