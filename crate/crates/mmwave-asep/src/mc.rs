//! Monte Carlo oracle: samples the exact system model — PPP interferer
//! snapshots on a finite window, gain-class thinning, LOS ball, Rayleigh
//! fading, uniform phases, Gaussian noise, and the pairwise ML decision —
//! to validate every analytical quantity in the crate.
//!
//! Reproducibility contract: trial i draws from a ChaCha8 stream keyed by
//! (seed, i), so every estimate is a pure function of (seed, trials, batch)
//! and bit-identical for any worker count. Error counts are integers (their
//! merge order cannot matter); real-valued accumulators are summed per batch
//! and merged in batch order.

use crate::error::{Error, Result};
use crate::errorprob::{misalignment_gain_pdf, BeamErrorModel, Mode, Scenario};
use crate::model::{gain_distribution, GainClass};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Poisson, StandardNormal};
use rayon::prelude::*;

/// Simulation budget and reproducibility knobs.
#[derive(Debug, Clone, Copy)]
pub struct McConfig {
    /// Number of independent snapshots.
    pub trials: u64,
    /// Base seed; trial i uses ChaCha8 stream (seed, i).
    pub seed: u64,
    /// Interferers are sampled on the annulus [r₀, window_radius].
    pub window_radius: f64,
    /// Trials per parallel work item; part of the reproducibility contract
    /// for real-valued estimators (integer counters are batch-agnostic).
    pub batch: u64,
}

impl McConfig {
    /// Configuration with an automatically adequate window (see
    /// [`min_window_radius`]).
    pub fn new(trials: u64, seed: u64, scenario: &Scenario) -> Result<Self> {
        if trials == 0 {
            return Err(Error::invalid("trials", "must be ≥ 1".to_string()));
        }
        Ok(McConfig {
            trials,
            seed,
            window_radius: min_window_radius(scenario),
            batch: 8192,
        })
    }

    /// Same configuration with a manually chosen window (validated against
    /// the scenario by every estimator).
    pub fn with_window(self, window_radius: f64) -> Self {
        McConfig {
            window_radius,
            ..self
        }
    }
}

/// Point estimate with its standard error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McEstimate {
    /// Estimated probability (or expectation).
    pub mean: f64,
    /// Standard error of `mean`.
    pub std_error: f64,
    /// Trials behind the estimate.
    pub trials: u64,
}

/// Mean interference *power* contributed by a PPP annulus:
/// 2πλp·G·E₀σ₀·∫ r^(1−2α) dr — the closed form behind the window bound.
fn mean_power_annulus(dens_gain: f64, e0s0: f64, alpha: f64, r_lo: f64, r_hi: f64) -> f64 {
    let k = 2.0 - 2.0 * alpha; // < 0 for every admissible α
    let hi = if r_hi.is_finite() { r_hi.powf(k) } else { 0.0 };
    2.0 * std::f64::consts::PI * dens_gain * e0s0 * (r_lo.powf(k) - hi) / (-k)
}

/// Smallest window radius that keeps the ignored (beyond-window) mean
/// interference power under 1e-6 of the in-window mean power plus noise,
/// and covers both the LOS ball and essentially all serving-distance draws.
pub fn min_window_radius(scenario: &Scenario) -> f64 {
    let p = &scenario.params;
    let lambda = p.lambda_bs;
    let mut w = 3.0 * p.ball_radius;
    if lambda <= 0.0 || scenario.mode == Mode::NoiseOnly {
        return w;
    }
    // Serving-distance coverage: P(r₀ > ξmax) < 1e-10.
    let xi_max = (10.0_f64.powi(10).ln() / (std::f64::consts::PI * lambda)).sqrt();
    w = w.max(xi_max);

    // Beyond-window tail: the field seen past w is all-NLOS (mmWave) or
    // all-LOS (omni baseline).
    let e0s0 = scenario.budget.symbol_energy * scenario.budget.fading_power;
    let (tail_alpha, mean_gain, ref_power) = match scenario.mode {
        Mode::OmniBaseline => {
            let r_ref = (std::f64::consts::LN_2 / (std::f64::consts::PI * lambda)).sqrt();
            let in_win = mean_power_annulus(lambda, e0s0, p.alpha_los, r_ref, w);
            (p.alpha_los, 1.0, in_win)
        }
        _ => {
            let dist = gain_distribution(&scenario.pattern);
            let mean_gain = dist.mean_gain();
            let r_ref = (std::f64::consts::LN_2 / (std::f64::consts::PI * lambda))
                .sqrt()
                .min(p.ball_radius);
            let los = mean_power_annulus(
                lambda * mean_gain,
                e0s0,
                p.alpha_los,
                r_ref,
                p.ball_radius,
            );
            let nlos = mean_power_annulus(lambda * mean_gain, e0s0, p.alpha_nlos, p.ball_radius, w);
            (p.alpha_nlos, mean_gain, los + nlos)
        }
    };
    let budget_floor = ref_power + scenario.budget.noise_level;
    // Solve 2πλ·E[G]·E₀σ₀·W^(2−2α)/(2α−2) = 1e-6·(in-window power + noise).
    let k = 2.0 * tail_alpha - 2.0;
    let coef = 2.0 * std::f64::consts::PI * lambda * mean_gain * e0s0 / k;
    let w_tail = (coef / (1e-6 * budget_floor)).powf(1.0 / k);
    w.max(w_tail)
}

fn check_window(cfg: &McConfig, scenario: &Scenario) -> Result<()> {
    let need = min_window_radius(scenario);
    // Tiny slack so a window computed by min_window_radius always passes.
    if cfg.window_radius < need * (1.0 - 1e-9) {
        return Err(Error::invalid(
            "window_radius",
            format!(
                "window {} is below the analytically required {need:.3} m \
                 (truncated interference would exceed 1e-6 of the in-window mean)",
                cfg.window_radius
            ),
        ));
    }
    if cfg.trials == 0 {
        return Err(Error::invalid("trials", "must be ≥ 1".to_string()));
    }
    Ok(())
}

/// One interfering BS in a sampled snapshot.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interferer {
    /// Distance from the user, meters.
    pub distance: f64,
    /// Effective antenna gain of the interfering link.
    pub gain: f64,
    /// Path-loss exponent the link sees.
    pub exponent: f64,
    /// Gain class assigned by thinning.
    pub class: GainClass,
}

/// One sampled network snapshot.
#[derive(Debug, Clone)]
pub struct Realization {
    /// Serving distance r₀ (given or drawn from the nearest-BS density).
    pub serving_distance: f64,
    /// Interfering BSs on [r₀, window].
    pub interferers: Vec<Interferer>,
}

/// Serving-distance draw: inverse CDF of 2πλξ·exp(−πλξ²).
fn draw_serving<R: Rng>(rng: &mut R, lambda: f64) -> f64 {
    let u: f64 = rng.gen();
    (-(1.0 - u).ln() / (std::f64::consts::PI * lambda)).sqrt()
}

/// Draws one snapshot of the interferer field into `out` (reused buffer).
fn sample_interferers<R: Rng>(
    rng: &mut R,
    scenario: &Scenario,
    r0: f64,
    window: f64,
    out: &mut Vec<Interferer>,
) {
    out.clear();
    if scenario.mode == Mode::NoiseOnly {
        return;
    }
    let p = &scenario.params;
    if p.lambda_bs <= 0.0 || window <= r0 {
        return;
    }
    let area = std::f64::consts::PI * (window * window - r0 * r0);
    let mean = p.lambda_bs * area;
    let count = Poisson::new(mean).expect("positive Poisson mean").sample(rng) as u64;
    let dist = gain_distribution(&scenario.pattern);
    let (p_mm, p_ms) = (
        dist.entries[0].probability,
        dist.entries[1].probability,
    );
    for _ in 0..count {
        let u: f64 = rng.gen();
        let r = (r0 * r0 + u * (window * window - r0 * r0)).sqrt();
        let (class, gain) = match scenario.mode {
            Mode::OmniBaseline => (GainClass::SideSide, 1.0),
            _ => {
                let v: f64 = rng.gen();
                if v < p_mm {
                    (GainClass::MainMain, dist.entries[0].gain)
                } else if v < p_mm + p_ms {
                    (GainClass::MainSide, dist.entries[1].gain)
                } else {
                    (GainClass::SideSide, dist.entries[2].gain)
                }
            }
        };
        let exponent = match scenario.mode {
            Mode::OmniBaseline => p.alpha_los,
            _ => {
                if r <= p.ball_radius {
                    p.alpha_los
                } else {
                    p.alpha_nlos
                }
            }
        };
        out.push(Interferer {
            distance: r,
            gain,
            exponent,
            class,
        });
    }
}

/// Samples one network snapshot: serving distance (drawn from the nearest-BS
/// density when `r0` is `None`) and the interferer field on [r₀, window].
pub fn sample_realization<R: Rng>(
    rng: &mut R,
    scenario: &Scenario,
    r0: Option<f64>,
    window_radius: f64,
) -> Result<Realization> {
    let serving = match r0 {
        Some(r) => {
            if !r.is_finite() || r < 0.0 {
                return Err(Error::invalid("r0", format!("must be ≥ 0, got {r}")));
            }
            r
        }
        None => {
            if scenario.params.lambda_bs <= 0.0 {
                return Err(Error::invalid(
                    "r0",
                    "drawing a serving distance needs λ > 0; pass r0 explicitly".to_string(),
                ));
            }
            draw_serving(rng, scenario.params.lambda_bs)
        }
    };
    let mut interferers = Vec::new();
    sample_interferers(rng, scenario, serving, window_radius, &mut interferers);
    Ok(Realization {
        serving_distance: serving,
        interferers,
    })
}

/// Real part of the aggregate interference for one snapshot: each interferer
/// contributes √(G·E₀)·r^(−α)·|h|·cos(phase), with |h|² exponential of mean
/// σ₀ and the phase uniform (fading and symbol phases fold together).
fn interference_re<R: Rng>(rng: &mut R, scenario: &Scenario, interferers: &[Interferer]) -> f64 {
    let e0 = scenario.budget.symbol_energy;
    let s0 = scenario.budget.fading_power;
    let mut acc = 0.0;
    for itf in interferers {
        let u: f64 = rng.gen();
        let mag = (-s0 * (1.0 - u).ln()).sqrt();
        let phase: f64 = rng.gen::<f64>() * 2.0 * std::f64::consts::PI;
        acc += (itf.gain * e0).sqrt() * itf.distance.powf(-itf.exponent) * mag * phase.cos();
    }
    acc
}

/// Real part of the complex Gaussian noise (variance N₀ total, N₀/2 per
/// component).
fn noise_re<R: Rng>(rng: &mut R, noise_level: f64) -> f64 {
    let g: f64 = StandardNormal.sample(rng);
    g * (noise_level / 2.0).sqrt()
}

/// A per-trial RNG that is a pure function of (seed, trial index).
fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// Runs `cfg.trials` trials in `cfg.batch`-sized parallel work items and
/// returns one aggregate per batch, in batch order (deterministic for any
/// worker count). `body` folds trials `lo..hi`, keying each trial's RNG by
/// its global index.
fn batched<T, F>(cfg: &McConfig, body: F) -> Vec<T>
where
    T: Send,
    F: Fn(u64, u64) -> T + Sync,
{
    let batch = cfg.batch.max(1);
    let n_batches = cfg.trials.div_ceil(batch);
    (0..n_batches)
        .into_par_iter()
        .map(|bi| {
            let lo = bi * batch;
            let hi = (lo + batch).min(cfg.trials);
            body(lo, hi)
        })
        .collect()
}

fn binomial_estimate(errors: u64, trials: u64, scale: f64) -> McEstimate {
    let n = trials as f64;
    let p = errors as f64 / n;
    McEstimate {
        mean: scale * p,
        std_error: scale * (p * (1.0 - p) / n).sqrt(),
        trials,
    }
}

/// Per-trial draw order shared by the pairwise-error estimators. Fixed
/// quantities consume no randomness.
#[allow(clippy::too_many_arguments)]
fn trial_pairwise_error<R: Rng>(
    rng: &mut R,
    scenario: &Scenario,
    serving_gain: f64,
    h0: Option<f64>,
    r0: Option<f64>,
    delta: f64,
    window: f64,
    buf: &mut Vec<Interferer>,
) -> bool {
    let r0 = match r0 {
        Some(r) => r,
        None => draw_serving(rng, scenario.params.lambda_bs),
    };
    let h0 = match h0 {
        Some(h) => h,
        None => {
            let u: f64 = rng.gen();
            (-scenario.budget.fading_power * (1.0 - u).ln()).sqrt()
        }
    };
    sample_interferers(rng, scenario, r0, window, buf);
    let re_u = interference_re(rng, scenario, buf) + noise_re(rng, scenario.budget.noise_level);
    let threshold = -(serving_gain * scenario.budget.symbol_energy).sqrt() * delta * h0
        / (2.0 * r0.powf(scenario.params.alpha_los));
    re_u < threshold
}

/// Monte Carlo pairwise error probability. `h0` and `r0` may be fixed
/// (conditional PEP) or `None` to draw them per trial from the Rayleigh and
/// nearest-BS laws (averaged PEP).
pub fn estimate_pep(
    cfg: &McConfig,
    h0: Option<f64>,
    r0: Option<f64>,
    delta: f64,
    scenario: &Scenario,
) -> Result<McEstimate> {
    check_window(cfg, scenario)?;
    if r0.is_none() && scenario.params.lambda_bs <= 0.0 {
        return Err(Error::invalid(
            "r0",
            "averaging over the serving distance needs λ > 0".to_string(),
        ));
    }
    if !delta.is_finite() || delta < 0.0 {
        return Err(Error::invalid("delta", format!("must be ≥ 0, got {delta}")));
    }
    let counts = batched(cfg, |lo, hi| {
        let mut buf = Vec::new();
        let mut errs = 0u64;
        for t in lo..hi {
            let mut rng = trial_rng(cfg.seed, t);
            errs += u64::from(trial_pairwise_error(
                &mut rng,
                scenario,
                scenario.budget.serving_gain,
                h0,
                r0,
                delta,
                cfg.window_radius,
                &mut buf,
            ));
        }
        errs
    });
    Ok(binomial_estimate(counts.iter().sum(), cfg.trials, 1.0))
}

/// Monte Carlo ASEP: the nearest-neighbor pairwise event at Δ_min, scaled by
/// the neighbor count — the same quantity the analytic `asep` computes, not
/// the exact full-constellation symbol error rate.
pub fn estimate_asep(cfg: &McConfig, scenario: &Scenario) -> Result<McEstimate> {
    check_window(cfg, scenario)?;
    if scenario.params.lambda_bs <= 0.0 {
        return Err(Error::invalid(
            "lambda_bs",
            "ASEP averages over the serving distance; need λ > 0".to_string(),
        ));
    }
    let m = scenario.modulation;
    let counts = batched(cfg, |lo, hi| {
        let mut buf = Vec::new();
        let mut errs = 0u64;
        for t in lo..hi {
            let mut rng = trial_rng(cfg.seed, t);
            errs += u64::from(trial_pairwise_error(
                &mut rng,
                scenario,
                scenario.budget.serving_gain,
                None,
                None,
                m.min_distance,
                cfg.window_radius,
                &mut buf,
            ));
        }
        errs
    });
    Ok(binomial_estimate(
        counts.iter().sum(),
        cfg.trials,
        m.neighbor_count as f64,
    ))
}

/// Monte Carlo ASEP with per-trial serving-gain misalignment: the serving
/// class is drawn from the beam-error law before the pairwise event.
pub fn estimate_asep_with_beam_error(
    cfg: &McConfig,
    scenario: &Scenario,
    model: &BeamErrorModel,
) -> Result<McEstimate> {
    check_window(cfg, scenario)?;
    if scenario.params.lambda_bs <= 0.0 {
        return Err(Error::invalid(
            "lambda_bs",
            "ASEP averages over the serving distance; need λ > 0".to_string(),
        ));
    }
    let weights = misalignment_gain_pdf(model, &scenario.pattern);
    let (w_mm, w_ms) = (
        weights.entries[0].probability,
        weights.entries[1].probability,
    );
    let m = scenario.modulation;
    let counts = batched(cfg, |lo, hi| {
        let mut buf = Vec::new();
        let mut errs = 0u64;
        for t in lo..hi {
            let mut rng = trial_rng(cfg.seed, t);
            let v: f64 = rng.gen();
            let serving_gain = if v < w_mm {
                weights.entries[0].gain
            } else if v < w_mm + w_ms {
                weights.entries[1].gain
            } else {
                weights.entries[2].gain
            };
            errs += u64::from(trial_pairwise_error(
                &mut rng,
                scenario,
                serving_gain,
                None,
                None,
                m.min_distance,
                cfg.window_radius,
                &mut buf,
            ));
        }
        errs
    });
    Ok(binomial_estimate(
        counts.iter().sum(),
        cfg.trials,
        m.neighbor_count as f64,
    ))
}

/// Empirical CDF of Re{U} (interference plus noise at fixed serving distance
/// `r0`) at each of `u_points`.
pub fn estimate_cdf_ure(
    cfg: &McConfig,
    r0: f64,
    scenario: &Scenario,
    u_points: &[f64],
) -> Result<Vec<McEstimate>> {
    check_window(cfg, scenario)?;
    if !r0.is_finite() || r0 < 0.0 {
        return Err(Error::invalid("r0", format!("must be ≥ 0, got {r0}")));
    }
    let k = u_points.len();
    let counts = batched(cfg, |lo, hi| {
        let mut buf = Vec::new();
        let mut hits = vec![0u64; k];
        for t in lo..hi {
            let mut rng = trial_rng(cfg.seed, t);
            sample_interferers(&mut rng, scenario, r0, cfg.window_radius, &mut buf);
            let re_u = interference_re(&mut rng, scenario, &buf)
                + noise_re(&mut rng, scenario.budget.noise_level);
            for (h, &u) in hits.iter_mut().zip(u_points) {
                *h += u64::from(re_u <= u);
            }
        }
        hits
    });
    let mut totals = vec![0u64; k];
    for row in counts {
        for (t, c) in totals.iter_mut().zip(row) {
            *t += c;
        }
    }
    Ok(totals
        .into_iter()
        .map(|c| binomial_estimate(c, cfg.trials, 1.0))
        .collect())
}

/// Empirical characteristic function of Re{U} at fixed `r0`: the sample mean
/// of cos(w·Re{U}) at each requested w (with noise included when
/// `include_noise`, matching `cf_total` vs `cf_aggregate`).
pub fn estimate_cf(
    cfg: &McConfig,
    r0: f64,
    scenario: &Scenario,
    w_points: &[f64],
    include_noise: bool,
) -> Result<Vec<McEstimate>> {
    check_window(cfg, scenario)?;
    if !r0.is_finite() || r0 < 0.0 {
        return Err(Error::invalid("r0", format!("must be ≥ 0, got {r0}")));
    }
    let k = w_points.len();
    // Per-batch (Σ(cos−1), Σ(cos−1)²) per w, merged in batch order; `batch`
    // is thus part of the reproducibility contract for this real-valued
    // estimator. Centering at 1 — where the cosines cluster when w·Re{U} is
    // small — keeps the variance free of cancellation; the centered value is
    // computed as −2sin²(θ/2), exact to rounding.
    let partials = batched(cfg, |lo, hi| {
        let mut buf = Vec::new();
        let mut sums = vec![(0.0f64, 0.0f64); k];
        for t in lo..hi {
            let mut rng = trial_rng(cfg.seed, t);
            sample_interferers(&mut rng, scenario, r0, cfg.window_radius, &mut buf);
            let mut x = interference_re(&mut rng, scenario, &buf);
            if include_noise {
                x += noise_re(&mut rng, scenario.budget.noise_level);
            }
            for (s, &w) in sums.iter_mut().zip(w_points) {
                let half = (0.5 * w * x).sin();
                let cm1 = -2.0 * half * half;
                s.0 += cm1;
                s.1 += cm1 * cm1;
            }
        }
        sums
    });
    let n = cfg.trials as f64;
    let mut out = Vec::with_capacity(k);
    for i in 0..k {
        let (mut sum, mut sumsq) = (0.0, 0.0);
        for row in &partials {
            sum += row[i].0;
            sumsq += row[i].1;
        }
        let centered_mean = sum / n;
        let var = (sumsq / n - centered_mean * centered_mean).max(0.0);
        out.push(McEstimate {
            mean: 1.0 + centered_mean,
            std_error: (var / n).sqrt(),
            trials: cfg.trials,
        });
    }
    Ok(out)
}
