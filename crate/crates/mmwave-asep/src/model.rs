//! Physical and system parameters of the downlink network, plus the
//! closed-form building blocks that need no integration: the sectored-antenna
//! gain distribution, LOS/NLOS path-loss selection, and the serving-distance
//! density under nearest-BS association.
//!
//! Everything here is a plain immutable value; all functions are pure.
//! Gains and energies are linear scale throughout — dB and degrees exist
//! only at the CLI boundary.

use crate::error::{Error, Result};

/// Base-station deployment and propagation geometry.
///
/// Interfering links within `ball_radius` of the user are line-of-sight and
/// attenuate with `alpha_los`; links beyond it attenuate with `alpha_nlos`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NetworkParams {
    /// BS density λ in BS per square meter.
    pub lambda_bs: f64,
    /// LOS ball radius R_B in meters.
    pub ball_radius: f64,
    /// LOS path-loss exponent α_L.
    pub alpha_los: f64,
    /// NLOS path-loss exponent α_N.
    pub alpha_nlos: f64,
}

impl NetworkParams {
    /// Validates and builds network parameters.
    ///
    /// Requires `ball_radius > 0` and `alpha_nlos ≥ alpha_los > 1` (the
    /// interference integrals diverge for exponents ≤ 1). `lambda_bs` must be
    /// nonnegative and finite; zero is admitted as the degenerate
    /// interference-free network used by noise-only checks, even though a
    /// served link needs λ > 0 for its serving-distance distribution to exist.
    pub fn new(lambda_bs: f64, ball_radius: f64, alpha_los: f64, alpha_nlos: f64) -> Result<Self> {
        if !lambda_bs.is_finite() || lambda_bs < 0.0 {
            return Err(Error::invalid(
                "lambda_bs",
                format!("must be finite and ≥ 0, got {lambda_bs}"),
            ));
        }
        if !ball_radius.is_finite() || ball_radius <= 0.0 {
            return Err(Error::invalid(
                "ball_radius",
                format!("must be finite and > 0, got {ball_radius}"),
            ));
        }
        if !alpha_los.is_finite() || alpha_los <= 1.0 {
            return Err(Error::invalid(
                "alpha_los",
                format!("must be finite and > 1, got {alpha_los}"),
            ));
        }
        if !alpha_nlos.is_finite() || alpha_nlos < alpha_los {
            return Err(Error::invalid(
                "alpha_nlos",
                format!("must be finite and ≥ alpha_los ({alpha_los}), got {alpha_nlos}"),
            ));
        }
        Ok(NetworkParams {
            lambda_bs,
            ball_radius,
            alpha_los,
            alpha_nlos,
        })
    }
}

/// Two-level sectored antenna pattern: constant main-lobe gain over the
/// beamwidth, constant side-lobe gain elsewhere.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AntennaPattern {
    /// Main-lobe gain M, linear scale.
    pub main_gain: f64,
    /// Side-lobe gain m, linear scale.
    pub side_gain: f64,
    /// Main-lobe width θ in radians.
    pub beamwidth: f64,
}

impl AntennaPattern {
    /// Validates and builds a pattern. Requires `main_gain ≥ side_gain > 0`
    /// and `0 < beamwidth ≤ 2π`.
    pub fn new(main_gain: f64, side_gain: f64, beamwidth: f64) -> Result<Self> {
        if !side_gain.is_finite() || side_gain <= 0.0 {
            return Err(Error::invalid(
                "side_gain",
                format!("must be finite and > 0, got {side_gain}"),
            ));
        }
        if !main_gain.is_finite() || main_gain < side_gain {
            return Err(Error::invalid(
                "main_gain",
                format!("must be finite and ≥ side_gain ({side_gain}), got {main_gain}"),
            ));
        }
        if !(beamwidth > 0.0 && beamwidth <= 2.0 * std::f64::consts::PI) {
            return Err(Error::invalid(
                "beamwidth",
                format!("must lie in (0, 2π], got {beamwidth}"),
            ));
        }
        Ok(AntennaPattern {
            main_gain,
            side_gain,
            beamwidth,
        })
    }
}

/// The three effective-gain classes of an interfering link: both main lobes
/// aligned, exactly one aligned, neither aligned.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GainClass {
    /// Both transmitter and receiver main lobes point at each other (M·M).
    MainMain,
    /// Exactly one side points its main lobe at the other (M·m).
    MainSide,
    /// Both sides see each other through side lobes (m·m).
    SideSide,
}

impl GainClass {
    /// All classes in canonical (decreasing-gain) order.
    pub const ALL: [GainClass; 3] = [GainClass::MainMain, GainClass::MainSide, GainClass::SideSide];
}

/// One (gain value, probability) entry of the discrete effective-gain law.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GainEntry {
    /// Which alignment class this entry describes.
    pub class: GainClass,
    /// Effective link gain, linear scale.
    pub gain: f64,
    /// Probability of the class under independent uniform orientations.
    pub probability: f64,
}

/// Discrete law of the effective antenna gain on an interfering link.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GainDistribution {
    /// Entries ordered MM, Mm, mm.
    pub entries: [GainEntry; 3],
}

impl GainDistribution {
    /// The entry for a given class.
    pub fn entry(&self, class: GainClass) -> GainEntry {
        self.entries[match class {
            GainClass::MainMain => 0,
            GainClass::MainSide => 1,
            GainClass::SideSide => 2,
        }]
    }

    /// Mean effective gain Σ p·G.
    pub fn mean_gain(&self) -> f64 {
        self.entries.iter().map(|e| e.gain * e.probability).sum()
    }
}

/// Discrete distribution of the effective gain of an interfering link.
///
/// With both ends oriented uniformly at random, the main lobes overlap with
/// probability θ/2π each, independently, giving classes MM, Mm, mm with
/// probabilities q², 2q(1−q), (1−q)² for q = θ/2π and gains M², M·m, m².
pub fn gain_distribution(pattern: &AntennaPattern) -> GainDistribution {
    let q = pattern.beamwidth / (2.0 * std::f64::consts::PI);
    let (m_big, m_small) = (pattern.main_gain, pattern.side_gain);
    GainDistribution {
        entries: [
            GainEntry {
                class: GainClass::MainMain,
                gain: m_big * m_big,
                probability: q * q,
            },
            GainEntry {
                class: GainClass::MainSide,
                gain: m_big * m_small,
                probability: 2.0 * q * (1.0 - q),
            },
            GainEntry {
                class: GainClass::SideSide,
                gain: m_small * m_small,
                probability: (1.0 - q) * (1.0 - q),
            },
        ],
    }
}

/// Path-loss exponent of a link of the given length: `alpha_los` within the
/// LOS ball (boundary inclusive), `alpha_nlos` beyond it.
pub fn path_loss_exponent(distance: f64, params: &NetworkParams) -> Result<f64> {
    if !distance.is_finite() || distance < 0.0 {
        return Err(Error::invalid(
            "distance",
            format!("must be finite and ≥ 0, got {distance}"),
        ));
    }
    Ok(if distance <= params.ball_radius {
        params.alpha_los
    } else {
        params.alpha_nlos
    })
}

/// Density of the serving distance under nearest-BS association:
/// f(ξ) = 2πλξ·exp(−πλξ²). Normalized over [0, ∞) for any λ > 0.
pub fn serving_distance_pdf(xi: f64, lambda_bs: f64) -> Result<f64> {
    if !xi.is_finite() || xi < 0.0 {
        return Err(Error::invalid(
            "xi",
            format!("must be finite and ≥ 0, got {xi}"),
        ));
    }
    if !lambda_bs.is_finite() || lambda_bs <= 0.0 {
        return Err(Error::invalid(
            "lambda_bs",
            format!("must be finite and > 0, got {lambda_bs}"),
        ));
    }
    let a = std::f64::consts::PI * lambda_bs;
    Ok(2.0 * a * xi * (-a * xi * xi).exp())
}

/// Energies and channel statistics of the served link.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinkBudget {
    /// Symbol energy E₀, linear.
    pub symbol_energy: f64,
    /// Noise variance N₀ of the complex Gaussian noise.
    pub noise_level: f64,
    /// Mean fading power σ₀ = E|h|² (1 for unit-power Rayleigh).
    pub fading_power: f64,
    /// Serving-link antenna gain G₀ (M² under perfect alignment).
    pub serving_gain: f64,
}

impl LinkBudget {
    /// Validates and builds a budget. `noise_level` may be zero
    /// (interference-limited analysis); everything else must be positive.
    pub fn new(
        symbol_energy: f64,
        noise_level: f64,
        fading_power: f64,
        serving_gain: f64,
    ) -> Result<Self> {
        if !symbol_energy.is_finite() || symbol_energy <= 0.0 {
            return Err(Error::invalid(
                "symbol_energy",
                format!("must be finite and > 0, got {symbol_energy}"),
            ));
        }
        if !noise_level.is_finite() || noise_level < 0.0 {
            return Err(Error::invalid(
                "noise_level",
                format!("must be finite and ≥ 0, got {noise_level}"),
            ));
        }
        if !fading_power.is_finite() || fading_power <= 0.0 {
            return Err(Error::invalid(
                "fading_power",
                format!("must be finite and > 0, got {fading_power}"),
            ));
        }
        if !serving_gain.is_finite() || serving_gain <= 0.0 {
            return Err(Error::invalid(
                "serving_gain",
                format!("must be finite and > 0, got {serving_gain}"),
            ));
        }
        Ok(LinkBudget {
            symbol_energy,
            noise_level,
            fading_power,
            serving_gain,
        })
    }

    /// The conventional SNR figure for this model: E₀σ₀/4.
    pub fn snr(&self) -> f64 {
        self.symbol_energy * self.fading_power / 4.0
    }
}

/// PSK constellation summary: order, minimum distance, and the number of
/// nearest neighbors used by the nearest-neighbor ASEP approximation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Modulation {
    /// Constellation size γ ≥ 2.
    pub order: u32,
    /// Minimum inter-symbol distance Δ_min on the unit circle scaled by 2
    /// (2 for antipodal BPSK, 2·sin(π/γ) in general).
    pub min_distance: f64,
    /// Number of constellation neighbors at distance Δ_min (1 for BPSK since
    /// its single neighbor is the antipode; 2 for every larger PSK ring).
    pub neighbor_count: u32,
}

impl Modulation {
    /// M-ary PSK of the given order.
    pub fn psk(order: u32) -> Result<Self> {
        if order < 2 {
            return Err(Error::invalid(
                "order",
                format!("PSK order must be ≥ 2, got {order}"),
            ));
        }
        let (min_distance, neighbor_count) = if order == 2 {
            (2.0, 1)
        } else {
            (2.0 * (std::f64::consts::PI / order as f64).sin(), 2)
        };
        Ok(Modulation {
            order,
            min_distance,
            neighbor_count,
        })
    }
}
