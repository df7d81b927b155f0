//! Average symbol error probability of downlink mmWave cellular networks.
//!
//! Base stations form a Poisson point process; links are line-of-sight inside
//! a ball and non-line-of-sight beyond it; antennas follow a two-level
//! sectored pattern, splitting interferers into six independent thinned
//! processes (three gain classes × LOS/NLOS). The crate computes the
//! nearest-neighbor-approximated average symbol error probability of this
//! network two independent ways:
//!
//! * **analytically** — per-class interference characteristic functions in
//!   closed hypergeometric form (cross-checked against a direct radial
//!   quadrature route), inverted through the Gil-Pelaez sine integral and
//!   averaged over Rayleigh fading and the serving distance;
//! * **by simulation** — a Monte Carlo oracle that samples the exact system
//!   model (PPP snapshots, thinning, fading, the pairwise decision metric)
//!   with seed-stable, thread-count-independent reproducibility.
//!
//! Module map: [`model`] holds parameters and closed-form building blocks,
//! [`specfun`] the hypergeometric/quadrature machinery, [`cf`] the
//! characteristic functions, [`errorprob`] the PEP→APEP→ASEP pipeline and
//! beamsteering-error mixture, [`mc`] the Monte Carlo oracle, and [`sweep`]
//! the parameter-study harness behind the CLI.
//!
//! ```
//! use mmwave_asep::model::{AntennaPattern, LinkBudget, Modulation, NetworkParams};
//! use mmwave_asep::errorprob::{asep, Scenario};
//!
//! let params = NetworkParams::new(1e-4, 141.0, 2.1, 4.0).unwrap();
//! let pattern = AntennaPattern::new(10.0, 0.1, 15f64.to_radians()).unwrap();
//! // SNR = E₀σ₀/4 = 10 dB with unit fading power and unit noise.
//! let budget = LinkBudget::new(40.0, 1.0, 1.0, pattern.main_gain.powi(2)).unwrap();
//! let scenario = Scenario::mmwave(params, pattern, budget, Modulation::psk(2).unwrap());
//! let out = asep(&scenario).unwrap();
//! assert!(out.value > 0.0 && out.value < 0.5);
//! ```

pub mod cf;
pub mod error;
pub mod errorprob;
pub mod mc;
pub mod model;
pub mod specfun;
pub mod sweep;

pub use error::{Error, Result};
