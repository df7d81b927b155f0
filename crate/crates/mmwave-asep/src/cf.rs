//! Characteristic functions of the received decision variable: Gaussian
//! noise, per-class LOS/NLOS aggregate interference over radial annuli, and
//! their product, conditioned on the serving distance r₀.
//!
//! Each interferer contributes √(G·E₀)·r^(−α)·Re{h·s}; with unit-modulus
//! symbols and Rayleigh fading, Re{h·s} is zero-mean Gaussian with variance
//! σ₀/2, so the per-interferer CF at radius r is Φ₀(t) = exp(−σ₀t²/4) with
//! t = √(G·E₀)·|w|·r^(−α). Campbell's theorem over a PPP of density λ·p on
//! the annulus [r_lo, r_hi] gives
//!
//!   log Φ(w) = 2πλp ∫_{r_lo}^{r_hi} (Φ₀(√(G·E₀)|w| r^(−α)) − 1) r dr.
//!
//! Two independent evaluation routes are maintained and cross-checked:
//!
//! * **closed** — the radial integral in hypergeometric closed form,
//!   log Φ = λpπ·[r_hi²(H(x_hi)−1) − r_lo²(H(x_lo)−1)] with
//!   H(x) = ₂F₂(1/2, −1/α; 1/2, 1−1/α; −x) and x = G·E₀σ₀w²/(4r^(2α));
//!   the (1/2; 1/2) pair cancels, so H is the confluent
//!   ₁F₁(−1/α; 1−1/α; −x), which stays stable at any magnitude through the
//!   incomplete-gamma identity (see `specfun::hyper`);
//! * **quadrature** — substitute t = √(G·E₀)|w|·r^(−α) and integrate
//!   (1 − e^(−σ₀t²/4))·t^(−2/α−1) adaptively over the finite t-interval.
//!
//! The identity d/dr[r²(H(v·r^(−2α)) − 1)] = 2r·(Φ₀(√(G·E₀)|w|·r^(−α)) − 1)
//! is what makes the two routes the same integral; the cross-route tests are
//! this module's central validation.

use crate::error::{Error, Result};
use crate::model::{gain_distribution, AntennaPattern, LinkBudget, NetworkParams};
use crate::specfun::{self, QuadratureConfig};
use std::sync::atomic::{AtomicU64, Ordering};

/// Everything a conditional CF evaluation needs: network geometry, antenna
/// pattern, link energies, and the serving distance r₀ being conditioned on.
#[derive(Debug, Clone, Copy)]
pub struct CfContext {
    pub params: NetworkParams,
    pub pattern: AntennaPattern,
    pub budget: LinkBudget,
    /// Serving distance r₀ in meters; interferers lie beyond it.
    pub serving_distance: f64,
}

impl CfContext {
    /// Validates and builds a context.
    pub fn new(
        params: NetworkParams,
        pattern: AntennaPattern,
        budget: LinkBudget,
        serving_distance: f64,
    ) -> Result<Self> {
        if !serving_distance.is_finite() || serving_distance < 0.0 {
            return Err(Error::invalid(
                "serving_distance",
                format!("must be finite and ≥ 0, got {serving_distance}"),
            ));
        }
        Ok(CfContext {
            params,
            pattern,
            budget,
            serving_distance,
        })
    }
}

/// Which evaluation route an annulus CF should take.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CfRoute {
    /// Hypergeometric closed form.
    Closed,
    /// Direct adaptive quadrature in the t-domain.
    Quadrature,
    /// Closed form while the hypergeometric argument magnitude stays within
    /// `ROUTE_SWITCH_ARG`, quadrature beyond it.
    Auto,
}

/// Hypergeometric-argument magnitude beyond which `CfRoute::Auto` switches
/// to the quadrature route.
pub const ROUTE_SWITCH_ARG: f64 = 1e4;

// Auto-route switches to quadrature are counted for sweep diagnostics.
static QUAD_ROUTE_USES: AtomicU64 = AtomicU64::new(0);

/// Total number of times `CfRoute::Auto` has dispatched to the quadrature
/// route in this process (monotone counter; diff around a computation to
/// attribute switches to it).
pub fn quad_route_uses() -> u64 {
    QUAD_ROUTE_USES.load(Ordering::Relaxed)
}

/// CF of the complex-noise contribution: exp(−w²·N₀/4).
pub fn cf_noise(w: f64, budget: &LinkBudget) -> f64 {
    (-w * w * budget.noise_level / 4.0).exp()
}

/// H(x) − 1 with H(x) = ₂F₂(1/2, −1/α; 1/2, 1−1/α; −x), the radial
/// antiderivative kernel of the closed route.
fn h_minus_one(alpha: f64, x: f64) -> Result<f64> {
    let inv = 1.0 / alpha;
    Ok(specfun::hyp2f2(0.5, -inv, 0.5, 1.0 - inv, -x)? - 1.0)
}

/// log Φ over one annulus via the closed hypergeometric form.
fn log_cf_annulus_closed(
    v: f64,
    class_density: f64,
    alpha: f64,
    r_lo: f64,
    r_hi: Option<f64>,
) -> Result<f64> {
    let term = |r: f64| -> Result<f64> {
        if r == 0.0 {
            // lim_{r→0} r²(H(v·r^(−2α)) − 1) = v^(1/α)·Γ(1 − 1/α)
            return Ok(v.powf(1.0 / alpha) * specfun::gamma_pos(1.0 - 1.0 / alpha));
        }
        Ok(r * r * h_minus_one(alpha, v * r.powf(-2.0 * alpha))?)
    };
    let lower = term(r_lo)?;
    let upper = match r_hi {
        Some(r) => term(r)?,
        None => 0.0, // r²(H−1) → 0 as r → ∞
    };
    Ok(class_density * std::f64::consts::PI * (upper - lower))
}

/// log Φ over one annulus by adaptive quadrature in t = √(G·E₀)|w|·r^(−α).
fn log_cf_annulus_quadrature(
    c_amp: f64, // √(G·E₀)·|w|
    sigma0: f64,
    class_density: f64,
    alpha: f64,
    r_lo: f64,
    r_hi: Option<f64>,
) -> Result<f64> {
    if r_lo <= 0.0 {
        return Err(Error::invalid(
            "r_lo",
            "quadrature CF route needs a positive inner radius".to_string(),
        ));
    }
    let t_hi = c_amp * r_lo.powf(-alpha);
    let t_lo = match r_hi {
        Some(r) => c_amp * r.powf(-alpha),
        None => 0.0,
    };
    let cfg = QuadratureConfig {
        rel_tol: 1e-10,
        abs_tol: 1e-14,
        max_subdivisions: 4096,
        ..QuadratureConfig::default()
    };
    let integral = specfun::integrate_finite(
        |t| -(-sigma0 * t * t / 4.0).exp_m1() * t.powf(-2.0 / alpha - 1.0),
        t_lo,
        t_hi,
        &cfg,
    )?;
    Ok(-2.0 * class_density * std::f64::consts::PI * c_amp.powf(2.0 / alpha) / alpha * integral)
}

/// CF of the aggregate interference from one thinned PPP of density
/// `class_density` with link gain `gain` on the annulus [r_lo, r_hi)
/// (r_hi = None for an unbounded region), path-loss exponent `alpha`.
///
/// This is the generic building block behind `cf_los_*`/`cf_nlos_*` and the
/// omnidirectional baseline; exposed so alternative single-class pipelines
/// can be assembled and cross-checked.
// Negated comparisons so NaN inputs fail validation too; the argument list
// is the full annulus description and is not worth a one-use struct.
#[allow(clippy::neg_cmp_op_on_partial_ord, clippy::too_many_arguments)]
pub fn cf_annulus(
    w: f64,
    gain: f64,
    class_density: f64,
    alpha: f64,
    r_lo: f64,
    r_hi: Option<f64>,
    budget: &LinkBudget,
    route: CfRoute,
) -> Result<f64> {
    if !w.is_finite() {
        return Err(Error::invalid("w", format!("must be finite, got {w}")));
    }
    if !(gain >= 0.0) || !(class_density >= 0.0) {
        return Err(Error::invalid(
            "gain/class_density",
            format!("must be ≥ 0, got gain={gain}, class_density={class_density}"),
        ));
    }
    if let Some(hi) = r_hi {
        if r_lo >= hi {
            return Ok(1.0); // empty annulus
        }
    }
    if r_hi.is_none() && alpha <= 2.0 {
        return Err(Error::invalid(
            "alpha",
            format!("unbounded interference field needs alpha > 2, got {alpha}"),
        ));
    }
    let e0 = budget.symbol_energy;
    let sigma0 = budget.fading_power;
    let v = gain * e0 * sigma0 * w * w / 4.0;
    if v == 0.0 || class_density == 0.0 {
        return Ok(1.0);
    }

    // Route decision keys on the largest hypergeometric argument magnitude,
    // reached at the inner edge of the annulus.
    let x_lo = if r_lo == 0.0 {
        f64::INFINITY
    } else {
        v * r_lo.powf(-2.0 * alpha)
    };
    let use_quadrature = match route {
        CfRoute::Closed => false,
        CfRoute::Quadrature => true,
        CfRoute::Auto => {
            let q = x_lo > ROUTE_SWITCH_ARG && r_lo > 0.0;
            if q {
                QUAD_ROUTE_USES.fetch_add(1, Ordering::Relaxed);
            }
            q
        }
    };

    let log_phi = if use_quadrature {
        let c_amp = (gain * e0).sqrt() * w.abs();
        log_cf_annulus_quadrature(c_amp, sigma0, class_density, alpha, r_lo, r_hi)?
    } else {
        log_cf_annulus_closed(v, class_density, alpha, r_lo, r_hi)?
    };
    Ok(log_phi.exp())
}

/// CF of one gain class's LOS interference: annulus [r₀, R_B] with exponent
/// α_L, closed route. Returns 1 when r₀ ≥ R_B (empty LOS annulus).
pub fn cf_los_closed(w: f64, gain: f64, class_density: f64, ctx: &CfContext) -> Result<f64> {
    cf_annulus(
        w,
        gain,
        class_density,
        ctx.params.alpha_los,
        ctx.serving_distance,
        Some(ctx.params.ball_radius),
        &ctx.budget,
        CfRoute::Closed,
    )
}

/// Reference quadrature route for `cf_los_closed` (identical contract).
pub fn cf_los_quadrature(w: f64, gain: f64, class_density: f64, ctx: &CfContext) -> Result<f64> {
    cf_annulus(
        w,
        gain,
        class_density,
        ctx.params.alpha_los,
        ctx.serving_distance,
        Some(ctx.params.ball_radius),
        &ctx.budget,
        CfRoute::Quadrature,
    )
}

/// CF of one gain class's NLOS interference: annulus [max(R_B, r₀), ∞) with
/// exponent α_N, closed route. Constant in r₀ while r₀ ≤ R_B.
pub fn cf_nlos_closed(w: f64, gain: f64, class_density: f64, ctx: &CfContext) -> Result<f64> {
    cf_annulus(
        w,
        gain,
        class_density,
        ctx.params.alpha_nlos,
        ctx.params.ball_radius.max(ctx.serving_distance),
        None,
        &ctx.budget,
        CfRoute::Closed,
    )
}

/// Reference quadrature route for `cf_nlos_closed` (identical contract).
pub fn cf_nlos_quadrature(w: f64, gain: f64, class_density: f64, ctx: &CfContext) -> Result<f64> {
    cf_annulus(
        w,
        gain,
        class_density,
        ctx.params.alpha_nlos,
        ctx.params.ball_radius.max(ctx.serving_distance),
        None,
        &ctx.budget,
        CfRoute::Quadrature,
    )
}

/// CF of the full aggregate interference: product of the LOS and NLOS
/// factors of all three gain classes, each thinned to density λ·p_G,
/// auto-routed between closed form and quadrature.
pub fn cf_aggregate(w: f64, ctx: &CfContext) -> Result<f64> {
    let dist = gain_distribution(&ctx.pattern);
    let lambda = ctx.params.lambda_bs;
    let mut phi = 1.0;
    for entry in dist.entries {
        let dens = lambda * entry.probability;
        phi *= cf_annulus(
            w,
            entry.gain,
            dens,
            ctx.params.alpha_los,
            ctx.serving_distance,
            Some(ctx.params.ball_radius),
            &ctx.budget,
            CfRoute::Auto,
        )?;
        phi *= cf_annulus(
            w,
            entry.gain,
            dens,
            ctx.params.alpha_nlos,
            ctx.params.ball_radius.max(ctx.serving_distance),
            None,
            &ctx.budget,
            CfRoute::Auto,
        )?;
    }
    Ok(phi)
}

/// CF of interference plus noise: cf_aggregate · cf_noise.
pub fn cf_total(w: f64, ctx: &CfContext) -> Result<f64> {
    Ok(cf_aggregate(w, ctx)? * cf_noise(w, &ctx.budget))
}
