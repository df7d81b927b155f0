//! Generalized hypergeometric series ₁F₂ and ₂F₂ and the confluent ₁F₁ they
//! collapse to when an upper parameter cancels a lower one.
//!
//! The interference characteristic functions need these on one narrow family:
//! upper parameter a = −1/α ∈ (−1, 0), lower parameters 1/2 and 1 − 1/α,
//! argument z ≤ 0 whose magnitude ranges over ~15 orders. Three regimes:
//!
//! * moderate |z|: direct series, accumulated in double-double arithmetic
//!   because the alternating terms cancel ~10 digits already at |z| ≈ 30;
//! * large negative z, confluent family b = a + 1: the exact identity
//!   ₁F₁(a; a+1; −x) = x^(−a)·γ(a+1, x) + e^(−x) (lower incomplete gamma),
//!   stable at any magnitude;
//! * large negative z, ₁F₂ family (b₁ = 1/2, b₂ = a+1): algebraic + damped
//!   oscillatory asymptotic expansion in c = 2√(−z), accurate to ~2e-13 at
//!   the |z| = 400 switch point and to machine precision beyond |z| ≈ 10³.
//!
//! Everything degrades loudly: series that exhaust the term cap or the
//! double-double headroom return a numeric-failure error instead of a number.

use super::dd::Dd;
use super::gamma::{gamma_p, gamma_pos};
use crate::error::{Error, Result};

/// Hard cap on series terms.
const MAX_TERMS: usize = 10_000;
/// A term this small relative to the partial sum, seen `GUARD` times in a
/// row, ends the series.
const SERIES_EPS: f64 = 1e-17;
const GUARD: usize = 3;
/// Largest tolerated ratio max|term| / |sum|. Double-double carries ~31
/// digits; beyond 10²¹ of cancellation fewer than 10 digits survive and the
/// result cannot honestly meet a 1e-7 contract.
const CANCEL_LIMIT: f64 = 1e21;
/// |z| beyond which the ₁F₂ CF family switches from series to asymptotic.
const F12_ASYMPTOTIC_CUTOFF: f64 = 400.0;
/// |z| beyond which the confluent CF family switches from series to the
/// incomplete-gamma identity.
const F11_GAMMA_CUTOFF: f64 = 40.0;

/// True when b would make a Pochhammer denominator vanish.
fn nonpositive_integer(b: f64) -> bool {
    b <= 0.0 && b == b.floor()
}

fn check_lower(name: &'static str, b: f64) -> Result<()> {
    if !b.is_finite() || nonpositive_integer(b) {
        return Err(Error::invalid(
            name,
            format!("lower parameter must not be a nonpositive integer, got {b}"),
        ));
    }
    Ok(())
}

/// Relative closeness test used for parameter-family detection.
fn near(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-12 * (1.0 + a.abs().max(b.abs()))
}

/// Direct ₚF_q series in double-double with cancellation accounting.
fn dd_series(num: &[f64], den: &[f64], z: f64, op: &'static str) -> Result<f64> {
    let mut sum = Dd::from_f64(1.0);
    let mut term = Dd::from_f64(1.0);
    let mut max_mag = 1.0_f64;
    let mut small_streak = 0;
    for k in 0..MAX_TERMS {
        let kf = k as f64;
        let mut ratio = Dd::from_f64(z);
        for &a in num {
            ratio = ratio.mul(Dd::sum_of(a, kf));
        }
        for &b in den {
            ratio = ratio.div(Dd::sum_of(b, kf));
        }
        ratio = ratio.div(Dd::from_f64(kf + 1.0));
        term = term.mul(ratio);
        if term.hi == 0.0 {
            // A numerator parameter hit a nonpositive integer: polynomial case.
            break;
        }
        if !term.hi.is_finite() {
            return Err(Error::numeric(
                op,
                format!("series term overflowed at k={k} for z={z}"),
            ));
        }
        sum = sum.add(term);
        max_mag = max_mag.max(term.hi.abs());
        if term.hi.abs() <= SERIES_EPS * sum.to_f64().abs().max(f64::MIN_POSITIVE) {
            small_streak += 1;
            if small_streak >= GUARD {
                break;
            }
        } else {
            small_streak = 0;
            if k + 1 == MAX_TERMS {
                return Err(Error::numeric(
                    op,
                    format!(
                        "series did not converge in {MAX_TERMS} terms for z={z} \
                         (last |term|={:.3e}, |sum|={:.3e})",
                        term.hi.abs(),
                        sum.to_f64().abs()
                    ),
                ));
            }
        }
    }
    let s = sum.to_f64();
    let scale = s.abs().max(f64::MIN_POSITIVE);
    if max_mag / scale > CANCEL_LIMIT {
        return Err(Error::numeric(
            op,
            format!(
                "catastrophic cancellation for z={z}: max |term| {max_mag:.3e} \
                 vs |sum| {scale:.3e} exceeds double-double headroom"
            ),
        ));
    }
    Ok(s)
}

/// ₁F₁(a; a+1; −x) for a ∈ (−1, 0), x > 0, via the lower incomplete gamma:
/// x^(−a)·γ(a+1, x) + e^(−x). Exact identity, stable at any x.
fn confluent_gamma_path(a: f64, x: f64) -> Result<f64> {
    let s = a + 1.0;
    let g = gamma_p(s, x)? * gamma_pos(s);
    Ok(x.powf(-a) * g + (-x).exp())
}

/// Kummer-transformed evaluation e^z·₁F₁(b−a; b; −z) for z < 0 with
/// b − a > 0 and b > 0: every term of the transformed series is positive, so
/// plain f64 with a power-of-two exponent offset suffices at any magnitude.
fn confluent_kummer_transform(a: f64, b: f64, z: f64) -> Result<f64> {
    let (ta, tb, tz) = (b - a, b, -z);
    let mut sum = 1.0_f64;
    let mut term = 1.0_f64;
    let mut offset = 0i64;
    for k in 0..MAX_TERMS {
        let kf = k as f64;
        term *= (ta + kf) / (tb + kf) * tz / (kf + 1.0);
        sum += term;
        if sum > 1e280 {
            sum *= 2f64.powi(-600);
            term *= 2f64.powi(-600);
            offset += 600;
        }
        if term < SERIES_EPS * sum {
            let ln_result = z + sum.ln() + offset as f64 * std::f64::consts::LN_2;
            return Ok(ln_result.exp());
        }
    }
    Err(Error::numeric(
        "hyp1f1",
        format!("Kummer-transformed series did not converge for a={a}, b={b}, z={z}"),
    ))
}

/// Confluent hypergeometric ₁F₁(a; b; z) on the parameter ranges this crate
/// needs (real parameters, b not a nonpositive integer).
pub fn hyp1f1(a: f64, b: f64, z: f64) -> Result<f64> {
    check_lower("b", b)?;
    if !a.is_finite() || !z.is_finite() {
        return Err(Error::invalid("a/z", "parameters must be finite".to_string()));
    }
    if z == 0.0 || a == 0.0 {
        return Ok(1.0);
    }
    if a == b {
        return Ok(z.exp());
    }
    if z < -F11_GAMMA_CUTOFF {
        if near(b, a + 1.0) && (-1.0..0.0).contains(&a) {
            return confluent_gamma_path(a, -z);
        }
        if b - a > 0.0 && b > 0.0 {
            return confluent_kummer_transform(a, b, z);
        }
        // Fall through: the dd series may still have headroom; it reports
        // failure itself when it does not.
    }
    dd_series(&[a], &[b], z, "hyp1f1")
}

/// Large-|z| expansion of ₁F₂(−ν/2; 1/2, 1−ν/2; z), z < 0, 0 < ν < 2:
/// algebraic leading term plus damped oscillatory corrections in c = 2√(−z).
fn f12_asymptotic(nu: f64, z: f64) -> f64 {
    let c = 2.0 * (-z).sqrt();
    let half_pi_nu = std::f64::consts::FRAC_PI_2 * nu;
    let lead =
        std::f64::consts::PI / (2.0 * gamma_pos(nu) * half_pi_nu.sin()) * c.powf(nu);
    let (sin_c, cos_c) = c.sin_cos();
    let trig = [-sin_c, cos_c, sin_c, -cos_c];
    let mut poch = 1.0; // Π_{j=1}^{m-1} (ν + j), empty at m = 1
    let mut scale = 1.0 / c;
    let mut corr = 0.0;
    let mut prev_mag = f64::INFINITY;
    for m in 1..=12 {
        if m > 1 {
            poch *= nu + (m - 1) as f64;
            scale /= c;
        }
        let mag = poch * scale;
        if mag > prev_mag {
            break; // optimal truncation of the divergent tail
        }
        prev_mag = mag;
        corr += mag * trig[(m - 1) % 4];
    }
    lead + nu * corr
}

/// Generalized hypergeometric ₁F₂(a; b1, b2; z).
///
/// Arbitrary real parameters go through the double-double series. The CF
/// family (b1 = 1/2, b2 = a + 1, a ∈ (−1, 0)) additionally has the verified
/// large-|z| expansion, so it stays accurate (≤ ~1e-12 relative) over the
/// full argument range the interference integrals produce.
pub fn hyp1f2(a: f64, b1: f64, b2: f64, z: f64) -> Result<f64> {
    check_lower("b1", b1)?;
    check_lower("b2", b2)?;
    if !a.is_finite() || !z.is_finite() {
        return Err(Error::invalid("a/z", "parameters must be finite".to_string()));
    }
    if z == 0.0 || a == 0.0 {
        return Ok(1.0);
    }
    if z < -F12_ASYMPTOTIC_CUTOFF && near(b1, 0.5) && near(b2, a + 1.0) && (-1.0..0.0).contains(&a)
    {
        return Ok(f12_asymptotic(-2.0 * a, z));
    }
    dd_series(&[a], &[b1, b2], z, "hyp1f2")
}

/// Generalized hypergeometric ₂F₂(a1, a2; b1, b2; z).
///
/// When an upper parameter equals a lower one their Pochhammer ratios cancel
/// and the function is exactly a confluent ₁F₁ of the remaining pair; the
/// dispatch below makes that reduction explicit so the CF closed forms can
/// lean on the stable ₁F₁ paths at any argument magnitude.
pub fn hyp2f2(a1: f64, a2: f64, b1: f64, b2: f64, z: f64) -> Result<f64> {
    check_lower("b1", b1)?;
    check_lower("b2", b2)?;
    if !a1.is_finite() || !a2.is_finite() || !z.is_finite() {
        return Err(Error::invalid("a/z", "parameters must be finite".to_string()));
    }
    if z == 0.0 {
        return Ok(1.0);
    }
    if a1 == b1 {
        return hyp1f1(a2, b2, z);
    }
    if a1 == b2 {
        return hyp1f1(a2, b1, z);
    }
    if a2 == b1 {
        return hyp1f1(a1, b2, z);
    }
    if a2 == b2 {
        return hyp1f1(a1, b1, z);
    }
    dd_series(&[a1, a2], &[b1, b2], z, "hyp2f2")
}
