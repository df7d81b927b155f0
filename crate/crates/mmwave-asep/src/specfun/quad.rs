//! Adaptive quadrature: a 15-point Gauss–Kronrod kernel under global
//! worst-interval-first bisection for finite ranges, and panel-by-panel
//! accumulation for semi-infinite ranges whose integrands mix oscillation
//! with eventual decay (the Gil-Pelaez integrands do exactly that).

use crate::error::{Error, Result};
use std::cmp::Ordering;
use std::collections::BinaryHeap;

/// Tolerances and effort caps for the integrators.
#[derive(Debug, Clone, Copy)]
pub struct QuadratureConfig {
    /// Target relative error of the whole integral.
    pub rel_tol: f64,
    /// Absolute error floor (dominates when the integral is near zero).
    pub abs_tol: f64,
    /// Cap on the number of live subintervals in one finite integration.
    pub max_subdivisions: usize,
    /// Semi-infinite truncation: stop once panels are shrinking and a panel
    /// contributes less than this fraction of the accumulated sum.
    pub tail_threshold: f64,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        QuadratureConfig {
            rel_tol: 1e-8,
            abs_tol: 1e-12,
            max_subdivisions: 2048,
            tail_threshold: 1e-10,
        }
    }
}

impl QuadratureConfig {
    /// Validates the configuration.
    // Negated comparisons so NaN tolerances fail validation too.
    #[allow(clippy::neg_cmp_op_on_partial_ord)]
    pub fn validated(self) -> Result<Self> {
        if !(self.rel_tol > 0.0) || !(self.abs_tol > 0.0) || !(self.tail_threshold > 0.0) {
            return Err(Error::invalid(
                "QuadratureConfig",
                format!("tolerances must be positive: {self:?}"),
            ));
        }
        if self.max_subdivisions < 1 {
            return Err(Error::invalid(
                "QuadratureConfig",
                "max_subdivisions must be ≥ 1".to_string(),
            ));
        }
        Ok(self)
    }
}

// Abscissae of the 15-point Kronrod rule on [-1, 1]: odd indices are the
// embedded 7-point Gauss nodes. Published at 33 digits; kept verbatim.
#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_838_258_730,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.000_000_000_000_000_000_000_000_000_000_000,
];

// Weights of the embedded 7-point Gauss rule.
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

// Weights of the 15-point Kronrod rule.
#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

/// Error estimate rescaling from QUADPACK: sharper than the raw |K15 − G7|.
fn rescale_error(err: f64, result_abs: f64, result_asc: f64) -> f64 {
    let mut err = err.abs();
    if result_asc != 0.0 && err != 0.0 {
        let scale = (200.0 * err / result_asc).powf(1.5);
        err = if scale < 1.0 { result_asc * scale } else { result_asc };
    }
    let min_val = 50.0 * f64::EPSILON * result_abs;
    if result_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) && min_val > err {
        err = min_val;
    }
    err
}

/// One 15-point Gauss–Kronrod evaluation on [a, b]:
/// (estimate, error bound, ∫|f|, ∫|f − mean|).
fn qk15<F: FnMut(f64) -> f64>(f: &mut F, a: f64, b: f64) -> (f64, f64, f64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let f_center = f(center);

    let mut fv1 = [0.0_f64; 8]; // f(center − h·x)
    let mut fv2 = [0.0_f64; 8]; // f(center + h·x)
    fv1[7] = f_center;
    fv2[7] = f_center;
    for j in 0..7 {
        let dx = half * XGK[j];
        fv1[j] = f(center - dx);
        fv2[j] = f(center + dx);
    }

    let mut result_gauss = 0.0;
    let mut result_kronrod = WGK[7] * f_center;
    let mut result_abs = result_kronrod.abs();
    for j in 0..7 {
        let fsum = fv1[j] + fv2[j];
        result_kronrod += WGK[j] * fsum;
        result_abs += WGK[j] * (fv1[j].abs() + fv2[j].abs());
        if j % 2 == 1 {
            result_gauss += WG[j / 2] * fsum;
        }
    }
    result_gauss += WG[3] * f_center;

    let mean = 0.5 * result_kronrod;
    let mut result_asc = WGK[7] * (f_center - mean).abs();
    for j in 0..7 {
        result_asc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }

    let err = rescale_error((result_kronrod - result_gauss) * half, result_abs * half.abs(), result_asc * half.abs());
    (
        result_kronrod * half,
        err,
        result_abs * half.abs(),
        result_asc * half.abs(),
    )
}

/// Subinterval with its estimate, ordered by error for the refinement heap.
struct Interval {
    a: f64,
    b: f64,
    result: f64,
    error: f64,
}

impl PartialEq for Interval {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Interval {}
impl PartialOrd for Interval {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Interval {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error
            .partial_cmp(&other.error)
            .unwrap_or(Ordering::Equal)
    }
}

/// Kahan-compensated sum of interval results (used for the final resum so
/// thousands of panels don't accumulate drift).
fn kahan_sum<I: Iterator<Item = f64>>(values: I) -> f64 {
    let mut sum = 0.0;
    let mut c = 0.0;
    for v in values {
        let y = v - c;
        let t = sum + y;
        c = (t - sum) - y;
        sum = t;
    }
    sum
}

/// Adaptive integral of `f` over the finite interval [a, b].
///
/// Worst interval is bisected first; fails honestly when `max_subdivisions`
/// live intervals cannot push the global error estimate under
/// max(abs_tol, rel_tol·|result|).
pub fn integrate_finite<F: FnMut(f64) -> f64>(
    mut f: F,
    a: f64,
    b: f64,
    cfg: &QuadratureConfig,
) -> Result<f64> {
    if !a.is_finite() || !b.is_finite() {
        return Err(Error::invalid("a/b", "integration limits must be finite".to_string()));
    }
    if a == b {
        return Ok(0.0);
    }
    let (result, error, _, _) = qk15(&mut f, a, b);
    if !result.is_finite() {
        return Err(Error::numeric(
            "integrate_finite",
            format!("integrand produced a non-finite value on [{a}, {b}]"),
        ));
    }

    let mut heap = BinaryHeap::new();
    heap.push(Interval { a, b, result, error });
    let mut total_result = result;
    let mut total_error = error;

    while total_error > cfg.abs_tol.max(cfg.rel_tol * total_result.abs()) {
        if heap.len() >= cfg.max_subdivisions {
            return Err(Error::numeric(
                "integrate_finite",
                format!(
                    "error {total_error:.3e} still above tolerance after \
                     {} subdivisions on [{a}, {b}] (estimate {total_result:.6e})",
                    heap.len()
                ),
            ));
        }
        let worst = heap.pop().expect("heap cannot be empty while error > 0");
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            // Interval at floating-point resolution: accept its estimate.
            total_error -= worst.error;
            let zero_err = Interval { error: 0.0, ..worst };
            heap.push(zero_err);
            continue;
        }
        let (r1, e1, _, _) = qk15(&mut f, worst.a, mid);
        let (r2, e2, _, _) = qk15(&mut f, mid, worst.b);
        if !(r1.is_finite() && r2.is_finite()) {
            return Err(Error::numeric(
                "integrate_finite",
                format!("integrand produced a non-finite value inside [{}, {}]", worst.a, worst.b),
            ));
        }
        total_result += r1 + r2 - worst.result;
        total_error += e1 + e2 - worst.error;
        heap.push(Interval { a: worst.a, b: mid, result: r1, error: e1 });
        heap.push(Interval { a: mid, b: worst.b, result: r2, error: e2 });
    }

    // Resum the accepted partition with compensation; the incremental
    // total_result above can carry O(n·eps) drift.
    Ok(kahan_sum(heap.into_iter().map(|iv| iv.result)))
}

// Panel layout for the semi-infinite integrator: start narrow to resolve the
// near-origin structure, grow geometrically, cap so oscillations within one
// panel stay resolvable by the adaptive kernel.
const PANEL_START_WIDTH: f64 = 1.0;
const PANEL_GROWTH: f64 = 1.25;
const PANEL_MAX_WIDTH: f64 = 16.0;
const PANEL_CAP: usize = 5_000;
/// Consecutive qualifying panels required before declaring convergence.
const PANEL_STREAK: usize = 2;

/// Integral of `f` over [a, ∞) for integrands that eventually decay
/// (possibly while oscillating).
///
/// Fixed panels are integrated adaptively and accumulated; convergence is
/// declared only after panel magnitudes have started decreasing and
/// `PANEL_STREAK` consecutive panels each contribute less than
/// `tail_threshold`·|sum| (or fall below abs_tol outright). Integrands whose
/// panels never decay exhaust `PANEL_CAP` and fail loudly.
pub fn integrate_semi_infinite<F: FnMut(f64) -> f64>(
    mut f: F,
    a: f64,
    cfg: &QuadratureConfig,
) -> Result<f64> {
    if !a.is_finite() {
        return Err(Error::invalid("a", "lower limit must be finite".to_string()));
    }
    let mut x0 = a;
    let mut width = PANEL_START_WIDTH;
    let mut sum = 0.0;
    let mut comp = 0.0; // Kahan compensation
    let mut prev_mag = f64::INFINITY;
    let mut streak = 0;

    for _ in 0..PANEL_CAP {
        let x1 = x0 + width;
        let panel = integrate_finite(&mut f, x0, x1, cfg)?;
        let y = panel - comp;
        let t = sum + y;
        comp = (t - sum) - y;
        sum = t;

        let mag = panel.abs();
        let decaying = mag <= prev_mag * (1.0 + 1e-12);
        prev_mag = mag;

        if decaying && mag <= (cfg.tail_threshold * sum.abs()).max(cfg.abs_tol) {
            streak += 1;
            if streak >= PANEL_STREAK {
                return Ok(sum);
            }
        } else {
            streak = 0;
        }

        x0 = x1;
        width = (width * PANEL_GROWTH).min(PANEL_MAX_WIDTH);
    }
    Err(Error::numeric(
        "integrate_semi_infinite",
        format!(
            "no decaying tail detected after {PANEL_CAP} panels from {a} \
             (reached {x0:.3e}, running sum {sum:.6e})"
        ),
    ))
}
