//! Error-probability pipeline tests: the noise-only Gaussian closed form as
//! an independent anchor for Gil-Pelaez inversion, the decision-variable CDF,
//! the fading/distance average against a literal double quadrature, the
//! nearest-neighbor scaling, the omni-baseline collapse, and the
//! beamsteering-error mixture.

use mmwave_asep::errorprob::{
    apep, apep_with_beam_error, asep, asep_with_beam_error, cdf_u_re, misalignment_gain_pdf,
    pep_conditional, BeamErrorModel, Scenario,
};
use mmwave_asep::cf::{cf_total, CfContext};
use mmwave_asep::model::{AntennaPattern, GainClass, LinkBudget, Modulation, NetworkParams};
use mmwave_asep::specfun::{
    erf, erfc, integrate_finite, integrate_semi_infinite, QuadratureConfig,
};

fn assert_rel(got: f64, want: f64, tol: f64, what: &str) {
    let denom = want.abs().max(f64::MIN_POSITIVE);
    let rel = (got - want).abs() / denom;
    assert!(
        rel <= tol,
        "{what}: got {got:.17e}, want {want:.17e}, rel err {rel:.3e} > {tol:.1e}"
    );
}

/// Gaussian tail Q(x) = erfc(x/√2)/2 — the closed form the noise-only
/// pairwise error probability must reproduce. Shares no code with the
/// Gil-Pelaez sine-integral route.
fn q_gauss(x: f64) -> f64 {
    0.5 * erfc(x / std::f64::consts::SQRT_2)
}

fn standard_params(lambda: f64) -> NetworkParams {
    NetworkParams::new(lambda, 141.0, 2.1, 4.0).unwrap()
}

fn standard_pattern() -> AntennaPattern {
    AntennaPattern::new(10.0, 0.1, 15f64.to_radians()).unwrap()
}

/// Scenario with the main-lobe serving gain M² = 100 and unit noise/fading.
fn mmwave_scenario(lambda: f64, symbol_energy: f64) -> Scenario {
    let pattern = standard_pattern();
    let budget = LinkBudget::new(symbol_energy, 1.0, 1.0, 100.0).unwrap();
    Scenario::mmwave(
        standard_params(lambda),
        pattern,
        budget,
        Modulation::psk(2).unwrap(),
    )
}

fn noise_only_scenario(symbol_energy: f64, noise_level: f64) -> Scenario {
    let pattern = standard_pattern();
    let budget = LinkBudget::new(symbol_energy, noise_level, 1.0, 100.0).unwrap();
    Scenario::noise_only(
        standard_params(1e-4),
        pattern,
        budget,
        Modulation::psk(2).unwrap(),
    )
}

/// mpmath 40-digit anchor: with G₀ = 100, E₀ = 1000, N₀ = 1, Δ = 2, |h₀| = 1,
/// r₀ = 40, α_L = 2.1, the shift is T = √(G₀E₀)·Δ·|h₀|/(2·r₀^α_L) and the
/// noise-only pairwise error probability is Q(T·√(2/N₀)).
const NOISE_ONLY_PEP_ANCHOR: f64 = 0.4233694785513983080067;

#[test]
fn noise_only_pep_matches_gaussian_tail_anchor() {
    let scenario = noise_only_scenario(1000.0, 1.0);
    let pep = pep_conditional(1.0, 40.0, 2.0, &scenario).unwrap();
    assert_rel(pep, NOISE_ONLY_PEP_ANCHOR, 1e-8, "noise-only anchor");
}

#[test]
fn noise_only_pep_matches_q_form_on_grid() {
    let scenario = noise_only_scenario(4000.0, 2.0);
    let b = &scenario.budget;
    for h0 in [0.25, 1.0, 2.5] {
        for r0 in [25.0_f64, 60.0, 120.0] {
            let delta = std::f64::consts::SQRT_2;
            let t = (b.serving_gain * b.symbol_energy).sqrt() * delta * h0
                / (2.0 * r0.powf(scenario.params.alpha_los));
            let want = q_gauss(t * (2.0 / b.noise_level).sqrt());
            let got = pep_conditional(h0, r0, delta, &scenario).unwrap();
            let diff = (got - want).abs();
            assert!(
                diff <= 1e-8,
                "h0={h0} r0={r0}: got {got:.12e}, want {want:.12e}, diff {diff:.3e}"
            );
        }
    }
}

/// With λ = 0 the six thinned interferer populations are empty, so the full
/// pipeline must land on the same Gaussian anchor as the dedicated
/// interference-free mode.
#[test]
fn interference_free_density_matches_noise_only_mode() {
    let pattern = standard_pattern();
    let budget = LinkBudget::new(1000.0, 1.0, 1.0, 100.0).unwrap();
    let empty = Scenario::mmwave(
        standard_params(0.0),
        pattern,
        budget,
        Modulation::psk(2).unwrap(),
    );
    let pep = pep_conditional(1.0, 40.0, 2.0, &empty).unwrap();
    assert_rel(pep, NOISE_ONLY_PEP_ANCHOR, 1e-8, "λ = 0 anchor");
}

#[test]
fn pep_degenerate_shift_returns_half() {
    let scenario = mmwave_scenario(1e-4, 40.0);
    // Zero symbol distance and zero fading magnitude both collapse the
    // decision threshold onto the median of the symmetric decision variable.
    assert_eq!(pep_conditional(1.0, 40.0, 0.0, &scenario).unwrap(), 0.5);
    assert_eq!(pep_conditional(0.0, 40.0, 2.0, &scenario).unwrap(), 0.5);
}

#[test]
fn pep_rejects_invalid_inputs() {
    let scenario = mmwave_scenario(1e-4, 40.0);
    assert!(pep_conditional(-1.0, 40.0, 2.0, &scenario).is_err());
    assert!(pep_conditional(f64::NAN, 40.0, 2.0, &scenario).is_err());
    assert!(pep_conditional(1.0, 0.0, 2.0, &scenario).is_err());
    assert!(pep_conditional(1.0, -5.0, 2.0, &scenario).is_err());
    assert!(pep_conditional(1.0, 40.0, -0.1, &scenario).is_err());
    assert!(cdf_u_re(f64::NAN, 40.0, &scenario).is_err());
}

#[test]
fn pep_decreases_with_fading_magnitude() {
    let scenario = mmwave_scenario(1e-4, 40.0);
    let mut prev = pep_conditional(0.5, 40.0, 2.0, &scenario).unwrap();
    for h0 in [1.0, 2.0, 4.0] {
        let next = pep_conditional(h0, 40.0, 2.0, &scenario).unwrap();
        assert!(
            next < prev,
            "PEP must fall as the serving link strengthens: h0={h0} gave {next} ≥ {prev}"
        );
        prev = next;
    }
}

#[test]
fn interference_raises_pep_above_noise_only() {
    let with_interf = mmwave_scenario(1e-4, 40.0);
    let without = noise_only_scenario(40.0, 1.0);
    let pep_i = pep_conditional(1.0, 40.0, 2.0, &with_interf).unwrap();
    let pep_n = pep_conditional(1.0, 40.0, 2.0, &without).unwrap();
    assert!(
        pep_i > pep_n,
        "interference must add errors: {pep_i} ≤ {pep_n}"
    );
}

/// mpmath 40-digit values of Φ(u·√(2/N₀)·…) = (1 + erf(u))/2 at N₀ = 1: the
/// noise-only decision variable is Gaussian with variance N₀/2.
const NOISE_ONLY_CDF_ANCHORS: [(f64, f64); 3] = [
    (0.3, 0.6643133797295637080948),
    (-0.75, 0.1444221831732424342005),
    (1.5, 0.9830525732376553635335),
];

#[test]
fn cdf_at_zero_is_half_and_noise_only_matches_gaussian_cdf() {
    let scenario = noise_only_scenario(40.0, 1.0);
    assert_eq!(cdf_u_re(0.0, 40.0, &scenario).unwrap(), 0.5);
    for (u, want) in NOISE_ONLY_CDF_ANCHORS {
        let got = cdf_u_re(u, 40.0, &scenario).unwrap();
        assert_rel(got, want, 1e-8, &format!("noise-only CDF at u={u}"));
        // Same closed form through the library's own error function.
        assert_rel(got, 0.5 * (1.0 + erf(u)), 1e-8, "erf consistency");
    }
}

#[test]
fn cdf_is_monotone_and_symmetric_under_interference() {
    let scenario = mmwave_scenario(1e-4, 40.0);
    let grid = [-2.0, -1.0, -0.25, 0.0, 0.25, 1.0, 2.0];
    let mut prev = -1.0;
    for u in grid {
        let c = cdf_u_re(u, 40.0, &scenario).unwrap();
        assert!((0.0..=1.0).contains(&c), "CDF({u}) = {c} outside [0, 1]");
        assert!(c >= prev - 1e-10, "CDF not monotone at u={u}: {c} < {prev}");
        prev = c;
    }
    for u in [0.2, 1.0] {
        let lo = cdf_u_re(-u, 40.0, &scenario).unwrap();
        let hi = cdf_u_re(u, 40.0, &scenario).unwrap();
        assert!(
            (lo + hi - 1.0).abs() <= 2e-8,
            "decision variable must be symmetric: CDF(−{u}) + CDF({u}) = {}",
            lo + hi
        );
    }
}

#[test]
fn apep_zero_distance_is_half_and_invalid_rejected() {
    let scenario = mmwave_scenario(1e-4, 40.0);
    assert_eq!(apep(0.0, &scenario).unwrap(), 0.5);
    assert!(apep(-1.0, &scenario).is_err());
    assert!(apep(f64::NAN, &scenario).is_err());
}

#[test]
fn apep_requires_positive_density() {
    // Averaging over the nearest-BS distance is meaningless at λ = 0; the
    // error must steer the caller toward the interference-free mode instead.
    let scenario = mmwave_scenario(0.0, 40.0);
    let err = apep(2.0, &scenario).unwrap_err().to_string();
    assert!(err.contains("NoiseOnly"), "unhelpful error: {err}");
    assert!(asep(&scenario).is_err());
}

/// Gaussian kernel the production route uses for the fading average:
/// E{sin(√(G₀E₀)Δ|h₀|w/(2ξ^α))}/w = √π·β·e^(−β²w²) with
/// β = √(G₀E₀σ₀)·Δ/(4ξ^α) for Rayleigh |h₀| of power σ₀.
fn fading_kernel_beta(scenario: &Scenario, delta: f64, xi: f64) -> f64 {
    let b = &scenario.budget;
    (b.serving_gain * b.symbol_energy * b.fading_power).sqrt() * delta
        / (4.0 * xi.powf(scenario.params.alpha_los))
}

/// The production route folds the Rayleigh average into a Gaussian kernel
/// before integrating. Here both sides are rebuilt at fixed serving
/// distances: the kernel-weighted CF integral versus the literal average of
/// the conditional PEP over the fading law (via the exact quantile
/// substitution u = e^(−h²/σ₀), which absorbs the density and the tail).
#[test]
fn fading_average_kernel_matches_literal_average_of_conditional_pep() {
    let scenario = mmwave_scenario(1e-4, 40.0);
    let delta = 2.0;
    let sigma0 = scenario.budget.fading_power;
    let cfg = QuadratureConfig {
        rel_tol: 1e-7,
        abs_tol: 1e-10,
        ..QuadratureConfig::default()
    };
    for xi in [8.0, 40.0, 90.0] {
        let literal = integrate_finite(
            |u| {
                let h = (-sigma0 * u.ln()).sqrt();
                pep_conditional(h, xi, delta, &scenario).unwrap()
            },
            0.0,
            1.0,
            &cfg,
        )
        .unwrap();

        let ctx =
            CfContext::new(scenario.params, scenario.pattern, scenario.budget, xi).unwrap();
        let beta = fading_kernel_beta(&scenario, delta, xi);
        let weighted_cf = integrate_semi_infinite(
            |w| {
                std::f64::consts::PI.sqrt() * beta * (-beta * beta * w * w).exp()
                    * cf_total(w, &ctx).unwrap()
            },
            0.0,
            &cfg,
        )
        .unwrap();
        let kernel = 0.5 - weighted_cf / std::f64::consts::PI;

        assert_rel(literal, kernel, 1e-6, &format!("fading average at ξ={xi}"));
    }
}

/// End-to-end check of the nested fading/distance integration: the library's
/// APEP against an independent double quadrature of the same closed kernel,
/// with the serving-distance density absorbed exactly by the quantile
/// substitution s = e^(−πλξ²) (unit weight, no truncation).
///
/// The dense, high-energy regime matters: here interference moves APEP by
/// ~2e-3 relative (measured against the noise-only mode), 200× the check
/// tolerance, so the identity discriminates the interference path of the
/// pipeline — at sparse fig-like parameters the beamforming suppresses the
/// shift below 1e-5 and the check would only exercise the noise kernel.
#[test]
fn apep_matches_independent_double_quadrature() {
    let scenario = mmwave_scenario(1e-3, 4000.0);
    let delta = 2.0;
    let lib = apep(delta, &scenario).unwrap();

    let lambda = scenario.params.lambda_bs;
    let cfg = QuadratureConfig {
        rel_tol: 1e-7,
        abs_tol: 1e-11,
        ..QuadratureConfig::default()
    };
    let weighted_cf = integrate_finite(
        |s| {
            let xi = (-s.ln() / (std::f64::consts::PI * lambda)).sqrt();
            let ctx = CfContext::new(scenario.params, scenario.pattern, scenario.budget, xi)
                .unwrap();
            let beta = fading_kernel_beta(&scenario, delta, xi);
            integrate_semi_infinite(
                |w| {
                    std::f64::consts::PI.sqrt() * beta * (-beta * beta * w * w).exp()
                        * cf_total(w, &ctx).unwrap()
                },
                0.0,
                &cfg,
            )
            .unwrap()
        },
        0.0,
        1.0,
        &cfg,
    )
    .unwrap();
    let indep = 0.5 - weighted_cf / std::f64::consts::PI;

    assert_rel(lib, indep, 1e-5, "APEP vs independent double quadrature");
}

#[test]
fn apep_decreases_with_symbol_energy() {
    // E₀ = 4·10^(SNR dB/10) with unit noise and fading: 0, 10, 20, 30 dB.
    let mut prev = 0.5;
    for e0 in [4.0, 40.0, 400.0, 4000.0] {
        let scenario = mmwave_scenario(1e-4, e0);
        let a = apep(2.0, &scenario).unwrap();
        assert!(
            a < prev,
            "APEP must fall with symbol energy: E₀={e0} gave {a} ≥ {prev}"
        );
        prev = a;
    }
}

#[test]
fn asep_is_neighbor_scaled_apep() {
    let pattern = standard_pattern();
    let budget = LinkBudget::new(400.0, 1.0, 1.0, 100.0).unwrap();
    let qpsk = Modulation::psk(4).unwrap();
    let scenario = Scenario::mmwave(standard_params(1e-4), pattern, budget, qpsk);
    let out = asep(&scenario).unwrap();
    let pairwise = apep(qpsk.min_distance, &scenario).unwrap();
    assert_eq!(out.value, (qpsk.neighbor_count as f64 * pairwise).min(1.0));
    assert!(!out.clamped);
}

/// A unit-gain pattern with equal LOS/NLOS exponents makes the six-class
/// aggregate a single unbounded annulus of the full density — exactly the
/// conventional omnidirectional baseline.
#[test]
fn unit_gain_equal_exponents_collapse_to_omni_baseline() {
    let params = NetworkParams::new(1e-4, 141.0, 3.5, 3.5).unwrap();
    let budget = LinkBudget::new(400.0, 1.0, 1.0, 1.0).unwrap();
    let bpsk = Modulation::psk(2).unwrap();
    let unit_pattern = AntennaPattern::new(1.0, 1.0, 2.0 * std::f64::consts::PI).unwrap();
    let full = Scenario::mmwave(params, unit_pattern, budget, bpsk);
    let baseline = Scenario::omni_baseline(params, budget, bpsk);
    let a_full = apep(2.0, &full).unwrap();
    let a_base = apep(2.0, &baseline).unwrap();
    assert_rel(a_full, a_base, 1e-9, "six-class collapse to omni");
}

#[test]
fn beam_error_model_validation_and_coverage() {
    assert!(BeamErrorModel::new(-0.1).is_err());
    assert!(BeamErrorModel::new(f64::NAN).is_err());
    let perfect = BeamErrorModel::new(0.0).unwrap();
    assert_eq!(perfect.coverage(15f64.to_radians()), 1.0);

    // mpmath 40-digit erf(θ/(2√2·σ)) at θ = 15°, σ_BE = 5° (f64 radians).
    let model = BeamErrorModel::new(5f64.to_radians()).unwrap();
    assert_rel(
        model.coverage(15f64.to_radians()),
        0.8663855974622838473941,
        5e-15,
        "half-normal beam coverage",
    );
    // Wider beams are easier to keep aligned.
    assert!(model.coverage(25f64.to_radians()) > model.coverage(15f64.to_radians()));
}

#[test]
fn misalignment_weights_match_half_normal_coverage() {
    let pattern = standard_pattern();
    let model = BeamErrorModel::new(5f64.to_radians()).unwrap();
    let dist = misalignment_gain_pdf(&model, &pattern);
    // mpmath 40-digit F², 2F(1−F), (1−F)² for F above.
    let want = [
        (GainClass::MainMain, 100.0, 0.7506240034900785434297),
        (GainClass::MainSide, 1.0, 0.2315231879444106079288),
        (GainClass::SideSide, 0.010000000000000002, 0.0178528085655108486415),
    ];
    let mut total = 0.0;
    for (entry, (class, gain, prob)) in dist.entries.iter().zip(want) {
        assert_eq!(entry.class, class);
        assert_eq!(entry.gain, gain);
        assert_rel(entry.probability, prob, 1e-14, "misalignment weight");
        total += entry.probability;
    }
    assert!((total - 1.0).abs() <= 1e-15, "weights must sum to 1: {total}");
}

/// σ_BE = 0 must reproduce the perfectly aligned pipeline exactly — the
/// mixture degenerates to its main-lobe branch with the identical budget.
#[test]
fn zero_pointing_error_reproduces_perfect_alignment_exactly() {
    let scenario = mmwave_scenario(1e-4, 40.0);
    let perfect = BeamErrorModel::new(0.0).unwrap();
    let mixed = apep_with_beam_error(2.0, &scenario, &perfect).unwrap();
    assert_eq!(mixed, apep(2.0, &scenario).unwrap());
    let out = asep_with_beam_error(&scenario, &perfect).unwrap();
    assert_eq!(out, asep(&scenario).unwrap());
}

#[test]
fn asep_rises_with_pointing_error_spread() {
    let scenario = mmwave_scenario(1e-4, 40.0);
    let mut prev = -1.0;
    for sigma_deg in [0.0_f64, 4.0, 8.0] {
        let model = BeamErrorModel::new(sigma_deg.to_radians()).unwrap();
        let out = asep_with_beam_error(&scenario, &model).unwrap();
        assert!(
            out.value > prev,
            "ASEP must rise with pointing spread: σ={sigma_deg}° gave {} ≤ {prev}",
            out.value
        );
        prev = out.value;
    }
}
