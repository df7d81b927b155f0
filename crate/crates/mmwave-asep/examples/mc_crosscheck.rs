//! Cross-checking the analytic pipeline against the Monte Carlo oracle:
//! z-scores for the ASEP and the characteristic function, a small
//! validation sweep, and bit-identical results across worker counts.
//!
//! Run with `cargo run --example mc_crosscheck`.

use mmwave_asep::cf::{cf_total, CfContext};
use mmwave_asep::errorprob::{asep, Scenario};
use mmwave_asep::mc::{estimate_asep, estimate_cf, McConfig};
use mmwave_asep::model::{AntennaPattern, LinkBudget, Modulation, NetworkParams};
use mmwave_asep::sweep::{validate, SweepSpec};

fn main() {
    let params = NetworkParams::new(1e-4, 141.0, 2.1, 4.0).unwrap();
    let pattern = AntennaPattern::new(10.0, 0.1, 15f64.to_radians()).unwrap();
    let budget = LinkBudget::new(400.0, 1.0, 1.0, 100.0).unwrap();
    let scenario = Scenario::mmwave(params, pattern, budget, Modulation::psk(4).unwrap());

    // ASEP: analytic value vs 100k-snapshot simulation.
    let cfg = McConfig::new(100_000, 7, &scenario).unwrap();
    let analytic = asep(&scenario).unwrap().value;
    let mc = estimate_asep(&cfg, &scenario).unwrap();
    let z = (analytic - mc.mean) / mc.std_error;
    println!("asep   analytic {analytic:.6e}  mc {:.6e} ± {:.2e}  z = {z:+.2}", mc.mean, mc.std_error);

    // Characteristic function of the decision statistic at a fixed serving
    // distance, with noise folded in on both routes.
    let r0 = 50.0;
    let ctx = CfContext::new(params, pattern, budget, r0).unwrap();
    let w_points = [0.3, 1.5];
    let emp = estimate_cf(&cfg, r0, &scenario, &w_points, true).unwrap();
    for (w, est) in w_points.iter().zip(&emp) {
        let exact = cf_total(*w, &ctx).unwrap();
        let z = (exact - est.mean) / est.std_error;
        println!(
            "cf(w={w})  analytic {exact:.6}  mc {:.6} ± {:.1e}  z = {z:+.2}",
            est.mean, est.std_error
        );
    }

    // Same seed, different thread counts: the per-trial RNG streams and the
    // order-free error counts make the estimate a pure function of the seed.
    let runs: Vec<_> = [1usize, 4]
        .iter()
        .map(|&n| {
            rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .unwrap()
                .install(|| estimate_asep(&cfg, &scenario).unwrap())
        })
        .collect();
    assert_eq!(runs[0], runs[1]);
    println!("\n1 worker vs 4 workers: bit-identical ({:.10e})", runs[0].mean);

    // A short validation sweep: every grid point must sit within 3 standard
    // errors of its simulated value.
    let spec = SweepSpec {
        grid: vec![0.0, 10.0, 20.0],
        trials: 20_000,
        label: "crosscheck".to_string(),
        ..SweepSpec::default()
    };
    let report = validate(&spec).unwrap();
    println!("\nvalidation sweep (BPSK, 20k trials per point):");
    for row in &report.rows {
        println!(
            "  snr {:>4} dB  z = {:+.2}",
            row.value,
            row.z_score.unwrap()
        );
    }
    println!("max |z| = {:.2}, passed = {}", report.max_abs_z, report.passed());
}
