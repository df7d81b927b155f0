//! With interference switched off the Gil-Pelaez sine-integral inversion has
//! an elementary competitor: the Gaussian tail Q-form. The two share no
//! code, which makes this the cleanest anchor for the inversion machinery.
//! The decision-variable CDF is also shown, with its circular-symmetry
//! consequences.
//!
//! Run with `cargo run --example noise_only_anchor`.

use mmwave_asep::errorprob::{cdf_u_re, pep_conditional, Scenario};
use mmwave_asep::model::{AntennaPattern, LinkBudget, Modulation, NetworkParams};
use mmwave_asep::specfun::erfc;

fn q_gauss(x: f64) -> f64 {
    0.5 * erfc(x / std::f64::consts::SQRT_2)
}

fn main() {
    let params = NetworkParams::new(1e-4, 141.0, 2.1, 4.0).unwrap();
    let pattern = AntennaPattern::new(10.0, 0.1, 15f64.to_radians()).unwrap();
    let budget = LinkBudget::new(400.0, 1.0, 1.0, 100.0).unwrap();
    let scenario = Scenario::noise_only(params, pattern, budget, Modulation::psk(2).unwrap());
    let b = &scenario.budget;

    println!("pairwise error probability, inversion vs Q-form (no interference):");
    println!("{:>5} {:>6} {:>20} {:>20} {:>9}", "h0", "r0", "Gil-Pelaez", "Q-form", "rel diff");
    for h0 in [0.3, 1.0, 2.2] {
        for r0 in [30.0_f64, 90.0] {
            let got = pep_conditional(h0, r0, 2.0, &scenario).unwrap();
            let t = (b.serving_gain * b.symbol_energy).sqrt() * 2.0 * h0
                / (2.0 * r0.powf(scenario.params.alpha_los));
            let want = q_gauss(t * (2.0 / b.noise_level).sqrt());
            println!(
                "{h0:>5} {r0:>6} {got:>20.15} {want:>20.15} {:>9.1e}",
                (got - want).abs() / want
            );
        }
    }

    // The decision variable is circularly symmetric, so its real part has a
    // symmetric distribution: CDF(0) = 1/2 and CDF(−u) + CDF(u) = 1.
    println!("\ndecision-variable CDF at r0 = 50 m:");
    for u in [-1.0, -0.25, 0.0, 0.25, 1.0] {
        println!("  F({u:>5}) = {:.12}", cdf_u_re(u, 50.0, &scenario).unwrap());
    }
}
