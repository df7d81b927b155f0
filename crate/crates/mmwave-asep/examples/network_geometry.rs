//! The geometric layer of the model: where the serving base station sits,
//! which interferers are line-of-sight, and how the sectored antenna pattern
//! thins the interferer field into gain classes.
//!
//! Run with `cargo run --example network_geometry`.

use mmwave_asep::model::{
    gain_distribution, path_loss_exponent, serving_distance_pdf, AntennaPattern, NetworkParams,
};

fn main() {
    let params = NetworkParams::new(1e-4, 141.0, 2.1, 4.0).unwrap();
    let pattern = AntennaPattern::new(10.0, 0.1, 15f64.to_radians()).unwrap();

    // Nearest-BS association gives the serving distance the Rayleigh-type
    // law f(ξ) = 2πλξ·exp(−πλξ²). Integrating it inside the LOS ball tells
    // us how often the serving link enjoys the gentler exponent's distances.
    println!("serving-distance law at two densities:");
    for lambda in [1e-5, 1e-4] {
        let within_ball = 1.0 - (-std::f64::consts::PI * lambda * 141.0 * 141.0).exp();
        let median = (std::f64::consts::LN_2 / (std::f64::consts::PI * lambda)).sqrt();
        let mode_density = serving_distance_pdf(median, lambda).unwrap();
        println!(
            "  lambda={lambda:.0e}: median distance {median:7.1} m, \
             P(serving inside 141 m ball) = {within_ball:.3}, pdf at median {mode_density:.5}"
        );
    }

    // The ball model switches the path-loss exponent at a hard radius.
    println!("\npath-loss exponent vs distance (ball radius 141 m):");
    for r in [50.0, 141.0, 142.0, 400.0] {
        println!("  r = {r:5} m -> alpha = {}", path_loss_exponent(r, &params).unwrap());
    }

    // Random beam orientations make the interferer gain a three-point
    // distribution: both main lobes, one main lobe, or neither.
    let dist = gain_distribution(&pattern);
    println!("\ninterferer gain classes at beamwidth 15 deg (q = 15/360):");
    for entry in dist.entries {
        println!(
            "  {:?}: gain {:7.2} with probability {:.6}",
            entry.class, entry.gain, entry.probability
        );
    }
    println!("  mean interferer gain: {:.4}", dist.mean_gain());
    println!(
        "\nthe serving link is main-main by alignment, so its gain is {:.0}",
        pattern.main_gain * pattern.main_gain
    );
}
