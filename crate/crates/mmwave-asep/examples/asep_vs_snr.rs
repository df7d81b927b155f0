//! The headline quantity: average symbol error probability as a function of
//! SNR, with the directional mmWave scenario against the omnidirectional
//! baseline at two base-station densities. Directionality wins everywhere,
//! and a denser network helps both.
//!
//! Run with `cargo run --example asep_vs_snr`.

use mmwave_asep::errorprob::{asep, Scenario};
use mmwave_asep::model::{AntennaPattern, LinkBudget, Modulation, NetworkParams};

fn scenario(lambda: f64, snr_db: f64, directional: bool) -> Scenario {
    let params = NetworkParams::new(lambda, 141.0, 2.1, 4.0).unwrap();
    let pattern = AntennaPattern::new(10.0, 0.1, 15f64.to_radians()).unwrap();
    // SNR convention: E₀σ₀/(4N₀), so E₀ = 4·10^(dB/10) at unit noise/fading.
    let e0 = 4.0 * 10f64.powf(snr_db / 10.0);
    let modulation = Modulation::psk(2).unwrap();
    if directional {
        let budget = LinkBudget::new(e0, 1.0, 1.0, 100.0).unwrap();
        Scenario::mmwave(params, pattern, budget, modulation)
    } else {
        let budget = LinkBudget::new(e0, 1.0, 1.0, 1.0).unwrap();
        Scenario::omni_baseline(params, budget, modulation)
    }
}

fn main() {
    println!(
        "{:>7} {:>14} {:>14} {:>14} {:>14}",
        "snr_db", "mmwave 1e-5", "mmwave 1e-4", "omni 1e-5", "omni 1e-4"
    );
    for snr_db in [0.0, 15.0, 30.0, 45.0, 60.0] {
        let row: Vec<f64> = [
            scenario(1e-5, snr_db, true),
            scenario(1e-4, snr_db, true),
            scenario(1e-5, snr_db, false),
            scenario(1e-4, snr_db, false),
        ]
        .iter()
        .map(|sc| asep(sc).unwrap().value)
        .collect();
        println!(
            "{snr_db:>7} {:>14.6e} {:>14.6e} {:>14.6e} {:>14.6e}",
            row[0], row[1], row[2], row[3]
        );
    }
    println!("\n(10 dB main lobe, -10 dB side lobe, 15 deg beamwidth, BPSK)");
}
