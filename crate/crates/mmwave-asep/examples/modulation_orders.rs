//! Error probability across PSK constellation sizes. Larger constellations
//! shrink the minimum distance between symbols, so the curves separate
//! cleanly: BPSK < QPSK < 8-PSK at every SNR.
//!
//! Run with `cargo run --example modulation_orders`.

use mmwave_asep::errorprob::{asep, Scenario};
use mmwave_asep::model::{AntennaPattern, LinkBudget, Modulation, NetworkParams};

fn main() {
    let orders = [2u32, 4, 8];
    println!("{:>7} {:>14} {:>14} {:>14}", "snr_db", "bpsk", "qpsk", "8psk");
    for snr_db in [0.0, 10.0, 20.0, 30.0, 40.0] {
        print!("{snr_db:>7}");
        for order in orders {
            let params = NetworkParams::new(1e-4, 141.0, 2.1, 4.0).unwrap();
            let pattern = AntennaPattern::new(100.0, 0.1, 15f64.to_radians()).unwrap();
            let e0 = 4.0 * 10f64.powf(snr_db / 10.0);
            let budget = LinkBudget::new(e0, 1.0, 1.0, 1e4).unwrap();
            let modulation = Modulation::psk(order).unwrap();
            let scenario = Scenario::mmwave(params, pattern, budget, modulation);
            let out = asep(&scenario).unwrap();
            print!(" {:>14.6e}", out.value);
        }
        println!();
    }
    println!("\n(20 dB main lobe, density 1e-4, nearest-neighbor symbol error approximation)");
}
