//! The characteristic function of the aggregate interference has two
//! evaluation routes: a hypergeometric closed form and direct adaptive
//! quadrature over the radial profile. They are mathematically identical;
//! the closed form is fast, the quadrature route is the independent referee
//! and the fallback when the hypergeometric argument grows too large.
//!
//! Run with `cargo run --example cf_routes`.

use mmwave_asep::cf::{
    cf_aggregate, cf_los_closed, cf_los_quadrature, cf_nlos_closed, cf_nlos_quadrature,
    cf_noise, cf_total, quad_route_uses, CfContext, ROUTE_SWITCH_ARG,
};
use mmwave_asep::model::{gain_distribution, AntennaPattern, LinkBudget, NetworkParams};

fn main() {
    let params = NetworkParams::new(1e-4, 141.0, 2.1, 4.0).unwrap();
    let pattern = AntennaPattern::new(10.0, 0.1, 15f64.to_radians()).unwrap();
    let budget = LinkBudget::new(400.0, 1.0, 1.0, 100.0).unwrap();
    let ctx = CfContext::new(params, pattern, budget, 60.0).unwrap();
    let gains = gain_distribution(&pattern);

    println!("closed route vs quadrature route, serving distance 60 m:");
    println!("{:>6} {:>8} {:>22} {:>22} {:>10}", "w", "gain", "LOS closed", "LOS quadrature", "rel diff");
    for w in [0.1, 1.0, 10.0] {
        for entry in gains.entries {
            let dens = params.lambda_bs * entry.probability;
            let closed = cf_los_closed(w, entry.gain, dens, &ctx).unwrap();
            let quad = cf_los_quadrature(w, entry.gain, dens, &ctx).unwrap();
            let rel = (closed - quad).abs() / closed.abs();
            println!("{w:>6} {:>8.2} {closed:>22.15} {quad:>22.15} {rel:>10.1e}", entry.gain);
        }
    }

    let w = 2.0;
    let entry = gains.entries[0];
    let dens = params.lambda_bs * entry.probability;
    let nlos_c = cf_nlos_closed(w, entry.gain, dens, &ctx).unwrap();
    let nlos_q = cf_nlos_quadrature(w, entry.gain, dens, &ctx).unwrap();
    println!("\nNLOS factor at w = {w}: closed {nlos_c:.15}, quadrature {nlos_q:.15}");

    // The full CF multiplies six thinned-class factors (3 gains x LOS/NLOS)
    // and the Gaussian noise factor.
    let agg = cf_aggregate(w, &ctx).unwrap();
    let total = cf_total(w, &ctx).unwrap();
    println!("aggregate interference CF: {agg:.12}");
    println!("with noise folded in:      {total:.12} (noise factor {:.12})", cf_noise(w, &budget));

    // The auto route switches to quadrature only past a large argument; this
    // process-wide counter attributes switches to a computation. At w = 2e4
    // the strongest gain class crosses the threshold, the weaker two do not.
    let before = quad_route_uses();
    let _ = cf_total(2e4, &ctx).unwrap();
    println!(
        "\nauto-route switches while evaluating w = 2e4: {} \
         (arguments beyond {ROUTE_SWITCH_ARG:.0e} leave the closed form's comfort zone)",
        quad_route_uses() - before
    );
}
