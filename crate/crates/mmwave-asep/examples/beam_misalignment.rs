//! Impact of beamsteering errors on the serving link. A Gaussian pointing
//! error with deviation sigma_BE knocks each end of the link out of the main
//! lobe with probability 1 - erf(theta/(2*sqrt(2)*sigma_BE)), turning the
//! serving gain into a three-point mixture over MM, Mm, mm. The table shows
//! the mixture weights and the resulting ASEP degradation.
//!
//! Run with `cargo run --example beam_misalignment`.

use mmwave_asep::errorprob::{
    asep, asep_with_beam_error, misalignment_gain_pdf, BeamErrorModel, Scenario,
};
use mmwave_asep::model::{AntennaPattern, LinkBudget, Modulation, NetworkParams};

fn main() {
    let params = NetworkParams::new(1e-4, 141.0, 2.1, 4.0).unwrap();
    let pattern = AntennaPattern::new(100.0, 0.1, 15f64.to_radians()).unwrap();
    let budget = LinkBudget::new(4e3, 1.0, 1.0, 1e4).unwrap();
    let scenario = Scenario::mmwave(params, pattern, budget, Modulation::psk(2).unwrap());

    println!(
        "{:>13} {:>9} {:>9} {:>9} {:>14}",
        "sigma_be_deg", "P(MM)", "P(Mm)", "P(mm)", "asep"
    );
    for sigma_deg in [0.0f64, 1.0, 3.0, 5.0, 8.0] {
        let model = BeamErrorModel::new(sigma_deg.to_radians()).unwrap();
        let weights = misalignment_gain_pdf(&model, &pattern);
        let out = asep_with_beam_error(&scenario, &model).unwrap();
        let p: Vec<f64> = weights.entries.iter().map(|e| e.probability).collect();
        println!(
            "{sigma_deg:>13} {:>9.5} {:>9.5} {:>9.5} {:>14.6e}",
            p[0], p[1], p[2], out.value
        );
    }

    let perfect = asep(&scenario).unwrap().value;
    let zero = asep_with_beam_error(&scenario, &BeamErrorModel::new(0.0).unwrap())
        .unwrap()
        .value;
    println!(
        "\nsigma_be = 0 collapses the mixture onto the aligned pipeline: {perfect:.12e} vs {zero:.12e}"
    );
}
