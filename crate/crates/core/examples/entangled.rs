//! Entangled two-qubit probe without feed-forward. Past the threshold angle
//! it is no better than the adaptive strategy.

use discrim::strategies::{closed_form, THRESHOLD_ANGLE};

fn main() {
    println!("threshold = {:.6} deg", THRESHOLD_ANGLE.to_degrees());
    for deg in [30.0f64, 45.0, 50.0, 54.0, 60.0, 75.0] {
        let t = deg.to_radians();
        println!(
            "theta = {deg} deg  entangled = {:.10}  adaptive = {:.10}",
            closed_form::entangled_success(t),
            closed_form::adaptive_success(t)
        );
    }
    let probe = closed_form::parity_probe(std::f64::consts::FRAC_PI_6);
    println!("parity probe at 30 deg: {probe}");
}
