//! Dephasing of the entangled probe. Separable strategies are untouched by
//! this model, so only the entangled ones lose.

use discrim::build_pair;
use discrim::simulate::{analytic_success, NoiseModel};
use discrim::strategies::{closed_form, Strategy};

fn main() -> discrim::Result<()> {
    let theta = 55f64.to_radians();
    let pair = build_pair(theta)?;
    for v in [1.0, 0.99, 0.98, 0.9, 0.5] {
        let noise = NoiseModel::new(v)?;
        let row: Vec<String> = Strategy::ALL
            .iter()
            .map(|&s| {
                let best = closed_form::optimize(s, theta).expect("valid angle");
                format!(
                    "{}={:.5}",
                    s.name(),
                    analytic_success(&best, &pair, &noise).expect("dim")
                )
            })
            .collect();
        println!("V = {v:<5} {}", row.join("  "));
    }
    Ok(())
}
