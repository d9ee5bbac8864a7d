//! Two independent probes prepared in advance, closed form against the
//! numerical optimizer.

use discrim::build_pair;
use discrim::strategies::{closed_form, numeric};

fn main() -> discrim::Result<()> {
    for deg in [20.0f64, 45.0, 60.0, 80.0] {
        let theta = deg.to_radians();
        let pair = build_pair(theta)?;
        let exact = closed_form::optimize_fixed(&pair);
        let found = numeric::fixed(&pair);
        println!(
            "theta = {deg} deg  closed = {:.12}  numeric = {:.12}  phi_I = {:.4} deg",
            exact.p_succ,
            found.p_succ,
            closed_form::fixed_probe_angle(theta).to_degrees()
        );
    }
    Ok(())
}
