//! Second probe chosen after seeing the first outcome.

use discrim::strategies::{closed_form, Probes, Strategy};

fn main() -> discrim::Result<()> {
    for deg in [30.0f64, 45.0, 60.0] {
        let r = closed_form::optimize(Strategy::Adaptive, deg.to_radians())?;
        let Probes::Adaptive { first, second } = &r.probes else {
            unreachable!()
        };
        println!(
            "theta = {deg} deg  p = {:.10}  guess {}  phi_I = {:.3}  phi_II = ({:.3}, {:.3})",
            r.p_succ,
            r.guess,
            first.real_angle().to_degrees(),
            second[0].real_angle().to_degrees(),
            second[1].real_angle().to_degrees()
        );
    }
    Ok(())
}
