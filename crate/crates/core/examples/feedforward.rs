//! Entangled probe with a unitary on the second qubit after outcome 1:
//! perfect discrimination from 45 degrees on.

use discrim::build_pair;
use discrim::strategies::{closed_form, numeric, Probes};

fn main() -> discrim::Result<()> {
    for deg in [30.0f64, 45.0, 60.0] {
        let pair = build_pair(deg.to_radians())?;
        let exact = closed_form::optimize_feedforward(&pair);
        let found = numeric::feedforward(&pair);
        println!(
            "theta = {deg} deg  closed = {:.12}  numeric = {:.12}",
            exact.p_succ, found.p_succ
        );
        if let Probes::FeedForward { state, .. } = &exact.probes {
            println!("  probe {state}");
        }
    }
    Ok(())
}
