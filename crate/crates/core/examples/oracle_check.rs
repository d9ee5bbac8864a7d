//! Brute-force grid searches as an independent check of the closed forms.

use discrim::build_pair;
use discrim::oracle;
use discrim::strategies::closed_form;

fn main() -> discrim::Result<()> {
    let theta = 50f64.to_radians();
    let pair = build_pair(theta)?;
    let fixed = oracle::brute_force_fixed(&pair, 1000)?;
    let adaptive = oracle::brute_force_adaptive(&pair, 1000)?;
    let ff = oracle::brute_force_feedforward(&pair, 10)?;
    println!(
        "fixed        {:.8} vs {:.8}",
        fixed.p_succ,
        closed_form::fixed_success(theta)
    );
    println!(
        "adaptive     {:.8} vs {:.8}",
        adaptive.p_succ,
        closed_form::adaptive_success(theta)
    );
    println!(
        "feedforward  {:.8} vs {:.8}",
        ff.p_succ,
        closed_form::feedforward_success(theta)
    );
    Ok(())
}
