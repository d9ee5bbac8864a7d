//! Simulated experiment for every strategy at one angle.

use discrim::build_pair;
use discrim::simulate::{run_trials, NoiseModel};
use discrim::strategies::{closed_form, Strategy};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> discrim::Result<()> {
    let theta = 60f64.to_radians();
    let pair = build_pair(theta)?;
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for s in Strategy::ALL {
        let best = closed_form::optimize(s, theta)?;
        let rep = run_trials(&best, &pair, 200_000, &mut rng, &NoiseModel::ideal(), false)?;
        println!(
            "{:<12} p_hat = {:.5} +- {:.5}  exact = {:.5}",
            s.name(),
            rep.p_hat,
            rep.stderr,
            best.p_succ
        );
    }
    Ok(())
}
