//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. Runs without the libtest harness so the lines always print.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use discrim::build_pair;
use discrim::linalg::{self, HermMat};
use discrim::oracle;
use discrim::simulate::{analytic_success, run_trials, NoiseModel};
use discrim::strategies::{closed_form, numeric, Strategy, THRESHOLD_ANGLE};
use discrim::sweep;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn interior_grid() -> Vec<f64> {
    (1..=99).map(|k| 0.01 * k as f64 * FRAC_PI_2).collect()
}

fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|k| lo + (hi - lo) * k as f64 / (n - 1) as f64)
        .collect()
}

fn closed(s: Strategy, theta: f64) -> f64 {
    match s {
        Strategy::Fixed => closed_form::fixed_success(theta),
        Strategy::Adaptive => closed_form::adaptive_success(theta),
        Strategy::Entangled => closed_form::entangled_success(theta),
        Strategy::FeedForward => closed_form::feedforward_success(theta),
    }
}

fn closed_form_reproduction() -> Outcome {
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    for theta in interior_grid() {
        let pair = build_pair(theta).map_err(|e| e.to_string())?;
        for s in Strategy::ALL {
            let d = (numeric::optimize(s, &pair).p_succ - closed(s, theta)).abs();
            if d > 1e-9 {
                return Err(format!("{s} at {theta}: deviation {d:e}"));
            }
            worst = worst.max(d);
        }
    }
    let took = start.elapsed();
    if took > Duration::from_secs(60) {
        return Err(format!("took {took:.1?}"));
    }
    Ok(format!(
        "max deviation {worst:.1e} over 99 angles in {took:.1?}"
    ))
}

fn perfect_discrimination() -> Outcome {
    let n = 100_000;
    for (k, theta) in linspace(FRAC_PI_4, FRAC_PI_2 - 0.01, 10)
        .into_iter()
        .enumerate()
    {
        let pair = build_pair(theta).map_err(|e| e.to_string())?;
        let best = closed_form::optimize_feedforward(&pair);
        let mut rng = ChaCha8Rng::seed_from_u64(200 + k as u64);
        let rep = run_trials(&best, &pair, n, &mut rng, &NoiseModel::ideal(), false)
            .map_err(|e| e.to_string())?;
        if rep.successes != n {
            return Err(format!("{} failures at {theta}", n - rep.successes));
        }
    }
    Ok("10 angles x 100000 trials, zero failures".into())
}

fn oracle_equivalence() -> Outcome {
    let mut worst: f64 = 0.0;
    let mut worst_excess = f64::NEG_INFINITY;
    for theta in linspace(0.0, FRAC_PI_2, 25) {
        let pair = build_pair(theta).map_err(|e| e.to_string())?;
        let e = |r: discrim::Result<f64>| r.map_err(|e| e.to_string());
        let brute = [
            (
                Strategy::Fixed,
                e(oracle::brute_force_fixed(&pair, 2000).map(|o| o.p_succ))?,
            ),
            (
                Strategy::Adaptive,
                e(oracle::brute_force_adaptive(&pair, 2000).map(|o| o.p_succ))?,
            ),
            (
                Strategy::Entangled,
                oracle::brute_force_entangled(&pair).p_succ,
            ),
            (
                Strategy::FeedForward,
                e(oracle::brute_force_feedforward(&pair, 12).map(|o| o.p_succ))?,
            ),
        ];
        for (s, p) in brute {
            let c = closed(s, theta);
            if (p - c).abs() > 1e-4 || p - c > 1e-9 {
                return Err(format!("{s} at {theta}: oracle {p} closed {c}"));
            }
            worst = worst.max((p - c).abs());
            worst_excess = worst_excess.max(p - c);
        }
    }
    Ok(format!(
        "25 angles, max |oracle - closed| {worst:.1e}, max excess {worst_excess:.1e}"
    ))
}

fn hierarchy() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let path = dir.path().join("sweep.csv");
    let rows = sweep::sweep(0.0, 90.0, 91).map_err(|e| e.to_string())?;
    sweep::write_file(&rows, &path, sweep::Format::Csv).map_err(|e| e.to_string())?;
    let file = std::fs::File::open(&path).map_err(|e| e.to_string())?;
    let rows = sweep::read_csv(file).map_err(|e| e.to_string())?;
    let mut min_gap = f64::INFINITY;
    for r in &rows {
        if r.p_feedforward < r.p_entangled || r.p_feedforward < r.p_adaptive {
            return Err(format!(
                "feed-forward below another strategy at {}",
                r.theta_deg
            ));
        }
        if r.theta_deg > 0.0 && r.theta_deg < 90.0 {
            let gap = r.p_adaptive - r.p_fixed;
            if gap <= 0.0 {
                return Err(format!("adaptive not above fixed at {}", r.theta_deg));
            }
            min_gap = min_gap.min(gap);
        }
    }
    let at = |deg: f64| {
        rows.iter()
            .find(|r| r.theta_deg == deg)
            .map(|r| r.p_entangled)
    };
    let (p45, p50) = (at(45.0).ok_or("no 45 row")?, at(50.0).ok_or("no 50 row")?);
    if p50 >= p45 {
        return Err(format!("P_ent(50) = {p50} not below P_ent(45) = {p45}"));
    }
    Ok(format!(
        "91-row sweep ordered; min adaptive-fixed gap {min_gap:.3e}; P_ent 45/50 = {p45:.6}/{p50:.6}"
    ))
}

fn crossover() -> Outcome {
    let th = *THRESHOLD_ANGLE;
    let d = (closed_form::parity_success(th) - closed_form::adaptive_success(th)).abs();
    if d > 1e-9 {
        return Err(format!("branches differ by {d:e} at threshold"));
    }
    let mut worst: f64 = 0.0;
    for theta in linspace(th, FRAC_PI_2, 40) {
        let pair = build_pair(theta).map_err(|e| e.to_string())?;
        let ent = numeric::entangled(&pair).p_succ;
        worst = worst.max((ent - closed_form::adaptive_success(theta)).abs());
    }
    if worst > 1e-9 {
        return Err(format!(
            "entangled and adaptive differ by {worst:e} past threshold"
        ));
    }
    Ok(format!(
        "threshold gap {d:.1e}; past threshold max gap {worst:.1e}"
    ))
}

fn monte_carlo() -> Outcome {
    let start = Instant::now();
    let n = 1_000_000u64;
    let thetas: Vec<f64> = (1..=10).map(|k| (k as f64 - 0.5) * PI / 20.0).collect();
    let mut worst_z: f64 = 0.0;
    for (i, s) in Strategy::ALL.into_iter().enumerate() {
        for (k, &theta) in thetas.iter().enumerate() {
            let pair = build_pair(theta).map_err(|e| e.to_string())?;
            let best = closed_form::optimize(s, theta).map_err(|e| e.to_string())?;
            let p = best.p_succ;
            let seed = 1000 * i as u64 + k as u64;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let rep = run_trials(&best, &pair, n, &mut rng, &NoiseModel::ideal(), false)
                .map_err(|e| e.to_string())?;
            let bound = 4.0 * (p * (1.0 - p) / n as f64).sqrt();
            let diff = (rep.p_hat - p).abs();
            if diff > bound {
                return Err(format!("{s} at {theta}: p_hat {} vs {p}", rep.p_hat));
            }
            if bound > 0.0 {
                worst_z = worst_z.max(diff / bound * 4.0);
            }
            if k == 0 {
                let mut again = ChaCha8Rng::seed_from_u64(seed);
                let rep2 = run_trials(&best, &pair, n, &mut again, &NoiseModel::ideal(), false)
                    .map_err(|e| e.to_string())?;
                if rep2 != rep {
                    return Err(format!("{s}: rerun with same seed differs"));
                }
            }
        }
    }
    let took = start.elapsed();
    if took > Duration::from_secs(300) {
        return Err(format!("took {took:.1?}"));
    }
    Ok(format!(
        "40 runs of 10^6 trials, max |z| {worst_z:.2}, {took:.1?}"
    ))
}

fn trace_distance_from_mixed(rho: &HermMat) -> f64 {
    let half = HermMat::identity(2).unwrap().scale(0.5);
    let diff = rho.add(&half.scale(-1.0)).unwrap();
    let (a, b) = linalg::eigvals_2x2(&diff).unwrap();
    0.5 * (a.abs() + b.abs())
}

fn state_identities() -> Outcome {
    let mut worst: f64 = 0.0;
    for theta in linspace(0.01, FRAC_PI_2 - 0.01, 60) {
        let psi = closed_form::parity_probe(theta);
        for keep_first in [true, false] {
            worst = worst.max(trace_distance_from_mixed(&psi.reduced(keep_first)));
        }
        let optical = discrim::TwoQubitState::from_real_amplitudes(
            closed_form::optical_probe_amplitudes(theta),
        )
        .map_err(|e| e.to_string())?;
        worst = worst.max(
            psi.as_vec()
                .distance_up_to_phase(optical.as_vec())
                .map_err(|e| e.to_string())?,
        );
        if theta > FRAC_PI_4 {
            let (a, b, g) = closed_form::feedforward_coefficients(theta);
            worst = worst.max((a * a + b * b + g * g - 1.0).abs());
        }
    }
    if worst > 1e-10 {
        return Err(format!("worst identity defect {worst:e}"));
    }
    Ok(format!("60 angles, worst defect {worst:.1e}"))
}

fn noise_substitute() -> Outcome {
    let noise = NoiseModel::new(0.98).map_err(|e| e.to_string())?;
    let t55 = 55f64.to_radians();
    let pair = build_pair(t55).map_err(|e| e.to_string())?;
    let ff = closed_form::optimize_feedforward(&pair);
    let p_ff = analytic_success(&ff, &pair, &noise).map_err(|e| e.to_string())?;
    let mut rng = ChaCha8Rng::seed_from_u64(55);
    let rep =
        run_trials(&ff, &pair, 1_000_000, &mut rng, &noise, false).map_err(|e| e.to_string())?;
    for p in [p_ff, rep.p_hat] {
        if !(0.95..=1.0).contains(&p) {
            return Err(format!("feed-forward at 55 deg: {p}"));
        }
    }
    let t30 = 30f64.to_radians();
    let pair = build_pair(t30).map_err(|e| e.to_string())?;
    let loss = |s: Strategy| -> Result<f64, String> {
        let best = closed_form::optimize(s, t30).map_err(|e| e.to_string())?;
        let noisy = analytic_success(&best, &pair, &noise).map_err(|e| e.to_string())?;
        Ok(best.p_succ - noisy)
    };
    let (ent, fixed) = (loss(Strategy::Entangled)?, loss(Strategy::Fixed)?);
    if ent <= fixed {
        return Err(format!("entangled loss {ent} not above fixed loss {fixed}"));
    }
    Ok(format!(
        "V=0.98: P_ff(55) = {p_ff:.5} (simulated {:.5}); loss at 30 deg entangled {ent:.2e} > fixed {fixed:.2e}",
        rep.p_hat
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("closed-form reproduction", closed_form_reproduction),
        ("perfect discrimination", perfect_discrimination),
        ("oracle equivalence", oracle_equivalence),
        ("strategy hierarchy", hierarchy),
        ("crossover identities", crossover),
        ("Monte Carlo consistency", monte_carlo),
        ("state identities", state_identities),
        ("dephasing substitute", noise_substitute),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(msg) => println!("PASS criterion {} ({name}): {msg}", i + 1),
            Err(msg) => {
                failed += 1;
                println!("FAIL criterion {} ({name}): {msg}", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
