//! Command-line front end: `sweep`, `verify` and `simulate`.
//!
//! Angles are degrees on the command line. Exit codes: 0 success,
//! 1 verification failure, 2 usage, domain or I/O error.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::measurements::{build_pair, Device, Outcome};
use crate::oracle;
use crate::simulate::{analytic_success, run_trials, NoiseModel, SimulationReport};
use crate::state::TwoQubitState;
use crate::strategies::{closed_form, numeric, Strategy, THRESHOLD_ANGLE};
use crate::sweep::{self, degrees_to_theta, Format};

pub const EXIT_OK: u8 = 0;
pub const EXIT_VERIFY_FAILED: u8 = 1;
pub const EXIT_ERROR: u8 = 2;

/// Probe grid of the single-qubit oracles in `verify`.
pub const VERIFY_PROBE_GRID: usize = 2000;
/// Euler grid of the feed-forward oracle in `verify`.
pub const VERIFY_EULER_GRID: usize = 12;
/// Tolerance of the exact identities in `verify`, independent of `--tolerance`.
pub const IDENTITY_TOL: f64 = 1e-9;

#[derive(Debug, Parser)]
#[command(
    name = "discrim",
    version,
    about = "Two-copy discrimination of qubit measurements"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Tabulate all strategies over a range of angles.
    Sweep(SweepArgs),
    /// Check closed forms against the brute-force oracle and exact identities.
    Verify(VerifyArgs),
    /// Monte Carlo run of one strategy.
    Simulate(SimulateArgs),
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long, default_value_t = 0.0)]
    pub theta_start: f64,
    #[arg(long, default_value_t = 90.0)]
    pub theta_end: f64,
    #[arg(long, default_value_t = 91)]
    pub steps: usize,
    /// Output file; standard output when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, default_value = "csv", value_parser = parse_format)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, default_value_t = 9)]
    pub grid_points: usize,
    #[arg(long, default_value_t = 1e-4)]
    pub tolerance: f64,
    #[arg(long, default_value_t = 0.0)]
    pub theta_start: f64,
    #[arg(long, default_value_t = 90.0)]
    pub theta_end: f64,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[arg(value_parser = parse_strategy, conflicts_with = "strategy")]
    pub strategy_pos: Option<Strategy>,
    #[arg(conflicts_with = "theta")]
    pub theta_pos: Option<f64>,
    #[arg(conflicts_with = "trials")]
    pub trials_pos: Option<u64>,
    #[arg(conflicts_with = "seed")]
    pub seed_pos: Option<u64>,
    #[arg(conflicts_with = "visibility")]
    pub visibility_pos: Option<f64>,
    #[arg(long, value_parser = parse_strategy)]
    pub strategy: Option<Strategy>,
    /// Measurement angle in degrees.
    #[arg(long)]
    pub theta: Option<f64>,
    #[arg(long)]
    pub trials: Option<u64>,
    #[arg(long, env = "DISCRIM_SEED")]
    pub seed: Option<u64>,
    #[arg(long)]
    pub visibility: Option<f64>,
    /// Also print the report as JSON.
    #[arg(long)]
    pub json: bool,
}

fn parse_format(s: &str) -> std::result::Result<Format, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_strategy(s: &str) -> std::result::Result<Strategy, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// Runs a parsed command line, writing the report to `out`.
pub fn run<W: Write>(cli: Cli, out: &mut W) -> ExitCode {
    let outcome = match cli.command {
        Command::Sweep(a) => cmd_sweep(&a, out).map(|()| true),
        Command::Verify(a) => cmd_verify(a.grid_points, a.tolerance, a.theta_start, a.theta_end)
            .and_then(|r| {
                r.print(out)?;
                Ok(r.all_passed())
            }),
        Command::Simulate(a) => resolve_simulate(&a).and_then(|req| {
            let report = cmd_simulate(&req)?;
            report.print(out, a.json)?;
            Ok(true)
        }),
    };
    match outcome {
        Ok(true) => ExitCode::from(EXIT_OK),
        Ok(false) => ExitCode::from(EXIT_VERIFY_FAILED),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}

fn write_err(e: std::io::Error) -> Error {
    Error::Io {
        path: "<stdout>".into(),
        message: e.to_string(),
    }
}

pub fn cmd_sweep<W: Write>(args: &SweepArgs, out: &mut W) -> Result<()> {
    let rows = sweep::sweep(args.theta_start, args.theta_end, args.steps)?;
    match &args.out {
        Some(path) => sweep::write_file(&rows, path, args.format),
        None => match args.format {
            Format::Csv => sweep::write_csv(&rows, out),
            Format::Json => sweep::write_json(&rows, out),
        },
    }
}

/// One line of the verification table.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub theta_deg: f64,
    /// Observed deviation; the check passes when it is at most `tolerance`.
    pub deviation: f64,
    pub tolerance: f64,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.deviation <= self.tolerance
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn print<W: Write>(&self, out: &mut W) -> Result<()> {
        for c in &self.checks {
            writeln!(
                out,
                "{} {:<28} theta={:>8.4} deviation={:.3e} tol={:.1e}",
                if c.passed() { "PASS" } else { "FAIL" },
                c.name,
                c.theta_deg,
                c.deviation,
                c.tolerance
            )
            .map_err(write_err)?;
        }
        let failed = self.checks.iter().filter(|c| !c.passed()).count();
        writeln!(out, "{} checks, {} failed", self.checks.len(), failed).map_err(write_err)
    }
}

/// Oracle-versus-closed-form and identity checks on `grid_points` angles
/// between `start_deg` and `end_deg`.
pub fn cmd_verify(
    grid_points: usize,
    tolerance: f64,
    start_deg: f64,
    end_deg: f64,
) -> Result<VerifyReport> {
    if grid_points < 5 {
        return Err(Error::InvalidArgument(
            "grid_points must be at least 5".into(),
        ));
    }
    if tolerance.is_nan() || tolerance < 0.0 {
        return Err(Error::InvalidArgument(
            "tolerance must be non-negative".into(),
        ));
    }
    let grid = sweep::theta_grid(start_deg, end_deg, grid_points)?;
    let mut checks = Vec::new();
    let mut push = |name: &str, theta_deg: f64, deviation: f64, tol: f64| {
        checks.push(Check {
            name: name.to_string(),
            theta_deg,
            deviation,
            tolerance: tol,
        })
    };
    for &deg in &grid {
        let theta = degrees_to_theta(deg)?;
        let pair = build_pair(theta)?;
        let cf = [
            closed_form::fixed_success(theta),
            closed_form::adaptive_success(theta),
            closed_form::entangled_success(theta),
            closed_form::feedforward_success(theta),
        ];
        let brute = [
            oracle::brute_force_fixed(&pair, VERIFY_PROBE_GRID)?.p_succ,
            oracle::brute_force_adaptive(&pair, VERIFY_PROBE_GRID)?.p_succ,
            oracle::brute_force_entangled(&pair).p_succ,
            oracle::brute_force_feedforward(&pair, VERIFY_EULER_GRID)?.p_succ,
        ];
        for (k, s) in Strategy::ALL.iter().enumerate() {
            push(
                &format!("oracle/{}", s.name()),
                deg,
                (brute[k] - cf[k]).abs(),
                tolerance,
            );
            push(
                &format!("oracle-bound/{}", s.name()),
                deg,
                (brute[k] - cf[k]).max(0.0),
                IDENTITY_TOL,
            );
            let numeric = numeric::optimize(*s, &pair).p_succ;
            push(
                &format!("numeric/{}", s.name()),
                deg,
                (numeric - cf[k]).abs(),
                tolerance,
            );
        }

        // Projector completeness and idempotence.
        let mut defect: f64 = 0.0;
        for d in Device::BOTH {
            let p0 = pair.projector(d, Outcome::ZERO);
            let p1 = pair.projector(d, Outcome::ONE);
            let id = crate::linalg::HermMat::identity(2)?;
            defect = defect.max(p0.add(p1)?.max_abs_diff(&id)?);
            for p in [p0, p1] {
                defect = defect.max(p.mul(p)?.max_abs_diff(p.as_cmat())?);
            }
        }
        push("projectors", deg, defect, IDENTITY_TOL);

        let single = closed_form::single_use_success(theta);
        let chain = [
            (cf[3], cf[2]),
            (cf[3], cf[1]),
            (cf[1], cf[0]),
            (cf[0], single),
            (single, 0.5),
        ];
        let violation = chain
            .iter()
            .map(|(hi, lo)| (lo - hi).max(0.0))
            .fold(0.0, f64::max);
        push("hierarchy", deg, violation, IDENTITY_TOL);

        if theta > 0.0 && theta < FRAC_PI_2 {
            let parity = closed_form::parity_probe(theta);
            let optical =
                TwoQubitState::from_real_amplitudes(closed_form::optical_probe_amplitudes(theta))?;
            push(
                "parity-probe-forms",
                deg,
                parity.as_vec().distance_up_to_phase(optical.as_vec())?,
                IDENTITY_TOL,
            );
        }
        if theta > FRAC_PI_4 && theta < FRAC_PI_2 {
            let (a, b, g) = closed_form::feedforward_coefficients(theta);
            push(
                "feedforward-coefficients",
                deg,
                (a * a + b * b + g * g - 1.0).abs(),
                IDENTITY_TOL,
            );
        }
        if theta >= *THRESHOLD_ANGLE {
            push(
                "entangled=adaptive",
                deg,
                (cf[2] - cf[1]).abs(),
                IDENTITY_TOL,
            );
        }
    }
    let th = *THRESHOLD_ANGLE;
    push(
        "crossover",
        th.to_degrees(),
        (closed_form::parity_success(th) - closed_form::adaptive_success(th)).abs(),
        IDENTITY_TOL,
    );
    Ok(VerifyReport { checks })
}

/// Fully resolved `simulate` request; `theta_deg` in degrees.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SimulateRequest {
    pub strategy: Strategy,
    pub theta_deg: f64,
    pub trials: u64,
    pub seed: u64,
    pub visibility: f64,
}

fn resolve_simulate(a: &SimulateArgs) -> Result<SimulateRequest> {
    let missing = |what: &str| Error::InvalidArgument(format!("missing {what}"));
    Ok(SimulateRequest {
        strategy: a
            .strategy
            .or(a.strategy_pos)
            .ok_or_else(|| missing("strategy"))?,
        theta_deg: a.theta.or(a.theta_pos).ok_or_else(|| missing("theta"))?,
        trials: a.trials.or(a.trials_pos).unwrap_or(1_000_000),
        seed: a.seed.or(a.seed_pos).unwrap_or(0),
        visibility: a.visibility.or(a.visibility_pos).unwrap_or(1.0),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimulateOutput {
    pub request: SimulateRequest,
    pub p_hat: f64,
    pub stderr: f64,
    /// Exact success probability of the simulated protocol, noise included.
    pub p_analytic: f64,
    /// Noiseless optimum.
    pub p_ideal: f64,
    pub z: f64,
    pub successes: u64,
}

impl SimulateOutput {
    pub fn print<W: Write>(&self, out: &mut W, json: bool) -> Result<()> {
        let r = &self.request;
        let text = format!(
            "strategy    {}\ntheta_deg   {}\ntrials      {}\nseed        {}\nvisibility  {}\n\
             p_hat       {:.12}\nstderr      {:.3e}\np_analytic  {:.12}\np_ideal     {:.12}\nz           {:.3}\n",
            r.strategy,
            r.theta_deg,
            r.trials,
            r.seed,
            r.visibility,
            self.p_hat,
            self.stderr,
            self.p_analytic,
            self.p_ideal,
            self.z
        );
        out.write_all(text.as_bytes()).map_err(write_err)?;
        if r.visibility < 1.0 {
            writeln!(
                out,
                "note        abstract dephasing noise model; not a physical optics simulation"
            )
            .map_err(write_err)?;
        }
        if json {
            let s = serde_json::to_string_pretty(self).map_err(|e| Error::Format(e.to_string()))?;
            writeln!(out, "{s}").map_err(write_err)?;
        }
        Ok(())
    }
}

/// `(p_hat - p) / sqrt(p (1 - p) / n)`, zero when both sides agree exactly.
pub fn z_score(p_hat: f64, p: f64, n: u64) -> f64 {
    let sigma = (p * (1.0 - p) / n as f64).sqrt();
    let diff = p_hat - p;
    if sigma > 0.0 {
        diff / sigma
    } else if diff == 0.0 {
        0.0
    } else {
        diff.signum() * f64::INFINITY
    }
}

/// Simulates the closed-form optimum of `req.strategy` at `req.theta_deg`.
pub fn cmd_simulate(req: &SimulateRequest) -> Result<SimulateOutput> {
    let theta = degrees_to_theta(req.theta_deg)?;
    let noise = NoiseModel::new(req.visibility)?;
    let pair = build_pair(theta)?;
    let best = closed_form::optimize(req.strategy, theta)?;
    let p_analytic = analytic_success(&best, &pair, &noise)?;
    let mut rng = ChaCha8Rng::seed_from_u64(req.seed);
    let SimulationReport {
        successes,
        p_hat,
        stderr,
        ..
    } = run_trials(&best, &pair, req.trials, &mut rng, &noise, false)?;
    Ok(SimulateOutput {
        request: *req,
        p_hat,
        stderr,
        p_analytic,
        p_ideal: best.p_succ,
        z: z_score(p_hat, p_analytic, req.trials),
        successes,
    })
}
