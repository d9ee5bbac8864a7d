//! Monte Carlo simulation of the two-shot discrimination experiment.
//!
//! Each trial draws the hidden device uniformly, runs the two measurements of
//! the strategy's protocol and applies the guess function. Entangled probes
//! are collapsed by the first measurement; feed-forward applies the
//! correction to the remaining qubit after outcome 1.
//!
//! Random stream: a single generator, three `f64` draws per trial in the
//! order truth, first outcome, second outcome. The output is therefore fixed
//! by `(seed, strategy, theta, n, noise)`; there is no worker split.

use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{CMat, CVec, HermMat, C64};
use crate::measurements::{sample_bit, Device, MeasurementPair, Outcome};
use crate::state::{QubitState, TwoQubitState};
use crate::strategies::{GuessFunction, Probes, StrategyResult};

/// Outcomes this unlikely are treated as impossible.
pub const IMPOSSIBLE: f64 = 1e-12;
/// Upper bound on stored per-trial records.
pub const MAX_RECORDS: usize = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TrialRecord {
    pub truth: Device,
    pub x: Outcome,
    pub y: Outcome,
    pub guess: Device,
    pub correct: bool,
}

/// Abstract imperfection of the entangled source: the two-qubit probe is
/// partially dephased in the computational basis.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NoiseModel {
    visibility: f64,
}

impl NoiseModel {
    pub fn new(visibility: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&visibility) {
            return Err(Error::InvalidVisibility(visibility));
        }
        Ok(Self { visibility })
    }

    pub fn ideal() -> Self {
        Self { visibility: 1.0 }
    }

    pub fn visibility(&self) -> f64 {
        self.visibility
    }

    pub fn is_ideal(&self) -> bool {
        self.visibility == 1.0
    }
}

impl Default for NoiseModel {
    fn default() -> Self {
        Self::ideal()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimulationReport {
    pub trials: u64,
    pub successes: u64,
    pub p_hat: f64,
    pub stderr: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub records: Option<Vec<TrialRecord>>,
}

/// Second-qubit state after the first qubit of `psi` gives outcome `x` on
/// `device`.
pub fn conditional_state(
    psi: &TwoQubitState,
    x: Outcome,
    device: Device,
    pair: &MeasurementPair,
) -> Result<QubitState> {
    let k = pair.ket(device, x);
    let mut amps = [C64::new(0.0, 0.0); 2];
    for (a, amp) in amps.iter_mut().enumerate() {
        for i in 0..2 {
            *amp += k.get(i).conj() * psi.amplitude(2 * i + a);
        }
    }
    let v = CVec::new(&amps)?;
    let p = v.norm_sqr();
    if p <= IMPOSSIBLE {
        return Err(Error::ZeroProbability(p));
    }
    QubitState::from_unnormalized(v)
}

/// `V |Psi><Psi| + (1 - V) diag(|Psi><Psi|)`.
pub fn apply_noise(psi: &TwoQubitState, noise: &NoiseModel) -> HermMat {
    let pure = psi.density();
    if noise.is_ideal() {
        return pure;
    }
    let diag: Vec<f64> = (0..4).map(|i| pure.get(i, i).re).collect();
    let dephased = HermMat::diag(&diag).expect("dim 4");
    pure.scale(noise.visibility)
        .add(&dephased.scale(1.0 - noise.visibility))
        .expect("dim 4")
}

/// `<k| (x) I  rho  |k> (x) I`, unnormalized.
fn project_first(rho: &HermMat, k: &CVec) -> HermMat {
    let mut s = CMat::zeros(2).expect("dim 2");
    for a in 0..2 {
        for b in 0..2 {
            let mut acc = C64::new(0.0, 0.0);
            for i in 0..2 {
                for j in 0..2 {
                    acc += k.get(i).conj() * rho.get(2 * i + a, 2 * j + b) * k.get(j);
                }
            }
            s.set(a, b, acc);
        }
    }
    HermMat::new(s).expect("compression of a Hermitian operator")
}

/// Outcome law of one protocol: `first[d][x]` and `second[d][x][y]`.
#[derive(Debug, Clone, Copy)]
struct Protocol {
    first: [[f64; 2]; 2],
    second: [[[f64; 2]; 2]; 2],
}

fn clean(p: [f64; 2]) -> [f64; 2] {
    let p = p.map(|v| if v <= IMPOSSIBLE { 0.0 } else { v });
    let total = p[0] + p[1];
    if total == 0.0 {
        [0.0, 0.0]
    } else {
        [p[0] / total, p[1] / total]
    }
}

fn dev(d: Device) -> usize {
    match d {
        Device::A => 0,
        Device::B => 1,
    }
}

impl Protocol {
    fn build(probes: &Probes, pair: &MeasurementPair, noise: &NoiseModel) -> Result<Self> {
        let mut first = [[0.0; 2]; 2];
        let mut second = [[[0.0; 2]; 2]; 2];
        for d in Device::BOTH {
            let di = dev(d);
            match probes {
                Probes::Fixed {
                    first: a,
                    second: b,
                } => {
                    first[di] = clean(Outcome::BOTH.map(|x| pair.probability(a, d, x)));
                    let y = clean(Outcome::BOTH.map(|y| pair.probability(b, d, y)));
                    second[di] = [y, y];
                }
                Probes::Adaptive {
                    first: a,
                    second: b,
                } => {
                    first[di] = clean(Outcome::BOTH.map(|x| pair.probability(a, d, x)));
                    for x in Outcome::BOTH {
                        let s = &b[x.index()];
                        second[di][x.index()] =
                            clean(Outcome::BOTH.map(|y| pair.probability(s, d, y)));
                    }
                }
                Probes::Entangled { state } | Probes::FeedForward { state, .. } => {
                    let rho = apply_noise(state, noise);
                    let correction = match probes {
                        Probes::FeedForward { correction, .. } => Some(correction),
                        _ => None,
                    };
                    let mut px = [0.0; 2];
                    for x in Outcome::BOTH {
                        let sigma = project_first(&rho, pair.ket(d, x));
                        let p = sigma.trace();
                        px[x.index()] = p;
                        if p <= IMPOSSIBLE {
                            continue;
                        }
                        let mut sigma = sigma.scale(1.0 / p);
                        if let (Some(u), Outcome::ONE) = (correction, x) {
                            sigma = u.adjoint().conjugate_hermitian(&sigma)?;
                        }
                        second[di][x.index()] = clean(
                            Outcome::BOTH
                                .map(|y| pair.probability_mixed(&sigma, d, y).expect("dim 2")),
                        );
                    }
                    first[di] = clean(px);
                }
            }
        }
        Ok(Self { first, second })
    }

    /// Exact success probability of the outcome law under guess `f`.
    fn success(&self, f: GuessFunction) -> f64 {
        let mut p = 0.0;
        for d in Device::BOTH {
            for x in Outcome::BOTH {
                for y in Outcome::BOTH {
                    if f.guess(x, y) == d {
                        let di = dev(d);
                        p += self.first[di][x.index()] * self.second[di][x.index()][y.index()];
                    }
                }
            }
        }
        0.5 * p
    }
}

/// Success probability of `result` under `noise`, from the same outcome law
/// the simulation samples.
pub fn analytic_success(
    result: &StrategyResult,
    pair: &MeasurementPair,
    noise: &NoiseModel,
) -> Result<f64> {
    Ok(Protocol::build(&result.probes, pair, noise)?.success(result.guess))
}

/// Runs `n` independent trials. Records are kept only when `keep_records`
/// is set, and then at most [`MAX_RECORDS`] of them.
pub fn run_trials<R: Rng + ?Sized>(
    result: &StrategyResult,
    pair: &MeasurementPair,
    n: u64,
    rng: &mut R,
    noise: &NoiseModel,
    keep_records: bool,
) -> Result<SimulationReport> {
    if n == 0 {
        return Err(Error::InvalidArgument("need at least one trial".into()));
    }
    let law = Protocol::build(&result.probes, pair, noise)?;
    let mut records = keep_records.then(|| Vec::with_capacity(n.min(MAX_RECORDS as u64) as usize));
    let mut successes = 0u64;
    for _ in 0..n {
        let truth = if rng.random::<f64>() < 0.5 {
            Device::A
        } else {
            Device::B
        };
        let di = dev(truth);
        let x = sample_bit(law.first[di][0], rng);
        let y = sample_bit(law.second[di][x.index()][0], rng);
        let guess = result.guess.guess(x, y);
        let correct = guess == truth;
        successes += u64::from(correct);
        if let Some(r) = records.as_mut() {
            if r.len() < MAX_RECORDS {
                r.push(TrialRecord {
                    truth,
                    x,
                    y,
                    guess,
                    correct,
                });
            }
        }
    }
    let p_hat = successes as f64 / n as f64;
    Ok(SimulationReport {
        trials: n,
        successes,
        p_hat,
        stderr: (p_hat * (1.0 - p_hat) / n as f64).sqrt(),
        records,
    })
}
