//! Analytic optima for the four strategies.
//!
//! Several printed expressions contain removable singularities (at
//! `theta = pi/4` for the symmetric entangled probe, at `theta = pi/2` for
//! anything involving `tan(theta)`). They are evaluated here in algebraically
//! equivalent forms that stay finite on the whole of `[0, pi/2]`.

use std::f64::consts::{FRAC_PI_4, SQRT_2};
use std::sync::LazyLock;

use crate::error::Result;
use crate::linalg::{self, CMat, CVec};
use crate::measurements::{build_pair, check_theta, Device, MeasurementPair};
use crate::state::{QubitState, TwoQubitState};

use super::{adaptive_operators, GuessFunction, Probes, Strategy, StrategyResult};

use Device::{A, B};

/// `arccos(1/sqrt(3))`: above it the symmetric entangled strategy stops
/// being optimal.
pub static THRESHOLD_ANGLE: LazyLock<f64> = LazyLock::new(|| (1.0 / 3.0f64.sqrt()).acos());

/// Guess A unless both outcomes are 1.
pub const FIXED_GUESS: GuessFunction = GuessFunction::from_table([A, A, A, B]);
/// Guess follows the second outcome.
pub const ADAPTIVE_GUESS: GuessFunction = GuessFunction::from_table([A, B, A, B]);
/// Guess B when the outcomes differ.
pub const PARITY_GUESS: GuessFunction = GuessFunction::from_table([A, B, B, A]);
/// Guess B only for `(0, 1)`.
pub const BROKEN_SYMMETRY_GUESS: GuessFunction = GuessFunction::from_table([A, B, A, A]);

/// Optimal probe angle of the fixed strategy (both probes share it).
pub fn fixed_probe_angle(theta: f64) -> f64 {
    // arccos argument (1 - sqrt(1 + 8c^2)) / (4c), rationalized to remove the
    // 0/0 at theta = pi/2.
    let c = theta.cos();
    let arg = -2.0 * c / (1.0 + (1.0 + 8.0 * c * c).sqrt());
    0.5 * (theta - arg.clamp(-1.0, 1.0).acos())
}

/// Best success probability of the fixed strategy.
pub fn fixed_success(theta: f64) -> f64 {
    let (s, c) = theta.sin_cos();
    let u = (2.0 * theta).cos();
    let root = (5.0 + 4.0 * u).sqrt();
    let second = s / (4.0 * SQRT_2) * (2.0 + u + root).sqrt();
    let first = if theta <= FRAC_PI_4 {
        (s / c) / (8.0 * SQRT_2) * (1.0 + 2.0 * u + root).sqrt()
    } else {
        // tan(theta) sqrt(1 + 2u + root) = 4 sin^2(theta) / sqrt(root - 1 - 2u),
        // finite at theta = pi/2.
        s * s / (2.0 * SQRT_2 * (root - 1.0 - 2.0 * u).sqrt())
    };
    0.5 + first + second
}

/// First probe angle of the adaptive strategy.
pub fn adaptive_first_angle(theta: f64) -> f64 {
    FRAC_PI_4 + 0.5 * theta
}

/// Best success probability of the adaptive strategy; also the entangled
/// optimum above [`THRESHOLD_ANGLE`].
pub fn adaptive_success(theta: f64) -> f64 {
    0.5 * (1.0 + (1.0 - theta.cos().powi(4)).sqrt())
}

/// Entangled-probe success probability with the parity guess.
pub fn parity_success(theta: f64) -> f64 {
    0.5 * (1.0 + (2.0 * theta).sin())
}

pub fn entangled_success(theta: f64) -> f64 {
    if theta <= *THRESHOLD_ANGLE {
        parity_success(theta)
    } else {
        adaptive_success(theta)
    }
}

pub fn feedforward_success(theta: f64) -> f64 {
    if theta < FRAC_PI_4 {
        parity_success(theta)
    } else {
        1.0
    }
}

pub fn single_use_success(theta: f64) -> f64 {
    0.5 * (1.0 + theta.sin())
}

/// Unnormalized symmetric probe
/// `cos(2t)(|11> - |00>) + (1 - sin(2t))(|01> + |10>)`, as `[c00, c01, c10, c11]`.
pub fn parity_probe_amplitudes(theta: f64) -> [f64; 4] {
    let c2 = (2.0 * theta).cos();
    let m = 1.0 - (2.0 * theta).sin();
    [-c2, m, m, c2]
}

/// Polarization-optics form of the symmetric probe with `|H> -> |0>` and
/// `|V> -> |1>`:
/// `|H>[(c - s)|V> - (c + s)|H>] + |V>[(c + s)|V> + (c - s)|H>]`.
pub fn optical_probe_amplitudes(theta: f64) -> [f64; 4] {
    let (s, c) = theta.sin_cos();
    [-(c + s), c - s, c - s, c + s]
}

/// Normalized symmetric probe. The unnormalized form equals `(cos t - sin t)`
/// times the optical form and vanishes at `pi/4`; near there the limit is
/// taken through the optical form.
pub fn parity_probe(theta: f64) -> TwoQubitState {
    let (s, c) = theta.sin_cos();
    let amps = if (c - s).abs() > 1e-6 {
        parity_probe_amplitudes(theta)
    } else {
        optical_probe_amplitudes(theta)
    };
    TwoQubitState::from_real_amplitudes(amps).expect("nonzero amplitudes")
}

/// Normalized optimal probe above the threshold, from
/// `|00> - |11> + tan(t)|10> - k|01>` with
/// `k = cos(t) sqrt(3 + cos 2t) / (sqrt 2 + sin(t) sqrt(3 + cos 2t))`,
/// multiplied through by `cos(t)` so that `theta = pi/2` is finite.
pub fn broken_symmetry_probe(theta: f64) -> TwoQubitState {
    let (s, c) = theta.sin_cos();
    let q = (3.0 + (2.0 * theta).cos()).sqrt();
    let k = c * q / (SQRT_2 + s * q);
    TwoQubitState::from_real_amplitudes([c, -c * k, s, -c]).expect("nonzero amplitudes")
}

/// Coefficients `(alpha, beta, gamma)` of the perfect-discrimination probe
/// `alpha|00> + beta|10> + gamma|11>`, for `theta` in `[pi/4, pi/2]`.
pub fn feedforward_coefficients(theta: f64) -> (f64, f64, f64) {
    let (s, c) = theta.sin_cos();
    let cot = c / s;
    // sqrt(1 - 1/tan^2); clamped so pi/4 itself does not round negative.
    let r = (1.0 - cot * cot).max(0.0).sqrt();
    let alpha = (1.0 - r).sqrt() / SQRT_2;
    let gamma = -cot * (1.0 + r).sqrt() / SQRT_2;
    // beta = -alpha/tan - gamma tan, with gamma tan = -sqrt(1 + r)/sqrt(2).
    let beta = -alpha * cot + (1.0 + r).sqrt() / SQRT_2;
    (alpha, beta, gamma)
}

/// Correction unitary `U|0> = (gamma|0> + beta|1>)/n`,
/// `U|1> = (-beta|0> + gamma|1>)/n` with `n = sqrt(beta^2 + gamma^2)`.
pub fn feedforward_unitary(beta: f64, gamma: f64) -> CMat {
    let n = beta.hypot(gamma);
    let (g, b) = (gamma / n, beta / n);
    CMat::from_real_rows(&[&[g, -b], &[b, g]]).expect("dim 2")
}

/// Optimal fixed single-qubit probes: both probes at [`fixed_probe_angle`],
/// guess [`FIXED_GUESS`].
pub fn optimize_fixed(pair: &MeasurementPair) -> StrategyResult {
    let theta = pair.theta();
    let (probe, p) = if theta == 0.0 {
        (QubitState::zero(), 0.5)
    } else {
        (real_probe(fixed_probe_angle(theta)), fixed_success(theta))
    };
    StrategyResult {
        strategy: Strategy::Fixed,
        theta,
        p_succ: p,
        guess: FIXED_GUESS,
        probes: Probes::Fixed {
            first: probe,
            second: probe,
        },
    }
}

/// Optimal adaptive strategy. The second probes are the top eigenvectors of
/// `R_0` and `R_1` for the analytic first probe.
pub fn optimize_adaptive(pair: &MeasurementPair) -> StrategyResult {
    let theta = pair.theta();
    if theta == 0.0 {
        let z = QubitState::zero();
        return StrategyResult {
            strategy: Strategy::Adaptive,
            theta,
            p_succ: 0.5,
            guess: ADAPTIVE_GUESS,
            probes: Probes::Adaptive {
                first: z,
                second: [z, z],
            },
        };
    }
    let first = real_probe(adaptive_first_angle(theta));
    let second = adaptive_operators(&first, ADAPTIVE_GUESS, pair).map(|r| {
        let (_, v) = linalg::eig_max(&r).expect("2x2 Hermitian");
        QubitState::new(v).expect("unit eigenvector")
    });
    StrategyResult {
        strategy: Strategy::Adaptive,
        theta,
        p_succ: adaptive_success(theta),
        guess: ADAPTIVE_GUESS,
        probes: Probes::Adaptive { first, second },
    }
}

/// Optimal fixed entangled probe, switching guess function at
/// [`THRESHOLD_ANGLE`].
pub fn optimize_entangled(pair: &MeasurementPair) -> StrategyResult {
    let theta = pair.theta();
    let (guess, state, p) = if theta == 0.0 {
        (PARITY_GUESS, zero_zero(), 0.5)
    } else if theta <= *THRESHOLD_ANGLE {
        (PARITY_GUESS, parity_probe(theta), parity_success(theta))
    } else {
        (
            BROKEN_SYMMETRY_GUESS,
            broken_symmetry_probe(theta),
            adaptive_success(theta),
        )
    };
    StrategyResult {
        strategy: Strategy::Entangled,
        theta,
        p_succ: p,
        guess,
        probes: Probes::Entangled { state },
    }
}

/// Optimal entangled probe with feed-forward. Below `pi/4` this is the
/// entangled optimum with `U = I`; from `pi/4` on discrimination is perfect.
pub fn optimize_feedforward(pair: &MeasurementPair) -> StrategyResult {
    let theta = pair.theta();
    if theta < FRAC_PI_4 {
        let ent = optimize_entangled(pair);
        let Probes::Entangled { state } = ent.probes else {
            unreachable!("optimize_entangled returns entangled probes")
        };
        return StrategyResult {
            strategy: Strategy::FeedForward,
            probes: Probes::FeedForward {
                state,
                correction: CMat::identity(2).expect("dim 2"),
            },
            ..ent
        };
    }
    let (alpha, beta, gamma) = feedforward_coefficients(theta);
    let state =
        TwoQubitState::from_real_amplitudes([alpha, 0.0, beta, gamma]).expect("nonzero amplitudes");
    StrategyResult {
        strategy: Strategy::FeedForward,
        theta,
        p_succ: 1.0,
        guess: PARITY_GUESS,
        probes: Probes::FeedForward {
            state,
            correction: feedforward_unitary(beta, gamma),
        },
    }
}

/// Closed-form optimum of `strategy` at `theta` (radians).
pub fn optimize(strategy: Strategy, theta: f64) -> Result<StrategyResult> {
    check_theta(theta)?;
    let pair = build_pair(theta)?;
    Ok(match strategy {
        Strategy::Fixed => optimize_fixed(&pair),
        Strategy::Adaptive => optimize_adaptive(&pair),
        Strategy::Entangled => optimize_entangled(&pair),
        Strategy::FeedForward => optimize_feedforward(&pair),
    })
}

fn real_probe(phi: f64) -> QubitState {
    QubitState::from_unnormalized(QubitState::from_angle(phi).as_vec().to_owned())
        .expect("unit vector")
}

fn zero_zero() -> TwoQubitState {
    TwoQubitState::new(CVec::basis(4, 0).expect("dim 4")).expect("unit vector")
}
