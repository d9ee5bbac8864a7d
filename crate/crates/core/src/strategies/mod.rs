//! Two-copy discrimination strategies.
//!
//! Four protocols are covered, from least to most powerful:
//!
//! * [`Strategy::Fixed`]: two single-qubit probes chosen in advance.
//! * [`Strategy::Adaptive`]: the second probe depends on the first outcome.
//! * [`Strategy::Entangled`]: one two-qubit probe, one qubit per use.
//! * [`Strategy::FeedForward`]: an entangled probe where a unitary `U` is
//!   applied to the second qubit whenever the first outcome is 1.
//!
//! Each protocol ends with a guess function mapping the outcome pair `(x, y)`
//! to a device. [`closed_form`] holds the analytic optima and [`numeric`] the
//! independent eigenvalue-maximization route used to confirm them.

pub mod closed_form;
pub mod numeric;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, CMat, HermMat};
use crate::measurements::{Device, MeasurementPair, Outcome};
use crate::state::{QubitState, TwoQubitState};

pub use closed_form::{
    optimize_adaptive, optimize_entangled, optimize_feedforward, optimize_fixed, THRESHOLD_ANGLE,
};

/// Decision rule `f(x, y)`: one of the 16 maps `{0,1}^2 -> {A, B}`.
///
/// Bit `k = 2x + y` of the index holds the guess for `(x, y)`; a clear bit
/// means A and a set bit means B.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GuessFunction(u8);

impl GuessFunction {
    pub fn new(index: u8) -> Result<Self> {
        if index < 16 {
            Ok(Self(index))
        } else {
            Err(Error::InvalidGuessIndex(index))
        }
    }

    /// Builds the rule from its table in the order `00, 01, 10, 11`.
    pub const fn from_table(table: [Device; 4]) -> Self {
        let mut index = 0u8;
        let mut k = 0;
        while k < 4 {
            if let Device::B = table[k] {
                index |= 1 << k;
            }
            k += 1;
        }
        Self(index)
    }

    /// All 16 rules in index order.
    pub fn all() -> impl Iterator<Item = GuessFunction> {
        (0u8..16).map(GuessFunction)
    }

    #[inline]
    pub fn index(self) -> u8 {
        self.0
    }

    #[inline]
    pub fn guess(self, x: Outcome, y: Outcome) -> Device {
        if (self.0 >> (2 * x.index() + y.index())) & 1 == 1 {
            Device::B
        } else {
            Device::A
        }
    }

    pub fn table(self) -> [Device; 4] {
        let mut out = [Device::A; 4];
        for (k, slot) in out.iter_mut().enumerate() {
            if (self.0 >> k) & 1 == 1 {
                *slot = Device::B;
            }
        }
        out
    }

    /// True when the guess after first outcome `x` ignores the second outcome.
    pub fn ignores_second_after(self, x: Outcome) -> bool {
        self.guess(x, Outcome::ZERO) == self.guess(x, Outcome::ONE)
    }
}

impl fmt::Display for GuessFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let t = self.table();
        write!(f, "{}{}{}{} (#{})", t[0], t[1], t[2], t[3], self.0)
    }
}

/// The four two-copy protocols.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Strategy {
    Fixed,
    Adaptive,
    Entangled,
    FeedForward,
}

impl Strategy {
    pub const ALL: [Strategy; 4] = [
        Strategy::Fixed,
        Strategy::Adaptive,
        Strategy::Entangled,
        Strategy::FeedForward,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Strategy::Fixed => "fixed",
            Strategy::Adaptive => "adaptive",
            Strategy::Entangled => "entangled",
            Strategy::FeedForward => "feedforward",
        }
    }

    /// Whether the protocol consumes a two-qubit entangled probe.
    pub fn is_entangled(self) -> bool {
        matches!(self, Strategy::Entangled | Strategy::FeedForward)
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "fixed" | "sep" | "separable" => Ok(Strategy::Fixed),
            "adaptive" | "ad" => Ok(Strategy::Adaptive),
            "entangled" | "ent" => Ok(Strategy::Entangled),
            "feedforward" | "feed-forward" | "ff" => Ok(Strategy::FeedForward),
            other => Err(Error::InvalidArgument(format!(
                "unknown strategy '{other}'"
            ))),
        }
    }
}

/// Probe states (and correction) that realise a strategy.
#[derive(Debug, Clone, PartialEq)]
pub enum Probes {
    Fixed {
        first: QubitState,
        second: QubitState,
    },
    Adaptive {
        first: QubitState,
        /// Second probe indexed by the first outcome.
        second: [QubitState; 2],
    },
    Entangled {
        state: TwoQubitState,
    },
    FeedForward {
        state: TwoQubitState,
        /// Applied to the second qubit when the first outcome is 1.
        correction: CMat,
    },
}

impl Probes {
    pub fn strategy(&self) -> Strategy {
        match self {
            Probes::Fixed { .. } => Strategy::Fixed,
            Probes::Adaptive { .. } => Strategy::Adaptive,
            Probes::Entangled { .. } => Strategy::Entangled,
            Probes::FeedForward { .. } => Strategy::FeedForward,
        }
    }
}

/// Optimal parameters of one strategy at one angle.
#[derive(Debug, Clone, PartialEq)]
pub struct StrategyResult {
    pub strategy: Strategy,
    pub theta: f64,
    pub p_succ: f64,
    pub guess: GuessFunction,
    pub probes: Probes,
}

impl StrategyResult {
    /// Success probability recomputed from the probes and guess function.
    pub fn evaluate(&self, pair: &MeasurementPair) -> Result<f64> {
        match &self.probes {
            Probes::Fixed { first, second } => Ok(psucc_fixed(first, second, self.guess, pair)),
            Probes::Adaptive { first, second } => {
                Ok(psucc_adaptive(first, second, self.guess, pair))
            }
            Probes::Entangled { state } => psucc_entangled(state, self.guess, pair),
            Probes::FeedForward { state, correction } => {
                psucc_feedforward(state, correction, self.guess, pair)
            }
        }
    }
}

/// `1/2 sum_{x,y} Tr[psi_I Pi_{f(x,y),x}] Tr[psi_II Pi_{f(x,y),y}]`.
pub fn psucc_fixed(
    first: &QubitState,
    second: &QubitState,
    f: GuessFunction,
    pair: &MeasurementPair,
) -> f64 {
    psucc_adaptive(first, &[*second, *second], f, pair)
}

/// Adaptive variant of [`psucc_fixed`]: the second factor uses `second[x]`.
pub fn psucc_adaptive(
    first: &QubitState,
    second: &[QubitState; 2],
    f: GuessFunction,
    pair: &MeasurementPair,
) -> f64 {
    let mut acc = 0.0;
    for x in Outcome::BOTH {
        for y in Outcome::BOTH {
            let d = f.guess(x, y);
            acc += pair.probability(first, d, x) * pair.probability(&second[x.index()], d, y);
        }
    }
    0.5 * acc
}

/// `<Psi|R_ent|Psi>`.
pub fn psucc_entangled(
    state: &TwoQubitState,
    f: GuessFunction,
    pair: &MeasurementPair,
) -> Result<f64> {
    state.expectation(&entangled_operator(f, pair)?)
}

/// `<Psi|R_ff(U)|Psi>`.
pub fn psucc_feedforward(
    state: &TwoQubitState,
    correction: &CMat,
    f: GuessFunction,
    pair: &MeasurementPair,
) -> Result<f64> {
    state.expectation(&feedforward_operator(f, correction, pair)?)
}

/// `R = 1/2 sum_{x,y} Tr[psi_I Pi_{f(x,y),x}] Pi_{f(x,y),y}`: its top
/// eigenvalue is the best success probability over second probes.
pub fn fixed_operator(first: &QubitState, f: GuessFunction, pair: &MeasurementPair) -> HermMat {
    let mut r = HermMat::zeros(2).expect("dim 2");
    for x in Outcome::BOTH {
        for y in Outcome::BOTH {
            let d = f.guess(x, y);
            let w = 0.5 * pair.probability(first, d, x);
            r = r.add(&pair.projector(d, y).scale(w)).expect("dim 2");
        }
    }
    r
}

/// `[R_0, R_1]` with `R_x = sum_y Tr[psi_I Pi_{f(x,y),x}] Pi_{f(x,y),y}`; the
/// adaptive success probability is half the sum of their top eigenvalues.
pub fn adaptive_operators(
    first: &QubitState,
    f: GuessFunction,
    pair: &MeasurementPair,
) -> [HermMat; 2] {
    Outcome::BOTH.map(|x| {
        let mut r = HermMat::zeros(2).expect("dim 2");
        for y in Outcome::BOTH {
            let d = f.guess(x, y);
            let w = pair.probability(first, d, x);
            r = r.add(&pair.projector(d, y).scale(w)).expect("dim 2");
        }
        r
    })
}

/// `R_ent = 1/2 sum_{x,y} Pi_{f(x,y),x} (x) Pi_{f(x,y),y}`.
pub fn entangled_operator(f: GuessFunction, pair: &MeasurementPair) -> Result<HermMat> {
    let mut r = HermMat::zeros(4)?;
    for x in Outcome::BOTH {
        for y in Outcome::BOTH {
            let d = f.guess(x, y);
            let term = linalg::tensor_op(pair.projector(d, x), pair.projector(d, y))?;
            r = r.add(&term)?;
        }
    }
    Ok(r.scale(0.5))
}

/// `R_ff = 1/2 sum_y (Pi_{f(0,y),0} (x) Pi_{f(0,y),y}
///                  + Pi_{f(1,y),1} (x) U^dagger Pi_{f(1,y),y} U)`.
pub fn feedforward_operator(
    f: GuessFunction,
    correction: &CMat,
    pair: &MeasurementPair,
) -> Result<HermMat> {
    let mut r = HermMat::zeros(4)?;
    for y in Outcome::BOTH {
        let d0 = f.guess(Outcome::ZERO, y);
        let d1 = f.guess(Outcome::ONE, y);
        let rotated = correction.conjugate_hermitian(pair.projector(d1, y))?;
        r = r.add(&linalg::tensor_op(
            pair.projector(d0, Outcome::ZERO),
            pair.projector(d0, y),
        )?)?;
        r = r.add(&linalg::tensor_op(
            pair.projector(d1, Outcome::ONE),
            &rotated,
        )?)?;
    }
    Ok(r.scale(0.5))
}

/// Single-qubit unitary `Rz(alpha) Ry(beta) Rz(gamma)` with
/// `Rz(a) = diag(e^{-ia/2}, e^{ia/2})` and `Ry(b) = exp(-i b Y / 2)`.
pub fn euler_zyz(alpha: f64, beta: f64, gamma: f64) -> CMat {
    use crate::linalg::C64;
    let (sb, cb) = (0.5 * beta).sin_cos();
    let e = |phase: f64| C64::from_polar(1.0, phase);
    let sum = 0.5 * (alpha + gamma);
    let diff = 0.5 * (alpha - gamma);
    CMat::from_rows(&[
        &[e(-sum) * cb, -e(-diff) * sb],
        &[e(diff) * sb, e(sum) * cb],
    ])
    .expect("dim 2")
}
