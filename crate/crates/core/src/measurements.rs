//! The two projective qubit measurements to be told apart, and single-shot
//! quantities derived from them.
//!
//! Device `A` measures in the computational basis `{|0>, |1>}`. Device `B`
//! measures in the basis rotated by `theta` in the real plane:
//! `|theta> = cos(theta)|0> + sin(theta)|1>` and
//! `|theta_perp> = sin(theta)|0> - cos(theta)|1>`.

use std::f64::consts::FRAC_PI_2;
use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, CVec, HermMat};
use crate::state::QubitState;

/// Which measurement device is in the box.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Device {
    A,
    B,
}

impl Device {
    pub const BOTH: [Device; 2] = [Device::A, Device::B];

    fn index(self) -> usize {
        match self {
            Device::A => 0,
            Device::B => 1,
        }
    }
}

impl fmt::Display for Device {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Device::A => write!(f, "A"),
            Device::B => write!(f, "B"),
        }
    }
}

/// A single measurement outcome, 0 or 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Outcome(u8);

impl Outcome {
    pub const ZERO: Outcome = Outcome(0);
    pub const ONE: Outcome = Outcome(1);
    pub const BOTH: [Outcome; 2] = [Outcome::ZERO, Outcome::ONE];

    pub fn new(bit: u8) -> Result<Self> {
        match bit {
            0 | 1 => Ok(Outcome(bit)),
            b => Err(Error::InvalidOutcome(b)),
        }
    }

    #[inline]
    pub fn bit(self) -> u8 {
        self.0
    }

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Checks `0 <= theta <= pi/2`.
pub fn check_theta(theta: f64) -> Result<()> {
    if (0.0..=FRAC_PI_2).contains(&theta) {
        Ok(())
    } else {
        Err(Error::AngleOutOfRange(theta))
    }
}

/// Projectors of devices A and B at angle `theta`.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasurementPair {
    theta: f64,
    kets: [[CVec; 2]; 2],
    projectors: [[HermMat; 2]; 2],
}

impl MeasurementPair {
    #[inline]
    pub fn theta(&self) -> f64 {
        self.theta
    }

    /// Eigenvector of `projector(device, outcome)`.
    #[inline]
    pub fn ket(&self, device: Device, outcome: Outcome) -> &CVec {
        &self.kets[device.index()][outcome.index()]
    }

    #[inline]
    pub fn projector(&self, device: Device, outcome: Outcome) -> &HermMat {
        &self.projectors[device.index()][outcome.index()]
    }

    /// `<psi|Pi_{device,outcome}|psi>`.
    pub fn probability(&self, state: &QubitState, device: Device, outcome: Outcome) -> f64 {
        self.ket(device, outcome)
            .inner(state.as_vec())
            .expect("both dim 2")
            .norm_sqr()
    }

    /// `Tr[rho Pi_{device,outcome}]` for a single-qubit density operator.
    pub fn probability_mixed(
        &self,
        rho: &HermMat,
        device: Device,
        outcome: Outcome,
    ) -> Result<f64> {
        rho.expectation(self.ket(device, outcome))
    }
}

/// Builds the measurement pair for `theta` in `[0, pi/2]`.
pub fn build_pair(theta: f64) -> Result<MeasurementPair> {
    check_theta(theta)?;
    let (s, c) = theta.sin_cos();
    let kets = [
        [CVec::from_real(&[1.0, 0.0])?, CVec::from_real(&[0.0, 1.0])?],
        [CVec::from_real(&[c, s])?, CVec::from_real(&[s, -c])?],
    ];
    let projectors = [
        [HermMat::outer(&kets[0][0]), HermMat::outer(&kets[0][1])],
        [HermMat::outer(&kets[1][0]), HermMat::outer(&kets[1][1])],
    ];
    Ok(MeasurementPair {
        theta,
        kets,
        projectors,
    })
}

/// `Tr[Pi_{A,0} Pi_{B,0}] = cos^2(theta)`.
pub fn overlap(pair: &MeasurementPair) -> f64 {
    pair.theta.cos().powi(2)
}

/// Best single-use probe and its success probability `(1 + sin(theta)) / 2`.
///
/// The probe is the top eigenvector of `Pi_{A,0} + Pi_{B,1}`; outcome 0 is
/// read as A and outcome 1 as B.
pub fn single_use_optimum(theta: f64) -> Result<(QubitState, f64)> {
    let pair = build_pair(theta)?;
    if theta == 0.0 {
        return Ok((QubitState::zero(), 0.5));
    }
    let m = pair
        .projector(Device::A, Outcome::ZERO)
        .add(pair.projector(Device::B, Outcome::ONE))?;
    let (_, v) = linalg::eig_max(&m)?;
    Ok((QubitState::new(v)?, 0.5 * (1.0 + theta.sin())))
}

/// Draws one uniform variate and returns outcome 0 with probability `p0`.
#[inline]
pub(crate) fn sample_bit<R: Rng + ?Sized>(p0: f64, rng: &mut R) -> Outcome {
    let u: f64 = rng.random();
    if u < p0 {
        Outcome::ZERO
    } else {
        Outcome::ONE
    }
}

/// Measures `state` with `device`, following the Born rule.
///
/// Consumes exactly one `f64` from `rng`.
pub fn born_sample<R: Rng + ?Sized>(
    state: &QubitState,
    device: Device,
    pair: &MeasurementPair,
    rng: &mut R,
) -> Result<Outcome> {
    let norm = state.as_vec().norm_sqr();
    if (norm - 1.0).abs() > linalg::NORM_TOL {
        return Err(Error::NotNormalized(norm));
    }
    Ok(sample_bit(
        pair.probability(state, device, Outcome::ZERO),
        rng,
    ))
}

/// Born-rule sample for a single-qubit density operator.
pub fn born_sample_mixed<R: Rng + ?Sized>(
    rho: &HermMat,
    device: Device,
    pair: &MeasurementPair,
    rng: &mut R,
) -> Result<Outcome> {
    let tr = rho.trace();
    if (tr - 1.0).abs() > linalg::NORM_TOL {
        return Err(Error::NotNormalized(tr));
    }
    Ok(sample_bit(
        pair.probability_mixed(rho, device, Outcome::ZERO)?,
        rng,
    ))
}
