//! Optimal two-copy discrimination of single-qubit projective measurements.
//!
//! Two measurement devices are given: `A` measures in the computational basis
//! and `B` in a basis rotated by `theta`. Each device may be used twice and
//! the task is to guess which one is present. The crate computes the best
//! strategies of increasing power (fixed probes, adaptive probes, entangled
//! probe, entangled probe with feed-forward) both in closed form and by
//! numerical eigenvalue maximization, verifies them against a brute-force
//! [`oracle`], and simulates the experiment in [`simulate`].
//!
//! ```
//! use discrim::measurements::build_pair;
//! use discrim::strategies::optimize_feedforward;
//!
//! let pair = build_pair(std::f64::consts::FRAC_PI_3).unwrap();
//! let best = optimize_feedforward(&pair);
//! assert_eq!(best.p_succ, 1.0);
//! ```

pub mod cli;
pub mod error;
pub mod linalg;
pub mod measurements;
pub mod oracle;
pub mod search;
pub mod simulate;
pub mod state;
pub mod strategies;
pub mod sweep;

pub use error::{Error, Result};
pub use measurements::{build_pair, Device, MeasurementPair, Outcome};
pub use state::{QubitState, TwoQubitState};
pub use strategies::{GuessFunction, Probes, Strategy, StrategyResult};
