//! Normalized probe states.

use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::{self, CMat, CVec, HermMat, C64};

/// Unit-norm single-qubit state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QubitState(CVec);

impl QubitState {
    /// Wraps a vector that must already be a unit 2-vector.
    pub fn new(v: CVec) -> Result<Self> {
        if v.dim() != 2 {
            return Err(Error::DimensionMismatch {
                expected: 2,
                found: v.dim(),
            });
        }
        if !v.is_normalized() {
            return Err(Error::NotNormalized(v.norm_sqr()));
        }
        Ok(Self(v))
    }

    /// Normalizes `v` and applies the global-phase convention.
    pub fn from_unnormalized(v: CVec) -> Result<Self> {
        let n = v.normalized().ok_or(Error::NotNormalized(0.0))?;
        Self::new(n.with_phase_convention())
    }

    /// `cos(phi)|0> + sin(phi)|1>`, a state in the real plane of the Bloch sphere.
    pub fn from_angle(phi: f64) -> Self {
        Self(CVec::from_real(&[phi.cos(), phi.sin()]).expect("dim 2"))
    }

    /// `cos(phi)|0> + e^{i chi} sin(phi)|1>`.
    pub fn from_angle_phase(phi: f64, chi: f64) -> Self {
        Self(
            CVec::new(&[C64::new(phi.cos(), 0.0), C64::from_polar(phi.sin(), chi)]).expect("dim 2"),
        )
    }

    pub fn zero() -> Self {
        Self::from_angle(0.0)
    }

    pub fn as_vec(&self) -> &CVec {
        &self.0
    }

    pub fn amplitude(&self, i: usize) -> C64 {
        self.0.get(i)
    }

    /// Angle `phi` in `(-pi/2, pi/2]` with the state equal to
    /// `cos(phi)|0> + sin(phi)|1>` up to sign. Meaningful for real states.
    pub fn real_angle(&self) -> f64 {
        let a = self.0.get(0).re;
        let b = self.0.get(1).re;
        let phi = b.atan2(a);
        if phi > std::f64::consts::FRAC_PI_2 {
            phi - std::f64::consts::PI
        } else if phi <= -std::f64::consts::FRAC_PI_2 {
            phi + std::f64::consts::PI
        } else {
            phi
        }
    }

    /// `<psi|m|psi>`.
    pub fn expectation(&self, m: &HermMat) -> Result<f64> {
        m.expectation(&self.0)
    }

    pub fn density(&self) -> HermMat {
        HermMat::outer(&self.0)
    }

    pub fn apply(&self, u: &CMat) -> Result<Self> {
        Self::new(u.apply(&self.0)?)
    }
}

/// Six-decimal amplitude; the imaginary part is shown only when nonzero.
fn amp(z: C64) -> String {
    let clean = |x: f64| if x.abs() < 5e-7 { 0.0 } else { x };
    let (re, im) = (clean(z.re), clean(z.im));
    if im == 0.0 {
        format!("{re:.6}")
    } else {
        let sign = if im < 0.0 { '-' } else { '+' };
        format!("({re:.6}{sign}{:.6}i)", im.abs())
    }
}

impl fmt::Display for QubitState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}|0> + {}|1>", amp(self.0.get(0)), amp(self.0.get(1)))
    }
}

/// Unit-norm two-qubit state in the `|00>, |01>, |10>, |11>` basis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoQubitState(CVec);

impl TwoQubitState {
    pub fn new(v: CVec) -> Result<Self> {
        if v.dim() != 4 {
            return Err(Error::DimensionMismatch {
                expected: 4,
                found: v.dim(),
            });
        }
        if !v.is_normalized() {
            return Err(Error::NotNormalized(v.norm_sqr()));
        }
        Ok(Self(v))
    }

    /// Normalizes `v` and applies the global-phase convention.
    pub fn from_unnormalized(v: CVec) -> Result<Self> {
        let n = v.normalized().ok_or(Error::NotNormalized(0.0))?;
        Self::new(n.with_phase_convention())
    }

    /// Real amplitudes `[c00, c01, c10, c11]`, normalized.
    pub fn from_real_amplitudes(amps: [f64; 4]) -> Result<Self> {
        Self::from_unnormalized(CVec::from_real(&amps)?)
    }

    pub fn product(a: &QubitState, b: &QubitState) -> Self {
        Self(linalg::tensor(&a.0, &b.0).expect("both factors have dim 2"))
    }

    pub fn as_vec(&self) -> &CVec {
        &self.0
    }

    pub fn amplitude(&self, i: usize) -> C64 {
        self.0.get(i)
    }

    pub fn density(&self) -> HermMat {
        HermMat::outer(&self.0)
    }

    pub fn expectation(&self, m: &HermMat) -> Result<f64> {
        m.expectation(&self.0)
    }

    /// Reduced density matrix of the first (`keep_first = true`) or second qubit.
    pub fn reduced(&self, keep_first: bool) -> HermMat {
        let mut m = CMat::zeros(2).expect("dim 2");
        for i in 0..2 {
            for j in 0..2 {
                let mut acc = C64::new(0.0, 0.0);
                for k in 0..2 {
                    let (a, b) = if keep_first {
                        (2 * i + k, 2 * j + k)
                    } else {
                        (2 * k + i, 2 * k + j)
                    };
                    acc += self.0.get(a) * self.0.get(b).conj();
                }
                m.set(i, j, acc);
            }
        }
        HermMat::from_cmat_unchecked(m).symmetrized()
    }
}

impl fmt::Display for TwoQubitState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels = ["00", "01", "10", "11"];
        let terms: Vec<String> = labels
            .iter()
            .enumerate()
            .map(|(i, l)| format!("{}|{l}>", amp(self.0.get(i))))
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}
