//! Dense complex linear algebra for the two fixed dimensions used here:
//! single qubits (2) and qubit pairs (4).
//!
//! Two-qubit vectors and operators use the Kronecker ordering
//! `|00>, |01>, |10>, |11>` where the left factor is the first measured qubit.
//!
//! [`eig_max`] solves 2x2 problems in closed form and 4x4 problems with cyclic
//! Jacobi sweeps on a real symmetric matrix: the operator itself when all of
//! its entries are real, otherwise the 8x8 embedding `[[A, -B], [B, A]]` of
//! `H = A + iB`.

#![allow(clippy::needless_range_loop)]

use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;

/// Tolerance for the Hermiticity check in [`HermMat::new`].
pub const HERMITIAN_TOL: f64 = 1e-12;

/// Tolerance for unit-norm checks on state vectors.
pub const NORM_TOL: f64 = 1e-12;

/// Magnitude below which a component is skipped when fixing the phase.
pub const PHASE_PIVOT_TOL: f64 = 1e-9;

const JACOBI_OFF_TOL: f64 = 1e-13;
const JACOBI_MAX_SWEEPS: usize = 100;

const ZERO: C64 = C64 { re: 0.0, im: 0.0 };
const ONE: C64 = C64 { re: 1.0, im: 0.0 };

fn check_dim(dim: usize) -> Result<()> {
    match dim {
        2 | 4 => Ok(()),
        d => Err(Error::UnsupportedDimension(d)),
    }
}

/// Complex column vector of dimension 2 or 4.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CVec {
    dim: usize,
    amps: [C64; 4],
}

impl CVec {
    pub fn new(amps: &[C64]) -> Result<Self> {
        check_dim(amps.len())?;
        let mut buf = [ZERO; 4];
        buf[..amps.len()].copy_from_slice(amps);
        Ok(Self {
            dim: amps.len(),
            amps: buf,
        })
    }

    pub fn from_real(amps: &[f64]) -> Result<Self> {
        let c: Vec<C64> = amps.iter().map(|&x| C64::new(x, 0.0)).collect();
        Self::new(&c)
    }

    pub fn zeros(dim: usize) -> Result<Self> {
        check_dim(dim)?;
        Ok(Self {
            dim,
            amps: [ZERO; 4],
        })
    }

    /// Computational basis vector `|index>`.
    pub fn basis(dim: usize, index: usize) -> Result<Self> {
        let mut v = Self::zeros(dim)?;
        if index >= dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: index + 1,
            });
        }
        v.amps[index] = ONE;
        Ok(v)
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn as_slice(&self) -> &[C64] {
        &self.amps[..self.dim]
    }

    #[inline]
    pub fn get(&self, i: usize) -> C64 {
        self.as_slice()[i]
    }

    pub fn norm_sqr(&self) -> f64 {
        self.as_slice().iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn is_normalized(&self) -> bool {
        (self.norm_sqr() - 1.0).abs() <= NORM_TOL
    }

    /// Unit vector along `self`; `None` for the zero vector.
    pub fn normalized(&self) -> Option<Self> {
        let n = self.norm();
        if n == 0.0 || !n.is_finite() {
            return None;
        }
        Some(self.scale(C64::new(1.0 / n, 0.0)))
    }

    pub fn scale(&self, s: C64) -> Self {
        let mut out = *self;
        for a in &mut out.amps[..self.dim] {
            *a *= s;
        }
        out
    }

    /// `<self|other>`, conjugate-linear in `self`.
    pub fn inner(&self, other: &CVec) -> Result<C64> {
        same_dim(self.dim, other.dim)?;
        Ok(self
            .as_slice()
            .iter()
            .zip(other.as_slice())
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// Rotates the global phase so the first component with modulus above
    /// [`PHASE_PIVOT_TOL`] is real and positive. Applying it twice is a no-op.
    pub fn with_phase_convention(&self) -> Self {
        let Some(pivot) = self.as_slice().iter().find(|a| a.norm() > PHASE_PIVOT_TOL) else {
            return *self;
        };
        if pivot.im == 0.0 && pivot.re > 0.0 {
            return *self;
        }
        let phase = pivot.conj() / pivot.norm();
        let mut out = self.scale(phase);
        for a in &mut out.amps[..self.dim] {
            if a.norm() > PHASE_PIVOT_TOL {
                a.im = 0.0;
                break;
            }
        }
        out
    }

    /// Smallest `min_phase |self - e^{i phase} other|`.
    pub fn distance_up_to_phase(&self, other: &CVec) -> Result<f64> {
        let ip = self.inner(other)?;
        let phase = if ip.norm() > 0.0 { ip / ip.norm() } else { ONE };
        let aligned = other.scale(phase.conj());
        Ok(self
            .as_slice()
            .iter()
            .zip(aligned.as_slice())
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt())
    }
}

fn same_dim(a: usize, b: usize) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Error::DimensionMismatch {
            expected: a,
            found: b,
        })
    }
}

/// General square complex matrix of dimension 2 or 4.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CMat {
    dim: usize,
    m: [[C64; 4]; 4],
}

impl CMat {
    pub fn zeros(dim: usize) -> Result<Self> {
        check_dim(dim)?;
        Ok(Self {
            dim,
            m: [[ZERO; 4]; 4],
        })
    }

    pub fn identity(dim: usize) -> Result<Self> {
        let mut out = Self::zeros(dim)?;
        for i in 0..dim {
            out.m[i][i] = ONE;
        }
        Ok(out)
    }

    pub fn from_rows(rows: &[&[C64]]) -> Result<Self> {
        let dim = rows.len();
        let mut out = Self::zeros(dim)?;
        for (i, row) in rows.iter().enumerate() {
            same_dim(dim, row.len())?;
            out.m[i][..dim].copy_from_slice(row);
        }
        Ok(out)
    }

    pub fn from_real_rows(rows: &[&[f64]]) -> Result<Self> {
        let dim = rows.len();
        let mut out = Self::zeros(dim)?;
        for (i, row) in rows.iter().enumerate() {
            same_dim(dim, row.len())?;
            for (j, &x) in row.iter().enumerate() {
                out.m[i][j] = C64::new(x, 0.0);
            }
        }
        Ok(out)
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> C64 {
        debug_assert!(i < self.dim && j < self.dim);
        self.m[i][j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: C64) {
        debug_assert!(i < self.dim && j < self.dim);
        self.m[i][j] = v;
    }

    pub fn adjoint(&self) -> Self {
        let mut out = *self;
        for i in 0..self.dim {
            for j in 0..self.dim {
                out.m[i][j] = self.m[j][i].conj();
            }
        }
        out
    }

    pub fn mul(&self, other: &CMat) -> Result<Self> {
        same_dim(self.dim, other.dim)?;
        let n = self.dim;
        let mut out = Self::zeros(n)?;
        for i in 0..n {
            for k in 0..n {
                let a = self.m[i][k];
                if a == ZERO {
                    continue;
                }
                for j in 0..n {
                    out.m[i][j] += a * other.m[k][j];
                }
            }
        }
        Ok(out)
    }

    pub fn apply(&self, v: &CVec) -> Result<CVec> {
        same_dim(self.dim, v.dim)?;
        let mut out = CVec::zeros(self.dim)?;
        for i in 0..self.dim {
            out.amps[i] = (0..self.dim).map(|j| self.m[i][j] * v.amps[j]).sum();
        }
        Ok(out)
    }

    pub fn trace(&self) -> C64 {
        (0..self.dim).map(|i| self.m[i][i]).sum()
    }

    /// Largest entrywise deviation from `other`.
    pub fn max_abs_diff(&self, other: &CMat) -> Result<f64> {
        same_dim(self.dim, other.dim)?;
        let mut worst = 0.0f64;
        for i in 0..self.dim {
            for j in 0..self.dim {
                worst = worst.max((self.m[i][j] - other.m[i][j]).norm());
            }
        }
        Ok(worst)
    }

    /// `||U^dagger U - I||_max`.
    pub fn unitarity_defect(&self) -> f64 {
        let prod = self
            .adjoint()
            .mul(self)
            .expect("adjoint has the same dimension");
        prod.max_abs_diff(&Self::identity(self.dim).expect("valid dimension"))
            .expect("same dimension")
    }

    /// `self^dagger * h * self`, which is Hermitian whenever `h` is.
    pub fn conjugate_hermitian(&self, h: &HermMat) -> Result<HermMat> {
        let inner = h.as_cmat().mul(self)?;
        let out = self.adjoint().mul(&inner)?;
        Ok(HermMat::from_cmat_unchecked(out).symmetrized())
    }
}

/// Hermitian matrix of dimension 2 or 4.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HermMat(CMat);

impl HermMat {
    /// Validates Hermiticity within [`HERMITIAN_TOL`].
    pub fn new(m: CMat) -> Result<Self> {
        let n = m.dim;
        for i in 0..n {
            for j in i..n {
                let deviation = (m.m[i][j] - m.m[j][i].conj()).norm();
                if deviation > HERMITIAN_TOL {
                    return Err(Error::NotHermitian {
                        row: i,
                        col: j,
                        deviation,
                    });
                }
            }
        }
        Ok(Self(m))
    }

    pub fn from_real_rows(rows: &[&[f64]]) -> Result<Self> {
        Self::new(CMat::from_real_rows(rows)?)
    }

    pub(crate) fn from_cmat_unchecked(m: CMat) -> Self {
        Self(m)
    }

    pub fn zeros(dim: usize) -> Result<Self> {
        Ok(Self(CMat::zeros(dim)?))
    }

    pub fn identity(dim: usize) -> Result<Self> {
        Ok(Self(CMat::identity(dim)?))
    }

    pub fn diag(entries: &[f64]) -> Result<Self> {
        let mut m = CMat::zeros(entries.len())?;
        for (i, &x) in entries.iter().enumerate() {
            m.m[i][i] = C64::new(x, 0.0);
        }
        Ok(Self(m))
    }

    /// Rank-one projector `|v><v|` (not normalized by `|v|^2`).
    pub fn outer(v: &CVec) -> Self {
        let n = v.dim;
        let mut m = CMat {
            dim: n,
            m: [[ZERO; 4]; 4],
        };
        for i in 0..n {
            for j in 0..n {
                m.m[i][j] = v.amps[i] * v.amps[j].conj();
            }
        }
        Self(m)
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.0.dim
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> C64 {
        self.0.get(i, j)
    }

    #[inline]
    pub fn as_cmat(&self) -> &CMat {
        &self.0
    }

    pub fn add(&self, other: &HermMat) -> Result<Self> {
        same_dim(self.dim(), other.dim())?;
        let mut out = self.0;
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                out.m[i][j] += other.0.m[i][j];
            }
        }
        Ok(Self(out))
    }

    pub fn scale(&self, s: f64) -> Self {
        let mut out = self.0;
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                out.m[i][j] *= s;
            }
        }
        Self(out)
    }

    pub fn mul(&self, other: &HermMat) -> Result<CMat> {
        self.0.mul(&other.0)
    }

    pub fn apply(&self, v: &CVec) -> Result<CVec> {
        self.0.apply(v)
    }

    /// Real part of the trace; the imaginary part of a Hermitian trace is zero.
    pub fn trace(&self) -> f64 {
        self.0.trace().re
    }

    /// `<v|self|v>`.
    pub fn expectation(&self, v: &CVec) -> Result<f64> {
        Ok(v.inner(&self.apply(v)?)?.re)
    }

    /// `Tr[self * other]`.
    pub fn trace_product(&self, other: &HermMat) -> Result<f64> {
        same_dim(self.dim(), other.dim())?;
        let n = self.dim();
        let mut acc = ZERO;
        for i in 0..n {
            for j in 0..n {
                acc += self.0.m[i][j] * other.0.m[j][i];
            }
        }
        Ok(acc.re)
    }

    pub fn max_abs_diff(&self, other: &HermMat) -> Result<f64> {
        self.0.max_abs_diff(&other.0)
    }

    /// Averages each entry with the conjugate of its mirror to remove
    /// rounding asymmetry.
    pub(crate) fn symmetrized(&self) -> Self {
        let mut out = self.0;
        let n = self.dim();
        for i in 0..n {
            out.m[i][i].im = 0.0;
            for j in (i + 1)..n {
                let avg = (self.0.m[i][j] + self.0.m[j][i].conj()) * 0.5;
                out.m[i][j] = avg;
                out.m[j][i] = avg.conj();
            }
        }
        Self(out)
    }

    fn is_real(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| (0..n).all(|j| self.0.m[i][j].im == 0.0))
    }
}

/// Kronecker product `a (x) b` of two single-qubit vectors.
pub fn tensor(a: &CVec, b: &CVec) -> Result<CVec> {
    same_dim(2, a.dim)?;
    same_dim(2, b.dim)?;
    let mut out = CVec::zeros(4)?;
    for i in 0..2 {
        for j in 0..2 {
            out.amps[2 * i + j] = a.amps[i] * b.amps[j];
        }
    }
    Ok(out)
}

/// Kronecker product `p (x) q` of two single-qubit operators.
pub fn tensor_op(p: &HermMat, q: &HermMat) -> Result<HermMat> {
    Ok(HermMat(tensor_cmat(&p.0, &q.0)?))
}

pub fn tensor_cmat(p: &CMat, q: &CMat) -> Result<CMat> {
    same_dim(2, p.dim)?;
    same_dim(2, q.dim)?;
    let mut out = CMat::zeros(4)?;
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                for l in 0..2 {
                    out.m[2 * i + k][2 * j + l] = p.m[i][j] * q.m[k][l];
                }
            }
        }
    }
    Ok(out)
}

/// Largest eigenvalue of a Hermitian matrix with a unit eigenvector in the
/// phase convention of [`CVec::with_phase_convention`].
///
/// When the top eigenvalue is degenerate any vector of the top eigenspace may
/// be returned.
pub fn eig_max(m: &HermMat) -> Result<(f64, CVec)> {
    // Re-validate: `HermMat` values built through crate-internal paths skip it.
    let m = HermMat::new(m.0)?;
    let (lambda, v) = match m.dim() {
        2 => eig_max_2x2(&m),
        4 if m.is_real() => eig_max_real4(&m),
        4 => eig_max_embedded(&m),
        d => return Err(Error::UnsupportedDimension(d)),
    };
    Ok((lambda, v.with_phase_convention()))
}

/// Both eigenvalues of a 2x2 Hermitian matrix, descending.
pub fn eigvals_2x2(m: &HermMat) -> Result<(f64, f64)> {
    same_dim(2, m.dim())?;
    let a = m.get(0, 0).re;
    let d = m.get(1, 1).re;
    let b = m.get(0, 1);
    let mean = 0.5 * (a + d);
    let radius = (0.25 * (a - d) * (a - d) + b.norm_sqr()).sqrt();
    Ok((mean + radius, mean - radius))
}

fn eig_max_2x2(m: &HermMat) -> (f64, CVec) {
    let a = m.get(0, 0).re;
    let d = m.get(1, 1).re;
    let b = m.get(0, 1);
    let (lambda, _) = eigvals_2x2(m).expect("dimension checked by caller");
    // Of the two candidate null vectors of (m - lambda I), take the one built
    // from the larger diagonal gap.
    let (x, y) = if a >= d {
        (C64::new(lambda - d, 0.0), b.conj())
    } else {
        (b, C64::new(lambda - a, 0.0))
    };
    let norm = (x.norm_sqr() + y.norm_sqr()).sqrt();
    let v = if norm > 0.0 {
        CVec {
            dim: 2,
            amps: [x / norm, y / norm, ZERO, ZERO],
        }
    } else {
        // Scalar matrix: every vector is an eigenvector.
        CVec::basis(2, 0).expect("valid basis index")
    };
    (lambda, v)
}

fn eig_max_real4(m: &HermMat) -> (f64, CVec) {
    let mut a = [[0.0; 8]; 8];
    for (i, row) in a.iter_mut().enumerate().take(4) {
        for (j, x) in row.iter_mut().enumerate().take(4) {
            *x = m.get(i, j).re;
        }
    }
    let (lambda, col) = jacobi_top(&mut a, 4);
    let mut v = CVec::zeros(4).expect("valid dimension");
    for i in 0..4 {
        v.amps[i] = C64::new(col[i], 0.0);
    }
    (lambda, v)
}

fn eig_max_embedded(m: &HermMat) -> (f64, CVec) {
    let mut a = [[0.0; 8]; 8];
    for i in 0..4 {
        for j in 0..4 {
            let z = m.get(i, j);
            a[i][j] = z.re;
            a[i + 4][j + 4] = z.re;
            a[i][j + 4] = -z.im;
            a[i + 4][j] = z.im;
        }
    }
    let (lambda, col) = jacobi_top(&mut a, 8);
    // (u, w) eigenvector of the embedding maps to u + i w; every vector of
    // the embedded top eigenspace maps to a top eigenvector of `m`.
    let mut v = CVec::zeros(4).expect("valid dimension");
    for i in 0..4 {
        v.amps[i] = C64::new(col[i], col[i + 4]);
    }
    let v = v.normalized().expect("eigenvector has unit norm");
    (lambda, v)
}

/// Largest eigenvalue of a 4x4 Hermitian matrix from its characteristic
/// polynomial, by Newton iteration from an upper bound.
///
/// About 20x cheaper than [`eig_max`] and meant for screening large parameter
/// grids. Accurate to roughly 1e-12 when the top eigenvalue is well separated;
/// a near-degenerate top pair can cost up to ~1e-8. Does not validate input.
pub fn top_eigenvalue_estimate(m: &HermMat) -> f64 {
    debug_assert_eq!(m.dim(), 4);
    top_eigenvalue_estimate_raw(&m.0.m)
}

pub(crate) fn top_eigenvalue_estimate_raw(a: &[[C64; 4]; 4]) -> f64 {
    let shift = 0.25 * (a[0][0].re + a[1][1].re + a[2][2].re + a[3][3].re);
    let mut h = [[ZERO; 4]; 4];
    for i in 0..4 {
        h[i] = a[i];
        h[i][i].re -= shift;
        h[i][i].im = 0.0;
    }
    let mut h2 = [[ZERO; 4]; 4];
    for i in 0..4 {
        for k in 0..4 {
            let hik = h[i][k];
            for j in 0..4 {
                h2[i][j] += hik * h[k][j];
            }
        }
    }
    // Power sums of the traceless shifted matrix.
    let mut p2 = 0.0;
    let mut p3 = 0.0;
    let mut p4 = 0.0;
    for i in 0..4 {
        p2 += h2[i][i].re;
        for j in 0..4 {
            p3 += (h2[i][j] * h[j][i]).re;
            p4 += h2[i][j].norm_sqr();
        }
    }
    // Newton identities with e1 = 0.
    let e2 = -0.5 * p2;
    let e3 = p3 / 3.0;
    let e4 = (-e2 * p2 - p4) / 4.0;
    let chi = |x: f64| (((x * x + e2) * x - e3) * x) + e4;
    let dchi = |x: f64| (4.0 * x * x + 2.0 * e2) * x - e3;
    // For a traceless 4x4 matrix, lambda_max <= sqrt(3/4 * sum lambda^2).
    let mut x = (0.75 * p2).max(0.0).sqrt() * (1.0 + 1e-12) + 1e-300;
    for _ in 0..200 {
        let d = dchi(x);
        if d <= 0.0 {
            break;
        }
        let step = chi(x) / d;
        if step <= 0.0 || !step.is_finite() {
            break;
        }
        x -= step;
        if step <= 1e-16 * x.abs().max(1e-300) {
            break;
        }
    }
    x + shift
}

/// Cyclic Jacobi on the leading `n x n` block of a real symmetric matrix.
/// Returns the largest eigenvalue and its eigenvector.
fn jacobi_top(a: &mut [[f64; 8]; 8], n: usize) -> (f64, [f64; 8]) {
    let mut v = [[0.0; 8]; 8];
    for (i, row) in v.iter_mut().enumerate().take(n) {
        row[i] = 1.0;
    }
    for _ in 0..JACOBI_MAX_SWEEPS {
        let mut off = 0.0;
        for p in 0..n {
            for q in (p + 1)..n {
                off += 2.0 * a[p][q] * a[p][q];
            }
        }
        if off.sqrt() <= JACOBI_OFF_TOL {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[p][q];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[k][p];
                    let akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p][k];
                    let aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
                for row in v.iter_mut().take(n) {
                    let vp = row[p];
                    let vq = row[q];
                    row[p] = c * vp - s * vq;
                    row[q] = s * vp + c * vq;
                }
            }
        }
    }
    let top = (0..n)
        .max_by(|&i, &j| a[i][i].total_cmp(&a[j][j]))
        .expect("n > 0");
    let mut col = [0.0; 8];
    for i in 0..n {
        col[i] = v[i][top];
    }
    (a[top][top], col)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_1_SQRT_2, PI};

    #[test]
    fn estimate_tracks_jacobi_on_random_hermitian() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..500 {
            let mut m = CMat::zeros(4).unwrap();
            for i in 0..4 {
                m.set(i, i, C64::new(rng.random_range(-1.0..1.0), 0.0));
                for j in i + 1..4 {
                    let z = C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
                    m.set(i, j, z);
                    m.set(j, i, z.conj());
                }
            }
            let h = HermMat::new(m).unwrap();
            let exact = eig_max(&h).unwrap().0;
            assert!((top_eigenvalue_estimate(&h) - exact).abs() < 1e-9);
        }
    }

    #[test]
    fn estimate_handles_degenerate_top() {
        let h = HermMat::diag(&[1.0, 1.0, 0.25, 0.0]).unwrap();
        assert!((top_eigenvalue_estimate(&h) - 1.0).abs() < 1e-7);
        let z = HermMat::zeros(4).unwrap();
        assert!(top_eigenvalue_estimate(&z).abs() < 1e-12);
    }

    fn residual(m: &HermMat, lambda: f64, v: &CVec) -> f64 {
        let mv = m.apply(v).unwrap();
        mv.as_slice()
            .iter()
            .zip(v.as_slice())
            .map(|(a, b)| (a - b * lambda).norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    #[test]
    fn identity_has_unit_top_eigenvalue() {
        let (l, v) = eig_max(&HermMat::identity(2).unwrap()).unwrap();
        assert_eq!(l, 1.0);
        assert!(v.is_normalized());
        assert!(v.get(0).re > 0.0 && v.get(0).im == 0.0);
    }

    #[test]
    fn diagonal_top_vector_is_second_basis_vector() {
        let m = HermMat::diag(&[0.25, 0.75]).unwrap();
        let (l, v) = eig_max(&m).unwrap();
        assert!((l - 0.75).abs() < 1e-15);
        assert_eq!(v.get(0), ZERO);
        assert_eq!(v.get(1), ONE);
    }

    #[test]
    fn projector_sum_top_eigenvalue() {
        // Pi_{A,0} + Pi_{B,1} at theta = pi/6 has eigenvalues 1 +- sin(theta).
        let t = PI / 6.0;
        let a0 = HermMat::from_real_rows(&[&[1.0, 0.0], &[0.0, 0.0]]).unwrap();
        let perp = CVec::from_real(&[t.sin(), -t.cos()]).unwrap();
        let m = a0.add(&HermMat::outer(&perp)).unwrap();
        let (l, v) = eig_max(&m).unwrap();
        assert!((l - 1.5).abs() < 1e-12);
        assert!(residual(&m, l, &v) < 1e-10);
    }

    #[test]
    fn non_hermitian_input_is_rejected() {
        let m = CMat::from_rows(&[&[ONE, C64::new(0.0, 1.0)], &[C64::new(0.0, 1.0), ONE]]).unwrap();
        let bad = HermMat::from_cmat_unchecked(m);
        assert!(matches!(eig_max(&bad), Err(Error::NotHermitian { .. })));
        assert!(HermMat::new(m).is_err());
    }

    #[test]
    fn tensor_examples() {
        let e0 = CVec::basis(2, 0).unwrap();
        let e1 = CVec::basis(2, 1).unwrap();
        assert_eq!(
            tensor(&e0, &e0).unwrap(),
            CVec::from_real(&[1.0, 0.0, 0.0, 0.0]).unwrap()
        );
        assert_eq!(
            tensor(&e1, &e0).unwrap(),
            CVec::from_real(&[0.0, 0.0, 1.0, 0.0]).unwrap()
        );
        let plus = CVec::from_real(&[FRAC_1_SQRT_2, FRAC_1_SQRT_2]).unwrap();
        let minus = CVec::from_real(&[FRAC_1_SQRT_2, -FRAC_1_SQRT_2]).unwrap();
        let pm = tensor(&plus, &minus).unwrap();
        for (got, want) in pm.as_slice().iter().zip([0.5, -0.5, 0.5, -0.5]) {
            assert!((got.re - want).abs() < 1e-15 && got.im == 0.0);
        }
    }

    #[test]
    fn tensor_rejects_wrong_dimension() {
        let e = CVec::basis(4, 0).unwrap();
        let q = CVec::basis(2, 0).unwrap();
        assert!(matches!(
            tensor(&e, &q),
            Err(Error::DimensionMismatch { .. })
        ));
        let p4 = HermMat::identity(4).unwrap();
        let p2 = HermMat::identity(2).unwrap();
        assert!(tensor_op(&p4, &p2).is_err());
    }

    #[test]
    fn tensor_op_matches_vector_kronecker() {
        let a = CVec::from_real(&[0.6, 0.8]).unwrap();
        let b = CVec::new(&[C64::new(0.0, 1.0), ZERO]).unwrap();
        let lhs = tensor_op(&HermMat::outer(&a), &HermMat::outer(&b)).unwrap();
        let rhs = HermMat::outer(&tensor(&a, &b).unwrap());
        assert!(lhs.max_abs_diff(&rhs).unwrap() < 1e-15);
    }

    #[test]
    fn complex_4x4_uses_embedding() {
        // diag(1, 2, 3, 4) rotated by a complex unitary: top eigenvalue 4.
        let d = HermMat::diag(&[1.0, 2.0, 3.0, 4.0]).unwrap();
        let h = C64::new(FRAC_1_SQRT_2, 0.0);
        let hi = C64::new(0.0, FRAC_1_SQRT_2);
        let u2 = CMat::from_rows(&[&[h, hi], &[hi, h]]).unwrap();
        let u = tensor_cmat(&u2, &u2).unwrap();
        let m = u.conjugate_hermitian(&d).unwrap();
        let (l, v) = eig_max(&m).unwrap();
        assert!((l - 4.0).abs() < 1e-12);
        assert!(residual(&m, l, &v) < 1e-10);
        assert!(v.is_normalized());
    }

    #[test]
    fn degenerate_top_space_returns_member() {
        let m = HermMat::diag(&[2.0, 2.0, 1.0, 0.0]).unwrap();
        let (l, v) = eig_max(&m).unwrap();
        assert!((l - 2.0).abs() < 1e-15);
        assert!(residual(&m, l, &v) < 1e-12);
    }

    #[test]
    fn phase_convention_skips_tiny_leading_entries() {
        let v = CVec::new(&[C64::new(1e-12, 0.0), C64::new(0.0, -1.0)]).unwrap();
        let w = v.with_phase_convention();
        assert!(w.get(1).re > 0.0);
        assert_eq!(w.get(1).im, 0.0);
    }
}
