//! Brute-force reference optimizers.
//!
//! Everything here is rebuilt from the measurement angle: the kets, the
//! success sums and the search. Nothing is shared with [`crate::strategies`]
//! except the guess-function encoding and the general eigen-solver, so a bug
//! in the operator shortcuts there shows up as a disagreement here.

use std::f64::consts::{PI, TAU};

use crate::error::{Error, Result};
use crate::linalg::{self, CMat, CVec, HermMat, C64};
use crate::measurements::{Device, MeasurementPair, Outcome};
use crate::state::TwoQubitState;
use crate::strategies::GuessFunction;

/// Smallest grid accepted by the single-qubit scans.
pub const MIN_PROBE_GRID: usize = 360;
/// Smallest Euler grid accepted by [`brute_force_feedforward`].
pub const MIN_EULER_GRID: usize = 4;

const ZOOM_POINTS: usize = 41;
const ZOOM_TOL: f64 = 1e-11;
const COMPASS_TOL: f64 = 1e-7;
/// Feed-forward grid winners trailing the leader by more than this are not refined.
const COMPASS_WINDOW: f64 = 0.02;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FixedOptimum {
    pub p_succ: f64,
    /// Real angle of the first probe, radians.
    pub phi_first: f64,
    /// Real angle of the second probe, radians.
    pub phi_second: f64,
    pub guess: GuessFunction,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AdaptiveOptimum {
    pub p_succ: f64,
    pub phi_first: f64,
    /// Second-probe angles after `x = 0` and `x = 1`.
    pub phi_second: [f64; 2],
    pub guess: GuessFunction,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EntangledOptimum {
    pub p_succ: f64,
    pub state: TwoQubitState,
    pub guess: GuessFunction,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FeedForwardOptimum {
    pub p_succ: f64,
    /// Correction applied to the second qubit after `x = 1`.
    pub unitary: CMat,
    pub state: TwoQubitState,
    pub guess: GuessFunction,
    /// Z-Y-Z Euler angles of `unitary`.
    pub euler: [f64; 3],
}

/// Real measurement kets `[device][outcome]`.
fn kets(theta: f64) -> [[[f64; 2]; 2]; 2] {
    let (s, c) = theta.sin_cos();
    [[[1.0, 0.0], [0.0, 1.0]], [[c, s], [s, -c]]]
}

fn dev(d: Device) -> usize {
    match d {
        Device::A => 0,
        Device::B => 1,
    }
}

/// `guess[x][y]` as ket-table indices.
fn guess_table(f: GuessFunction) -> [[usize; 2]; 2] {
    let mut t = [[0; 2]; 2];
    for x in Outcome::BOTH {
        for y in Outcome::BOTH {
            t[x.index()][y.index()] = dev(f.guess(x, y));
        }
    }
    t
}

/// Born probabilities `[device][outcome]` for the real probe at angle `phi`.
fn born_real(k: &[[[f64; 2]; 2]; 2], phi: f64) -> [[f64; 2]; 2] {
    let (s, c) = phi.sin_cos();
    let mut out = [[0.0; 2]; 2];
    for d in 0..2 {
        for x in 0..2 {
            let a = k[d][x][0] * c + k[d][x][1] * s;
            out[d][x] = a * a;
        }
    }
    out
}

fn check_grid(grid_n: usize, min: usize) -> Result<()> {
    if grid_n < min {
        return Err(Error::InvalidArgument(format!(
            "grid needs at least {min} points, got {grid_n}"
        )));
    }
    Ok(())
}

/// Exhaustive scan over both real probe angles and all 16 guess functions.
pub fn brute_force_fixed(pair: &MeasurementPair, grid_n: usize) -> Result<FixedOptimum> {
    check_grid(grid_n, MIN_PROBE_GRID)?;
    let k = kets(pair.theta());
    let tables: Vec<(GuessFunction, [[usize; 2]; 2])> =
        GuessFunction::all().map(|f| (f, guess_table(f))).collect();
    let born: Vec<[[f64; 2]; 2]> = (0..grid_n)
        .map(|i| born_real(&k, TAU * i as f64 / grid_n as f64))
        .collect();
    let mut best = (f64::NEG_INFINITY, 0, 0, tables[0].0);
    for (i, t1) in born.iter().enumerate() {
        for (j, t2) in born.iter().enumerate() {
            // joint[d][x][y] = Pr(x, y | d) with both probes independent.
            let mut joint = [[[0.0; 2]; 2]; 2];
            for d in 0..2 {
                for x in 0..2 {
                    for y in 0..2 {
                        joint[d][x][y] = t1[d][x] * t2[d][y];
                    }
                }
            }
            for (f, g) in &tables {
                let mut p = 0.0;
                for x in 0..2 {
                    for y in 0..2 {
                        p += joint[g[x][y]][x][y];
                    }
                }
                let p = 0.5 * p;
                if p > best.0 {
                    best = (p, i, j, *f);
                }
            }
        }
    }
    let angle = |i: usize| TAU * i as f64 / grid_n as f64;
    Ok(FixedOptimum {
        p_succ: best.0,
        phi_first: angle(best.1),
        phi_second: angle(best.2),
        guess: best.3,
    })
}

/// Top eigenvalue and eigenvector angle of the real symmetric `[[a, b], [b, c]]`.
fn top_real_2x2(a: f64, b: f64, c: f64) -> (f64, f64) {
    let mean = 0.5 * (a + c);
    let half = 0.5 * (a - c);
    let lambda = mean + half.hypot(b);
    (lambda, 0.5 * (2.0 * b).atan2(a - c))
}

/// Best adaptive value for a fixed first-probe angle: `(p, phi_II0, phi_II1, f)`.
fn adaptive_at(k: &[[[f64; 2]; 2]; 2], phi: f64) -> (f64, [f64; 2], GuessFunction) {
    let t = born_real(k, phi);
    let mut best = (
        f64::NEG_INFINITY,
        [0.0; 2],
        GuessFunction::all().next().unwrap(),
    );
    for f in GuessFunction::all() {
        let g = guess_table(f);
        let mut p = 0.0;
        let mut angles = [0.0; 2];
        for x in 0..2 {
            // R_x = sum_y Pr(x | d) |k_{d,y}><k_{d,y}| with d = f(x, y).
            let (mut a, mut b, mut c) = (0.0, 0.0, 0.0);
            for y in 0..2 {
                let d = g[x][y];
                let w = t[d][x];
                let v = k[d][y];
                a += w * v[0] * v[0];
                b += w * v[0] * v[1];
                c += w * v[1] * v[1];
            }
            let (l, ang) = top_real_2x2(a, b, c);
            p += l;
            angles[x] = ang;
        }
        let p = 0.5 * p;
        if p > best.0 {
            best = (p, angles, f);
        }
    }
    best
}

/// First-probe grid scan with exact second-probe eigen-solves, then repeated
/// zooming on the winning cell.
pub fn brute_force_adaptive(pair: &MeasurementPair, grid_n: usize) -> Result<AdaptiveOptimum> {
    check_grid(grid_n, MIN_PROBE_GRID)?;
    let k = kets(pair.theta());
    let mut best_phi = 0.0;
    let mut best = adaptive_at(&k, 0.0);
    for i in 1..grid_n {
        let phi = TAU * i as f64 / grid_n as f64;
        let cand = adaptive_at(&k, phi);
        if cand.0 > best.0 {
            best = cand;
            best_phi = phi;
        }
    }
    let mut half_width = TAU / grid_n as f64;
    while half_width > ZOOM_TOL {
        let centre = best_phi;
        for i in 0..ZOOM_POINTS {
            let phi = centre - half_width + 2.0 * half_width * i as f64 / (ZOOM_POINTS - 1) as f64;
            let cand = adaptive_at(&k, phi);
            if cand.0 > best.0 {
                best = cand;
                best_phi = phi;
            }
        }
        half_width *= 4.0 / (ZOOM_POINTS - 1) as f64;
    }
    Ok(AdaptiveOptimum {
        p_succ: best.0,
        phi_first: best_phi.rem_euclid(TAU),
        phi_second: best.1,
        guess: best.2,
    })
}

fn c(re: f64) -> C64 {
    C64::new(re, 0.0)
}

/// Sum of `|w><w|` over the given 4-vectors, as a Hermitian matrix.
fn sum_of_outers(ws: &[[C64; 4]], weight: f64) -> HermMat {
    let mut m = [[C64::new(0.0, 0.0); 4]; 4];
    for w in ws {
        for i in 0..4 {
            for j in 0..4 {
                m[i][j] += w[i] * w[j].conj() * weight;
            }
        }
    }
    let rows: Vec<&[C64]> = m.iter().map(|r| r.as_slice()).collect();
    HermMat::new(CMat::from_rows(&rows).expect("dim 4")).expect("sum of outer products")
}

fn kron(a: [C64; 2], b: [C64; 2]) -> [C64; 4] {
    [a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1]]
}

fn lift(v: [f64; 2]) -> [C64; 2] {
    [c(v[0]), c(v[1])]
}

/// `U^dagger v` for a 2x2 `U` given as rows.
fn adjoint_apply(u: &[[C64; 2]; 2], v: [C64; 2]) -> [C64; 2] {
    [
        u[0][0].conj() * v[0] + u[1][0].conj() * v[1],
        u[0][1].conj() * v[0] + u[1][1].conj() * v[1],
    ]
}

/// Success operator of a two-qubit probe where the second qubit is rotated
/// by `u` after outcome `x = 1`, summed term by term over `(x, y)`.
fn feedforward_success_operator(
    k: &[[[f64; 2]; 2]; 2],
    g: &[[usize; 2]; 2],
    u: &[[C64; 2]; 2],
) -> HermMat {
    let identity = [[c(1.0), c(0.0)], [c(0.0), c(1.0)]];
    let mut ws = Vec::with_capacity(4);
    for x in 0..2 {
        let ux = if x == 0 { &identity } else { u };
        for y in 0..2 {
            let d = g[x][y];
            ws.push(kron(lift(k[d][x]), adjoint_apply(ux, lift(k[d][y]))));
        }
    }
    sum_of_outers(&ws, 0.5)
}

fn rz(a: f64) -> [[C64; 2]; 2] {
    [
        [C64::from_polar(1.0, -0.5 * a), c(0.0)],
        [c(0.0), C64::from_polar(1.0, 0.5 * a)],
    ]
}

fn ry(b: f64) -> [[C64; 2]; 2] {
    let (s, co) = (0.5 * b).sin_cos();
    [[c(co), c(-s)], [c(s), c(co)]]
}

fn mul2(a: &[[C64; 2]; 2], b: &[[C64; 2]; 2]) -> [[C64; 2]; 2] {
    let mut out = [[c(0.0); 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    out
}

fn euler_unitary(e: &[f64; 3]) -> [[C64; 2]; 2] {
    mul2(&mul2(&rz(e[0]), &ry(e[1])), &rz(e[2]))
}

fn top(m: &HermMat) -> f64 {
    linalg::eig_max(m).expect("Hermitian by construction").0
}

/// Exhaustive top eigenvalue over all 16 guess functions for the entangled
/// probe without feed-forward.
pub fn brute_force_entangled(pair: &MeasurementPair) -> EntangledOptimum {
    let k = kets(pair.theta());
    let mut best: Option<(f64, CVec, GuessFunction)> = None;
    for f in GuessFunction::all() {
        let g = guess_table(f);
        let mut ws = Vec::with_capacity(4);
        for x in 0..2 {
            for y in 0..2 {
                let d = g[x][y];
                ws.push(kron(lift(k[d][x]), lift(k[d][y])));
            }
        }
        let (p, v) = linalg::eig_max(&sum_of_outers(&ws, 0.5)).expect("Hermitian by construction");
        if best.as_ref().is_none_or(|b| p > b.0) {
            best = Some((p, v, f));
        }
    }
    let (p, v, f) = best.expect("16 candidates");
    EntangledOptimum {
        p_succ: p,
        state: TwoQubitState::new(v).expect("unit eigenvector"),
        guess: f,
    }
}

/// Euler-angle grid scan of the feed-forward correction for all 16 guess
/// functions, then a compass search from the leading grid points.
///
/// `grid_n` points are used per angle: alpha and gamma on `[0, 2pi)`, beta
/// on `[0, pi]`.
pub fn brute_force_feedforward(
    pair: &MeasurementPair,
    grid_n: usize,
) -> Result<FeedForwardOptimum> {
    check_grid(grid_n, MIN_EULER_GRID)?;
    let k = kets(pair.theta());
    let ring: Vec<f64> = (0..grid_n)
        .map(|i| TAU * i as f64 / grid_n as f64)
        .collect();
    let polar: Vec<f64> = (0..grid_n)
        .map(|i| PI * i as f64 / (grid_n - 1) as f64)
        .collect();
    let mut per_f = Vec::with_capacity(16);
    for f in GuessFunction::all() {
        let g = guess_table(f);
        let mut best = (f64::NEG_INFINITY, [0.0; 3]);
        for &a in &ring {
            for &b in &polar {
                for &gm in &ring {
                    let e = [a, b, gm];
                    let p = top(&feedforward_success_operator(&k, &g, &euler_unitary(&e)));
                    if p > best.0 {
                        best = (p, e);
                    }
                }
            }
        }
        per_f.push((f, g, best.0, best.1));
    }
    let leader = per_f.iter().map(|c| c.2).fold(f64::NEG_INFINITY, f64::max);
    let step0 = TAU / grid_n as f64;
    let mut best: Option<(f64, [f64; 3], GuessFunction)> = None;
    for (f, g, p, e) in per_f {
        let (p, e) = if p >= leader - COMPASS_WINDOW {
            compass(
                |e| top(&feedforward_success_operator(&k, &g, &euler_unitary(e))),
                e,
                p,
                step0,
            )
        } else {
            (p, e)
        };
        if best.is_none_or(|b| p > b.0) {
            best = Some((p, e, f));
        }
    }
    let (p, e, f) = best.expect("16 candidates");
    let u = euler_unitary(&e);
    let r = feedforward_success_operator(&k, &guess_table(f), &u);
    let (_, v) = linalg::eig_max(&r).expect("Hermitian by construction");
    Ok(FeedForwardOptimum {
        p_succ: p,
        unitary: CMat::from_rows(&[&u[0], &u[1]]).expect("dim 2"),
        state: TwoQubitState::new(v).expect("unit eigenvector"),
        guess: f,
        euler: e,
    })
}

/// Compass search: try `+-step` along each axis, accept the first
/// improvement, halve the step when none is found.
fn compass<F: Fn(&[f64; 3]) -> f64>(
    f: F,
    mut x: [f64; 3],
    mut value: f64,
    mut step: f64,
) -> (f64, [f64; 3]) {
    while step > COMPASS_TOL {
        let mut moved = false;
        'axes: for i in 0..3 {
            for sign in [1.0, -1.0] {
                let mut y = x;
                y[i] += sign * step;
                let v = f(&y);
                if v > value {
                    x = y;
                    value = v;
                    moved = true;
                    break 'axes;
                }
            }
        }
        if !moved {
            step *= 0.5;
        }
    }
    (value, x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measurements::build_pair;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, FRAC_PI_4};

    #[test]
    fn fixed_endpoints_and_sixty_degrees() {
        let p = |t: f64| {
            brute_force_fixed(&build_pair(t).unwrap(), 2000)
                .unwrap()
                .p_succ
        };
        assert!((p(0.0) - 0.5).abs() < 1e-12);
        assert!((p(FRAC_PI_2) - 1.0).abs() < 1e-4);
        // Closed-form value at pi/3, evaluated independently.
        assert!((p(FRAC_PI_3) - 0.976_711_204_407_014_8).abs() < 1e-4);
    }

    #[test]
    fn fixed_reports_consistent_angles() {
        let pair = build_pair(0.7).unwrap();
        let o = brute_force_fixed(&pair, 720).unwrap();
        let k = kets(0.7);
        let (t1, t2) = (born_real(&k, o.phi_first), born_real(&k, o.phi_second));
        let g = guess_table(o.guess);
        let mut p = 0.0;
        for x in 0..2 {
            for y in 0..2 {
                p += 0.5 * t1[g[x][y]][x] * t2[g[x][y]][y];
            }
        }
        assert!((p - o.p_succ).abs() < 1e-14);
    }

    #[test]
    fn adaptive_values() {
        let p = |t: f64| {
            brute_force_adaptive(&build_pair(t).unwrap(), 2000)
                .unwrap()
                .p_succ
        };
        assert!((p(0.0) - 0.5).abs() < 1e-12);
        assert!((p(FRAC_PI_4) - 0.933_012_701_892_219_3).abs() < 1e-6);
        assert!((p(FRAC_PI_2) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn feedforward_values() {
        let p = |t: f64| {
            brute_force_feedforward(&build_pair(t).unwrap(), 12)
                .unwrap()
                .p_succ
        };
        assert!(p(FRAC_PI_4) >= 1.0 - 1e-4);
        let t = PI / 5.0;
        assert!((p(t) - 0.5 * (1.0 + (2.0 * t).sin())).abs() < 1e-4);
        assert!((p(0.0) - 0.5).abs() < 1e-12);
    }

    #[test]
    fn feedforward_reports_its_unitary_and_state() {
        let pair = build_pair(1.2).unwrap();
        let o = brute_force_feedforward(&pair, 8).unwrap();
        assert!(o.unitary.unitarity_defect() < 1e-12);
        let r = feedforward_success_operator(
            &kets(1.2),
            &guess_table(o.guess),
            &euler_unitary(&o.euler),
        );
        assert!((o.state.expectation(&r).unwrap() - o.p_succ).abs() < 1e-10);
    }

    #[test]
    fn entangled_below_threshold_is_parity_value() {
        let t = 0.4;
        let o = brute_force_entangled(&build_pair(t).unwrap());
        assert!((o.p_succ - 0.5 * (1.0 + (2.0 * t).sin())).abs() < 1e-12);
    }

    #[test]
    fn small_grids_rejected() {
        let pair = build_pair(0.3).unwrap();
        assert!(brute_force_fixed(&pair, 100).is_err());
        assert!(brute_force_adaptive(&pair, 359).is_err());
        assert!(brute_force_feedforward(&pair, 3).is_err());
    }
}
