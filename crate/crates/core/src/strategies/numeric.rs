//! Numerical optimization of the four strategies by eigenvalue maximization.
//!
//! Every optimizer loops over all 16 guess functions. For each one the probe
//! that pairs last with the measurement is eliminated exactly as a top
//! eigenvector, which leaves a low-dimensional search:
//!
//! * fixed / adaptive: the first probe angle, 2000-point grid on `[0, 2pi)`
//!   followed by golden-section refinement;
//! * entangled: nothing, `lambda_max(R_ent)` is the optimum;
//! * feed-forward: the Z-Y-Z Euler angles of `U`, a 40^3 grid followed by
//!   coordinate ascent.
//!
//! First probes are searched over real states only. The success probability
//! depends on the first probe through `Tr[psi_I Pi]` with real projectors,
//! i.e. through the Bloch x and z components alone, and the top eigenvalue is
//! convex in them, so the maximum sits on the real great circle.
//!
//! Ties between guess functions (within [`TIE_TOL`]) go to the smaller index.

use std::f64::consts::{PI, TAU};

use crate::linalg::{self, CMat, HermMat, C64};
use crate::measurements::{MeasurementPair, Outcome};
use crate::search::{coordinate_ascent, grid_then_golden};
use crate::state::{QubitState, TwoQubitState};

use super::{
    adaptive_operators, entangled_operator, euler_zyz, feedforward_operator, fixed_operator,
    GuessFunction, Probes, Strategy, StrategyResult,
};

pub const PROBE_GRID: usize = 2000;
pub const LINE_TOL: f64 = 1e-10;
pub const EULER_GRID: usize = 40;
pub const MIN_GAIN: f64 = 1e-10;
pub const TIE_TOL: f64 = 1e-10;
/// Guess functions whose coarse-grid optimum trails the leader by more than
/// this are not refined.
const REFINE_WINDOW: f64 = 0.05;
/// Refined candidates within this of the leader are polished exactly.
const POLISH_WINDOW: f64 = 1e-6;
const POLISH_STEPS: [f64; 3] = [1e-3; 3];
const MAX_CYCLES: usize = 2000;

/// Keeps the best candidate, preferring earlier (smaller-index) entries on ties.
struct Best<T> {
    value: f64,
    item: Option<T>,
}

impl<T> Best<T> {
    fn new() -> Self {
        Self {
            value: f64::NEG_INFINITY,
            item: None,
        }
    }

    fn offer(&mut self, value: f64, item: T) {
        if value > self.value + TIE_TOL || self.item.is_none() {
            self.value = value;
            self.item = Some(item);
        }
    }

    fn take(self) -> (f64, T) {
        (self.value, self.item.expect("at least one candidate"))
    }
}

fn top_eigenvalue(m: &HermMat) -> f64 {
    linalg::eig_max(m).expect("Hermitian by construction").0
}

fn fixed_value(phi: f64, f: GuessFunction, pair: &MeasurementPair) -> f64 {
    let r = fixed_operator(&QubitState::from_angle(phi), f, pair);
    linalg::eigvals_2x2(&r).expect("dim 2").0
}

fn adaptive_value(phi: f64, f: GuessFunction, pair: &MeasurementPair) -> f64 {
    let [r0, r1] = adaptive_operators(&QubitState::from_angle(phi), f, pair);
    0.5 * (linalg::eigvals_2x2(&r0).expect("dim 2").0 + linalg::eigvals_2x2(&r1).expect("dim 2").0)
}

fn top_probe(m: &HermMat) -> QubitState {
    let (_, v) = linalg::eig_max(m).expect("Hermitian by construction");
    QubitState::new(v).expect("unit eigenvector")
}

fn real_probe(phi: f64) -> QubitState {
    QubitState::from_unnormalized(*QubitState::from_angle(phi).as_vec()).expect("unit vector")
}

/// Fixed single-qubit probes.
pub fn fixed(pair: &MeasurementPair) -> StrategyResult {
    let mut best = Best::new();
    for f in GuessFunction::all() {
        let (phi, p) = grid_then_golden(
            |phi| fixed_value(phi, f, pair),
            0.0,
            TAU,
            PROBE_GRID,
            LINE_TOL,
        );
        best.offer(p, (f, phi));
    }
    let (p, (f, phi)) = best.take();
    let first = real_probe(phi);
    let second = top_probe(&fixed_operator(&first, f, pair));
    StrategyResult {
        strategy: Strategy::Fixed,
        theta: pair.theta(),
        p_succ: p,
        guess: f,
        probes: Probes::Fixed { first, second },
    }
}

/// Adaptive single-qubit probes.
pub fn adaptive(pair: &MeasurementPair) -> StrategyResult {
    let mut best = Best::new();
    for f in GuessFunction::all() {
        let (phi, p) = grid_then_golden(
            |phi| adaptive_value(phi, f, pair),
            0.0,
            TAU,
            PROBE_GRID,
            LINE_TOL,
        );
        best.offer(p, (f, phi));
    }
    let (p, (f, phi)) = best.take();
    let first = real_probe(phi);
    let second = adaptive_operators(&first, f, pair).map(|r| top_probe(&r));
    StrategyResult {
        strategy: Strategy::Adaptive,
        theta: pair.theta(),
        p_succ: p,
        guess: f,
        probes: Probes::Adaptive { first, second },
    }
}

/// Fixed entangled probe: exact top eigenvector of `R_ent` for every guess.
pub fn entangled(pair: &MeasurementPair) -> StrategyResult {
    let mut best = Best::new();
    for f in GuessFunction::all() {
        let r = entangled_operator(f, pair).expect("dim 4");
        let (p, v) = linalg::eig_max(&r).expect("Hermitian by construction");
        best.offer(p, (f, v));
    }
    let (p, (f, v)) = best.take();
    StrategyResult {
        strategy: Strategy::Entangled,
        theta: pair.theta(),
        p_succ: p,
        guess: f,
        probes: Probes::Entangled {
            state: TwoQubitState::new(v).expect("unit eigenvector"),
        },
    }
}

type Raw2 = [[C64; 2]; 2];
type Raw4 = [[C64; 4]; 4];

fn raw2(m: &HermMat) -> Raw2 {
    [[m.get(0, 0), m.get(0, 1)], [m.get(1, 0), m.get(1, 1)]]
}

/// `U = Rz(alpha) Ry(beta) Rz(gamma)` from `a = e^{-i alpha/2}`,
/// `g = e^{-i gamma/2}` and the half-angle cosine and sine of beta.
fn euler_raw(a: C64, cb: f64, sb: f64, g: C64) -> Raw2 {
    [
        [a * g * cb, -(a * g.conj()) * sb],
        [a.conj() * g * sb, a.conj() * g.conj() * cb],
    ]
}

fn half_phase(angle: f64) -> C64 {
    C64::from_polar(1.0, -0.5 * angle)
}

/// `U^dagger Q U` for a Hermitian 2x2 `Q`.
fn conjugate_raw(u: &Raw2, q: &Raw2) -> Raw2 {
    let mut qu = [[C64::new(0.0, 0.0); 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            qu[i][j] = q[i][0] * u[0][j] + q[i][1] * u[1][j];
        }
    }
    let mut out = [[C64::new(0.0, 0.0); 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = u[0][i].conj() * qu[0][j] + u[1][i].conj() * qu[1][j];
        }
    }
    out
}

/// `R_ff(U)` for one guess function, with the U-independent half precomputed.
struct FeedForwardObjective {
    base: Raw4,
    first: [Raw2; 2],
    second: [Raw2; 2],
}

impl FeedForwardObjective {
    fn new(f: GuessFunction, pair: &MeasurementPair) -> Self {
        let mut base = HermMat::zeros(4).expect("dim 4");
        for y in Outcome::BOTH {
            let d = f.guess(Outcome::ZERO, y);
            let term = linalg::tensor_op(pair.projector(d, Outcome::ZERO), pair.projector(d, y))
                .expect("dim 2 factors");
            base = base.add(&term).expect("dim 4");
        }
        let base = base.scale(0.5);
        let mut raw = [[C64::new(0.0, 0.0); 4]; 4];
        for (i, row) in raw.iter_mut().enumerate() {
            for (j, x) in row.iter_mut().enumerate() {
                *x = base.get(i, j);
            }
        }
        let first = Outcome::BOTH.map(|y| {
            let mut p = raw2(pair.projector(f.guess(Outcome::ONE, y), Outcome::ONE));
            p.iter_mut().flatten().for_each(|x| *x *= 0.5);
            p
        });
        let second = Outcome::BOTH.map(|y| raw2(pair.projector(f.guess(Outcome::ONE, y), y)));
        Self {
            base: raw,
            first,
            second,
        }
    }

    fn operator(&self, u: &Raw2) -> Raw4 {
        let mut r = self.base;
        for k in 0..2 {
            let rot = conjugate_raw(u, &self.second[k]);
            let p = &self.first[k];
            for i in 0..2 {
                for j in 0..2 {
                    for a in 0..2 {
                        for b in 0..2 {
                            r[2 * i + a][2 * j + b] += p[i][j] * rot[a][b];
                        }
                    }
                }
            }
        }
        r
    }

    fn unitary(angles: &[f64]) -> Raw2 {
        let (sb, cb) = (0.5 * angles[1]).sin_cos();
        euler_raw(half_phase(angles[0]), cb, sb, half_phase(angles[2]))
    }

    fn estimate(&self, angles: &[f64]) -> f64 {
        linalg::top_eigenvalue_estimate_raw(&self.operator(&Self::unitary(angles)))
    }

    fn exact(&self, angles: &[f64]) -> f64 {
        let r = self.operator(&Self::unitary(angles));
        let rows: Vec<&[C64]> = r.iter().map(|row| row.as_slice()).collect();
        let m = CMat::from_rows(&rows).expect("dim 4");
        top_eigenvalue(&HermMat::new(m).expect("Hermitian by construction"))
    }

    /// Coarse-grid maximum of the estimate, with its Euler angles.
    fn grid_max(&self) -> ([f64; 3], f64) {
        let n = EULER_GRID;
        let ring: Vec<f64> = (0..n).map(|k| TAU * k as f64 / n as f64).collect();
        let polar: Vec<f64> = (0..n).map(|k| PI * k as f64 / (n - 1) as f64).collect();
        let ring_phase: Vec<C64> = ring.iter().map(|&x| half_phase(x)).collect();
        let polar_half: Vec<(f64, f64)> = polar.iter().map(|&x| (0.5 * x).sin_cos()).collect();
        let mut arg = [0.0; 3];
        let mut val = f64::NEG_INFINITY;
        for (i, &a) in ring_phase.iter().enumerate() {
            for (j, &(sb, cb)) in polar_half.iter().enumerate() {
                for (k, &g) in ring_phase.iter().enumerate() {
                    let u = euler_raw(a, cb, sb, g);
                    let v = linalg::top_eigenvalue_estimate_raw(&self.operator(&u));
                    if v > val {
                        val = v;
                        arg = [ring[i], polar[j], ring[k]];
                    }
                }
            }
        }
        (arg, val)
    }
}

/// Entangled probe with outcome-conditioned unitary on the second qubit.
///
/// The grid and the first coordinate-ascent pass rank candidates with
/// [`linalg::top_eigenvalue_estimate`]; the leading guess functions are then
/// polished, and their values reported, with the Jacobi solver.
pub fn feedforward(pair: &MeasurementPair) -> StrategyResult {
    let steps = [
        TAU / EULER_GRID as f64,
        PI / (EULER_GRID - 1) as f64,
        TAU / EULER_GRID as f64,
    ];
    let mut coarse = Vec::with_capacity(16);
    for f in GuessFunction::all() {
        let objective = FeedForwardObjective::new(f, pair);
        if f.ignores_second_after(Outcome::ONE) {
            // The x = 1 terms are Pi (x) U^dagger I U = Pi (x) I: no U dependence.
            coarse.push((f, objective, [0.0; 3], None));
            continue;
        }
        let (arg, val) = objective.grid_max();
        coarse.push((f, objective, arg, Some(val)));
    }
    let leader = coarse
        .iter()
        .map(|c| c.3.unwrap_or_else(|| c.1.exact(&c.2)))
        .fold(f64::NEG_INFINITY, f64::max);

    // Refine on the estimate.
    let mut refined = Vec::with_capacity(16);
    for (f, objective, arg, val) in coarse {
        match val {
            Some(v) if v >= leader - REFINE_WINDOW => {
                let (x, v) = coordinate_ascent(
                    |a| objective.estimate(a),
                    &arg,
                    &steps,
                    LINE_TOL,
                    MIN_GAIN,
                    MAX_CYCLES,
                );
                refined.push((f, objective, [x[0], x[1], x[2]], Some(v)));
            }
            _ => refined.push((f, objective, arg, val)),
        }
    }
    let leader = refined
        .iter()
        .filter_map(|c| c.3)
        .fold(f64::NEG_INFINITY, f64::max);

    // Polish the contenders with the exact solver.
    let mut best = Best::new();
    for (f, objective, arg, val) in refined {
        let (angles, p) = match val {
            None => (arg, objective.exact(&arg)),
            Some(v) if v >= leader - POLISH_WINDOW => {
                let (x, p) = coordinate_ascent(
                    |a| objective.exact(a),
                    &arg,
                    &POLISH_STEPS,
                    LINE_TOL,
                    MIN_GAIN,
                    MAX_CYCLES,
                );
                ([x[0], x[1], x[2]], p)
            }
            Some(_) => (arg, objective.exact(&arg)),
        };
        best.offer(p, (f, angles));
    }
    let (p, (f, angles)) = best.take();
    let correction: CMat = euler_zyz(angles[0], angles[1], angles[2]);
    let r = feedforward_operator(f, &correction, pair).expect("dim 4");
    let (_, v) = linalg::eig_max(&r).expect("Hermitian by construction");
    StrategyResult {
        strategy: Strategy::FeedForward,
        theta: pair.theta(),
        p_succ: p,
        guess: f,
        probes: Probes::FeedForward {
            state: TwoQubitState::new(v).expect("unit eigenvector"),
            correction,
        },
    }
}

/// Numerical optimum of `strategy`.
pub fn optimize(strategy: Strategy, pair: &MeasurementPair) -> StrategyResult {
    match strategy {
        Strategy::Fixed => fixed(pair),
        Strategy::Adaptive => adaptive(pair),
        Strategy::Entangled => entangled(pair),
        Strategy::FeedForward => feedforward(pair),
    }
}
