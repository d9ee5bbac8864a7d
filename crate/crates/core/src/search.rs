//! Derivative-free maximizers used by the numerical strategy optimizers.

const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Maximizes a unimodal `f` on `[lo, hi]` by golden-section search until the
/// bracket is narrower than `tol`. Returns the best point seen and its value.
pub fn golden_section_max<F: FnMut(f64) -> f64>(
    mut f: F,
    mut lo: f64,
    mut hi: f64,
    tol: f64,
) -> (f64, f64) {
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    while (hi - lo).abs() > tol {
        if f1 >= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = f(x2);
        }
    }
    if f1 >= f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

/// Evaluates `f` on `n` equally spaced points of `[lo, lo + span)` and
/// refines the best one by golden-section search on the neighbouring cells.
pub fn grid_then_golden<F: FnMut(f64) -> f64>(
    mut f: F,
    lo: f64,
    span: f64,
    n: usize,
    tol: f64,
) -> (f64, f64) {
    assert!(n >= 2, "grid needs at least two points");
    let step = span / n as f64;
    let (mut best_x, mut best_v) = (lo, f64::NEG_INFINITY);
    for k in 0..n {
        let x = lo + step * k as f64;
        let v = f(x);
        if v > best_v {
            best_x = x;
            best_v = v;
        }
    }
    let (x, v) = golden_section_max(&mut f, best_x - step, best_x + step, tol);
    if v >= best_v {
        (x, v)
    } else {
        (best_x, best_v)
    }
}

/// Cyclic coordinate ascent: each coordinate in turn is maximized by
/// golden-section search on `[x_i - step_i, x_i + step_i]`. Stops when a full
/// cycle improves the value by less than `min_gain`, or after `max_cycles`.
pub fn coordinate_ascent<F: FnMut(&[f64]) -> f64>(
    mut f: F,
    start: &[f64],
    steps: &[f64],
    line_tol: f64,
    min_gain: f64,
    max_cycles: usize,
) -> (Vec<f64>, f64) {
    assert_eq!(start.len(), steps.len());
    let mut x = start.to_vec();
    let mut value = f(&x);
    for _ in 0..max_cycles {
        let before = value;
        for i in 0..x.len() {
            let centre = x[i];
            let mut probe = x.clone();
            let (t, v) = golden_section_max(
                |t| {
                    probe[i] = t;
                    f(&probe)
                },
                centre - steps[i],
                centre + steps[i],
                line_tol,
            );
            if v > value {
                x[i] = t;
                value = v;
            }
        }
        if value - before < min_gain {
            break;
        }
    }
    (x, value)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_finds_parabola_peak() {
        let (x, v) = golden_section_max(|x| -(x - 0.3).powi(2) + 2.0, -1.0, 1.0, 1e-10);
        assert!((x - 0.3).abs() < 1e-7);
        assert!((v - 2.0).abs() < 1e-15);
    }

    #[test]
    fn grid_handles_multimodal_periodic_function() {
        // cos(3x) + 0.5 cos(x) peaks at x = 0 on [0, 2pi).
        let (x, v) = grid_then_golden(
            |x| (3.0 * x).cos() + 0.5 * x.cos(),
            -0.1,
            std::f64::consts::TAU,
            200,
            1e-12,
        );
        assert!(x.abs() < 1e-6, "x = {x}");
        assert!((v - 1.5).abs() < 1e-12);
    }

    #[test]
    fn coordinate_ascent_on_separable_quadratic() {
        let (x, v) = coordinate_ascent(
            |p| -(p[0] - 1.0).powi(2) - 2.0 * (p[1] + 0.5).powi(2),
            &[0.8, -0.3],
            &[0.5, 0.5],
            1e-12,
            1e-14,
            100,
        );
        assert!((x[0] - 1.0).abs() < 1e-6 && (x[1] + 0.5).abs() < 1e-6);
        assert!(v > -1e-12);
    }
}
