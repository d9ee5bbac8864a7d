//! Reference values computed independently of this crate and frozen here.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, FRAC_PI_4, FRAC_PI_6, PI};

use discrim::build_pair;
use discrim::measurements::{overlap, single_use_optimum};
use discrim::strategies::{closed_form, numeric, Probes, Strategy, THRESHOLD_ANGLE};

#[test]
fn fixed_strategy_values() {
    let cases = [
        (FRAC_PI_3, 0.976_711_204_407_014_8),
        (FRAC_PI_4, 0.916_273_834_598_195_1),
        (FRAC_PI_6, 0.810_494_645_591_967_7),
        (FRAC_PI_2, 1.0),
    ];
    for (t, p) in cases {
        assert!(
            (closed_form::fixed_success(t) - p).abs() < 1e-13,
            "theta {t}"
        );
        let pair = build_pair(t).unwrap();
        assert!((numeric::fixed(&pair).p_succ - p).abs() < 1e-9);
    }
}

#[test]
fn fixed_probe_reaches_printed_value_at_forty_five() {
    let pair = build_pair(FRAC_PI_4).unwrap();
    let r = closed_form::optimize_fixed(&pair);
    assert_eq!(r.guess, closed_form::FIXED_GUESS);
    assert!((r.evaluate(&pair).unwrap() - 0.916_273_834_598_195_1).abs() < 1e-12);
}

#[test]
fn adaptive_values() {
    assert!((closed_form::adaptive_success(FRAC_PI_4) - 0.933_012_701_892_219_3).abs() < 1e-13);
    assert!((closed_form::adaptive_success(FRAC_PI_3) - 0.984_122_918_275_927_1).abs() < 1e-13);
}

#[test]
fn entangled_values() {
    assert!((closed_form::entangled_success(FRAC_PI_4) - 1.0).abs() < 1e-15);
    assert!(
        (closed_form::entangled_success(FRAC_PI_6) - 0.5 * (1.0 + FRAC_PI_3.sin())).abs() < 1e-15
    );
    assert!((THRESHOLD_ANGLE.to_degrees() - 54.735_610_317_245_346).abs() < 1e-12);
    let p50 = closed_form::entangled_success(50f64.to_radians());
    assert!((p50 - 0.992_403_876_506_104_1).abs() < 1e-13);
}

#[test]
fn feedforward_values() {
    assert_eq!(closed_form::feedforward_success(FRAC_PI_4), 1.0);
    let t = PI / 5.0;
    assert!((closed_form::feedforward_success(t) - 0.5 * (1.0 + (2.0 * t).sin())).abs() < 1e-15);
    let (a, b, g) = closed_form::feedforward_coefficients(2f64.sqrt().atan());
    assert!((a - 0.382_683_432_365_089_8).abs() < 1e-12);
    assert!((b - 0.653_281_482_438_188_3).abs() < 1e-12);
    assert!((g + 0.653_281_482_438_188_3).abs() < 1e-12);
    let (a, b, g) = closed_form::feedforward_coefficients(FRAC_PI_4);
    assert!(
        (a - 0.5f64.sqrt()).abs() < 1e-12 && b.abs() < 1e-12 && (g + 0.5f64.sqrt()).abs() < 1e-12
    );
}

#[test]
fn feedforward_probe_is_perfect_on_a_range() {
    for t in [FRAC_PI_4, 2f64.sqrt().atan(), FRAC_PI_3, 1.5] {
        let pair = build_pair(t).unwrap();
        let r = closed_form::optimize_feedforward(&pair);
        assert!(
            (r.evaluate(&pair).unwrap() - 1.0).abs() < 1e-12,
            "theta {t}"
        );
        assert!(matches!(r.probes, Probes::FeedForward { .. }));
    }
}

#[test]
fn single_use_and_overlap() {
    assert!((single_use_optimum(FRAC_PI_6).unwrap().1 - 0.75).abs() < 1e-15);
    assert!((overlap(&build_pair(FRAC_PI_3).unwrap()) - 0.25).abs() < 1e-15);
    assert!((overlap(&build_pair(FRAC_PI_4).unwrap()) - 0.5).abs() < 1e-15);
}

#[test]
fn numeric_tie_break_picks_smallest_index() {
    let pair = build_pair(1.0).unwrap();
    assert_eq!(numeric::fixed(&pair).guess.index(), 1);
    assert_eq!(numeric::adaptive(&pair).guess.index(), 5);
    assert_eq!(
        numeric::entangled(&build_pair(0.5).unwrap()).guess.index(),
        6
    );
    assert_eq!(numeric::entangled(&pair).guess.index(), 1);
}

#[test]
fn every_strategy_at_the_endpoints() {
    for s in Strategy::ALL {
        assert_eq!(closed_form::optimize(s, 0.0).unwrap().p_succ, 0.5);
        assert!((closed_form::optimize(s, FRAC_PI_2).unwrap().p_succ - 1.0).abs() < 1e-12);
    }
}
