//! Tests of the continued complex log-gamma against frozen references and
//! its defining functional relations.

mod common;

use bkl_core::gamma::{gamma, log_gamma, log_sin_pi, recip_gamma};
use bkl_core::{Error, C64};
use common::{assert_abs_close, c64};
use proptest::prelude::*;

fn lg(re: f64, im: f64) -> C64 {
    log_gamma(C64::new(re, im)).unwrap()
}

/// Tolerance scaled to f64 representability of the reference value itself.
fn tol_for(want: C64) -> f64 {
    1e-13_f64.max(want.norm() * 4e-16)
}

#[test]
fn log_gamma_matches_references() {
    use common::oracles::*;
    let cases = [
        (lg(0.5, 0.0), LOGGAMMA_HALF),
        (lg(3.5, 0.0), LOGGAMMA_3P5),
        (lg(1.0, 1.0), LOGGAMMA_1_1),
        (lg(2.0, 3.0), LOGGAMMA_2_3),
        (lg(0.5, 10.0), LOGGAMMA_HALF_10),
        (lg(0.5, -10.0), LOGGAMMA_HALF_M10),
        (lg(-3.7, 0.5), LOGGAMMA_M3P7_P),
        (lg(-3.7, -0.5), LOGGAMMA_M3P7_M),
        (lg(-5.5, 0.0), LOGGAMMA_M5P5),
        (lg(-5.5, 0.3), LOGGAMMA_M5P5_P3),
        (lg(-5.5, -0.3), LOGGAMMA_M5P5_M3),
        (lg(10.0, 100.0), LOGGAMMA_10_100),
        (lg(40.0, 5.0), LOGGAMMA_40_5),
        (lg(-0.5, 0.0), LOGGAMMA_M0P5),
        (lg(0.3, -0.7), LOGGAMMA_0P3_M0P7),
        (lg(-50.0, 200.0), LOGGAMMA_M50_200),
        (lg(50.0, 200.0), LOGGAMMA_50_200),
        (lg(-49.5, 0.5), LOGGAMMA_M49P5_P5),
    ];
    for (i, (got, want)) in cases.iter().enumerate() {
        let want = c64(*want);
        assert_abs_close(*got, want, tol_for(want), &format!("log_gamma case {i}"));
    }
}

#[test]
fn poles_are_reported() {
    for k in [0i64, -1, -2, -7] {
        match log_gamma(C64::new(k as f64, 0.0)) {
            Err(Error::PoleAtNonpositiveInteger(got)) => assert_eq!(got, k),
            other => panic!("expected pole error at {k}, got {other:?}"),
        }
        assert_eq!(recip_gamma(C64::new(k as f64, 0.0)), C64::new(0.0, 0.0));
    }
}

#[test]
fn gamma_small_values() {
    // Gamma(1) = 1, Gamma(5) = 24, Gamma(1/2) = sqrt(pi)
    assert_abs_close(
        gamma(C64::new(1.0, 0.0)).unwrap(),
        C64::new(1.0, 0.0),
        1e-14,
        "gamma(1)",
    );
    assert_abs_close(
        gamma(C64::new(5.0, 0.0)).unwrap(),
        C64::new(24.0, 0.0),
        1e-12,
        "gamma(5)",
    );
    assert_abs_close(
        gamma(C64::new(0.5, 0.0)).unwrap(),
        C64::new(std::f64::consts::PI.sqrt(), 0.0),
        1e-14,
        "gamma(1/2)",
    );
}

#[test]
fn log_sin_pi_matches_direct_value() {
    // compare exp(log_sin_pi) with the direct sine where it cannot overflow
    for &(re, im) in &[(0.3, 0.2), (0.7, -0.4), (-1.3, 0.9), (2.6, -1.1), (0.5, 0.0)] {
        let s = C64::new(re, im);
        let got = log_sin_pi(s).unwrap().exp();
        let want = (s * std::f64::consts::PI).sin();
        assert_abs_close(got, want, 1e-12 * want.norm().max(1.0), "exp(log_sin_pi)");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// Recurrence: log_gamma(s+1) = log_gamma(s) + Log s on Re s > 0, where
    /// the principal logarithm is branch-safe.
    #[test]
    fn recurrence_holds(re in 0.05f64..6.0, im in -8.0f64..8.0) {
        let s = C64::new(re, im);
        let lhs = log_gamma(s + 1.0).unwrap();
        let rhs = log_gamma(s).unwrap() + s.ln();
        prop_assert!((lhs - rhs).norm() <= 1e-12 * lhs.norm().max(1.0));
    }

    /// Reflection: log_gamma(s) + log_gamma(1-s) = ln pi - log sin(pi s),
    /// with every logarithm on the continued branch.
    #[test]
    fn reflection_holds(re in -3.0f64..3.0, im in 0.05f64..6.0) {
        let s = C64::new(re, im);
        let lhs = log_gamma(s).unwrap() + log_gamma(C64::new(1.0, 0.0) - s).unwrap();
        let rhs = C64::new(std::f64::consts::PI.ln(), 0.0) - log_sin_pi(s).unwrap();
        prop_assert!((lhs - rhs).norm() <= 1e-11 * lhs.norm().max(1.0));
    }

    /// Conjugation symmetry of the continued branch.
    #[test]
    fn conjugation_symmetry(re in -5.0f64..5.0, im in 0.05f64..20.0) {
        let s = C64::new(re, im);
        if bkl_core::gamma::nonpositive_integer_at(s).is_none() {
            let a = log_gamma(s).unwrap();
            let b = log_gamma(s.conj()).unwrap().conj();
            prop_assert!((a - b).norm() <= 1e-12 * a.norm().max(1.0));
        }
    }
}
