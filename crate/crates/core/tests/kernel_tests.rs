mod common;

use bkl_core::classical;
use bkl_core::gamma_factors::{doubling_map, i_pow};
use bkl_core::kernels::*;
use bkl_core::types::{ComplexIndex, KernelValue, Method, RealIndex, SignedIndex, UniversalCoverPoint};
use bkl_core::{Error, C64};
use common::{assert_abs_close, assert_rel_close, c64, oracles as o};
use proptest::prelude::*;
use std::f64::consts::PI;

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

fn ucp(x: f64, omega: f64) -> UniversalCoverPoint {
    UniversalCoverPoint::new(x, omega).unwrap()
}

/// Difference of two computed values must be explained by their own error
/// claims (plus a small floating-point cushion proportional to the scale).
fn assert_claims_cover(a: &KernelValue, b: &KernelValue, what: &str) {
    let diff = (a.value - b.value).norm();
    let budget = a.abs_error + b.abs_error + 1e-13 * (1.0 + a.value.norm());
    assert!(
        diff <= budget,
        "{what}: diff {diff:.3e} exceeds combined error claim {budget:.3e}"
    );
}

// ---------------------------------------------------------------------------
// first-kind series
// ---------------------------------------------------------------------------

#[test]
fn first_kind_series_rank1_is_the_exponential() {
    // rank one collapses to the plain exponential series
    for &x in &[0.05, 0.3, 1.0, 4.7, 12.0, 20.0] {
        for &(sign, s) in &[(1i8, 1.0f64), (-1, -1.0)] {
            let v = j_first_kind_series(ucp(x, 0.0), 0, sign, &[c(0.0, 0.0)], 1e-14).unwrap();
            let want = (c(0.0, s * x)).exp();
            assert_abs_close(v.value, want, 1e-10, "rank-1 series vs exp");
            assert!(
                (v.value - want).norm() <= v.abs_error + 1e-14,
                "series error claim too small at x={x}"
            );
        }
    }
    // a point off the positive real axis exercises the rotation factor
    let z = ucp(2.0, 0.4);
    let v = j_first_kind_series(z, 0, 1, &[c(0.0, 0.0)], 1e-14).unwrap();
    let want = (C64::i() * z.to_c64()).exp();
    assert_abs_close(v.value, want, 1e-12, "rank-1 series off axis");
}

#[test]
fn first_kind_series_structure_checks() {
    // constant term: at z -> 0 the l = 1 branch of the (0,0) series tends to
    // 1/Gamma(1)^2 = 1
    let v = j_first_kind_series(ucp(1e-8, 0.0), 0, 1, &[c(0.0, 0.0); 2], 1e-14).unwrap();
    assert_abs_close(v.value, c(1.0, 0.0), 1e-12, "n=2 constant term");

    // truncation scale: for n = 3, lambda = 0, |z| = 2 the partial sums reach
    // 1e-12 relative accuracy by M ~ 25 terms, and not much earlier
    let full = j_first_kind_series(ucp(2.0, 0.0), 0, 1, &[c(0.0, 0.0); 3], 1e-14)
        .unwrap()
        .value;
    let partial = |terms: usize| -> C64 {
        let mut sum = C64::new(0.0, 0.0);
        let mut fact = 1.0f64;
        for m in 0..terms {
            if m > 0 {
                fact *= m as f64;
            }
            // (i^3)^m z^{3m} / (m!)^3 with z = 2
            let zp = 2.0f64.powi(3 * m as i32);
            sum += (-C64::i()).powu(m as u32) * zp / (fact * fact * fact);
        }
        sum
    };
    assert!(
        (partial(25) - full).norm() <= 1e-12 * full.norm(),
        "25 terms should reach 1e-12"
    );
    assert!(
        (partial(8) - full).norm() > 1e-12 * full.norm(),
        "8 terms must not yet reach 1e-12"
    );
}

#[test]
fn first_kind_series_refuses_resonant_indices() {
    // lambda_2 - lambda_1 = -1 puts a Gamma pole in every denominator
    let err = j_first_kind_series(ucp(1.0, 0.0), 0, 1, &[c(0.5, 0.0), c(-0.5, 0.0)], 1e-12)
        .unwrap_err();
    assert!(matches!(err, Error::LimitRequired(_)), "got {err:?}");
}

// ---------------------------------------------------------------------------
// signed contour integral
// ---------------------------------------------------------------------------

#[test]
fn signed_contour_matches_rank1_exponential() {
    for &x in &[1.0, 6.5, 20.0] {
        let v = j_signed_contour(ucp(x, 0.0), &SignedIndex::new(vec![1], vec![c(0.0, 0.0)]).unwrap(), 1e-10)
            .unwrap();
        let want = c(0.0, x).exp();
        assert_abs_close(v.value, want, 1e-8, "contour vs exp");
        assert!((v.value - want).norm() <= v.abs_error + 1e-14);
    }
}

#[test]
fn signed_contour_matches_rank2_k_bessel() {
    // mixed signature (+,-) with lambda = (1/4,-1/4) at x = 1 is
    // 2 e^{-pi i/4} K_{1/2}(2)
    let idx = SignedIndex::new(vec![1, -1], vec![c(0.25, 0.0), c(-0.25, 0.0)]).unwrap();
    let v = j_signed_contour(ucp(1.0, 0.0), &idx, 1e-10).unwrap();
    let want = 2.0 * c(0.0, -PI / 4.0).exp() * c64(o::BESSELK_HALF_2);
    assert_rel_close(v.value, want, 1e-9, "rank-2 signed contour vs K_{1/2}");
}

#[test]
fn signed_contour_index_shift_law() {
    // J(x; sig, lambda - l0 e) = x^{n l0} J(x; sig, lambda)
    let lambda = vec![c(0.2, 0.1), c(-0.15, 0.0)];
    let l0 = c(0.3, -0.2);
    let shifted: Vec<C64> = lambda.iter().map(|&l| l - l0).collect();
    let x = 1.3f64;
    let base = j_signed_contour(ucp(x, 0.0), &SignedIndex::new(vec![1, -1], lambda).unwrap(), 1e-11)
        .unwrap();
    let moved = j_signed_contour(ucp(x, 0.0), &SignedIndex::new(vec![1, -1], shifted).unwrap(), 1e-11)
        .unwrap();
    let factor = (l0 * 2.0 * x.ln()).exp();
    let want = factor * base.value;
    let budget = moved.abs_error + base.abs_error * factor.norm() + 1e-12;
    assert!(
        (moved.value - want).norm() <= budget,
        "shift law off by {:.3e} (budget {budget:.3e})",
        (moved.value - want).norm()
    );
}

// ---------------------------------------------------------------------------
// rank-one kernels on R and C
// ---------------------------------------------------------------------------

#[test]
fn rank1_real_kernel_closed_values() {
    // j_{(0),(0)}(1/2) = 2 cos(pi) = -2 and j_{(0),(1)}(1/4) = 2i, on every route
    let even = RealIndex::new(vec![c(0.0, 0.0)], vec![0]).unwrap();
    let odd = RealIndex::new(vec![c(0.0, 0.0)], vec![1]).unwrap();
    for (idx, x, want, what) in [
        (&even, 0.5, c(-2.0, 0.0), "j_{(0),(0)}(1/2)"),
        (&odd, 0.25, c(0.0, 2.0), "j_{(0),(1)}(1/4)"),
    ] {
        let closed = j_real_rank1_closed(x, idx.mu[0], idx.delta[0]).unwrap();
        assert_abs_close(closed, want, 1e-14, what);
        let series = j_real_series(x, idx, 1e-12).unwrap();
        assert_abs_close(series.value, want, 1e-12, what);
        let contour = j_real(x, idx, 1e-10).unwrap();
        assert_abs_close(contour.value, want, 1e-9, what);
    }
}

#[test]
fn rank1_complex_kernel_is_a_classical_j() {
    // j_{(0),(m)}(x) = 2 pi i^m J_m(4 pi x)
    let x = 0.25f64;
    let idx0 = ComplexIndex::new(vec![c(0.0, 0.0)], vec![0]).unwrap();
    let want = 2.0 * PI * classical::bessel_j(c(0.0, 0.0), c(PI, 0.0)).unwrap();
    let series = j_complex_series(x, &idx0, 1e-12).unwrap();
    let contour = j_complex(x, &idx0, 1e-10).unwrap();
    let closed = j_complex_rank1_closed(x, c(0.0, 0.0), 0).unwrap();
    assert_abs_close(series.value, want, 1e-12, "series vs 2 pi J_0(pi)");
    assert_abs_close(contour.value, want, 1e-9, "contour vs 2 pi J_0(pi)");
    assert_abs_close(closed, want, 1e-13, "closed form vs 2 pi J_0(pi)");

    // the kernel with m = 1 vanishes where J_1 does
    let j1 = |w: f64| classical::bessel_j(c(1.0, 0.0), c(w, 0.0)).unwrap().re;
    let (mut lo, mut hi) = (3.5f64, 4.2f64);
    assert!(j1(lo) > 0.0 && j1(hi) < 0.0);
    for _ in 0..60 {
        let mid = 0.5 * (lo + hi);
        if j1(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let x_zero = 0.5 * (lo + hi) / (4.0 * PI);
    let idx1 = ComplexIndex::new(vec![c(0.0, 0.0)], vec![1]).unwrap();
    let v = j_complex_series(x_zero, &idx1, 1e-12).unwrap();
    assert!(
        v.value.norm() <= 1e-9,
        "kernel should vanish at the first J_1 zero, got {:.3e}",
        v.value.norm()
    );
}

#[test]
fn real_kernel_equals_signed_sum_over_signatures() {
    // j_{(mu,delta)}(x) = (2 pi)^{|mu|} sum_{sig in {+,-}^n} sig^delta
    //                     J(2 pi x^{1/n}; sig, mu)
    let mu = vec![c(0.25, 0.1), c(-0.1, 0.0)];
    let delta = vec![1u8, 0];
    let idx = RealIndex::new(mu.clone(), delta.clone()).unwrap();
    let x = 0.6f64;
    let lhs = j_real(x, &idx, 1e-10).unwrap();

    let zeta = ucp(2.0 * PI * x.sqrt(), 0.0);
    let mut rhs = C64::new(0.0, 0.0);
    let mut err = lhs.abs_error;
    for signs in [[1i8, 1], [1, -1], [-1, 1], [-1, -1]] {
        let mut coeff = 1.0f64;
        for (s, d) in signs.iter().zip(&delta) {
            if *d == 1 && *s == -1 {
                coeff = -coeff;
            }
        }
        let term =
            j_signed_contour(zeta, &SignedIndex::new(signs.to_vec(), mu.clone()).unwrap(), 1e-11)
                .unwrap();
        rhs += coeff * term.value;
        err += term.abs_error;
    }
    let pref = (idx.mu_sum() * (2.0 * PI).ln()).exp();
    rhs *= pref;
    err = err * pref.norm() + 1e-12;
    assert!(
        (lhs.value - rhs).norm() <= err,
        "finite signed sum off by {:.3e} (budget {err:.3e})",
        (lhs.value - rhs).norm()
    );
}

// ---------------------------------------------------------------------------
// rank-two closed forms against frozen classical references
// ---------------------------------------------------------------------------

#[test]
fn rank2_real_closed_forms_match_references() {
    let even = RealIndex::new(vec![c(0.18, 0.0), c(-0.18, 0.0)], vec![0, 0]).unwrap();
    let odd = RealIndex::new(vec![c(-0.3, 0.0), c(0.3, 0.0)], vec![1, 0]).unwrap();
    for (idx, x, want, what) in [
        (&even, 0.8, c64(o::KERNEL_R2_EVEN_POS), "even pattern, x > 0"),
        (&even, -0.8, c64(o::KERNEL_R2_EVEN_NEG), "even pattern, x < 0"),
        (&odd, 0.8, c64(o::KERNEL_R2_ODD_POS), "odd pattern, x > 0"),
        (&odd, -0.8, c64(o::KERNEL_R2_ODD_NEG), "odd pattern, x < 0"),
    ] {
        let v = kernel_real(x, idx, 1e-10, None).unwrap();
        assert_rel_close(v.value, want, 1e-9, what);
        // the contour route must agree within its own claim
        let via_contour = kernel_real(x, idx, 1e-9, Some(Method::Contour)).unwrap();
        assert_claims_cover(&v, &via_contour, what);
    }
}

#[test]
fn rank2_discrete_pattern_vanishes_on_negative_axis() {
    // mu = (3/2, -3/2) with even parity pattern: 2 pi J_3(4 pi sqrt x) on the
    // positive axis, identically zero on the negative axis
    let idx = RealIndex::new(vec![c(1.5, 0.0), c(-1.5, 0.0)], vec![0, 0]).unwrap();
    let pos = kernel_real(0.7, &idx, 1e-10, None).unwrap();
    assert_rel_close(pos.value, c64(o::KERNEL_R2_DISCRETE), 1e-9, "discrete, x > 0");
    let neg = kernel_real(-0.7, &idx, 1e-10, None).unwrap();
    assert!(
        neg.value.norm() <= 1e-12,
        "discrete pattern at -x should vanish, got {:.3e}",
        neg.value.norm()
    );
    // weight-2 analogue with the complementary parity pattern
    let idx2 = RealIndex::new(vec![c(1.0, 0.0), c(-1.0, 0.0)], vec![1, 0]).unwrap();
    let neg2 = kernel_real(-0.5, &idx2, 1e-10, None).unwrap();
    assert!(neg2.value.norm() <= 1e-12);
}

#[test]
fn rank2_complex_closed_forms_match_references() {
    let odd = ComplexIndex::new(vec![c(0.1, 0.0), c(-0.1, 0.0)], vec![1, 0]).unwrap();
    let even = ComplexIndex::new(vec![c(0.15, 0.0), c(-0.15, 0.0)], vec![2, 0]).unwrap();
    let z_odd = C64::from_polar(0.5, PI / 3.0);
    let z_even = C64::from_polar(0.8, -2.0 * PI / 5.0);
    let v_odd = kernel_complex(z_odd, &odd, 1e-10, 200, None).unwrap();
    let v_even = kernel_complex(z_even, &even, 1e-10, 200, None).unwrap();
    assert_rel_close(v_odd.value, c64(o::KERNEL_C2_ODD), 1e-9, "odd weight");
    assert_rel_close(v_even.value, c64(o::KERNEL_C2_EVEN), 1e-9, "even weight");
    // contour and connection-series routes against the same references
    for (z, idx, want, what) in [
        (z_odd, &odd, c64(o::KERNEL_C2_ODD), "odd weight"),
        (z_even, &even, c64(o::KERNEL_C2_EVEN), "even weight"),
    ] {
        let vc = kernel_complex(z, idx, 1e-9, 200, Some(Method::Contour)).unwrap();
        assert_rel_close(vc.value, want, 1e-7, what);
        let vs = kernel_complex(z, idx, 1e-9, 200, Some(Method::Series)).unwrap();
        assert_rel_close(vs.value, want, 1e-7, what);
    }
}

// ---------------------------------------------------------------------------
// assembled kernels: spec'd point values, truncation, shift laws
// ---------------------------------------------------------------------------

#[test]
fn assembled_real_rank1_is_the_exponential() {
    // J_{(0),(0)}(x) = e(x); at x = 1/2 this is -1
    let idx = RealIndex::new(vec![c(0.0, 0.0)], vec![0]).unwrap();
    let auto = kernel_real(0.5, &idx, 1e-10, None).unwrap();
    assert_abs_close(auto.value, c(-1.0, 0.0), 1e-12, "J_{(0),(0)}(1/2)");
    let contour = kernel_real(0.5, &idx, 1e-9, Some(Method::Contour)).unwrap();
    assert_abs_close(contour.value, c(-1.0, 0.0), 1e-8, "contour route");
    let series = kernel_real(0.5, &idx, 1e-12, Some(Method::Series)).unwrap();
    assert_abs_close(series.value, c(-1.0, 0.0), 1e-12, "series route");
}

#[test]
fn assembled_real_shift_law() {
    // J_{(mu - mu0 e, delta - d0 e)}(x) = sgn(x)^{d0} |x|^{mu0} J_{(mu,delta)}(x)
    let mu = vec![c(0.2, 0.15), c(-0.05, -0.1)];
    let delta = vec![1u8, 0];
    let mu0 = c(0.2, -0.3);
    let idx = RealIndex::new(mu.clone(), delta.clone()).unwrap();
    let shifted = RealIndex::new(
        mu.iter().map(|&v| v - mu0).collect(),
        delta.iter().map(|&d| d ^ 1).collect(),
    )
    .unwrap();
    for &x in &[0.45, -0.45] {
        let base = kernel_real(x, &idx, 1e-10, Some(Method::Contour)).unwrap();
        let moved = kernel_real(x, &shifted, 1e-10, Some(Method::Contour)).unwrap();
        let sgn = if x < 0.0 { -1.0 } else { 1.0 };
        let factor = sgn * (mu0 * x.abs().ln()).exp();
        let want = factor * base.value;
        let budget = moved.abs_error + base.abs_error * factor.norm() + 1e-12;
        assert!(
            (moved.value - want).norm() <= budget,
            "real shift law at x={x}: off by {:.3e}",
            (moved.value - want).norm()
        );
    }
}

#[test]
fn assembled_complex_rank1_is_the_exponential() {
    // J_{(0),(0)}(z) = e(z + conj z); at z = 1/4 this is -1
    let idx = ComplexIndex::new(vec![c(0.0, 0.0)], vec![0]).unwrap();
    let auto = kernel_complex(c(0.25, 0.0), &idx, 1e-10, 200, None).unwrap();
    assert_abs_close(auto.value, c(-1.0, 0.0), 1e-12, "J_{(0),(0)}(1/4)");
    let contour = kernel_complex(c(0.25, 0.0), &idx, 1e-9, 200, Some(Method::Contour)).unwrap();
    assert_abs_close(contour.value, c(-1.0, 0.0), 1e-7, "contour route");
    // generic z off the axes
    let z = C64::from_polar(0.55, 2.2);
    let want = (C64::i() * 2.0 * PI * (z + z.conj())).exp();
    let v = kernel_complex(z, &idx, 1e-10, 200, None).unwrap();
    assert_abs_close(v.value, want, 1e-10, "J_{(0),(0)} generic z");
}

#[test]
fn assembled_complex_truncation_budget() {
    let idx = ComplexIndex::new(vec![c(0.1, 0.0), c(-0.1, 0.0)], vec![1, 0]).unwrap();
    // a generous mode budget succeeds...
    let ok = kernel_complex_assembled_polar(0.5, 0.7, &idx, 1e-10, 64);
    assert!(ok.is_ok(), "budget 64 should suffice: {ok:?}");
    // ...a tiny one is refused via the truncation error, not silently
    let err = kernel_complex_assembled_polar(0.5, 0.7, &idx, 1e-10, 3).unwrap_err();
    assert!(matches!(err, Error::TruncationBudgetExceeded { .. }), "got {err:?}");
}

#[test]
fn assembled_complex_shift_law() {
    // J_{(mu - mu0 e, m - m0 e)}(z) = [z]^{m0} ||z||^{mu0} J_{(mu,m)}(z)
    let mu = vec![c(0.12, 0.08), c(-0.12, -0.08)];
    let m = vec![2i64, -1];
    let mu0 = c(0.15, 0.05);
    let m0 = 1i64;
    let idx = ComplexIndex::new(mu.clone(), m.clone()).unwrap();
    let shifted = ComplexIndex::new(
        mu.iter().map(|&v| v - mu0).collect(),
        m.iter().map(|&w| w - m0).collect(),
    )
    .unwrap();
    let z = C64::from_polar(0.6, 1.1);
    let base = kernel_complex(z, &idx, 1e-10, 200, Some(Method::Contour)).unwrap();
    let moved = kernel_complex(z, &shifted, 1e-10, 200, Some(Method::Contour)).unwrap();
    let unit = z / z.norm();
    let factor = unit.powi(m0 as i32) * (mu0 * (z.norm() * z.norm()).ln()).exp();
    let want = factor * base.value;
    let budget = moved.abs_error + base.abs_error * factor.norm() + 1e-12;
    assert!(
        (moved.value - want).norm() <= budget,
        "complex shift law off by {:.3e} (budget {budget:.3e})",
        (moved.value - want).norm()
    );
}

// ---------------------------------------------------------------------------
// cross-method agreement, doubling, symmetries
// ---------------------------------------------------------------------------

#[test]
fn method_agreement_real_rank2() {
    let idx = RealIndex::new(vec![c(0.2, 0.05), c(-0.2, -0.05)], vec![1, 0]).unwrap();
    for &x in &[0.06, 0.12, 0.25, 0.5, -0.15, -0.4] {
        let series = kernel_real(x, &idx, 1e-11, Some(Method::Series)).unwrap();
        let contour = kernel_real(x, &idx, 1e-10, Some(Method::Contour)).unwrap();
        assert_claims_cover(&series, &contour, &format!("real rank 2 at x={x}"));
    }
}

#[test]
fn method_agreement_real_rank3() {
    let idx = RealIndex::new(
        vec![c(0.15, 0.1), c(-0.05, -0.1), c(-0.1, 0.0)],
        vec![0, 1, 0],
    )
    .unwrap();
    for &x in &[0.05, 0.15] {
        let series = j_real_series(x, &idx, 1e-11).unwrap();
        let contour = j_real(x, &idx, 1e-10).unwrap();
        assert_claims_cover(&series, &contour, &format!("real rank 3 at x={x}"));
    }
}

#[test]
fn method_agreement_complex_rank2_and_rank3() {
    let idx2 = ComplexIndex::new(vec![c(0.1, 0.07), c(-0.1, -0.07)], vec![1, 0]).unwrap();
    for &(x, phi) in &[(0.3, 0.7), (0.6, -2.2)] {
        let series = kernel_complex_assembled_polar(x, phi, &idx2, 1e-10, 200);
        let series = match series {
            Ok(v) => v,
            Err(e) => panic!("Fourier assembly failed: {e:?}"),
        };
        let conn = kernel_complex_connection_series(x, phi, &idx2, 1e-11).unwrap();
        let z = C64::from_polar(x, phi);
        let contour = kernel_complex(z, &idx2, 1e-10, 200, Some(Method::Contour)).unwrap();
        assert_claims_cover(&conn, &contour, &format!("complex rank 2 at ({x},{phi})"));
        assert_claims_cover(&series, &contour, &format!("Fourier assembly at ({x},{phi})"));
    }

    // rank 3: keep |z| small — the connection series loses accuracy to
    // cancellation between exponentially growing first-kind terms as |z| grows
    let idx3 = ComplexIndex::new(
        vec![c(0.1, 0.0), c(-0.05, 0.1), c(-0.05, -0.1)],
        vec![1, 0, -1],
    )
    .unwrap();
    for &(x, phi) in &[(0.1, 0.5), (0.25, -1.3)] {
        let conn = kernel_complex_connection_series(x, phi, &idx3, 1e-11).unwrap();
        let z = C64::from_polar(x, phi);
        let contour = kernel_complex(z, &idx3, 1e-9, 400, Some(Method::Contour)).unwrap();
        assert_claims_cover(&conn, &contour, &format!("complex rank 3 at ({x},{phi})"));
        assert!(
            (conn.value - contour.value).norm() <= 1e-5,
            "rank-3 routes differ by more than 1e-5 at ({x},{phi})"
        );
    }
}

#[test]
fn doubling_consistency_both_variants() {
    // i^n j_{(mu,m)}(x) = j_{(eta,delta)}(x^2) with (eta,delta) from the
    // doubling map, through the contour route
    let icx = ComplexIndex::new(vec![c(0.11, 0.3), c(-0.11, -0.3)], vec![2, -1]).unwrap();
    let x = 0.7f64;
    let jc = j_complex(x, &icx, 1e-10).unwrap();
    let lhs = i_pow(icx.rank() as i64) * jc.value;
    for variant in [1u8, 2] {
        let ir = doubling_map(&icx, variant).unwrap();
        let jr = j_real(x * x, &ir, 1e-10).unwrap();
        let diff = (lhs - jr.value).norm();
        let budget = jc.abs_error + jr.abs_error + 1e-12;
        assert!(
            diff <= budget,
            "doubling variant {variant}: off by {diff:.3e} (budget {budget:.3e})"
        );
    }
}

#[test]
fn rotation_and_conjugation_symmetries() {
    // the assembled kernel is a function of z itself, not of the cover:
    // going once around the origin returns the same value
    let idx = ComplexIndex::new(vec![c(0.1, 0.07), c(-0.1, -0.07)], vec![1, 0]).unwrap();
    let (x, phi) = (0.45, 0.9);
    let a = kernel_complex_assembled_polar(x, phi, &idx, 1e-10, 200).unwrap();
    let b = kernel_complex_assembled_polar(x, phi + 2.0 * PI, &idx, 1e-10, 200).unwrap();
    assert_claims_cover(&a, &b, "Fourier assembly around the origin");
    let ca = kernel_complex_connection_series(x, phi, &idx, 1e-11).unwrap();
    let cb = kernel_complex_connection_series(x, phi + 2.0 * PI, &idx, 1e-11).unwrap();
    assert_claims_cover(&ca, &cb, "connection series around the origin");

    // conjugation: for real mu the kernel satisfies
    //   conj J_{(mu,m)}(z) = (-1)^{sum m_l} J_{(mu,-m)}((-1)^n z),
    // where the parity sign and the reflection come from the e^{i m' phi}
    // modes of the Fourier series (the weights enter the ring kernels only
    // through |m_l|, and conjugating a ring kernel costs (-1)^{|m_l|}).
    let plus = ComplexIndex::new(vec![c(0.2, 0.0), c(-0.2, 0.0)], vec![2, 1]).unwrap();
    let minus = ComplexIndex::new(vec![c(0.2, 0.0), c(-0.2, 0.0)], vec![-2, -1]).unwrap();
    let z = C64::from_polar(0.5, 0.8);
    let v = kernel_complex(z, &plus, 1e-10, 200, Some(Method::Contour)).unwrap();
    let w = kernel_complex(z, &minus, 1e-10, 200, Some(Method::Contour)).unwrap();
    let sign = -1.0; // (-1)^{2+1}, and (-1)^n z = z at n = 2
    let diff = (w.value - sign * v.value.conj()).norm();
    assert!(
        diff <= v.abs_error + w.abs_error + 1e-12,
        "rank-2 conjugation symmetry off by {diff:.3e}"
    );

    // rank 3 (n odd): the argument reflects, z -> -z
    let p3 = ComplexIndex::new(
        vec![c(0.15, 0.0), c(-0.05, 0.0), c(-0.1, 0.0)],
        vec![1, 0, -2],
    )
    .unwrap();
    let m3 = ComplexIndex::new(
        vec![c(0.15, 0.0), c(-0.05, 0.0), c(-0.1, 0.0)],
        vec![-1, 0, 2],
    )
    .unwrap();
    let (x3, phi3) = (0.2, 0.6);
    let a3 = kernel_complex_connection_series(x3, phi3, &p3, 1e-12).unwrap();
    let b3 = kernel_complex_connection_series(x3, phi3 + PI, &m3, 1e-12).unwrap();
    let sign3 = -1.0; // (-1)^{1+0-2}
    let diff3 = (b3.value - sign3 * a3.value.conj()).norm();
    assert!(
        diff3 <= a3.abs_error + b3.abs_error + 1e-12,
        "rank-3 conjugation symmetry off by {diff3:.3e}"
    );
}

// ---------------------------------------------------------------------------
// property tests on the cheap (series / closed-form) routes
// ---------------------------------------------------------------------------

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn prop_first_kind_shift_is_exact(
        re in -0.4f64..0.4,
        im in -0.4f64..0.4,
        cre in -0.5f64..0.5,
        cim in -0.5f64..0.5,
        x in 0.2f64..2.5,
    ) {
        // J_l(z; sig, lambda + c e) = z^{-nc} J_l(z; sig, lambda)
        let lambda = vec![c(re, im), c(-re, 0.3 - im)];
        let shift = c(cre, cim);
        let shifted: Vec<C64> = lambda.iter().map(|&l| l + shift).collect();
        let z = ucp(x, 0.0);
        let base = j_first_kind_series(z, 1, -1, &lambda, 1e-13).unwrap();
        let moved = j_first_kind_series(z, 1, -1, &shifted, 1e-13).unwrap();
        let factor = (-shift * 2.0 * x.ln()).exp();
        let want = factor * base.value;
        let budget = moved.abs_error + base.abs_error * factor.norm()
            + 1e-13 * (1.0 + want.norm());
        prop_assert!(
            (moved.value - want).norm() <= budget,
            "shift off by {:.3e} (budget {:.3e})", (moved.value - want).norm(), budget
        );
    }

    #[test]
    fn prop_rank1_series_matches_closed_form(
        mre in -0.6f64..0.6,
        mim in -0.6f64..0.6,
        delta in 0u8..2,
        x in 0.05f64..3.0,
    ) {
        let mu = c(mre, mim);
        let idx = RealIndex::new(vec![mu], vec![delta]).unwrap();
        let series = j_real_series(x, &idx, 1e-13).unwrap();
        let closed = j_real_rank1_closed(x, mu, delta).unwrap();
        prop_assert!(
            (series.value - closed).norm()
                <= series.abs_error + 1e-12 * (1.0 + closed.norm()),
            "rank-1 series vs closed: {:.3e}", (series.value - closed).norm()
        );
    }

    #[test]
    fn prop_rank1_complex_series_matches_closed_form(
        mre in -0.4f64..0.4,
        mim in -0.4f64..0.4,
        m in -3i64..4,
        x in 0.05f64..1.5,
    ) {
        let mu = c(mre, mim);
        let idx = ComplexIndex::new(vec![mu], vec![m]).unwrap();
        let series = j_complex_series(x, &idx, 1e-13).unwrap();
        let closed = j_complex_rank1_closed(x, mu, m).unwrap();
        prop_assert!(
            (series.value - closed).norm()
                <= series.abs_error + 1e-11 * (1.0 + closed.norm()),
            "rank-1 complex series vs closed: {:.3e}", (series.value - closed).norm()
        );
    }

    #[test]
    fn prop_connection_series_conjugation(
        mre in 0.02f64..0.3,
        m1 in -2i64..3,
        x in 0.1f64..0.7,
        phi in -2.5f64..2.5,
    ) {
        // real mu, n = 2: conj J_{(mu,m)}(z) = (-1)^{sum m_l} J_{(mu,-m)}(z),
        // via the connection series on both sides
        let plus = ComplexIndex::new(vec![c(mre, 0.0), c(-mre, 0.0)], vec![m1, 0]).unwrap();
        let minus = ComplexIndex::new(vec![c(mre, 0.0), c(-mre, 0.0)], vec![-m1, 0]).unwrap();
        let a = kernel_complex_connection_series(x, phi, &plus, 1e-12).unwrap();
        let b = kernel_complex_connection_series(x, phi, &minus, 1e-12).unwrap();
        let sign = if m1 % 2 == 0 { 1.0 } else { -1.0 };
        let want = sign * a.value.conj();
        prop_assert!(
            (b.value - want).norm()
                <= a.abs_error + b.abs_error + 1e-12 * (1.0 + a.value.norm()),
            "conjugation off by {:.3e}", (b.value - want).norm()
        );
    }
}
