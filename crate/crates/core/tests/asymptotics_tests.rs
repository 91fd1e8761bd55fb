//! Tests for the large-argument machinery: the exact block identity behind
//! the connection coefficients, Bessel functions of the second kind, the
//! connection formula itself, the asymptotic expansion, and the
//! retained-phase lower bounds.

use bkl_core::asymptotics::{
    asymptotic_error_envelope, asymptotic_kernel, asymptotic_kernel_with, coefficient_bound,
    connection_coefficients, in_standard_sector, index_spread, j_second_kind,
    phase_lower_bound_coeff, phase_value, second_connection_formula, standard_sector_bounds,
    symmetric_matrix_identity_check, xi_arg, zeta_arg, CoefficientTable,
};
use bkl_core::classical::{bessel_k, hankel_1};
use bkl_core::error::Error;
use bkl_core::kernels::{kernel_complex, kernel_complex_rank2_closed};
use bkl_core::types::{ComplexIndex, Method, SecondKindParams, UniversalCoverPoint};
use bkl_core::C64;
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use std::f64::consts::{FRAC_PI_2, PI, TAU};

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

fn rat(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

fn cindex(mu: Vec<C64>, m: Vec<i64>) -> ComplexIndex {
    ComplexIndex::new(mu, m).unwrap()
}

// ---------------------------------------------------------------------------
// Exact block identity in rational arithmetic
// ---------------------------------------------------------------------------

#[test]
fn matrix_identity_hand_examples() {
    // n = 1 is the degenerate single-block case
    for r in 0..=1 {
        assert!(symmetric_matrix_identity_check(&[rat(4, 3)], r).unwrap());
    }
    // n = 2, r = 1 with x = (2, 3)
    assert!(symmetric_matrix_identity_check(&[rat(2, 1), rat(3, 1)], 1).unwrap());
    // n = 3 with one-sided splits
    let x3 = [rat(1, 2), rat(-3, 1), rat(7, 5)];
    assert!(symmetric_matrix_identity_check(&x3, 0).unwrap());
    assert!(symmetric_matrix_identity_check(&x3, 3).unwrap());
    // n = 4, r = 2 with x = (1, 2, 3, 5)
    let x4 = [rat(1, 1), rat(2, 1), rat(3, 1), rat(5, 1)];
    assert!(symmetric_matrix_identity_check(&x4, 2).unwrap());
}

#[test]
fn matrix_identity_all_small_ranks() {
    let mut rng = ChaCha8Rng::seed_from_u64(61);
    for n in 1..=6usize {
        for r in 0..=n {
            for _ in 0..20 {
                let mut x: Vec<BigRational> = Vec::with_capacity(n);
                while x.len() < n {
                    let cand = rat(rng.gen_range(-9..=9), rng.gen_range(1..=7));
                    if !x.contains(&cand) {
                        x.push(cand);
                    }
                }
                assert!(
                    symmetric_matrix_identity_check(&x, r).unwrap(),
                    "block identity failed at n = {n}, r = {r}, x = {x:?}"
                );
            }
        }
    }
}

#[test]
fn matrix_identity_rejects_degenerate_input() {
    assert!(matches!(
        symmetric_matrix_identity_check(&[], 0),
        Err(Error::DegenerateInput(_))
    ));
    assert!(matches!(
        symmetric_matrix_identity_check(&[rat(1, 1), rat(1, 1)], 1),
        Err(Error::DegenerateInput(_))
    ));
    assert!(matches!(
        symmetric_matrix_identity_check(&[rat(1, 1), rat(2, 1)], 3),
        Err(Error::DomainError(_))
    ));
}

// ---------------------------------------------------------------------------
// Bessel functions of the second kind
// ---------------------------------------------------------------------------

#[test]
fn second_kind_rank_one_is_elementary() {
    let lambda = c(0.37, -0.21);
    for theta in [0.0, PI, TAU, -PI, 3.0 * PI] {
        let params = SecondKindParams::new(vec![lambda], theta).unwrap();
        let sign = params.sign() as f64;
        for (x, omega) in [(0.8, 0.3), (14.0, -2.0)] {
            let zeta = UniversalCoverPoint::new(x, omega).unwrap();
            let v = j_second_kind(zeta, &params, 1e-12).unwrap();
            let expected = zeta.pow(-lambda) * (c(0.0, sign) * zeta.to_c64()).exp();
            assert!(v.method == Method::ClosedForm);
            assert!(
                (v.value - expected).norm() <= 1e-14 * expected.norm(),
                "rank-one value off at theta = {theta}, x = {x}, omega = {omega}"
            );
        }
    }
}

#[test]
fn second_kind_matches_classical_combinations() {
    // nu = lambda_1 - lambda_2; both the ascending-series route (x < 5) and
    // the classical route (x > 5) must reproduce the independent classical
    // evaluations of the same combinations.
    let l1 = c(0.23, 0.11);
    let lambda = vec![l1, -l1];
    let nu = 2.0 * l1;

    // xi = 1: sqrt(pi) e^{i pi/4} e^{i pi nu/2} H1_nu(2z)
    let params = SecondKindParams::new(lambda.clone(), 0.0).unwrap();
    for (x, omega) in [(4.0, 0.0), (8.0, 0.0), (4.0, 0.7), (9.0, -0.4)] {
        let zeta = UniversalCoverPoint::new(x, omega).unwrap();
        let v = j_second_kind(zeta, &params, 1e-12).unwrap();
        let h = hankel_1(nu, 2.0 * zeta.to_c64()).unwrap();
        let expected = PI.sqrt()
            * (c(0.0, PI / 4.0) + nu * c(0.0, FRAC_PI_2)).exp()
            * h;
        assert!(
            (v.value - expected).norm() <= v.abs_error + 1e-11 * expected.norm(),
            "H1 combination off at x = {x}, omega = {omega}: diff {:.3e} vs claim {:.3e}",
            (v.value - expected).norm(),
            v.abs_error
        );
    }

    // xi = i: (2/sqrt(pi)) K_nu(2x)
    let params_k = SecondKindParams::new(lambda, FRAC_PI_2).unwrap();
    for x in [4.0, 8.0] {
        let zeta = UniversalCoverPoint::new(x, 0.0).unwrap();
        let v = j_second_kind(zeta, &params_k, 1e-12).unwrap();
        let expected = 2.0 / PI.sqrt() * bessel_k(nu, c(2.0 * x, 0.0)).unwrap();
        assert!(
            (v.value - expected).norm() <= v.abs_error + 1e-11 * expected.norm(),
            "K combination off at x = {x}"
        );
    }
}

#[test]
fn second_kind_residual_decays_like_reciprocal_modulus() {
    // For normalised lambda and xi = 1 the function approaches
    // x^{-1/2} e^{2ix} with a relative residual that decays like 1/x, so
    // the absolute residual times x^{3/2} must hold a stable constant.
    let params =
        SecondKindParams::new(vec![c(0.3, 0.1), c(-0.3, -0.1)], 0.0).unwrap();
    let scaled: Vec<f64> = [25.0, 50.0, 100.0]
        .iter()
        .map(|&x| {
            let zeta = UniversalCoverPoint::new(x, 0.0).unwrap();
            let v = j_second_kind(zeta, &params, 1e-12).unwrap();
            let leading = x.powf(-0.5) * c(0.0, 2.0 * x).exp();
            (v.value - leading).norm() * x.powf(1.5)
        })
        .collect();
    for (i, s) in scaled.iter().enumerate() {
        assert!(
            (0.03..0.10).contains(s),
            "scaled residual {s} out of range at sample {i}"
        );
    }
    assert!(
        (scaled[0] / scaled[2] - 1.0).abs() < 0.1,
        "residual does not follow 1/x: scaled values {scaled:?}"
    );
}

#[test]
fn second_kind_conjugation_mirror() {
    // For real lambda, conj J(z; lambda; xi) = J(conj z; lambda; xi') with
    // the declared argument of xi' being pi - theta.
    let lambda = vec![c(0.41, 0.0), c(-0.17, 0.0)];
    for theta in [0.0, PI, FRAC_PI_2] {
        let params = SecondKindParams::new(lambda.clone(), theta).unwrap();
        let mirror = SecondKindParams::new(lambda.clone(), PI - theta).unwrap();
        for (x, omega) in [(0.6, 0.4), (3.0, -1.1), (9.0, 0.8)] {
            let v = j_second_kind(UniversalCoverPoint::new(x, omega).unwrap(), &params, 1e-12)
                .unwrap();
            let w = j_second_kind(UniversalCoverPoint::new(x, -omega).unwrap(), &mirror, 1e-12)
                .unwrap();
            assert!(
                (v.value.conj() - w.value).norm() <= v.abs_error + w.abs_error + 1e-13,
                "conjugation mirror off at theta = {theta}, x = {x}, omega = {omega}"
            );
        }
    }
}

#[test]
fn second_kind_rejects_resonant_parameters() {
    let zeta = UniversalCoverPoint::new(1.0, 0.0).unwrap();
    for lambda in [vec![c(0.75, 0.0), c(-0.25, 0.0)], vec![c(0.3, 0.2), c(0.3, 0.2)]] {
        let params = SecondKindParams::new(lambda, 0.0).unwrap();
        assert!(matches!(
            j_second_kind(zeta, &params, 1e-12),
            Err(Error::LimitRequired(_))
        ));
    }
    // xi^n must be a half turn
    assert!(SecondKindParams::new(vec![c(0.1, 0.0), c(-0.1, 0.0)], 0.3).is_err());
}

// ---------------------------------------------------------------------------
// Connection coefficients and the connection formula
// ---------------------------------------------------------------------------

#[test]
fn connection_antidiagonal_collapse() {
    let idx = cindex(
        vec![c(0.2, 0.1), c(-0.05, 0.0), c(-0.15, -0.1)],
        vec![2, -1, 0],
    );
    let n = idx.rank();
    let ms: i64 = idx.m.iter().sum();
    for r in 0..=n {
        let (cm, dm) = connection_coefficients(&idx, r).unwrap();
        for k in 1..=r {
            let xi = C64::from_polar(1.0, xi_arg(n, k));
            let expected = (-xi.conj()).powi(ms as i32);
            assert!(
                (cm[k - 1][r - k] - expected).norm() <= 1e-12,
                "C anti-diagonal off at r = {r}, k = {k}"
            );
        }
        let s = n - r;
        for k in 1..=s {
            let xi = C64::from_polar(1.0, xi_arg(n, r + k));
            let expected = (-xi.conj()).powi(ms as i32);
            assert!(
                (dm[k - 1][s - k] - expected).norm() <= 1e-12,
                "D anti-diagonal off at r = {r}, k = {k}"
            );
        }
    }
}

#[test]
fn connection_coefficients_respect_symmetric_function_bounds() {
    let mut rng = ChaCha8Rng::seed_from_u64(4242);
    for n in 2..=5usize {
        for _ in 0..5 {
            let mut mu: Vec<C64> = (0..n - 1)
                .map(|_| c(rng.gen_range(-0.4..0.4), rng.gen_range(-0.5..0.5)))
                .collect();
            let tail = -mu.iter().sum::<C64>();
            mu.push(tail);
            let m: Vec<i64> = (0..n).map(|_| rng.gen_range(-2..=2)).collect();
            let idx = cindex(mu.clone(), m);
            let im_max = mu
                .iter()
                .map(|v| v.im.abs())
                .fold(0.0f64, f64::max);
            for r in 0..=n {
                let (cm, dm) = connection_coefficients(&idx, r).unwrap();
                for k in 1..=r {
                    for j in 1..=r {
                        if k + j >= r + 1 {
                            let d = n + r - k - j + 1;
                            assert!(
                                cm[k - 1][j - 1].norm()
                                    <= coefficient_bound(n, d, im_max) * (1.0 + 1e-9),
                                "C bound violated at n = {n}, r = {r}, ({k}, {j})"
                            );
                        }
                    }
                }
                let s = n - r;
                for k in 1..=s {
                    for j in 1..=s {
                        if k + j <= s + 1 {
                            let d = s - k - j + 1;
                            assert!(
                                dm[k - 1][j - 1].norm()
                                    <= coefficient_bound(n, d, im_max) * (1.0 + 1e-9),
                                "D bound violated at n = {n}, r = {r}, ({k}, {j})"
                            );
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn connection_formula_rank_one_is_exact() {
    for m in [2i64, -3] {
        let idx = cindex(vec![c(0.3, -0.2)], vec![m]);
        for z in [C64::from_polar(0.7, 1.1), C64::from_polar(2.3, -2.8)] {
            let reference = kernel_complex(z, &idx, 1e-12, 50, None).unwrap();
            for r in 0..=1 {
                let v = second_connection_formula(z, &idx, Some(r), 1e-12).unwrap();
                assert!(
                    (v.value - reference.value).norm() <= 1e-13 * reference.value.norm(),
                    "rank-one connection formula off at m = {m}, r = {r}, z = {z}"
                );
            }
        }
    }
}

#[test]
fn connection_formula_rank_two_matches_closed_form() {
    let idx = cindex(vec![c(0.11, 0.07), c(-0.11, -0.07)], vec![1, 0]);
    let points = [
        c(3.0, 0.0),
        C64::from_polar(3.0, 0.9),
        C64::from_polar(0.4, 2.8),
        C64::from_polar(1.5, -1.1),
        C64::from_polar(8.0, 0.4),
        C64::from_polar(0.7, -2.0),
    ];
    for &z in &points {
        let closed = kernel_complex_rank2_closed(z, &idx).unwrap();
        for r in 0..=2 {
            let v = second_connection_formula(z, &idx, Some(r), 1e-10).unwrap();
            let diff = (v.value - closed.value).norm();
            assert!(
                diff <= v.abs_error + closed.abs_error,
                "claims do not cover at z = {z}, r = {r}: diff {diff:.3e}, claims {:.3e} + {:.3e}",
                v.abs_error,
                closed.abs_error
            );
        }
    }
    // non-normalised spectral parameters are restored through the
    // norm-power factor
    let skew = cindex(vec![c(0.4, 0.07), c(0.18, -0.07)], vec![1, 0]);
    let z = C64::from_polar(1.2, 0.8);
    let closed = kernel_complex_rank2_closed(z, &skew).unwrap();
    let v = second_connection_formula(z, &skew, None, 1e-10).unwrap();
    assert!((v.value - closed.value).norm() <= v.abs_error + closed.abs_error);
}

#[test]
fn connection_formula_rank_three_matches_contour() {
    let idx = cindex(
        vec![c(0.15, 0.21), c(-0.05, -0.11), c(-0.10, -0.10)],
        vec![1, -1, 0],
    );
    for z in [c(0.25, 0.0), C64::from_polar(0.12, -0.9), C64::from_polar(0.2, 2.2)] {
        let contour = kernel_complex(z, &idx, 1e-10, 400, None).unwrap();
        let v = second_connection_formula(z, &idx, None, 1e-8).unwrap();
        let diff = (v.value - contour.value).norm();
        assert!(
            diff <= v.abs_error + contour.abs_error,
            "rank-three connection formula off at z = {z}: diff {diff:.3e}, claims {:.3e} + {:.3e}",
            v.abs_error,
            contour.abs_error
        );
    }
}

#[test]
fn connection_formula_refuses_hopeless_cancellation() {
    // Deep in the second-kind growth directions the bilinear form cancels
    // more digits than the arithmetic carries; the evaluation must refuse
    // rather than return noise.
    let idx = cindex(vec![c(0.11, 0.07), c(-0.11, -0.07)], vec![1, 0]);
    let z = C64::from_polar(30.0, -2.5);
    assert!(matches!(
        second_connection_formula(z, &idx, None, 1e-10),
        Err(Error::SectorViolation(_))
    ));
}

// ---------------------------------------------------------------------------
// Asymptotic expansion
// ---------------------------------------------------------------------------

#[test]
fn asymptotic_rank_one_matches_closed_form() {
    let idx = cindex(vec![c(0.2, -0.3)], vec![-2]);
    for z in [C64::from_polar(0.9, 2.0), C64::from_polar(5.0, -0.7)] {
        let reference = kernel_complex(z, &idx, 1e-12, 50, None).unwrap();
        let v = asymptotic_kernel(z, &idx, 1).unwrap();
        assert!(v.method == Method::Asymptotic);
        assert!(
            (v.value - reference.value).norm() <= 1e-13 * reference.value.norm(),
            "rank-one asymptotic not exact at z = {z}"
        );
    }
}

#[test]
fn asymptotic_rank_two_error_slope() {
    // Leading-order error against the closed form must decay like the
    // square of the root modulus (A = 1, n = 2). The pointwise residual is a
    // two-wave beat (with exact cancellations in special directions), so
    // each dyadic radius contributes the maximum over a fan of directions,
    // which rides the decay envelope.
    let idx = cindex(vec![c(0.21, 0.33), c(-0.21, -0.33)], vec![1, 0]);
    let radii = [20.0, 40.0, 80.0, 160.0, 320.0];
    let pts: Vec<(f64, f64)> = radii
        .iter()
        .map(|&xr| {
            let worst = (0..8)
                .map(|k| {
                    let phi = 0.25 + k as f64 * (PI - 0.5) / 7.0;
                    let zr = C64::from_polar(xr, phi);
                    let z = zr * zr;
                    let closed = kernel_complex_rank2_closed(z, &idx).unwrap();
                    let v = asymptotic_kernel(z, &idx, 1).unwrap();
                    (v.value - closed.value).norm()
                })
                .fold(0.0f64, f64::max);
            (xr.ln(), worst.ln())
        })
        .collect();
    let n = pts.len() as f64;
    let (sx, sy): (f64, f64) = pts.iter().fold((0.0, 0.0), |a, p| (a.0 + p.0, a.1 + p.1));
    let (mx, my) = (sx / n, sy / n);
    let slope = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum::<f64>()
        / pts.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum::<f64>();
    assert!(
        (slope + 2.0).abs() <= 0.3,
        "log-log regression slope {slope} departs from the predicted -2"
    );
}

#[test]
fn asymptotic_error_claims_cover() {
    // rank two against the closed form, with a pure spectral-parameter
    // spread (the hardest measured case for the fitted envelope)
    let idx2 = cindex(vec![c(0.0, 0.9), c(0.0, -0.9)], vec![0, 0]);
    for xr in [5.0, 10.0, 18.0] {
        for phi in [0.0, 1.4, -2.7] {
            let zr = C64::from_polar(xr, phi);
            let z = zr * zr;
            let closed = kernel_complex_rank2_closed(z, &idx2).unwrap();
            let v = asymptotic_kernel(z, &idx2, 1).unwrap();
            let diff = (v.value - closed.value).norm();
            assert!(
                diff <= v.abs_error + closed.abs_error,
                "rank-two envelope too tight at xr = {xr}, phi = {phi}: diff {diff:.3e} vs {:.3e}",
                v.abs_error
            );
        }
    }
    // rank three against the contour evaluation
    let idx3 = cindex(
        vec![c(0.15, 0.21), c(-0.05, -0.11), c(-0.10, -0.10)],
        vec![1, -1, 0],
    );
    for xr in [4.0, 5.0, 6.5] {
        for phi in [0.4, -1.0, 2.0] {
            let zr = C64::from_polar(xr, phi);
            let z = zr * zr * zr;
            let contour = kernel_complex(z, &idx3, 1e-10, 400, None).unwrap();
            let v = asymptotic_kernel(z, &idx3, 1).unwrap();
            let diff = (v.value - contour.value).norm();
            assert!(
                diff <= v.abs_error + contour.abs_error,
                "rank-three envelope too tight at xr = {xr}, phi = {phi}: diff {diff:.3e} vs {:.3e}",
                v.abs_error
            );
        }
    }
}

#[test]
fn asymptotic_gates() {
    let idx = cindex(vec![c(0.21, 0.33), c(-0.21, -0.33)], vec![2, 0]);
    assert!(matches!(
        asymptotic_kernel(c(0.0, 0.0), &idx, 1),
        Err(Error::DegenerateInput(_))
    ));
    assert!(matches!(
        asymptotic_kernel(c(9.0, 0.0), &idx, 0),
        Err(Error::DegenerateInput(_))
    ));
    // the built-in table carries the leading term only
    assert!(matches!(
        asymptotic_kernel(c(100.0, 0.0), &idx, 2),
        Err(Error::DomainError(_))
    ));
    // spread^2 = 4 demands a root modulus of at least 4
    let zr = C64::from_polar(3.0, 0.5);
    assert!(matches!(
        asymptotic_kernel(zr * zr, &idx, 1),
        Err(Error::OutsideAsymptoticRegime(_))
    ));
}

#[test]
fn coefficient_table_parse_and_evaluate() {
    let table = CoefficientTable::parse(
        "# second-order correction, synthetic\n\
         alpha 1 monomial 2 coeff 1.0 0.0\n\
         \n\
         alpha 1 monomial 1 1 coeff 0.5 -0.25\n",
    )
    .unwrap();
    assert_eq!(table.a_max(), 2);
    let lambda = [c(2.0, 0.0), c(0.0, 3.0)];
    assert_eq!(table.b_alpha(0, &lambda), c(1.0, 0.0));
    // m_(2) = 4 - 9, m_(1,1) = 6i
    let expected = c(-5.0, 0.0) + c(0.5, -0.25) * c(0.0, 6.0);
    assert!((table.b_alpha(1, &lambda) - expected).norm() <= 1e-14);
    assert_eq!(table.b_alpha(2, &lambda), c(0.0, 0.0));

    // specialisation fills the product table on the centred parameters
    let idx = cindex(vec![c(0.2, 0.1), c(-0.2, -0.1)], vec![2, 0]);
    let coeffs = table.specialize(&idx);
    assert_eq!(coeffs.a_max, 2);
    assert_eq!(coeffs.table[0][0], c(1.0, 0.0));
    let lp = [c(0.2, 0.1) + 0.5, c(-0.2, -0.1) - 0.5];
    assert!((coeffs.table[1][0] - table.b_alpha(1, &lp)).norm() <= 1e-14);

    // the expansion accepts the extra term mechanically
    let z = c(900.0, 40.0);
    let v1 = asymptotic_kernel_with(z, &idx, 1, &table, 1.0).unwrap();
    let v2 = asymptotic_kernel_with(z, &idx, 2, &table, 1.0).unwrap();
    assert!((v1.value - v2.value).norm() > 0.0);
    assert!(v2.abs_error < v1.abs_error);

    assert!(CoefficientTable::parse("alpha 0 monomial 1 coeff 1 0").is_err());
    assert!(CoefficientTable::parse("nonsense").is_err());
    assert!(CoefficientTable::parse("alpha 1 monomial 1 coeff 1").is_err());
}

#[test]
fn asymptotic_envelope_shape() {
    // fitted constant times spread^{2a} x^{-a-n+1}, extrapolated by a fixed
    // factor per rank beyond the calibrated ranks
    let e2 = asymptotic_error_envelope(2, 2.0, 1, 4.0);
    assert!((e2 - 0.25 * 4.0 / 16.0).abs() <= 1e-15);
    let e3 = asymptotic_error_envelope(3, 1.0, 1, 10.0);
    let e4 = asymptotic_error_envelope(4, 1.0, 1, 10.0);
    let e5 = asymptotic_error_envelope(5, 1.0, 1, 10.0);
    assert!(e4 / e3 > 0.2 && e5 / e4 > 0.2, "extrapolation must not shrink");
    assert!(e3 > 0.0 && e4 > 0.0 && e5 > 0.0);
    // deeper expansions tighten the claim when the spread allows it
    assert!(
        asymptotic_error_envelope(2, 1.0, 2, 50.0) < asymptotic_error_envelope(2, 1.0, 1, 50.0)
    );
}

// ---------------------------------------------------------------------------
// Retained phases
// ---------------------------------------------------------------------------

#[test]
fn phase_diagonals_are_exact_zeros() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for n in 2..=6usize {
        for r in 0..=n {
            for _ in 0..10 {
                let z = C64::from_polar(
                    rng.gen_range(0.1..10.0),
                    rng.gen_range(-PI..PI),
                );
                // first-block pairings cancel exactly in floating point
                for k in 1..=r {
                    let j = r - k + 1;
                    assert_eq!(phase_value(n, r, k, j, z), 0.0);
                    assert_eq!(phase_lower_bound_coeff(n, r, k, j, 0.2), Some(0.0));
                }
                // second-block angles differ by a full turn, leaving roundoff
                for k in 1..=(n - r) {
                    let j = n - r - k + 1;
                    assert!(
                        phase_value(n, r, r + k, r + j, z).abs() <= 1e-12 * (1.0 + z.norm())
                    );
                    assert_eq!(phase_lower_bound_coeff(n, r, r + k, r + j, 0.2), Some(0.0));
                }
            }
        }
    }
}

#[test]
fn phase_lower_bounds_hold_in_standard_sector() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for n in 2..=5usize {
        let vartheta = PI / (4.0 * n as f64);
        let (lo, hi) = standard_sector_bounds(n, vartheta);
        for _ in 0..250 {
            let angle = rng.gen_range(lo + 1e-9..hi - 1e-9);
            let z = C64::from_polar(10f64.powf(rng.gen_range(-1.0..1.0)), angle);
            assert!(in_standard_sector(n, vartheta, z));
            for r in 0..=n {
                for k in 1..=n {
                    for j in 1..=n {
                        if let Some(coeff) = phase_lower_bound_coeff(n, r, k, j, vartheta) {
                            let val = phase_value(n, r, k, j, z);
                            assert!(
                                val >= coeff * z.norm() * (1.0 - 1e-12) - 1e-12,
                                "phase bound violated: n = {n}, r = {r}, (k, j) = ({k}, {j}), \
                                 z = {z}, value {val:.6e} < bound {:.6e}",
                                coeff * z.norm()
                            );
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn standard_sector_geometry() {
    let (lo, hi) = standard_sector_bounds(2, 0.1);
    assert!((lo - (-PI + 0.1)).abs() <= 1e-12);
    assert!((hi - (PI - 0.1)).abs() <= 1e-12);
    let (lo3, hi3) = standard_sector_bounds(3, 0.05);
    assert!((lo3 - (-FRAC_PI_2 - PI / 3.0 + 0.05)).abs() <= 1e-12);
    assert!((hi3 - (-FRAC_PI_2 + 2.0 * PI / 3.0 - 0.05)).abs() <= 1e-12);
    // angles reduced by full turns still count as inside
    assert!(in_standard_sector(2, 0.1, C64::from_polar(1.0, -PI + 0.15)));
    assert!(!in_standard_sector(2, 0.1, C64::from_polar(1.0, PI - 0.05)));
    assert!(!in_standard_sector(3, 0.05, c(0.0, 0.0)));
}

#[test]
fn index_spread_and_root_arguments() {
    assert_eq!(
        index_spread(&cindex(vec![c(0.21, 0.33), c(-0.21, -0.33)], vec![2, 0])),
        2.0
    );
    assert_eq!(index_spread(&cindex(vec![c(0.0, 0.9), c(0.0, -0.9)], vec![0, 0])), 1.9);
    // rank one centres to zero in both components
    assert_eq!(index_spread(&cindex(vec![c(0.4, 0.0)], vec![5])), 1.0);
    // declared root arguments are unreduced
    assert_eq!(xi_arg(4, 1), 0.0);
    assert!((xi_arg(4, 4) - 3.0 * TAU / 4.0).abs() <= 1e-15);
    assert!((zeta_arg(4, 2, 1) - (-TAU / 4.0)).abs() <= 1e-15);
    assert!((zeta_arg(4, 2, 4) - TAU / 2.0).abs() <= 1e-15);
}
