mod common;

use bkl_core::contours::*;
use bkl_core::quad::integrate_segment;
use bkl_core::types::Orientation;
use bkl_core::{Error, C64};

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

fn min_pole_distance(ct: &bkl_core::types::Contour, poles: &[C64]) -> f64 {
    poles
        .iter()
        .map(|&p| ct.distance_to(p))
        .fold(f64::INFINITY, f64::min)
}

#[test]
fn single_chain_detour_clears_poles() {
    let ct = make_contour_c(2, &[c(0.0, 0.0)], &[0.0], -0.4).unwrap();
    assert_eq!(ct.orientation, Orientation::Upward);
    let poles = descending_poles(&[c(0.0, 0.0)], &[0.0], -3.0);
    assert!(min_pole_distance(&ct, &poles) >= POLE_CLEARANCE);
    // the detour must wrap the chain tip at 0: some vertex lies right of it
    assert!(ct.vertices.iter().any(|v| v.re > 0.2));
    // ends on the base line
    assert!((ct.vertices.first().unwrap().re - -0.4).abs() < 1e-12);
    assert!((ct.vertices.last().unwrap().re - -0.4).abs() < 1e-12);
}

#[test]
fn interleaved_chains_get_one_bulge() {
    let lam = [c(0.3, 0.0), c(-0.3, 0.0)];
    let ct = make_contour_c(1, &lam, &[0.0, 0.0], -0.3).unwrap();
    let poles = descending_poles(&lam, &[0.0, 0.0], -4.0);
    assert!(min_pole_distance(&ct, &poles) >= POLE_CLEARANCE);
    assert!(ct.vertices.iter().any(|v| v.re > 0.3));
}

#[test]
fn repeated_lambda_matches_single_chain_contour() {
    let a = make_contour_c(2, &[c(0.0, 0.0)], &[0.0], -0.4).unwrap();
    let b = make_contour_c(2, &[c(0.0, 0.0), c(0.0, 0.0)], &[0.0, 0.0], -0.4).unwrap();
    assert_eq!(a.vertices.len(), b.vertices.len());
    for (u, v) in a.vertices.iter().zip(&b.vertices) {
        assert!((u - v).norm() < 1e-12, "vertex mismatch {u} vs {v}");
    }
}

#[test]
fn infeasible_base_line_is_rejected() {
    // bound is 1/2 + (0 - 1)/1 = -1/2 for d=1, lambda=(0)
    match make_contour_c(1, &[c(0.0, 0.0)], &[0.0], 0.0) {
        Err(Error::InfeasibleContour(_)) => {}
        other => panic!("expected InfeasibleContour, got {other:?}"),
    }
}

#[test]
fn loop_contour_encloses_descending_chain() {
    let ct = make_contour_c_prime(&[c(0.0, 0.0)], 30.0).unwrap();
    assert_eq!(ct.orientation, Orientation::Loop);
    assert_eq!(ct.vertices.len(), 4);
    // bottom edge, right edge, top edge; counter-clockwise
    assert!(ct.vertices[0].re < ct.vertices[1].re);
    assert!(ct.vertices[1].im < ct.vertices[2].im);
    assert!(ct.vertices[3].re < ct.vertices[2].re);
    let poles = descending_poles(&[c(0.0, 0.0)], &[0.0], -30.0);
    assert!(min_pole_distance(&ct, &poles) >= POLE_CLEARANCE);
    // height stays near the pole row
    assert!(ct.vertices[0].im >= -1.0 && ct.vertices[2].im <= 1.0);
}

#[test]
fn raised_lambda_raises_the_loop() {
    let ct = make_contour_c_prime(&[c(0.2, 5.0)], 40.0).unwrap();
    assert!(ct.vertices[0].im > 3.9 && ct.vertices[0].im < 5.0);
    assert!(ct.vertices[2].im > 5.0 && ct.vertices[2].im < 6.1);
    match make_contour_c_prime(&[c(0.2, 5.0)], 1.0) {
        Err(Error::InfeasibleContour(_)) => {}
        other => panic!("expected InfeasibleContour, got {other:?}"),
    }
}

#[test]
fn loop_tail_envelope_is_tiny_at_moderate_depth() {
    // e^{60} 30^{-62} < 1e-60
    let env = loop_tail_envelope(2, 0.0, 30.0);
    assert!(env < 1e-60, "envelope {env}");
    assert!(loop_depth_for(2, &[c(0.0, 0.0), c(0.0, 0.0)], 1e-18) <= 30.0);
}

#[test]
fn cauchy_shift_invariance_between_pole_free_lines() {
    // integrand analytic between Re s = -0.4 and Re s = -0.6 with rapid
    // vertical decay: integral along the two contours must agree
    let f = |s: C64| (s * s * 0.5).exp() * (s + 3.0).ln();
    let ia = make_contour_c(1, &[c(5.0, 0.0)], &[0.0], -0.41)
        .map(|ct| integrate_polyline(&f, &ct))
        .unwrap();
    let ib = make_contour_c(1, &[c(5.0, 0.0)], &[0.0], -0.63)
        .map(|ct| integrate_polyline(&f, &ct))
        .unwrap();
    assert!(
        (ia - ib).norm() < 1e-10,
        "shift changed the integral: {ia} vs {ib}"
    );
}

fn integrate_polyline(f: &dyn Fn(C64) -> C64, ct: &bkl_core::types::Contour) -> C64 {
    // test helper: straight-segment quadrature between the vertices plus
    // vertical tails long enough for the gaussian decay of the test integrand
    let mut total = C64::new(0.0, 0.0);
    let first = ct.vertices[0];
    let last = *ct.vertices.last().unwrap();
    let tail = 14.0;
    let legs: Vec<(C64, C64)> = std::iter::once((first - c(0.0, tail), first))
        .chain(ct.vertices.windows(2).map(|w| (w[0], w[1])))
        .chain(std::iter::once((last, last + c(0.0, tail))))
        .collect();
    for (a, b) in legs {
        total += integrate_segment(&mut |s| f(s), a, b, 1e-13, 20_000)
            .unwrap()
            .value;
    }
    total
}

#[test]
fn sectors_have_the_prescribed_apertures() {
    let s2 = kernel_sector(2, 0.1).unwrap();
    // (-pi/2 - pi/2 + 0.1, -pi/2 + 3 pi/2 - 0.1)
    assert!((s2.center_arg - 0.0).abs() < 1e-12);
    assert!((s2.half_width - (std::f64::consts::PI - 0.1)).abs() < 1e-12);
    let s3 = kernel_sector(3, 0.05).unwrap();
    let lo = -std::f64::consts::PI / 2.0 - std::f64::consts::PI / 3.0 + 0.05;
    let hi = -std::f64::consts::PI / 2.0 + 2.0 * std::f64::consts::PI / 3.0 - 0.05;
    assert!((s3.center_arg - 0.5 * (lo + hi)).abs() < 1e-12);
    assert!(s3.contains_arg(-std::f64::consts::PI / 2.0));
    assert!(!s3.contains_arg(std::f64::consts::PI));
    let sd = sector_for_direction(0.0, 2, 0.2).unwrap();
    assert!((sd.center_arg - std::f64::consts::PI / 2.0).abs() < 1e-12);
}
