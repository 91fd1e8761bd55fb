//! Shared helpers for the integration tests: frozen reference values and
//! comparison utilities.

pub mod oracles;

use bkl_core::C64;

/// Build a complex number from a frozen `(re, im)` pair.
pub fn c64(pair: (f64, f64)) -> C64 {
    C64::new(pair.0, pair.1)
}

/// Assert absolute closeness against a reference value.
#[track_caller]
pub fn assert_abs_close(got: C64, want: C64, tol: f64, what: &str) {
    let err = (got - want).norm();
    assert!(
        err <= tol,
        "{what}: got {got}, want {want}, |diff| = {err:e} > {tol:e}"
    );
}

/// Assert relative closeness against a nonzero reference value.
#[track_caller]
pub fn assert_rel_close(got: C64, want: C64, tol: f64, what: &str) {
    let scale = want.norm().max(f64::MIN_POSITIVE);
    let err = (got - want).norm() / scale;
    assert!(
        err <= tol,
        "{what}: got {got}, want {want}, rel diff = {err:e} > {tol:e}"
    );
}
