//! Complex log-gamma and reciprocal gamma.
//!
//! `log_gamma` is the analytic continuation of `ln Gamma` from the positive
//! real axis (NOT the principal logarithm of `Gamma`), computed by the
//! Stirling series after shifting the argument to modulus at least 10.5, with
//! the reflection formula for `Re s < 1/2`. This is the branch every gamma
//! factor in the crate is built on, so its imaginary part matters: it grows
//! without bound along vertical lines instead of wrapping.

use crate::error::{Error, Result};
use crate::C64;

const LN_2PI_HALF: f64 = 0.918_938_533_204_672_74; // ln(2 pi)/2
const LN_PI: f64 = 1.144_729_885_849_400_2;
const LN_2: f64 = std::f64::consts::LN_2;
const PI: f64 = std::f64::consts::PI;

/// Stirling coefficients `B_{2n} / ((2n)(2n-1))` for `n = 1..=15`.
const STIRLING: [f64; 15] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
    43867.0 / 244188.0,
    -174611.0 / 125400.0,
    77683.0 / 5796.0,
    -236364091.0 / 1506960.0,
    657931.0 / 300.0,
    -3392780147.0 / 93960.0,
    1723168255201.0 / 2492028.0,
];

/// If `s` is exactly a nonpositive integer, return it.
pub fn nonpositive_integer_at(s: C64) -> Option<i64> {
    if s.im == 0.0 && s.re <= 0.0 && s.re.fract() == 0.0 {
        Some(s.re as i64)
    } else {
        None
    }
}

/// Accurate complex `log(1 + w)`: the rounding of `1 + w` is compensated by
/// evaluating `log` at the rounded point and rescaling.
fn ln_1p_c(w: C64) -> C64 {
    // below this size the quadratic term of the series is < 1e-60 and the
    // compensated quotient risks underflow-to-NaN in the complex division
    if w.re.abs() < 1e-30 && w.im.abs() < 1e-30 {
        return w;
    }
    let u = C64::new(1.0, 0.0) + w;
    if (u - 1.0).norm() == 0.0 {
        return w;
    }
    w * u.ln() / (u - 1.0)
}

/// Branch-continuous `log sin(pi s)` matching the reflection formula for the
/// continued `log_gamma`: on the upper half plane
/// `log sin(pi s) = -i pi s + i pi/2 - ln 2 + log(1 - e^{2 pi i s})`,
/// and by conjugation symmetry below. Real `s` in `(0,1)` gives the real log.
pub fn log_sin_pi(s: C64) -> Result<C64> {
    if s.im == 0.0 && s.re.fract() == 0.0 {
        return Err(Error::PoleAtNonpositiveInteger(s.re as i64));
    }
    if s.im < 0.0 {
        return Ok(log_sin_pi(s.conj())?.conj());
    }
    // |e^{2 pi i s}| = e^{-2 pi Im s} <= 1, with equality only on the real
    // axis where the distance to the nearest integer keeps log1p finite.
    let w = (C64::new(0.0, 2.0 * PI) * s).exp();
    let log1m = ln_1p_c(-w);
    Ok(C64::new(0.0, -PI) * s + C64::new(-LN_2, PI / 2.0) + log1m)
}

/// Analytic continuation of `ln Gamma` from the positive real axis.
pub fn log_gamma(s: C64) -> Result<C64> {
    if let Some(k) = nonpositive_integer_at(s) {
        return Err(Error::PoleAtNonpositiveInteger(k));
    }
    if !s.re.is_finite() || !s.im.is_finite() {
        return Err(Error::DomainError("log_gamma of non-finite argument".into()));
    }
    if s.re < 0.5 {
        // reflection: ln Gamma(s) = ln pi - log sin(pi s) - ln Gamma(1 - s)
        let refl = log_gamma(C64::new(1.0, 0.0) - s)?;
        return Ok(C64::new(LN_PI, 0.0) - log_sin_pi(s)? - refl);
    }
    // push the argument until the Stirling series converges fast
    let shift = (10.5 - s.re).ceil().max(0.0);
    let k = shift as usize;
    let mut log_prod = C64::new(0.0, 0.0);
    for j in 0..k {
        // every factor has real part >= 0.5, so the principal logs add up
        // without crossing the branch cut
        log_prod += (s + j as f64).ln();
    }
    let z = s + k as f64;
    // Stirling series at z, |z| >= 10.5
    let zinv2 = 1.0 / (z * z);
    let mut corr = C64::new(0.0, 0.0);
    let mut pw = 1.0 / z;
    for c in STIRLING {
        corr += pw * c;
        pw *= zinv2;
    }
    let stirling = (z - 0.5) * z.ln() - z + LN_2PI_HALF + corr;
    Ok(stirling - log_prod)
}

/// Gamma function; errors on the poles.
pub fn gamma(s: C64) -> Result<C64> {
    Ok(log_gamma(s)?.exp())
}

/// Entire reciprocal `1/Gamma`, returning exactly 0 at the poles of `Gamma`.
pub fn recip_gamma(s: C64) -> C64 {
    if nonpositive_integer_at(s).is_some() {
        return C64::new(0.0, 0.0);
    }
    match log_gamma(s) {
        Ok(lg) => (-lg).exp(),
        Err(_) => C64::new(0.0, 0.0),
    }
}
