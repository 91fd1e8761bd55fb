//! Classical Bessel functions `J`, `Y`, `K` and the Hankel functions of
//! complex order and complex argument.
//!
//! Routing is by regime:
//!
//! * ascending series (double-double accumulation) for small arguments and
//!   near the imaginary axis, where cancellation is controlled;
//! * real-axis loop integrals (Schläfli-type) for moderate arguments with a
//!   positive real part;
//! * the modified function `K` through its monotone `cosh` integral, and the
//!   Hankel functions through their exact `K`-connection in the half plane
//!   where they decay (computing the decaying Hankel function from `J` and
//!   `Y` would cancel catastrophically there);
//! * Poincaré asymptotic expansions with minimal-term truncation for large
//!   arguments;
//! * quadrant rotation identities for arguments near the negative real axis.
//!
//! Accuracy degrades by a factor of roughly `e^{pi |Im nu|}` through the
//! rotation and reflection identities, as for every method based on them;
//! the crate uses orders with `|Im nu| <= 5` or so.

use crate::dd::DdComplex;
use crate::error::{Error, Result};
use crate::gamma::recip_gamma;
use crate::quad::integrate_segment;
use crate::C64;

const PI: f64 = std::f64::consts::PI;

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// Threshold above which the Poincaré expansions reach full accuracy.
fn asymptotic_threshold(nu: C64) -> f64 {
    let n2 = nu.norm_sqr();
    (1.1 * n2 + 10.0).max(35.0)
}

/// True when the ascending series can be summed without losing more than
/// double-double accumulation recovers.
fn series_ok(z: C64) -> bool {
    let r = z.norm();
    r <= 9.0 || (r <= 45.0 && r - z.im.abs() <= 20.0)
}

/// Ascending series with double-double accumulation of the term ratio chain;
/// the common prefactor only needs relative f64 accuracy.
fn series_j(nu: C64, z: C64) -> Result<C64> {
    // negative integer order reduces to positive integer order
    if nu.im == 0.0 && nu.re < 0.0 && nu.re.fract() == 0.0 {
        let n = (-nu.re) as i64;
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        return Ok(series_j(-nu, z)? * sign);
    }
    if z.norm() == 0.0 {
        if nu == c(0.0, 0.0) {
            return Ok(c(1.0, 0.0));
        }
        if nu.re > 0.0 || (nu.im == 0.0 && nu.re.fract() == 0.0) {
            return Ok(c(0.0, 0.0));
        }
        return Err(Error::DomainError(
            "Bessel J is unbounded at 0 for this order".into(),
        ));
    }
    // common factor (z/2)^nu / Gamma(nu + 1), principal power
    let prefactor = (nu * (z / 2.0).ln()).exp() * recip_gamma(nu + 1.0);
    // ratio chain t_0 = 1, t_k = t_{k-1} * (-z^2/4) / (k (nu + k))
    let w = DdComplex::from_c64(-z * z * 0.25);
    let nu_dd = DdComplex::from_c64(nu);
    let mut term = DdComplex::ONE;
    let mut sum = DdComplex::ONE;
    let mut converged = false;
    for k in 1..=800usize {
        let kf = k as f64;
        let den = nu_dd.add(DdComplex::from_c64(c(kf, 0.0))).mul_f64(kf);
        term = term.mul(w).div(den);
        sum = sum.add(term);
        if term.abs_est() < 1e-25 * sum.abs_est().max(1e-290) && kf > z.norm() {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::NoConvergence {
            estimate: term.abs_est(),
            tolerance: 1e-25,
            evaluations: 800,
        });
    }
    Ok(prefactor * sum.to_c64())
}

/// Poincaré coefficients `a_k(nu)` via their ratio recurrence, summed with
/// minimal-term truncation; returns (sum of a_k / z^k with phases `phase^k`,
/// size of the first omitted term).
fn poincare_sum(nu: C64, z: C64, phase: C64) -> (C64, f64) {
    let four_nu2 = nu * nu * 4.0;
    let mut term = c(1.0, 0.0);
    let mut sum = term;
    let mut last = term.norm();
    let mut tail = 0.0;
    for k in 1..=40usize {
        let kf = k as f64;
        let num = four_nu2 - c((2.0 * kf - 1.0) * (2.0 * kf - 1.0), 0.0);
        term = term * num / (8.0 * kf) / z * phase;
        let t = term.norm();
        if t > last {
            // the expansion started diverging: stop before this term
            tail = t.min(last);
            break;
        }
        sum += term;
        tail = t;
        last = t;
        if t < 1e-18 * sum.norm().max(1e-290) {
            break;
        }
    }
    (sum, tail)
}

/// Hankel function of the first kind by its large-argument expansion,
/// valid away from the negative real axis.
fn asym_h1(nu: C64, z: C64) -> C64 {
    let omega = z - nu * (PI / 2.0) - PI / 4.0;
    let amp = (c(2.0, 0.0) / (PI * z)).sqrt();
    let (s, _) = poincare_sum(nu, z, c(0.0, 1.0));
    amp * (c(0.0, 1.0) * omega).exp() * s
}

/// Hankel function of the second kind by its large-argument expansion.
fn asym_h2(nu: C64, z: C64) -> C64 {
    let omega = z - nu * (PI / 2.0) - PI / 4.0;
    let amp = (c(2.0, 0.0) / (PI * z)).sqrt();
    let (s, _) = poincare_sum(nu, z, c(0.0, -1.0));
    amp * (c(0.0, -1.0) * omega).exp() * s
}

/// Modified function `K` by its large-argument expansion.
fn asym_k(nu: C64, z: C64) -> C64 {
    let amp = (PI / (z * 2.0)).sqrt();
    let (s, _) = poincare_sum(nu, z, c(1.0, 0.0));
    amp * (-z).exp() * s
}

/// Truncation height for integrals against `exp(-Re z * sinh t)` with
/// polynomial-in-`exp` growth `exp(g t)`.
fn sinh_cutoff(re_z: f64, g: f64) -> f64 {
    let mut t: f64 = 4.0;
    for _ in 0..8 {
        t = ((45.0 + g.abs() * t) / re_z).max(2.0).asinh();
    }
    t.min(60.0)
}

/// Schläfli integral for `J`, valid for `Re z > 0`.
fn legs_j(nu: C64, z: C64) -> Result<C64> {
    let scale = z.im.abs().min(45.0).exp();
    let tol = 1e-14 * scale.max(1.0);
    let budget = 80_000;
    let osc = integrate_segment(
        |t| (z * t.re.sin() - nu * t.re).cos(),
        c(0.0, 0.0),
        c(PI, 0.0),
        tol,
        budget,
    )?;
    let snp = (PI * nu).sin();
    let mut second = c(0.0, 0.0);
    if snp.norm() > 1e-22 {
        let t_max = sinh_cutoff(z.re, nu.re.abs());
        let r = integrate_segment(
            |t| (-z * t.re.sinh() - nu * t.re).exp(),
            c(0.0, 0.0),
            c(t_max, 0.0),
            tol,
            budget,
        )?;
        second = r.value;
    }
    Ok((osc.value - snp * second) / PI)
}

/// Real-axis integral for `Y`, valid for `Re z > 0`.
fn legs_y(nu: C64, z: C64) -> Result<C64> {
    let scale = z.im.abs().min(45.0).exp();
    let tol = 1e-14 * scale.max(1.0);
    let budget = 80_000;
    let osc = integrate_segment(
        |t| (z * t.re.sin() - nu * t.re).sin(),
        c(0.0, 0.0),
        c(PI, 0.0),
        tol,
        budget,
    )?;
    let cnp = (PI * nu).cos();
    let t_max = sinh_cutoff(z.re, nu.re.abs());
    let dec = integrate_segment(
        |t| {
            let t = t.re;
            let growth = (nu * t).exp() + (-nu * t).exp() * cnp;
            growth * (-z * t.sinh()).exp()
        },
        c(0.0, 0.0),
        c(t_max, 0.0),
        tol,
        budget,
    )?;
    Ok((osc.value - dec.value) / PI)
}

/// Monotone integral for `K`, valid for `Re z > 0`.
fn k_integral(nu: C64, z: C64) -> Result<C64> {
    // cutoff where Re z * cosh t dominates the cosh(nu t) growth
    let mut t_max: f64 = 3.0;
    for _ in 0..8 {
        t_max = ((45.0 + nu.re.abs() * t_max + z.re) / z.re).max(2.0).acosh();
    }
    let t_max = t_max.min(60.0);
    let scale = (-z.re).exp().min(1.0).max(1e-290);
    let tol = 1e-14 * scale;
    let r = integrate_segment(
        |t| {
            let t = t.re;
            (nu * t).cosh() * (-z * t.cosh()).exp()
        },
        c(0.0, 0.0),
        c(t_max, 0.0),
        tol,
        200_000,
    )?;
    Ok(r.value)
}


/// Collapse a signed-zero imaginary part to +0 so that points exactly on the
/// negative real axis are continued from above, matching the convention of
/// the reference implementations.
fn normalize_axis(z: C64) -> C64 {
    C64::new(z.re, z.im + 0.0)
}

/// Bessel function of the first kind, principal branch.
pub fn bessel_j(nu: C64, z: C64) -> Result<C64> {
    let z = normalize_axis(z);
    if z.norm() == 0.0 || series_ok(z) {
        return series_j(nu, z);
    }
    if z.norm() >= asymptotic_threshold(nu) {
        if z.im == 0.0 && z.re < 0.0 {
            // exactly on the negative axis: continue from above
            let rot = (c(0.0, 1.0) * PI * nu).exp();
            return Ok(rot * bessel_j(nu, -z)?);
        }
        let h1 = asym_h1(nu, z);
        let h2 = asym_h2(nu, z);
        return Ok((h1 + h2) * 0.5);
    }
    if z.re > 0.05 {
        return legs_j(nu, z);
    }
    // near-axis points were caught by the series; what remains has a large
    // negative real part, so rotate through the half turn on the shorter side
    let s = if z.im >= 0.0 { 1.0 } else { -1.0 };
    let rot = (c(0.0, s) * PI * nu).exp();
    Ok(rot * bessel_j(nu, -z)?)
}

/// Bessel function of the second kind, principal branch.
pub fn bessel_y(nu: C64, z: C64) -> Result<C64> {
    let z = normalize_axis(z);
    if z.norm() == 0.0 {
        return Err(Error::DomainError("Bessel Y is singular at 0".into()));
    }
    if z.norm() >= asymptotic_threshold(nu) {
        if z.im == 0.0 && z.re < 0.0 {
            return rotate_y(nu, z);
        }
        let h1 = asym_h1(nu, z);
        let h2 = asym_h2(nu, z);
        return Ok((h1 - h2) / c(0.0, 2.0));
    }
    if z.im.abs() <= 2.0 {
        if z.re > 0.05 {
            return legs_y(nu, z);
        }
        return rotate_y(nu, z);
    }
    // off-axis: both Hankel functions are stable via their K-connections
    let h1 = hankel_1(nu, z)?;
    let h2 = hankel_2(nu, z)?;
    Ok((h1 - h2) / c(0.0, 2.0))
}

/// Continuation of `Y` through the negative real axis from the reflected
/// point, on the side of the shorter rotation.
fn rotate_y(nu: C64, z: C64) -> Result<C64> {
    let w = -z;
    let jw = bessel_j(nu, w)?;
    let yw = bessel_y(nu, w)?;
    let cnp = (PI * nu).cos();
    let s = if z.im >= 0.0 { 1.0 } else { -1.0 };
    // Y(w e^{+-i pi}) = e^{-+ i pi nu} Y(w) +- 2i cos(pi nu) J(w)
    let phase = (c(0.0, -s) * PI * nu).exp();
    Ok(phase * yw + c(0.0, 2.0 * s) * cnp * jw)
}

/// Modified Bessel function of the second kind.
pub fn bessel_k(nu: C64, z: C64) -> Result<C64> {
    let z = normalize_axis(z);
    if z.norm() == 0.0 {
        return Err(Error::DomainError("K is singular at 0".into()));
    }
    if z.norm() >= asymptotic_threshold(nu) && z.arg().abs() <= 2.35 {
        return Ok(asym_k(nu, z));
    }
    if z.re > 0.05 {
        return k_integral(nu, z);
    }
    Err(Error::DomainError(
        "K is supported for Re z > 0.05 or in the asymptotic regime".into(),
    ))
}

/// Hankel function of the first kind.
pub fn hankel_1(nu: C64, z: C64) -> Result<C64> {
    let z = normalize_axis(z);
    if z.norm() == 0.0 {
        return Err(Error::DomainError("Hankel functions are singular at 0".into()));
    }
    if z.norm() >= asymptotic_threshold(nu) {
        if z.arg() > -0.9 * PI {
            return Ok(asym_h1(nu, z));
        }
        // near the lower negative axis H1 explodes; recover it from J and H2
        let j = bessel_j(nu, z)?;
        return Ok(j * 2.0 - asym_h2(nu, z));
    }
    if z.im > 2.0 {
        // decaying direction: exact K-connection, evaluated where K's
        // integral is monotone
        let zeta = c(0.0, -1.0) * z; // Re zeta = Im z > 2
        let k = bessel_k(nu, zeta)?;
        return Ok(c(0.0, -2.0 / PI) * (c(0.0, -PI / 2.0) * nu).exp() * k);
    }
    if z.im < -2.0 {
        let j = bessel_j(nu, z)?;
        let h2 = hankel_2(nu, z)?;
        return Ok(j * 2.0 - h2);
    }
    let j = bessel_j(nu, z)?;
    let y = bessel_y(nu, z)?;
    Ok(j + c(0.0, 1.0) * y)
}

/// `e^{-iz} H^{(1)}_nu(z)`: the first-kind function with its exponential
/// factor removed. The factor is the sole source of overflow or underflow at
/// large heights, so the scaled form stays representable throughout the
/// sector `arg z > -0.9 pi`; paired products against the conjugate argument
/// recombine with an exactly unimodular phase.
pub fn hankel_1_scaled(nu: C64, z: C64) -> Result<C64> {
    let z = normalize_axis(z);
    if z.norm() == 0.0 {
        return Err(Error::DomainError("Hankel functions are singular at 0".into()));
    }
    if z.norm() >= asymptotic_threshold(nu) {
        if z.arg() <= -0.9 * PI {
            return Err(Error::DomainError(
                "the scaled first-kind Hankel function keeps away from the lower negative axis"
                    .into(),
            ));
        }
        let phase = -nu * (PI / 2.0) - PI / 4.0;
        let amp = (c(2.0, 0.0) / (PI * z)).sqrt();
        let (s, _) = poincare_sum(nu, z, c(0.0, 1.0));
        return Ok(amp * (c(0.0, 1.0) * phase).exp() * s);
    }
    if z.im.abs() > 700.0 {
        return Err(Error::DomainError(
            "the scaled Hankel functions need the asymptotic regime at this height".into(),
        ));
    }
    Ok((c(0.0, -1.0) * z).exp() * hankel_1(nu, z)?)
}

/// `e^{iz} H^{(2)}_nu(z)`, the mirror of [`hankel_1_scaled`]; stable in the
/// sector `arg z < 0.9 pi`.
pub fn hankel_2_scaled(nu: C64, z: C64) -> Result<C64> {
    let z = normalize_axis(z);
    if z.norm() == 0.0 {
        return Err(Error::DomainError("Hankel functions are singular at 0".into()));
    }
    if z.norm() >= asymptotic_threshold(nu) {
        if z.arg() >= 0.9 * PI {
            return Err(Error::DomainError(
                "the scaled second-kind Hankel function keeps away from the upper negative axis"
                    .into(),
            ));
        }
        let phase = nu * (PI / 2.0) + PI / 4.0;
        let amp = (c(2.0, 0.0) / (PI * z)).sqrt();
        let (s, _) = poincare_sum(nu, z, c(0.0, -1.0));
        return Ok(amp * (c(0.0, 1.0) * phase).exp() * s);
    }
    if z.im.abs() > 700.0 {
        return Err(Error::DomainError(
            "the scaled Hankel functions need the asymptotic regime at this height".into(),
        ));
    }
    Ok((c(0.0, 1.0) * z).exp() * hankel_2(nu, z)?)
}

/// Hankel function of the second kind.
pub fn hankel_2(nu: C64, z: C64) -> Result<C64> {
    let z = normalize_axis(z);
    if z.norm() == 0.0 {
        return Err(Error::DomainError("Hankel functions are singular at 0".into()));
    }
    if z.norm() >= asymptotic_threshold(nu) {
        if z.arg() < 0.9 * PI {
            return Ok(asym_h2(nu, z));
        }
        let j = bessel_j(nu, z)?;
        return Ok(j * 2.0 - asym_h1(nu, z));
    }
    if z.im < -2.0 {
        let zeta = c(0.0, 1.0) * z; // Re zeta = -Im z > 2
        let k = bessel_k(nu, zeta)?;
        return Ok(c(0.0, 2.0 / PI) * (c(0.0, PI / 2.0) * nu).exp() * k);
    }
    if z.im > 2.0 {
        let j = bessel_j(nu, z)?;
        let h1 = hankel_1(nu, z)?;
        return Ok(j * 2.0 - h1);
    }
    let j = bessel_j(nu, z)?;
    let y = bessel_y(nu, z)?;
    Ok(j - c(0.0, 1.0) * y)
}
