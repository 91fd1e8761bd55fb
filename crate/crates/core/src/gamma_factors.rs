//! Gamma factors attached to signed, real and complex indices, their
//! functional relations, the rank-doubling map, and Stirling growth bounds.
//!
//! All products are evaluated in log space through the continued `log_gamma`,
//! so they stay finite far up the vertical lines where the directize
//! products would overflow. The real- and complex-field products use the
//! reflected ratio representations (two gamma functions per component, no
//! trigonometric factor), which are the numerically stable forms on vertical
//! lines.

use crate::error::{Error, Result};
use crate::gamma::{log_gamma, nonpositive_integer_at, recip_gamma};
use crate::types::{ComplexIndex, RealIndex, SignedIndex};
use crate::C64;

const PI: f64 = std::f64::consts::PI;
const LN_PI: f64 = 1.144_729_885_849_400_2;
const LN_2PI: f64 = 1.837_877_066_409_345_5;

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// Exact power of `i`: `i^k` for any integer `k`.
pub fn i_pow(k: i64) -> C64 {
    match k.rem_euclid(4) {
        0 => c(1.0, 0.0),
        1 => c(0.0, 1.0),
        2 => c(-1.0, 0.0),
        _ => c(0.0, -1.0),
    }
}

/// Signed gamma factor `Gamma(s) e(sign * s/4)` with `e(x) = exp(2 pi i x)`.
pub fn g_pm(sign: i8, s: C64) -> Result<C64> {
    Ok(log_g_pm(sign, s)?.exp())
}

/// Log of the signed gamma factor.
pub fn log_g_pm(sign: i8, s: C64) -> Result<C64> {
    if nonpositive_integer_at(s).is_some() {
        return Err(Error::PoleHit(0));
    }
    let rot = c(0.0, f64::from(sign) * PI / 2.0);
    Ok(log_gamma(s)? + rot * s)
}

/// True when `s` is within `r` of a real integer `<= hi`.
fn near_integer_at_most(s: C64, hi: f64, r: f64) -> Option<f64> {
    if s.im.abs() >= r {
        return None;
    }
    let k = s.re.round();
    if k <= hi && (s.re - k).abs() < r {
        Some(k)
    } else {
        None
    }
}

/// Gamma factor of one real-field component of parity `delta`:
/// `2 (2 pi)^{-s} Gamma(s) cos(pi s / 2)` for parity 0 and
/// `2 i (2 pi)^{-s} Gamma(s) sin(pi s / 2)` for parity 1.
///
/// The direct formula has removable `0 * inf` points (parity 0 at odd
/// negative integers, parity 1 at even nonpositive ones); near those the
/// reflected representation is used instead. Genuine poles report `PoleHit`.
pub fn g_delta(delta: u8, s: C64) -> Result<C64> {
    let delta = delta % 2;
    if let Some(k) = nonpositive_integer_at(s) {
        // poles sit where the cosine/sine does not vanish
        let pole = if delta == 0 { k % 2 == 0 } else { k % 2 != 0 };
        if pole {
            return Err(Error::PoleHit(0));
        }
    }
    if near_integer_at_most(s, 0.1, 0.3).is_some() {
        // reflected form: finite at the removable points, large near poles
        let lg = log_gamma(c(1.0, 0.0) - s)?;
        let base = (c(-LN_2PI, 0.0) * s - lg).exp() * PI;
        return Ok(if delta == 0 {
            base / (s * PI / 2.0).sin()
        } else {
            base * c(0.0, 1.0) / (s * PI / 2.0).cos()
        });
    }
    let lg = log_gamma(s)?;
    let base = (c(-LN_2PI, 0.0) * s + lg).exp() * 2.0;
    Ok(if delta == 0 {
        base * (s * PI / 2.0).cos()
    } else {
        base * c(0.0, 1.0) * (s * PI / 2.0).sin()
    })
}

/// Gamma factor of one complex-field component of weight `m`:
/// `i^{|m|} (2 pi)^{1 - 2 s} Gamma(s + |m|/2) / Gamma(1 - s + |m|/2)`.
pub fn g_m(m: i64, s: C64) -> Result<C64> {
    let h = m.abs() as f64 / 2.0;
    if nonpositive_integer_at(s + h).is_some() {
        return Err(Error::PoleHit(0));
    }
    let den = c(1.0, 0.0) - s + h;
    if nonpositive_integer_at(den).is_some() {
        // a zero of the factor
        return Ok(c(0.0, 0.0));
    }
    let lg = log_gamma(s + h)? - log_gamma(den)?;
    Ok(i_pow(m.abs()) * ((c(1.0, 0.0) - s * 2.0) * LN_2PI + lg).exp())
}

/// Log of the product of signed factors `prod_l G_{sign_l}(s - lambda_l)`.
pub fn log_g_signed_product(idx: &SignedIndex, s: C64) -> Result<C64> {
    let mut total = c(0.0, 0.0);
    for (l, (&sg, &lam)) in idx.signs.iter().zip(&idx.lambda).enumerate() {
        let w = s - lam;
        if nonpositive_integer_at(w).is_some() {
            return Err(Error::PoleHit(l));
        }
        total += log_gamma(w)? + c(0.0, f64::from(sg) * PI / 2.0) * w;
    }
    Ok(total)
}

/// Product of signed factors.
pub fn g_signed_product(idx: &SignedIndex, s: C64) -> Result<C64> {
    Ok(log_g_signed_product(idx, s)?.exp())
}

/// Log of the real-field gamma-factor product in its reflected ratio form:
/// `i^{|delta|} pi^{n(1/2 - s) + |mu|}
///  prod_l Gamma((s - mu_l + delta_l)/2) / Gamma((1 - s + mu_l + delta_l)/2)`.
///
/// Returns `PoleHit(l)` exactly on a pole of component `l`. A zero coming
/// from a denominator pole is reported as `Err(DegenerateInput)` by this log
/// form; use [`g_real_product`] which maps it to an exact 0.
pub fn log_g_real_product(idx: &RealIndex, s: C64) -> Result<C64> {
    let n = idx.rank() as f64;
    let mut total =
        (c(n * 0.5, 0.0) - s * n + idx.mu_sum()) * LN_PI + c(0.0, PI / 2.0) * idx.delta_sum() as f64;
    for (l, (&mu, &d)) in idx.mu.iter().zip(&idx.delta).enumerate() {
        let num = (s - mu + d as f64) * 0.5;
        let den = (c(1.0, 0.0) - s + mu + d as f64) * 0.5;
        if nonpositive_integer_at(num).is_some() {
            return Err(Error::PoleHit(l));
        }
        if nonpositive_integer_at(den).is_some() {
            return Err(Error::DegenerateInput(format!(
                "gamma-factor zero in component {l}"
            )));
        }
        total += log_gamma(num)? - log_gamma(den)?;
    }
    Ok(total)
}

/// Real-field gamma-factor product; exact 0 at its zeros.
pub fn g_real_product(idx: &RealIndex, s: C64) -> Result<C64> {
    match log_g_real_product(idx, s) {
        Ok(lg) => Ok(lg.exp()),
        Err(Error::DegenerateInput(_)) => Ok(c(0.0, 0.0)),
        Err(e) => Err(e),
    }
}

/// Log of the complex-field gamma-factor product in its ratio form:
/// `i^{||m||} (2 pi)^{n(1 - 2 s) + 2 |mu|}
///  prod_l Gamma(s - mu_l + |m_l|/2) / Gamma(1 - s + mu_l + |m_l|/2)`.
pub fn log_g_complex_product(idx: &ComplexIndex, s: C64) -> Result<C64> {
    let n = idx.rank() as f64;
    let mut total = (c(n, 0.0) - s * 2.0 * n + idx.mu_sum() * 2.0) * LN_2PI
        + c(0.0, PI / 2.0) * idx.m_abs_sum() as f64;
    for (l, (&mu, &m)) in idx.mu.iter().zip(&idx.m).enumerate() {
        let h = m.abs() as f64 / 2.0;
        let num = s - mu + h;
        let den = c(1.0, 0.0) - s + mu + h;
        if nonpositive_integer_at(num).is_some() {
            return Err(Error::PoleHit(l));
        }
        if nonpositive_integer_at(den).is_some() {
            return Err(Error::DegenerateInput(format!(
                "gamma-factor zero in component {l}"
            )));
        }
        total += log_gamma(num)? - log_gamma(den)?;
    }
    Ok(total)
}

/// Complex-field gamma-factor product; exact 0 at its zeros.
pub fn g_complex_product(idx: &ComplexIndex, s: C64) -> Result<C64> {
    match log_g_complex_product(idx, s) {
        Ok(lg) => Ok(lg.exp()),
        Err(Error::DegenerateInput(_)) => Ok(c(0.0, 0.0)),
        Err(e) => Err(e),
    }
}

/// Rank-doubling map: sends a complex-field index of rank `n` to the
/// real-field index of rank `2n` with the same gamma factor up to `i^n`.
///
/// Component `l` becomes the pair `mu_l + |m_l|/2, mu_l - |m_l|/2`; the two
/// admissible parity patterns are variant 1: `(parity(m_l) + 1 mod 2, 0)`
/// and variant 2: `(parity(m_l), 1)`.
pub fn doubling_map(idx: &ComplexIndex, variant: u8) -> Result<RealIndex> {
    if variant != 1 && variant != 2 {
        return Err(Error::DegenerateInput("doubling variant must be 1 or 2".into()));
    }
    let mut mu = Vec::with_capacity(2 * idx.rank());
    let mut delta = Vec::with_capacity(2 * idx.rank());
    for (&m, &mu_l) in idx.m.iter().zip(&idx.mu) {
        let h = m.abs() as f64 / 2.0;
        mu.push(mu_l + h);
        mu.push(mu_l - h);
        let par = (m.abs() % 2) as u8;
        if variant == 1 {
            delta.push((par + 1) % 2);
            delta.push(0);
        } else {
            delta.push(par);
            delta.push(1);
        }
    }
    RealIndex::new(mu, delta)
}

/// Stirling bound for the signed product on a vertical line:
/// `(|Im s| + 1)^{n (Re s - 1/2) - Re |lambda|}`.
pub fn growth_bound_signed(idx: &SignedIndex, s: C64) -> f64 {
    let n = idx.rank() as f64;
    let expo = n * (s.re - 0.5) - idx.lambda_sum().re;
    (s.im.abs() + 1.0).powf(expo)
}

/// Stirling bound for the real-field product on a vertical line.
pub fn growth_bound_real(idx: &RealIndex, s: C64) -> f64 {
    let n = idx.rank() as f64;
    let expo = n * (s.re - 0.5) - idx.mu_sum().re;
    (s.im.abs() + 1.0).powf(expo)
}

/// Stirling bound for the complex-field product on a vertical line:
/// `prod_l (|Im s| + |m_l| + 1)^{2 Re s - 2 Re mu_l - 1}`.
pub fn growth_bound_complex(idx: &ComplexIndex, s: C64) -> f64 {
    idx.mu
        .iter()
        .zip(&idx.m)
        .map(|(&mu, &m)| (s.im.abs() + m.abs() as f64 + 1.0).powf(2.0 * s.re - 2.0 * mu.re - 1.0))
        .product()
}

/// The real-field product in its defining form `prod_l G_{delta_l}(s - mu_l)`
/// (direct factors, no ratio rewrite); used for cross-validation in tests.
pub fn g_real_product_direct(idx: &RealIndex, s: C64) -> Result<C64> {
    let mut total = c(1.0, 0.0);
    for (l, (&mu, &d)) in idx.mu.iter().zip(&idx.delta).enumerate() {
        total *= g_delta(d, s - mu).map_err(|e| match e {
            Error::PoleHit(_) => Error::PoleHit(l),
            other => other,
        })?;
    }
    Ok(total)
}

/// The complex-field product in its defining form `prod_l G_{m_l}(s - mu_l)`.
pub fn g_complex_product_direct(idx: &ComplexIndex, s: C64) -> Result<C64> {
    let mut total = c(1.0, 0.0);
    for (l, (&mu, &m)) in idx.mu.iter().zip(&idx.m).enumerate() {
        total *= g_m(m, s - mu).map_err(|e| match e {
            Error::PoleHit(_) => Error::PoleHit(l),
            other => other,
        })?;
    }
    Ok(total)
}

/// Discrete-series building block: `G_m` factors through the two parity
/// factors of half-integer shifts,
/// `i G_m(s) = G_{parity(m)+1}(s - |m|/2) G_0(s + |m|/2)
///           = G_{parity(m)}(s - |m|/2) G_1(s + |m|/2)`.
/// Returns the pair of right-hand sides for cross-checks.
pub fn g_m_factorizations(m: i64, s: C64) -> Result<(C64, C64)> {
    let h = m.abs() as f64 / 2.0;
    let par = (m.abs() % 2) as u8;
    let a = g_delta((par + 1) % 2, s - h)? * g_delta(0, s + h)?;
    let b = g_delta(par, s - h)? * g_delta(1, s + h)?;
    Ok((a, b))
}

/// Positions of the poles of the real-field product: component `l`
/// contributes `mu_l - delta_l - 2 j`, `j >= 0`.
pub fn real_product_poles(idx: &RealIndex, j_max: usize) -> Vec<C64> {
    let mut poles = Vec::new();
    for (&mu, &d) in idx.mu.iter().zip(&idx.delta) {
        for j in 0..=j_max {
            poles.push(mu - c(d as f64 + 2.0 * j as f64, 0.0));
        }
    }
    poles
}

/// Positions of the poles of the complex-field product: component `l`
/// contributes `mu_l - |m_l|/2 - j`, `j >= 0`.
pub fn complex_product_poles(idx: &ComplexIndex, j_max: usize) -> Vec<C64> {
    let mut poles = Vec::new();
    for (&mu, &m) in idx.mu.iter().zip(&idx.m) {
        for j in 0..=j_max {
            poles.push(mu - c(m.abs() as f64 / 2.0 + j as f64, 0.0));
        }
    }
    poles
}

/// `recip_gamma` re-export point for kernels that need entire reciprocals.
pub fn recip_gamma_c(s: C64) -> C64 {
    recip_gamma(s)
}
