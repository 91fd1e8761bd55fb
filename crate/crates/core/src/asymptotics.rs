//! Bessel functions of the second kind, the connection formula expressing
//! the complex-field kernels through products of them, the exact
//! symmetric-polynomial matrix identity behind that formula, and the
//! leading-order large-argument asymptotics of the kernels.
//!
//! Conventions that matter here and are easy to get wrong:
//!
//! * Every root of unity carries a *declared, unreduced* argument. The
//!   half-integer powers `xi^{-(n-1)/2 -+ |m|/2}` in the connection
//!   coefficients are defined through that argument, not through the
//!   principal one — reducing `e^{2 pi i}` to `1` before taking the power
//!   changes the answer for odd `|m|`.
//! * `(-i xi)^p = exp(p(-pi i/2 + i theta))` and
//!   `(i conj(xi))^p = exp(p(pi i/2 - i theta))` where `theta` is the
//!   declared argument of `xi`.
//! * The spectral parameters of the second-kind factors attached to the
//!   `z`-slot are `mu + m/2` in *both* blocks of the connection formula; the
//!   `zbar`-slot carries `mu - m/2`.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::classical;
use crate::error::{Error, Result};
use crate::kernels::j_first_kind_series;
use crate::types::{
    AsymptoticCoefficients, ComplexIndex, KernelValue, Method, SecondKindParams,
    UniversalCoverPoint,
};
use crate::C64;

const PI: f64 = std::f64::consts::PI;
const TAU: f64 = std::f64::consts::TAU;

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// Is `d` an integer (within a tight tolerance)?
fn is_integer(d: C64) -> bool {
    d.im.abs() < 1e-12 && (d.re - d.re.round()).abs() < 1e-12
}

// ---------------------------------------------------------------------------
// Root-of-unity bookkeeping
// ---------------------------------------------------------------------------

/// Declared (unreduced) argument of the root `xi_j = e^{2 pi i (j-1)/n}`,
/// `j` one-based.
pub fn xi_arg(n: usize, j: usize) -> f64 {
    TAU * ((j as f64 - 1.0) / n as f64)
}

/// Declared (unreduced) argument of the shifted root
/// `zeta_j = e^{2 pi i (j-r)/n}`, `j` one-based. For `j < r` the argument is
/// negative; for `j > r` it can exceed `pi`. Neither is reduced.
pub fn zeta_arg(n: usize, r: usize, j: usize) -> f64 {
    TAU * ((j as f64 - r as f64) / n as f64)
}

/// The block split used on the standard sector: `r = n/2` for even rank and
/// `r = (n+1)/2` for odd rank.
pub fn recommended_r(n: usize) -> usize {
    n.div_ceil(2)
}

/// Bounds `(lo, hi)` of the standard sector for the root variable:
/// arguments with `lo < arg < hi` keep every retained exponential
/// non-growing and give the phase lower bounds away from the diagonals.
pub fn standard_sector_bounds(n: usize, vartheta: f64) -> (f64, f64) {
    let nf = n as f64;
    let lo = -PI / 2.0 - PI / nf + vartheta;
    let hi = if n % 2 == 0 {
        -PI / 2.0 + 3.0 * PI / nf - vartheta
    } else {
        -PI / 2.0 + 2.0 * PI / nf - vartheta
    };
    (lo, hi)
}

/// Membership of `z` (root variable, any nonzero point) in the standard
/// sector, testing the principal argument modulo full turns.
pub fn in_standard_sector(n: usize, vartheta: f64, z: C64) -> bool {
    if z.norm() == 0.0 {
        return false;
    }
    let (lo, hi) = standard_sector_bounds(n, vartheta);
    let a = z.arg();
    [a, a - TAU, a + TAU].iter().any(|&t| lo < t && t < hi)
}

/// `Im(xi_k z + zeta_j conj(z))` for the root variable `z`; `k, j` one-based
/// absolute indices in `1..=n`. On the pairings `j = r - k + 1` (both `<= r`)
/// and `j = n - (k - r) + 1` (both `> r`) the two summands are conjugate and
/// the value vanishes identically: exactly in floating point for the first
/// pairing (the declared angles are exact negations), and to a few units of
/// roundoff in `|z|` for the second (its angles differ by a full turn).
pub fn phase_value(n: usize, r: usize, k: usize, j: usize, z: C64) -> f64 {
    let xi = C64::from_polar(1.0, xi_arg(n, k));
    let zeta = C64::from_polar(1.0, zeta_arg(n, r, j));
    (xi * z + zeta * z.conj()).im
}

/// Lower-bound coefficient for the retained phases: for admissible `(k, j)`
/// (both in the first block `k, j <= r`, or both in the second block
/// `k, j > r`) returns `Some(coeff)` such that
/// `Im(xi_k z + zeta_j conj(z)) >= coeff * |z|` throughout the standard
/// sector; the diagonal pairings give `Some(0.0)` for every split. The
/// off-diagonal bounds are a property of the standard split
/// `r = ceil(n / 2)` (they are tight at the sector edges there, and false
/// for extreme splits such as `r = n`), so other splits return `None` off
/// the diagonals, as do pairs that mix the two blocks.
pub fn phase_lower_bound_coeff(n: usize, r: usize, k: usize, j: usize, vartheta: f64) -> Option<f64> {
    if k == 0 || j == 0 || k > n || j > n {
        return None;
    }
    let standard = r == recommended_r(n);
    if k <= r && j <= r {
        // first block
        if k + j == r + 1 {
            return Some(0.0);
        }
        if !standard {
            return None;
        }
        if k + j >= r + 2 {
            let p = (k + j - r - 1) as f64;
            return Some(2.0 * (p * PI / n as f64).sin() * vartheta.sin());
        }
        return None;
    }
    if k > r && j > r {
        // second block, relative indices
        let kk = k - r;
        let jj = j - r;
        if kk + jj == n - r + 1 {
            return Some(0.0);
        }
        if !standard {
            return None;
        }
        if kk + jj <= n - r {
            let q = (n - r - kk - jj + 1) as f64;
            let s = (q * PI / n as f64).sin();
            let angular = if n % 2 == 0 {
                2.0 * vartheta.sin()
            } else {
                2.0 * (PI / n as f64 + vartheta).sin()
            };
            return Some(s * angular);
        }
        return None;
    }
    None
}

// ---------------------------------------------------------------------------
// Bessel functions of the second kind
// ---------------------------------------------------------------------------

/// Largest modulus at which the ascending-series route keeps enough digits
/// through its internal cancellation; beyond it the rank-two evaluation
/// switches to the classical-function route.
const SECOND_KIND_SERIES_LIMIT: f64 = 5.0;

/// Bessel function of the second kind `J(z; lambda; xi)` on the universal
/// cover.
///
/// Definition (with `theta` the declared argument of `xi`, `sign` the parity
/// of `xi^n`, `S_l = prod_{k != l} 1/sin(pi(lambda_l - lambda_k))`):
///
/// ```text
/// J(z; lambda; xi) = sqrt(n) (pi/2)^{(n-1)/2} (-i xi)^{(n-1)/2 + |lambda|}
///                    * sum_l (i conj(xi))^{n lambda_l} S_l J_l(z; sign, lambda)
/// ```
///
/// where the fractional powers follow the declared-argument convention in
/// the module header. Rank one is exact: `J(z; (l); xi) = z^{-l} e^{i xi z}`.
/// At rank two and large modulus the evaluation reroutes through the
/// classical Bessel/Hankel functions of order `lambda_1 - lambda_2` (the
/// ascending series would cancel at `e^{2|z|}` there); other ranks carry the
/// honest, growing error estimate of the series.
///
/// Coincident parameters (`lambda_l - lambda_k` an integer) make the `S_l`
/// poles collide and are refused with [`Error::LimitRequired`].
pub fn j_second_kind(
    zeta: UniversalCoverPoint,
    params: &SecondKindParams,
    tol: f64,
) -> Result<KernelValue> {
    let n = params.rank();
    if !(tol > 0.0) {
        return Err(Error::DegenerateInput("tolerance must be positive".into()));
    }
    if n == 1 {
        // exactly z^{-lambda} e^{i sign z}: the two fractional powers of the
        // prefactor cancel for every declared argument
        let sgn = params.sign() as f64;
        let value = zeta.pow(-params.lambda[0]) * (c(0.0, sgn) * zeta.to_c64()).exp();
        return Ok(KernelValue {
            value,
            abs_error: value.norm() * 4e-16,
            method: Method::ClosedForm,
        });
    }
    for l in 0..n {
        for k in (l + 1)..n {
            let d = params.lambda[l] - params.lambda[k];
            if is_integer(d) {
                return Err(Error::LimitRequired(format!(
                    "second-kind parameters lambda_{l} - lambda_{k} = {d} differ by an integer"
                )));
            }
        }
    }
    if n == 2 && zeta.x > SECOND_KIND_SERIES_LIMIT && zeta.omega.abs() <= PI + 1e-12 {
        // Fall back to the series when the classical functions run out of
        // domain (deep cover angles at very large modulus); the series stays
        // correct there and reports its own, honestly larger, error.
        if let Ok(v) = second_kind_rank2_classical(zeta, params) {
            return Ok(v);
        }
    }
    second_kind_series(zeta, params, tol)
}

/// Series route: the defining combination of first-kind functions.
fn second_kind_series(
    zeta: UniversalCoverPoint,
    params: &SecondKindParams,
    tol: f64,
) -> Result<KernelValue> {
    let n = params.rank();
    let nf = n as f64;
    let lambda = &params.lambda;
    let theta = params.xi_arg;
    let sign = params.sign();
    let lambda_sum: C64 = lambda.iter().sum();

    // sqrt(n) (pi/2)^{(n-1)/2} e^{((n-1)/2 + |lambda|)(i theta - i pi/2)}
    let p = C64::new((nf - 1.0) / 2.0, 0.0) + lambda_sum;
    let prefactor = nf.sqrt()
        * (PI / 2.0).powf((nf - 1.0) / 2.0)
        * (p * c(0.0, theta - PI / 2.0)).exp();

    let mut weights = Vec::with_capacity(n);
    for l in 0..n {
        // e^{n lambda_l (i pi/2 - i theta)} / prod_{k != l} sin(pi(lambda_l - lambda_k))
        let mut w = (lambda[l] * nf * c(0.0, PI / 2.0 - theta)).exp();
        for k in 0..n {
            if k != l {
                w /= (PI * (lambda[l] - lambda[k])).sin();
            }
        }
        weights.push(prefactor * w);
    }

    let mut value = c(0.0, 0.0);
    let mut propagated = 0.0f64;
    let mut max_term = 0.0f64;
    for (l, w) in weights.iter().enumerate() {
        let inner_tol = tol / (nf * (1.0 + w.norm()));
        let jl = j_first_kind_series(zeta, l, sign, lambda, inner_tol)?;
        let term = w * jl.value;
        value += term;
        propagated += w.norm() * jl.abs_error;
        max_term = max_term.max(term.norm());
    }
    let abs_error = propagated + max_term * nf * 2e-16 + value.norm() * 4e-16;
    Ok(KernelValue {
        value,
        abs_error,
        method: Method::Series,
    })
}

/// Rank-two classical route. With `nu = lambda_1 - lambda_2`,
/// `a = (lambda_1 + lambda_2)/2` and `u = e^{nu(i pi/2 - i theta)}`,
///
/// ```text
/// J(z; lambda; xi) = sqrt(pi) e^{(i theta - i pi/2)/2} z^{-2a}
///                    [ u F_{-nu}(2z) - u^{-1} F_{nu}(2z) ] / sin(pi nu)
/// ```
///
/// where `F = J` (classical) when `xi^2 = 1` and `F = I` when `xi^2 = -1`.
/// Specialisations: `xi = 1` gives `sqrt(pi) e^{i pi/4} e^{i pi nu/2}
/// H1_nu(2z)`, `xi = i` gives `(2/sqrt(pi)) K_nu(2z)`, both of which decay in
/// the directions where the series route would cancel catastrophically.
fn second_kind_rank2_classical(
    zeta: UniversalCoverPoint,
    params: &SecondKindParams,
) -> Result<KernelValue> {
    let nu = params.lambda[0] - params.lambda[1];
    let a2 = params.lambda[0] + params.lambda[1]; // 2a
    let theta = params.xi_arg;
    let w = zeta.to_c64() * 2.0;
    let u = (nu * c(0.0, PI / 2.0 - theta)).exp();
    let sn = (PI * nu).sin();
    let (f_neg, f_pos) = if params.sign() == 1 {
        (classical::bessel_j(-nu, w)?, classical::bessel_j(nu, w)?)
    } else {
        // I_nu(w) via rotation to the classical J on the principal branch,
        // turning through whichever half plane keeps the argument principal
        let rot = |order: C64| -> Result<C64> {
            if w.im <= 0.0 {
                Ok((order * c(0.0, -PI / 2.0)).exp() * classical::bessel_j(order, w * c(0.0, 1.0))?)
            } else {
                Ok((order * c(0.0, PI / 2.0)).exp() * classical::bessel_j(order, w * c(0.0, -1.0))?)
            }
        };
        (rot(-nu)?, rot(nu)?)
    };
    let bracket = u * f_neg - f_pos / u;
    let prefactor = PI.sqrt() * (c(0.5, 0.0) * c(0.0, theta - PI / 2.0)).exp() * zeta.pow(-a2);
    let value = prefactor * bracket / sn;
    // classical values carry ~1e-14 relative error; the bracket may cancel
    let spread = (u.norm() * f_neg.norm() + f_pos.norm() / u.norm()) / sn.norm();
    let abs_error = prefactor.norm() * spread * 3e-14 + value.norm() * 1e-14;
    Ok(KernelValue {
        value,
        abs_error,
        method: Method::ClosedForm,
    })
}

// ---------------------------------------------------------------------------
// Exact symmetric-polynomial matrix identity
// ---------------------------------------------------------------------------

/// Elementary symmetric polynomials `e_0..e_n` of rational values.
fn elementary_symmetric_rational(vals: &[BigRational]) -> Vec<BigRational> {
    let mut e = vec![BigRational::zero(); vals.len() + 1];
    e[0] = BigRational::one();
    for (i, v) in vals.iter().enumerate() {
        for d in (1..=(i + 1)).rev() {
            let add = v * &e[d - 1];
            e[d] += add;
        }
    }
    e
}

fn br_pow(x: &BigRational, k: usize) -> BigRational {
    let mut out = BigRational::one();
    for _ in 0..k {
        out *= x;
    }
    out
}

/// Exact check of the block identity for the connection-coefficient matrix.
///
/// With `Sigma = (sigma_{l, n-j})_{l,j}` (elementary symmetric polynomials in
/// the values omitting `x_l`), `X = diag(x_l)`, and
/// `T = diag(1 / prod_{h != l}(x_l - x_h))`, the product `Sigma^t X^r T Sigma`
/// equals the block-diagonal matrix
///
/// ```text
/// (-1)^{n-r}   * A,  A_{k,j} = sigma_{n+r-k-j+1}  (k+j >= r+1, else 0),  r x r
/// (-1)^{n-r+1} * B,  B_{k,j} = sigma_{n-r-k-j+1}  (k+j <= n-r+1, else 0)
/// ```
///
/// in the elementary symmetric polynomials of all `n` values. The check is
/// exact in rational arithmetic. Coincident values make `T` singular and are
/// refused with [`Error::DegenerateInput`].
pub fn symmetric_matrix_identity_check(x: &[BigRational], r: usize) -> Result<bool> {
    let n = x.len();
    if n == 0 {
        return Err(Error::DegenerateInput("empty value vector".into()));
    }
    if r > n {
        return Err(Error::DomainError(format!(
            "block split r = {r} exceeds the dimension n = {n}"
        )));
    }
    for i in 0..n {
        for j in (i + 1)..n {
            if x[i] == x[j] {
                return Err(Error::DegenerateInput(format!(
                    "values x_{i} and x_{j} coincide; the diagonal matrix T is singular"
                )));
            }
        }
    }

    let sigma = elementary_symmetric_rational(x);

    // rows of Sigma and the diagonal weights x_l^r / tau_l
    let mut rows = Vec::with_capacity(n);
    let mut weights = Vec::with_capacity(n);
    for l in 0..n {
        let omitted: Vec<BigRational> = (0..n).filter(|&h| h != l).map(|h| x[h].clone()).collect();
        let sig_l = elementary_symmetric_rational(&omitted);
        // row entry j (one-based) is sigma_{l, n-j}
        let row: Vec<BigRational> = (1..=n).map(|j| sig_l[n - j].clone()).collect();
        rows.push(row);
        let mut tau = BigRational::one();
        for h in 0..n {
            if h != l {
                tau *= &x[l] - &x[h];
            }
        }
        weights.push(br_pow(&x[l], r) / tau);
    }

    let minus_one = BigRational::from_integer(BigInt::from(-1));
    let sign_a = br_pow(&minus_one, n - r);
    let sign_b = -sign_a.clone();

    for k in 1..=n {
        for j in 1..=n {
            let mut lhs = BigRational::zero();
            for l in 0..n {
                lhs += &rows[l][k - 1] * &weights[l] * &rows[l][j - 1];
            }
            let target = if k <= r && j <= r && k + j >= r + 1 {
                &sign_a * &sigma[n + r - k - j + 1]
            } else if k > r && j > r {
                let kk = k - r;
                let jj = j - r;
                if kk + jj <= n - r + 1 {
                    &sign_b * &sigma[n - r - kk - jj + 1]
                } else {
                    BigRational::zero()
                }
            } else {
                BigRational::zero()
            };
            if lhs != target {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

// ---------------------------------------------------------------------------
// Connection coefficients and the connection formula
// ---------------------------------------------------------------------------

/// Elementary symmetric polynomials `e_0..e_n` of complex values.
fn elementary_symmetric_c64(vals: &[C64]) -> Vec<C64> {
    let mut e = vec![c(0.0, 0.0); vals.len() + 1];
    e[0] = c(1.0, 0.0);
    for (i, v) in vals.iter().enumerate() {
        for d in (1..=(i + 1)).rev() {
            let add = v * e[d - 1];
            e[d] += add;
        }
    }
    e
}

fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    let mut out = 1.0f64;
    for i in 0..k {
        out = out * (n - i) as f64 / (i + 1) as f64;
    }
    out
}

/// Size bound for the off-diagonal connection coefficients with offset `p`
/// from the diagonal: `binom(n, p) exp(2 pi min(p, n-p) max_l |Im mu_l|)`.
pub fn coefficient_bound(n: usize, p: usize, im_max: f64) -> f64 {
    binomial(n, p) * (TAU * p.min(n - p) as f64 * im_max).exp()
}

/// The coefficient matrices `(C, D)` of the connection formula for block
/// split `r`: `C` is `r x r` with entries at `k + j >= r + 1`, `D` is
/// `(n-r) x (n-r)` with entries at `k + j <= n - r + 1`; inadmissible
/// positions hold zero. The spectral parameters are normalised internally
/// (the coefficients only depend on the differences). On the anti-diagonals
/// the entries collapse to `(-conj(xi_k))^{|m|}` and
/// `(-conj(xi_{k+r}))^{|m|}`.
pub fn connection_coefficients(
    idx: &ComplexIndex,
    r: usize,
) -> Result<(Vec<Vec<C64>>, Vec<Vec<C64>>)> {
    let n = idx.rank();
    if r > n {
        return Err(Error::DomainError(format!(
            "block split r = {r} exceeds the rank n = {n}"
        )));
    }
    let shift = idx.mu_sum() / n as f64;
    let ms = idx.m_sum();
    let msf = ms as f64;
    let nf = n as f64;

    // sigma^d: elementary symmetric in (-1)^{m_l} e^{-2 pi i mu_l} (normalised)
    let vals: Vec<C64> = idx
        .mu
        .iter()
        .zip(&idx.m)
        .map(|(&mu, &m)| {
            let s = if m.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
            ((mu - shift) * c(0.0, -TAU)).exp() * s
        })
        .collect();
    let sigma = elementary_symmetric_c64(&vals);

    let pe = -(nf - 1.0) / 2.0 - msf / 2.0; // exponent on the z-slot root
    let pm = -(nf - 1.0) / 2.0 + msf / 2.0; // exponent on the zbar-slot root

    let mut cm = vec![vec![c(0.0, 0.0); r]; r];
    for k in 1..=r {
        for j in 1..=r {
            if k + j >= r + 1 {
                let sgn = if (r + k + j + 1) % 2 == 0 { 1.0 } else { -1.0 };
                cm[k - 1][j - 1] = sgn
                    * (c(0.0, xi_arg(n, k) * pe)).exp()
                    * (c(0.0, zeta_arg(n, r, j) * pm)).exp()
                    * sigma[n + r - k - j + 1];
            }
        }
    }
    let s = n - r;
    let mut dm = vec![vec![c(0.0, 0.0); s]; s];
    for k in 1..=s {
        for j in 1..=s {
            if k + j <= s + 1 {
                let sgn = if (r + k + j) % 2 == 0 { 1.0 } else { -1.0 };
                dm[k - 1][j - 1] = sgn
                    * (c(0.0, xi_arg(n, r + k) * pe)).exp()
                    * (c(0.0, zeta_arg(n, r, r + j) * pm)).exp()
                    * sigma[s - k - j + 1];
            }
        }
    }
    Ok((cm, dm))
}

/// The connection formula: the complex-field kernel as a bilinear form in
/// second-kind functions of the root variables,
///
/// ```text
/// J_(mu, m)(z) = (-1)^{|m|} (2 pi)^{n-1} / n * [
///     sum_{k+j >= r+1} C_{k,j} J(2 pi z^{1/n}; mu + m/2; xi_k)
///                              J(2 pi conj(z)^{1/n}; mu - m/2; zeta_j)
///   + sum_{k+j <= n-r+1} D_{k,j} J(2 pi z^{1/n}; mu + m/2; xi_{r+k})
///                                J(2 pi conj(z)^{1/n}; mu - m/2; zeta_{r+j}) ]
/// ```
///
/// an exact identity for every admissible block split `r` (default: the
/// standard split). Non-normalised `mu` is reduced internally and restored
/// through the factor `(z conj(z))^{-sum mu / n}`.
///
/// The identity holds for all `z != 0`, but the bilinear form loses digits
/// once the second-kind factors grow exponentially against a bounded kernel;
/// the returned error estimate accounts for that, and an evaluation whose
/// estimate exceeds both the value and `1000 tol` is refused with
/// [`Error::SectorViolation`] (the contour evaluator covers those arguments).
/// Spectral parameters with integer differences `mu_l - mu_k + (m_l - m_k)/2`
/// are refused with [`Error::LimitRequired`].
pub fn second_connection_formula(
    z: C64,
    idx: &ComplexIndex,
    r: Option<usize>,
    tol: f64,
) -> Result<KernelValue> {
    let n = idx.rank();
    if z.norm() == 0.0 {
        return Err(Error::DegenerateInput("kernel argument must be nonzero".into()));
    }
    if !(tol > 0.0) {
        return Err(Error::DegenerateInput("tolerance must be positive".into()));
    }
    let r = r.unwrap_or_else(|| recommended_r(n));
    if r > n {
        return Err(Error::DomainError(format!(
            "block split r = {r} exceeds the rank n = {n}"
        )));
    }
    let shift = idx.mu_sum() / n as f64;
    let mu0: Vec<C64> = idx.mu.iter().map(|&mu| mu - shift).collect();
    for l in 0..n {
        for k in (l + 1)..n {
            let d = mu0[l] - mu0[k] + (idx.m[l] - idx.m[k]) as f64 / 2.0;
            if is_integer(d) {
                return Err(Error::LimitRequired(format!(
                    "spectral parameters {l} and {k} differ by an integer; \
                     the connection coefficients degenerate"
                )));
            }
        }
    }

    let nf = n as f64;
    let x = z.norm();
    let phi = z.arg();
    let xr = (x.ln() / nf).exp();
    let zeta_p = UniversalCoverPoint::new(TAU * xr, phi / nf)?;
    let zeta_m = UniversalCoverPoint::new(TAU * xr, -phi / nf)?;
    let lam_p: Vec<C64> = mu0.iter().zip(&idx.m).map(|(&mu, &m)| mu + m as f64 / 2.0).collect();
    let lam_m: Vec<C64> = mu0.iter().zip(&idx.m).map(|(&mu, &m)| mu - m as f64 / 2.0).collect();

    let (cm, dm) = connection_coefficients(idx, r)?;
    let coef_scale = cm
        .iter()
        .chain(dm.iter())
        .flatten()
        .fold(0.0f64, |acc, v| acc.max(v.norm()));
    let inner_tol = tol / (4.0 * nf * nf * (1.0 + coef_scale));

    // cache the second-kind factors; slot in `jp[k-1]`, `jm[j-1]`
    let mut jp: Vec<Option<KernelValue>> = vec![None; n];
    let mut jm: Vec<Option<KernelValue>> = vec![None; n];
    let get_p = |k: usize, jp: &mut Vec<Option<KernelValue>>| -> Result<KernelValue> {
        if jp[k - 1].is_none() {
            let params = SecondKindParams::new(lam_p.clone(), xi_arg(n, k))?;
            jp[k - 1] = Some(j_second_kind(zeta_p, &params, inner_tol)?);
        }
        Ok(jp[k - 1].unwrap())
    };
    let get_m = |j: usize, jm: &mut Vec<Option<KernelValue>>| -> Result<KernelValue> {
        if jm[j - 1].is_none() {
            let params = SecondKindParams::new(lam_m.clone(), zeta_arg(n, r, j))?;
            jm[j - 1] = Some(j_second_kind(zeta_m, &params, inner_tol)?);
        }
        Ok(jm[j - 1].unwrap())
    };

    let mut total = c(0.0, 0.0);
    let mut propagated = 0.0f64;
    let mut max_term = 0.0f64;
    for k in 1..=r {
        for j in 1..=r {
            if k + j < r + 1 {
                continue;
            }
            let coef = cm[k - 1][j - 1];
            let p = get_p(k, &mut jp)?;
            let m = get_m(j, &mut jm)?;
            let term = coef * p.value * m.value;
            total += term;
            propagated += coef.norm()
                * (p.value.norm() * m.abs_error + m.value.norm() * p.abs_error
                    + p.abs_error * m.abs_error);
            max_term = max_term.max(term.norm());
        }
    }
    for k in 1..=(n - r) {
        for j in 1..=(n - r) {
            if k + j > n - r + 1 {
                continue;
            }
            let coef = dm[k - 1][j - 1];
            let p = get_p(r + k, &mut jp)?;
            let m = get_m(r + j, &mut jm)?;
            let term = coef * p.value * m.value;
            total += term;
            propagated += coef.norm()
                * (p.value.norm() * m.abs_error + m.value.norm() * p.abs_error
                    + p.abs_error * m.abs_error);
            max_term = max_term.max(term.norm());
        }
    }

    let parity = if idx.m_sum().rem_euclid(2) == 0 { 1.0 } else { -1.0 };
    let scale = parity * TAU.powi(n as i32 - 1) / nf;
    // restore the normalisation: (z conj(z))^{-shift}
    let norm_factor = (-shift * 2.0 * x.ln()).exp();
    let value = scale * norm_factor * total;
    let abs_error =
        scale.abs() * norm_factor.norm() * (propagated + max_term * 4e-16 * nf * nf)
            + value.norm() * 4e-16;

    if abs_error > value.norm() + 1e3 * tol {
        return Err(Error::SectorViolation(format!(
            "the bilinear form cancels to below its own noise floor here \
             (estimate {abs_error:.3e} against magnitude {:.3e}); \
             use the contour evaluator at this argument",
            value.norm()
        )));
    }
    Ok(KernelValue {
        value,
        abs_error,
        method: Method::Series,
    })
}

// ---------------------------------------------------------------------------
// Leading-order asymptotics
// ---------------------------------------------------------------------------

/// Spread measure of an index: `max(|mu_l - avg| + 1, |m_l - |m|/n| + 1)`;
/// the asymptotic error terms scale with powers of this quantity and the
/// expansion applies once the root modulus exceeds (a multiple of) its
/// square.
pub fn index_spread(idx: &ComplexIndex) -> f64 {
    let n = idx.rank() as f64;
    let shift = idx.mu_sum() / n;
    let m_avg = idx.m_sum() as f64 / n;
    let mut s = 0.0f64;
    for (&mu, &m) in idx.mu.iter().zip(&idx.m) {
        s = s.max((mu - shift).norm() + 1.0);
        s = s.max((m as f64 - m_avg).abs() + 1.0);
    }
    s
}

/// Symbolic table of the higher expansion coefficients `B_alpha`, stored in
/// the monomial symmetric basis: `terms[alpha - 1]` lists
/// `(exponent multiset, coefficient)` pairs, and
/// `B_alpha(lambda) = sum coeff * m_E(lambda)` over those pairs, where `m_E`
/// is the monomial symmetric polynomial with exponent multiset `E` (padded
/// with zeros to the rank; multisets longer than the rank contribute
/// nothing). `B_0 = 1` always; with no table loaded only the leading term is
/// available.
#[derive(Debug, Clone, Default)]
pub struct CoefficientTable {
    terms: Vec<Vec<(Vec<u32>, C64)>>,
}

impl CoefficientTable {
    /// The built-in table: `B_0 = 1` only.
    pub fn leading() -> Self {
        CoefficientTable { terms: Vec::new() }
    }

    /// Highest usable term count `A`: `alpha < a_max` are available.
    pub fn a_max(&self) -> usize {
        self.terms.len() + 1
    }

    /// Parse the line format `alpha <a> monomial <e1> <e2> ... coeff <re> <im>`
    /// (one term per line; blank lines and `#` comments ignored).
    pub fn parse(text: &str) -> Result<Self> {
        let mut table: Vec<Vec<(Vec<u32>, C64)>> = Vec::new();
        for (ln, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let bad = |what: &str| {
                Error::DomainError(format!("coefficient table line {}: {what}", ln + 1))
            };
            let toks: Vec<&str> = line.split_whitespace().collect();
            if toks.len() < 6 || toks[0] != "alpha" {
                return Err(bad("expected `alpha <a> monomial <exponents...> coeff <re> <im>`"));
            }
            let alpha: usize = toks[1].parse().map_err(|_| bad("bad alpha"))?;
            if alpha == 0 {
                return Err(bad("alpha 0 is built in and cannot be overridden"));
            }
            if toks[2] != "monomial" {
                return Err(bad("missing `monomial`"));
            }
            let coeff_at = toks
                .iter()
                .position(|&t| t == "coeff")
                .ok_or_else(|| bad("missing `coeff`"))?;
            if coeff_at + 3 != toks.len() {
                return Err(bad("expected exactly two numbers after `coeff`"));
            }
            let mut exps = Vec::new();
            for t in &toks[3..coeff_at] {
                exps.push(t.parse::<u32>().map_err(|_| bad("bad exponent"))?);
            }
            let re: f64 = toks[coeff_at + 1].parse().map_err(|_| bad("bad coefficient"))?;
            let im: f64 = toks[coeff_at + 2].parse().map_err(|_| bad("bad coefficient"))?;
            if table.len() < alpha {
                table.resize(alpha, Vec::new());
            }
            table[alpha - 1].push((exps, c(re, im)));
        }
        Ok(CoefficientTable { terms: table })
    }

    /// Load from a file.
    pub fn load(path: &std::path::Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| {
            Error::DomainError(format!("cannot read coefficient table {}: {e}", path.display()))
        })?;
        Self::parse(&text)
    }

    /// `B_alpha(lambda)`; `B_0 = 1`, absent entries are zero.
    pub fn b_alpha(&self, alpha: usize, lambda: &[C64]) -> C64 {
        if alpha == 0 {
            return c(1.0, 0.0);
        }
        match self.terms.get(alpha - 1) {
            None => c(0.0, 0.0),
            Some(list) => list
                .iter()
                .map(|(e, coeff)| coeff * monomial_symmetric(e, lambda))
                .sum(),
        }
    }

    /// Specialise to an index: the product table
    /// `B_{alpha,beta} = B_alpha(lambda+) B_beta(lambda-)` on the centred
    /// parameters `lambda+- = (mu - avg) +- (m - avg)/2`.
    pub fn specialize(&self, idx: &ComplexIndex) -> AsymptoticCoefficients {
        let n = idx.rank() as f64;
        let shift = idx.mu_sum() / n;
        let m_avg = idx.m_sum() as f64 / n;
        let lp: Vec<C64> = idx
            .mu
            .iter()
            .zip(&idx.m)
            .map(|(&mu, &m)| mu - shift + (m as f64 - m_avg) / 2.0)
            .collect();
        let lm: Vec<C64> = idx
            .mu
            .iter()
            .zip(&idx.m)
            .map(|(&mu, &m)| mu - shift - (m as f64 - m_avg) / 2.0)
            .collect();
        let a_max = self.a_max();
        let bp: Vec<C64> = (0..a_max).map(|a| self.b_alpha(a, &lp)).collect();
        let bm: Vec<C64> = (0..a_max).map(|a| self.b_alpha(a, &lm)).collect();
        let table = bp
            .iter()
            .map(|&p| bm.iter().map(|&m| p * m).collect())
            .collect();
        AsymptoticCoefficients { a_max, table }
    }
}

/// Monomial symmetric polynomial with exponent multiset `e` evaluated at
/// `lambda`: the sum of `prod lambda_i^{e_{pi(i)}}` over distinct
/// permutations `pi` of the padded multiset.
fn monomial_symmetric(e: &[u32], lambda: &[C64]) -> C64 {
    let n = lambda.len();
    let mut exps: Vec<u32> = e.iter().copied().filter(|&v| v > 0).collect();
    if exps.len() > n {
        return c(0.0, 0.0);
    }
    exps.sort_unstable_by(|a, b| b.cmp(a));
    exps.resize(n, 0);
    // repetition factor: permutations of equal exponents coincide
    let mut repeats = 1.0f64;
    let mut run = 1usize;
    for i in 1..n {
        if exps[i] == exps[i - 1] {
            run += 1;
            repeats *= run as f64;
        } else {
            run = 1;
        }
    }
    let mut sum = c(0.0, 0.0);
    let mut used = vec![false; n];
    fn rec(pos: usize, exps: &[u32], lambda: &[C64], used: &mut [bool], acc: C64, sum: &mut C64) {
        if pos == exps.len() {
            *sum += acc;
            return;
        }
        for (i, &l) in lambda.iter().enumerate() {
            if !used[i] {
                used[i] = true;
                let factor = if exps[pos] == 0 { c(1.0, 0.0) } else { l.powi(exps[pos] as i32) };
                rec(pos + 1, exps, lambda, used, acc * factor, sum);
                used[i] = false;
            }
        }
    }
    rec(0, &exps, lambda, &mut used, c(1.0, 0.0), &mut sum);
    sum / repeats
}

/// Process-wide coefficient table from the `BKL_COEFF_TABLE` environment
/// variable (path to a table file); the built-in leading table when unset.
pub fn coefficient_table_from_env() -> Result<&'static CoefficientTable> {
    static TABLE: OnceLock<std::result::Result<CoefficientTable, String>> = OnceLock::new();
    let slot = TABLE.get_or_init(|| match std::env::var("BKL_COEFF_TABLE") {
        Ok(path) if !path.is_empty() => {
            CoefficientTable::load(std::path::Path::new(&path)).map_err(|e| e.to_string())
        }
        _ => Ok(CoefficientTable::leading()),
    });
    match slot {
        Ok(t) => Ok(t),
        Err(e) => Err(Error::DomainError(e.clone())),
    }
}

/// Fitted constants of the error envelope, by rank (index 0 unused): the
/// first omitted term of the expansion is bounded by
/// `fit * spread^{2A} * x_root^{-A-n+1}` on the calibration grids; ranks
/// beyond the calibrated ones extrapolate by tripling per rank.
const ENVELOPE_FIT: [f64; 4] = [0.0, 0.0, 0.25, 0.25];

/// Error envelope of the `A`-term expansion at root modulus `x_root`.
pub fn asymptotic_error_envelope(n: usize, spread: f64, a: usize, x_root: f64) -> f64 {
    if n <= 1 {
        return 0.0;
    }
    let fit = if n < ENVELOPE_FIT.len() {
        ENVELOPE_FIT[n]
    } else {
        ENVELOPE_FIT[3] * 3.0f64.powi(n as i32 - 3)
    };
    fit * spread.powi(2 * a as i32) * x_root.powf(-(a as f64) - (n as f64 - 1.0))
}

/// Multiple of `spread^2` the root modulus must reach before the expansion
/// is accepted by default.
pub const ASYMPTOTIC_REGIME_FACTOR: f64 = 1.0;

/// Leading-order asymptotics of the complex-field kernel with the built-in
/// (or environment-provided) coefficient table; see
/// [`asymptotic_kernel_with`].
pub fn asymptotic_kernel(z: C64, idx: &ComplexIndex, a: usize) -> Result<KernelValue> {
    asymptotic_kernel_with(z, idx, a, coefficient_table_from_env()?, ASYMPTOTIC_REGIME_FACTOR)
}

/// `A`-term asymptotic expansion of the complex-field kernel at `z`:
///
/// ```text
/// J_(mu, m)(z) = sum_{xi^n = 1} e(n(xi w + conj(xi w)))
///                / (n |w|^{n-1} [xi w]^{|m|})
///                * sum_{alpha + beta <= A-1} i^{-alpha-beta} xi^{beta-alpha}
///                  B_{alpha,beta} w^{-alpha} conj(w)^{-beta}
///                + O(spread^{2A} |w|^{-A-n+1}),     w = z^{1/n},
/// ```
///
/// with `[u] = u/|u|` and the product coefficients from the table. The main
/// term does not depend on which root `w` is taken. The expansion needs
/// `|w| >= regime_factor * spread^2`; smaller arguments are refused with
/// [`Error::OutsideAsymptoticRegime`]. Rank one is exact. The error estimate
/// is the fitted envelope of [`asymptotic_error_envelope`].
pub fn asymptotic_kernel_with(
    z: C64,
    idx: &ComplexIndex,
    a: usize,
    table: &CoefficientTable,
    regime_factor: f64,
) -> Result<KernelValue> {
    let n = idx.rank();
    let nf = n as f64;
    if z.norm() == 0.0 {
        return Err(Error::DegenerateInput("kernel argument must be nonzero".into()));
    }
    if a == 0 {
        return Err(Error::DegenerateInput("at least one expansion term is needed".into()));
    }
    if a > table.a_max() {
        return Err(Error::DomainError(format!(
            "the coefficient table provides {} term(s); {a} requested",
            table.a_max()
        )));
    }
    let spread = index_spread(idx);
    let x = z.norm();
    let xr = (x.ln() / nf).exp();
    if n > 1 && xr < regime_factor * spread * spread {
        return Err(Error::OutsideAsymptoticRegime(format!(
            "root modulus {xr:.3e} below {regime_factor} * spread^2 = {:.3e}",
            regime_factor * spread * spread
        )));
    }

    let shift = idx.mu_sum() / nf;
    let ms = idx.m_sum();
    let coeffs = table.specialize(idx);
    let w = C64::from_polar(xr, z.arg() / nf);
    let wbar = w.conj();

    let mut sum = c(0.0, 0.0);
    for q in 0..n {
        let xi = C64::from_polar(1.0, TAU * q as f64 / nf);
        let u = xi * w;
        // e(n(u + conj u)) = exp(4 pi i n Re u), exactly unimodular
        let phase = c(0.0, 2.0 * TAU * nf * u.re).exp();
        let unit = C64::from_polar(1.0, ms as f64 * u.arg());
        let mut inner = c(0.0, 0.0);
        for alpha in 0..a {
            for beta in 0..(a - alpha) {
                let b = coeffs.table[alpha][beta];
                if b == c(0.0, 0.0) {
                    continue;
                }
                let ipow = (-c(0.0, 1.0)).powi((alpha + beta) as i32)
                    * xi.powi(beta as i32 - alpha as i32);
                inner += ipow * b * w.powi(-(alpha as i32)) * wbar.powi(-(beta as i32));
            }
        }
        sum += phase / unit * inner;
    }
    let main = sum / (nf * xr.powi(n as i32 - 1));
    let norm_factor = (-shift * 2.0 * x.ln()).exp();
    let value = norm_factor * main;
    let abs_error = if n == 1 {
        value.norm() * 4e-16
    } else {
        norm_factor.norm() * asymptotic_error_envelope(n, spread, a, xr)
            + value.norm() * 1e-15
    };
    Ok(KernelValue {
        value,
        abs_error,
        method: Method::Asymptotic,
    })
}
