//! Construction of the two contour families used by the Barnes-type
//! integrals: upward vertical lines with pole detours, and left-opening
//! loops enclosing descending pole chains.
//!
//! A contour is returned as an explicit oriented polyline with a certified
//! clearance to the supplied pole set. Upward contours continue vertically
//! beyond `truncation_t`; loop contours are truncated at `Re s = -rho_max`
//! where the integrands they are built for decay super-exponentially.

use crate::error::{Error, Result};
use crate::types::{Contour, Orientation, Sector};
use crate::C64;

const PI: f64 = std::f64::consts::PI;

/// Required minimum distance between contour and every pole.
pub const POLE_CLEARANCE: f64 = 0.05;

/// Detour radius around a pole chain.
const DETOUR_RADIUS: f64 = 0.25;

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// Enumerate the poles `lambda_l - kappa_l - j`, `j >= 0`, down to
/// `Re s >= floor` (plus two extra for clearance checks).
pub fn descending_poles(lambda: &[C64], kappa: &[f64], floor: f64) -> Vec<C64> {
    let mut poles = Vec::new();
    for (l, &lam) in lambda.iter().enumerate() {
        let k = kappa.get(l).copied().unwrap_or(0.0);
        let tip = lam - k;
        let mut j = 0usize;
        loop {
            let p = tip - j as f64;
            poles.push(p);
            if p.re < floor - 2.0 || j > 4000 {
                break;
            }
            j += 1;
        }
    }
    poles
}

/// One group of pole chains whose imaginary bands overlap.
struct DetourGroup {
    y_lo: f64,
    y_hi: f64,
    /// rightmost chain tip in the group
    x_tip: f64,
    /// imaginary part of the single chain (singleton groups only)
    single_im: Option<f64>,
}

fn build_polyline(sigma: f64, chains: &[(f64, f64)]) -> Vec<C64> {
    // chains: (tip re, im) for chains needing a detour, any order
    let mut groups: Vec<DetourGroup> = Vec::new();
    let mut sorted: Vec<(f64, f64)> = chains.to_vec();
    sorted.sort_by(|a, b| a.1.total_cmp(&b.1).then(a.0.total_cmp(&b.0)));
    // coinciding chains produce one detour
    sorted.dedup_by(|a, b| (a.0 - b.0).abs() < 1e-12 && (a.1 - b.1).abs() < 1e-12);
    for &(tx, ty) in &sorted {
        let (lo, hi) = (ty - DETOUR_RADIUS, ty + DETOUR_RADIUS);
        match groups.last_mut() {
            Some(g) if lo <= g.y_hi + 0.1 => {
                g.y_hi = hi.max(g.y_hi);
                g.x_tip = g.x_tip.max(tx);
                g.single_im = None;
            }
            _ => groups.push(DetourGroup {
                y_lo: lo,
                y_hi: hi,
                x_tip: tx,
                single_im: Some(ty),
            }),
        }
    }

    let mut v: Vec<C64> = Vec::new();
    let t_bottom = groups
        .first()
        .map_or(1.0, |g| (g.y_lo.abs() + 1.0).max(1.0));
    let t_top = groups
        .last()
        .map_or(1.0, |g| (g.y_hi.abs() + 1.0).max(1.0));
    let t = t_bottom.max(t_top);
    v.push(c(sigma, -t));
    for g in &groups {
        match g.single_im {
            // isolated chain whose tip lies right of the line: semicircular
            // cap of radius DETOUR_RADIUS in 8 segments around the tip
            Some(im) if g.x_tip >= sigma => {
                v.push(c(sigma, g.y_lo));
                v.push(c(g.x_tip, g.y_lo));
                for k in 1..8 {
                    let th = -PI / 2.0 + PI * k as f64 / 8.0;
                    v.push(c(g.x_tip + DETOUR_RADIUS * th.cos(), im + DETOUR_RADIUS * th.sin()));
                }
                v.push(c(g.x_tip, g.y_hi));
                v.push(c(sigma, g.y_hi));
            }
            _ => {
                let x = (g.x_tip + DETOUR_RADIUS).max(sigma);
                v.push(c(sigma, g.y_lo));
                v.push(c(x, g.y_lo));
                v.push(c(x, g.y_hi));
                v.push(c(sigma, g.y_hi));
            }
        }
    }
    v.push(c(sigma, t));
    // drop consecutive duplicates produced by x == sigma coincidences
    v.dedup_by(|a, b| (*a - *b).norm() < 1e-12);
    v
}

/// Build the upward contour of depth parameter `d` for the pole chains
/// `lambda_l - kappa_l - NN`, based at `Re s = sigma`.
///
/// The feasibility constraint is `sigma < d/2 + (Re|lambda| - 1)/n`. The
/// polyline detours right around every chain whose tip comes within
/// [`DETOUR_RADIUS`] of the line and is validated to clear all poles by at
/// least [`POLE_CLEARANCE`]; if validation fails the base line is nudged
/// left (up to four times) before giving up.
pub fn make_contour_c(d: u8, lambda: &[C64], kappa: &[f64], sigma: f64) -> Result<Contour> {
    if lambda.is_empty() {
        return Err(Error::DegenerateInput("empty index".into()));
    }
    if kappa.len() != lambda.len() {
        return Err(Error::DegenerateInput("kappa length mismatch".into()));
    }
    let n = lambda.len() as f64;
    let re_sum: f64 = lambda.iter().map(|l| l.re).sum();
    let bound = d as f64 / 2.0 + (re_sum - 1.0) / n;
    if sigma >= bound {
        return Err(Error::InfeasibleContour(format!(
            "sigma = {sigma} is not left of the convergence bound {bound}"
        )));
    }

    let mut sig = sigma;
    for _attempt in 0..=4 {
        let poles = descending_poles(lambda, kappa, sig);
        // chains whose rightmost pole comes near or right of the line
        let chains: Vec<(f64, f64)> = lambda
            .iter()
            .zip(kappa)
            .filter(|(l, k)| l.re - *k >= sig - DETOUR_RADIUS)
            .map(|(l, k)| (l.re - k, l.im))
            .collect();
        let vertices = build_polyline(sig, &chains);
        let trial = Contour {
            truncation_t: vertices.last().map_or(1.0, |p| p.im),
            vertices,
            orientation: Orientation::Upward,
            clearance: POLE_CLEARANCE,
        };
        let min_dist = poles
            .iter()
            .map(|&p| trial.distance_to(p))
            .fold(f64::INFINITY, f64::min);
        if min_dist >= POLE_CLEARANCE {
            return Ok(Contour {
                clearance: min_dist,
                ..trial
            });
        }
        sig -= 0.1;
    }
    Err(Error::InfeasibleContour(
        "no pole-clear detour found after nudging the base line".into(),
    ))
}

/// Build the left-opening loop contour enclosing the chains
/// `lambda_l - NN`, truncated at `Re s = -rho_max`.
///
/// The right edge is placed beyond `max Re lambda + 3/4` at an abscissa
/// whose distances `x - Re lambda_l` stay away from the integers (where the
/// reflected integrand's sine factors blow up); the loop runs
/// counter-clockwise: in along the bottom, up the right edge, out along the
/// top.
pub fn make_contour_c_prime(lambda: &[C64], rho_max: f64) -> Result<Contour> {
    if lambda.is_empty() {
        return Err(Error::DegenerateInput("empty index".into()));
    }
    let max_re = lambda.iter().map(|l| l.re).fold(f64::NEG_INFINITY, f64::max);
    if rho_max <= max_re + 1.0 {
        return Err(Error::InfeasibleContour(format!(
            "loop depth {rho_max} does not clear the pole tips (max Re = {max_re})"
        )));
    }
    let y_min = lambda.iter().map(|l| l.im).fold(f64::INFINITY, f64::min) - 0.75;
    let y_max = lambda.iter().map(|l| l.im).fold(f64::NEG_INFINITY, f64::max) + 0.75;

    let base = max_re + 0.75;
    let dist_to_int = |x: f64| -> f64 {
        lambda
            .iter()
            .map(|l| {
                let u = x - l.re;
                (u - u.round()).abs()
            })
            .fold(f64::INFINITY, f64::min)
    };
    let mut x_right = base;
    let mut best = dist_to_int(base);
    let mut step = 0.0f64;
    while step < 1.0 {
        let x = base + step;
        let dx = dist_to_int(x);
        if dx > best {
            best = dx;
            x_right = x;
        }
        if best >= 0.2 {
            break;
        }
        step += 0.05;
    }

    let vertices = vec![
        c(-rho_max, y_min),
        c(x_right, y_min),
        c(x_right, y_max),
        c(-rho_max, y_max),
    ];
    let trial = Contour {
        vertices,
        orientation: Orientation::Loop,
        truncation_t: rho_max,
        clearance: POLE_CLEARANCE,
    };
    let poles = descending_poles(lambda, &vec![0.0; lambda.len()], -rho_max);
    let min_dist = poles
        .iter()
        .map(|&p| trial.distance_to(p))
        .fold(f64::INFINITY, f64::min);
    if min_dist < POLE_CLEARANCE {
        return Err(Error::InfeasibleContour(format!(
            "loop clears the pole set only by {min_dist}"
        )));
    }
    Ok(Contour {
        clearance: min_dist,
        ..trial
    })
}

/// Truncation-error envelope for the loop contour: the integrand on the
/// truncated tails is bounded by `e^{n rho} rho^{-n(rho + 1/2) - re_lambda_sum}`.
pub fn loop_tail_envelope(n: usize, re_lambda_sum: f64, rho: f64) -> f64 {
    let nf = n as f64;
    (nf * rho + (-nf * (rho + 0.5) - re_lambda_sum) * rho.ln()).exp()
}

/// Pick the smallest loop depth whose tail envelope is below `tol`,
/// starting from a floor that clears the pole tips; capped at 400.
pub fn loop_depth_for(n: usize, lambda: &[C64], tol: f64) -> f64 {
    let max_re = lambda.iter().map(|l| l.re).fold(f64::NEG_INFINITY, f64::max);
    let mut rho: f64 = (max_re + 2.0).max(6.0);
    while loop_tail_envelope(n, lambda.iter().map(|l| l.re).sum(), rho) > tol && rho < 400.0 {
        rho += 2.0;
    }
    rho
}

/// The expansion sector attached to one direction `xi` (|xi| = 1):
/// `|arg z - arg(i conj(xi))| < pi + pi/n - theta`.
pub fn sector_for_direction(xi_arg: f64, n: usize, theta: f64) -> Result<Sector> {
    let half = PI + PI / n as f64 - theta;
    if half <= 0.0 || half >= PI + PI / n as f64 + 1e-12 {
        return Err(Error::SectorViolation(format!(
            "half-width {half} outside (0, pi + pi/n)"
        )));
    }
    Ok(Sector {
        center_arg: PI / 2.0 - xi_arg,
        half_width: half,
        label: format!("S'_xi({theta})"),
    })
}

/// The kernel expansion sector for rank `n`:
/// even `n`: `arg z in (-pi/2 - pi/n + theta, -pi/2 + 3 pi/n - theta)`;
/// odd `n`:  `arg z in (-pi/2 - pi/n + theta, -pi/2 + 2 pi/n - theta)`.
pub fn kernel_sector(n: usize, theta: f64) -> Result<Sector> {
    let nf = n as f64;
    let lo = -PI / 2.0 - PI / nf + theta;
    let hi = if n % 2 == 0 {
        -PI / 2.0 + 3.0 * PI / nf - theta
    } else {
        -PI / 2.0 + 2.0 * PI / nf - theta
    };
    if lo >= hi {
        return Err(Error::SectorViolation(format!(
            "empty sector for n = {n}, theta = {theta}"
        )));
    }
    Ok(Sector {
        center_arg: 0.5 * (lo + hi),
        half_width: 0.5 * (hi - lo),
        label: format!("S_{n}({theta})"),
    })
}
