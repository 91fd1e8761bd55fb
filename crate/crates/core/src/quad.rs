//! Adaptive Gauss–Kronrod quadrature for complex-valued integrands along
//! straight segments and rays in the complex plane.
//!
//! The estimator is the classical 7/15 pair with the conservative error
//! rescaling used by the mature C libraries, driven by a worst-interval-first
//! heap. Error estimates are absolute and honest: the reported estimate is
//! the sum over intervals of the rescaled Kronrod differences.

use crate::error::{Error, Result};
use crate::types::QuadratureResult;
use crate::C64;
use std::cmp::Ordering;
use std::collections::BinaryHeap;

/// Abscissae of the 15-point Kronrod rule on [0,1]; entries at odd indices
/// are the embedded 7-point Gauss nodes.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];

/// Kronrod weights matching `XGK`.
const WGK: [f64; 8] = [
    0.022_935_322_010_529_2,
    0.063_092_092_629_978_6,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];

/// Gauss weights for the nodes `XGK[1], XGK[3], XGK[5], XGK[7]`.
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

/// Conservative rescaling of the raw Kronrod error, following the practice
/// of the established quadrature libraries.
fn rescale_error(err: f64, resabs: f64, resasc: f64) -> f64 {
    let mut err = err.abs();
    if resasc != 0.0 && err != 0.0 {
        let scale = (200.0 * err / resasc).powf(1.5);
        err = if scale < 1.0 { resasc * scale } else { resasc };
    }
    let min_pos = f64::MIN_POSITIVE;
    let eps = f64::EPSILON;
    if resabs > min_pos / (50.0 * eps) {
        err = err.max(50.0 * eps * resabs);
    }
    err
}

struct Panel {
    a: C64,
    b: C64,
    value: C64,
    error: f64,
    resabs: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error
            .partial_cmp(&other.error)
            .unwrap_or(Ordering::Equal)
    }
}

/// One 7/15 evaluation on the straight segment from `a` to `b`.
fn kronrod_panel<F: FnMut(C64) -> C64>(f: &mut F, a: C64, b: C64) -> Panel {
    let center = (a + b) * 0.5;
    let half = (b - a) * 0.5;
    let hlen = half.norm();

    let fc = f(center);
    let mut resg = fc * WG[3];
    let mut resk = fc * WGK[7];
    let mut resabs = fc.norm() * WGK[7];
    let mut fv = [C64::new(0.0, 0.0); 15];
    fv[7] = fc;

    for j in 0..7 {
        let x = XGK[j];
        let f1 = f(center - half * x);
        let f2 = f(center + half * x);
        fv[j] = f1;
        fv[14 - j] = f2;
        let fsum = f1 + f2;
        resk += fsum * WGK[j];
        resabs += (f1.norm() + f2.norm()) * WGK[j];
        if j % 2 == 1 {
            resg += fsum * WG[j / 2];
        }
    }

    let reskh = resk * 0.5;
    let mut resasc = WGK[7] * (fc - reskh).norm();
    for j in 0..7 {
        resasc += WGK[j] * ((fv[j] - reskh).norm() + (fv[14 - j] - reskh).norm());
    }

    let raw = (resk - resg).norm() * hlen;
    let error = rescale_error(raw, resabs * hlen, resasc * hlen);
    Panel {
        a,
        b,
        value: resk * half,
        error,
        resabs: resabs * hlen,
    }
}

/// The error estimate of a union of panels can never drop below this
/// multiple of the accumulated `integral of |f|`: it is the f64 resolution
/// floor of the rescaled estimates.
fn resolution_floor(resabs_total: f64) -> f64 {
    60.0 * f64::EPSILON * resabs_total
}

/// Adaptive integral of `f` along the straight segment from `a` to `b`, to
/// absolute tolerance `tol_abs`, spending at most `max_evals` evaluations.
pub fn integrate_segment<F: FnMut(C64) -> C64>(
    mut f: F,
    a: C64,
    b: C64,
    tol_abs: f64,
    max_evals: usize,
) -> Result<QuadratureResult> {
    if !tol_abs.is_finite() || tol_abs <= 0.0 {
        return Err(Error::DegenerateInput("tolerance must be positive".into()));
    }
    if (b - a).norm() == 0.0 {
        return Ok(QuadratureResult {
            value: C64::new(0.0, 0.0),
            abs_error_estimate: 0.0,
            evaluations: 0,
        });
    }
    let mut evals = 15usize;
    let first = kronrod_panel(&mut f, a, b);
    let mut total_error = first.error;
    let mut resabs_total = first.resabs;
    let mut heap = BinaryHeap::new();
    heap.push(first);

    while total_error > tol_abs.max(resolution_floor(resabs_total)) && evals + 30 <= max_evals {
        let worst = match heap.pop() {
            Some(p) => p,
            None => break,
        };
        if (worst.b - worst.a).norm() < 1e-14 * (b - a).norm() {
            // the panel is too small to bisect meaningfully
            heap.push(worst);
            break;
        }
        let mid = (worst.a + worst.b) * 0.5;
        let left = kronrod_panel(&mut f, worst.a, mid);
        let right = kronrod_panel(&mut f, mid, worst.b);
        evals += 30;
        total_error += left.error + right.error - worst.error;
        resabs_total += left.resabs + right.resabs - worst.resabs;
        heap.push(left);
        heap.push(right);
    }

    // recompute the totals from the surviving panels for summation accuracy
    let mut value = C64::new(0.0, 0.0);
    let mut error = 0.0;
    let mut resabs = 0.0;
    for p in heap.iter() {
        value += p.value;
        error += p.error;
        resabs += p.resabs;
    }

    if !value.re.is_finite() || !value.im.is_finite() {
        return Err(Error::DomainError(
            "integrand produced a non-finite value on the contour".into(),
        ));
    }
    // an estimate at the f64 resolution floor counts as converged even when
    // the floor sits above the requested tolerance
    if error > tol_abs.max(resolution_floor(resabs)) {
        return Err(Error::NoConvergence {
            estimate: error,
            tolerance: tol_abs,
            evaluations: evals,
        });
    }
    Ok(QuadratureResult {
        value,
        abs_error_estimate: error,
        evaluations: evals,
    })
}

/// Adaptive integral of `f` along the ray `start + u * dir`, `u` from 0 to
/// infinity, for integrands decaying fast enough to be integrable.
///
/// The ray is compactified by `u = scale * t / (1 - t)`; `scale` should be a
/// rough guess of the decay length so the mass sits in the middle of `[0,1]`.
pub fn integrate_ray<F: FnMut(C64) -> C64>(
    mut f: F,
    start: C64,
    dir: C64,
    scale: f64,
    tol_abs: f64,
    max_evals: usize,
) -> Result<QuadratureResult> {
    if !(scale > 0.0) || dir.norm() == 0.0 {
        return Err(Error::DegenerateInput(
            "ray needs positive scale and nonzero direction".into(),
        ));
    }
    let dir = dir / dir.norm();
    let g = move |t: C64| -> C64 {
        let t = t.re;
        let om = 1.0 - t;
        if om <= 0.0 {
            return C64::new(0.0, 0.0);
        }
        let u = scale * t / om;
        let jac = scale / (om * om);
        f(start + dir * u) * dir * jac
    };
    integrate_segment(g, C64::new(0.0, 0.0), C64::new(1.0, 0.0), tol_abs, max_evals)
}
