//! Value types shared across the crate: indices, contours, kernel values,
//! sectors and quadrature results.

use crate::error::{Error, Result};
use crate::C64;

/// Result of an adaptive quadrature: the value, an honest absolute error
/// estimate, and the number of integrand evaluations spent.
#[derive(Debug, Clone, Copy)]
pub struct QuadratureResult {
    pub value: C64,
    pub abs_error_estimate: f64,
    pub evaluations: usize,
}

impl QuadratureResult {
    /// Accumulate another partial integral into this one.
    pub fn accumulate(&mut self, other: &QuadratureResult) {
        self.value += other.value;
        self.abs_error_estimate += other.abs_error_estimate;
        self.evaluations += other.evaluations;
    }

    pub fn zero() -> Self {
        QuadratureResult {
            value: C64::new(0.0, 0.0),
            abs_error_estimate: 0.0,
            evaluations: 0,
        }
    }
}

/// Index of a signed-parameter Bessel function: a sign vector and spectral
/// parameters of the same rank.
#[derive(Debug, Clone, PartialEq)]
pub struct SignedIndex {
    /// One sign per component, `+1` or `-1`.
    pub signs: Vec<i8>,
    /// Spectral parameters lambda.
    pub lambda: Vec<C64>,
}

impl SignedIndex {
    pub fn new(signs: Vec<i8>, lambda: Vec<C64>) -> Result<Self> {
        if signs.is_empty() || signs.len() != lambda.len() {
            return Err(Error::DegenerateInput(
                "sign and parameter vectors must be nonempty and of equal rank".into(),
            ));
        }
        if signs.iter().any(|&s| s != 1 && s != -1) {
            return Err(Error::DegenerateInput("signs must be +1 or -1".into()));
        }
        Ok(SignedIndex { signs, lambda })
    }

    pub fn rank(&self) -> usize {
        self.lambda.len()
    }

    /// Sum of the spectral parameters.
    pub fn lambda_sum(&self) -> C64 {
        self.lambda.iter().sum()
    }
}

/// Index over the real field: spectral parameters `mu` and parities `delta`
/// (each 0 or 1).
#[derive(Debug, Clone, PartialEq)]
pub struct RealIndex {
    pub mu: Vec<C64>,
    pub delta: Vec<u8>,
}

impl RealIndex {
    pub fn new(mu: Vec<C64>, delta: Vec<u8>) -> Result<Self> {
        if mu.is_empty() || mu.len() != delta.len() {
            return Err(Error::DegenerateInput(
                "spectral and parity vectors must be nonempty and of equal rank".into(),
            ));
        }
        if delta.iter().any(|&d| d > 1) {
            return Err(Error::DegenerateInput("parities must be 0 or 1".into()));
        }
        Ok(RealIndex { mu, delta })
    }

    pub fn rank(&self) -> usize {
        self.mu.len()
    }

    pub fn mu_sum(&self) -> C64 {
        self.mu.iter().sum()
    }

    /// Total parity `|delta|` reduced mod 2 is NOT taken here; this is the
    /// plain sum used in prefactor exponents.
    pub fn delta_sum(&self) -> u32 {
        self.delta.iter().map(|&d| d as u32).sum()
    }

    /// Index with every parity shifted by `shift` (mod 2); used when
    /// assembling the two-signed kernel from one-variable ones.
    pub fn shift_all_delta(&self, shift: u8) -> RealIndex {
        RealIndex {
            mu: self.mu.clone(),
            delta: self.delta.iter().map(|&d| (d + shift) % 2).collect(),
        }
    }
}

/// Index over the complex field: spectral parameters `mu` and integral
/// Fourier weights `m`.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexIndex {
    pub mu: Vec<C64>,
    pub m: Vec<i64>,
}

impl ComplexIndex {
    pub fn new(mu: Vec<C64>, m: Vec<i64>) -> Result<Self> {
        if mu.is_empty() || mu.len() != m.len() {
            return Err(Error::DegenerateInput(
                "spectral and weight vectors must be nonempty and of equal rank".into(),
            ));
        }
        Ok(ComplexIndex { mu, m })
    }

    pub fn rank(&self) -> usize {
        self.mu.len()
    }

    pub fn mu_sum(&self) -> C64 {
        self.mu.iter().sum()
    }

    /// Plain (signed) sum of the weights.
    pub fn m_sum(&self) -> i64 {
        self.m.iter().sum()
    }

    /// Sum of the absolute weights.
    pub fn m_abs_sum(&self) -> i64 {
        self.m.iter().map(|&m| m.abs()).sum()
    }

    /// Index with `shift` added to every weight; the Fourier modes of the
    /// assembled kernel run over these shifts.
    pub fn shift_all_m(&self, shift: i64) -> ComplexIndex {
        ComplexIndex {
            mu: self.mu.clone(),
            m: self.m.iter().map(|&m| m + shift).collect(),
        }
    }
}

/// Method that produced a kernel value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Series,
    Contour,
    Asymptotic,
    ClosedForm,
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Method::Series => "series",
            Method::Contour => "contour",
            Method::Asymptotic => "asymptotic",
            Method::ClosedForm => "closed_form",
        };
        f.write_str(s)
    }
}

/// A kernel value together with an honest absolute error estimate and the
/// method that produced it.
#[derive(Debug, Clone, Copy)]
pub struct KernelValue {
    pub value: C64,
    pub abs_error: f64,
    pub method: Method,
}

/// A point on the universal cover of the punctured real line / complex
/// plane: modulus `x > 0` and unreduced argument `omega`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UniversalCoverPoint {
    pub x: f64,
    pub omega: f64,
}

impl UniversalCoverPoint {
    pub fn new(x: f64, omega: f64) -> Result<Self> {
        if !(x > 0.0) || !x.is_finite() || !omega.is_finite() {
            return Err(Error::DegenerateInput(
                "universal cover point needs finite modulus x > 0".into(),
            ));
        }
        Ok(UniversalCoverPoint { x, omega })
    }

    /// Projection to the plane.
    pub fn to_c64(self) -> C64 {
        C64::from_polar(self.x, self.omega)
    }

    /// `z^p` on the cover: `exp(p (ln x + i omega))`, single valued.
    pub fn pow(self, p: C64) -> C64 {
        (p * C64::new(self.x.ln(), self.omega)).exp()
    }
}

/// An angular sector `|arg z - center_arg| < half_width` with a label for
/// diagnostics.
#[derive(Debug, Clone)]
pub struct Sector {
    pub center_arg: f64,
    pub half_width: f64,
    pub label: String,
}

impl Sector {
    /// Membership test for an unreduced argument.
    pub fn contains_arg(&self, arg: f64) -> bool {
        (arg - self.center_arg).abs() < self.half_width
    }
}

/// A product of horizontal strips: component `l` is constrained to
/// `lo[l] < Re < hi[l]`. Used for convergence domains of integral
/// representations.
#[derive(Debug, Clone)]
pub struct HyperStrip {
    pub lo: Vec<f64>,
    pub hi: Vec<f64>,
}

impl HyperStrip {
    pub fn contains(&self, v: &[C64]) -> bool {
        v.len() == self.lo.len()
            && v.iter()
                .zip(self.lo.iter().zip(&self.hi))
                .all(|(z, (&lo, &hi))| z.re > lo && z.re < hi)
    }
}

/// Orientation of a contour.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orientation {
    /// Runs upward; outside `|Im s| <= truncation_t` it continues vertically.
    Upward,
    /// A counterclockwise loop starting and ending at minus infinity.
    Loop,
}

/// An integration contour: a polyline of vertices with an orientation, the
/// height at which the explicit polyline stops (for upward contours), and the
/// minimal distance kept from every pole.
#[derive(Debug, Clone)]
pub struct Contour {
    pub vertices: Vec<C64>,
    pub orientation: Orientation,
    pub truncation_t: f64,
    pub clearance: f64,
}

impl Contour {
    /// Minimal distance from `p` to the polyline, including the vertical
    /// continuations of an upward contour beyond its explicit ends.
    pub fn distance_to(&self, p: C64) -> f64 {
        let mut best = f64::INFINITY;
        for w in self.vertices.windows(2) {
            best = best.min(point_segment_distance(p, w[0], w[1]));
        }
        if self.orientation == Orientation::Upward {
            if let (Some(&first), Some(&last)) = (self.vertices.first(), self.vertices.last()) {
                if p.im <= first.im {
                    best = best.min((p.re - first.re).abs());
                }
                if p.im >= last.im {
                    best = best.min((p.re - last.re).abs());
                }
            }
        }
        best
    }
}

fn point_segment_distance(p: C64, a: C64, b: C64) -> f64 {
    let ab = b - a;
    let len2 = ab.norm_sqr();
    if len2 == 0.0 {
        return (p - a).norm();
    }
    let t = ((p - a).re * ab.re + (p - a).im * ab.im) / len2;
    let t = t.clamp(0.0, 1.0);
    (p - (a + ab * t)).norm()
}

/// Parameters of a Bessel function of the second kind: spectral parameters
/// and the root-of-unity direction, the latter kept as an unreduced argument
/// because the defining formula is sensitive to the branch.
#[derive(Debug, Clone, PartialEq)]
pub struct SecondKindParams {
    pub lambda: Vec<C64>,
    /// Unreduced argument of the direction `xi`; `xi = exp(i xi_arg)`.
    pub xi_arg: f64,
}

impl SecondKindParams {
    pub fn new(lambda: Vec<C64>, xi_arg: f64) -> Result<Self> {
        if lambda.is_empty() {
            return Err(Error::DegenerateInput("empty parameter vector".into()));
        }
        let n = lambda.len() as f64;
        // xi^n must be +1 or -1 for the function to be defined.
        let half_turns = xi_arg * n / std::f64::consts::PI;
        if (half_turns - half_turns.round()).abs() > 1e-9 {
            return Err(Error::DegenerateInput(
                "direction xi must satisfy xi^n = 1 or -1".into(),
            ));
        }
        Ok(SecondKindParams { lambda, xi_arg })
    }

    pub fn rank(&self) -> usize {
        self.lambda.len()
    }

    pub fn xi(&self) -> C64 {
        C64::from_polar(1.0, self.xi_arg)
    }

    /// Sign `xi^n`, exactly `+1` or `-1`.
    pub fn sign(&self) -> i8 {
        let n = self.lambda.len() as f64;
        let half_turns = (self.xi_arg * n / std::f64::consts::PI).round() as i64;
        if half_turns.rem_euclid(2) == 0 {
            1
        } else {
            -1
        }
    }
}

/// Coefficient table for the large-argument expansion: `table[alpha]` is the
/// coefficient of `z^{-alpha}`, already specialised to the index, for
/// `alpha < a_max`.
#[derive(Debug, Clone)]
pub struct AsymptoticCoefficients {
    pub a_max: usize,
    /// Coefficients indexed by `(alpha, beta)` with `alpha + beta <= a_max - 1`;
    /// entry `(alpha, beta)` multiplies `z^{-alpha} zbar^{-beta}`.
    pub table: Vec<Vec<C64>>,
}
