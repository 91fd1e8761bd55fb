//! Double-double ("compensated") arithmetic: unevaluated sums of two f64
//! carrying roughly 32 significant digits.
//!
//! The ascending series for Bessel functions suffer catastrophic cancellation
//! when the argument is moderately large (individual terms reach `1e7` while
//! the sum is of size one, say), so plain f64 accumulation caps the absolute
//! accuracy near `1e-9`. Accumulating the terms and their recurrence in
//! double-double restores full f64 accuracy of the final sum. Only the crate's
//! series code uses this module; everything else works in f64.

/// An unevaluated sum `hi + lo` with `|lo| <= ulp(hi)/2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Dd {
    pub hi: f64,
    pub lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let err = (a - (s - bb)) + (b - bb);
    (s, err)
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    // requires |a| >= |b|
    let s = a + b;
    let err = b - (s - a);
    (s, err)
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    // fused multiply-add computes the rounding error of the product exactly
    let err = f64::mul_add(a, b, -p);
    (p, err)
}

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };
    pub const ONE: Dd = Dd { hi: 1.0, lo: 0.0 };
    /// Pi to double-double precision.
    pub const PI: Dd = Dd {
        hi: 3.141592653589793,
        lo: 1.2246467991473532e-16,
    };
    /// 2 pi to double-double precision.
    pub const TAU: Dd = Dd {
        hi: 6.283185307179586,
        lo: 2.4492935982947064e-16,
    };

    #[inline]
    pub fn from_f64(x: f64) -> Dd {
        Dd { hi: x, lo: 0.0 }
    }

    #[inline]
    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    #[inline]
    pub fn abs(self) -> f64 {
        self.to_f64().abs()
    }

    #[inline]
    pub fn neg(self) -> Dd {
        Dd {
            hi: -self.hi,
            lo: -self.lo,
        }
    }

    #[inline]
    pub fn add(self, other: Dd) -> Dd {
        let (s1, s2) = two_sum(self.hi, other.hi);
        let (t1, t2) = two_sum(self.lo, other.lo);
        let s2 = s2 + t1;
        let (s1, s2) = quick_two_sum(s1, s2);
        let s2 = s2 + t2;
        let (hi, lo) = quick_two_sum(s1, s2);
        Dd { hi, lo }
    }

    #[inline]
    pub fn sub(self, other: Dd) -> Dd {
        self.add(other.neg())
    }

    #[inline]
    pub fn mul(self, other: Dd) -> Dd {
        let (p1, p2) = two_prod(self.hi, other.hi);
        let p2 = p2 + self.hi * other.lo + self.lo * other.hi;
        let (hi, lo) = quick_two_sum(p1, p2);
        Dd { hi, lo }
    }

    #[inline]
    pub fn mul_f64(self, b: f64) -> Dd {
        let (p1, p2) = two_prod(self.hi, b);
        let p2 = p2 + self.lo * b;
        let (hi, lo) = quick_two_sum(p1, p2);
        Dd { hi, lo }
    }

    #[inline]
    pub fn div(self, other: Dd) -> Dd {
        // long division with two correction passes
        let q1 = self.hi / other.hi;
        let r = self.sub(other.mul_f64(q1));
        let q2 = r.hi / other.hi;
        let r = r.sub(other.mul_f64(q2));
        let q3 = r.hi / other.hi;
        let (s, e) = quick_two_sum(q1, q2);
        Dd { hi: s, lo: e }.add(Dd::from_f64(q3))
    }
}

/// Complex number with double-double components.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DdComplex {
    pub re: Dd,
    pub im: Dd,
}

impl DdComplex {
    pub const ZERO: DdComplex = DdComplex {
        re: Dd::ZERO,
        im: Dd::ZERO,
    };
    pub const ONE: DdComplex = DdComplex {
        re: Dd::ONE,
        im: Dd::ZERO,
    };

    #[inline]
    pub fn new(re: Dd, im: Dd) -> DdComplex {
        DdComplex { re, im }
    }

    #[inline]
    pub fn from_c64(z: num_complex::Complex64) -> DdComplex {
        DdComplex {
            re: Dd::from_f64(z.re),
            im: Dd::from_f64(z.im),
        }
    }

    #[inline]
    pub fn to_c64(self) -> num_complex::Complex64 {
        num_complex::Complex64::new(self.re.to_f64(), self.im.to_f64())
    }

    /// Cheap magnitude estimate (f64 precision), enough for stopping rules.
    #[inline]
    pub fn abs_est(self) -> f64 {
        self.to_c64().norm()
    }

    #[inline]
    pub fn add(self, other: DdComplex) -> DdComplex {
        DdComplex {
            re: self.re.add(other.re),
            im: self.im.add(other.im),
        }
    }

    #[inline]
    pub fn sub(self, other: DdComplex) -> DdComplex {
        DdComplex {
            re: self.re.sub(other.re),
            im: self.im.sub(other.im),
        }
    }

    #[inline]
    pub fn mul(self, other: DdComplex) -> DdComplex {
        let re = self.re.mul(other.re).sub(self.im.mul(other.im));
        let im = self.re.mul(other.im).add(self.im.mul(other.re));
        DdComplex { re, im }
    }

    #[inline]
    pub fn mul_f64(self, b: f64) -> DdComplex {
        DdComplex {
            re: self.re.mul_f64(b),
            im: self.im.mul_f64(b),
        }
    }

    #[inline]
    pub fn div(self, other: DdComplex) -> DdComplex {
        // multiply by the conjugate and divide by the squared modulus
        let den = other.re.mul(other.re).add(other.im.mul(other.im));
        let num = self.mul(DdComplex {
            re: other.re,
            im: other.im.neg(),
        });
        DdComplex {
            re: num.re.div(den),
            im: num.im.div(den),
        }
    }
}
