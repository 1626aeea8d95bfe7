//! Double-double arithmetic (an unevaluated sum `hi + lo` of two `f64`s) for
//! sums whose terms nearly cancel.

use std::ops::{Add, Mul, Neg};

use num_complex::Complex64;

#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub(crate) struct Dd {
    hi: f64,
    lo: f64,
}

fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

fn fast_two_sum(a: f64, b: f64) -> Dd {
    let s = a + b;
    Dd { hi: s, lo: b - (s - a) }
}

impl Dd {
    pub(crate) fn to_f64(self) -> f64 {
        self.hi + self.lo
    }
}

impl From<f64> for Dd {
    fn from(hi: f64) -> Self {
        Dd { hi, lo: 0.0 }
    }
}

impl Add for Dd {
    type Output = Dd;
    fn add(self, rhs: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, rhs.hi);
        fast_two_sum(s, e + self.lo + rhs.lo)
    }
}

impl Neg for Dd {
    type Output = Dd;
    fn neg(self) -> Dd {
        Dd {
            hi: -self.hi,
            lo: -self.lo,
        }
    }
}

impl Mul for Dd {
    type Output = Dd;
    fn mul(self, rhs: Dd) -> Dd {
        let p = self.hi * rhs.hi;
        let e = self.hi.mul_add(rhs.hi, -p) + (self.hi * rhs.lo + self.lo * rhs.hi);
        fast_two_sum(p, e)
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub(crate) struct ComplexDd {
    pub re: Dd,
    pub im: Dd,
}

impl ComplexDd {
    pub(crate) fn conj(self) -> Self {
        ComplexDd {
            re: self.re,
            im: -self.im,
        }
    }

    pub(crate) fn norm_sqr(self) -> Dd {
        self.re * self.re + self.im * self.im
    }
}

impl From<Complex64> for ComplexDd {
    fn from(z: Complex64) -> Self {
        ComplexDd {
            re: z.re.into(),
            im: z.im.into(),
        }
    }
}

impl Add for ComplexDd {
    type Output = ComplexDd;
    fn add(self, rhs: ComplexDd) -> ComplexDd {
        ComplexDd {
            re: self.re + rhs.re,
            im: self.im + rhs.im,
        }
    }
}

impl Mul for ComplexDd {
    type Output = ComplexDd;
    fn mul(self, rhs: ComplexDd) -> ComplexDd {
        ComplexDd {
            re: self.re * rhs.re + -(self.im * rhs.im),
            im: self.re * rhs.im + self.im * rhs.re,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_cancelled_digits() {
        // (1 + 2^-60) - 1 is lost in plain f64.
        let tiny = 2f64.powi(-60);
        let s = Dd::from(1.0) + Dd::from(tiny) + Dd::from(-1.0);
        assert_eq!(s.to_f64(), tiny);

        let a = Dd::from(1.0 + f64::EPSILON);
        let sq = a * a + Dd::from(-(1.0 + 2.0 * f64::EPSILON));
        assert_eq!(sq.to_f64(), f64::EPSILON * f64::EPSILON);
    }

    #[test]
    fn complex_product_matches_f64_when_exact() {
        let a = ComplexDd::from(Complex64::new(1.5, -2.0));
        let b = ComplexDd::from(Complex64::new(0.25, 4.0));
        let p = a * b.conj();
        let q = Complex64::new(1.5, -2.0) * Complex64::new(0.25, -4.0);
        assert_eq!((p.re.to_f64(), p.im.to_f64()), (q.re, q.im));
        assert_eq!(a.norm_sqr().to_f64(), 6.25);
    }
}
