//! Double-double arithmetic (an unevaluated sum `hi + lo` of two `f64`s,
//! about 32 significant digits) for the few series that cancel too much in
//! plain double precision.

use num_complex::Complex64;

/// Unit roundoff of the double-double format, `2^-104`.
pub const DD_EPS: f64 = 4.930_380_657_631_324e-32;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Dd {
    hi: f64,
    lo: f64,
}

fn two_sum(a: f64, b: f64) -> Dd {
    let s = a + b;
    let bb = s - a;
    Dd {
        hi: s,
        lo: (a - (s - bb)) + (b - bb),
    }
}

fn quick_two_sum(a: f64, b: f64) -> Dd {
    let s = a + b;
    Dd {
        hi: s,
        lo: b - (s - a),
    }
}

fn two_prod(a: f64, b: f64) -> Dd {
    let p = a * b;
    Dd {
        hi: p,
        lo: a.mul_add(b, -p),
    }
}

impl Dd {
    pub fn from_f64(x: f64) -> Self {
        Dd { hi: x, lo: 0.0 }
    }

    /// `x + n` without rounding away the low bits of `x`.
    pub fn sum_f64(x: f64, n: f64) -> Self {
        two_sum(x, n)
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    pub fn add(self, o: Dd) -> Dd {
        let s = two_sum(self.hi, o.hi);
        let t = two_sum(self.lo, o.lo);
        let s = quick_two_sum(s.hi, s.lo + t.hi);
        quick_two_sum(s.hi, s.lo + t.lo)
    }

    pub fn neg(self) -> Dd {
        Dd {
            hi: -self.hi,
            lo: -self.lo,
        }
    }

    pub fn sub(self, o: Dd) -> Dd {
        self.add(o.neg())
    }

    pub fn mul(self, o: Dd) -> Dd {
        let p = two_prod(self.hi, o.hi);
        quick_two_sum(p.hi, p.lo + (self.hi * o.lo + self.lo * o.hi))
    }

    pub fn div_f64(self, b: f64) -> Dd {
        let q1 = self.hi / b;
        let r = self.sub(two_prod(q1, b));
        let q2 = r.hi / b;
        let r = r.sub(two_prod(q2, b));
        let q3 = r.hi / b;
        quick_two_sum(q1, q2).add(Dd::from_f64(q3))
    }
}

/// Complex number with double-double parts.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CDd {
    pub re: Dd,
    pub im: Dd,
}

impl CDd {
    pub fn from_c(z: Complex64) -> Self {
        CDd {
            re: Dd::from_f64(z.re),
            im: Dd::from_f64(z.im),
        }
    }

    pub fn to_c(self) -> Complex64 {
        Complex64::new(self.re.to_f64(), self.im.to_f64())
    }

    pub fn add(self, o: CDd) -> CDd {
        CDd {
            re: self.re.add(o.re),
            im: self.im.add(o.im),
        }
    }

    pub fn mul(self, o: CDd) -> CDd {
        CDd {
            re: self.re.mul(o.re).sub(self.im.mul(o.im)),
            im: self.re.mul(o.im).add(self.im.mul(o.re)),
        }
    }

    pub fn div_f64(self, b: f64) -> CDd {
        CDd {
            re: self.re.div_f64(b),
            im: self.im.div_f64(b),
        }
    }

    pub fn norm(self) -> f64 {
        self.to_c().norm()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn keeps_bits_lost_in_double() {
        let x = Dd::from_f64(1.0).add(Dd::from_f64(1e-20));
        let y = x.sub(Dd::from_f64(1.0));
        assert!((y.to_f64() - 1e-20).abs() < 1e-35);
        let third = Dd::from_f64(1.0).div_f64(3.0);
        let back = third.mul(Dd::from_f64(3.0)).sub(Dd::from_f64(1.0));
        assert!(back.to_f64().abs() < 1e-31);
    }

    #[test]
    fn complex_product() {
        let a = CDd::from_c(Complex64::new(1.5, -2.0));
        let b = CDd::from_c(Complex64::new(0.25, 4.0));
        assert_eq!(a.mul(b).to_c(), Complex64::new(1.5, -2.0) * Complex64::new(0.25, 4.0));
    }
}
