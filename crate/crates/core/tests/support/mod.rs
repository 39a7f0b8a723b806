//! Shared test fixtures: a fixed-point big-integer Taylor oracle for Kummer's
//! `M`, and the frozen high-precision reference values in `data/derived.json`.

#![allow(dead_code)]

use gamow_susy::Complex64;
use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde_json::Value;

/// Fractional bits of the fixed-point oracle (about 96 decimal digits).
const FRAC_BITS: u32 = 320;

#[derive(Clone)]
struct Fixed {
    re: BigInt,
    im: BigInt,
}

fn to_fixed(x: f64) -> BigInt {
    if x == 0.0 {
        return BigInt::zero();
    }
    // Exact: x = mantissa · 2^exp.
    let bits = x.to_bits();
    let exp = ((bits >> 52) & 0x7ff) as i32;
    let frac = bits & ((1u64 << 52) - 1);
    let (mantissa, e) = if exp == 0 { (frac, -1074) } else { (frac | (1u64 << 52), exp - 1075) };
    let m = BigInt::from(mantissa);
    let m = if x < 0.0 { -m } else { m };
    let shift = e + FRAC_BITS as i32;
    if shift >= 0 {
        m << shift as u32
    } else {
        m >> (-shift) as u32
    }
}

fn from_fixed(x: &BigInt) -> f64 {
    // Keep 64 significant bits before converting.
    let bits = x.bits() as i64;
    let drop = (bits - 64).max(0);
    let top = (x >> drop as u32).to_f64().unwrap();
    top * 2f64.powi((drop - FRAC_BITS as i64) as i32)
}

impl Fixed {
    fn from_c(z: Complex64) -> Self {
        Self { re: to_fixed(z.re), im: to_fixed(z.im) }
    }

    fn one() -> Self {
        Self { re: BigInt::from(1) << FRAC_BITS, im: BigInt::zero() }
    }

    fn add(&self, o: &Self) -> Self {
        Self { re: &self.re + &o.re, im: &self.im + &o.im }
    }

    fn mul(&self, o: &Self) -> Self {
        Self {
            re: (&self.re * &o.re - &self.im * &o.im) >> FRAC_BITS,
            im: (&self.re * &o.im + &self.im * &o.re) >> FRAC_BITS,
        }
    }

    fn div_int(&self, d: u64) -> Self {
        Self { re: &self.re / d, im: &self.im / d }
    }

    fn add_int(&self, j: u64) -> Self {
        Self { re: &self.re + (BigInt::from(j) << FRAC_BITS), im: self.im.clone() }
    }

    fn magnitude_bits(&self) -> u64 {
        self.re.abs().bits().max(self.im.abs().bits())
    }

    fn to_c(&self) -> Complex64 {
        Complex64::new(from_fixed(&self.re), from_fixed(&self.im))
    }
}

/// `M(a, c, z)` by direct Taylor summation in 320-bit fixed point. Slow but
/// free of cancellation for the moderate `|z|` of the test sample.
pub fn kummer_oracle(a: Complex64, c: u32, z: Complex64) -> Complex64 {
    let a = Fixed::from_c(a);
    let z = Fixed::from_c(z);
    let mut term = Fixed::one();
    let mut sum = Fixed::one();
    for j in 0u64..20_000 {
        term = term.mul(&a.add_int(j)).mul(&z).div_int((c as u64 + j) * (j + 1));
        sum = sum.add(&term);
        if term.re.is_zero() && term.im.is_zero() {
            break;
        }
        // Past the peak and below 2^-300 relative to the running sum.
        if j as f64 > 2.0 * z.to_c().norm() + a.to_c().norm()
            && term.magnitude_bits() + 300 < sum.magnitude_bits().max(FRAC_BITS as u64 - 20)
        {
            break;
        }
    }
    sum.to_c()
}

pub fn rel(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / b.norm()
}

pub fn derived() -> Value {
    serde_json::from_str(include_str!("../data/derived.json")).expect("derived.json parses")
}

pub fn c(v: &Value) -> Complex64 {
    Complex64::new(v[0].as_f64().unwrap(), v[1].as_f64().unwrap())
}

#[test]
fn oracle_reproduces_exponential() {
    let z = Complex64::new(-3.5, 2.25);
    let m = kummer_oracle(Complex64::new(1.0, 0.0), 1, z);
    assert!(rel(m, z.exp()) < 1e-15);
}
