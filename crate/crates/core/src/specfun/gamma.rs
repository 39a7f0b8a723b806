//! Complex gamma and digamma functions.
//!
//! Both use the Stirling expansion after shifting the argument up to
//! `Re w >= SHIFT_TARGET` with the functional recurrence. The shifted product
//! is kept explicitly, so `rgamma` is exactly zero at the poles.

use num_complex::Complex64;

use crate::error::{Error, Result};

const SHIFT_TARGET: f64 = 16.0;
const HALF_LN_TWO_PI: f64 = 0.918_938_533_204_672_8;

/// Euler–Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

// B_{2k} / (2k (2k-1)), k = 1..8
const LNGAMMA_COEFFS: [f64; 8] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360_360.0,
    1.0 / 156.0,
    -3617.0 / 122_400.0,
];

// B_{2k} / (2k), k = 1..8
const DIGAMMA_COEFFS: [f64; 8] = [
    1.0 / 12.0,
    -1.0 / 120.0,
    1.0 / 252.0,
    -1.0 / 240.0,
    1.0 / 132.0,
    -691.0 / 32_760.0,
    1.0 / 12.0,
    -3617.0 / 8160.0,
];

fn shift_count(z: Complex64) -> usize {
    if z.re >= SHIFT_TARGET {
        0
    } else {
        (SHIFT_TARGET - z.re).ceil() as usize
    }
}

/// `ln Γ(w)` by Stirling's series, valid for `Re w >= SHIFT_TARGET`.
fn stirling_lngamma(w: Complex64) -> Complex64 {
    let inv = w.inv();
    let inv2 = inv * inv;
    let mut corr = Complex64::new(0.0, 0.0);
    let mut pow = inv;
    for c in LNGAMMA_COEFFS {
        corr += pow * c;
        pow *= inv2;
    }
    (w - 0.5) * w.ln() - w + HALF_LN_TWO_PI + corr
}

/// Returns `true` when `z` is a non-positive integer.
pub fn is_nonpositive_integer(z: Complex64) -> bool {
    z.im == 0.0 && z.re <= 0.0 && z.re.fract() == 0.0
}

/// Reciprocal gamma function `1/Γ(z)`, an entire function.
pub fn rgamma(z: Complex64) -> Complex64 {
    if is_nonpositive_integer(z) {
        return Complex64::new(0.0, 0.0);
    }
    let n = shift_count(z);
    let mut prod = Complex64::new(1.0, 0.0);
    for j in 0..n {
        prod *= z + j as f64;
    }
    prod * (-stirling_lngamma(z + n as f64)).exp()
}

/// Gamma function `Γ(z)`.
pub fn gamma(z: Complex64) -> Result<Complex64> {
    if is_nonpositive_integer(z) {
        return Err(Error::Domain(format!("gamma pole at z = {z}")));
    }
    let n = shift_count(z);
    let mut prod = Complex64::new(1.0, 0.0);
    for j in 0..n {
        prod *= z + j as f64;
    }
    let g = stirling_lngamma(z + n as f64).exp() / prod;
    if g.is_finite() {
        Ok(g)
    } else {
        Err(Error::Range(format!("gamma overflow at z = {z}")))
    }
}

/// Digamma function `ψ(z) = Γ'(z)/Γ(z)`.
pub fn digamma(z: Complex64) -> Result<Complex64> {
    if is_nonpositive_integer(z) {
        return Err(Error::Domain(format!("digamma pole at z = {z}")));
    }
    let n = shift_count(z);
    let mut acc = Complex64::new(0.0, 0.0);
    for j in 0..n {
        acc += (z + j as f64).inv();
    }
    let w = z + n as f64;
    let inv = w.inv();
    let inv2 = inv * inv;
    let mut series = Complex64::new(0.0, 0.0);
    let mut pow = inv2;
    for c in DIGAMMA_COEFFS {
        series += pow * c;
        pow *= inv2;
    }
    Ok(w.ln() - inv * 0.5 - series - acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn rel(a: Complex64, b: Complex64) -> f64 {
        (a - b).norm() / b.norm()
    }

    #[test]
    fn factorials() {
        let mut f = 1.0;
        for n in 1..20 {
            let g = gamma(c(n as f64, 0.0)).unwrap();
            assert!(rel(g, c(f, 0.0)) < 1e-14, "n={n}: {g}");
            f *= n as f64;
        }
    }

    #[test]
    fn half_integer_and_complex_values() {
        assert!(rel(gamma(c(0.5, 0.0)).unwrap(), c(PI.sqrt(), 0.0)) < 1e-14);
        assert!(rel(gamma(c(-0.5, 0.0)).unwrap(), c(-2.0 * PI.sqrt(), 0.0)) < 1e-14);
        // Γ(1+i)
        let g = gamma(c(1.0, 1.0)).unwrap();
        assert!(rel(g, c(0.498_015_668_118_356, -0.154_949_828_301_811)) < 1e-13);
        // |Γ(iy)|² = π / (y sinh πy)
        let y = 2.5;
        let g = gamma(c(0.0, y)).unwrap();
        assert!((g.norm_sqr() - PI / (y * (PI * y).sinh())).abs() / g.norm_sqr() < 1e-13);
    }

    #[test]
    fn reflection_identity() {
        for &z in &[c(0.3, 0.7), c(-2.4, 1.1), c(3.854, 0.357), c(0.146, -0.357)] {
            let lhs = gamma(z).unwrap() * gamma(c(1.0, 0.0) - z).unwrap();
            let rhs = PI / (z * PI).sin();
            assert!(rel(lhs, rhs) < 1e-13, "z={z}");
        }
    }

    #[test]
    fn rgamma_vanishes_at_poles() {
        for n in 0..6 {
            assert_eq!(rgamma(c(-(n as f64), 0.0)), c(0.0, 0.0));
        }
        assert!(gamma(c(-3.0, 0.0)).is_err());
    }

    #[test]
    fn digamma_values() {
        assert!((digamma(c(1.0, 0.0)).unwrap() - c(-EULER_GAMMA, 0.0)).norm() < 1e-14);
        let half = digamma(c(0.5, 0.0)).unwrap();
        assert!((half - c(-EULER_GAMMA - 2.0 * 2f64.ln(), 0.0)).norm() < 1e-14);
        // Im ψ(iy) = 1/(2y) + (π/2) coth(πy)
        let y = 1.3;
        let d = digamma(c(0.0, y)).unwrap();
        let expect = 0.5 / y + 0.5 * PI / (PI * y).tanh();
        assert!((d.im - expect).abs() < 1e-13);
    }

    #[test]
    fn digamma_recurrence() {
        let z = c(3.854, 0.357);
        let lhs = digamma(z + 1.0).unwrap() - digamma(z).unwrap();
        assert!(rel(lhs, z.inv()) < 1e-13);
    }
}
