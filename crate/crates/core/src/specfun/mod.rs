//! Confluent hypergeometric functions with complex parameter `a`, complex
//! argument `z` and positive integer `c`.
//!
//! * [`kummer_m`]: `M(a,c,z) = ₁F₁(a;c;z)` by Taylor series (after the Kummer
//!   transformation when `Re z < 0`) up to `|z| = 40`, and by its two-sided
//!   asymptotic expansion beyond. Series that cancel badly, typically near
//!   the imaginary axis, are resummed in double-double arithmetic, which
//!   also covers large `|z|` where `|a|` is too big for the expansion.
//! * [`tricomi_u`]: `U(a,c,z)` in the integer-`c` (logarithmic) case. The
//!   logarithmic series is used near the origin, the divergent asymptotic
//!   series for `|z| >= 30`, and in between the Kummer equation is continued by
//!   Taylor steps along the ray through `z`, always in the direction in which
//!   `U` is the dominant solution.
//!
//! Every evaluation carries a running estimate of its relative error;
//! evaluations whose estimate exceeds [`ACCURACY_THRESHOLD`] fail with
//! [`Error::Accuracy`](crate::Error::Accuracy).

mod dd;
pub mod gamma;
mod kummer;
mod tricomi;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

pub use kummer::{kummer_asymptotic, kummer_m_value, kummer_series, kummer_series_extended};
pub use tricomi::{tricomi_asymptotic, tricomi_log_series, tricomi_u_value};

use crate::error::Result;

/// Estimated relative errors above this fail the evaluation.
pub const ACCURACY_THRESHOLD: f64 = 1e-6;
/// Largest `|z|` at which `M` is summed as a Taylor series.
pub const M_SERIES_RADIUS: f64 = 40.0;
/// `|z|` above which `U` is taken from its asymptotic expansion.
pub const U_ASYMPTOTIC_RADIUS: f64 = 30.0;
/// Largest `|z|` at which `U` is summed from its logarithmic series.
pub const U_SERIES_RADIUS: f64 = 2.0;

/// Arguments of `M(a,c,z)` or `U(a,c,z)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HypParams {
    pub a: Complex64,
    pub c: u32,
    pub z: Complex64,
}

impl HypParams {
    pub fn new(a: Complex64, c: u32, z: Complex64) -> Self {
        Self { a, c, z }
    }
}

/// A function value together with its first derivative.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ValueDeriv {
    pub value: Complex64,
    pub deriv: Complex64,
}

impl ValueDeriv {
    pub fn new(value: Complex64, deriv: Complex64) -> Self {
        Self { value, deriv }
    }

    /// Logarithmic derivative `deriv / value`.
    pub fn log_derivative(&self) -> Complex64 {
        self.deriv / self.value
    }
}

/// A value with its estimated relative error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Evaluation {
    pub value: Complex64,
    pub rel_error: f64,
}

/// `M(a,c,z)` and `dM/dz = (a/c) M(a+1,c+1,z)`.
pub fn kummer_m(p: HypParams) -> Result<ValueDeriv> {
    let value = kummer_m_value(p.a, p.c, p.z)?.value;
    let upper = kummer_m_value(p.a + 1.0, p.c + 1, p.z)?.value;
    Ok(ValueDeriv::new(value, p.a / p.c as f64 * upper))
}

/// `U(a,c,z)` and `dU/dz = -a U(a+1,c+1,z)`.
pub fn tricomi_u(p: HypParams) -> Result<ValueDeriv> {
    let (value, deriv, _) = tricomi::u_pair(p.a, p.c, p.z)?;
    Ok(ValueDeriv::new(value, deriv))
}

pub(crate) fn check_params(a: Complex64, c: u32, z: Complex64) -> Result<()> {
    use crate::error::Error;
    if c == 0 {
        return Err(Error::Domain("c must be a positive integer".into()));
    }
    if !a.is_finite() || !z.is_finite() {
        return Err(Error::Domain(format!("non-finite argument a = {a}, z = {z}")));
    }
    Ok(())
}

pub(crate) fn pochhammer(x: Complex64, n: u32) -> Complex64 {
    (0..n).fold(Complex64::new(1.0, 0.0), |acc, j| acc * (x + j as f64))
}

pub(crate) fn factorial(n: u32) -> f64 {
    (1..=n).fold(1.0, |acc, j| acc * j as f64)
}
