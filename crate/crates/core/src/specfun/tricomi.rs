use num_complex::Complex64;

use super::gamma::{digamma, is_nonpositive_integer, rgamma, EULER_GAMMA};
use super::kummer::kummer_series;
use super::{
    check_params, factorial, pochhammer, Evaluation, ACCURACY_THRESHOLD, U_ASYMPTOTIC_RADIUS,
    U_SERIES_RADIUS,
};
use crate::error::{Error, Result};

const EPS: f64 = f64::EPSILON;
const MAX_TERMS: usize = 2000;
const MAX_STEP: f64 = 1.5;
/// Asymptotic start values are accepted for continuation below this estimate.
const START_TOLERANCE: f64 = 1e-13;

fn zero() -> Complex64 {
    Complex64::new(0.0, 0.0)
}

/// Logarithmic series of `U(a, n+1, z)` for `n = c - 1 >= 0`.
///
/// This is the classical expansion
/// `(-1)^{n+1}/(n! Γ(a-n)) Σ_k (a)_k/((n+1)_k k!) zᵏ [ln z + ψ(a+k) - ψ(1+k) - ψ(n+k+1)]
///  + 1/Γ(a) Σ_{k=1}^{n} (k-1)! (1-a+k)_{n-k}/(n-k)! z⁻ᵏ`.
pub fn tricomi_log_series(a: Complex64, c: u32, z: Complex64) -> Result<Evaluation> {
    check_params(a, c, z)?;
    if z == zero() {
        return Err(Error::Domain("U is singular at z = 0".into()));
    }
    if is_nonpositive_integer(a) {
        return Ok(tricomi_polynomial(a, c, z));
    }
    let n = c - 1;
    let nf = n as f64;

    let mut finite = zero();
    let mut finite_abs = 0.0;
    let ra = rgamma(a);
    if n > 0 && ra != zero() {
        let zinv = z.inv();
        let mut zpow = Complex64::new(1.0, 0.0);
        for k in 1..=n {
            zpow *= zinv;
            let coeff = factorial(k - 1) * pochhammer(1.0 - a + k as f64, n - k) / factorial(n - k);
            let t = ra * coeff * zpow;
            finite += t;
            finite_abs += t.norm();
        }
    }

    let mut log_part = zero();
    let mut log_abs = 0.0;
    let mut last = 0.0;
    let pref_gamma = rgamma(a - nf);
    if pref_gamma != zero() {
        let sign = if (n + 1) % 2 == 0 { 1.0 } else { -1.0 };
        let pref = pref_gamma * (sign / factorial(n));
        let ln_z = z.ln();
        let mut psi_a = digamma(a)?;
        // ψ(1+k) + ψ(n+1+k) = -2γ + H_k + H_{n+k}
        let mut harmonic_k = 0.0;
        let mut harmonic_nk: f64 = (1..=n).map(|j| 1.0 / j as f64).sum();
        let mut term = Complex64::new(1.0, 0.0);
        let mut sum = zero();
        for k in 0..MAX_TERMS {
            let kf = k as f64;
            let bracket = ln_z + psi_a + 2.0 * EULER_GAMMA - harmonic_k - harmonic_nk;
            let contrib = term * bracket;
            sum += contrib;
            let t = contrib.norm();
            log_abs += t;
            last = t;
            let ratio = (a + kf) * z / ((nf + 1.0 + kf) * (kf + 1.0));
            if term == zero() || (t <= EPS * sum.norm() && ratio.norm() < 0.5) {
                break;
            }
            psi_a += (a + kf).inv();
            harmonic_k += 1.0 / (kf + 1.0);
            harmonic_nk += 1.0 / (nf + kf + 1.0);
            term *= ratio;
        }
        log_part = pref * sum;
        log_abs *= pref.norm();
        last *= pref.norm();
    }

    let value = log_part + finite;
    let rel_error = (4.0 * EPS * (log_abs + finite_abs) + last) / value.norm();
    Ok(Evaluation { value, rel_error })
}

/// `U(-m, c, z) = (-1)^m (c)_m M(-m, c, z)`.
fn tricomi_polynomial(a: Complex64, c: u32, z: Complex64) -> Evaluation {
    let m = (-a.re) as u32;
    let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
    let poly = kummer_series(a, c, z);
    Evaluation {
        value: poly.value * pochhammer(Complex64::new(c as f64, 0.0), m) * sign,
        rel_error: poly.rel_error,
    }
}

/// Divergent expansion `U ~ z^{-a} Σ_s (a)_s (a-c+1)_s / s! (-z)^{-s}`,
/// truncated at its smallest term.
pub fn tricomi_asymptotic(a: Complex64, c: u32, z: Complex64) -> Evaluation {
    let cf = c as f64;
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    let mut prev = 1.0;
    let mut err = 0.0;
    for s in 0..500 {
        let sf = s as f64;
        let next = term * (a + sf) * (a - cf + 1.0 + sf) / ((sf + 1.0) * -z);
        let t = next.norm();
        if t == 0.0 {
            err = 0.0;
            break;
        }
        if t > prev {
            err = prev;
            break;
        }
        term = next;
        sum += term;
        prev = t;
        err = t;
        if t <= EPS * sum.norm() {
            break;
        }
    }
    let value = (-a * z.ln()).exp() * sum;
    Evaluation {
        value,
        rel_error: err / sum.norm() + 4.0 * EPS,
    }
}

/// `U(a,c,z)` by the production route, with its relative error estimate.
pub fn tricomi_u_value(a: Complex64, c: u32, z: Complex64) -> Result<Evaluation> {
    let (value, _, rel_error) = u_pair(a, c, z)?;
    Ok(Evaluation { value, rel_error })
}

pub(super) type Pair = (Complex64, Complex64, f64);

fn series_pair(a: Complex64, c: u32, z: Complex64) -> Result<Pair> {
    let u = tricomi_log_series(a, c, z)?;
    let up = tricomi_log_series(a + 1.0, c + 1, z)?;
    Ok((u.value, -a * up.value, u.rel_error.max(up.rel_error)))
}

fn asymptotic_pair(a: Complex64, c: u32, z: Complex64) -> Pair {
    let u = tricomi_asymptotic(a, c, z);
    let up = tricomi_asymptotic(a + 1.0, c + 1, z);
    (u.value, -a * up.value, u.rel_error.max(up.rel_error))
}

/// `(U, U', estimated relative error)` at `z`.
pub(super) fn u_pair(a: Complex64, c: u32, z: Complex64) -> Result<Pair> {
    check_params(a, c, z)?;
    if z == zero() {
        return Err(Error::Domain("U is singular at z = 0".into()));
    }
    let pair = if is_nonpositive_integer(a) {
        let u = tricomi_polynomial(a, c, z);
        let du = if a == zero() {
            zero()
        } else {
            // d/dz U(-m,c,z) = m U(1-m, c+1, z)
            -a * tricomi_polynomial(a + 1.0, c + 1, z).value
        };
        (u.value, du, u.rel_error)
    } else {
        let r = z.norm();
        let dir = z / r;
        if r <= U_SERIES_RADIUS {
            series_pair(a, c, z)?
        } else if r >= U_ASYMPTOTIC_RADIUS && asymptotic_pair(a, c, z).2 <= START_TOLERANCE {
            asymptotic_pair(a, c, z)
        } else if z.re < 0.0 {
            // U is the dominant solution along outward rays in the left half-plane.
            let start = dir * U_SERIES_RADIUS;
            let init = series_pair(a, c, start)?;
            walk(a, c, start, init, z)
        } else {
            // ... and along inward rays in the right half-plane.
            let mut radius = U_ASYMPTOTIC_RADIUS.max(r);
            let mut init = asymptotic_pair(a, c, dir * radius);
            while init.2 > START_TOLERANCE && radius < 1e3 {
                radius *= 1.5;
                init = asymptotic_pair(a, c, dir * radius);
            }
            walk(a, c, dir * radius, init, z)
        }
    };
    let (u, du, rel_error) = pair;
    if !u.is_finite() || !du.is_finite() {
        return Err(Error::Range(format!("U overflows at z = {z}")));
    }
    if rel_error > ACCURACY_THRESHOLD {
        return Err(Error::Accuracy {
            estimate: rel_error,
        });
    }
    Ok(pair)
}

/// Continues a solution `(w, w')` of `z w'' + (c - z) w' - a w = 0` from
/// `from` to `to` along the straight segment, by local Taylor expansions.
pub(super) fn walk(a: Complex64, c: u32, from: Complex64, init: Pair, to: Complex64) -> Pair {
    let cf = c as f64;
    let (mut w, mut dw, mut err) = init;
    let mut zc = from;
    loop {
        let remaining = to - zc;
        let dist = remaining.norm();
        if dist == 0.0 {
            break;
        }
        let h_max = MAX_STEP.min(0.5 * zc.norm());
        let t = if dist <= h_max {
            remaining
        } else {
            remaining * (h_max / dist)
        };
        // Scaled coefficients b_n = w_n tⁿ of the expansion around zc.
        let mut b_prev = w;
        let mut b_cur = dw * t;
        let mut value = b_prev + b_cur;
        let mut slope = b_cur;
        let mut abs_sum = b_prev.norm() + b_cur.norm();
        for n in 0..400usize {
            let nf = n as f64;
            let b_next = ((a + nf) * b_prev * t * t - (nf + 1.0) * (nf + cf - zc) * b_cur * t)
                / (zc * ((nf + 1.0) * (nf + 2.0)));
            value += b_next;
            slope += b_next * (nf + 2.0);
            abs_sum += b_next.norm();
            let small = b_next.norm() * (nf + 3.0) + b_cur.norm() * (nf + 2.0);
            b_prev = b_cur;
            b_cur = b_next;
            if n > 2 && small <= EPS * (value.norm() + slope.norm()) {
                break;
            }
        }
        err += 2.0 * EPS * abs_sum / value.norm();
        w = value;
        dw = slope / t;
        zc += t;
        if dist <= h_max {
            break;
        }
    }
    (w, dw, err)
}
