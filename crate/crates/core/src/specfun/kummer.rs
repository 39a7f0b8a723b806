use std::f64::consts::PI;

use num_complex::Complex64;

use super::dd::{CDd, Dd, DD_EPS};
use super::gamma::{is_nonpositive_integer, rgamma};
use super::tricomi::walk;
use super::{check_params, factorial, Evaluation, ACCURACY_THRESHOLD, M_SERIES_RADIUS};
use crate::error::{Error, Result};

const EPS: f64 = f64::EPSILON;
const MAX_TERMS: usize = 4000;

/// Raw Taylor series of `M(a,c,z)` with no argument transformation.
///
/// The error estimate is the rounding bound `2ε Σ|term| / |Σ term|` plus the
/// size of the last term retained. Terminating (polynomial) series are exact
/// up to rounding and report the rounding bound only.
pub fn kummer_series(a: Complex64, c: u32, z: Complex64) -> Evaluation {
    let c = c as f64;
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    let mut abs_sum = 1.0;
    let mut last = 0.0;
    for n in 0..MAX_TERMS {
        let nf = n as f64;
        let ratio = (a + nf) * z / ((c + nf) * (nf + 1.0));
        term *= ratio;
        if term == Complex64::new(0.0, 0.0) {
            last = 0.0;
            break;
        }
        sum += term;
        let t = term.norm();
        abs_sum += t;
        last = t;
        if t <= EPS * sum.norm() && ratio.norm() < 1.0 {
            break;
        }
    }
    let scale = sum.norm();
    let rel_error = if scale == 0.0 {
        f64::INFINITY
    } else {
        (2.0 * EPS * abs_sum + last) / scale
    };
    Evaluation {
        value: sum,
        rel_error,
    }
}

/// [`kummer_series`] carried out in double-double arithmetic, for arguments
/// whose terms cancel by more than double precision can absorb.
pub fn kummer_series_extended(a: Complex64, c: u32, z: Complex64) -> Evaluation {
    let c = c as f64;
    let zz = CDd::from_c(z);
    let mut term = CDd::from_c(Complex64::new(1.0, 0.0));
    let mut sum = term;
    let mut abs_sum = 1.0;
    let mut last = 0.0;
    let mut n_terms = 1.0f64;
    for n in 0..MAX_TERMS {
        let nf = n as f64;
        let an = CDd {
            re: Dd::sum_f64(a.re, nf),
            im: Dd::from_f64(a.im),
        };
        term = term.mul(an).mul(zz).div_f64((c + nf) * (nf + 1.0));
        let t = term.norm();
        if t == 0.0 {
            last = 0.0;
            break;
        }
        sum = sum.add(term);
        abs_sum += t;
        last = t;
        n_terms += 1.0;
        let ratio = (a + nf) * z / ((c + nf) * (nf + 1.0));
        if t <= DD_EPS * sum.norm() && ratio.norm() < 1.0 {
            break;
        }
    }
    let value = sum.to_c();
    let scale = value.norm();
    let rel_error = if scale == 0.0 {
        f64::INFINITY
    } else {
        (8.0 * n_terms.sqrt() * DD_EPS * abs_sum + last) / scale + EPS
    };
    Evaluation { value, rel_error }
}

/// Above this estimated relative error the double series is redone in
/// double-double.
const EXTEND_ABOVE: f64 = 1e-14;

/// Radius from which [`kummer_continued`] starts its walk.
const CONTINUATION_START: f64 = 20.0;

/// `M(a,c,z)` for `Re z >= 0` by continuing Kummer's equation outward along
/// the ray through `z`, from the resummed series at `|z| = 20`. Outward
/// along such rays `M` is dominant or, on the imaginary axis, of the same
/// algebraic size as every other solution, so the walk is stable.
fn kummer_continued(a: Complex64, c: u32, z: Complex64) -> Evaluation {
    let start = z * (CONTINUATION_START / z.norm());
    let m = kummer_series_extended(a, c, start);
    let dm = kummer_series_extended(a + 1.0, c + 1, start);
    let init = (m.value, a / c as f64 * dm.value, m.rel_error.max(dm.rel_error));
    let (value, _, rel_error) = walk(a, c, start, init, z);
    Evaluation { value, rel_error }
}

fn optimally_truncated(mut next: impl FnMut(usize, Complex64) -> Complex64) -> (Complex64, f64) {
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    let mut prev = 1.0;
    for s in 0..200 {
        let candidate = next(s, term);
        let t = candidate.norm();
        if t == 0.0 {
            return (sum, 0.0);
        }
        if t > prev {
            return (sum, prev);
        }
        term = candidate;
        sum += term;
        prev = t;
        if t <= EPS * sum.norm() {
            return (sum, t);
        }
    }
    (sum, prev)
}

/// Large-`|z|` expansion of `M(a,c,z)` (sum of the algebraic and the
/// exponential branch, each optimally truncated).
pub fn kummer_asymptotic(a: Complex64, c: u32, z: Complex64) -> Evaluation {
    let cf = c as f64;
    let i = Complex64::new(0.0, 1.0);
    let sign = if z.im >= 0.0 { 1.0 } else { -1.0 };
    let ln_z = z.ln();
    let gamma_c = factorial(c - 1);

    let r1 = rgamma(cf - a);
    let (first, err1) = if r1 == Complex64::new(0.0, 0.0) {
        (Complex64::new(0.0, 0.0), 0.0)
    } else {
        let (s1, e1) = optimally_truncated(|s, t| {
            let sf = s as f64;
            t * (a + sf) * (a - cf + 1.0 + sf) / ((sf + 1.0) * -z)
        });
        let pref = (sign * PI * i * a).exp() * (-a * ln_z).exp() * r1;
        (pref * s1, pref.norm() * (e1 + EPS * s1.norm()))
    };

    let r2 = rgamma(a);
    let (second, err2) = if r2 == Complex64::new(0.0, 0.0) {
        (Complex64::new(0.0, 0.0), 0.0)
    } else {
        let (s2, e2) = optimally_truncated(|s, t| {
            let sf = s as f64;
            t * (1.0 - a + sf) * (cf - a + sf) / ((sf + 1.0) * z)
        });
        let pref = (z + (a - cf) * ln_z).exp() * r2;
        (pref * s2, pref.norm() * (e2 + EPS * s2.norm()))
    };

    let value = (first + second) * gamma_c;
    let rel_error = gamma_c * (err1 + err2) / value.norm() + 4.0 * EPS;
    Evaluation { value, rel_error }
}

/// `M(a,c,z)` by the production route, with its relative error estimate.
pub fn kummer_m_value(a: Complex64, c: u32, z: Complex64) -> Result<Evaluation> {
    check_params(a, c, z)?;
    let eval = if is_nonpositive_integer(a) {
        return finish(kummer_series(a, c, z), true);
    } else if z.re < 0.0 {
        let inner = kummer_m_inner(c as f64 - a, c, -z);
        Evaluation {
            value: z.exp() * inner.value,
            rel_error: inner.rel_error + 2.0 * EPS,
        }
    } else {
        kummer_m_inner(a, c, z)
    };
    finish(eval, false)
}

fn kummer_m_inner(a: Complex64, c: u32, z: Complex64) -> Evaluation {
    if is_nonpositive_integer(a) {
        kummer_series(a, c, z)
    } else if z.norm() <= M_SERIES_RADIUS {
        let plain = kummer_series(a, c, z);
        if plain.rel_error > EXTEND_ABOVE {
            let extended = kummer_series_extended(a, c, z);
            if extended.rel_error < plain.rel_error {
                return extended;
            }
        }
        plain
    } else {
        // The expansion needs |z| well beyond |a| and c; otherwise fall back
        // on the resummed series.
        let mut best = kummer_asymptotic(a, c, z);
        if best.rel_error > EXTEND_ABOVE {
            for alternative in [kummer_series_extended, kummer_continued] {
                let e = alternative(a, c, z);
                if e.rel_error < best.rel_error {
                    best = e;
                }
                if best.rel_error <= EXTEND_ABOVE {
                    break;
                }
            }
        }
        best
    }
}

fn finish(eval: Evaluation, exact_terms: bool) -> Result<Evaluation> {
    if !eval.value.is_finite() {
        return Err(Error::Range(format!(
            "M overflows (value {})",
            eval.value
        )));
    }
    if !exact_terms && eval.rel_error > ACCURACY_THRESHOLD {
        return Err(Error::Accuracy {
            estimate: eval.rel_error,
        });
    }
    Ok(eval)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::{kummer_m, HypParams};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn rel(a: Complex64, b: Complex64) -> f64 {
        (a - b).norm() / b.norm()
    }

    #[test]
    fn value_at_origin() {
        let vd = kummer_m(HypParams::new(c(3.2, 0.1), 4, c(0.0, 0.0))).unwrap();
        assert_eq!(vd.value, c(1.0, 0.0));
        assert!((vd.deriv - c(0.8, 0.025)).norm() < 1e-15);
    }

    #[test]
    fn exponential_identity() {
        let vd = kummer_m(HypParams::new(c(1.0, 0.0), 1, c(0.5, 0.0))).unwrap();
        let e = 0.5f64.exp();
        assert!((vd.value.re - e).abs() < 1e-15 && vd.value.im == 0.0);
        assert!((vd.deriv.re - e).abs() < 1e-15);
        assert!((e - 1.648_721_270_7).abs() < 1e-10);
    }

    #[test]
    fn laguerre_polynomial() {
        // M(-2, 2, x) = 1 - x + x²/6
        let x = c(1.7, -0.4);
        let m = kummer_m_value(c(-2.0, 0.0), 2, x).unwrap().value;
        assert!(rel(m, 1.0 - x + x * x / 6.0) < 1e-15);
    }

    #[test]
    fn series_and_asymptotic_overlap() {
        let a = c(0.146, -0.357);
        for &z in &[c(35.0, -6.0), c(38.0, 2.0), c(39.5, 0.0)] {
            let s = kummer_series(a, 4, z);
            let asy = kummer_asymptotic(a, 4, z);
            assert!(rel(s.value, asy.value) < 10.0 * asy.rel_error, "z={z}");
        }
    }

    #[test]
    fn cancellation_is_reported() {
        // Pure imaginary argument of large modulus: the series cancels heavily.
        let e = kummer_series(c(0.3, 0.2), 1, c(0.0, 60.0));
        assert!(e.rel_error > ACCURACY_THRESHOLD);
    }

    #[test]
    fn extended_series_recovers_cancellation() {
        // Terms reach ~1e7 while M is O(1e-2).
        let (a, z) = (c(14.114, 3.064), c(0.2416, 19.01));
        let plain = kummer_series(a, 5, z);
        let ext = kummer_series_extended(a, 5, z);
        assert!(plain.rel_error > 1e-8);
        assert!(ext.rel_error < 1e-14);
        assert!(rel(plain.value, ext.value) < 10.0 * plain.rel_error);
        // Production route and the transformation identity now agree.
        let m = kummer_m(HypParams::new(c(-9.114, -3.064), 5, -z)).unwrap().value;
        assert!(rel(m, (-z).exp() * ext.value) < 1e-13);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(
            kummer_m_value(c(f64::NAN, 0.0), 2, c(1.0, 0.0)),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            kummer_m_value(c(1.0, 0.0), 0, c(1.0, 0.0)),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            kummer_m_value(c(1.5, 0.0), 2, c(800.0, 0.0)),
            Err(Error::Range(_))
        ));
    }
}
