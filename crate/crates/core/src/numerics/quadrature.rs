//! Quadrature of sampled fields over `[0, ∞)`.
//!
//! Composite Simpson on the grid itself, closed at the origin by a power-law
//! fit `C r^p` through the first samples and at infinity by an exponential
//! fit on the last 20% of the grid. A power `p <= -1` or a tail that does not
//! decay sets the `divergent` flag instead of failing.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::field::ComplexField;
use crate::error::{Error, Result};

/// Fraction of the grid used for the exponential tail fit.
pub const TAIL_WINDOW: f64 = 0.2;

#[derive(Debug, Clone, Copy)]
pub enum Integrand<'a> {
    /// `|ψ|²`.
    ModulusSquared,
    /// `conj(ψ)·φ` for the given `φ` on the same grid.
    ProductWith(&'a ComplexField),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureResult {
    pub value: Complex64,
    /// Halving estimate of the grid rule plus the uncertainty of both closures.
    pub error_estimate: f64,
    pub divergent: bool,
    /// Contribution of `[0, r_min]`.
    pub head: Complex64,
    /// Contribution of `[r_max, ∞)`.
    pub tail: Complex64,
    /// Fitted power of the integrand at the origin.
    pub head_power: f64,
    /// Fitted decay rate of `|integrand|` at the tail.
    pub tail_rate: f64,
}

impl QuadratureResult {
    pub fn relative_error(&self) -> f64 {
        self.error_estimate / self.value.norm()
    }
}

fn samples(field: &ComplexField, integrand: Integrand<'_>) -> Result<Vec<Complex64>> {
    match integrand {
        Integrand::ModulusSquared => Ok(field
            .values()
            .iter()
            .map(|v| Complex64::new(v.norm_sqr(), 0.0))
            .collect()),
        Integrand::ProductWith(other) => {
            if other.points() != field.points() {
                return Err(Error::Domain("inner product of fields on different grids".into()));
            }
            Ok(field
                .values()
                .iter()
                .zip(other.values())
                .map(|(a, b)| a.conj() * b)
                .collect())
        }
    }
}

/// Composite trapezoid rule on arbitrary nodes.
pub fn trapezoid(r: &[f64], y: &[Complex64]) -> Complex64 {
    r.windows(2)
        .zip(y.windows(2))
        .map(|(x, f)| (f[0] + f[1]) * (0.5 * (x[1] - x[0])))
        .sum()
}

/// Composite Simpson rule on arbitrary nodes. With an odd number of
/// intervals the last one is integrated through the quadratic on the last
/// three nodes.
pub fn simpson(r: &[f64], y: &[Complex64]) -> Complex64 {
    let n = r.len();
    if n < 3 {
        return trapezoid(r, y);
    }
    let intervals = n - 1;
    let paired = intervals - intervals % 2;
    let mut sum = Complex64::new(0.0, 0.0);
    for i in (0..paired).step_by(2) {
        let h0 = r[i + 1] - r[i];
        let h1 = r[i + 2] - r[i + 1];
        let hs = h0 + h1;
        sum += (y[i] * (2.0 - h1 / h0) + y[i + 1] * (hs * hs / (h0 * h1)) + y[i + 2] * (2.0 - h0 / h1))
            * (hs / 6.0);
    }
    if paired < intervals {
        let h0 = r[n - 2] - r[n - 3];
        let h1 = r[n - 1] - r[n - 2];
        let w0 = -h1 * h1 * h1 / (6.0 * h0 * (h0 + h1));
        let w1 = h1 * (h1 + 3.0 * h0) / (6.0 * h0);
        let w2 = h1 * (2.0 * h1 + 3.0 * h0) / (6.0 * (h0 + h1));
        sum += y[n - 3] * w0 + y[n - 2] * w1 + y[n - 1] * w2;
    }
    sum
}

fn every_other<T: Copy>(xs: &[T]) -> Vec<T> {
    let mut out: Vec<T> = xs.iter().step_by(2).copied().collect();
    if xs.len() % 2 == 0 {
        out.push(xs[xs.len() - 1]);
    }
    out
}

struct Closure {
    value: Complex64,
    error: f64,
    divergent: bool,
    rate: f64,
}

/// `∫_0^{r_0}` of a power law fitted through the first samples. Powers close
/// to an integer `m` are snapped and refined to `r^m (c₀ + c₁ r)`, which is
/// exact for the analytic integrands met in practice.
fn head_closure(r: &[f64], y: &[Complex64]) -> Closure {
    let zero = Closure {
        value: Complex64::new(0.0, 0.0),
        error: 0.0,
        divergent: false,
        rate: f64::INFINITY,
    };
    if y[0].norm() == 0.0 || y[1].norm() == 0.0 {
        return zero;
    }
    let p = (y[1].norm() / y[0].norm()).ln() / (r[1] / r[0]).ln();
    let m = p.round();
    let snapped = (p - m).abs() < 0.1;
    let lead = if snapped { m } else { p };
    if !p.is_finite() || lead <= -1.0 {
        return Closure {
            value: Complex64::new(f64::INFINITY, 0.0),
            error: f64::INFINITY,
            divergent: true,
            rate: p,
        };
    }
    let plain = y[0] * (r[0] / (lead + 1.0));
    if !snapped {
        return Closure {
            value: plain,
            error: plain.norm() * (p - lead).abs().max(f64::EPSILON),
            divergent: false,
            rate: p,
        };
    }
    // y_i / r_i^m = c0 + c1 r_i through the first two samples
    let q0 = y[0] / r[0].powf(m);
    let q1 = y[1] / r[1].powf(m);
    let c1 = (q1 - q0) / (r[1] - r[0]);
    let c0 = q0 - c1 * r[0];
    let value = c0 * (r[0].powf(m + 1.0) / (m + 1.0)) + c1 * (r[0].powf(m + 2.0) / (m + 2.0));
    Closure {
        value,
        error: (value - plain).norm() * r[0] + f64::EPSILON * value.norm(),
        divergent: false,
        rate: m,
    }
}

/// `∫_{r_max}^∞` of `y(r_max) e^{-σ(r - r_max)}` with `σ` the least-squares
/// decay rate of `ln|y|` over the tail window.
fn tail_closure(r: &[f64], y: &[Complex64]) -> Closure {
    let n = r.len();
    let start = n - ((n as f64 * TAIL_WINDOW).ceil() as usize).clamp(3, n);
    let pts: Vec<(f64, f64)> = (start..n)
        .filter(|&i| y[i].norm() > 0.0)
        .map(|i| (r[i], y[i].norm().ln()))
        .collect();
    let last = y[n - 1];
    if pts.len() < 3 {
        // identically zero tail
        return Closure {
            value: Complex64::new(0.0, 0.0),
            error: 0.0,
            divergent: false,
            rate: f64::INFINITY,
        };
    }
    let m = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / m;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / m;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sigma = -sxy / sxx;
    // a decay too slow for its e-folding length to fit in the window is not
    // a decaying tail at this grid extent
    let window = r[n - 1] - r[start];
    if !(sigma > 0.0) || sigma * window < 1.0 {
        return Closure {
            value: Complex64::new(f64::INFINITY, 0.0),
            error: f64::INFINITY,
            divergent: true,
            rate: sigma,
        };
    }
    let value = last / sigma;
    // local decay from the last two samples brackets the fitted one
    let local = (y[n - 2].norm() / last.norm()).ln() / (r[n - 1] - r[n - 2]);
    let error = if local.is_finite() && local > 0.0 {
        value.norm() * ((sigma - local).abs() / local).max(f64::EPSILON)
    } else {
        value.norm()
    };
    Closure {
        value,
        error,
        divergent: false,
        rate: sigma,
    }
}

/// `∫_0^∞` of the chosen integrand of `field`.
pub fn quadrature(field: &ComplexField, integrand: Integrand<'_>) -> Result<QuadratureResult> {
    if field.len() < 5 {
        return Err(Error::Domain("quadrature needs at least 5 points".into()));
    }
    let y = samples(field, integrand)?;
    let r = field.points();
    let fine = simpson(r, &y);
    let coarse = simpson(&every_other(r), &every_other(&y));
    let head = head_closure(r, &y);
    let tail = tail_closure(r, &y);
    let divergent = head.divergent || tail.divergent;
    let value = if divergent {
        Complex64::new(f64::INFINITY, 0.0)
    } else {
        head.value + fine + tail.value
    };
    let error_estimate = if divergent {
        f64::INFINITY
    } else {
        (fine - coarse).norm() / 15.0 + head.error + tail.error + 4.0 * f64::EPSILON * fine.norm()
    };
    Ok(QuadratureResult {
        value,
        error_estimate,
        divergent,
        head: head.value,
        tail: tail.value,
        head_power: head.rate,
        tail_rate: tail.rate,
    })
}

/// Same closures as [`quadrature`] around the composite trapezoid rule.
pub fn trapezoid_quadrature(field: &ComplexField, integrand: Integrand<'_>) -> Result<QuadratureResult> {
    let mut res = quadrature(field, integrand)?;
    if !res.divergent {
        let y = samples(field, integrand)?;
        let r = field.points();
        let fine = trapezoid(r, &y);
        let coarse = trapezoid(&every_other(r), &every_other(&y));
        res.value = res.head + fine + res.tail;
        res.error_estimate = (fine - coarse).norm() / 3.0;
    }
    Ok(res)
}

/// `⟨f, g⟩ = ∫ conj(f) g dr`.
pub fn inner_product(f: &ComplexField, g: &ComplexField) -> Result<QuadratureResult> {
    quadrature(f, Integrand::ProductWith(g))
}

/// `n`-point Gauss–Legendre nodes and weights on `[-1, 1]`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

/// Composite Gauss–Legendre quadrature of `f` over the panels delimited by
/// `breaks`.
pub fn gauss_legendre_panels<F>(f: F, breaks: &[f64], order: usize) -> Result<Complex64>
where
    F: Fn(f64) -> Result<Complex64>,
{
    let (x, w) = gauss_legendre(order);
    let mut sum = Complex64::new(0.0, 0.0);
    for b in breaks.windows(2) {
        let half = 0.5 * (b[1] - b[0]);
        let mid = 0.5 * (b[1] + b[0]);
        for (xi, wi) in x.iter().zip(&w) {
            sum += f(mid + half * xi)? * (wi * half);
        }
    }
    Ok(sum)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::RadialGrid;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn exponential_on_default_grid() {
        let g = RadialGrid::default();
        let f = ComplexField::sample_values(&g, |r| Ok(c((-r).exp(), 0.0))).unwrap();
        let q = quadrature(&f, Integrand::ModulusSquared).unwrap();
        assert!(!q.divergent);
        assert!((q.value.re - 0.5).abs() < 1e-7, "{}", q.value);
        assert!((q.tail_rate - 2.0).abs() < 1e-6);
    }

    #[test]
    fn hydrogen_ground_state_norm() {
        let g = RadialGrid::default();
        let f = ComplexField::sample_values(&g, |r| Ok(c(2.0 * r * (-r).exp(), 0.0))).unwrap();
        let q = quadrature(&f, Integrand::ModulusSquared).unwrap();
        assert!((q.value.re - 1.0).abs() < 1e-6);
        assert!((q.head_power - 2.0).abs() < 1e-2);
    }

    #[test]
    fn origin_divergence_is_flagged() {
        let g = RadialGrid::default();
        let f = ComplexField::sample_values(&g, |r| Ok(c(r.powi(-2), 0.0))).unwrap();
        let q = quadrature(&f, Integrand::ModulusSquared).unwrap();
        assert!(q.divergent && q.head_power <= -1.0);
    }

    #[test]
    fn growing_tail_is_flagged() {
        let g = RadialGrid::uniform(0.1, 20.0, 200).unwrap();
        let f = ComplexField::sample_values(&g, |r| Ok(c(0.0, r.sqrt()))).unwrap();
        assert!(quadrature(&f, Integrand::ModulusSquared).unwrap().divergent);
    }

    #[test]
    fn simpson_is_exact_for_cubics_on_odd_interval_counts() {
        let r = [0.1, 0.3, 0.35, 0.8, 1.0, 1.7];
        let y: Vec<Complex64> = r.iter().map(|&x| c(x * x, 0.0)).collect();
        let exact = (1.7f64.powi(3) - 0.001) / 3.0;
        assert!((simpson(&r, &y).re - exact).abs() < 1e-14);
    }

    #[test]
    fn gauss_legendre_integrates_polynomials() {
        let (x, w) = gauss_legendre(10);
        let s: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(18)).sum();
        assert!((s - 2.0 / 19.0).abs() < 1e-14);
        let v = gauss_legendre_panels(|r| Ok(c((-r).exp(), 0.0)), &[0.0, 1.0, 3.0], 20).unwrap();
        assert!((v.re - (1.0 - (-3.0f64).exp())).abs() < 1e-14);
    }

    #[test]
    fn inner_product_is_sesquilinear() {
        let g = RadialGrid::default();
        let f = ComplexField::sample_values(&g, |r| Ok(c(0.0, r * (-r).exp()))).unwrap();
        let h = ComplexField::sample_values(&g, |r| Ok(c(r * (-r).exp(), 0.0))).unwrap();
        // <i φ, φ> = -i ∫ r² e^{-2r} = -i/4
        let q = inner_product(&f, &h).unwrap();
        assert!((q.value - c(0.0, -0.25)).norm() < 1e-7);
        let other = RadialGrid::uniform(0.1, 5.0, 50).unwrap();
        let k = ComplexField::sample_values(&other, |r| Ok(c(r, 0.0))).unwrap();
        assert!(inner_product(&f, &k).is_err());
    }
}
