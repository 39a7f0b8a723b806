//! Finite-difference derivatives on arbitrary (nonuniform) grids with
//! Fornberg weights, and the Schrödinger residual built from them.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::field::ComplexField;
use super::grid::RadialGrid;
use crate::error::{Error, Result};

/// Width of the centered stencil.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Stencil {
    /// Second order on any grid.
    ThreePoint,
    /// Fourth order on uniform grids, third order on smoothly graded ones.
    #[default]
    FivePoint,
}

impl Stencil {
    fn half_width(self) -> usize {
        match self {
            Stencil::ThreePoint => 1,
            Stencil::FivePoint => 2,
        }
    }
}

/// Points excluded at each end of the grid by every stencil.
pub const BOUNDARY_POINTS: usize = 2;

/// Fornberg's recursion: weights of derivatives `0..=max_order` at `x0` from
/// the nodes `xs`. Row `m` holds the weights of the `m`-th derivative.
pub fn fornberg_weights(x0: f64, xs: &[f64], max_order: usize) -> Vec<Vec<f64>> {
    let n = xs.len();
    let mut c = vec![vec![0.0; n]; max_order + 1];
    c[0][0] = 1.0;
    let mut c1 = 1.0;
    let mut c4 = xs[0] - x0;
    for i in 1..n {
        let mn = i.min(max_order);
        let mut c2 = 1.0;
        let c5 = c4;
        c4 = xs[i] - x0;
        for j in 0..i {
            let c3 = xs[i] - xs[j];
            c2 *= c3;
            if j == i - 1 {
                for k in (1..=mn).rev() {
                    c[k][i] = c1 * (k as f64 * c[k - 1][i - 1] - c5 * c[k][i - 1]) / c2;
                }
                c[0][i] = -c1 * c5 * c[0][i - 1] / c2;
            }
            for k in (1..=mn).rev() {
                c[k][j] = (c4 * c[k][j] - k as f64 * c[k - 1][j]) / c3;
            }
            c[0][j] = c4 * c[0][j] / c3;
        }
        c1 = c2;
    }
    c
}

/// `order`-th derivative (1 or 2) of the sampled values at the interior
/// points, i.e. all but [`BOUNDARY_POINTS`] at each end.
pub fn differentiate(field: &ComplexField, order: usize, stencil: Stencil) -> Result<ComplexField> {
    if !(1..=2).contains(&order) {
        return Err(Error::Domain(format!("unsupported derivative order {order}")));
    }
    let n = field.len();
    if n < 5 {
        return Err(Error::Domain(format!(
            "finite differences need at least 5 points (got {n})"
        )));
    }
    let r = field.points();
    let y = field.values();
    let hw = stencil.half_width();
    let mut out = Vec::with_capacity(n - 2 * BOUNDARY_POINTS);
    for i in BOUNDARY_POINTS..n - BOUNDARY_POINTS {
        let nodes = &r[i - hw..=i + hw];
        let w = fornberg_weights(r[i], nodes, order);
        let d: Complex64 = w[order]
            .iter()
            .zip(&y[i - hw..=i + hw])
            .map(|(wk, yk)| yk * wk)
            .sum();
        out.push(d);
    }
    let grid = RadialGrid::from_points(r[BOUNDARY_POINTS..n - BOUNDARY_POINTS].to_vec())?;
    ComplexField::new(grid, out, None)
}

/// `max_i |−D²ψ + (v − λ)ψ| / max_j |ψ|` over interior points.
pub fn schrodinger_residual<V>(
    field: &ComplexField,
    potential: V,
    lambda: Complex64,
    stencil: Stencil,
) -> Result<f64>
where
    V: Fn(f64) -> Complex64,
{
    let d2 = differentiate(field, 2, stencil)?;
    let (_, scale) = field.max_abs();
    if scale == 0.0 {
        return Err(Error::Degenerate("residual of the zero function".into()));
    }
    let y = &field.values()[BOUNDARY_POINTS..];
    let worst = d2
        .points()
        .iter()
        .zip(d2.values())
        .zip(y)
        .map(|((&r, d), psi)| (-d + (potential(r) - lambda) * psi).norm())
        .fold(0.0, f64::max);
    Ok(worst / scale)
}
