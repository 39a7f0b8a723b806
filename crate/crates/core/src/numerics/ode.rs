//! Adaptive Dormand–Prince 5(4) integration of `ψ'' = (V(r) - λ) ψ` for
//! complex `V` and `λ`.
//!
//! Steps are clipped so that every grid point is hit exactly; no dense output
//! is needed. The solver is the cross-check oracle for all closed forms.

use num_complex::Complex64;

use super::field::ComplexField;
use super::grid::RadialGrid;
use crate::error::{Error, Result};
use crate::potentials::RadialModel;

/// Step-size control parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OdeOptions {
    /// Local relative tolerance.
    pub rtol: f64,
    /// Absolute floor of the error scale.
    pub atol: f64,
    pub max_steps: usize,
}

impl Default for OdeOptions {
    fn default() -> Self {
        Self {
            rtol: 1e-10,
            atol: 1e-300,
            max_steps: 10_000_000,
        }
    }
}

/// Value and derivative at the starting radius.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InitialData {
    pub r0: f64,
    pub value: Complex64,
    pub deriv: Complex64,
}

impl InitialData {
    pub fn new(r0: f64, value: Complex64, deriv: Complex64) -> Self {
        Self { r0, value, deriv }
    }
}

const OVERFLOW: f64 = 1e300;

const C2: f64 = 1.0 / 5.0;
const C3: f64 = 3.0 / 10.0;
const C4: f64 = 4.0 / 5.0;
const C5: f64 = 8.0 / 9.0;
const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const B1: f64 = 35.0 / 384.0;
const B3: f64 = 500.0 / 1113.0;
const B4: f64 = 125.0 / 192.0;
const B5: f64 = -2187.0 / 6784.0;
const B6: f64 = 11.0 / 84.0;
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;

type State = [Complex64; 2];

fn axpy(y: &State, h: f64, terms: &[(f64, &State)]) -> State {
    let mut out = *y;
    for &(c, k) in terms {
        out[0] += k[0] * (h * c);
        out[1] += k[1] * (h * c);
    }
    out
}

/// Integrates the radial equation with the effective potential of `model`.
pub fn integrate_radial(
    model: &RadialModel,
    lambda: Complex64,
    init: InitialData,
    grid: &RadialGrid,
) -> Result<ComplexField> {
    if !(init.r0 > 0.0) {
        return Err(Error::Domain("integration must start at r0 > 0".into()));
    }
    integrate_schrodinger(
        |r| Complex64::new(model.effective_potential_unchecked(r), 0.0),
        lambda,
        init,
        grid,
        OdeOptions::default(),
    )
}

/// Integrates `ψ'' = (V(r) - λ) ψ` outward from `init.r0` across every grid
/// point `r >= r0`. The returned field lives on those grid points and carries
/// the integrated derivative.
pub fn integrate_schrodinger<V>(
    potential: V,
    lambda: Complex64,
    init: InitialData,
    grid: &RadialGrid,
    opts: OdeOptions,
) -> Result<ComplexField>
where
    V: Fn(f64) -> Complex64,
{
    if init.r0 < grid.r_min() || init.r0 > grid.r_max() {
        return Err(Error::Domain(format!(
            "r0 = {} outside the grid [{}, {}]",
            init.r0,
            grid.r_min(),
            grid.r_max()
        )));
    }
    if !init.value.is_finite() || !init.deriv.is_finite() {
        return Err(Error::Domain("initial data must be finite".into()));
    }
    let rhs = |r: f64, y: &State| -> State { [y[1], (potential(r) - lambda) * y[0]] };

    let targets: Vec<f64> = grid
        .points()
        .iter()
        .copied()
        .filter(|&r| r >= init.r0)
        .collect();
    let mut values = Vec::with_capacity(targets.len());
    let mut derivs = Vec::with_capacity(targets.len());

    let mut r = init.r0;
    let mut y: State = [init.value, init.deriv];
    let mut k1 = rhs(r, &y);
    let mut h = 1e-3 * r.max(1e-2);
    let mut steps = 0usize;

    for &target in &targets {
        while r < target {
            if steps >= opts.max_steps {
                return Err(Error::Stiffness { r });
            }
            let remaining = target - r;
            let last = h >= remaining;
            let step = if last { remaining } else { h };
            if step < 1e-14 * r.max(1.0) && !last {
                return Err(Error::Stiffness { r });
            }
            let k2 = rhs(r + C2 * step, &axpy(&y, step, &[(A21, &k1)]));
            let k3 = rhs(r + C3 * step, &axpy(&y, step, &[(A31, &k1), (A32, &k2)]));
            let k4 = rhs(
                r + C4 * step,
                &axpy(&y, step, &[(A41, &k1), (A42, &k2), (A43, &k3)]),
            );
            let k5 = rhs(
                r + C5 * step,
                &axpy(&y, step, &[(A51, &k1), (A52, &k2), (A53, &k3), (A54, &k4)]),
            );
            let k6 = rhs(
                r + step,
                &axpy(
                    &y,
                    step,
                    &[(A61, &k1), (A62, &k2), (A63, &k3), (A64, &k4), (A65, &k5)],
                ),
            );
            let y_new = axpy(
                &y,
                step,
                &[(B1, &k1), (B3, &k3), (B4, &k4), (B5, &k5), (B6, &k6)],
            );
            let r_new = if last { target } else { r + step };
            let k7 = rhs(r_new, &y_new);
            let mut err_sq = 0.0;
            for i in 0..2 {
                let e = (k1[i] * E1 + k3[i] * E3 + k4[i] * E4 + k5[i] * E5 + k6[i] * E6 + k7[i] * E7)
                    * step;
                let scale = opts.atol + opts.rtol * y[i].norm().max(y_new[i].norm());
                err_sq += (e.norm() / scale).powi(2);
            }
            let err = (err_sq / 2.0).sqrt();
            steps += 1;
            if err <= 1.0 {
                r = r_new;
                y = y_new;
                k1 = k7;
                if y[0].norm() > OVERFLOW || y[1].norm() > OVERFLOW || !y[0].is_finite() {
                    let last_r = values.len().checked_sub(1).map_or(init.r0, |i| targets[i]);
                    return Err(Error::Overflow { last_r });
                }
                let factor = if err == 0.0 {
                    5.0
                } else {
                    (0.9 * err.powf(-0.2)).clamp(0.2, 5.0)
                };
                if !last || factor < 1.0 {
                    h = step * factor;
                }
            } else {
                h = step * (0.9 * err.powf(-0.2)).clamp(0.1, 1.0);
            }
        }
        values.push(y[0]);
        derivs.push(y[1]);
    }
    let out_grid = RadialGrid::from_points(targets)?;
    ComplexField::new(out_grid, values, Some(derivs))
}
