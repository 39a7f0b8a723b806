use num_complex::Complex64;

use super::grid::RadialGrid;
use super::par::map_points;
use crate::error::{Error, Result};
use crate::specfun::ValueDeriv;

/// A complex function of `r` sampled on a grid, optionally with its analytic
/// first derivative.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexField {
    grid: RadialGrid,
    values: Vec<Complex64>,
    deriv: Option<Vec<Complex64>>,
}

impl ComplexField {
    pub fn new(
        grid: RadialGrid,
        values: Vec<Complex64>,
        deriv: Option<Vec<Complex64>>,
    ) -> Result<Self> {
        if values.len() != grid.len() || deriv.as_ref().is_some_and(|d| d.len() != grid.len()) {
            return Err(Error::Domain("field length does not match its grid".into()));
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::Range(format!(
                "non-finite field value at r = {}",
                grid.points()[i]
            )));
        }
        Ok(Self {
            grid,
            values,
            deriv,
        })
    }

    /// Samples a function and its derivative.
    pub fn sample<F>(grid: &RadialGrid, f: F) -> Result<Self>
    where
        F: Fn(f64) -> Result<ValueDeriv> + Sync + Send,
    {
        let vd = map_points(grid.points(), f)?;
        let values = vd.iter().map(|p| p.value).collect();
        let deriv = vd.iter().map(|p| p.deriv).collect();
        Self::new(grid.clone(), values, Some(deriv))
    }

    /// Samples a function without derivative information.
    pub fn sample_values<F>(grid: &RadialGrid, f: F) -> Result<Self>
    where
        F: Fn(f64) -> Result<Complex64> + Sync + Send,
    {
        let values = map_points(grid.points(), f)?;
        Self::new(grid.clone(), values, None)
    }

    pub fn grid(&self) -> &RadialGrid {
        &self.grid
    }

    pub fn points(&self) -> &[f64] {
        self.grid.points()
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn deriv(&self) -> Option<&[Complex64]> {
        self.deriv.as_deref()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Largest modulus and the index where it occurs.
    pub fn max_abs(&self) -> (usize, f64) {
        self.values
            .iter()
            .enumerate()
            .map(|(i, v)| (i, v.norm()))
            .fold((0, 0.0), |best, cur| if cur.1 > best.1 { cur } else { best })
    }

    /// The field multiplied by a constant.
    pub fn scaled(&self, factor: Complex64) -> Self {
        Self {
            grid: self.grid.clone(),
            values: self.values.iter().map(|v| v * factor).collect(),
            deriv: self
                .deriv
                .as_ref()
                .map(|d| d.iter().map(|v| v * factor).collect()),
        }
    }

    /// The part of the field with `lo <= r <= hi`.
    pub fn restricted(&self, lo: f64, hi: f64) -> Result<Self> {
        let keep: Vec<usize> = (0..self.len())
            .filter(|&i| {
                let r = self.points()[i];
                r >= lo && r <= hi
            })
            .collect();
        let grid = self.grid.restricted(lo, hi)?;
        let values = keep.iter().map(|&i| self.values[i]).collect();
        let deriv = self
            .deriv
            .as_ref()
            .map(|d| keep.iter().map(|&i| d[i]).collect());
        Self::new(grid, values, deriv)
    }
}
