use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// How grid points are laid out.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GridScheme {
    /// Geometric progression from `r_min` up to 1 r_B, uniform beyond. The
    /// geometric ratio is chosen so the spacing is continuous at the junction.
    GeometricThenUniform,
    Uniform,
    /// Arbitrary strictly increasing points.
    Custom,
}

/// Strictly increasing sample points `r > 0` (Bohr radii).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RadialGrid {
    points: Vec<f64>,
    scheme: GridScheme,
}

const JUNCTION: f64 = 1.0;

impl RadialGrid {
    pub const DEFAULT_R_MIN: f64 = 1e-3;
    pub const DEFAULT_R_MAX: f64 = 40.0;
    pub const DEFAULT_N_POINTS: usize = 4000;

    pub fn geometric_then_uniform(r_min: f64, r_max: f64, n_points: usize) -> Result<Self> {
        check_bounds(r_min, r_max, n_points)?;
        if r_min >= JUNCTION || r_max <= 2.0 * JUNCTION {
            let mut g = Self::uniform(r_min, r_max, n_points)?;
            g.scheme = GridScheme::GeometricThenUniform;
            return Ok(g);
        }
        let intervals = n_points - 1;
        let log_span = (JUNCTION / r_min).ln();
        // Fixed point for the number of geometric intervals.
        let mut n_geo = (intervals / 5).max(1);
        for _ in 0..50 {
            let n_uni = intervals.saturating_sub(n_geo).max(1);
            let h = (r_max - JUNCTION) / n_uni as f64;
            let next = ((log_span / (h / JUNCTION).ln_1p()).round() as usize)
                .clamp(1, intervals.saturating_sub(1).max(1));
            if next == n_geo {
                break;
            }
            n_geo = next;
        }
        let n_uni = intervals - n_geo;
        if n_uni == 0 {
            return Self::uniform(r_min, r_max, n_points);
        }
        let mut points = Vec::with_capacity(n_points);
        for i in 0..n_geo {
            points.push(r_min * (log_span * i as f64 / n_geo as f64).exp());
        }
        let h = (r_max - JUNCTION) / n_uni as f64;
        for j in 0..n_uni {
            points.push(JUNCTION + h * j as f64);
        }
        points.push(r_max);
        Ok(Self {
            points,
            scheme: GridScheme::GeometricThenUniform,
        })
    }

    pub fn uniform(r_min: f64, r_max: f64, n_points: usize) -> Result<Self> {
        check_bounds(r_min, r_max, n_points)?;
        let h = (r_max - r_min) / (n_points - 1) as f64;
        let mut points: Vec<f64> = (0..n_points - 1).map(|i| r_min + h * i as f64).collect();
        points.push(r_max);
        Ok(Self {
            points,
            scheme: GridScheme::Uniform,
        })
    }

    pub fn from_points(points: Vec<f64>) -> Result<Self> {
        if points.len() < 2 {
            return Err(Error::Domain("a grid needs at least two points".into()));
        }
        if !(points[0] > 0.0) || points.iter().any(|r| !r.is_finite()) {
            return Err(Error::Domain("grid points must be finite and positive".into()));
        }
        if points.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::Domain("grid points must be strictly increasing".into()));
        }
        Ok(Self {
            points,
            scheme: GridScheme::Custom,
        })
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn scheme(&self) -> GridScheme {
        self.scheme
    }

    pub fn r_min(&self) -> f64 {
        self.points[0]
    }

    pub fn r_max(&self) -> f64 {
        *self.points.last().unwrap()
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Index of the point minimising `|r_i - r|`.
    pub fn nearest_index(&self, r: f64) -> usize {
        let i = self.points.partition_point(|&p| p < r);
        if i == 0 {
            0
        } else if i == self.points.len() {
            i - 1
        } else if (self.points[i] - r).abs() < (r - self.points[i - 1]).abs() {
            i
        } else {
            i - 1
        }
    }

    /// Same layout with every interval bisected.
    pub fn refined(&self) -> Self {
        let mut points = Vec::with_capacity(2 * self.points.len() - 1);
        for w in self.points.windows(2) {
            points.push(w[0]);
            points.push(0.5 * (w[0] + w[1]));
        }
        points.push(self.r_max());
        Self {
            points,
            scheme: self.scheme,
        }
    }

    /// Points within `[lo, hi]`, as a custom grid.
    pub fn restricted(&self, lo: f64, hi: f64) -> Result<Self> {
        let pts: Vec<f64> = self
            .points
            .iter()
            .copied()
            .filter(|&r| r >= lo && r <= hi)
            .collect();
        let mut g = Self::from_points(pts)?;
        g.scheme = self.scheme;
        Ok(g)
    }
}

impl Default for RadialGrid {
    fn default() -> Self {
        Self::geometric_then_uniform(
            Self::DEFAULT_R_MIN,
            Self::DEFAULT_R_MAX,
            Self::DEFAULT_N_POINTS,
        )
        .expect("default grid parameters are valid")
    }
}

fn check_bounds(r_min: f64, r_max: f64, n_points: usize) -> Result<()> {
    if !(r_min > 0.0) || !r_max.is_finite() || r_max <= r_min {
        return Err(Error::Domain(format!(
            "grid bounds must satisfy 0 < r_min < r_max (got {r_min}, {r_max})"
        )));
    }
    if n_points < 5 {
        return Err(Error::Domain("a grid needs at least five points".into()));
    }
    Ok(())
}
