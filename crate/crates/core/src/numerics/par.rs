//! Point-wise evaluation over grids.
//!
//! With the `parallel` feature (default) [`map_points`] fans out over rayon's
//! global pool; otherwise it runs sequentially. Results are collected in grid
//! order either way, so output is identical.

use crate::error::Result;

/// Evaluates `f` at every point, sequentially.
pub fn map_points_seq<T, F>(points: &[f64], f: F) -> Result<Vec<T>>
where
    F: Fn(f64) -> Result<T>,
{
    points.iter().map(|&r| f(r)).collect()
}

/// Evaluates `f` at every point on the rayon pool.
#[cfg(feature = "parallel")]
pub fn map_points_par<T, F>(points: &[f64], f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(f64) -> Result<T> + Sync + Send,
{
    use rayon::prelude::*;
    points.par_iter().map(|&r| f(r)).collect()
}

#[cfg(feature = "parallel")]
pub fn map_points<T, F>(points: &[f64], f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(f64) -> Result<T> + Sync + Send,
{
    map_points_par(points, f)
}

#[cfg(not(feature = "parallel"))]
pub fn map_points<T, F>(points: &[f64], f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(f64) -> Result<T> + Sync + Send,
{
    map_points_seq(points, f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    #[test]
    fn preserves_order_and_errors() {
        let pts: Vec<f64> = (0..1000).map(|i| i as f64).collect();
        let out = map_points(&pts, |r| Ok(r * 2.0)).unwrap();
        assert_eq!(out, map_points_seq(&pts, |r| Ok(r * 2.0)).unwrap());
        let err = map_points(&pts, |r| {
            if r == 500.0 {
                Err(Error::Node { r })
            } else {
                Ok(r)
            }
        });
        assert_eq!(err, Err(Error::Node { r: 500.0 }));
    }
}
