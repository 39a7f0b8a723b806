//! Effective radial potentials `V_ℓ(r) = ℓ(ℓ+1)/r² + V(r)` and the
//! hydrogen-like bound states of the Coulomb case `V(r) = -2/r`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::{ComplexField, RadialGrid};
use crate::specfun::{kummer_m, HypParams, ValueDeriv};

/// Coupling of the Coulomb potential `coupling / r` in units of `Ze²/2r_B`.
pub const COULOMB_COUPLING: f64 = -2.0;

/// A tabulated potential, linearly interpolated between samples and held
/// constant outside the table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PotentialTable {
    r: Vec<f64>,
    v: Vec<f64>,
}

impl PotentialTable {
    pub fn new(r: Vec<f64>, v: Vec<f64>) -> Result<Self> {
        if r.len() != v.len() || r.len() < 2 {
            return Err(Error::Domain(
                "a potential table needs at least two (r, V) pairs".into(),
            ));
        }
        if r.windows(2).any(|w| w[1] <= w[0]) || v.iter().any(|x| !x.is_finite()) {
            return Err(Error::Domain(
                "table radii must increase strictly and values be finite".into(),
            ));
        }
        Ok(Self { r, v })
    }

    pub fn eval(&self, r: f64) -> f64 {
        let i = self.r.partition_point(|&x| x < r);
        if i == 0 {
            self.v[0]
        } else if i == self.r.len() {
            self.v[i - 1]
        } else {
            let t = (r - self.r[i - 1]) / (self.r[i] - self.r[i - 1]);
            self.v[i - 1] + t * (self.v[i] - self.v[i - 1])
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Potential {
    /// `coupling / r`.
    Coulomb { coupling: f64 },
    CustomTabulated(PotentialTable),
}

/// The radial problem `H_ℓ = -d²/dr² + V_ℓ(r)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RadialModel {
    pub ell: u32,
    pub potential: Potential,
}

impl RadialModel {
    /// Coulomb problem with the fixed coupling `-2`.
    pub fn coulomb(ell: u32) -> Self {
        Self {
            ell,
            potential: Potential::Coulomb {
                coupling: COULOMB_COUPLING,
            },
        }
    }

    pub fn tabulated(ell: u32, table: PotentialTable) -> Self {
        Self {
            ell,
            potential: Potential::CustomTabulated(table),
        }
    }

    /// Same potential with a different angular momentum.
    pub fn with_ell(&self, ell: u32) -> Self {
        Self {
            ell,
            potential: self.potential.clone(),
        }
    }

    pub fn is_reference_coulomb(&self) -> bool {
        matches!(self.potential, Potential::Coulomb { coupling } if coupling == COULOMB_COUPLING)
    }

    /// `V(r)` without the centrifugal term.
    pub fn bare_potential(&self, r: f64) -> f64 {
        match &self.potential {
            Potential::Coulomb { coupling } => coupling / r,
            Potential::CustomTabulated(t) => t.eval(r),
        }
    }

    /// `ℓ(ℓ+1)/r² + V(r)`.
    pub fn effective_potential(&self, r: f64) -> Result<f64> {
        if !(r > 0.0) || !r.is_finite() {
            return Err(Error::Domain(format!("effective potential needs r > 0 (got {r})")));
        }
        Ok(self.effective_potential_unchecked(r))
    }

    pub(crate) fn effective_potential_unchecked(&self, r: f64) -> f64 {
        let l = self.ell as f64;
        l * (l + 1.0) / (r * r) + self.bare_potential(r)
    }
}

/// Effective Coulomb potential for a (possibly shifted) angular momentum
/// `ℓ' = ell`, evaluated with `ℓ'(ℓ'+1)`; `ell = -1` gives the bare `-2/r`.
pub fn coulomb_effective(ell: i64, r: f64) -> f64 {
    let l = ell as f64;
    l * (l + 1.0) / (r * r) + COULOMB_COUPLING / r
}

/// Closed form of the normalized hydrogen-like state `(n, ℓ)`:
/// `ψ(r) = N r^{ℓ+1} e^{-r/n} M(ℓ+1-n, 2ℓ+2, 2r/n)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HydrogenState {
    pub n: u32,
    pub ell: u32,
    norm_const: f64,
}

impl HydrogenState {
    pub fn new(n: u32, ell: u32) -> Result<Self> {
        if n <= ell {
            return Err(Error::Domain(format!(
                "no bound state with n = {n} <= l = {ell}"
            )));
        }
        let norm_sq = unnormalized_norm_squared(n, ell);
        Ok(Self {
            n,
            ell,
            norm_const: norm_sq.sqrt().recip(),
        })
    }

    pub fn energy(&self) -> f64 {
        -1.0 / (self.n as f64 * self.n as f64)
    }

    /// `1 / sqrt(∫ |r^{ℓ+1} e^{-r/n} M|² dr)`.
    pub fn normalization_constant(&self) -> f64 {
        self.norm_const
    }

    pub fn eval(&self, r: f64) -> Result<ValueDeriv> {
        let n = self.n as f64;
        let l = self.ell as f64;
        let a = Complex64::new(l + 1.0 - n, 0.0);
        let m = kummer_m(HypParams::new(
            a,
            2 * self.ell + 2,
            Complex64::new(2.0 * r / n, 0.0),
        ))?;
        let pref = self.norm_const * r.powi(self.ell as i32 + 1) * (-r / n).exp();
        let value = m.value * pref;
        let deriv = value * ((l + 1.0) / r - 1.0 / n) + m.deriv * (pref * 2.0 / n);
        Ok(ValueDeriv::new(value, deriv))
    }
}

/// Exact `∫_0^∞ r^{2ℓ+2} e^{-2r/n} M(ℓ+1-n, 2ℓ+2, 2r/n)² dr` from the
/// polynomial coefficients of `M` and `∫ r^p e^{-αr} dr = p!/α^{p+1}`.
fn unnormalized_norm_squared(n: u32, ell: u32) -> f64 {
    let degree = (n - ell - 1) as usize;
    let a = ell as f64 + 1.0 - n as f64;
    let c = 2.0 * ell as f64 + 2.0;
    let mut coeffs = vec![1.0f64; degree + 1];
    for j in 1..=degree {
        let jf = (j - 1) as f64;
        coeffs[j] = coeffs[j - 1] * (a + jf) / ((c + jf) * (jf + 1.0));
    }
    let base = 2 * ell as usize + 2;
    let fact = |p: usize| (1..=p).fold(1.0f64, |acc, k| acc * k as f64);
    let mut sum = 0.0;
    for (i, ci) in coeffs.iter().enumerate() {
        for (j, cj) in coeffs.iter().enumerate() {
            sum += ci * cj * fact(base + i + j);
        }
    }
    sum * (n as f64 / 2.0).powi(2 * ell as i32 + 3)
}

/// Frobenius series of the solution regular at the origin,
/// `ψ = r^{ℓ+1} Σ c_j r^j` with `c₀ = 1` and
/// `j(2ℓ+1+j) c_j = −2 c_{j−1} − λ c_{j−2}`, for the Coulomb problem.
pub fn coulomb_regular_series(ell: u32, lambda: Complex64, r: f64) -> Result<ValueDeriv> {
    if !(r > 0.0) || r > 1.0 {
        return Err(Error::Domain(format!(
            "regular series is only summed for 0 < r <= 1 (got {r})"
        )));
    }
    let l = ell as f64;
    let (mut c2, mut c1) = (Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0));
    let mut value = c1;
    let mut deriv = c1 * (l + 1.0);
    let mut rj = 1.0;
    for j in 1..200 {
        let jf = j as f64;
        let cj = (COULOMB_COUPLING * c1 - lambda * c2) / (jf * (2.0 * l + 1.0 + jf));
        rj *= r;
        let term = cj * rj;
        value += term;
        deriv += term * (l + 1.0 + jf);
        if term.norm() < 1e-18 * value.norm() && j > 2 {
            break;
        }
        c2 = c1;
        c1 = cj;
    }
    let pref = r.powi(ell as i32 + 1);
    Ok(ValueDeriv::new(value * pref, deriv * pref / r))
}

/// A Hermitian bound state sampled on a grid.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundState {
    pub n: u32,
    pub energy: f64,
    pub state: HydrogenState,
    pub wavefunction: ComplexField,
}

/// Normalized hydrogen-like bound state `(n, ℓ)` with `E_n = -1/n²`.
pub fn hydrogen_bound_state(n: u32, ell: u32, grid: &RadialGrid) -> Result<BoundState> {
    let state = HydrogenState::new(n, ell)?;
    let wavefunction = ComplexField::sample(grid, |r| state.eval(r))?;
    Ok(BoundState {
        n,
        energy: state.energy(),
        state,
        wavefunction,
    })
}
