//! Complex wavenumbers, resonance bookkeeping and the Coulomb Gamow vectors
//!
//! `u(r) = r^{ℓ+1} e^{-kr} M(ℓ+1-1/k, 2ℓ+2, 2kr)` and
//! `ω(r) = r^{ℓ+1} e^{-kr} [M + ξ U](ℓ+1-1/k, 2ℓ+2, 2kr)`
//!
//! used as transformation functions for the partner construction.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::ComplexField;
use crate::specfun::{kummer_m, tricomi_u, HypParams, ValueDeriv};

/// Smallest radius at which `U`-containing functions are evaluated.
pub const U_EVALUATION_FLOOR: f64 = 1e-4;

/// `k = k₁ + i k₂` with `ε = −k²`.
///
/// Gamow wavenumbers satisfy `Re k < 0`. A real positive `k` (a Hermitian
/// bound-state-like transformation) can be built with [`Self::hermitian`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ComplexWavenumber {
    k: Complex64,
    hermitian: bool,
}

impl ComplexWavenumber {
    /// Root of `k² = −ε` on the `Re k < 0` branch.
    pub fn from_energy(epsilon: Complex64) -> Result<Self> {
        if !epsilon.is_finite() {
            return Err(Error::Domain(format!("non-finite energy {epsilon}")));
        }
        let k = -(-epsilon).sqrt();
        if !(k.re < 0.0) {
            return Err(Error::Branch(format!(
                "ε = {epsilon} gives Re k = 0; not a Gamow configuration"
            )));
        }
        Ok(Self { k, hermitian: false })
    }

    pub fn from_k(k: Complex64) -> Result<Self> {
        if !k.is_finite() {
            return Err(Error::Domain(format!("non-finite wavenumber {k}")));
        }
        if !(k.re < 0.0) {
            return Err(Error::Branch(format!("Gamow wavenumbers need Re k < 0 (got {k})")));
        }
        Ok(Self { k, hermitian: false })
    }

    /// Real `k > 0`, bypassing the branch check.
    pub fn hermitian(k: f64) -> Result<Self> {
        if !(k > 0.0) || !k.is_finite() {
            return Err(Error::Domain(format!("hermitian wavenumber must be > 0 (got {k})")));
        }
        Ok(Self {
            k: Complex64::new(k, 0.0),
            hermitian: true,
        })
    }

    pub fn k(&self) -> Complex64 {
        self.k
    }

    pub fn epsilon(&self) -> Complex64 {
        -self.k * self.k
    }

    pub fn is_hermitian(&self) -> bool {
        self.hermitian
    }

    pub fn conj(&self) -> Self {
        Self {
            k: self.k.conj(),
            hermitian: self.hermitian,
        }
    }
}

/// Alias of [`ComplexWavenumber::from_energy`].
pub fn wavenumber_from_energy(epsilon: Complex64) -> Result<ComplexWavenumber> {
    ComplexWavenumber::from_energy(epsilon)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EnergyKind {
    /// `k₂ < 0`: `ε = E_R − iΓ/2`.
    Decaying,
    /// `k₂ > 0`: `ε = E_R + iΓ/2`.
    Growing,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EnergyClass {
    pub kind: EnergyKind,
    /// `k₂² − k₁²`, reported without a sign check.
    pub e_r: f64,
    /// `4|k₁ k₂|`.
    pub gamma: f64,
}

pub fn classify_energy(k: &ComplexWavenumber) -> Result<EnergyClass> {
    let (k1, k2) = (k.k.re, k.k.im);
    if !(k1 < 0.0) {
        return Err(Error::Branch(format!("classification needs Re k < 0 (got {})", k.k)));
    }
    if k2 == 0.0 {
        return Err(Error::Classification(
            "real energy: neither decaying nor growing".into(),
        ));
    }
    Ok(EnergyClass {
        kind: if k2 < 0.0 {
            EnergyKind::Decaying
        } else {
            EnergyKind::Growing
        },
        e_r: k2 * k2 - k1 * k1,
        gamma: 4.0 * (k1 * k2).abs(),
    })
}

/// A function solving `H_ℓ w = ε w`, usable as the seed of a factorization.
pub trait TransformationFunction: Sync {
    fn ell(&self) -> u32;
    fn epsilon(&self) -> Complex64;
    /// Wavenumber used to set the local length scale in node detection.
    fn wavenumber(&self) -> Complex64;
    fn eval(&self, r: f64) -> Result<ValueDeriv>;
    /// Smallest radius at which [`Self::eval`] is trusted.
    fn floor(&self) -> f64 {
        0.0
    }
}

/// `(ℓ, k, ξ)`; `ξ = 0` selects the ordinary Gamow vector.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GamowSpec {
    pub ell: u32,
    pub k: ComplexWavenumber,
    pub xi: Complex64,
}

impl GamowSpec {
    pub fn new(ell: u32, k: ComplexWavenumber, xi: Complex64) -> Result<Self> {
        if !xi.is_finite() {
            return Err(Error::Domain(format!("non-finite ξ = {xi}")));
        }
        Ok(Self { ell, k, xi })
    }

    pub fn ordinary(ell: u32, k: ComplexWavenumber) -> Self {
        Self {
            ell,
            k,
            xi: Complex64::new(0.0, 0.0),
        }
    }

    pub fn is_generalized(&self) -> bool {
        self.xi != Complex64::new(0.0, 0.0)
    }

    /// `ℓ + 1 − 1/k`.
    pub fn a(&self) -> Complex64 {
        self.ell as f64 + 1.0 - self.k.k.inv()
    }

    pub fn c(&self) -> u32 {
        2 * self.ell + 2
    }

    pub fn conj(&self) -> Self {
        Self {
            ell: self.ell,
            k: self.k.conj(),
            xi: self.xi.conj(),
        }
    }
}

fn check_radius(r: f64) -> Result<()> {
    if !(r > 0.0) || !r.is_finite() {
        return Err(Error::Domain(format!("r must be positive and finite (got {r})")));
    }
    Ok(())
}

/// `r^{ℓ+1} e^{−kr} F(2kr)` and its `r`-derivative, for `F` and `dF/dz`.
fn dress(spec: &GamowSpec, r: f64, f: ValueDeriv) -> ValueDeriv {
    let k = spec.k.k;
    let l1 = spec.ell as f64 + 1.0;
    let pref = (-k * r).exp() * r.powi(spec.ell as i32 + 1);
    let value = pref * f.value;
    let deriv = pref * ((l1 / r - k) * f.value + 2.0 * k * f.deriv);
    ValueDeriv::new(value, deriv)
}

/// Ordinary Gamow vector `u(r)`; `spec.xi` must be zero.
pub fn gamow_vector(spec: &GamowSpec, r: f64) -> Result<ValueDeriv> {
    if spec.is_generalized() {
        return Err(Error::Domain(
            "ξ ≠ 0: use generalized_gamow_vector".into(),
        ));
    }
    check_radius(r)?;
    let p = HypParams::new(spec.a(), spec.c(), 2.0 * spec.k.k * r);
    Ok(dress(spec, r, kummer_m(p)?))
}

/// Generalized Gamow vector `ω(r)`; identical to [`gamow_vector`] when `ξ = 0`.
pub fn generalized_gamow_vector(spec: &GamowSpec, r: f64) -> Result<ValueDeriv> {
    check_radius(r)?;
    if !spec.is_generalized() {
        return gamow_vector(spec, r);
    }
    if r < U_EVALUATION_FLOOR {
        return Err(Error::Domain(format!(
            "r = {r} below the evaluation floor {U_EVALUATION_FLOOR} of U"
        )));
    }
    let p = HypParams::new(spec.a(), spec.c(), 2.0 * spec.k.k * r);
    let m = kummer_m(p)?;
    let u = tricomi_u(p)?;
    let f = ValueDeriv::new(m.value + spec.xi * u.value, m.deriv + spec.xi * u.deriv);
    Ok(dress(spec, r, f))
}

impl TransformationFunction for GamowSpec {
    fn ell(&self) -> u32 {
        self.ell
    }

    fn epsilon(&self) -> Complex64 {
        self.k.epsilon()
    }

    fn wavenumber(&self) -> Complex64 {
        self.k.k
    }

    fn eval(&self, r: f64) -> Result<ValueDeriv> {
        generalized_gamow_vector(self, r)
    }

    fn floor(&self) -> f64 {
        if self.is_generalized() {
            U_EVALUATION_FLOOR
        } else {
            0.0
        }
    }
}

/// `|u′/u + k|` at every point of the field; the field must carry derivatives.
pub fn outgoing_profile(u: &ComplexField, k: &ComplexWavenumber) -> Result<Vec<(f64, f64)>> {
    let deriv = u
        .deriv()
        .ok_or_else(|| Error::Domain("outgoing check needs the analytic derivative".into()))?;
    u.points()
        .iter()
        .zip(u.values().iter().zip(deriv))
        .map(|(&r, (v, d))| {
            if v.norm() == 0.0 {
                Err(Error::Degenerate(format!("u vanishes at r = {r}")))
            } else {
                Ok((r, (d / v + k.k).norm()))
            }
        })
        .collect()
}

/// Start of the tail examined by the outgoing check.
pub const OUTGOING_TAIL_START: f64 = 20.0;

/// `max |u′/u + k|` over the points `r >= 20`.
pub fn outgoing_residual(u: &ComplexField, k: &ComplexWavenumber) -> Result<f64> {
    if u.grid().r_max() < OUTGOING_TAIL_START {
        return Err(Error::Domain(format!(
            "grid ends at {} < {OUTGOING_TAIL_START}",
            u.grid().r_max()
        )));
    }
    let tail = u.restricted(OUTGOING_TAIL_START, f64::INFINITY)?;
    Ok(outgoing_profile(&tail, k)?
        .into_iter()
        .map(|p| p.1)
        .fold(0.0, f64::max))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::RadialGrid;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn fig1() -> GamowSpec {
        GamowSpec::ordinary(1, ComplexWavenumber::from_energy(c(-0.2604, 0.104)).unwrap())
    }

    #[test]
    fn wavenumber_branches() {
        assert_eq!(ComplexWavenumber::from_energy(c(-0.25, 0.0)).unwrap().k(), c(-0.5, 0.0));
        assert_eq!(ComplexWavenumber::from_energy(c(-1.0, 0.0)).unwrap().k(), c(-1.0, 0.0));
        let k = ComplexWavenumber::from_energy(c(-0.2604, 0.104)).unwrap();
        assert!((k.k() - c(-0.52, 0.1)).norm() < 1e-12);
        assert!((k.epsilon() - c(-0.2604, 0.104)).norm() < 1e-15);
        assert!(matches!(
            ComplexWavenumber::from_energy(c(0.3, 0.0)),
            Err(Error::Branch(_))
        ));
        assert!(ComplexWavenumber::from_k(c(0.1, 1.0)).is_err());
        assert!(ComplexWavenumber::hermitian(-0.5).is_err());
        assert!(ComplexWavenumber::hermitian(0.5).unwrap().is_hermitian());
    }

    #[test]
    fn classification() {
        let d = classify_energy(&ComplexWavenumber::from_k(c(-0.3, -0.6)).unwrap()).unwrap();
        assert_eq!(d.kind, EnergyKind::Decaying);
        assert!((d.gamma - 0.72).abs() < 1e-15 && (d.e_r - 0.27).abs() < 1e-15);
        let g = classify_energy(&ComplexWavenumber::from_k(c(-0.3, 0.6)).unwrap()).unwrap();
        assert_eq!(g.kind, EnergyKind::Growing);
        assert_eq!(g.gamma, d.gamma);
        let f = classify_energy(&fig1().k).unwrap();
        assert_eq!(f.kind, EnergyKind::Growing);
        assert!((f.e_r + 0.2604).abs() < 1e-12 && (f.gamma - 0.208).abs() < 1e-12);
        assert!(matches!(
            classify_energy(&ComplexWavenumber::from_k(c(-1.0, 0.0)).unwrap()),
            Err(Error::Classification(_))
        ));
    }

    #[test]
    fn pure_exponential_when_a_vanishes() {
        // ℓ = 1, k = 1/2: a = 0 and u = r² e^{−r/2}
        let spec = GamowSpec::ordinary(1, ComplexWavenumber::hermitian(0.5).unwrap());
        let vd = gamow_vector(&spec, 3.0).unwrap();
        let e = (-1.5f64).exp();
        assert!((vd.value - c(9.0 * e, 0.0)).norm() < 1e-14);
        assert!((vd.deriv - c(6.0 * e - 4.5 * e, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn small_r_limits() {
        let spec = fig1();
        let vd = gamow_vector(&spec, 1e-6).unwrap();
        assert!((vd.value / 1e-12 - 1.0).norm() < 1e-5);
        let gen = GamowSpec::new(1, spec.k, c(1.0, 0.0)).unwrap();
        let a = generalized_gamow_vector(&gen, 1e-3).unwrap().value * 1e-3;
        let b = generalized_gamow_vector(&gen, 2e-3).unwrap().value * 2e-3;
        assert!(a.norm() > 1e-3 && (a - b).norm() / a.norm() < 1e-2);
        assert!(matches!(
            generalized_gamow_vector(&gen, 1e-5),
            Err(Error::Domain(_))
        ));
        assert!(gamow_vector(&gen, 1.0).is_err());
    }

    #[test]
    fn xi_zero_reduces_to_ordinary() {
        let spec = fig1();
        assert_eq!(
            generalized_gamow_vector(&spec, 2.5).unwrap(),
            gamow_vector(&spec, 2.5).unwrap()
        );
    }

    #[test]
    fn outgoing_residual_examples() {
        // u = r² e^{−kr}: residual (ℓ+1)/r exactly
        let k = ComplexWavenumber::from_k(c(-0.5, 0.2)).unwrap();
        let g = RadialGrid::uniform(20.0, 40.0, 50).unwrap();
        let u = ComplexField::sample(&g, |r| {
            let v = (-k.k() * r).exp() * r * r;
            Ok(ValueDeriv::new(v, v * (2.0 / r - k.k())))
        })
        .unwrap();
        assert!((outgoing_residual(&u, &k).unwrap() - 0.1).abs() < 1e-12);

        let spec = fig1();
        let g = RadialGrid::uniform(20.0, 40.0, 21).unwrap();
        let u = ComplexField::sample(&g, |r| gamow_vector(&spec, r)).unwrap();
        let prof = outgoing_profile(&u, &spec.k).unwrap();
        assert!(prof[0].1 > 0.05 && prof[0].1 < 0.2);
        assert!(prof.windows(2).all(|w| w[1].1 < w[0].1));

        let short = RadialGrid::uniform(1.0, 10.0, 10).unwrap();
        let u = ComplexField::sample(&short, |r| gamow_vector(&spec, r)).unwrap();
        assert!(outgoing_residual(&u, &spec.k).is_err());
    }
}
