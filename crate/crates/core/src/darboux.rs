//! First-order Darboux (SUSY) partners `h_ℓ = H_ℓ + 2β′` built from a
//! transformation function `w` with `H_ℓ w = ε w`.
//!
//! `β = −w′/w` solves `−β′ + β² + ε = V_ℓ`, so `β′` is taken algebraically
//! from that identity. Eigenfunctions of `H_ℓ` are mapped by
//! `B φ = φ′ + βφ = W(w, φ)/w`, and `1/w` is the extra solution of `h_ℓ`
//! at `ε`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gamow::{GamowSpec, TransformationFunction};
use crate::numerics::quadrature::{quadrature, Integrand, QuadratureResult};
use crate::numerics::{ComplexField, RadialGrid};
use crate::potentials::{HydrogenState, RadialModel};
use crate::specfun::ValueDeriv;

/// `|w|` below this multiple of the local scale `|w′| / (|k| + (ℓ+1)/r)`
/// counts as a node.
pub const NODE_THRESHOLD: f64 = 1e-12;

/// `β(r) = −w′(r)/w(r)` for a Gamow transformation function.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Superpotential {
    pub source: GamowSpec,
    pub model: RadialModel,
}

/// `V_ℓ + 2β′`, the potential of the partner Hamiltonian.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PartnerPotential {
    pub superpotential: Superpotential,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum StateNorm {
    Finite { norm: f64, error_estimate: f64 },
    Divergent,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TransformedState {
    pub psi: ComplexField,
    pub lambda: Complex64,
    pub norm: StateNorm,
}

/// Superpotential of `spec` over the Coulomb problem with the same `ℓ`.
pub fn superpotential(spec: GamowSpec) -> Superpotential {
    Superpotential {
        model: RadialModel::coulomb(spec.ell),
        source: spec,
    }
}

impl Superpotential {
    pub fn epsilon(&self) -> Complex64 {
        self.source.epsilon()
    }

    pub fn ell(&self) -> u32 {
        self.source.ell
    }

    pub fn floor(&self) -> f64 {
        self.source.floor()
    }

    /// `w(r)` and `w′(r)`, failing with a node error where `w` (nearly)
    /// vanishes.
    pub fn transformation(&self, r: f64) -> Result<ValueDeriv> {
        let w = self.source.eval(r)?;
        let scale = w.deriv.norm() / (self.source.wavenumber().norm() + (self.ell() as f64 + 1.0) / r);
        if w.value.norm() == 0.0 || w.value.norm() < NODE_THRESHOLD * scale {
            return Err(Error::Node { r });
        }
        Ok(w)
    }

    pub fn beta(&self, r: f64) -> Result<Complex64> {
        Ok(-self.transformation(r)?.log_derivative())
    }

    /// `β′ = β² + ε − V_ℓ`.
    pub fn beta_deriv(&self, r: f64) -> Result<Complex64> {
        Ok(self.beta_pair(r)?.deriv)
    }

    /// `(β, β′)` at `r`.
    pub fn beta_pair(&self, r: f64) -> Result<ValueDeriv> {
        let beta = self.beta(r)?;
        let v = self.model.effective_potential(r)?;
        Ok(ValueDeriv::new(beta, beta * beta + self.epsilon() - v))
    }
}

/// The partner potential of `sp`.
pub fn partner_potential(sp: Superpotential) -> PartnerPotential {
    PartnerPotential { superpotential: sp }
}

impl PartnerPotential {
    /// `v = V_ℓ + 2β′`.
    pub fn v(&self, r: f64) -> Result<Complex64> {
        let sp = &self.superpotential;
        Ok(sp.model.effective_potential(r)? + 2.0 * sp.beta_deriv(r)?)
    }

    /// `v = 2β² + 2ε − V_ℓ`.
    pub fn v_algebraic(&self, r: f64) -> Result<Complex64> {
        let sp = &self.superpotential;
        let beta = sp.beta(r)?;
        Ok(2.0 * beta * beta + 2.0 * sp.epsilon() - sp.model.effective_potential(r)?)
    }

    pub fn sample(&self, grid: &RadialGrid) -> Result<ComplexField> {
        ComplexField::sample_values(grid, |r| self.v(r))
    }
}

/// `B φ = φ′ + βφ`.
pub fn darboux_map(phi: ValueDeriv, sp: &Superpotential, r: f64) -> Result<Complex64> {
    Ok(phi.deriv + sp.beta(r)? * phi.value)
}

/// `B φ` and its derivative `(V_ℓ − λ + β′)φ + βφ′` for `H_ℓ φ = λ φ`.
pub fn darboux_map_with_deriv(
    phi: ValueDeriv,
    lambda: Complex64,
    sp: &Superpotential,
    r: f64,
) -> Result<ValueDeriv> {
    let b = sp.beta_pair(r)?;
    let v = sp.model.effective_potential(r)?;
    let value = phi.deriv + b.value * phi.value;
    let deriv = (v - lambda + b.deriv) * phi.value + b.value * phi.deriv;
    Ok(ValueDeriv::new(value, deriv))
}

fn check_grid(sp: &Superpotential, grid: &RadialGrid) -> Result<()> {
    if grid.r_min() < sp.floor() {
        return Err(Error::Domain(format!(
            "grid starts at {} below the evaluation floor {}",
            grid.r_min(),
            sp.floor()
        )));
    }
    Ok(())
}

fn measure(psi: &ComplexField) -> Result<(StateNorm, QuadratureResult)> {
    let q = quadrature(psi, Integrand::ModulusSquared)?;
    let norm = if q.divergent {
        StateNorm::Divergent
    } else {
        let n = q.value.re.sqrt();
        StateNorm::Finite {
            norm: n,
            error_estimate: 0.5 * q.error_estimate / n,
        }
    };
    Ok((norm, q))
}

/// `Ψ_ε = 1/w`, with `Ψ_ε′ = β/w`, eigenfunction of `h_ℓ` at `λ = ε`.
pub fn extra_eigenstate(sp: &Superpotential, grid: &RadialGrid) -> Result<TransformedState> {
    check_grid(sp, grid)?;
    let psi = ComplexField::sample(grid, |r| {
        let w = sp.transformation(r)?;
        let inv = w.value.inv();
        Ok(ValueDeriv::new(inv, -w.deriv * inv * inv))
    })?;
    let (norm, _) = measure(&psi)?;
    Ok(TransformedState {
        psi,
        lambda: sp.epsilon(),
        norm,
    })
}

/// `β` with `β′` as derivative, sampled on `grid`.
pub fn sample_beta(sp: &Superpotential, grid: &RadialGrid) -> Result<ComplexField> {
    check_grid(sp, grid)?;
    ComplexField::sample(grid, |r| sp.beta_pair(r))
}

/// `Ψ_n = B ψ_n` for the normalized hydrogen state `(n, ℓ)`; eigenvalue
/// `E_n = −1/n²`.
pub fn transformed_bound_state(
    sp: &Superpotential,
    n: u32,
    grid: &RadialGrid,
) -> Result<TransformedState> {
    map_bound_state(sp, &sample_beta(sp, grid)?, n)
}

/// [`transformed_bound_state`] reusing a field from [`sample_beta`].
pub fn map_bound_state(sp: &Superpotential, beta: &ComplexField, n: u32) -> Result<TransformedState> {
    if !sp.model.is_reference_coulomb() {
        return Err(Error::Domain(
            "closed-form bound states exist only for the Coulomb model".into(),
        ));
    }
    let state = HydrogenState::new(n, sp.ell())?;
    let lambda = Complex64::new(state.energy(), 0.0);
    if (lambda - sp.epsilon()).norm() < 1e-14 {
        return Err(Error::Degenerate(format!(
            "level n = {n} is the transformation function itself and is annihilated by B"
        )));
    }
    let b = beta.values();
    let db = beta
        .deriv()
        .ok_or_else(|| Error::Domain("β field needs its derivative".into()))?;
    let mut values = Vec::with_capacity(beta.len());
    let mut derivs = Vec::with_capacity(beta.len());
    for (i, &r) in beta.points().iter().enumerate() {
        let phi = state.eval(r)?;
        let v = sp.model.effective_potential(r)?;
        values.push(phi.deriv + b[i] * phi.value);
        derivs.push((v - lambda + db[i]) * phi.value + b[i] * phi.deriv);
    }
    let psi = ComplexField::new(beta.grid().clone(), values, Some(derivs))?;
    let (norm, _) = measure(&psi)?;
    Ok(TransformedState { psi, lambda, norm })
}

/// Unit norm with `Ψ` real and positive where `|Ψ|` is largest.
pub fn normalize(state: &TransformedState) -> Result<TransformedState> {
    let norm = match state.norm {
        StateNorm::Finite { norm, .. } if norm > 0.0 => norm,
        StateNorm::Finite { .. } => {
            return Err(Error::Normalization("zero norm".into()));
        }
        StateNorm::Divergent => {
            return Err(Error::Normalization(
                "state is not square integrable".into(),
            ));
        }
    };
    let (imax, _) = state.psi.max_abs();
    let peak = state.psi.values()[imax];
    let phase = peak.conj() / peak.norm();
    let psi = state.psi.scaled(phase / norm);
    let (norm, _) = measure(&psi)?;
    Ok(TransformedState {
        psi,
        lambda: state.lambda,
        norm,
    })
}
