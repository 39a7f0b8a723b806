//! The verification suite run by `gamow-susy verify`: every structural claim
//! about a partner Hamiltonian, measured numerically and compared with a
//! fixed tolerance.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::darboux::{
    darboux_map, extra_eigenstate, map_bound_state, normalize, partner_potential, sample_beta,
    superpotential, StateNorm, Superpotential,
};
use crate::error::{Error, Result};
use crate::gamow::{
    classify_energy, outgoing_profile, EnergyClass, GamowSpec, TransformationFunction,
    OUTGOING_TAIL_START,
};
use crate::numerics::quadrature::{gauss_legendre_panels, quadrature, Integrand};
use crate::numerics::{
    inner_product, integrate_radial, schrodinger_residual, ComplexField, InitialData, RadialGrid,
    Stencil,
};
use crate::potentials::{coulomb_effective, coulomb_regular_series, HydrogenState, RadialModel};

pub const RICCATI_TOLERANCE: f64 = 1e-8;
pub const RESIDUAL_TOLERANCE: f64 = 1e-5;
pub const ORACLE_TOLERANCE: f64 = 1e-6;
pub const LIMIT_TOLERANCE: f64 = 1e-2;
pub const DUAL_QUADRATURE_TOLERANCE: f64 = 1e-6;
pub const NON_ORTHOGONALITY_THRESHOLD: f64 = 1e-3;
pub const ORTHOGONALITY_TOLERANCE: f64 = 1e-6;
pub const HERMITIAN_IMAG_TOLERANCE: f64 = 1e-12;
pub const HERMITIAN_PARTNER_TOLERANCE: f64 = 1e-10;
pub const CASE_III_GROWTH: f64 = 1e6;

/// Radius at which the origin limits are probed.
pub const ORIGIN_PROBE: f64 = 1e-3;
/// Window of the residual, Riccati and oracle checks.
pub const CHECK_WINDOW: (f64, f64) = (0.05, 20.0);
/// Radii compared against the ODE oracle.
pub const ORACLE_RADII: [f64; 4] = [1.0, 5.0, 10.0, 20.0];
/// Spectral parameter of the case-III growth check; not an eigenvalue.
pub const CASE_III_LAMBDA: Complex64 = Complex64::new(-1.0, 0.5);

/// Inputs of a verification run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyConfig {
    pub spec: GamowSpec,
    pub r_min: f64,
    pub r_max: f64,
    pub n_points: usize,
}

impl VerifyConfig {
    pub fn new(spec: GamowSpec) -> Self {
        Self {
            spec,
            r_min: RadialGrid::DEFAULT_R_MIN,
            r_max: RadialGrid::DEFAULT_R_MAX,
            n_points: RadialGrid::DEFAULT_N_POINTS,
        }
    }

    pub fn grid(&self) -> Result<RadialGrid> {
        RadialGrid::geometric_then_uniform(self.r_min, self.r_max, self.n_points)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Comparison {
    /// `value <= tolerance`.
    AtMost,
    /// `value > tolerance`.
    Exceeds,
}

/// One named measurement.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    /// `None` when the measurement itself failed.
    pub value: Option<f64>,
    pub tolerance: f64,
    pub comparison: Comparison,
    pub passed: bool,
    pub note: String,
}

impl Check {
    fn new(name: &str, value: Result<f64>, tolerance: f64, comparison: Comparison, note: &str) -> Self {
        match value {
            Ok(v) => {
                let passed = match comparison {
                    Comparison::AtMost => v <= tolerance,
                    Comparison::Exceeds => v > tolerance,
                };
                Self {
                    name: name.into(),
                    value: Some(v),
                    tolerance,
                    comparison,
                    passed,
                    note: note.into(),
                }
            }
            Err(e) => Self {
                name: name.into(),
                value: None,
                tolerance,
                comparison,
                passed: false,
                note: format!("measurement failed: {e}"),
            },
        }
    }

    pub fn at_most(name: &str, value: Result<f64>, tolerance: f64, note: &str) -> Self {
        Self::new(name, value, tolerance, Comparison::AtMost, note)
    }

    pub fn exceeds(name: &str, value: Result<f64>, threshold: f64, note: &str) -> Self {
        Self::new(name, value, threshold, Comparison::Exceeds, note)
    }

    fn with_verdict(mut self, passed: bool) -> Self {
        self.passed &= passed;
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportParams {
    pub ell: u32,
    pub epsilon: [f64; 2],
    pub k: [f64; 2],
    pub xi: [f64; 2],
    pub hermitian: bool,
    pub energy_class: Option<EnergyClass>,
    pub r_min: f64,
    pub r_max: f64,
    pub n_points: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub params: ReportParams,
    pub checks: Vec<Check>,
    pub all_passed: bool,
}

impl VerificationReport {
    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

fn pair(z: Complex64) -> [f64; 2] {
    [z.re, z.im]
}

/// Dense grid on the check window, fine enough for the sharp structures a
/// generalized transformation function can produce.
pub fn window_grid() -> Result<RadialGrid> {
    RadialGrid::geometric_then_uniform(CHECK_WINDOW.0, CHECK_WINDOW.1, 20_000)
}

/// Grid for the transformed bound states `n <= n_max`: dense to `r = 20`,
/// 0.01 spacing beyond, out to `6 n_max²`.
pub fn bound_state_grid(r_min: f64, n_max: u32) -> Result<RadialGrid> {
    let split = CHECK_WINDOW.1;
    let r_max = (6.0 * (n_max * n_max) as f64).max(2.0 * split);
    let inner = RadialGrid::geometric_then_uniform(r_min, split, 20_000)?;
    let n_outer = ((r_max - split) / 0.01).ceil() as usize;
    let outer = RadialGrid::uniform(split, r_max, n_outer + 1)?;
    let mut pts = inner.points().to_vec();
    pts.extend_from_slice(&outer.points()[1..]);
    RadialGrid::from_points(pts)
}

fn effective(model: &RadialModel) -> impl Fn(f64) -> Complex64 + '_ {
    move |r| Complex64::new(model.effective_potential(r).unwrap_or(f64::NAN), 0.0)
}

fn partner(sp: &Superpotential) -> impl Fn(f64) -> Complex64 + '_ {
    let pp = partner_potential(sp.clone());
    move |r| pp.v(r).unwrap_or(Complex64::new(f64::NAN, f64::NAN))
}

/// `max |−β′_num + β² + ε − V_ℓ| / (1 + |V_ℓ|)` with `β′_num` from
/// Richardson-extrapolated central differences. The step follows the local
/// length scale `min(r, 1/|β|)`, which shrinks near zeros of `w`.
pub fn riccati_residual(sp: &Superpotential, points: &[f64]) -> Result<f64> {
    let mut worst = 0.0f64;
    for &r in points {
        let beta = sp.beta(r)?;
        let h = 1e-3 * r.min(1.0).min(1.0 / beta.norm());
        let central = |h: f64| -> Result<Complex64> {
            Ok((sp.beta(r + h)? - sp.beta(r - h)?) / (2.0 * h))
        };
        let d = (4.0 * central(0.5 * h)? - central(h)?) / 3.0;
        let v = sp.model.effective_potential(r)?;
        worst = worst.max((-d + beta * beta + sp.epsilon() - v).norm() / (1.0 + v.abs()));
    }
    Ok(worst)
}

/// Largest relative deviation between the closed form and the outward ODE
/// solution at [`ORACLE_RADII`]. Ordinary Gamow vectors are seeded from
/// their regular Frobenius series at `r = 0.01`; generalized ones from the
/// closed form at the start of the check window.
pub fn oracle_deviation(spec: &GamowSpec) -> Result<f64> {
    let model = RadialModel::coulomb(spec.ell);
    let eps = spec.epsilon();
    let init = if spec.is_generalized() {
        let r0 = CHECK_WINDOW.0;
        let w = spec.eval(r0)?;
        InitialData::new(r0, w.value, w.deriv)
    } else {
        let r0 = 0.01;
        let s = coulomb_regular_series(spec.ell, eps, r0)?;
        InitialData::new(r0, s.value, s.deriv)
    };
    let mut pts = vec![init.r0];
    pts.extend_from_slice(&ORACLE_RADII);
    let grid = RadialGrid::from_points(pts)?;
    let sol = integrate_radial(&model, eps, init, &grid)?;
    let mut worst = 0.0f64;
    for (&r, v) in sol.points().iter().zip(sol.values()).skip(1) {
        let exact = spec.eval(r)?.value;
        worst = worst.max((v - exact).norm() / exact.norm());
    }
    Ok(worst)
}

/// `|Ψ(30)| / |Ψ(5)|` for `Ψ = Bφ`, `φ` the regular solution of `H_ℓ` at a
/// `λ` outside both spectra, integrated outward.
pub fn case_iii_growth(sp: &Superpotential, lambda: Complex64) -> Result<f64> {
    let r0 = 0.01;
    let seed = coulomb_regular_series(sp.ell(), lambda, r0)?;
    let grid = RadialGrid::from_points(vec![r0, 5.0, 30.0])?;
    let phi = integrate_radial(&sp.model, lambda, InitialData::new(r0, seed.value, seed.deriv), &grid)?;
    let d = phi.deriv().expect("integrator returns derivatives");
    let at = |i: usize| -> Result<Complex64> {
        let r = phi.points()[i];
        darboux_map(crate::specfun::ValueDeriv::new(phi.values()[i], d[i]), sp, r)
    };
    Ok(at(2)?.norm() / at(1)?.norm())
}

/// `∫|1/w|²` by composite Gauss–Legendre on the closed form, with a
/// power-law head below the first panel.
pub fn extra_norm_gauss(sp: &Superpotential, r_lo: f64, r_hi: f64) -> Result<f64> {
    let mut breaks = vec![r_lo];
    let mut r = r_lo;
    while r < 1.0 {
        r = (2.0 * r).min(1.0);
        breaks.push(r);
    }
    while r < r_hi {
        r = (r + 0.5).min(r_hi);
        breaks.push(r);
    }
    let body = gauss_legendre_panels(
        |r| Ok(Complex64::new(sp.transformation(r)?.value.inv().norm_sqr(), 0.0)),
        &breaks,
        24,
    )?;
    let w0 = sp.transformation(r_lo)?.value.inv().norm_sqr();
    let head = w0 * r_lo / (2.0 * sp.ell() as f64 + 1.0);
    Ok(head + body.re)
}

/// Runs every check for the configured transformation.
pub fn run_verification(cfg: &VerifyConfig) -> Result<VerificationReport> {
    let spec = cfg.spec;
    let ell = spec.ell;
    let hermitian = spec.k.is_hermitian();
    let sp = superpotential(spec);
    let pp = partner_potential(sp.clone());
    let grid = cfg.grid()?;
    if grid.r_min() < sp.floor() {
        return Err(Error::Domain(format!(
            "r_min = {} below the evaluation floor {}",
            grid.r_min(),
            sp.floor()
        )));
    }
    let eps = sp.epsilon();
    let window = window_grid()?;
    let mut checks = Vec::new();

    let riccati_pts = RadialGrid::geometric_then_uniform(CHECK_WINDOW.0, CHECK_WINDOW.1, 2000)?;
    checks.push(Check::at_most(
        "riccati",
        riccati_residual(&sp, riccati_pts.points()),
        RICCATI_TOLERANCE,
        "numerical β′ against β² + ε − V_ℓ, relative to 1 + |V_ℓ|",
    ));

    let w_field = ComplexField::sample(&window, |r| spec.eval(r));
    checks.push(Check::at_most(
        "schrodinger-u",
        w_field
            .as_ref()
            .map_err(Clone::clone)
            .and_then(|f| schrodinger_residual(f, effective(&sp.model), eps, Stencil::FivePoint)),
        RESIDUAL_TOLERANCE,
        "transformation function under H_ℓ at ε on [0.05, 20]",
    ));

    checks.push(Check::at_most(
        "oracle-agreement",
        oracle_deviation(&spec),
        ORACLE_TOLERANCE,
        "closed form against the outward ODE solution at r = 1, 5, 10, 20",
    ));

    // isospectrality
    let n_max = ell + 4;
    let iso_grid = bound_state_grid(grid.r_min(), n_max)?;
    let beta = sample_beta(&sp, &iso_grid);
    let mut normalized = Vec::new();
    for n in ell + 1..=n_max {
        let name = format!("isospectrality-n{n}");
        let level = HydrogenState::new(n, ell)?;
        if (Complex64::new(level.energy(), 0.0) - eps).norm() < 1e-14 {
            let removed = ComplexField::sample(&iso_grid, |r| level.eval(r)).and_then(|psi| {
                let d = psi.deriv().expect("sampled with derivative");
                let scale = d.iter().map(|x| x.norm()).fold(0.0, f64::max);
                let mut worst = 0.0f64;
                for (i, &r) in psi.points().iter().enumerate() {
                    let b = darboux_map(
                        crate::specfun::ValueDeriv::new(psi.values()[i], d[i]),
                        &sp,
                        r,
                    )?;
                    worst = worst.max(b.norm());
                }
                Ok(worst / scale)
            });
            checks.push(Check::at_most(
                &name,
                removed,
                HERMITIAN_PARTNER_TOLERANCE,
                "level coincides with ε and is removed: max|Bψ_n| / max|ψ_n′|",
            ));
            continue;
        }
        let state = beta
            .as_ref()
            .map_err(Clone::clone)
            .and_then(|b| map_bound_state(&sp, b, n));
        let measured = state.as_ref().map_err(Clone::clone).and_then(|s| {
            schrodinger_residual(&s.psi, partner(&sp), s.lambda, Stencil::FivePoint)
        });
        let finite = matches!(state.as_ref().map(|s| s.norm), Ok(StateNorm::Finite { .. }));
        let note = format!("h_ℓ Ψ_n = E_n Ψ_n with E_n = {}; finite norm: {finite}", level.energy());
        checks.push(Check::at_most(&name, measured, RESIDUAL_TOLERANCE, &note).with_verdict(finite));
        if let Ok(s) = state {
            if finite {
                normalized.push((n, normalize(&s)?));
            }
        }
    }

    // overlap of the two lowest surviving levels
    {
        let overlap = if normalized.len() >= 2 {
            inner_product(&normalized[0].1.psi, &normalized[1].1.psi).map(|q| q.value.norm())
        } else {
            Err(Error::Degenerate("fewer than two transformed states".into()))
        };
        let note = match normalized.get(..2) {
            Some([a, b]) => format!("|<Ψ_{}, Ψ_{}>| after normalization", a.0, b.0),
            _ => String::new(),
        };
        if hermitian {
            checks.push(Check::at_most("orthogonality", overlap, ORTHOGONALITY_TOLERANCE, &note));
        } else {
            checks.push(Check::exceeds(
                "non-orthogonality",
                overlap,
                NON_ORTHOGONALITY_THRESHOLD,
                &note,
            ));
        }
    }

    // outgoing behavior on the tail
    {
        let tail_grid = RadialGrid::uniform(OUTGOING_TAIL_START, OUTGOING_TAIL_START.max(cfg.r_max), 200)?;
        let measured = ComplexField::sample(&tail_grid, |r| spec.eval(r))
            .and_then(|u| outgoing_profile(&u, &spec.k));
        let k = spec.k.k();
        let bound = 2.0 * (k.inv().norm() + ell as f64 + 1.0);
        let (value, monotone) = match measured {
            Ok(p) => {
                let last = p[p.len() - 1];
                let mono = p.windows(2).all(|w| w[1].1 <= w[0].1);
                (Ok(last.0 * last.1), mono)
            }
            Err(e) => (Err(e), false),
        };
        checks.push(
            Check::at_most(
                "outgoing",
                value,
                bound,
                "r·|u′/u + k| at the end of the tail, with |u′/u + k| non-increasing",
            )
            .with_verdict(monotone),
        );
    }

    // v near the origin
    {
        let target_ell = if spec.is_generalized() {
            ell as i64 - 1
        } else {
            ell as i64 + 1
        };
        let r = ORIGIN_PROBE;
        let reference = coulomb_effective(target_ell, r);
        let measured = pp.v(r).map(|v| (v - reference).norm() / reference.abs());
        checks.push(Check::at_most(
            "limit-origin",
            measured,
            LIMIT_TOLERANCE,
            &format!("|v − V_{target_ell}| / |V_{target_ell}| at r = {r}"),
        ));
    }

    // v at large r
    {
        let far = RadialGrid::uniform(20.0, 40.0, 201)?;
        let mut measured: Result<(f64, bool)> = Ok((0.0, true));
        let mut prev = f64::INFINITY;
        for &r in far.points() {
            measured = measured.and_then(|(m, mono)| {
                let a = pp.v(r)?.norm();
                let ok = mono && a < prev;
                prev = a;
                Ok((m.max(r * a), ok))
            });
        }
        let mono = measured.as_ref().map(|m| m.1).unwrap_or(false);
        checks.push(
            Check::at_most(
                "limit-infinity",
                measured.map(|m| m.0),
                2.0 * crate::potentials::COULOMB_COUPLING.abs(),
                "max r·|v| on [20, 40], with |v| decreasing",
            )
            .with_verdict(mono),
        );
    }

    // the extra state 1/w
    let extra = extra_eigenstate(&sp, &grid);
    if spec.is_generalized() {
        let simpson = extra
            .as_ref()
            .map_err(Clone::clone)
            .and_then(|e| quadrature(&e.psi, Integrand::ModulusSquared));
        let gauss = extra_norm_gauss(&sp, grid.r_min(), grid.r_max().max(60.0));
        let measured = match (&simpson, &gauss) {
            (Ok(s), Ok(g)) if !s.divergent => Ok((s.value.re - g).abs() / g),
            (Ok(_), Ok(_)) => Err(Error::Normalization("quadrature flagged divergence".into())),
            (Err(e), _) | (_, Err(e)) => Err(e.clone()),
        };
        let note = match &gauss {
            Ok(g) => format!("finite expected; ∫|Ψ_ε|² = {g:.12e}; Simpson vs Gauss–Legendre"),
            Err(_) => "finite expected".into(),
        };
        checks.push(Check::at_most(
            "extra-state-norm",
            measured,
            DUAL_QUADRATURE_TOLERANCE,
            &note,
        ));
        let decayed = ComplexField::sample(&window, |r| {
            let w = sp.transformation(r)?;
            let inv = w.value.inv();
            Ok(crate::specfun::ValueDeriv::new(inv, -w.deriv * inv * inv))
        });
        checks.push(Check::at_most(
            "extra-state-residual",
            decayed.and_then(|f| schrodinger_residual(&f, partner(&sp), eps, Stencil::FivePoint)),
            RESIDUAL_TOLERANCE,
            "h_ℓ Ψ_ε = ε Ψ_ε on [0.05, 20]",
        ));
    } else {
        let divergent = extra.map(|e| e.norm == StateNorm::Divergent);
        checks.push(Check::at_most(
            "extra-state-norm",
            divergent.map(|d| if d { 0.0 } else { 1.0 }),
            0.0,
            "divergent expected (ξ = 0); value 0 means flagged divergent",
        ));
    }

    if hermitian {
        let imag = pp.sample(&grid).map(|v| {
            v.values().iter().map(|z| z.im.abs()).fold(0.0, f64::max)
        });
        checks.push(Check::at_most(
            "hermitian-reduction",
            imag,
            HERMITIAN_IMAG_TOLERANCE,
            "max |Im v| for a real transformation function",
        ));
        let ground = 1.0 / (ell as f64 + 1.0);
        if !spec.is_generalized() && (spec.k.k().re - ground).abs() < 1e-15 {
            let dev = grid.points().iter().try_fold(0.0f64, |m, &r| {
                let reference = coulomb_effective(ell as i64 + 1, r);
                Ok::<f64, Error>(m.max((pp.v(r)? - reference).norm() / (1.0 + reference.abs())))
            });
            checks.push(Check::at_most(
                "hermitian-partner",
                dev,
                HERMITIAN_PARTNER_TOLERANCE,
                &format!("max |v − V_{}| / (1 + |V_{}|)", ell + 1, ell + 1),
            ));
        }
    }

    checks.push(Check::exceeds(
        "case-iii-growth",
        case_iii_growth(&sp, CASE_III_LAMBDA),
        CASE_III_GROWTH,
        "|BΦ(30)| / |BΦ(5)| for the regular solution at λ = -1 + 0.5i",
    ));

    let all_passed = checks.iter().all(|c| c.passed);
    Ok(VerificationReport {
        params: ReportParams {
            ell,
            epsilon: pair(eps),
            k: pair(spec.k.k()),
            xi: pair(spec.xi),
            hermitian,
            energy_class: classify_energy(&spec.k).ok(),
            r_min: cfg.r_min,
            r_max: cfg.r_max,
            n_points: cfg.n_points,
        },
        checks,
        all_passed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gamow::ComplexWavenumber;

    #[test]
    fn failed_measurement_fails_the_check() {
        let c = Check::at_most("x", Err(Error::Domain("boom".into())), 1.0, "");
        assert!(!c.passed && c.value.is_none() && c.note.contains("boom"));
        assert!(Check::exceeds("y", Ok(2.0), 1.0, "").passed);
        assert!(!Check::exceeds("y", Ok(1.0), 1.0, "").passed);
    }

    #[test]
    fn bound_state_grid_reaches_far_enough() {
        let g = bound_state_grid(1e-3, 5).unwrap();
        assert!((g.r_max() - 150.0).abs() < 1e-9);
        assert!(g.points().windows(2).all(|w| w[1] > w[0]));
    }

    #[test]
    fn case_iii_solution_grows() {
        let k = ComplexWavenumber::from_energy(Complex64::new(-0.2604, 0.104)).unwrap();
        let sp = superpotential(GamowSpec::ordinary(1, k));
        assert!(case_iii_growth(&sp, CASE_III_LAMBDA).unwrap() > 1e6);
    }
}
