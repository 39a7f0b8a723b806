//! Datasets behind the five figures, plus the ad-hoc `potential` and
//! `state` exports, written as `r,re,im` CSV (or JSON) curves with a JSON
//! manifest describing parameters, curves and marker radii.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::darboux::{extra_eigenstate, normalize, partner_potential, superpotential, StateNorm};
use crate::error::{Error, Result};
use crate::gamow::{ComplexWavenumber, GamowSpec, TransformationFunction};
use crate::numerics::{ComplexField, RadialGrid};
use crate::potentials::coulomb_effective;

/// Angular momentum of every figure.
pub const DEFAULT_ELL: u32 = 1;
/// Factorization energy of every figure.
pub const DEFAULT_EPSILON: Complex64 = Complex64::new(-0.2604, 0.104);
/// `ξ` used by figures 4 and 5, which do not state one.
pub const GENERALIZED_XI: Complex64 = Complex64::new(1.0, 0.0);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    fn extension(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Glyph {
    Disk,
    Circle,
}

/// How a curve is meant to be drawn.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PlotMode {
    /// Parametric `(re, im)` in the complex plane.
    Argand,
    /// `re` against `r`.
    Comparison,
}

/// Parameters shared by every export. `None` fields fall back to the
/// per-figure defaults.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunParams {
    pub ell: u32,
    pub epsilon: Complex64,
    pub xi: Option<Complex64>,
    /// Real `k > 0` in place of the Gamow branch.
    pub hermitian_k: Option<f64>,
    pub r_min: f64,
    pub r_max: Option<f64>,
    pub n_points: usize,
}

impl Default for RunParams {
    fn default() -> Self {
        Self {
            ell: DEFAULT_ELL,
            epsilon: DEFAULT_EPSILON,
            xi: None,
            hermitian_k: None,
            r_min: RadialGrid::DEFAULT_R_MIN,
            r_max: None,
            n_points: RadialGrid::DEFAULT_N_POINTS,
        }
    }
}

impl RunParams {
    pub fn wavenumber(&self) -> Result<ComplexWavenumber> {
        match self.hermitian_k {
            Some(k) => ComplexWavenumber::hermitian(k),
            None => ComplexWavenumber::from_energy(self.epsilon),
        }
    }

    pub fn spec(&self, default_xi: Complex64) -> Result<GamowSpec> {
        GamowSpec::new(self.ell, self.wavenumber()?, self.xi.unwrap_or(default_xi))
    }

    pub fn grid(&self, default_r_max: f64) -> Result<RadialGrid> {
        RadialGrid::geometric_then_uniform(
            self.r_min,
            self.r_max.unwrap_or(default_r_max),
            self.n_points,
        )
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Curve {
    pub name: String,
    pub label: String,
    pub mode: PlotMode,
    pub field: ComplexField,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Marker {
    pub r: f64,
    pub glyph: Glyph,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ManifestParams {
    pub ell: u32,
    pub eps_re: f64,
    pub eps_im: f64,
    pub k_re: f64,
    pub k_im: f64,
    pub xi_re: f64,
    pub xi_im: f64,
    pub hermitian: bool,
    pub r_min: f64,
    pub r_max: f64,
    pub n_points: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ManifestCurve {
    pub name: String,
    pub file: String,
    pub label: String,
    pub mode: PlotMode,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ManifestMarker {
    pub curve: String,
    pub r: f64,
    pub glyph: Glyph,
    /// Nearest grid point.
    pub index: usize,
    pub r_grid: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    pub id: String,
    pub figure: Option<u8>,
    pub title: String,
    pub format: Format,
    pub params: ManifestParams,
    pub curves: Vec<ManifestCurve>,
    pub markers: Vec<ManifestMarker>,
}

/// Curves with their markers, ready to be written.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    pub id: String,
    pub figure: Option<u8>,
    pub title: String,
    pub params: ManifestParams,
    pub curves: Vec<(Curve, Vec<Marker>)>,
}

fn manifest_params(spec: &GamowSpec, grid: &RadialGrid) -> ManifestParams {
    let eps = spec.epsilon();
    let k = spec.k.k();
    ManifestParams {
        ell: spec.ell,
        eps_re: eps.re,
        eps_im: eps.im,
        k_re: k.re,
        k_im: k.im,
        xi_re: spec.xi.re,
        xi_im: spec.xi.im,
        hermitian: spec.k.is_hermitian(),
        r_min: grid.r_min(),
        r_max: grid.r_max(),
        n_points: grid.len(),
    }
}

fn curve(name: &str, label: &str, mode: PlotMode, field: ComplexField) -> Curve {
    Curve {
        name: name.into(),
        label: label.into(),
        mode,
        field,
    }
}

fn markers(pair: (f64, f64)) -> Vec<Marker> {
    vec![
        Marker {
            r: pair.0,
            glyph: Glyph::Disk,
        },
        Marker {
            r: pair.1,
            glyph: Glyph::Circle,
        },
    ]
}

fn real_part(f: &ComplexField) -> Result<ComplexField> {
    ComplexField::new(
        f.grid().clone(),
        f.values().iter().map(|z| Complex64::new(z.re, 0.0)).collect(),
        None,
    )
}

fn coulomb_curve(ell: i64, grid: &RadialGrid) -> Result<Curve> {
    let field = ComplexField::sample_values(grid, |r| Ok(Complex64::new(coulomb_effective(ell, r), 0.0)))?;
    Ok(curve(
        &format!("V_{ell}"),
        &format!("effective Coulomb potential V_{ell}"),
        PlotMode::Comparison,
        field,
    ))
}

/// `Ψ_ε` normalized when it is square integrable, raw `1/w` otherwise.
fn extra_state_curve(spec: &GamowSpec, grid: &RadialGrid) -> Result<Curve> {
    let sp = superpotential(*spec);
    let state = extra_eigenstate(&sp, grid)?;
    let (field, label) = match state.norm {
        StateNorm::Finite { .. } => (normalize(&state)?.psi, "normalized extra eigenstate 1/ω"),
        StateNorm::Divergent => (state.psi, "extra solution 1/u (not normalizable)"),
    };
    Ok(curve("psi_eps", label, PlotMode::Argand, field))
}

/// Dataset of figure `n` (1 to 5).
pub fn figure_dataset(n: u8, params: &RunParams) -> Result<Dataset> {
    let (default_xi, default_r_max, title) = match n {
        1 => (Complex64::new(0.0, 0.0), 20.0, "Gamow vector u(r)"),
        2 => (Complex64::new(0.0, 0.0), 20.0, "partner potential v(r)"),
        3 => (Complex64::new(0.0, 0.0), RadialGrid::DEFAULT_R_MAX, "Re v(r) against V_{l+1}(r)"),
        4 => (GENERALIZED_XI, 20.0, "generalized Gamow vector and extra eigenstate"),
        5 => (GENERALIZED_XI, 40.0, "partner potential of the generalized Gamow vector"),
        _ => return Err(Error::Domain(format!("figure must be 1 to 5 (got {n})"))),
    };
    let spec = params.spec(default_xi)?;
    let grid = params.grid(default_r_max)?;
    let sp = superpotential(spec);
    let ell = spec.ell as i64;
    let curves = match n {
        1 | 4 => {
            let name = if spec.is_generalized() { "omega" } else { "u" };
            let w = ComplexField::sample(&grid, |r| spec.eval(r))?;
            let mut out = vec![(
                curve(name, "transformation function", PlotMode::Argand, w),
                markers(if n == 1 { (1.0, 19.0) } else { (0.05, 19.5) }),
            )];
            if n == 4 {
                out.push((extra_state_curve(&spec, &grid)?, markers((0.05, 19.0))));
            }
            out
        }
        2 | 3 | 5 => {
            let v = partner_potential(sp).sample(&grid)?;
            let target = if spec.is_generalized() { ell - 1 } else { ell + 1 };
            let re = curve("re_v", "real part of v", PlotMode::Comparison, real_part(&v)?);
            let reference = coulomb_curve(target, &grid)?;
            let full = curve("v", "partner potential v", PlotMode::Argand, v);
            match n {
                2 => vec![(full, markers((2.0, 6.0)))],
                3 => vec![(re, vec![]), (reference, vec![])],
                _ => vec![(full, markers((2.0, 6.0))), (re, vec![]), (reference, vec![])],
            }
        }
        _ => unreachable!(),
    };
    Ok(Dataset {
        id: format!("fig{n}"),
        figure: Some(n),
        title: title.into(),
        params: manifest_params(&spec, &grid),
        curves,
    })
}

/// `v(r)` together with `V_ℓ(r)` for arbitrary parameters.
pub fn potential_dataset(params: &RunParams) -> Result<Dataset> {
    let spec = params.spec(Complex64::new(0.0, 0.0))?;
    let grid = params.grid(RadialGrid::DEFAULT_R_MAX)?;
    let v = partner_potential(superpotential(spec)).sample(&grid)?;
    Ok(Dataset {
        id: "potential".into(),
        figure: None,
        title: "partner potential".into(),
        params: manifest_params(&spec, &grid),
        curves: vec![
            (curve("v", "partner potential v", PlotMode::Argand, v), vec![]),
            (coulomb_curve(spec.ell as i64, &grid)?, vec![]),
        ],
    })
}

/// The transformation function and the extra state `1/w`.
pub fn state_dataset(params: &RunParams) -> Result<Dataset> {
    let spec = params.spec(Complex64::new(0.0, 0.0))?;
    let grid = params.grid(RadialGrid::DEFAULT_R_MAX)?;
    let w = ComplexField::sample(&grid, |r| spec.eval(r))?;
    Ok(Dataset {
        id: "state".into(),
        figure: None,
        title: "transformation function and extra state".into(),
        params: manifest_params(&spec, &grid),
        curves: vec![
            (curve("w", "transformation function", PlotMode::Argand, w), vec![]),
            (extra_state_curve(&spec, &grid)?, vec![]),
        ],
    })
}

/// `printf("%.17g")`.
pub fn format_g17(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return if x.is_sign_negative() { "-0".into() } else { "0".into() };
    }
    let sci = format!("{x:.16e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    let trim = |s: &str| -> String {
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s.to_string()
        }
    };
    if !(-4..17).contains(&exp) {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{sign}{:02}", trim(mantissa), exp.abs())
    } else {
        trim(&format!("{x:.*}", (16 - exp) as usize))
    }
}

/// `r,re,im` with LF line endings.
pub fn field_csv(field: &ComplexField) -> String {
    let mut out = String::from("r,re,im\n");
    for (r, v) in field.points().iter().zip(field.values()) {
        let _ = writeln!(out, "{},{},{}", format_g17(*r), format_g17(v.re), format_g17(v.im));
    }
    out
}

#[derive(Serialize)]
struct JsonCurve<'a> {
    r: &'a [f64],
    re: Vec<f64>,
    im: Vec<f64>,
}

fn field_json(field: &ComplexField) -> String {
    let c = JsonCurve {
        r: field.points(),
        re: field.values().iter().map(|v| v.re).collect(),
        im: field.values().iter().map(|v| v.im).collect(),
    };
    let mut s = serde_json::to_string(&c).expect("finite curve serializes");
    s.push('\n');
    s
}

/// Name of the manifest file of a dataset.
pub fn manifest_name(id: &str) -> String {
    format!("{id}_manifest.json")
}

impl Dataset {
    pub fn manifest(&self, format: Format) -> Manifest {
        let mut curves = Vec::new();
        let mut marks = Vec::new();
        for (c, ms) in &self.curves {
            curves.push(ManifestCurve {
                name: c.name.clone(),
                file: format!("{}_{}.{}", self.id, c.name, format.extension()),
                label: c.label.clone(),
                mode: c.mode,
            });
            for m in ms {
                let index = c.field.grid().nearest_index(m.r);
                marks.push(ManifestMarker {
                    curve: c.name.clone(),
                    r: m.r,
                    glyph: m.glyph,
                    index,
                    r_grid: c.field.points()[index],
                });
            }
        }
        Manifest {
            id: self.id.clone(),
            figure: self.figure,
            title: self.title.clone(),
            format,
            params: self.params.clone(),
            curves,
            markers: marks,
        }
    }

    /// Writes every curve and the manifest into `dir`, returning the paths
    /// written (manifest last).
    pub fn write(&self, dir: &Path, format: Format) -> Result<Vec<PathBuf>> {
        fs::create_dir_all(dir)?;
        let manifest = self.manifest(format);
        let mut written = Vec::new();
        for ((c, _), entry) in self.curves.iter().zip(&manifest.curves) {
            let body = match format {
                Format::Csv => field_csv(&c.field),
                Format::Json => field_json(&c.field),
            };
            let path = dir.join(&entry.file);
            fs::write(&path, body)?;
            written.push(path);
        }
        let path = dir.join(manifest_name(&self.id));
        let mut body = serde_json::to_string_pretty(&manifest).expect("manifest serializes");
        body.push('\n');
        fs::write(&path, body)?;
        written.push(path);
        Ok(written)
    }
}
