//! Double-precision results against the frozen 60-digit reference values and
//! the big-integer series oracle.

mod support;

use gamow_susy::darboux::{extra_eigenstate, superpotential, StateNorm};
use gamow_susy::gamow::{
    classify_energy, gamow_vector, generalized_gamow_vector, ComplexWavenumber, EnergyKind, GamowSpec,
};
use gamow_susy::numerics::RadialGrid;
use gamow_susy::potentials::HydrogenState;
use gamow_susy::specfun::{kummer_m, tricomi_u, HypParams};
use gamow_susy::verify::extra_norm_gauss;
use gamow_susy::Complex64;
use support::{c, derived, kummer_oracle, rel};

fn fig1_k() -> ComplexWavenumber {
    ComplexWavenumber::from_energy(Complex64::new(-0.2604, 0.104)).unwrap()
}

#[test]
fn kummer_reference_values() {
    for case in derived()["kummer_m"].as_array().unwrap() {
        let (a, z) = (c(&case["a"]), c(&case["z"]));
        let cc = case["c"].as_u64().unwrap() as u32;
        let m = kummer_m(HypParams::new(a, cc, z)).unwrap();
        assert!(rel(m.value, c(&case["value"])) < 1e-10, "M({a}, {cc}, {z})");
        assert!(rel(m.deriv, c(&case["deriv"])) < 1e-10, "M′({a}, {cc}, {z})");
        assert!(rel(kummer_oracle(a, cc, z), c(&case["value"])) < 1e-14);
    }
}

#[test]
fn tricomi_reference_values() {
    for case in derived()["tricomi_u"].as_array().unwrap() {
        let (a, z) = (c(&case["a"]), c(&case["z"]));
        let cc = case["c"].as_u64().unwrap() as u32;
        let u = tricomi_u(HypParams::new(a, cc, z)).unwrap();
        assert!(rel(u.value, c(&case["value"])) < 1e-8, "U({a}, {cc}, {z}) = {}", u.value);
        assert!(rel(u.deriv, c(&case["deriv"])) < 1e-8, "U′({a}, {cc}, {z})");
    }
}

#[test]
fn hydrogen_n3_normalization() {
    let norm = derived()["hydrogen_n3_l1_unnormalized_norm"].as_f64().unwrap();
    let s = HydrogenState::new(3, 1).unwrap();
    assert!((s.normalization_constant() - norm.sqrt().recip()).abs() < 1e-15);
}

#[test]
fn fig1_wavenumber_and_class() {
    let d = derived();
    let k = fig1_k();
    assert!((k.k() - c(&d["fig1_wavenumber"])).norm() < 1e-15);
    let class = classify_energy(&k).unwrap();
    assert_eq!(class.kind, EnergyKind::Growing);
    assert!((class.gamma - 0.208).abs() < 1e-12);
    assert!((class.e_r + 0.2604).abs() < 1e-12);
}

#[test]
fn fig1_gamow_vector_values() {
    let d = derived();
    let spec = GamowSpec::ordinary(1, fig1_k());
    let u = gamow_vector(&spec, 1.0).unwrap();
    assert!(rel(u.value, c(&d["fig1_u_at_1"]["value"])) < 1e-12);
    assert!(rel(u.deriv, c(&d["fig1_u_at_1"]["deriv"])) < 1e-12);
    let beta = -u.deriv / u.value;
    assert!(rel(beta, c(&d["fig1_beta_at_1"])) < 1e-12);
    let sp = superpotential(spec);
    assert!(rel(sp.beta(1.0).unwrap(), c(&d["fig1_beta_at_1"])) < 1e-12);

    let mut previous = f64::INFINITY;
    for t in d["fig1_u_tail"].as_array().unwrap() {
        let r = t["r"].as_f64().unwrap();
        let v = gamow_vector(&spec, r).unwrap();
        let res = (v.deriv / v.value + spec.k.k()).norm();
        let expected = t["outgoing_residual"].as_f64().unwrap();
        assert!((res - expected).abs() < 1e-9 * expected, "r = {r}");
        assert!(res < previous);
        previous = res;
    }
}

#[test]
fn ell0_closed_form() {
    let d = derived();
    let spec = GamowSpec::ordinary(0, ComplexWavenumber::from_k(Complex64::new(-1.0, 0.0)).unwrap());
    assert_eq!(spec.a(), Complex64::new(2.0, 0.0));
    let u = gamow_vector(&spec, 1.0).unwrap();
    assert!(rel(u.value, c(&d["ell0_k_minus1_at_1"]["value"])) < 1e-14);
    assert!(u.deriv.norm() < 1e-14);
}

#[test]
fn fig4_generalized_values() {
    let d = derived();
    let spec = GamowSpec::new(1, fig1_k(), Complex64::new(1.0, 0.0)).unwrap();
    let w = generalized_gamow_vector(&spec, 1.0).unwrap();
    assert!(rel(w.value, c(&d["fig4_omega_at_1"]["value"])) < 1e-10);
    assert!(rel(w.deriv, c(&d["fig4_omega_at_1"]["deriv"])) < 1e-10);
}

#[test]
fn fig4_extra_state_norm() {
    let expected = derived()["fig4_extra_state_norm"].as_f64().unwrap();
    let spec = GamowSpec::new(1, fig1_k(), Complex64::new(1.0, 0.0)).unwrap();
    let sp = superpotential(spec);
    let gauss = extra_norm_gauss(&sp, 1e-3, 60.0).unwrap();
    assert!((gauss - expected).abs() < 1e-8 * expected, "{gauss} vs {expected}");
    let grid = RadialGrid::geometric_then_uniform(1e-3, 60.0, 20_000).unwrap();
    match extra_eigenstate(&sp, &grid).unwrap().norm {
        StateNorm::Finite { norm, .. } => assert!((norm * norm - expected).abs() < 1e-6 * expected, "{norm}"),
        StateNorm::Divergent => panic!("expected a finite norm"),
    }
}

#[test]
fn kummer_against_series_oracle_on_full_domain() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    let mut worst = (0.0f64, String::new());
    let mut refused = Vec::new();
    for _ in 0..200 {
        let a = Complex64::from_polar(rng.gen_range(0.0..20.0), rng.gen_range(-3.14..3.14));
        let cc = rng.gen_range(1..12u32);
        let z = Complex64::from_polar(rng.gen_range(0.0..60.0), rng.gen_range(-3.14..3.14));
        match kummer_m(HypParams::new(a, cc, z)) {
            Ok(m) => {
                let d = rel(m.value, kummer_oracle(a, cc, z));
                if d > worst.0 {
                    worst = (d, format!("a={a} c={cc} z={z}"));
                }
            }
            Err(e) => refused.push(format!("a={a} c={cc} z={z}: {e}")),
        }
    }
    assert!(refused.is_empty(), "{refused:?}");
    assert!(worst.0 <= 1e-10, "worst {:e} at {}", worst.0, worst.1);
}
