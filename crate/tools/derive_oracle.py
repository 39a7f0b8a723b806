"""Regenerates crates/core/tests/data/derived.json with mpmath at 60 digits.

The Rust test suite compares the double-precision implementation against
these frozen values; rerun only when the definitions below change.
"""

import json
from pathlib import Path

import mpmath as mp

mp.mp.dps = 60

ELL = 1
EPS = mp.mpc("-0.2604", "0.104")


def wavenumber(eps):
    k = mp.sqrt(-eps)
    return -k if k.real > 0 else k


def omega(ell, k, xi, r):
    a = ell + 1 - 1 / k
    c = 2 * ell + 2
    z = 2 * k * r
    f = mp.hyp1f1(a, c, z)
    if xi != 0:
        f += xi * mp.hyperu(a, c, z)
    return r ** (ell + 1) * mp.exp(-k * r) * f


def pair(z):
    z = mp.mpc(z)
    return [float(z.real), float(z.imag)]


def value_deriv(f, x):
    return {"value": pair(f(x)), "deriv": pair(mp.diff(f, x))}


def main():
    k = wavenumber(EPS)
    a_m = mp.mpc("3.854", "0.357")
    out = {}

    out["kummer_m"] = [
        {"a": pair(a_m), "c": 4, "z": pair(mp.mpc(1, -0.2)),
         **value_deriv(lambda z: mp.hyp1f1(a_m, 4, z), mp.mpc(1, -0.2))},
        {"a": pair(a_m), "c": 4, "z": pair(mp.mpc(-12, 5)),
         **value_deriv(lambda z: mp.hyp1f1(a_m, 4, z), mp.mpc(-12, 5))},
        {"a": pair(1 - 1 / k + 1), "c": 4, "z": pair(2 * k * 7),
         **value_deriv(lambda z: mp.hyp1f1(2 - 1 / k, 4, z), 2 * k * 7)},
    ]
    out["tricomi_u"] = [
        {"a": [2.0, 0.0], "c": 3, "z": [5.0, 0.0],
         **value_deriv(lambda z: mp.hyperu(2, 3, z), mp.mpf(5))},
        {"a": pair(a_m), "c": 4, "z": [10.0, 0.0],
         **value_deriv(lambda z: mp.hyperu(a_m, 4, z), mp.mpf(10))},
        {"a": pair(2 - 1 / k), "c": 4, "z": pair(2 * k * 3),
         **value_deriv(lambda z: mp.hyperu(2 - 1 / k, 4, z), 2 * k * 3)},
    ]

    # ∫ |r² e^{-r/3} M(-1, 4, 2r/3)|² dr for the n = 3, ℓ = 1 hydrogen state.
    h3 = mp.quad(
        lambda r: (r**2 * mp.exp(-r / 3) * mp.hyp1f1(-1, 4, 2 * r / 3)) ** 2,
        [0, 10, 40, mp.inf],
    )
    out["hydrogen_n3_l1_unnormalized_norm"] = float(h3)

    out["fig1_wavenumber"] = pair(k)
    u = lambda r: omega(ELL, k, 0, r)
    out["fig1_u_at_1"] = value_deriv(u, mp.mpf(1))
    out["fig1_beta_at_1"] = pair(-mp.diff(u, 1) / u(1))
    out["fig1_u_tail"] = [
        {"r": r, "outgoing_residual": float(abs(mp.diff(u, r) / u(r) + k))}
        for r in (20, 40)
    ]

    # ℓ = 0, k = -1 collapses to r e^{-r}.
    u0 = lambda r: omega(0, mp.mpf(-1), 0, r)
    out["ell0_k_minus1_at_1"] = value_deriv(u0, mp.mpf(1))

    w = lambda r: omega(ELL, k, 1, r)
    out["fig4_omega_at_1"] = value_deriv(w, mp.mpf(1))
    extra = mp.quad(lambda r: 1 / abs(w(r)) ** 2, [0, 0.05, 0.5, 1, 1.5, 2, 4, 8, 16, 32, 64, mp.inf])
    out["fig4_extra_state_norm"] = float(extra)

    path = Path(__file__).resolve().parents[1] / "crates/core/tests/data/derived.json"
    path.write_text(json.dumps(out, indent=2) + "\n")
    print(path)


if __name__ == "__main__":
    main()
