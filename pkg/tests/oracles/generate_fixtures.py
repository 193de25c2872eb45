"""Regenerate tests/fixtures/oracle_values.json with 50-digit mpmath.

Run from the repo root:

    python3 tests/oracles/generate_fixtures.py

Nothing here imports qintel; every value is computed from the defining
formulas directly so the tests can check the package against it.
"""
import json
import pathlib

import mpmath as mp

mp.mp.dps = 50

OUT = pathlib.Path(__file__).resolve().parents[1] / "fixtures" / "oracle_values.json"


def bracket(x, q):
    x, q = mp.mpf(x), mp.mpf(q)
    if q == 1:
        return x
    return (q**x - q**-x) / (q - 1 / q)


def hyp_sum(n, b, c, z):
    """Terminating 2F1(-n, b; c; z) by explicit term summation."""
    total = mp.mpc(0)
    for m in range(n + 1):
        total += mp.rf(-n, m) * mp.rf(b, m) / mp.rf(c, m) * mp.mpf(z) ** m / mp.factorial(m)
    return total


def pollaczek_half(n, z, k):
    w = mp.gamma(n + 2 * k) / (mp.factorial(n) * mp.gamma(2 * k))
    return mp.mpc(0, 1) ** n * mp.sqrt(w) * hyp_sum(n, mp.mpc(k, 0) + mp.mpc(0, 1) * z, 2 * k, 2)


def cplx(v):
    v = mp.mpc(v)
    return [float(v.real), float(v.imag)]


def main():
    out = {}
    out["q_bracket_ratio_4_1.5"] = float(bracket(4, 1.5) / 4)
    out["hyp2f1_n3_b0.5+0.3i_c1_z2"] = cplx(hyp_sum(3, mp.mpc("0.5", "0.3"), 1, 2))

    # Pollaczek values of high degree, where the plain series at z=2 cancels badly
    table = []
    for n, z, k in [
        (2, "0.7", "0.5"),
        (5, "0.3", "1"),
        (12, "-1.1", "2.5"),
        (25, "0.45", "0.5"),
        (40, "2.0", "1"),
        (50, "0.7", "1"),
        (50, "0.0", "0.5"),
        (30, mp.mpc("0.3", "0.2"), "1.5"),
    ]:
        zz = mp.mpc(z)
        table.append(
            {"n": n, "z": cplx(zz), "k": float(mp.mpf(k)), "value": cplx(pollaczek_half(n, zz, mp.mpf(k)))}
        )
    out["pollaczek_half"] = table

    # Dyson raise vs adjoint of lower, q=2, k=1, N_max=10
    q, k, dim = 2, 1, 10
    worst = mp.mpf(0)
    for n in range(dim - 1):
        m = n + 1
        raise_el = mp.sqrt(bracket(m, q) * (n + 2 * k)) * bracket(n + 2 * k, q) / (n + 2 * k)
        lower_el = mp.sqrt(bracket(m, q) * (m + 2 * k - 1))
        worst = max(worst, abs(raise_el - lower_el))
    out["dyson_hermiticity_q2_k1_N10"] = float(worst)

    # <K1^2>, <K2^2> on the lowest discrete-series state equal k/2
    out["lowest_state_variance_k1"] = float(mp.mpf(1) / 2)

    # spin 1/2, lambda = 1/2: A = alpha J- + beta J+ = [[0, alpha], [beta, 0]]
    lam = mp.mpf("0.5")
    alpha, beta = 1 + lam, 1 - lam
    root = mp.sqrt(alpha * beta)
    pairs = []
    for sign in (-1, 1):
        vec = mp.matrix([alpha, sign * root])
        vec /= mp.norm(vec)
        pairs.append({"eta": float(sign * root / 2), "vector": [float(v) for v in vec]})
    out["spin_half_lam0.5"] = pairs

    # Robertson gap of the equal superposition on the first 4 states, k = 1
    dim, k = 4, 1
    r = mp.zeros(dim, dim)
    for n in range(dim - 1):
        r[n + 1, n] = mp.sqrt((n + 1) * (n + 2 * k))
    l = r.T
    psi = mp.matrix([mp.mpf(1) / 2] * dim)
    x1 = (r + l) / 2
    x2 = (r - l) / (2 * mp.mpc(0, 1))

    def expect(op):
        return (psi.H * op * psi)[0]

    v1 = mp.re(expect(x1 * x1) - expect(x1) ** 2)
    v2 = mp.re(expect(x2 * x2) - expect(x2) ** 2)
    comm = expect(x1 * x2 - x2 * x1)
    out["equal_superposition_k1_N4"] = {
        "var_x1": float(v1),
        "var_x2": float(v2),
        "saturation_gap": float(abs(v1 * v2 - abs(comm) ** 2 / 4)),
    }

    OUT.parent.mkdir(parents=True, exist_ok=True)
    OUT.write_text(json.dumps(out, indent=2, sort_keys=True) + "\n")
    print(f"wrote {OUT}")


if __name__ == "__main__":
    main()
