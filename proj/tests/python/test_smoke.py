"""Smoke tests for the _kerrdiff extension: a thin pass over the bound API."""

import cmath
import math

import _kerrdiff as kd


def close(a, b, tol=1e-12):
    return abs(a - b) <= tol


def test_params():
    p = kd.make_params(1.0, 0.0, 0.5 / (2 * math.pi), 0.0, 1.0)
    assert close(p.q0, 0.5, 1e-14)
    assert close(p.d, 0.5, 1e-14)
    assert close(p.gamma, 1.0, 1e-14)
    assert close(p.s0, 0.5j, 1e-14)


def test_vacuum_solve():
    p = kd.make_params(1.0, 0.0, 0.5 / (2 * math.pi), 0.0, 1.0)
    out = kd.solve(p, 1.0 + 0.0j, grid_n=257)
    assert out["trace"]["converged"]
    assert out["trace"]["iters_used"] == 1
    assert out["R"] == 0.0
    assert close(out["T"], 1.0, 1e-13)
    assert out["residual"] <= 1e-12


def test_slab_reflectance_matches_fresnel():
    p = kd.make_params(1.0, 0.0, 0.5 / (2 * math.pi), 0.0, 1.0)
    out = kd.solve(p, 1.5 + 0.0j, grid_n=1025)
    k = math.sqrt(1.5)
    r12 = (1.0 - k) / (1.0 + k)
    ph = cmath.exp(2j * k * 1.0)
    r = r12 * (1 - ph) / (1 - r12 * r12 * ph)
    assert abs(out["R"] - abs(r) ** 2) < 1e-6
    assert abs(out["deficit"]) < 1e-10


def test_schemes_agree():
    p = kd.make_params(1.0, 0.0, 0.5 / (2 * math.pi), 0.05, 1.0)
    a = kd.solve(p, 1.5 + 0.0j, grid_n=257, scheme="picard")
    b = kd.solve(p, 1.5 + 0.0j, grid_n=257, scheme="coupled")
    gap = max(abs(x - y) for x, y in zip(a["u"], b["u"]))
    assert gap < 1e-8
    assert b["trace"]["iters_used"] <= a["trace"]["iters_used"]


def test_bvp_agrees_with_ie():
    p = kd.make_params(1.0, 0.0, 0.5 / (2 * math.pi), 0.05, 1.0)
    ie = kd.solve(p, 1.5 + 0.0j, grid_n=513)
    bv = kd.solve_bvp(p, 1.5 + 0.0j, grid_n=513)
    gap = max(abs(x - y) for x, y in zip(ie["u"], bv["u"]))
    assert gap < 10.0 * (1.0 / 512) ** 2


def test_checker_thresholds():
    p = kd.make_params(1.0, 0.0, 0.5 / (2 * math.pi), 0.01, 1.0)
    rep = kd.check(p, 1.5 + 0.0j)
    real = rep["real_case"]
    assert abs(real["alpha0"] - 0.125) < 1e-12
    assert abs(real["alpha1"] - 8.0 / 9.0) < 1e-12
    assert real["satisfied"]
    assert rep["weak_condition"]["satisfied"]


def test_lemma_vs_operator():
    p = kd.make_params(1.0, 0.0, 0.5 / (2 * math.pi), 0.0, 1.0)
    n = 1025
    h = 2 * p.d / (n - 1)
    z = [-p.d + h * i for i in range(n)]
    u0 = [kd.incident_field(zi, p) for zi in z]
    quad = kd.apply_operator("F", u0, p, 1.5 + 0.0j, n, kernel_convention=2)
    closed = kd.lemma3(p)
    gap = max(
        abs(q - sum(c * cmath.exp(1j * f * zi) for c, f in closed))
        for q, zi in zip(quad, z)
    )
    assert gap < 10 * h * h


def main():
    tests = [v for k, v in sorted(globals().items()) if k.startswith("test_")]
    for t in tests:
        t()
        print(f"ok {t.__name__}")
    print(f"{len(tests)} smoke tests passed")


if __name__ == "__main__":
    main()
