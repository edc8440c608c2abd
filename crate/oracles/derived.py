"""Reference values computed independently of the Rust crate.

Every value is obtained by brute force or closed-form evaluation with numpy and
scipy, then written to crates/core/tests/data/derived.json, which the
`derived` integration test compares against the library.

    python3 oracles/derived.py
"""

import json
import math
import pathlib

import numpy as np
from scipy.optimize import minimize_scalar

OUT = pathlib.Path(__file__).resolve().parent.parent / "crates/core/tests/data/derived.json"


def schatten(a, p):
    s = np.linalg.svd(a, compute_uv=False)
    return s.max() if math.isinf(p) else (s**p).sum() ** (1 / p)


def circle_max(f, grid=20000):
    th = np.linspace(0, 2 * np.pi, grid, endpoint=False)
    vals = np.array([f(t) for t in th])
    k = int(vals.argmax())
    h = 2 * np.pi / grid
    r = minimize_scalar(lambda t: -f(t), bounds=(th[k] - h, th[k] + h), method="bounded",
                        options={"xatol": 1e-13})
    return max(vals[k], -r.fun)


def numerical_radius(a):
    def top(t):
        h = np.exp(1j * t) * a
        return np.linalg.eigvalsh((h + h.conj().T) / 2).max()
    return circle_max(top)


def parallel_max(a, b, p):
    return circle_max(lambda t: schatten(a + np.exp(1j * t) * b, p))


def induced_real_2d(a, p, grid=200000):
    # real 2x2 diagonal operators attain their induced norm on real vectors
    th = np.linspace(0, 2 * np.pi, grid, endpoint=False)
    x = np.stack([np.cos(th), np.sin(th)])
    x = x / (np.abs(x) ** p).sum(axis=0) ** (1 / p)
    y = a @ x
    return ((np.abs(y) ** p).sum(axis=0) ** (1 / p)).max()


def modulus(a):
    w, v = np.linalg.eigh(a.conj().T @ a)
    return v @ np.diag(np.sqrt(np.clip(w, 0, None))) @ v.conj().T


def main():
    e = []

    def add(name, value, tol):
        e.append({"name": name, "value": [float(x) for x in np.atleast_1d(value)], "tol": tol})

    a = np.array([[1, 1], [-1, -1]], dtype=complex)
    i2 = np.eye(2, dtype=complex)
    add("svd_rank_one", np.linalg.svd(a, compute_uv=False), 1e-12)
    add("modulus_rank_one", modulus(a).real.ravel(), 1e-12)
    add("abs_square_rank_one", (a.conj().T @ a).real.ravel(), 1e-12)
    add("eigenvalues_rank_one", np.abs(np.linalg.eigvals(a)), 1e-7)
    add("modulus_identity_plus_rank_one", np.sort(np.linalg.eigvalsh(modulus(i2 + a))), 1e-12)
    add("induced_p3_diag21", induced_real_2d(np.diag([2.0, 1.0]), 3.0), 1e-9)
    jordan = np.array([[0, 1], [0, 0]], dtype=complex)
    add("radius_jordan", numerical_radius(jordan), 1e-9)
    add("jordan_plus_identity_max", parallel_max(jordan, i2, math.inf), 1e-9)
    # [B, A] = ‖A‖^{2-p} tr(|A|^{p-1} U* B) with A = diag(2,1), B = I, p = 3
    p = 3.0
    d = np.array([2.0, 1.0])
    add("sip_identity_diag21_p3", schatten(np.diag(d), p) ** (2 - p) * (d ** (p - 1)).sum(), 1e-12)
    e1e1 = np.array([[1, 0], [0, 0]], dtype=complex)
    e2e1 = np.array([[0, 0], [1, 0]], dtype=complex)
    add("supports_outer_products", [np.linalg.norm(e1e1 @ e2e1.conj().T), np.linalg.norm(e1e1.conj().T @ e2e1)], 1e-12)
    x = e1e1
    add("clarkson_gap_diag10_p3",
        schatten(x + x, 3) ** 3 + schatten(x - x, 3) ** 3 - 2 * (schatten(x, 3) ** 3 + schatten(x, 3) ** 3), 1e-12)
    add("isosceles_diag10_identity_p1", [schatten(x + i2, 1), schatten(x - i2, 1)], 1e-12)
    add("parallel_diag10_identity_p2", [parallel_max(x, i2, 2.0), schatten(x, 2) + schatten(i2, 2)], 1e-9)
    add("parallel_identity_signdiag_p1", [parallel_max(i2, np.diag([1.0, -1.0]).astype(complex), 1.0), 4.0], 1e-9)
    add("diag21_plus_identity_spectral", schatten(np.diag([2.0, 1.0]) + i2, math.inf), 1e-12)
    for n in range(2, 9):
        add(f"radius_shift_{n}", numerical_radius(np.eye(n, k=-1).astype(complex)), 1e-9)

    def witness_value(a, b):
        # max over unit x of |<Ax, Bx>| = w(B* A)
        return numerical_radius(b.conj().T @ a)

    add("witness_diag10_diag01", witness_value(e1e1, np.diag([0.0, 1.0]).astype(complex)), 1e-12)
    add("witness_diag10_identity", witness_value(e1e1, i2), 1e-9)
    OUT.parent.mkdir(parents=True, exist_ok=True)
    OUT.write_text(json.dumps(e, indent=1) + "\n")
    print(f"wrote {len(e)} reference values to {OUT}")


if __name__ == "__main__":
    main()
