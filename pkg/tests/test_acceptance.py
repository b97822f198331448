"""Acceptance criteria, one test per criterion.

Each test records a single ``PASS``/``FAIL`` line (shown in the terminal
summary, and on stdout with ``-s``) before asserting.
"""

import math
import time

import numpy as np
import pytest

from muntzquad.basis import MuntzBasisParams, piecewise_power_vector, project, scaling_eval, scaling_vector
from muntzquad.muntz import MuntzPolynomial, WeightFunction, muntz_legendre, orthogonal_monic_sequence
from muntzquad.operational import build_F, build_omega, build_P
from muntzquad.problems import example1, example3, example4, example5
from muntzquad.quadrature import (
    bernstein_ellipse_max,
    error_bound_analytic,
    error_bound_bv,
    gauss_muntz_rule,
    node_distance_study,
)
from muntzquad.solver import l2_error, solve

from conftest import ACCEPTANCE_LINES, gram_matrix, rl_oracle_vector
from test_operational import REFERENCE_OMEGA_BLOCK, scaling_rl_oracle

W1T = WeightFunction.power(1.0, 1.0)

REFERENCE_EX1 = {
    (2, 2): 3.2510e-02, (2, 3): 1.3959e-03, (2, 4): 1.3899e-16,
    (3, 2): 8.2362e-03, (3, 3): 8.6785e-05, (3, 4): 8.0865e-17,
    (4, 2): 2.1317e-03, (4, 3): 5.4644e-06, (4, 4): 2.3108e-16,
}
REFERENCE_EX3_J4M4 = {1.0: 1.6453e-03, 0.75: 8.4347e-04, 0.5: 6.6394e-04, 0.25: 9.3044e-03}
GRID_3X3 = [(J, M) for J in (2, 3, 4) for M in (2, 3, 4)]


def report(tag, ok, detail):
    line = f"[{'PASS' if ok else 'FAIL'}] {tag}: {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line


def e_y(problem, J, M, lam):
    return l2_error(solve(problem, MuntzBasisParams(J, M, lam)), problem.exact)


def test_c01_exactness_legendre_cases():
    t0 = time.perf_counter()
    errs = []
    for degree, N in ((5, 2), (7, 3)):
        L = muntz_legendre(degree, 0.75)
        rule = gauss_muntz_rule(W1T, 0.75, N)
        errs.append(abs(rule(L) - W1T.integrate(L, epsabs=1e-16, epsrel=1e-14)))
    dt = time.perf_counter() - t0
    report("C1 exactness L5/N=2, L7/N=3", max(errs) <= 1e-12 and dt < 1.0,
           f"errors {errs[0]:.2e}, {errs[1]:.2e} (tol 1e-12), {dt:.2f}s (< 1s)")


def test_c02_randomized_exactness():
    t0 = time.perf_counter()
    rng = np.random.default_rng(12345)
    rules = {}
    worst = 0.0
    for _ in range(50):
        lam = float(rng.choice([0.25, 0.5, 0.75, 1.0]))
        N = int(rng.integers(0, 7))
        degree = int(rng.integers(0, 2 * N + 2))
        c = rng.uniform(-1.0, 1.0, degree + 1)
        c[-1] = c[-1] if c[-1] != 0 else 1.0
        p = MuntzPolynomial(lam, c)
        if (lam, N) not in rules:
            rules[lam, N] = gauss_muntz_rule(W1T, lam, N)
        ref = W1T.integrate(p, epsabs=1e-16, epsrel=1e-14)
        worst = max(worst, abs(rules[lam, N](p) - ref) / abs(ref))
    # sharpness: t**((2N+2) lam) is one degree too high
    lam, N = 0.75, 2
    witness = lambda t: np.asarray(t, dtype=float) ** ((2 * N + 2) * lam)
    ref = W1T.integrate(witness)
    sharp = abs(gauss_muntz_rule(W1T, lam, N)(witness) - ref) / ref
    dt = time.perf_counter() - t0
    report("C2 randomized exactness", worst <= 1e-10 and sharp > 1e-6 and dt < 30,
           f"max rel err {worst:.2e} over 50 polys (tol 1e-10); degree-{2 * N + 2} witness "
           f"rel err {sharp:.2e} (> 1e-6); {dt:.1f}s (< 30s)")


def test_c03_classical_gauss_reduction():
    worst = 0.0
    for N in range(0, 9):
        rule = gauss_muntz_rule(WeightFunction.unit(0.0, 1.0), 1.0, N)
        x, w = np.polynomial.legendre.leggauss(N + 1)
        worst = max(worst, np.max(np.abs(rule.nodes - 0.5 * (x + 1))),
                    np.max(np.abs(rule.weights - 0.5 * w)))
    report("C3 lambda=1 gives Gauss-Legendre", worst <= 1e-12,
           f"max node/weight deviation {worst:.2e} for N <= 8 (tol 1e-12)")


def test_c04_omega_golden():
    omega = build_omega(MuntzBasisParams(2, 3, 0.75)).entries
    expected = np.kron(np.eye(2), REFERENCE_OMEGA_BLOCK)
    dev = np.max(np.abs(omega - expected))
    report("C4 Omega(2, 3, 0.75) golden", dev <= 5e-5,
           f"max deviation {dev:.2e} from the 4-d.p. reference matrix (tol 5e-5)")


def test_c05_operational_consistency():
    t0 = time.perf_counter()
    rng = np.random.default_rng(2024)
    worst_F = worst_P = 0.0
    for _ in range(20):
        params = MuntzBasisParams(int(rng.integers(1, 4)), int(rng.integers(1, 5)),
                                  float(rng.choice([0.5, 0.75, 1.0])))
        t, alpha = float(rng.uniform(0.0, 1.0)), float(rng.uniform(0.05, 1.0))
        F = build_F(params, alpha, t)
        P = build_P(params, alpha, t)
        worst_F = max(worst_F, np.max(np.abs(F @ piecewise_power_vector(params, t)
                                             - rl_oracle_vector(params, alpha, t))))
        worst_P = max(worst_P, np.max(np.abs(P @ scaling_vector(params, t)
                                             - scaling_rl_oracle(params, alpha, t))))
    dt = time.perf_counter() - t0
    report("C5 F T(t) and P Phi(t) vs adaptive RL integrals",
           max(worst_F, worst_P) <= 1e-8 and dt < 60,
           f"max |F T - I^a T| {worst_F:.2e}, max |P Phi - I^a Phi| {worst_P:.2e} (tol 1e-8); {dt:.1f}s")


def test_c06_example1_grid():
    t0 = time.perf_counter()
    prob = example1(1.0)
    bad = []
    parts = []
    for J, M in GRID_3X3:
        e = e_y(prob, J, M, 1.0)
        ref = REFERENCE_EX1[J, M]
        ok = e <= 1e-12 if M == 4 else 0.1 <= e / ref <= 10
        parts.append(f"({J},{M}) {e:.3e}")
        if not ok:
            bad.append((J, M))
    dt = time.perf_counter() - t0
    report("C6 Example 1 grid (lambda=1)", not bad and dt < 60,
           f"{'; '.join(parts)}; outside tolerance: {bad or 'none'}; {dt:.1f}s (< 60s)")


def test_c07_table5():
    prob = example4(1.0)
    col1 = {(J, M): e_y(prob, J, M, 1.0) for J, M in GRID_3X3}
    col05 = {(J, 3): e_y(prob, J, 3, 0.5) for J in (2, 3, 4)}
    ok = max(col1.values()) <= 1e-11 and max(col05.values()) <= 1e-11
    report("C7 Example 4 grid (nonlinear)", ok,
           f"lambda=1 max {max(col1.values()):.2e} over 9 cells; lambda=0.5 M=3 rows "
           + ", ".join(f"{v:.2e}" for v in col05.values()) + " (tol 1e-11)")


@pytest.fixture(scope="module")
def example5_grid():
    prob = example5(0.75)
    return {(lam, M): e_y(prob, 2, M, lam) for lam in (1.0, 0.75, 0.5, 0.25) for M in (4, 5, 6)}


def test_c08a_example5_machine_precision_cell(example5_grid):
    e = example5_grid[0.75, 6]
    report("C8a Example 5 cell (J=2, M=6, lambda=0.75)", e <= 1e-10, f"e_y {e:.2e} (tol 1e-10)")


@pytest.mark.parametrize("lam", [1.0, 0.75, 0.5, 0.25])
def test_c08b_example5_decreasing_in_M(example5_grid, lam):
    col = [example5_grid[lam, M] for M in (4, 5, 6)]
    ok = col[0] > col[1] > col[2]
    report(f"C8b Example 5 lambda={lam} strictly decreasing in M", ok,
           "M=4,5,6: " + ", ".join(f"{v:.3e}" for v in col))


def test_c09_table4_trend():
    prob = example3(1.0)
    row = {lam: e_y(prob, 4, 4, lam) for lam in (1.0, 0.75, 0.5, 0.25)}
    two_smallest = set(sorted(row, key=row.get)[:2])
    within = all(0.1 <= row[lam] / REFERENCE_EX3_J4M4[lam] <= 10 for lam in (0.75, 0.5))
    report("C9 Example 3 row J=4, M=4", two_smallest == {0.75, 0.5} and within,
           ", ".join(f"lambda={k}: {v:.3e}" for k, v in row.items())
           + f"; two smallest {sorted(two_smallest)}; within x10 of reference: {within}")


def test_c10_error_bounds():
    w = WeightFunction.unit(-1.0, 1.0)
    rows_a, rows_b = [], []
    M_r = bernstein_ellipse_max(np.exp, 2.0)
    for N in range(1, 7):
        emp = abs(gauss_muntz_rule(w, 1.0, N)(np.exp) - (math.e - 1 / math.e))
        rows_a.append((emp, error_bound_analytic(2.0, M_r, 2.0, N)))
    for N in range(2, 9):
        emp = abs(gauss_muntz_rule(w, 1.0, N)(np.abs) - 1.0)
        rows_b.append((emp, error_bound_bv(2.0, 2.0, 1, N)))
    holds = all(e <= b for e, b in rows_a + rows_b)
    mono = all(np.all(np.diff([b for _, b in rows]) < 0) for rows in (rows_a, rows_b))
    report("C10 remainder bounds", holds and mono,
           f"exp: max |R|/bound {max(e / b for e, b in rows_a):.2e} (N=1..6); "
           f"|t|: max |R|/bound {max(e / b for e, b in rows_b):.2e} (N=2..8); monotone {mono}")


def test_c11_node_behaviour():
    lambdas = [1.0, 0.75, 0.5, 0.25]
    norms = {p: [r["distance_norm"] for r in node_distance_study(lambdas, p, 5, 2.0)] for p in (1, 2, 3)}
    in_lam = all(np.all(np.diff(norms[p]) > 0) for p in norms)
    in_p = all(norms[1][i] < norms[2][i] < norms[3][i] for i in range(4))
    report("C11 degree-5 node distances", in_lam and in_p,
           f"increasing as lambda decreases: {in_lam}; increasing in p: {in_p}; p=1: "
           + ", ".join(f"{v:.4f}" for v in norms[1]))


def test_c12_basis_properties():
    worst_gram = 0.0
    for J in (1, 2, 3):
        for M in range(1, 6):
            for lam in (1.0, 0.75, 0.5, 0.25):
                params = MuntzBasisParams(J, M, lam)
                worst_gram = max(worst_gram, np.max(np.abs(gram_matrix(params) - np.eye(params.K))))
    worst_proj = 0.0
    for J, M, lam in ((3, 5, 0.25), (2, 4, 0.5), (1, 3, 0.75)):
        params = MuntzBasisParams(J, M, lam)
        for n in range(1, params.n_cells + 1):
            for m in range(M):
                c = project(lambda t: scaling_eval(params, n, m, t), params).values
                e = np.zeros(params.K)
                e[params.index(n, m)] = 1.0
                worst_proj = max(worst_proj, np.max(np.abs(c - e)))
    report("C12 basis properties", worst_gram <= 1e-9 and worst_proj <= 1e-10,
           f"Gram deviation {worst_gram:.2e} (tol 1e-9, J<=3, M<=5); "
           f"projection round-trip {worst_proj:.2e} (tol 1e-10)")
