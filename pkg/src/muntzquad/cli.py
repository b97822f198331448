"""Command-line runner for the quadrature, node, operational-matrix and
solver experiments.

Each ``--command`` writes one CSV (header row, 17 significant digits) or a
JSON document ``{"metadata": ..., "rows": [...]}``. Exit status: 0 on
success, 2 on a configuration error, 3 on a numerical failure.
"""

import argparse
import csv
import io
import json
import logging
import math
import platform
import sys
import time

import numpy as np
import scipy

from . import __version__
from .basis import MuntzBasisParams
from .integrate import quad
from .muntz import WeightFunction, muntz_legendre, orthogonal_monic_sequence, roots
from .operational import build_F, build_omega, build_P, omega_condition
from .problems import BUILTINS, DEFAULT_ALPHA, TABLE_GRIDS, TABLE_LAMBDAS, get_problem
from .quadrature import (
    bernstein_ellipse_max,
    error_bound_analytic,
    error_bound_bv,
    gauss_muntz_rule,
    interpolatory_weights,
    node_distance_study,
)
from .solver import FDEProblem, caputo_power_series, l2_error, solve

log = logging.getLogger("muntzquad")

COMMANDS = ("exactness", "nodes", "approx", "omega", "solve", "bounds")
DEFAULT_LAMBDAS = [1.0, 0.75, 0.5, 0.25]


class ConfigError(ValueError):
    pass


class NumericalFailure(ArithmeticError):
    """Raised after the report is written when some rows failed."""


def _fmt(v):
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (float, np.floating)):
        return format(float(v), ".17g")
    if isinstance(v, (list, tuple, np.ndarray)):
        return " ".join(_fmt(x) for x in v)
    return "" if v is None else str(v)


def _jsonable(v):
    if isinstance(v, np.ndarray):
        return [_jsonable(x) for x in v]
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if isinstance(v, (np.bool_,)):
        return bool(v)
    if isinstance(v, np.floating):
        return float(v)
    if isinstance(v, np.integer):
        return int(v)
    if isinstance(v, float) and not math.isfinite(v):
        return None
    return v


def write_report(rows, columns, config, fmt, out, wall_time, extra=None):
    if fmt == "json":
        doc = {
            "metadata": {
                "config": config,
                "versions": {"muntzquad": __version__, "numpy": np.__version__,
                             "scipy": scipy.__version__, "python": platform.python_version()},
                "wall_time_s": wall_time,
                **(extra or {}),
            },
            "rows": [{k: _jsonable(r.get(k)) for k in columns} for r in rows],
        }
        text = json.dumps(doc, indent=2)
    else:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\r\n")
        writer.writerow(columns)
        for r in rows:
            writer.writerow([_fmt(r.get(k)) for k in columns])
        text = buf.getvalue()
    if out in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(out, "w", newline="") as fh:
            fh.write(text)


def _reference(p, w):
    return w.integrate(p, epsabs=1e-15, epsrel=1e-14)


def run_exactness(cfg):
    """Gauss-Müntz exactness: the two Müntz-Legendre cases, a random sweep,
    a constant integrand and the classical Gauss reduction at lam = 1."""
    rows = []
    w = WeightFunction.power(1.0, 1.0)
    for degree, N in ((5, 2), (7, 3)):
        L = muntz_legendre(degree, 0.75)
        rule = gauss_muntz_rule(w, 0.75, N)
        ref = _reference(L, w)
        val = rule(L)
        rows.append(dict(case=f"muntz_legendre_L{degree}", degree=degree, N=N, **{"lambda": 0.75},
                         seed=None, reference=ref, rule=val, error=abs(val - ref)))

    rng = np.random.default_rng(cfg.seed)
    lambdas = cfg.lambdas or DEFAULT_LAMBDAS
    for lam in lambdas:
        for N in range(0, 4):
            rule = gauss_muntz_rule(w, lam, N)
            coeffs = rng.uniform(-1.0, 1.0, 2 * N + 2)
            coeffs[-1] = coeffs[-1] or 1.0
            p = _muntz(lam, coeffs)
            ref = _reference(p, w)
            val = rule(p)
            rows.append(dict(case="random", degree=2 * N + 1, N=N, **{"lambda": lam},
                             seed=cfg.seed, reference=ref, rule=val, error=abs(val - ref)))

    rule = gauss_muntz_rule(w, 0.75, 0)
    rows.append(dict(case="constant", degree=0, N=0, **{"lambda": 0.75}, seed=None,
                     reference=w.mass, rule=rule(lambda t: 1.0), error=abs(rule(lambda t: 1.0) - w.mass)))

    unit = WeightFunction.unit(0.0, 1.0)
    for N in range(0, 6):
        rule = gauss_muntz_rule(unit, 1.0, N)
        x, wt = np.polynomial.legendre.leggauss(N + 1)
        diff = max(np.max(np.abs(rule.nodes - 0.5 * (x + 1))), np.max(np.abs(rule.weights - 0.5 * wt)))
        rows.append(dict(case="classical_gauss", degree=2 * N + 1, N=N, **{"lambda": 1.0},
                         seed=None, reference=None, rule=None, error=diff))
    cols = ["case", "degree", "N", "lambda", "seed", "reference", "rule", "error"]
    return rows, cols, {}


def _muntz(lam, coeffs):
    def p(t):
        y = np.asarray(t, dtype=float) ** lam
        return np.polynomial.polynomial.polyval(y, coeffs)
    return p


def _strictly_increasing(v):
    return bool(np.all(np.diff(v) > 0))


def run_nodes(cfg):
    """Zeros of orthogonal Müntz polynomials for the weight (2 - t)^p."""
    lambdas = sorted(cfg.lambdas or DEFAULT_LAMBDAS, reverse=True)
    rows = []
    table = {}
    for degree in (5, 7):
        for p in (1, 2, 3):
            for rec in node_distance_study(lambdas, p, degree, 2.0):
                table[degree, p, rec["lambda"]] = rec
    for degree in (5, 7):
        for p in (1, 2, 3):
            mono_lam = _strictly_increasing([table[degree, p, lam]["distance_norm"] for lam in lambdas])
            for lam in lambdas:
                mono_p = _strictly_increasing([table[degree, q, lam]["distance_norm"] for q in (1, 2, 3)])
                rec = table[degree, p, lam]
                rows.append(dict(degree=degree, p=p, **{"lambda": lam}, roots=rec["roots"],
                                 distance_norm=rec["distance_norm"],
                                 monotone_in_lambda=mono_lam, monotone_in_p=mono_p))
    cols = ["degree", "p", "lambda", "roots", "distance_norm", "monotone_in_lambda", "monotone_in_p"]
    return rows, cols, {}


def run_approx(cfg):
    """int_0^2 exp(-2t) sin(3 t^lam) dt with nodes from the weight (2 - t)."""
    lambdas = sorted(cfg.lambdas or DEFAULT_LAMBDAS, reverse=True)
    n_max = 8
    w_exp = WeightFunction(lambda t: np.exp(-2.0 * np.asarray(t, dtype=float)), 0.0, 2.0)
    w_nodes = WeightFunction.power(2.0, 1.0)
    errors = {}
    rows = []
    for lam in lambdas:
        def f(t, lam=lam):
            return np.sin(3.0 * np.asarray(t, dtype=float) ** lam)
        ref = w_exp.integrate(f, epsabs=1e-15, epsrel=1e-14)
        ref_check = w_exp.integrate(f, epsabs=1e-13, epsrel=1e-12)
        seq = orthogonal_monic_sequence(w_nodes, lam, n_max + 1)
        for N in range(n_max + 1):
            rule = interpolatory_weights(roots(seq, N + 1), lam, w_exp)
            err = abs(rule(f) - ref)
            errors[lam, N] = err
            rows.append(dict(**{"lambda": lam}, N=N, reference=ref, rule=rule(f), error=err,
                             reference_consistency=abs(ref - ref_check)))
    mean_log = [np.mean([math.log10(max(errors[lam, N], 1e-300)) for N in range(n_max + 1)])
                for lam in lambdas]
    ordered_mean = bool(np.all(np.diff(mean_log) < 0))
    for r in rows:
        per_n = [errors[lam, r["N"]] for lam in lambdas]
        r["ordered_at_N"] = bool(np.all(np.diff(per_n) < 0))
        r["ordered_mean"] = ordered_mean
    cols = ["lambda", "N", "reference", "rule", "error", "reference_consistency",
            "ordered_at_N", "ordered_mean"]
    return rows, cols, {"mean_log10_error": dict(zip(map(str, lambdas), mean_log))}


def run_omega(cfg):
    params = MuntzBasisParams(cfg.J or 2, cfg.M or 3, (cfg.lambdas or [0.75])[0])
    alpha = cfg.alpha if cfg.alpha is not None else 1.0
    if cfg.matrix == "omega":
        mat = build_omega(params)
    elif cfg.matrix == "F":
        mat = build_F(params, alpha, cfg.t)
    else:
        mat = build_P(params, alpha, cfg.t)
    cond = omega_condition(params)
    log.info("Omega condition number %.6g", cond)
    cols = ["row"] + [f"c{j + 1}" for j in range(params.K)]
    rows = [{"row": i + 1, **{f"c{j + 1}": v for j, v in enumerate(r)}}
            for i, r in enumerate(mat.entries)]
    return rows, cols, {"omega_condition_number": cond, "matrix": cfg.matrix}


def parse_problem_file(path):
    """``key=value`` lines: ``alpha``, ``y0``, ``rhs`` and optional ``label``.

    ``rhs`` is ``builtin:<name>``, ``series:<exp>:<coeff>,...`` (``f(t)`` as
    a power series) or ``caputo:<exp>:<coeff>,...`` (``f`` is the Caputo
    derivative of that series, whose sum plus ``y0`` is then the exact
    solution).
    """
    spec = {}
    with open(path) as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ConfigError(f"{path}:{lineno}: expected key=value")
            k, v = (s.strip() for s in line.split("=", 1))
            spec[k] = v
    try:
        alpha = float(spec.get("alpha", 1.0))
        y0 = float(spec.get("y0", 0.0))
    except ValueError as exc:
        raise ConfigError(f"{path}: {exc}") from exc
    rhs = spec.get("rhs")
    if rhs is None:
        raise ConfigError(f"{path}: missing rhs=")
    kind, _, body = rhs.partition(":")
    label = spec.get("label", "custom")
    if kind == "builtin":
        if body not in BUILTINS:
            raise ConfigError(f"unknown builtin {body!r}")
        base = get_problem(body, alpha)
        if y0 != 0.0:
            raise ConfigError("builtin problems have y0 = 0")
        return base
    if kind not in ("series", "caputo"):
        raise ConfigError(f"unknown rhs kind {kind!r}")
    try:
        terms = [tuple(float(x) for x in item.split(":")) for item in body.split(",") if item]
        exps, coeffs = zip(*terms)
    except ValueError as exc:
        raise ConfigError(f"bad series descriptor {body!r}") from exc
    if not 0 < alpha <= 1:
        raise ConfigError("alpha must lie in (0, 1]")
    if kind == "series":
        return FDEProblem(alpha, lambda t, y: float(sum(c * t ** g for g, c in terms)), y0,
                          rhs_jacobian=lambda t, y: 0.0, label=label)
    return FDEProblem(
        alpha,
        lambda t, y: caputo_power_series(exps, coeffs, alpha, t) if t > 0 else 0.0,
        y0,
        rhs_jacobian=lambda t, y: 0.0,
        label=label,
        exact=lambda t: y0 + sum(c * t ** g for g, c in terms),
    )


def run_solve(cfg):
    """Convergence table of e_y over (J, M, lambda)."""
    if cfg.example == "custom":
        if not cfg.problem:
            raise ConfigError("--example custom needs --problem FILE")
        problem = parse_problem_file(cfg.problem)
        key = problem.label if problem.label in TABLE_GRIDS else "ex1"
    else:
        alpha = cfg.alpha if cfg.alpha is not None else DEFAULT_ALPHA[cfg.example]
        problem = get_problem(cfg.example, alpha)
        key = cfg.example
    if cfg.J or cfg.M:
        grid = [(cfg.J or 2, cfg.M or 3)]
    else:
        grid = TABLE_GRIDS[key]
    lambdas = cfg.lambdas or TABLE_LAMBDAS[key]
    rows = []
    failures = 0
    for J, M in grid:
        for lam in lambdas:
            row = dict(example=problem.label, J=J, M=M, **{"lambda": lam}, alpha=problem.alpha)
            t0 = time.perf_counter()
            try:
                sol = solve(problem, MuntzBasisParams(J, M, lam))
                row.update(
                    e_y=l2_error(sol, problem.exact) if problem.exact else None,
                    newton_iterations=sol.newton_iterations,
                    residual_norm=sol.residual_norm,
                    status="ok",
                )
            except ArithmeticError as exc:
                failures += 1
                row.update(status="failed", message=str(exc),
                           residual_norm=getattr(exc, "residual", None))
            row["seconds"] = time.perf_counter() - t0
            rows.append(row)
    cols = ["example", "J", "M", "lambda", "alpha", "e_y", "newton_iterations",
            "residual_norm", "status", "message", "seconds"]
    return rows, cols, {"failures": failures}


def run_bounds(cfg):
    """Empirical remainders against both error bounds on [-1, 1], w = 1."""
    w = WeightFunction.unit(-1.0, 1.0)
    k_w = 2.0
    rows = []
    r = 2.0
    M_r = bernstein_ellipse_max(np.exp, r)
    for N in range(1, 7):
        rule = gauss_muntz_rule(w, 1.0, N)
        emp = abs(rule(np.exp) - (math.e - 1.0 / math.e))
        b = error_bound_analytic(k_w, M_r, r, N)
        rows.append(dict(function="exp", N=N, empirical=emp, bound_a=b, bound_b=None, holds=emp <= b))
    for N in range(2, 9):
        rule = gauss_muntz_rule(w, 1.0, N)
        emp = abs(rule(np.abs) - 1.0)
        b = error_bound_bv(k_w, 2.0, 1, N)
        rows.append(dict(function="abs", N=N, empirical=emp, bound_a=None, bound_b=b, holds=emp <= b))
    for fn, key in (("exp", "bound_a"), ("abs", "bound_b")):
        vals = [row[key] for row in rows if row["function"] == fn]
        mono = bool(np.all(np.diff(vals) < 0))
        for row in rows:
            if row["function"] == fn:
                row["bound_monotone"] = mono
    cols = ["function", "N", "empirical", "bound_a", "bound_b", "holds", "bound_monotone"]
    return rows, cols, {"M_r": M_r, "r": r}


RUNNERS = {
    "exactness": run_exactness,
    "nodes": run_nodes,
    "approx": run_approx,
    "omega": run_omega,
    "solve": run_solve,
    "bounds": run_bounds,
}


def build_parser():
    ap = argparse.ArgumentParser(prog="muntzquad", description=__doc__.split("\n\n")[0])
    ap.add_argument("--command", required=True, choices=COMMANDS)
    ap.add_argument("--J", type=int)
    ap.add_argument("--M", type=int)
    ap.add_argument("--lambda", dest="lambdas", type=float, action="append",
                    help="Müntz exponent step; repeat for several values")
    ap.add_argument("--alpha", type=float)
    ap.add_argument("--example", choices=sorted(BUILTINS) + ["custom"], default="ex1")
    ap.add_argument("--problem", help="key=value problem file for --example custom")
    ap.add_argument("--matrix", choices=("omega", "F", "P"), default="omega")
    ap.add_argument("--t", type=float, default=0.75, help="evaluation point for F and P")
    ap.add_argument("--out", default="-")
    ap.add_argument("--format", choices=("csv", "json"), default="csv")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("-v", "--verbose", action="store_true")
    return ap


def validate(cfg):
    for lam in cfg.lambdas or []:
        if not 0 < lam <= 1:
            raise ConfigError(f"--lambda {lam} outside (0, 1]")
    if cfg.alpha is not None and not 0 < cfg.alpha <= 1:
        raise ConfigError(f"--alpha {cfg.alpha} outside (0, 1]")
    if cfg.J is not None and cfg.J < 1:
        raise ConfigError("--J must be >= 1")
    if cfg.M is not None and cfg.M < 1:
        raise ConfigError("--M must be >= 1")
    if not 0 <= cfg.t <= 1:
        raise ConfigError("--t must lie in [0, 1]")


def main(argv=None):
    cfg = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if cfg.verbose else logging.WARNING,
                        format="%(name)s: %(message)s")
    config = {k: v for k, v in vars(cfg).items()}
    t0 = time.perf_counter()
    try:
        validate(cfg)
        rows, cols, extra = RUNNERS[cfg.command](cfg)
    except (ConfigError, KeyError, OSError) as exc:
        print(f"muntzquad: configuration error: {exc}", file=sys.stderr)
        return 2
    except ArithmeticError as exc:
        print(f"muntzquad: numerical failure: {exc}", file=sys.stderr)
        return 3
    try:
        write_report(rows, cols, config, cfg.format, cfg.out, time.perf_counter() - t0, extra)
    except OSError as exc:
        print(f"muntzquad: cannot write report: {exc}", file=sys.stderr)
        return 2
    if extra.get("failures"):
        print(f"muntzquad: {extra['failures']} cell(s) failed", file=sys.stderr)
        return 3
    return 0


if __name__ == "__main__":
    sys.exit(main())
