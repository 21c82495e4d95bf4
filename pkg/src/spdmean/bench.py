"""Algorithm dispatch, benchmark runner and suites.

Algorithm ids::

    chol-schur  avg  avg-uncoupled-a  avg-uncoupled-b  three-terms
    sign  sign-spectral  sign-det  pcr  polar  polar-svd
    gc:N  minimax:N  cond

Errors are relative Frobenius errors against the case's exact mean, or
against :func:`gmean_reference` when the case has none.
"""

import time
from dataclasses import dataclass, field, replace
from typing import List, Optional

import numpy as np

from . import iterative as it
from .conditioning import CondReport, cond_exact
from .direct import gmean_cholesky_schur, gmean_reference
from .exceptions import NoConvergence, UnknownAlgorithm
from .io import TraceRow
from .polar import PolarConfig, gmean_polar
from .problems import gen_test1, gen_test2, gen_test3
from .quadrature import gauss_chebyshev_mean, minimax_mean
from ._linalg import relative_error

ALGORITHMS = (
    "chol-schur", "avg", "avg-uncoupled-a", "avg-uncoupled-b", "three-terms",
    "sign", "sign-spectral", "sign-det", "pcr", "polar", "polar-svd",
    "gc:N", "minimax:N", "cond",
)
_ITERATIVE = {
    "avg": lambda a, b, c, e: it.averaging_coupled(a, b, c, exact=e),
    "avg-uncoupled-a": lambda a, b, c, e: it.averaging_uncoupled(a, b, c, start="A", form="A", exact=e),
    "avg-uncoupled-b": lambda a, b, c, e: it.averaging_uncoupled(a, b, c, start="B", form="B", exact=e),
    "three-terms": lambda a, b, c, e: it.three_terms(a, b, c, exact=e),
    "sign": lambda a, b, c, e: it.sign_scaled(a, b, replace(c, scaling="none"), exact=e),
    "sign-spectral": lambda a, b, c, e: it.sign_scaled(a, b, replace(c, scaling="spectral"), exact=e),
    "sign-det": lambda a, b, c, e: it.sign_scaled(a, b, replace(c, scaling="determinantal"), exact=e),
    "pcr": lambda a, b, c, e: it.pcr(a, b, c, exact=e),
}


@dataclass
class RunOptions:
    """Knobs shared by all algorithms; each algorithm reads what it needs."""

    t: float = 0.5
    tol: float = 1e-14
    maxit: int = 100
    scaling: str = "none"
    nodes: Optional[int] = None
    min_iter: int = 0
    check_divergence: bool = True

    def iter_config(self):
        return it.IterConfig(tol=self.tol, maxit=self.maxit, scaling=self.scaling,
                             min_iter=self.min_iter, check_divergence=self.check_divergence)


@dataclass
class RunResult:
    rows: List[TraceRow]
    matrix: Optional[np.ndarray]
    status: str
    exit_code: int
    message: str = ""
    report: Optional[CondReport] = None
    trace: Optional[it.IterTrace] = field(default=None, repr=False)


def parse_alg(alg, nodes=None):
    """Split an algorithm id into ``(name, N)``; `N` only for quadratures."""
    name, sep, arg = alg.partition(":")
    if name in ("gc", "minimax"):
        if sep:
            try:
                n = int(arg)
            except ValueError:
                raise UnknownAlgorithm(f"bad node count in {alg!r}") from None
        elif nodes is not None:
            n = int(nodes)
        else:
            raise UnknownAlgorithm(f"{name} needs a node count, as in {name}:16")
        if n < 1:
            raise UnknownAlgorithm(f"node count must be positive in {alg!r}")
        return name, n
    if sep or alg not in ALGORITHMS:
        raise UnknownAlgorithm(f"unknown algorithm {alg!r}; expected one of {', '.join(ALGORITHMS)}")
    return alg, None


def compute_mean(a, b, alg="chol-schur", options=None, exact=None):
    """Compute ``a # b`` (or ``a #_t b``) with the algorithm `alg`.

    Returns ``(g, trace)``; `trace` is None for direct methods.
    Only ``chol-schur`` supports ``t != 0.5``.
    """
    opts = RunOptions() if options is None else options
    name, n = parse_alg(alg, opts.nodes)
    if opts.t != 0.5 and name != "chol-schur":
        raise ValueError(f"{alg} computes only the midpoint t = 0.5")
    if name in ("chol-schur", "cond"):
        return gmean_cholesky_schur(a, b, opts.t), None
    if name in ("polar", "polar-svd"):
        cfg = PolarConfig(method="svd" if name == "polar-svd" else "newton", tol=opts.tol, maxit=opts.maxit)
        return gmean_polar(a, b, cfg, exact=exact, return_trace=True)
    if name == "gc":
        return gauss_chebyshev_mean(a, b, n), None
    if name == "minimax":
        return minimax_mean(a, b, n), None
    return _ITERATIVE[name](a, b, opts.iter_config(), exact)


def _rows_from_trace(case, alg, trace):
    return [TraceRow(case, alg, r.k, r.rel_error, r.gamma, r.seconds) for r in trace.records]


def run(case, alg, options=None):
    """Run one algorithm on one case.

    Exit codes: 0 on success, 2 when the iteration fails to converge or
    diverges (the rows up to that point are still returned). Raises
    :class:`UnknownAlgorithm` for bad ids.
    """
    opts = RunOptions() if options is None else options
    name, n = parse_alg(alg, opts.nodes)
    ref = case.exact
    if ref is None:
        ref = gmean_reference(case.a, case.b) if opts.t == 0.5 else gmean_cholesky_schur(case.a, case.b, opts.t)
    elif opts.t != 0.5:
        raise ValueError("the case's exact value is the midpoint; use t = 0.5")
    t0 = time.perf_counter()
    try:
        g, trace = compute_mean(case.a, case.b, alg, opts, exact=ref)
    except NoConvergence as exc:
        rows = _rows_from_trace(case.name, alg, exc.trace) if exc.trace is not None else []
        return RunResult(rows, exc.result, exc.trace.status if exc.trace else "failed", 2, str(exc),
                         trace=exc.trace)
    seconds = time.perf_counter() - t0
    report = cond_exact(case.a, case.b) if name == "cond" else None
    if trace is not None and trace.records:
        rows = _rows_from_trace(case.name, alg, trace)
        status = trace.status
    else:
        step = n if n is not None else 0
        rows = [TraceRow(case.name, alg, step, relative_error(g, ref), None, seconds)]
        status = "direct"
    return RunResult(rows, g, status, 0, report=report, trace=trace)


SUITE_ALGS = ("chol-schur", "avg", "three-terms", "sign", "sign-spectral", "sign-det", "pcr",
              "polar", "polar-svd")
GC_SWEEP = (1, 2, 4, 8, 16, 32, 64, 128, 256)
MINIMAX_SWEEP = tuple(range(1, 17))


def suite_cases(suite):
    if suite == "test1":
        return [gen_test1(x) for x in (2.0, 10.0, 1000.0)]
    if suite == "test2":
        return [gen_test2(5, t) for t in (1e2, 1e4)]
    if suite == "test3":
        return [gen_test3(5, t) for t in (0.5, 1.5)]
    raise ValueError(f"unknown suite {suite!r}; expected test1, test2 or test3")


def suite_plan(suite):
    """Return ``[(alg, options), ...]`` run on every case of `suite`."""
    if suite == "test3":
        # fixed step count so the drift away from the floor is visible
        fixed = RunOptions(maxit=40, min_iter=40, check_divergence=False)
        return [(alg, fixed) for alg in ("avg", "avg-uncoupled-a", "avg-uncoupled-b")]
    plan = [(alg, RunOptions()) for alg in SUITE_ALGS]
    plan += [(f"gc:{n}", RunOptions()) for n in GC_SWEEP]
    plan += [(f"minimax:{n}", RunOptions()) for n in MINIMAX_SWEEP]
    return plan


def run_suite(suite):
    """Run a suite in a fixed order; returns ``(rows, failures)``."""
    rows, failures = [], []
    for case in suite_cases(suite):
        for alg, opts in suite_plan(suite):
            res = run(case, alg, opts)
            rows.extend(res.rows)
            if res.exit_code:
                failures.append((case.name, alg, res.message))
    return rows, failures
