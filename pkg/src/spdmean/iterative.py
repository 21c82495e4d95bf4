"""Averaging-type iterations for the geometric mean of two SPD matrices.

All iterations here produce (in exact arithmetic, and without scaling) the
same sequence ``A_k``: arithmetic-harmonic averaging, its uncoupled forms,
the three-terms recurrence, Newton's iteration for the matrix sign of
``[[0, B], [A^-1, 0]]`` and palindromic cyclic reduction (PCR). They differ
in cost per step, in stability and in whether they can be scaled.

Every iteration takes an optional ``callback(k, state)`` called once per
step with a dict of read-only iterates (``A``/``B``, ``X``/``Y``,
``P``/``Q`` and ``gamma`` as applicable).
"""

import math
import time
from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np

from ._linalg import EPS, cholesky, inverse_spd, relative_error, solve_triangular, spectral_radius
from ._linalg import sym_eig, symmetrize
from .exceptions import Diverged, NoConvergence
from .validation import check_spd_pair

SCALINGS = ("none", "determinantal", "spectral")


@dataclass
class IterConfig:
    """Tuning knobs shared by the iterations.

    Parameters
    ----------
    tol : float, default=1e-14
        Relative stopping tolerance.
    maxit : int, default=100
        Maximum number of steps.
    scaling : {'none', 'determinantal', 'spectral'}, default='none'
        Per-step scaling policy, used by the sign-based and three-terms
        iterations.
    min_iter : int, default=0
        Do not stop before this many steps. Setting ``min_iter >= maxit``
        runs exactly ``maxit`` steps and returns without raising.
    check_divergence : bool, default=True
        Raise :class:`Diverged` when the iteration drifts away from its
        accuracy floor.
    diverge_factor : float, default=100
        Growth over the smallest monitored value, once the stop rule is armed,
        that counts as divergence.
    patience : int, default=5
        Steps without a new minimum, once the stop rule is armed, after which
        the accuracy floor is considered reached.
    """

    tol: float = 1e-14
    maxit: int = 100
    scaling: str = "none"
    min_iter: int = 0
    check_divergence: bool = True
    diverge_factor: float = 100.0
    patience: int = 5

    def __post_init__(self):
        if not self.tol > 0:
            raise ValueError(f"tol must be positive, got {self.tol}")
        if self.maxit < 1:
            raise ValueError(f"maxit must be at least 1, got {self.maxit}")
        if self.scaling not in SCALINGS:
            raise ValueError(f"scaling must be one of {SCALINGS}, got {self.scaling!r}")
        if not self.diverge_factor > 1:
            raise ValueError(f"diverge_factor must exceed 1, got {self.diverge_factor}")


@dataclass
class StepRecord:
    k: int
    gamma: float
    update: Optional[float]
    gap: Optional[float]
    rel_error: Optional[float]
    seconds: float


@dataclass
class IterTrace:
    """Per-step convergence history of one run."""

    records: List[StepRecord] = field(default_factory=list)
    status: str = "running"

    @property
    def n_iter(self):
        return self.records[-1].k if self.records else 0

    @property
    def errors(self):
        return np.array([np.nan if r.rel_error is None else r.rel_error for r in self.records])

    @property
    def gammas(self):
        return np.array([r.gamma for r in self.records])


@dataclass(frozen=True)
class ConvergenceBound:
    """Rate parameters of the averaging family.

    ``sigma = max |(l - 1) / (l + 1)|`` over the eigenvalues ``l`` of
    ``A^-1 B`` and ``rho = sigma / (1 + sqrt(1 - sigma^2))``. Averaging
    errors behave like ``rho^(2^k)``.
    """

    sigma: float
    rho: float


class _StopRule:
    """Shared stopping logic.

    Converged when the monitored quantity drops to `tol`. The rule arms once
    the quantity falls below ``sqrt(tol)`` or to 1e-4 of its largest value.
    At the accuracy floor when, once armed, no new minimum is seen
    for `patience` steps (or it stays below eps twice in a row); diverged
    when it then grows by more than `diverge_factor` over its minimum.
    """

    def __init__(self, cfg):
        self.cfg = cfg
        self.best = math.inf
        self.stall = 0
        self.armed = False
        self.peak = 0.0
        self.tiny = 0

    def __call__(self, k, value):
        cfg = self.cfg
        if value is None or not np.isfinite(value):
            if self.armed and cfg.check_divergence and k >= cfg.min_iter:
                return "diverged"
            return None
        self.peak = max(self.peak, value)
        if value <= max(math.sqrt(cfg.tol), 1e-4 * self.peak):
            self.armed = True
        self.tiny = self.tiny + 1 if value < EPS else 0
        if self.armed:
            if value < self.best:
                self.best, self.stall = value, 0
            else:
                self.stall += 1
        if k < cfg.min_iter:
            return None
        if self.armed and cfg.check_divergence and value > cfg.diverge_factor * self.best:
            return "diverged"
        if value <= cfg.tol:
            return "converged"
        if self.tiny >= 2 or (self.armed and self.stall >= cfg.patience):
            return "stagnated"
        return None


class _Recorder:
    def __init__(self, cfg, exact):
        self.cfg = cfg
        self.exact = exact
        self.trace = IterTrace()
        self.rule = _StopRule(cfg)
        self.t0 = time.perf_counter()

    def record(self, k, x, gamma=1.0, update=None, gap=None):
        err = None if self.exact is None else relative_error(symmetrize(x), self.exact)
        self.trace.records.append(
            StepRecord(k, float(gamma), update, gap, err, time.perf_counter() - self.t0)
        )

    def check(self, k, value):
        status = self.rule(k, value)
        if status is not None:
            self.trace.status = status
        return status

    def finish(self, result, status, name):
        """Return ``(result, trace)`` or raise on failure."""
        result = symmetrize(result)
        if status == "diverged":
            self.trace.status = "diverged"
            raise Diverged(f"{name} diverged after reaching its accuracy floor", result, self.trace)
        if status is None:
            if self.cfg.min_iter >= self.cfg.maxit:
                self.trace.status = "fixed"
                return result, self.trace
            self.trace.status = "maxit"
            raise NoConvergence(f"{name} did not converge in {self.cfg.maxit} steps", result, self.trace)
        return result, self.trace


def _notify(callback, k, **state):
    # iterates are handed out as read-only views
    if callback is not None:
        for v in state.values():
            if isinstance(v, np.ndarray):
                v.setflags(write=False)
        callback(k, state)


def _rel(x, y):
    return float(np.linalg.norm(x - y) / np.linalg.norm(y))


def _logabsdet(m):
    return np.linalg.slogdet(m)[1]


def _prepare(a, b, config, exact):
    a, b = check_spd_pair(a, b)
    cfg = IterConfig() if config is None else config
    if exact is not None:
        exact = np.asarray(exact, dtype=float)
    return a, b, cfg, exact


def averaging_coupled(a, b, config=None, exact=None, callback=None):
    """Coupled arithmetic-harmonic averaging.

    ``A_{k+1} = (A_k + B_k) / 2`` and ``B_{k+1} = 2 (A_k^-1 + B_k^-1)^-1``
    (evaluated as ``2 B_k (A_k + B_k)^-1 A_k``),
    starting from ``A_0 = a``, ``B_0 = b``. Both sequences converge
    quadratically and monotonically to ``a # b``. Stops when the coupling
    gap ``||A_k - B_k|| / ||A_k||`` reaches ``config.tol`` and returns
    ``(A_k + B_k) / 2``.

    Parameters
    ----------
    a, b : ndarray, shape (n, n)
    config : IterConfig, optional
    exact : ndarray, optional
        When given, the relative error of ``A_k`` is recorded at each step.
    callback : callable, optional
        ``callback(k, {"A": A_k, "B": B_k})`` at every step.

    Returns
    -------
    g : ndarray, shape (n, n)
    trace : IterTrace
    """
    a, b, cfg, exact = _prepare(a, b, config, exact)
    rec = _Recorder(cfg, exact)
    ak, bk = a, b
    prev = None
    for k in range(cfg.maxit + 1):
        gap = _rel(bk, ak)
        rec.record(k, ak, update=None if prev is None else _rel(ak, prev), gap=gap)
        _notify(callback, k, A=ak, B=bk)
        status = rec.check(k, gap) if k < cfg.maxit else None
        if status is not None or k == cfg.maxit:
            return rec.finish(0.5 * (ak + bk), status, "averaging iteration")
        prev = ak
        s = ak + bk
        # harmonic step as 2 B (A + B)^-1 A: one solve, no explicit inverses
        ak, bk = 0.5 * s, symmetrize(2.0 * bk @ np.linalg.solve(s, ak))


def averaging_uncoupled(a, b, config=None, start="A", form="A", exact=None, callback=None):
    """Single-sequence averaging iteration.

    ``form='A'``: ``X_{k+1} = (X_k + a X_k^-1 b) / 2``;
    ``form='B'``: ``X_{k+1} = 2 (X_k^-1 + b^-1 X_k a^-1)^-1``.
    ``X_0`` is ``a`` or ``b`` according to `start`.

    Cheaper in storage than the coupled form but not always stable: it
    amplifies rounding errors near the limit when the extreme eigenvalues
    of ``(b a^-1)^½`` are more than a factor 3 apart (see
    :func:`instability_radius`). Iterates are deliberately not
    symmetrized between steps.

    Raises
    ------
    Diverged
        When the relative update grows by ``config.diverge_factor`` over
        its minimum after having settled.
    """
    a, b, cfg, exact = _prepare(a, b, config, exact)
    if start not in ("A", "B") or form not in ("A", "B"):
        raise ValueError("start and form must each be 'A' or 'B'")
    rec = _Recorder(cfg, exact)
    x = a.copy() if start == "A" else b.copy()
    if form == "B":
        a_inv = np.linalg.inv(a)
    rec.record(0, x)
    _notify(callback, 0, X=x)
    status = None
    for k in range(1, cfg.maxit + 1):
        if form == "A":
            x_new = 0.5 * (x + a @ np.linalg.solve(x, b))
        else:
            x_new = 2.0 * np.linalg.inv(np.linalg.inv(x) + np.linalg.solve(b, x) @ a_inv)
        update = _rel(x_new, x) if np.all(np.isfinite(x_new)) else math.inf
        x = x_new
        rec.record(k, x, update=update)
        _notify(callback, k, X=x)
        status = rec.check(k, update)
        if status is not None:
            break
    return rec.finish(x, status, "uncoupled averaging iteration")


def _det_gamma(x, y, n):
    # |det(X) det(Y)|^(-1/(2n))
    return math.exp(-(_logabsdet(x) + _logabsdet(y)) / (2 * n))


def _spectral_gamma(x, y, xi, yi, n):
    """``sqrt(rho((XY)^-1) / rho(XY))``; falls back to determinantal scaling."""
    try:
        r = spectral_radius(x @ y, tol=1e-6, maxit=50)
        r_inv = spectral_radius(yi @ xi, tol=1e-6, maxit=50)
    except NoConvergence:
        return _det_gamma(x, y, n)
    return math.sqrt(r_inv / r)


def sign_scaled(a, b, config=None, exact=None, callback=None):
    """Scaled Newton iteration for the matrix sign function.

    Applies ``C <- (g C + (g C)^-1) / 2`` to ``C = [[0, b], [a^-1, 0]]``,
    whose sign is ``[[0, a#b], [(a#b)^-1, 0]]``. In terms of the blocks::

        X_0 = b,  Y_0 = a^-1
        X_{k+1} = (g_k X_k + (g_k Y_k)^-1) / 2
        Y_{k+1} = (g_k Y_k + (g_k X_k)^-1) / 2

    Unscaled, ``X_k`` and ``Y_k^-1`` coincide with the averaging pair
    ``A_k``, ``B_k``. ``config.scaling`` selects ``g_k``:

    * ``'determinantal'``: ``|det X_k det Y_k|^(-1/(2n))``
    * ``'spectral'``: ``sqrt(rho((X_k Y_k)^-1) / rho(X_k Y_k))``, radii from
      a few power-method steps (determinantal fallback if those stall).

    Stops on the coupling gap ``||g X_k - (g Y_k)^-1|| / ||g X_k||``.
    """
    a, b, cfg, exact = _prepare(a, b, config, exact)
    n = a.shape[0]
    rec = _Recorder(cfg, exact)
    x, y = b.copy(), np.linalg.inv(a)
    for k in range(cfg.maxit + 1):
        xi, yi = np.linalg.inv(x), np.linalg.inv(y)
        if cfg.scaling == "determinantal":
            g = _det_gamma(x, y, n)
        elif cfg.scaling == "spectral":
            g = _spectral_gamma(x, y, xi, yi, n)
        else:
            g = 1.0
        gx, yinv_g = g * x, yi / g
        gap = _rel(yinv_g, gx)
        rec.record(k, x, gamma=g, gap=gap)
        _notify(callback, k, X=x, Y=y, gamma=g)
        status = rec.check(k, gap) if k < cfg.maxit else None
        if status is not None or k == cfg.maxit:
            return rec.finish(0.5 * (gx + yinv_g), status, "sign iteration")
        x, y = 0.5 * (gx + yinv_g), 0.5 * (g * y + xi / g)


def three_terms(a, b, config=None, exact=None, callback=None):
    """Three-terms form of the averaging iteration, optionally scaled.

    Unscaled::

        A_0 = a,  A_1 = (a + b) / 2
        A_{k+2} = (A_{k+1} + 2 A_k - A_k A_{k+1}^-1 A_k) / 2

    With ``config.scaling='determinantal'`` each new iterate ``X_k`` gets
    ``g_k = |det(X_k)^2 / (det a det b)|^(-1/(2n))`` and the recurrence runs
    on the scaled iterates ``S_k = g_k X_k``::

        X_0 = a,  X_1 = (g_0 a + b / g_0) / 2
        X_{k+2} = (S_{k+1} + 2 S_k / g_{k+1} - S_k S_{k+1}^-1 S_k) / 2

    so that ``X_k`` reproduces the determinantally scaled sign iterates of
    the swapped pair ``(b, a)``. Stops on the relative update of ``X_k``.
    """
    a, b, cfg, exact = _prepare(a, b, config, exact)
    if cfg.scaling == "spectral":
        raise ValueError("three_terms supports scaling 'none' or 'determinantal'")
    n = a.shape[0]
    scaled = cfg.scaling == "determinantal"
    logdet_ab = _logabsdet(a) + _logabsdet(b)

    def gamma(x):
        if not scaled:
            return 1.0
        return math.exp(-(2 * _logabsdet(x) - logdet_ab) / (2 * n))

    rec = _Recorder(cfg, exact)
    x0 = a
    g0 = gamma(x0)
    rec.record(0, x0, gamma=g0)
    _notify(callback, 0, X=x0, gamma=g0)
    x1 = 0.5 * (g0 * a + b / g0)
    g1 = gamma(x1)
    upd = _rel(x1, x0)
    rec.record(1, x1, gamma=g1, update=upd)
    _notify(callback, 1, X=x1, gamma=g1)
    status = rec.check(1, upd)
    s_prev, s_cur, x_cur, g_cur = g0 * x0, g1 * x1, x1, g1
    k = 1
    while status is None and k < cfg.maxit:
        k += 1
        x_new = 0.5 * (s_cur + 2.0 * s_prev / g_cur - s_prev @ np.linalg.solve(s_cur, s_prev))
        g_new = gamma(x_new)
        upd = _rel(x_new, x_cur)
        rec.record(k, x_new, gamma=g_new, update=upd)
        _notify(callback, k, X=x_new, gamma=g_new)
        status = rec.check(k, upd)
        s_prev, s_cur, x_cur, g_cur = s_cur, g_new * x_new, x_new, g_new
    return rec.finish(x_cur, status, "three-terms iteration")


def pcr(a, b, config=None, exact=None, callback=None):
    """Palindromic cyclic reduction.

    ``P_0 = (a - b) / 4``, ``Q_0 = (a + b) / 2``,
    ``P_{k+1} = -P_k Q_k^-1 P_k``, ``Q_{k+1} = Q_k - 2 P_k Q_k^-1 P_k``.
    ``Q_k`` equals the averaging iterate ``A_{k+1}`` and tends to ``a # b``
    while ``P_k = -(A_k - B_k) / 4`` (for ``k >= 1``) tends to zero. Stops when ``||P_k|| / ||Q_k|| <= tol``.
    """
    a, b, cfg, exact = _prepare(a, b, config, exact)
    rec = _Recorder(cfg, exact)
    p, q = 0.25 * (a - b), 0.5 * (a + b)
    for k in range(cfg.maxit + 1):
        gap = float(np.linalg.norm(p) / np.linalg.norm(q))
        rec.record(k, q, gap=gap)
        _notify(callback, k, P=p, Q=q)
        status = rec.check(k, gap) if k < cfg.maxit else None
        if status is not None or k == cfg.maxit:
            return rec.finish(q, status, "cyclic reduction")
        w = p @ np.linalg.solve(q, p)
        p, q = symmetrize(-w), symmetrize(q - 2.0 * w)


def _pencil_eigenvalues(a, b):
    """Eigenvalues of ``a^-1 b``, ascending, via ``R^-T b R^-1`` (``a = R^T R``)."""
    r = cholesky(a)
    x = solve_triangular(r, solve_triangular(r, b, side="left", transposed=True), side="right")
    return sym_eig(x)[0]


def convergence_bound(a, b):
    """Rate parameters ``sigma`` and ``rho`` of the averaging family for ``(a, b)``."""
    a, b = check_spd_pair(a, b)
    lam = _pencil_eigenvalues(a, b)
    sigma = float(np.max(np.abs((lam - 1) / (lam + 1))))
    rho = sigma / (1 + math.sqrt(max(0.0, 1 - sigma * sigma)))
    return ConvergenceBound(sigma=sigma, rho=rho)


def instability_ratio(a, b):
    """Ratio ``lambda_max / lambda_min`` of the eigenvalues of ``(b a^-1)^½``.

    The uncoupled averaging iteration is expected to be unstable when this
    exceeds 3.
    """
    a, b = check_spd_pair(a, b)
    lam = _pencil_eigenvalues(a, b)
    return float(math.sqrt(lam[-1] / lam[0]))


def instability_radius(a, b):
    """Spectral radius of the derivative of the uncoupled averaging map at ``a # b``.

    The derivative is ``(I - Z (x) Z^-1) / 2`` with ``Z = (b a^-1)^½``, whose
    spectral radius is ``(lambda_max / lambda_min - 1) / 2`` over the
    eigenvalues of ``Z``. Values above 1 predict that rounding errors are
    amplified near the limit.
    """
    return 0.5 * (instability_ratio(a, b) - 1.0)
