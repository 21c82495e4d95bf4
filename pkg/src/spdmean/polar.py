"""Geometric mean through the orthogonal polar factor of Cholesky factors."""

import math
import time
from dataclasses import dataclass

import numpy as np

from ._linalg import cholesky, cond2_spd, relative_error, solve_triangular, svd, svd_values, symmetrize
from .exceptions import NoConvergence, NotPositiveDefinite, SingularFactor
from .iterative import IterConfig, IterTrace, StepRecord, _StopRule
from .validation import check_spd_pair, check_square

POLAR_METHODS = ("newton", "svd")
POLAR_SCALINGS = ("none", "optimal", "approximate")


@dataclass
class PolarConfig:
    """Settings of the polar-factor computation.

    Parameters
    ----------
    method : {'newton', 'svd'}, default='newton'
    scaling : {'none', 'optimal', 'approximate'}, default='optimal'
        Newton scaling. ``'optimal'`` uses ``(s_max s_min)^(-1/2)`` from the
        extreme singular values of the iterate; ``'approximate'`` uses the
        Frobenius estimate ``sqrt(||Z^-1||_F / ||Z||_F)``.
    tol : float, default=1e-14
    maxit : int, default=60
    """

    method: str = "newton"
    scaling: str = "optimal"
    tol: float = 1e-14
    maxit: int = 60

    def __post_init__(self):
        if self.method not in POLAR_METHODS:
            raise ValueError(f"method must be one of {POLAR_METHODS}, got {self.method!r}")
        if self.scaling not in POLAR_SCALINGS:
            raise ValueError(f"scaling must be one of {POLAR_SCALINGS}, got {self.scaling!r}")
        if not self.tol > 0:
            raise ValueError(f"tol must be positive, got {self.tol}")


def _newton_polar(m, cfg, monitor=None, callback=None):
    """Scaled Newton iteration ``Z <- (g Z + (g Z)^-T) / 2``; yields the iterates."""
    stop = _StopRule(IterConfig(tol=cfg.tol, maxit=cfg.maxit, check_divergence=False))
    trace = IterTrace()
    t0 = time.perf_counter()
    z = m
    gamma = 1.0
    for k in range(cfg.maxit + 1):
        if callback is not None:
            callback(k, {"Z": z, "gamma": gamma})
        if monitor is not None:
            trace.records.append(StepRecord(k, gamma, None if k == 0 else upd, None, monitor(z),
                                            time.perf_counter() - t0))
        if k > 0:
            status = stop(k, upd)
            if status is not None:
                trace.status = status
                return z, trace
        if k == cfg.maxit:
            break
        try:
            zi = np.linalg.inv(z)
        except np.linalg.LinAlgError:
            raise SingularFactor("polar iterate became singular") from None
        if cfg.scaling == "optimal":
            s_max, s_min = svd_values(z)
            gamma = 1.0 / math.sqrt(s_max * s_min)
        elif cfg.scaling == "approximate":
            gamma = math.sqrt(np.linalg.norm(zi) / np.linalg.norm(z))
        else:
            gamma = 1.0
        z_new = 0.5 * (gamma * z + zi.T / gamma)
        upd = float(np.linalg.norm(z_new - z) / np.linalg.norm(z_new))
        z = z_new
    trace.status = "maxit"
    raise NoConvergence(f"Newton polar iteration did not converge in {cfg.maxit} steps", z, trace)


def polar_factor(m, config=None, return_trace=False, callback=None):
    """Orthogonal factor ``U`` of the polar decomposition ``m = U H``.

    Parameters
    ----------
    m : ndarray, shape (n, n)
        Nonsingular matrix.
    config : PolarConfig, optional
    return_trace : bool, default=False
    callback : callable, optional
        ``callback(k, {"Z": Z_k, "gamma": g})`` at every Newton step.

    Returns
    -------
    u : ndarray, shape (n, n)
    trace : IterTrace
        Only when `return_trace` is true (empty for the SVD method).
    """
    m = check_square(m, "M")
    cfg = PolarConfig() if config is None else config
    if cfg.method == "svd":
        q1, s, q2 = svd(m)
        if s[-1] == 0:
            raise SingularFactor("matrix is singular")
        u = q1 @ q2
        trace = IterTrace(status="direct")
    else:
        u, trace = _newton_polar(m, cfg, monitor=(lambda z: None) if return_trace else None,
                                 callback=callback)
    return (u, trace) if return_trace else u


def gmean_polar(a, b, config=None, exact=None, return_trace=False, swap=True, callback=None):
    """Geometric mean as ``R_b^T polar(R_b R_a^-1) R_a``.

    ``a = R_a^T R_a`` and ``b = R_b^T R_b`` are Cholesky factorizations. With
    `swap` the better conditioned matrix plays the role of ``a`` (the mean is
    symmetric in its arguments). For ``a = I`` this is a square-root method
    for ``b``.

    Parameters
    ----------
    a, b : ndarray, shape (n, n)
    config : PolarConfig, optional
    exact : ndarray, optional
        Reference mean; when given with `return_trace`, the relative error of
        the intermediate means ``R_b^T Z_k R_a`` is recorded.
    return_trace : bool, default=False
    swap : bool, default=True
    callback : callable, optional
        ``callback(k, {"Z": Z_k, "gamma": g})`` at every Newton step, where
        ``Z_k`` approximates the polar factor of ``R_b R_a^-1``.

    Returns
    -------
    g : ndarray, shape (n, n)
    trace : IterTrace
        Only when `return_trace` is true.
    """
    a, b = check_spd_pair(a, b)
    cfg = PolarConfig() if config is None else config
    if swap and cond2_spd(a) > cond2_spd(b):
        a, b = b, a
    ra, rb = cholesky(a), cholesky(b)
    m = solve_triangular(ra, rb, side="right")
    if cfg.method == "svd":
        q1, _, q2 = svd(m)
        g = symmetrize(rb.T @ (q1 @ q2) @ ra)
        trace = IterTrace(status="direct")
        if exact is not None:
            trace.records.append(StepRecord(0, 1.0, None, None, relative_error(g, exact), 0.0))
    else:
        monitor = None
        if return_trace:
            monitor = (lambda z: None) if exact is None else (
                lambda z: relative_error(symmetrize(rb.T @ z @ ra), exact))
        u, trace = _newton_polar(m, cfg, monitor=monitor, callback=callback)
        g = symmetrize(rb.T @ u @ ra)
    return (g, trace) if return_trace else g


def verify_polar_char(c, d, u, tol=1e-10):
    """Check that ``c^T u d`` is symmetric positive definite.

    If ``a = c^T c``, ``b = d^T d`` and ``u`` is orthogonal, this holds exactly
    when ``c^T u d = a # b``, which certifies a computed mean.
    """
    h = np.asarray(c).T @ np.asarray(u) @ np.asarray(d)
    scale = np.linalg.norm(h)
    if np.linalg.norm(h - h.T) > tol * scale:
        return False
    try:
        cholesky(symmetrize(h))
    except NotPositiveDefinite:
        return False
    return True
