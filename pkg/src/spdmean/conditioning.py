"""Sensitivity of the geometric mean to perturbations of its arguments.

With ``Z = (b a^-1)^½`` the derivative of ``(a, b) -> a # b`` in direction
``(h, k)`` is, in column-stacked coordinates,
``M1 vec(h) + M2 vec(k)`` where ``M1 = (I (x) Z^-1 + Z^-1 (x) I)^-1`` and
``M2 = (I (x) Z + Z (x) I)^-1``. The absolute condition number in the
Frobenius norm is ``||[M1 M2]||_2``. Everything here builds the literal
``n^2 x n^2`` matrices, so it is limited to small ``n``.
"""

import math
from dataclasses import dataclass

import numpy as np

from ._linalg import cholesky, cond2_spd, kron, solve_triangular, spectral_radius, sym_eig, unvec, vec
from .direct import gmean_cholesky_schur
from .exceptions import NoConvergence, SizeOverflow
from .iterative import _pencil_eigenvalues
from .validation import check_spd_pair, check_square

KRONECKER_LIMIT = 32


@dataclass(frozen=True)
class FrechetRep:
    Z: np.ndarray
    M1: np.ndarray
    M2: np.ndarray


@dataclass(frozen=True)
class CondReport:
    """Condition numbers of ``(a, b) -> a # b`` in the Frobenius norm.

    ``kappa_rel = kappa_abs * ||[a b]||_F / ||a # b||_F``; `lower` and
    `upper` bracket `kappa_abs`; ``(alpha, beta)`` is the balancing scaling
    from :func:`optimal_scaling`.
    """

    kappa_abs: float
    kappa_rel: float
    lower: float
    upper: float
    alpha: float
    beta: float


def _check_size(n, limit):
    if n > limit:
        raise SizeOverflow(f"matrix size {n} exceeds the Kronecker limit {limit}")


def frechet_rep(a, b, limit=KRONECKER_LIMIT):
    """Build ``Z``, ``M1`` and ``M2`` for the pair ``(a, b)``."""
    a, b = check_spd_pair(a, b)
    n = a.shape[0]
    _check_size(n, limit)
    g = gmean_cholesky_schur(a, b)
    # Z = (b a^-1)^½ = (a # b) a^-1
    z = np.linalg.solve(a, g).T
    zi = np.linalg.solve(g, a).T
    eye = np.eye(n)
    lim = limit * limit
    m1 = np.linalg.inv(kron(eye, zi, lim) + kron(zi, eye, lim))
    m2 = np.linalg.inv(kron(eye, z, lim) + kron(z, eye, lim))
    return FrechetRep(Z=z, M1=m1, M2=m2)


def frechet_apply(a, b, h, k, limit=KRONECKER_LIMIT, rep=None):
    """Derivative of the geometric mean at ``(a, b)`` in direction ``(h, k)``."""
    rep = frechet_rep(a, b, limit) if rep is None else rep
    n = rep.Z.shape[0]
    h = check_square(h, "H")
    k = check_square(k, "K")
    if h.shape != (n, n) or k.shape != (n, n):
        raise ValueError("perturbations must have the same shape as A and B")
    return unvec(rep.M1 @ vec(h) + rep.M2 @ vec(k), n)


def _block_norm(m1, m2):
    """``||[m1 m2]||_2`` from the dominant eigenvalue of ``m1 m1^T + m2 m2^T``."""
    s = m1 @ m1.T + m2 @ m2.T
    try:
        lam = spectral_radius(s, tol=1e-14, maxit=5000)
    except NoConvergence:
        lam = sym_eig(s)[0][-1]
    return math.sqrt(lam)


def cond_bounds(a, b):
    """Lower and upper bounds on the absolute condition number.

    ``lower = max(rho(Z), rho(Z^-1)) / 2`` and
    ``upper = min(cond(a), cond(b)) * sqrt(rho(b^-1 a) + rho(a^-1 b)) / 2``.
    """
    a, b = check_spd_pair(a, b)
    lam = _pencil_eigenvalues(a, b)
    lower = 0.5 * max(math.sqrt(lam[-1]), 1.0 / math.sqrt(lam[0]))
    upper = 0.5 * min(cond2_spd(a), cond2_spd(b)) * math.sqrt(1.0 / lam[0] + lam[-1])
    return lower, upper


def _extreme_pencil_eigenvalues(a, b):
    # power and inverse power on the SPD matrix R^-T b R^-1, similar to a^-1 b
    r = cholesky(a)
    v = solve_triangular(r, solve_triangular(r, b, side="left", transposed=True), side="right")
    v = 0.5 * (v + v.T)
    try:
        big = spectral_radius(v, tol=1e-13, maxit=2000)
        small = 1.0 / spectral_radius(np.linalg.inv(v), tol=1e-13, maxit=2000)
    except NoConvergence:
        w = sym_eig(v)[0]
        small, big = w[0], w[-1]
    return small, big


def optimal_scaling(a, b):
    """Scalars ``alpha, beta`` (with ``alpha * beta = 1``) balancing ``(alpha a, beta b)``.

    After scaling, ``rho(Z) = rho(Z^-1)``, which minimizes both condition
    bounds; recover the mean through
    ``a # b = ((alpha a) # (beta b)) / sqrt(alpha beta)``.
    """
    a, b = check_spd_pair(a, b)
    small, big = _extreme_pencil_eigenvalues(a, b)
    # alpha / beta = m M over the eigenvalues of Z, i.e. sqrt(small * big)
    alpha = (small * big) ** 0.25
    return alpha, 1.0 / alpha


def cond_exact(a, b, limit=KRONECKER_LIMIT):
    """Exact absolute and relative condition numbers of the mean at ``(a, b)``."""
    a, b = check_spd_pair(a, b)
    rep = frechet_rep(a, b, limit)
    kappa_abs = _block_norm(rep.M1, rep.M2)
    g = gmean_cholesky_schur(a, b)
    kappa_rel = kappa_abs * math.sqrt(np.linalg.norm(a) ** 2 + np.linalg.norm(b) ** 2) / np.linalg.norm(g)
    lower, upper = cond_bounds(a, b)
    alpha, beta = optimal_scaling(a, b)
    return CondReport(kappa_abs=kappa_abs, kappa_rel=float(kappa_rel), lower=lower, upper=upper,
                      alpha=alpha, beta=beta)
