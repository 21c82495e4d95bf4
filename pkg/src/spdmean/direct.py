"""Direct (non-iterative) geometric means and geodesic points."""

import numpy as np

from ._linalg import cholesky, cond2_spd, solve_triangular, sym_eig, symmetrize
from .exceptions import NotPositiveDefinite
from .validation import check_geodesic_t, check_spd_pair


def condition_swap(a, b, t=0.5):
    """Order a pair so that the first matrix is the better conditioned one.

    Returns ``(b, a, 1 - t)`` when ``cond(a) > cond(b)``, else ``(a, b, t)``.
    Ties keep the original order. Relies on ``a #_t b = b #_{1-t} a``.
    """
    if cond2_spd(a) > cond2_spd(b):
        return b, a, 1.0 - t
    return a, b, t


def _schur_factor(a, b):
    # V = Ra^{-T} B Ra^{-1} = X^T X with X = Rb Ra^{-1} upper triangular
    ra = cholesky(a)
    rb = cholesky(b)
    x = solve_triangular(ra, rb, side="right")
    d, u = sym_eig(x.T @ x)
    if d[0] <= 0:
        raise NotPositiveDefinite("R_A^{-T} B R_A^{-1} has a non-positive eigenvalue")
    return ra, u, d


def _assemble(ra, u, d, t):
    w = (np.exp(0.5 * t * np.log(d)))[:, None] * (u.T @ ra)
    return symmetrize(w.T @ w)


def gmean_cholesky_schur(a, b, t=0.5, swap=True):
    """Point ``a #_t b`` of the geodesic between two SPD matrices.

    Computes ``R^T U D^t U^T R`` where ``a = R^T R`` is a Cholesky
    factorization and ``U D U^T`` is the eigendecomposition of
    ``R^{-T} b R^{-1}``. The product is formed as ``W^T W`` so the result
    is symmetric positive semidefinite by construction.

    Parameters
    ----------
    a, b : ndarray, shape (n, n)
        SPD matrices.
    t : float in [0, 1], default=0.5
        Position on the geodesic; ``t = 0.5`` gives the geometric mean.
    swap : bool, default=True
        Factor the better conditioned matrix (uses ``a #_t b = b #_{1-t} a``).

    Returns
    -------
    g : ndarray, shape (n, n)
    """
    a, b = check_spd_pair(a, b)
    t = check_geodesic_t(t)
    if swap:
        a, b, t = condition_swap(a, b, t)
    return _assemble(*_schur_factor(a, b), t)


def gmean_reference(a, b):
    """Geometric mean from the defining formula ``A^½ (A^-½ B A^-½)^½ A^½``.

    Uses two symmetric eigendecompositions and no Cholesky factor, so it is
    independent of :func:`gmean_cholesky_schur`.
    """
    a, b = check_spd_pair(a, b)
    w, q = sym_eig(a)
    if w[0] <= 0:
        raise NotPositiveDefinite("A is not positive definite")
    a_half = (q * np.sqrt(w)) @ q.T
    a_mhalf = (q / np.sqrt(w)) @ q.T
    c = symmetrize(a_mhalf @ b @ a_mhalf)
    wc, qc = sym_eig(c)
    if wc[0] <= 0:
        raise NotPositiveDefinite("B is not positive definite")
    c_half = (qc * np.sqrt(wc)) @ qc.T
    return symmetrize(a_half @ c_half @ a_half)


def gmean_2x2_closed(a, b):
    """Closed form of the mean of two 2x2 SPD matrices.

    ``sqrt(al*be) / sqrt(det(A/al + B/be)) * (A/al + B/be)`` with
    ``al = sqrt(det A)`` and ``be = sqrt(det B)``.
    """
    a, b = check_spd_pair(a, b)
    if a.shape != (2, 2):
        raise ValueError(f"closed form needs 2x2 matrices, got {a.shape}")
    al = np.sqrt(np.linalg.det(a))
    be = np.sqrt(np.linalg.det(b))
    s = a / al + b / be
    return symmetrize(np.sqrt(al * be) / np.sqrt(np.linalg.det(s)) * s)


class GeodesicFactor:
    """Reusable factorization of a pair for evaluating many geodesic points.

    ``point(t)`` costs two matrix products once the factorization exists.
    """

    def __init__(self, a, b, swap=True):
        a, b = check_spd_pair(a, b)
        self.swapped = bool(swap and cond2_spd(a) > cond2_spd(b))
        if self.swapped:
            a, b = b, a
        self._ra, self._u, self._d = _schur_factor(a, b)

    def point(self, t):
        t = check_geodesic_t(t)
        return _assemble(self._ra, self._u, self._d, 1.0 - t if self.swapped else t)
