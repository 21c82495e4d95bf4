"""Input validation helpers, in the spirit of ``sklearn.utils.check_array``."""

import numbers

import numpy as np

from ._linalg import EPS, cholesky, symmetrize
from .exceptions import NotPositiveDefinite, NotSymmetric, ParamOutOfRange


def check_square(m, name="matrix"):
    m = np.asarray(m, dtype=float)
    if m.ndim == 0:
        m = m.reshape(1, 1)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] < 1:
        raise ValueError(f"{name} must be a non-empty square matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError(f"{name} contains NaN or infinity")
    return m


def check_spd(a, name="A", check_pd=True):
    """Validate a symmetric positive definite matrix.

    Symmetry is checked to ``8 * eps * max|a_ij|``; the returned copy is
    exactly symmetric. Positivity is tested by attempting a Cholesky
    factorization.

    Parameters
    ----------
    a : array_like, shape (n, n)
    name : str
        Used in error messages.
    check_pd : bool, default=True
        Skip the Cholesky test when False.

    Returns
    -------
    a : ndarray of float, shape (n, n)
    """
    a = check_square(a, name)
    scale = np.max(np.abs(a))
    if np.max(np.abs(a - a.T)) > 8 * EPS * scale:
        raise NotSymmetric(f"{name} is not symmetric")
    a = symmetrize(a)
    if check_pd:
        try:
            cholesky(a)
        except NotPositiveDefinite:
            raise NotPositiveDefinite(f"{name} is not positive definite") from None
    return a


def check_spd_pair(a, b):
    """Validate two SPD matrices of equal size."""
    a = check_spd(a, "A")
    b = check_spd(b, "B")
    if a.shape != b.shape:
        raise ValueError(f"A and B must have the same shape, got {a.shape} and {b.shape}")
    return a, b


def check_geodesic_t(t):
    if not isinstance(t, numbers.Real) or not 0 <= t <= 1:
        raise ParamOutOfRange(f"t must be a real number in [0, 1], got {t!r}")
    return float(t)


def check_pairs(X):
    """Validate a stack of SPD pairs, shape (n_pairs, 2, n, n) or (2, n, n)."""
    X = np.asarray(X, dtype=float)
    if X.ndim == 3:
        X = X[np.newaxis]
    if X.ndim != 4 or X.shape[1] != 2 or X.shape[2] != X.shape[3]:
        raise ValueError(f"expected an array of shape (n_pairs, 2, n, n), got {X.shape}")
    return X
