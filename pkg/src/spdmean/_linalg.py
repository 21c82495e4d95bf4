"""Dense real linear algebra kernel.

Thin, contract-checked wrappers around LAPACK (through numpy/scipy) plus a
power method. Every routine that returns a mathematically symmetric matrix
returns it exactly symmetrized.
"""

import numpy as np
import scipy.linalg

from .exceptions import NoConvergence, NotPositiveDefinite, SingularFactor, SizeOverflow

EPS = np.finfo(float).eps


def symmetrize(m):
    """Return ``(m + m.T) / 2``."""
    return 0.5 * (m + m.T)


def cholesky(a):
    """Upper triangular Cholesky factor ``R`` with ``R.T @ R = a``.

    Parameters
    ----------
    a : ndarray, shape (n, n)
        Symmetric positive definite matrix. Only the upper triangle is read.

    Returns
    -------
    r : ndarray, shape (n, n)
        Upper triangular with strictly positive diagonal.

    Raises
    ------
    NotPositiveDefinite
        If a pivot is not positive.
    """
    a = np.asarray(a, dtype=float)
    try:
        r = scipy.linalg.cholesky(a, lower=False, check_finite=True)
    except np.linalg.LinAlgError as exc:
        raise NotPositiveDefinite(f"Cholesky factorization failed: {exc}") from None
    if not np.all(np.diag(r) > 0):
        raise NotPositiveDefinite("Cholesky factor has a non-positive pivot")
    return r


def sym_eig(a):
    """Eigendecomposition of a symmetric matrix.

    Returns ``(values, vectors)`` with ascending eigenvalues and orthonormal
    eigenvector columns, so that ``vectors @ diag(values) @ vectors.T = a``.
    """
    a = np.asarray(a, dtype=float)
    try:
        w, q = np.linalg.eigh(symmetrize(a))
    except np.linalg.LinAlgError as exc:
        raise NoConvergence(f"symmetric eigensolver failed: {exc}") from None
    return w, q


def solve_triangular(r, b, side="left", transposed=False):
    """Solve ``op(r) X = b`` (side='left') or ``X op(r) = b`` (side='right').

    ``op(r)`` is ``r.T`` when `transposed` is true, otherwise ``r``; `r` is
    upper triangular.
    """
    r = np.asarray(r, dtype=float)
    b = np.asarray(b, dtype=float)
    if np.any(np.diag(r) == 0):
        raise SingularFactor("triangular factor has a zero diagonal entry")
    if side == "left":
        return scipy.linalg.solve_triangular(r, b, trans="T" if transposed else "N", lower=False)
    if side == "right":
        # X op(r) = b  <=>  op(r).T X.T = b.T
        return scipy.linalg.solve_triangular(
            r, b.T, trans="N" if transposed else "T", lower=False
        ).T
    raise ValueError(f"side must be 'left' or 'right', got {side!r}")


def inverse_spd(a):
    """Inverse of an SPD matrix through its Cholesky factor, symmetrized."""
    r = cholesky(a)
    rinv = solve_triangular(r, np.eye(r.shape[0]))
    return symmetrize(rinv @ rinv.T)


def svd(m):
    """Full SVD ``m = q1 @ diag(s) @ q2`` with descending singular values."""
    try:
        q1, s, q2 = np.linalg.svd(np.asarray(m, dtype=float))
    except np.linalg.LinAlgError as exc:
        raise NoConvergence(f"SVD failed: {exc}") from None
    return q1, s, q2


def svd_values(m):
    """Return ``(sigma_max, sigma_min)`` of a square matrix."""
    try:
        s = np.linalg.svd(np.asarray(m, dtype=float), compute_uv=False)
    except np.linalg.LinAlgError as exc:
        raise NoConvergence(f"SVD failed: {exc}") from None
    return s[0], s[-1]


def spectral_radius(m, tol=1e-10, maxit=500):
    """Dominant eigenvalue of `m` by the power method.

    Assumes the dominant eigenvalue is real and positive, which holds for
    products of SPD matrices. Stops when two consecutive Rayleigh quotients
    agree to relative tolerance `tol`.

    Raises
    ------
    NoConvergence
        After `maxit` steps without meeting the tolerance.
    """
    m = np.asarray(m, dtype=float)
    n = m.shape[0]
    # fixed start vector: deterministic and generically not orthogonal to
    # the dominant eigenvector
    v = np.random.default_rng(0).uniform(0.5, 1.5, n)
    v /= np.linalg.norm(v)
    lam = None
    for _ in range(maxit):
        w = m @ v
        lam_new = float(v @ w)
        nw = np.linalg.norm(w)
        if nw == 0:
            return 0.0
        v = w / nw
        if lam is not None and abs(lam_new - lam) <= tol * abs(lam_new):
            return abs(lam_new)
        lam = lam_new
    raise NoConvergence(f"power method did not converge in {maxit} steps", result=lam)


def vec(m):
    """Stack the columns of `m` into a vector."""
    return np.asarray(m).reshape(-1, order="F")


def unvec(v, n):
    """Inverse of :func:`vec` for an ``n``-row matrix."""
    return np.asarray(v).reshape(n, -1, order="F")


def kron(a, b, max_size=None):
    """Kronecker product, consistent with :func:`vec`.

    With this convention ``kron(I, P) @ vec(X) == vec(P @ X)`` and
    ``kron(Q.T, I) @ vec(X) == vec(X @ Q)``.
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    size = a.shape[0] * b.shape[0]
    if max_size is not None and size > max_size:
        raise SizeOverflow(f"Kronecker product of order {size} exceeds limit {max_size}")
    return np.kron(a, b)


def cond2_spd(a):
    """2-norm condition number ``lambda_max / lambda_min`` of an SPD matrix."""
    w, _ = sym_eig(a)
    if w[0] <= 0:
        raise NotPositiveDefinite("matrix has a non-positive eigenvalue")
    return w[-1] / w[0]


def relative_error(x, ref):
    """Relative Frobenius distance ``||x - ref|| / ||ref||``."""
    return float(np.linalg.norm(x - ref) / np.linalg.norm(ref))
