"""Quadrature approximations of the geometric mean.

Both rules approximate ``a # b = b (a^-1 b)^(-1/2)`` by a rational function
of ``a^-1 b`` in partial fractions, so each node costs one SPD solve:

* Gauss-Chebyshev applied to
  ``a # b = 2/pi int_{-1}^{1} ((1+z) b^-1 + (1-z) a^-1)^-1 / sqrt(1-z^2) dz``;
  converges linearly with a rate that degrades linearly in ``M/m``.
* The Zolotarev relative-minimax approximation of ``z^(-1/2)`` on the
  spectrum ``[m, M]`` of ``a^-1 b``, obtained as a trapezoidal rule after
  a conformal change of variables built from Jacobi elliptic functions;
  the rate depends only on ``log(M/m)``.
"""

import math
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from ._linalg import EPS, cholesky, symmetrize
from .elliptic import elliptic_K, jacobi_sn_cn_dn
from .exceptions import ModulusOutOfRange
from .iterative import _pencil_eigenvalues, convergence_bound
from .validation import check_spd_pair


@dataclass(frozen=True)
class ChebyshevRule:
    """Gauss-Chebyshev nodes ``x_k = cos((2k+1) pi / (2N))``, ``k = 0..N-1``."""

    N: int
    nodes: np.ndarray


@dataclass(frozen=True)
class EllipticRule:
    """Zolotarev rule for ``z^(-1/2)`` on ``[m, M]``.

    The rule is ``r(z) = sum_j weights[j] / (z - poles[j])``. Node ``j`` sits
    at ``i * nodes[j]`` on the imaginary axis, with
    ``nodes[j] = (j - 1/2) Kp / N``. ``sn, cn, dn`` hold the real-argument
    values at ``nodes`` for the complementary modulus ``sqrt(1 - m/M)``;
    the imaginary transformation turns them into the real poles
    ``-m sn^2 / cn^2`` and weights ``2 Kp sqrt(m) dn / (pi N cn^2)``.
    """

    m: float
    M: float
    gamma: float
    Kp: float
    N: int
    nodes: np.ndarray
    sn: np.ndarray
    cn: np.ndarray
    dn: np.ndarray
    poles: np.ndarray
    weights: np.ndarray

    def __call__(self, z):
        z = np.asarray(z, dtype=float)
        return np.sum(self.weights / (z[..., None] - self.poles), axis=-1)


def chebyshev_rule(N):
    if N < 1:
        raise ValueError(f"number of nodes must be at least 1, got {N}")
    k = np.arange(N)
    return ChebyshevRule(N=N, nodes=np.cos((2 * k + 1) * np.pi / (2 * N)))


def gauss_chebyshev_mean(a, b, N):
    """Gauss-Chebyshev approximation ``T_N`` of ``a # b`` on `N` nodes.

    Evaluated in the inverse-free form
    ``T_N = b (2/N sum_k ((1 + x_k) a + (1 - x_k) b)^-1) a``.
    ``T_1`` is the harmonic mean and ``T_{2^(k-1)}`` equals the ``k``-th
    harmonic iterate ``B_k`` of the averaging iteration.
    """
    a, b = check_spd_pair(a, b)
    rule = chebyshev_rule(N)
    acc = np.zeros_like(a)
    for x in rule.nodes:
        r = cholesky((1 + x) * a + (1 - x) * b)
        acc += scipy.linalg.cho_solve((r, False), a)
    return symmetrize(b @ acc * (2.0 / N))


def minimax_rule(m, M, N):
    """Build the :class:`EllipticRule` with `N` nodes for the interval ``[m, M]``."""
    if not 0 < m <= M:
        raise ModulusOutOfRange(f"need 0 < m <= M, got m={m}, M={M}")
    if N < 1:
        raise ValueError(f"number of nodes must be at least 1, got {N}")
    gamma = M / m
    # complementary modulus sqrt(1 - 1/gamma); its own complement is 1/sqrt(gamma)
    kc = 1.0 / math.sqrt(gamma)
    Kp = elliptic_K(kc=kc) if kc < 1 else math.pi / 2
    u = (np.arange(1, N + 1) - 0.5) * Kp / N
    if kc < 1:
        sn, cn, dn = jacobi_sn_cn_dn(u, kc=kc)
    else:
        sn, cn, dn = np.sin(u), np.cos(u), np.ones_like(u)
    poles = -m * sn**2 / cn**2
    weights = 2.0 * Kp * math.sqrt(m) / (math.pi * N) * dn / cn**2
    return EllipticRule(m=m, M=M, gamma=gamma, Kp=Kp, N=N, nodes=u, sn=sn, cn=cn, dn=dn,
                        poles=poles, weights=weights)


def minimax_mean(a, b, N):
    """Rational-minimax approximation ``S_N`` of ``a # b`` on `N` nodes.

    ``S_N = b (sum_j w_j (b - p_j a)^-1) a`` with poles ``p_j <= 0`` and
    weights ``w_j`` from :func:`minimax_rule` for the extreme eigenvalues
    of ``a^-1 b``. When ``a^-1 b`` is a multiple of the identity the mean is
    returned directly.
    """
    a, b = check_spd_pair(a, b)
    lam = _pencil_eigenvalues(a, b)
    m, M = float(lam[0]), float(lam[-1])
    if M - m <= 64 * EPS * M:
        return symmetrize(math.sqrt(math.sqrt(m * M)) * a)
    rule = minimax_rule(m, M, N)
    acc = np.zeros_like(a)
    for p, w in zip(rule.poles, rule.weights):
        r = cholesky(b - p * a)
        acc += w * scipy.linalg.cho_solve((r, False), a)
    return symmetrize(b @ acc)


def gc_rate(a, b):
    """Rate parameter ``rho`` of the averaging family for ``(a, b)``.

    Gauss-Chebyshev errors decay like ``rho^(2N)``.
    """
    return convergence_bound(a, b).rho


def minimax_bound(gamma, N):
    """Asymptotic error model ``exp(-2 pi^2 N / (log(gamma) + 3))``."""
    if gamma < 1:
        raise ValueError(f"gamma must be at least 1, got {gamma}")
    return math.exp(-2 * math.pi**2 * N / (math.log(gamma) + 3))
