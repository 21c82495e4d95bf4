"""Scalar counterparts of the averaging family.

Closed forms used to check the matrix iterations: the principal reciprocal
Padé iteration functions, Newton's iteration for the square root and the
partial convergents of the continued fraction for ``sqrt(ab)``.
"""

import math


def scalar_pade_iterate(z, k):
    """Principal reciprocal Padé iteration function of order `k`.

    ``((1 + z)^k + (1 - z)^k) / ((1 + z)^k - (1 - z)^k)``. For ``k = 2`` this is
    ``(1 + z^2) / (2 z)``, one Newton step for the sign function.
    """
    if k < 1:
        raise ValueError(f"k must be a positive integer, got {k}")
    p, q = (1.0 + z) ** k, (1.0 - z) ** k
    return (p + q) / (p - q)


def newton_sqrt(z, k):
    """``k`` steps of ``z_{j+1} = (z_j + z / z_j) / 2`` from ``z_0 = z``."""
    x = z
    for _ in range(k):
        x = 0.5 * (x + z / x)
    return x


def scalar_averaging(a, b, k):
    """``k`` steps of arithmetic-harmonic averaging; returns ``(a_k, b_k)``."""
    for _ in range(k):
        a, b = 0.5 * (a + b), 2.0 * a * b / (a + b)
    return a, b


def scalar_cf_convergent(a, b, N):
    """Partial convergent ``t_N`` of the continued fraction for ``sqrt(ab)``.

    ``t_N = (a+b)/2 + c/((a+b) + c/((a+b) + ...))`` with ``N`` nested
    levels and ``c = -((a-b)/2)^2``, evaluated bottom-up.
    """
    if N < 0:
        raise ValueError(f"N must be non-negative, got {N}")
    s = a + b
    c = -((a - b) / 2.0) ** 2
    tail = 0.0
    for _ in range(N):
        tail = c / (s + tail)
    return s / 2.0 + tail


def scalar_cf_closed(a, b, N):
    """Closed form of :func:`scalar_cf_convergent`.

    ``sqrt(ab) * g(sqrt(b/a))`` where ``g`` is the reciprocal Padé function
    of order ``2N + 2``.
    """
    return math.sqrt(a * b) * scalar_pade_iterate(math.sqrt(b / a), 2 * N + 2)
