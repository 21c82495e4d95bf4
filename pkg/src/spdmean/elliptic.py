"""Complete elliptic integral and Jacobi elliptic functions via the AGM.

Moduli are passed as ``k`` (not the parameter ``m = k^2``). Both routines
accept the complementary modulus ``kc = sqrt(1 - k^2)`` directly, which
keeps full accuracy when ``k`` is close to 1.
"""

import math

import numpy as np

from ._linalg import EPS
from .exceptions import ModulusOutOfRange

_MAX_AGM_STEPS = 64


def _complement(k, kc):
    if kc is None:
        if not 0 <= k < 1:
            raise ModulusOutOfRange(f"modulus must lie in [0, 1), got {k!r}")
        kc = math.sqrt((1.0 - k) * (1.0 + k))
    elif not 0 < kc <= 1:
        raise ModulusOutOfRange(f"complementary modulus must lie in (0, 1], got {kc!r}")
    if k is None:
        k = math.sqrt((1.0 - kc) * (1.0 + kc))
    return k, kc


def agm(a, b):
    """Arithmetic-geometric mean of two positive numbers."""
    for _ in range(_MAX_AGM_STEPS):
        if abs(a - b) <= 2 * EPS * a:
            break
        a, b = 0.5 * (a + b), math.sqrt(a * b)
    return 0.5 * (a + b)


def elliptic_K(k=None, kc=None):
    """Complete elliptic integral of the first kind, ``K(k) = pi / (2 agm(1, kc))``.

    Parameters
    ----------
    k : float in [0, 1)
        Modulus.
    kc : float in (0, 1], optional
        Complementary modulus; takes precedence over `k` when given.
    """
    _, kc = _complement(k, kc)
    return math.pi / (2.0 * agm(1.0, kc))


def jacobi_sn_cn_dn(u, k=None, kc=None):
    """Jacobi elliptic functions ``sn, cn, dn`` of real argument.

    Uses the descending Landen (AGM) scheme: run the AGM on ``(1, kc)``,
    set ``phi_N = 2^N a_N u`` and recur
    ``phi_{n-1} = (phi_n + asin(c_n sin(phi_n) / a_n)) / 2``. Then
    ``sn = sin(phi_0)``, ``cn = cos(phi_0)`` and
    ``dn = cos(phi_0) / cos(phi_1 - phi_0)``. Accuracy is absolute (about
    ``eps * K``): as ``k -> 1`` small values of ``cn`` and ``dn`` near the
    quarter period lose relative digits.

    Parameters
    ----------
    u : float or array_like
    k : float in [0, 1)
    kc : float in (0, 1], optional

    Returns
    -------
    sn, cn, dn : ndarray (or float for scalar `u`)
    """
    k, kc = _complement(k, kc)
    u_arr = np.asarray(u, dtype=float)
    a, b, c = [1.0], kc, [k]
    while abs(c[-1]) > EPS * a[-1] and len(a) <= _MAX_AGM_STEPS:
        an, bn = a[-1], b
        a.append(0.5 * (an + bn))
        c.append(0.5 * (an - bn))
        b = math.sqrt(an * bn)
    n = len(a) - 1
    phi = (2.0 ** n) * a[-1] * u_arr
    phi_next = phi
    for i in range(n, 0, -1):
        phi_next = phi
        phi = 0.5 * (phi + np.arcsin(c[i] / a[i] * np.sin(phi)))
    sn, cn = np.sin(phi), np.cos(phi)
    if n == 0:
        dn = np.sqrt(1.0 - (k * sn) ** 2)
    else:
        dn = cn / np.cos(phi_next - phi)
    if u_arr.ndim == 0:
        return float(sn), float(cn), float(dn)
    return sn, cn, dn
