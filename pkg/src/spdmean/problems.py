"""Generators for the standard test problems.

* ``test1(x)``: ``A = [[2, 1], [1, 2]]``, ``B = [[x, 1], [1, 2]]``, with a
  closed-form mean; ``M/m = (2x - 1) / 3`` for ``x >= 2``.
* ``test2(n, t)``: ``A = H H^T``, ``B = H D H^T`` with ``H`` the Hilbert
  matrix and ``D`` linearly spaced on ``[1, t]``; the mean is
  ``H D^½ H^T``.
* ``test3(n, t)``: as ``test2`` with ``D`` logarithmically spaced between
  1 and ``10^-t``.
"""

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
import scipy.linalg

from ._linalg import relative_error, symmetrize
from .exceptions import ParamOutOfRange
from .validation import check_spd_pair


@dataclass
class ProblemCase:
    name: str
    a: np.ndarray
    b: np.ndarray
    exact: Optional[np.ndarray] = None
    meta: dict = field(default_factory=dict)


def riccati_residual(g, a, b):
    """Relative residual ``||g a^-1 g - b|| / ||b||``."""
    return relative_error(g @ np.linalg.solve(a, g), b)


def gen_test1(x):
    if not x > 0.5:
        raise ParamOutOfRange(f"test1 needs x > 1/2, got {x}")
    a = np.array([[2.0, 1.0], [1.0, 2.0]])
    b = np.array([[float(x), 1.0], [1.0, 2.0]])
    exact = np.array([[0.5 * (1 + math.sqrt(6 * x - 3)), 1.0], [1.0, 2.0]])
    return ProblemCase(f"test1:x={x:g}", a, b, exact, {"x": x, "n": 2})


def _congruence_case(name, n, d, meta):
    h = scipy.linalg.hilbert(n)
    a = symmetrize(h @ h.T)
    b = symmetrize((h * d) @ h.T)
    exact = symmetrize((h * np.sqrt(d)) @ h.T)
    return ProblemCase(name, a, b, exact, meta)


def gen_test2(n, t):
    if n < 2 or not t >= 1:
        raise ParamOutOfRange(f"test2 needs n >= 2 and t >= 1, got n={n}, t={t}")
    return _congruence_case(f"test2:n={n},t={t:g}", n, np.linspace(1.0, t, n), {"n": n, "t": t})


def gen_test3(n, t):
    """Log-spaced congruence problem; `meta` records the predicted instability."""
    from .iterative import instability_radius, instability_ratio

    if n < 2 or not t >= 0:
        raise ParamOutOfRange(f"test3 needs n >= 2 and t >= 0, got n={n}, t={t}")
    case = _congruence_case(f"test3:n={n},t={t:g}", n, np.logspace(0.0, -t, n), {"n": n, "t": t})
    case.meta["instability_radius"] = instability_radius(case.a, case.b)
    case.meta["instability_ratio"] = instability_ratio(case.a, case.b)
    return case


GENERATORS = {"test1": gen_test1, "test2": gen_test2, "test3": gen_test3}


def parse_case(text):
    """Build a case from a string like ``test1:x=10`` or ``test3:n=5,t=1.5``."""
    name, _, params = text.partition(":")
    if name not in GENERATORS:
        raise ValueError(f"unknown case {name!r}; expected one of {sorted(GENERATORS)}")
    kwargs = {}
    for item in filter(None, params.split(",")):
        key, _, value = item.partition("=")
        kwargs[key.strip()] = int(value) if key.strip() == "n" else float(value)
    return GENERATORS[name](**kwargs)


def random_spd(n, rng, cond=None, low=0.2, high=5.0):
    """Random SPD matrix ``Q diag(w) Q^T`` with ``w`` uniform in ``[low, high]``."""
    q, _ = np.linalg.qr(rng.standard_normal((n, n)))
    if cond is not None:
        w = np.geomspace(1.0, cond, n)
        rng.shuffle(w)
    else:
        w = rng.uniform(low, high, n)
    return symmetrize((q * w) @ q.T)


def check_case(case, rtol=1e-8):
    """Check that a case's `exact` solves the Riccati equation."""
    check_spd_pair(case.a, case.b)
    if case.exact is None:
        return True
    return riccati_residual(case.exact, case.a, case.b) <= rtol * max(1.0, case.meta.get("kappa", 1.0))
