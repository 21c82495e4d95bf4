"""Geometric means of symmetric positive definite matrices.

The geometric mean ``a # b`` is the unique SPD solution of
``X a^-1 X = b``, the midpoint of the Riemannian geodesic joining ``a``
and ``b``. This package provides a direct Cholesky-Schur method, the
averaging, sign, three-terms and cyclic-reduction iterations, a polar
decomposition route, two quadrature rules (Gauss-Chebyshev and the
elliptic-function minimax rule), and condition-number tools.
"""

from .bench import ALGORITHMS, RunOptions, compute_mean, run
from .conditioning import CondReport, cond_bounds, cond_exact, frechet_apply, optimal_scaling
from .direct import GeodesicFactor, gmean_2x2_closed, gmean_cholesky_schur, gmean_reference
from .elliptic import agm, elliptic_K, jacobi_sn_cn_dn
from .estimators import GeodesicInterpolator, GeometricMean
from .exceptions import (
    Diverged,
    ModulusOutOfRange,
    NoConvergence,
    NotPositiveDefinite,
    NotSymmetric,
    ParamOutOfRange,
    SingularFactor,
    SizeOverflow,
    SpdMeanError,
    UnknownAlgorithm,
)
from .iterative import (
    IterConfig,
    IterTrace,
    averaging_coupled,
    averaging_uncoupled,
    convergence_bound,
    instability_radius,
    instability_ratio,
    pcr,
    sign_scaled,
    three_terms,
)
from .polar import PolarConfig, gmean_polar, polar_factor
from .problems import ProblemCase, gen_test1, gen_test2, gen_test3
from .quadrature import EllipticRule, gauss_chebyshev_mean, minimax_mean, minimax_rule

__version__ = "0.1.0"

__all__ = [
    "ALGORITHMS", "RunOptions", "compute_mean", "run",
    "CondReport", "cond_bounds", "cond_exact", "frechet_apply", "optimal_scaling",
    "GeodesicFactor", "gmean_2x2_closed", "gmean_cholesky_schur", "gmean_reference",
    "agm", "elliptic_K", "jacobi_sn_cn_dn",
    "GeodesicInterpolator", "GeometricMean",
    "Diverged", "ModulusOutOfRange", "NoConvergence", "NotPositiveDefinite", "NotSymmetric",
    "ParamOutOfRange", "SingularFactor", "SizeOverflow", "SpdMeanError", "UnknownAlgorithm",
    "IterConfig", "IterTrace", "averaging_coupled", "averaging_uncoupled", "convergence_bound",
    "instability_radius", "instability_ratio", "pcr", "sign_scaled", "three_terms",
    "PolarConfig", "gmean_polar", "polar_factor",
    "ProblemCase", "gen_test1", "gen_test2", "gen_test3",
    "EllipticRule", "gauss_chebyshev_mean", "minimax_mean", "minimax_rule",
]
