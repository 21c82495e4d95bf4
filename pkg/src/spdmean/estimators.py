"""scikit-learn style wrappers around the functional core."""

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .bench import RunOptions, compute_mean, parse_alg
from .direct import GeodesicFactor
from .validation import check_geodesic_t, check_pairs


# 3-D output, so pandas output wrapping does not apply
class GeometricMean(TransformerMixin, BaseEstimator, auto_wrap_output_keys=None):
    """Geometric mean of each pair in a stack of SPD pairs.

    Parameters
    ----------
    method : str, default='chol-schur'
        Algorithm id, e.g. ``'avg'``, ``'sign-spectral'``, ``'polar'`` or
        ``'minimax'``. For ``'gc'`` and ``'minimax'`` the node count comes
        from `n_nodes`.
    t : float, default=0.5
        Geodesic parameter; values other than 0.5 need ``'chol-schur'``.
    tol : float, default=1e-14
    max_iter : int, default=100
    scaling : {'none', 'determinantal', 'spectral'}, default='none'
        Used by ``'three-terms'``.
    n_nodes : int, default=16
        Quadrature nodes for ``'gc'`` and ``'minimax'``.

    Attributes
    ----------
    means_ : ndarray, shape (n_pairs, n, n)
    n_iter_ : ndarray of int, shape (n_pairs,)
        Steps taken per pair (0 for direct methods).
    traces_ : list of IterTrace or None

    Examples
    --------
    >>> import numpy as np
    >>> X = np.array([[[[4.0, 0], [0, 1]], [[1.0, 0], [0, 4]]]])
    >>> GeometricMean().fit_transform(X)[0].round(12)
    array([[2., 0.],
           [0., 2.]])
    """

    def __init__(self, method="chol-schur", t=0.5, tol=1e-14, max_iter=100, scaling="none", n_nodes=16):
        self.method = method
        self.t = t
        self.tol = tol
        self.max_iter = max_iter
        self.scaling = scaling
        self.n_nodes = n_nodes

    def _options(self):
        return RunOptions(t=check_geodesic_t(self.t), tol=self.tol, maxit=self.max_iter,
                          scaling=self.scaling, nodes=self.n_nodes)

    def fit(self, X, y=None):
        X = check_pairs(X)
        parse_alg(self.method, self.n_nodes)
        opts = self._options()
        means, n_iter, traces = [], [], []
        for a, b in X:
            g, trace = compute_mean(a, b, self.method, opts)
            means.append(g)
            traces.append(trace)
            n_iter.append(trace.n_iter if trace is not None else 0)
        self.means_ = np.stack(means)
        self.n_iter_ = np.asarray(n_iter, dtype=int)
        self.traces_ = traces
        return self

    def transform(self, X=None):
        """Return the means computed by :meth:`fit`.

        When `X` is given it is fitted first, so ``transform(X)`` always
        returns the means of `X`.
        """
        if X is not None:
            return self.fit(X).means_
        check_is_fitted(self, "means_")
        return self.means_


class GeodesicInterpolator(BaseEstimator):
    """Points ``a #_t b`` along the geodesic joining a fitted pair.

    Parameters
    ----------
    swap : bool, default=True
        Factor the better conditioned matrix of the pair.

    Examples
    --------
    >>> import numpy as np
    >>> pair = np.array([np.eye(2), 4 * np.eye(2)])
    >>> GeodesicInterpolator().fit(pair).transform([0.0, 0.5, 1.0])[:, 0, 0]
    array([1., 2., 4.])
    """

    def __init__(self, swap=True):
        self.swap = swap

    def fit(self, X, y=None):
        X = check_pairs(X)
        if X.shape[0] != 1:
            raise ValueError(f"expected a single pair, got {X.shape[0]}")
        self.factor_ = GeodesicFactor(X[0, 0], X[0, 1], swap=self.swap)
        self.n_features_ = X.shape[-1]
        return self

    def transform(self, ts):
        check_is_fitted(self, "factor_")
        ts = np.atleast_1d(np.asarray(ts, dtype=float))
        return np.stack([self.factor_.point(float(t)) for t in ts])
