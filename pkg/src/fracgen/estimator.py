"""scikit-learn style transformer for sampled functions."""

from __future__ import annotations

from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted

from .coeffgen import GeneratorSpec
from .operator import grunwald_matrix


class GrunwaldDerivative(TransformerMixin, BaseEstimator):
    """Fractional derivative of functions sampled on a uniform grid.

    Each row of ``X`` holds one function sampled at ``n_features`` equally
    spaced nodes ``a, a + h, ...``; :meth:`transform` returns the shifted
    Grünwald approximation at every node, with zero extension outside the
    sampled range.

    Parameters
    ----------
    alpha : float, Fraction or str, default=0.5
        Derivative order (``"num/den"`` strings are parsed exactly).
    p : int, default=2
        Approximation order of the generator.
    r : int, default=1
        Shift; must be an integer so the stencil stays on the grid.
    h : float, default=1.0
        Grid spacing.
    side : {"left", "right"}, default="left"
    """

    def __init__(self, alpha=0.5, p=2, r=1, h=1.0, side="left"):
        self.alpha = alpha
        self.p = p
        self.r = r
        self.h = h
        self.side = side

    def fit(self, X, y=None):
        X = check_array(X)
        self.spec_ = GeneratorSpec(self.alpha, self.p, self.r)
        if not self.h > 0:
            raise ValueError(f"h must be positive, got {self.h}")
        self.n_features_in_ = X.shape[1]
        self.matrix_ = grunwald_matrix(self.spec_, X.shape[1], float(self.h), self.side)
        return self

    def transform(self, X):
        check_is_fitted(self, "matrix_")
        X = check_array(X)
        if X.shape[1] != self.n_features_in_:
            raise ValueError(
                f"X has {X.shape[1]} grid points, fitted with {self.n_features_in_}"
            )
        return X @ self.matrix_.T
