"""scikit-learn style wrapper: expand Taylor coefficients in the eigenfunction basis.

Each sample row ``x`` holds the coefficients of an analytic function
``f(z) = sum_p x[p] z**p``.  ``transform`` returns the expansion coefficients
``b_n = <chi_n, f>`` and ``inverse_transform`` rebuilds ``sum_n b_n psi_n``.
"""

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from ._validation import check_coefficients, check_count, check_rational, check_superpotential
from .builder import build_system
from .series import SectorSign


def _exact_dot(A, B):
    out = np.empty((A.shape[0], B.shape[1]), dtype=object)
    for i in range(A.shape[0]):
        for j in range(B.shape[1]):
            out[i, j] = sum((A[i, k] * B[k, j] for k in range(A.shape[1])), 0)
    return out


def _dot(A, B):
    if A.dtype == object:
        return _exact_dot(A, B)
    return A @ B.astype(np.float64)


class BiorthogonalExpansion(TransformerMixin, BaseEstimator):
    """Biorthogonal expansion for the superpotential ``sum_k upsilon[k-1] z**k``.

    Parameters
    ----------
    upsilon : sequence of int, Fraction or "p/q" strings
    nu : rational shift
    n_levels : highest level N kept in the expansion
    depth : eigenfunction depth J; defaults to what the fitted width needs
    sector : "+" or "-"
    exact_upsilon : False marks ``upsilon`` as a truncated series

    Object arrays of Fractions are handled exactly; anything else is float64.
    The round trip is the identity whenever ``n_features <= n_levels + 1``.
    """

    def __init__(self, upsilon=(1,), nu=0, n_levels=4, depth=None, sector="+", exact_upsilon=True):
        self.upsilon = upsilon
        self.nu = nu
        self.n_levels = n_levels
        self.depth = depth
        self.sector = sector
        self.exact_upsilon = exact_upsilon

    def fit(self, X=None, y=None):
        U = check_superpotential(self.upsilon, self.exact_upsilon)
        nu = check_rational(self.nu, "nu")
        N = check_count(self.n_levels, "n_levels")
        sector = SectorSign.parse(self.sector)
        width = check_coefficients(X, estimator=self).shape[1] if X is not None else N + 1
        J = max(width - 1, N) if self.depth is None else check_count(self.depth, "depth")
        if J < width - 1:
            raise ValueError(f"depth={J} cannot reach z**{width - 1}")

        self.system_ = build_system(U, nu, N, J)
        self.n_features_in_ = width
        dual = np.zeros((N + 1, width), dtype=object)
        psi = np.zeros((N + 1, width), dtype=object)
        for n in range(N + 1):
            c = self.system_.chi[n][sector].c
            a = self.system_.psi[n][sector].a
            for p in range(width):
                if p <= n:
                    dual[n, p] = c[n - p]
                if n <= p <= n + J:
                    psi[n, p] = a[p - n]
        self.dual_matrix_ = dual
        self.psi_matrix_ = psi
        return self

    def transform(self, X):
        """Expansion coefficients ``b[:, n] = <chi_n, f>``."""
        check_is_fitted(self, "system_")
        X = check_coefficients(X, self.n_features_in_, estimator=self)
        return _dot(X, self.dual_matrix_.T)

    def inverse_transform(self, B):
        """Taylor coefficients of ``sum_n b_n psi_n`` up to ``z**(n_features - 1)``."""
        check_is_fitted(self, "system_")
        B = check_coefficients(B, self.system_.N + 1, name="B", estimator=self)
        return _dot(B, self.psi_matrix_)
