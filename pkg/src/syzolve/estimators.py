"""sklearn-style estimator wrappers around the syzygy solvers.

fit() consumes the structured matrix (its diagonal values), precomputes the
syzygy basis, and solve()/predict() apply it to right-hand sides, so a fitted
solver amortizes the basis across many systems and composes with sklearn
tooling (get_params / set_params / clone).
"""

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.exceptions import NotFittedError

from . import solver, tbt, toeplitz
from .fields import field_by_name


class ToeplitzSystemSolver(BaseEstimator):
    """Solver for Toeplitz systems T u = g via a syzygy (moving-line) basis.

    Parameters
    ----------
    route : "eea" or "dense-generators"
        Basis construction route; the Euclidean route falls back to the dense
        one on non-generic instances when fallback is enabled.
    field : "rational" or "float64"
    fallback : bool
    """

    def __init__(self, route="eea", field="float64", fallback=True):
        self.route = route
        self.field = field
        self.fallback = fallback

    def fit(self, diagonals, y=None):
        """diagonals: the 2n-1 values t_{-n+1}..t_{n-1} of the matrix."""
        fld = field_by_name(self.field)
        diagonals = list(np.asarray(diagonals).ravel()) if not fld.exact else list(diagonals)
        if len(diagonals) % 2 != 1:
            raise ValueError("a Toeplitz matrix has an odd number of diagonals")
        n = (len(diagonals) + 1) // 2
        self.matrix_ = toeplitz.ToeplitzMatrix(fld, n, diagonals)
        self.basis_, self.route_ = solver.compute_basis(
            self.matrix_, route=self.route, fallback=self.fallback
        )
        self.n_ = n
        return self

    def _check_fitted(self):
        if not hasattr(self, "basis_"):
            raise NotFittedError("call fit() before solve()/predict()")

    def solve(self, g):
        """Solve for one right-hand side (length n) or a batch (k, n)."""
        self._check_fitted()
        arr = np.asarray(g, dtype=object)
        if arr.ndim == 2:
            return [self.solve(row) for row in g]
        rep = solver.solve(
            self.matrix_, list(g), route=self.route_, basis=self.basis_
        )
        if self.matrix_.field.exact:
            return rep.u
        return np.asarray(rep.u, dtype=float)

    def predict(self, g):
        return self.solve(g)

    def residual_norm(self, g, u):
        self._check_fitted()
        return solver.scaled_residual(self.matrix_, list(g), list(u))


class TbtSystemSolver(BaseEstimator):
    """Solver for Toeplitz-block-Toeplitz systems via the nine-block module."""

    def __init__(self, field="float64"):
        self.field = field

    def fit(self, diagonal_grid, y=None):
        """diagonal_grid: the (2m-1) x (2n-1) grid of diagonal values."""
        fld = field_by_name(self.field)
        grid = [list(row) for row in diagonal_grid]
        m = (len(grid) + 1) // 2
        n = (len(grid[0]) + 1) // 2
        self.matrix_ = tbt.TbtMatrix(fld, m, n, grid)
        self.m_, self.n_ = m, n
        return self

    def _check_fitted(self):
        if not hasattr(self, "matrix_"):
            raise NotFittedError("call fit() before solve()/predict()")

    def solve(self, g):
        self._check_fitted()
        u = tbt.solve_tbt(self.matrix_, list(g))
        if self.matrix_.field.exact:
            return u
        return np.asarray(u, dtype=float)

    def predict(self, g):
        return self.solve(g)
