"""Toeplitz matrices, their polynomial symbols, and a dense oracle solver.

A Toeplitz matrix of size n is stored as its 2n-1 diagonal values
t_{-n+1},...,t_{n-1} with entry T_ij = t_{i-j}.  The attached symbols are the
Laurent polynomial T(x) = sum t_i x^i and the wrap-around polynomial
T~(x) of degree <= 2n-1 whose coefficient i is t_i for i < n and t_{i-2n}
for i >= n.  They satisfy T~ = T+ + x^{2n} T- and agree on the 2n-th roots
of unity, which is what turns the matrix-vector product into a polynomial
product followed by a projection.
"""

from dataclasses import dataclass

import numpy as np

from . import linalg
from .poly import LaurentPoly, UniPoly


class ToeplitzMatrix:
    __slots__ = ("field", "n", "diagonals")

    def __init__(self, field, n, diagonals):
        if len(diagonals) != 2 * n - 1:
            raise ValueError(f"expected {2 * n - 1} diagonals, got {len(diagonals)}")
        self.field = field
        self.n = n
        self.diagonals = [field.coerce(d) for d in diagonals]

    @classmethod
    def identity(cls, field, n):
        diags = [field.zero] * (2 * n - 1)
        diags[n - 1] = field.one
        return cls(field, n, diags)

    def t(self, i):
        """Diagonal value t_i, zero outside the stored band."""
        if -self.n + 1 <= i <= self.n - 1:
            return self.diagonals[i + self.n - 1]
        return self.field.zero

    def dense(self):
        return [
            [self.t(i - j) for j in range(self.n)]
            for i in range(self.n)
        ]

    def to_numpy(self):
        from scipy.linalg import toeplitz as sp_toeplitz

        d = np.asarray(self.diagonals, dtype=float)
        # first column is t_0..t_{n-1}, first row t_0..t_{-n+1}
        return sp_toeplitz(d[self.n - 1:], d[self.n - 1::-1])

    def max_norm(self):
        return max(abs(d) for d in self.diagonals)

    def __eq__(self, other):
        if not isinstance(other, ToeplitzMatrix):
            return NotImplemented
        return (self.field == other.field and self.n == other.n
                and self.diagonals == other.diagonals)

    def __repr__(self):
        return f"ToeplitzMatrix(n={self.n}, diagonals={self.diagonals!r})"


@dataclass(frozen=True)
class ToeplitzSymbols:
    T_of_x: LaurentPoly
    T_tilde: UniPoly


def symbols(T):
    """Both polynomial symbols of T; T~ follows the wrap-around index rule."""
    n = T.n
    field = T.field
    laurent = LaurentPoly(
        field, {i: T.t(i) for i in range(-n + 1, n)}
    )
    tilde = [field.zero] * (2 * n)
    for i in range(2 * n):
        tilde[i] = T.t(i) if i < n else T.t(i - 2 * n)
    return ToeplitzSymbols(laurent, UniPoly(field, tilde))


def matvec(T, u):
    """T.u as the projection of T(x)u(x) onto the monomials 1..x^{n-1}."""
    n = T.n
    if len(u) != n:
        raise ValueError(f"vector length {len(u)} != {n}")
    if not T.field.exact:
        full = np.convolve(np.asarray(T.diagonals, dtype=float),
                           np.asarray(u, dtype=float))
        return [float(c) for c in full[n - 1:2 * n - 1]]
    # diagonals[k] holds t_{k-n+1}; convolution entry n-1+i is the x^i coefficient
    field = T.field
    out = [field.zero] * n
    for k, d in enumerate(T.diagonals):
        if d == 0:
            continue
        for j, uj in enumerate(u):
            i = k - n + 1 + j
            if 0 <= i < n:
                out[i] = out[i] + d * uj
    return out


def dense_solve(T, g):
    """Oracle solve of T u = g by dense elimination."""
    if len(g) != T.n:
        raise ValueError(f"rhs length {len(g)} != {T.n}")
    if T.field.exact:
        return linalg.exact_solve(T.dense(), [list(g)])[0]
    return [float(x) for x in linalg.float_solve(T.to_numpy(), np.asarray(g, dtype=float))]


def is_singular(T):
    if T.field.exact:
        return linalg.exact_is_singular(T.dense())
    return linalg.float_is_singular(T.to_numpy())


def assemble_S(T):
    """3n x 3n matrix of (p,q,r) -> T~ p + x^n q + (x^{2n}-1) r on degree <= n-1.

    Rows are the monomials 1..x^{3n-1}; the first n columns stack the shifted
    coefficients of T~, the next n place x^{n+j}, the last n place
    x^{2n+j} - x^j.
    """
    n = T.n
    field = T.field
    tilde = symbols(T).T_tilde
    rows = [[field.zero] * (3 * n) for _ in range(3 * n)]
    for j in range(n):
        for i, c in enumerate(tilde.coeffs):
            rows[i + j][j] = c
        rows[n + j][n + j] = field.one
        rows[2 * n + j][2 * n + j] = field.one
        rows[j][2 * n + j] = -field.one
    return rows


def symbol_windows(T, u_poly):
    """The three coefficient windows (T0 u, T1 u, T2 u) of T~(x) u(x).

    u_poly has degree <= n-1; the product has degree <= 3n-1 and its windows
    on (1..x^{n-1}), (x^n..x^{2n-1}), (x^{2n}..x^{3n-1}) are returned as
    vectors of length n.
    """
    n = T.n
    prod = symbols(T).T_tilde * u_poly
    padded = prod.padded(3 * n)
    return padded[0:n], padded[n:2 * n], padded[2 * n:3 * n]
