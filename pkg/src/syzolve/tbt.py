"""Toeplitz-block-Toeplitz layer: bivariate symbols, the nine-generator
vector, the 9mn x 9mn linearization, the eight basis syzygies, and the solve.

A TBT matrix of block size m (within-block index, variable x) and block
count n (block index, variable y) is stored as the (2m-1) x (2n-1) grid of
diagonal values t_{i,j}.  The solve goes through the structured system
"sum of generators times unknown blocks = g": the nine-block system
collapses by window bookkeeping to one dense mn x mn solve plus bivariate
polynomial products, and the remaining blocks come out by back-substitution
over the 3x3 grid of coefficient windows.
"""

from dataclasses import dataclass

import numpy as np

from . import linalg
from .errors import SyzolveError
from .poly import BiPoly


class TbtMatrix:
    __slots__ = ("field", "m", "n", "diagonals")

    def __init__(self, field, m, n, diagonals):
        if len(diagonals) != 2 * m - 1 or any(len(r) != 2 * n - 1 for r in diagonals):
            raise ValueError(f"expected a {2 * m - 1} x {2 * n - 1} diagonal grid")
        self.field = field
        self.m = m
        self.n = n
        self.diagonals = [[field.coerce(v) for v in row] for row in diagonals]

    @classmethod
    def identity(cls, field, m, n):
        grid = [[field.zero] * (2 * n - 1) for _ in range(2 * m - 1)]
        grid[m - 1][n - 1] = field.one
        return cls(field, m, n, grid)

    def t(self, i, j):
        """Diagonal value t_{i,j}, zero outside the stored grid."""
        if -self.m + 1 <= i <= self.m - 1 and -self.n + 1 <= j <= self.n - 1:
            return self.diagonals[i + self.m - 1][j + self.n - 1]
        return self.field.zero

    def dense(self):
        """mn x mn matrix; flat index of (i1, i2) in E is i2*m + i1."""
        m, n = self.m, self.n
        rows = []
        for i2 in range(n):
            for i1 in range(m):
                rows.append([
                    self.t(i1 - j1, i2 - j2)
                    for j2 in range(n)
                    for j1 in range(m)
                ])
        return rows

    def to_numpy(self):
        return np.array(self.dense(), dtype=float)

    def max_norm(self):
        return max(abs(v) for row in self.diagonals for v in row)

    def __repr__(self):
        return f"TbtMatrix(m={self.m}, n={self.n})"


@dataclass(frozen=True)
class TbtSymbols:
    T_of_xy: dict  # bivariate Laurent polynomial: (i, j) exponent pair -> coeff
    T_tilde: BiPoly


def tbt_symbols(T):
    """Both bivariate symbols; T~ follows the four-quadrant wrap rule."""
    m, n = T.m, T.n
    laurent = {
        (i, j): T.t(i, j)
        for i in range(-m + 1, m)
        for j in range(-n + 1, n)
        if T.t(i, j) != 0
    }
    grid = [
        [
            T.t(i if i < m else i - 2 * m, j if j < n else j - 2 * n)
            for j in range(2 * n)
        ]
        for i in range(2 * m)
    ]
    return TbtSymbols(laurent, BiPoly(T.field, grid))


def generator_vec9(T):
    """The ordered nine-generator vector; entries 2..9 depend only on (m, n)."""
    field = T.field
    m, n = T.m, T.n
    one = BiPoly.one(field)
    xm = BiPoly.monomial(field, m, 0)
    x2m = BiPoly.monomial(field, 2 * m, 0) - one
    yn = BiPoly.monomial(field, 0, n)
    y2n = BiPoly.monomial(field, 0, 2 * n) - one
    return [
        tbt_symbols(T).T_tilde,
        xm,
        x2m,
        yn,
        xm * yn,
        x2m * yn,
        y2n,
        xm * y2n,
        x2m * y2n,
    ]


def vec_to_bipoly(field, m, n, vec):
    if len(vec) != m * n:
        raise ValueError(f"vector length {len(vec)} != {m * n}")
    grid = [[vec[j * m + i] for j in range(n)] for i in range(m)]
    return BiPoly.from_grid(field, grid)


def bipoly_to_vec(p, m, n):
    return [p.coeff(i, j) for j in range(n) for i in range(m)]


def tbt_matvec(T, u):
    """T.u as the projection of T(x,y) u(x,y) onto the exponent box E."""
    m, n = T.m, T.n
    if len(u) != m * n:
        raise ValueError(f"vector length {len(u)} != {m * n}")
    if not T.field.exact:
        D = np.array(T.diagonals, dtype=float)
        U = np.array([[u[j * m + i] for j in range(n)] for i in range(m)], dtype=float)
        from scipy.signal import fftconvolve

        full = fftconvolve(D, U)
        box = full[m - 1:2 * m - 1, n - 1:2 * n - 1]
        return [float(box[i, j]) for j in range(n) for i in range(m)]
    field = T.field
    out = [[field.zero] * n for _ in range(m)]
    for a, row in enumerate(T.diagonals):
        for b, d in enumerate(row):
            if d == 0:
                continue
            di, dj = a - m + 1, b - n + 1
            for i1 in range(max(0, -di), min(m, m - di)):
                oi = i1 + di
                orow = out[oi]
                for i2 in range(max(0, -dj), min(n, n - dj)):
                    orow[i2 + dj] = orow[i2 + dj] + d * u[i2 * m + i1]
    return [out[i][j] for j in range(n) for i in range(m)]


def dense_solve_tbt(T, g):
    """Oracle solve of the TBT system by dense block-assembled elimination."""
    if len(g) != T.m * T.n:
        raise ValueError(f"rhs length {len(g)} != {T.m * T.n}")
    if T.field.exact:
        return linalg.exact_solve(T.dense(), [list(g)])[0]
    return [float(x) for x in linalg.float_solve(T.to_numpy(), np.asarray(g, dtype=float))]


def is_singular(T):
    if T.field.exact:
        return linalg.exact_is_singular(T.dense())
    return linalg.float_is_singular(T.to_numpy())


def assemble_S9(T):
    """9mn x 9mn matrix of p -> sum_k gen_k p_k on the (m-1, n-1) box.

    Rows are the monomials of the (3m-1, 3n-1) box (flat index b*3m + a);
    columns run generator-major, then box-major in the same flat order.
    """
    m, n = T.m, T.n
    field = T.field
    gens = generator_vec9(T)
    size = 9 * m * n
    rows = [[field.zero] * size for _ in range(size)]
    col = 0
    for gen in gens:
        for b in range(n):
            for a in range(m):
                shifted = gen.shift(a, b) if (a or b) else gen
                for i, grow in enumerate(shifted.coeffs):
                    for j, c in enumerate(grow):
                        if c != 0:
                            rows[j * 3 * m + i][col] = c
                col += 1
    return rows


def _windows(p, m, n):
    """3x3 grid of m x n coefficient windows of a (3m-1, 3n-1)-box polynomial."""
    out = {}
    for I in range(3):
        for J in range(3):
            out[(I, J)] = BiPoly(
                p.field,
                [
                    [p.coeff(I * m + i, J * n + j) for j in range(n)]
                    for i in range(m)
                ],
            )
    return out


def solve_structured(T, G):
    """Solve sum_k gen_k h_k = G with every h_k in the (m-1, n-1) box.

    The window bookkeeping of the monomial generators eliminates h_2..h_9,
    leaving the dense system T h_1 = G_00 + G_20 + G_02 + G_22; the other
    blocks come back by substitution and the leftover window equation is
    checked, which certifies the construction.
    """
    m, n = T.m, T.n
    field = T.field
    if G.deg_x > 3 * m - 1 or G.deg_y > 3 * n - 1:
        raise ValueError("right-hand side outside the target box")
    Gw = _windows(G, m, n)
    rhs = Gw[(0, 0)] + Gw[(2, 0)] + Gw[(0, 2)] + Gw[(2, 2)]
    h1_vec = dense_solve_tbt(T, bipoly_to_vec(rhs, m, n))
    h1 = vec_to_bipoly(field, m, n, h1_vec)
    Pw = _windows(tbt_symbols(T).T_tilde * h1, m, n)

    h5 = Gw[(1, 1)] - Pw[(1, 1)]
    h8 = Gw[(1, 2)] - Pw[(1, 2)]
    h2 = Gw[(1, 0)] - Pw[(1, 0)] + h8
    h6 = Gw[(2, 1)] - Pw[(2, 1)]
    h4 = Gw[(0, 1)] - Pw[(0, 1)] + h6
    h9 = Gw[(2, 2)] - Pw[(2, 2)]
    h3 = Gw[(2, 0)] - Pw[(2, 0)] + h9
    h7 = Gw[(0, 2)] - Pw[(0, 2)] + h9

    leftover = Pw[(0, 0)] - h3 - h7 + h9 - Gw[(0, 0)]
    if field.exact:
        if not leftover.is_zero():
            raise SyzolveError("structured solve left a nonzero (0,0) window")
    else:
        scale = max(G.max_norm(), T.max_norm() * max(h1.max_norm(), 1.0), 1.0)
        if leftover.max_norm() > 1e-8 * scale:
            raise SyzolveError(
                f"structured solve residual {leftover.max_norm():.3e} too large"
            )
    return [h1, h2, h3, h4, h5, h6, h7, h8, h9]


@dataclass(frozen=True)
class SyzygySet9:
    rho: list  # eight 9-tuples of BiPoly
    m: int
    n: int


def verify_syzygy9(T, vec9):
    """Residual sum_k gen_k vec9_k; zero iff vec9 is a syzygy of the nine-vector."""
    gens = generator_vec9(T)
    acc = BiPoly.zero(T.field)
    for gen, h in zip(gens, vec9):
        if not h.is_zero():
            acc = acc + gen * h
    return acc


def generators_rho(T):
    """The eight explicit generators rho_1..rho_8 of the syzygy module."""
    field = T.field
    m, n = T.m, T.n
    tilde = tbt_symbols(T).T_tilde
    xm = BiPoly.monomial(field, m, 0)
    yn = BiPoly.monomial(field, 0, n)
    one = BiPoly.one(field)
    zero = BiPoly.zero(field)

    u1 = solve_structured(T, tilde.shift(m, 0))
    u2 = solve_structured(T, tilde.shift(0, n))
    u3 = solve_structured(T, one)

    def sigma(k, p):
        vec = [zero] * 9
        vec[k] = p
        return vec

    def vsub(a, b):
        return [x - y for x, y in zip(a, b)]

    rho1 = vsub(sigma(0, xm), u1)
    rho2 = vsub(sigma(0, yn), u2)
    rho3 = vsub(vsub(sigma(1, xm), sigma(2, one)), u3)
    rho4 = vsub(vsub(sigma(3, yn), sigma(6, one)), u3)
    rho5 = vsub(sigma(1, yn), sigma(4, one))
    rho6 = vsub(sigma(3, xm), sigma(4, one))
    # the sigma_4 / sigma_2 corrections carry a minus sign: only
    # x^m sigma_5 - sigma_6 - sigma_4 (resp. y^n sigma_5 - sigma_8 - sigma_2)
    # satisfies the membership identity, which is the binding contract
    rho7 = [x - y - z for x, y, z in zip(sigma(4, xm), sigma(5, one), sigma(3, one))]
    rho8 = [x - y - z for x, y, z in zip(sigma(4, yn), sigma(7, one), sigma(1, one))]

    rhos = [rho1, rho2, rho3, rho4, rho5, rho6, rho7, rho8]
    for idx, r in enumerate(rhos, start=1):
        res = verify_syzygy9(T, r)
        if field.exact:
            ok = res.is_zero()
        else:
            ok = res.max_norm() <= 1e-8 * max(tilde.max_norm(), 1.0) * max(
                max(h.max_norm() for h in r), 1.0
            )
        if not ok:
            raise SyzolveError(f"constructed rho_{idx} is not a syzygy")
    return SyzygySet9(rhos, m, n)


def solve_tbt(T, g):
    """Solve T u = g through the structured nine-block system."""
    m, n = T.m, T.n
    G = vec_to_bipoly(T.field, m, n, [T.field.coerce(x) for x in g])
    h = solve_structured(T, G)
    return bipoly_to_vec(h[0], m, n)


def extract_B_xy(set9):
    """4 x 3 matrix of the sigma_1, sigma_2, sigma_4, sigma_5 coefficients of
    rho_1, rho_2, rho_3 (the leading-pattern matrix plus low-box terms)."""
    rows = []
    for slot in (0, 1, 3, 4):
        rows.append([set9.rho[k][slot] for k in range(3)])
    return rows
