"""Dense univariate / bivariate polynomials and Laurent polynomials.

Coefficients live in one of the fields from :mod:`syzolve.fields`.  The exact
field multiplies by schoolbook below degree 32 and Karatsuba above; the float
field multiplies through an FFT of the smallest power-of-two length covering
the product.  The degree of the zero polynomial is the sentinel ``NEG_INF``
(never an integer), so degree bookkeeping in the Euclidean algorithm cannot
silently wrap.
"""

import numpy as np

from .errors import UnsupportedFieldError

NEG_INF = float("-inf")

KARATSUBA_THRESHOLD = 32


class UniPoly:
    """Dense univariate polynomial, ascending coefficients, immutable by use."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs, trim=True):
        if trim:
            k = len(coeffs)
            while k > 0 and coeffs[k - 1] == 0:
                k -= 1
            coeffs = list(coeffs[:k])
        self.field = field
        self.coeffs = coeffs

    @classmethod
    def zero(cls, field):
        return cls(field, [], trim=False)

    @classmethod
    def one(cls, field):
        return cls(field, [field.one], trim=False)

    @classmethod
    def x_power(cls, field, k, c=None):
        if c is None:
            c = field.one
        return cls(field, [field.zero] * k + [c], trim=False)

    @classmethod
    def from_list(cls, field, values):
        return cls(field, [field.coerce(v) for v in values])

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    def is_zero(self):
        return not self.coeffs

    def __getitem__(self, i):
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return self.field.zero

    def padded(self, length):
        return self.coeffs + [self.field.zero] * (length - len(self.coeffs))

    def leading(self):
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __eq__(self, other):
        if not isinstance(other, UniPoly):
            return NotImplemented
        return self.field == other.field and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.field, tuple(self.coeffs)))

    def __neg__(self):
        return UniPoly(self.field, [-c for c in self.coeffs], trim=False)

    def __add__(self, other):
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return UniPoly(self.field, out)

    def __sub__(self, other):
        n = max(len(self.coeffs), len(other.coeffs))
        out = self.padded(n)
        for i, c in enumerate(other.coeffs):
            out[i] = out[i] - c
        return UniPoly(self.field, out)

    def scale(self, c):
        c = self.field.coerce(c)
        if c == 0:
            return UniPoly.zero(self.field)
        return UniPoly(self.field, [a * c for a in self.coeffs], trim=False)

    def shift(self, k):
        """Multiply by x^k."""
        if self.is_zero() or k == 0:
            return self if k == 0 else UniPoly(self.field, list(self.coeffs), trim=False)
        return UniPoly(self.field, [self.field.zero] * k + self.coeffs, trim=False)

    def __mul__(self, other):
        if self.is_zero() or other.is_zero():
            return UniPoly.zero(self.field)
        if not self.field.exact:
            return UniPoly(self.field, _fft_mul(self.coeffs, other.coeffs))
        return UniPoly(self.field, _exact_mul(self.field, self.coeffs, other.coeffs))

    def mul_schoolbook(self, other):
        if self.is_zero() or other.is_zero():
            return UniPoly.zero(self.field)
        return UniPoly(
            self.field, _schoolbook(self.field, self.coeffs, other.coeffs)
        )

    def truncate(self, k):
        """Coefficients of degree < k."""
        return UniPoly(self.field, self.coeffs[:k])

    def reverse(self, d):
        """x^d * p(1/x) on the coefficient window of length d+1."""
        if self.degree > d:
            raise ValueError(f"reverse window {d} smaller than degree {self.degree}")
        return UniPoly(self.field, list(reversed(self.padded(d + 1))))

    def divmod(self, other):
        """Scalar polynomial long division; divisor leading coeff inverted exactly."""
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        if self.degree < other.degree:
            return UniPoly.zero(self.field), self
        field = self.field
        rem = list(self.coeffs)
        dn = len(other.coeffs) - 1
        lead_inv = field.inv(other.coeffs[-1])
        q = [field.zero] * (len(rem) - dn)
        for i in range(len(rem) - dn - 1, -1, -1):
            c = rem[i + dn] * lead_inv
            if c == 0:
                continue
            q[i] = c
            for j, bc in enumerate(other.coeffs):
                rem[i + j] = rem[i + j] - c * bc
        return UniPoly(field, q), UniPoly(field, rem[:dn])

    def exact_div(self, other):
        """Division that must be exact; raises if a remainder survives."""
        q, r = self.divmod(other)
        if not r.is_zero():
            raise ValueError("inexact polynomial division")
        return q

    def normalize(self, eps):
        """Drop trailing coefficients of magnitude <= eps (float field, explicit)."""
        coeffs = list(self.coeffs)
        while coeffs and abs(coeffs[-1]) <= eps:
            coeffs.pop()
        return UniPoly(self.field, coeffs, trim=False)

    def __call__(self, x):
        acc = self.field.zero if not isinstance(x, (complex, float)) else 0 * x
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def max_norm(self):
        return max((abs(c) for c in self.coeffs), default=0)

    def __repr__(self):
        if self.is_zero():
            return "UniPoly(0)"
        terms = [f"{c}*x^{i}" for i, c in enumerate(self.coeffs) if c != 0]
        return "UniPoly(" + " + ".join(terms) + ")"


def _schoolbook(field, a, b):
    out = [field.zero] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai == 0:
            continue
        for j, bj in enumerate(b):
            out[i + j] = out[i + j] + ai * bj
    return out


def _exact_mul(field, a, b):
    if min(len(a), len(b)) <= KARATSUBA_THRESHOLD:
        return _schoolbook(field, a, b)
    h = min(len(a), len(b)) // 2
    a0, a1 = a[:h], a[h:]
    b0, b1 = b[:h], b[h:]
    z0 = _exact_mul(field, a0, b0)
    z2 = _exact_mul(field, a1, b1)
    sa = [x + y for x, y in _zip_pad(field, a0, a1)]
    sb = [x + y for x, y in _zip_pad(field, b0, b1)]
    z1 = _exact_mul(field, sa, sb)
    out = [field.zero] * (len(a) + len(b) - 1)
    for i, c in enumerate(z0):
        out[i] = out[i] + c
    for i, c in enumerate(z2):
        out[i + 2 * h] = out[i + 2 * h] + c
    for i, c in enumerate(z1):
        out[i + h] = out[i + h] + c
    for i, c in enumerate(z0):
        out[i + h] = out[i + h] - c
    for i, c in enumerate(z2):
        out[i + h] = out[i + h] - c
    return out


def _zip_pad(field, a, b):
    n = max(len(a), len(b))
    a = a + [field.zero] * (n - len(a))
    b = b + [field.zero] * (n - len(b))
    return zip(a, b)


def _fft_mul(a, b):
    n = len(a) + len(b) - 1
    size = 1 << max(0, (n - 1).bit_length())
    fa = np.asarray(a)
    fb = np.asarray(b)
    if np.iscomplexobj(fa) or np.iscomplexobj(fb):
        out = np.fft.ifft(np.fft.fft(fa, size) * np.fft.fft(fb, size))[:n]
        return list(out)
    out = np.fft.irfft(np.fft.rfft(fa, size) * np.fft.rfft(fb, size), size)[:n]
    return [float(c) for c in out]


def eval_at_roots_of_unity(p, N):
    """Values [p(w^j)] at the N-th roots of unity, FFT (w = e^{-2*pi*i/N}) order."""
    if p.field.exact:
        raise UnsupportedFieldError("rational field has no roots of unity")
    if p.degree >= N:
        raise ValueError(f"degree {p.degree} too high for {N} evaluation points")
    return list(np.fft.fft(np.asarray(p.padded(N), dtype=complex)))


class LaurentPoly:
    """Sparse Laurent polynomial: exponent (possibly negative) -> coefficient."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs):
        self.field = field
        self.coeffs = {e: c for e, c in coeffs.items() if c != 0}

    @classmethod
    def from_unipoly(cls, p, offset=0):
        return cls(p.field, {i + offset: c for i, c in enumerate(p.coeffs)})

    def split(self):
        """(plus, minus): the exponent >= 0 part as a UniPoly and the rest."""
        plus = {e: c for e, c in self.coeffs.items() if e >= 0}
        minus = {e: c for e, c in self.coeffs.items() if e < 0}
        deg = max(plus, default=-1)
        dense = [self.field.zero] * (deg + 1)
        for e, c in plus.items():
            dense[e] = c
        return UniPoly(self.field, dense), LaurentPoly(self.field, minus)

    def __add__(self, other):
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            out[e] = out.get(e, self.field.zero) + c
        return LaurentPoly(self.field, out)

    def __mul__(self, other):
        out = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                e = e1 + e2
                out[e] = out.get(e, self.field.zero) + c1 * c2
        return LaurentPoly(self.field, out)

    def shift(self, k):
        return LaurentPoly(self.field, {e + k: c for e, c in self.coeffs.items()})

    def __eq__(self, other):
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.field == other.field and self.coeffs == other.coeffs

    def __call__(self, x):
        return sum((c * x**e for e, c in self.coeffs.items()), start=0 * x)

    def __repr__(self):
        if not self.coeffs:
            return "LaurentPoly(0)"
        terms = [f"{c}*x^{e}" for e, c in sorted(self.coeffs.items())]
        return "LaurentPoly(" + " + ".join(terms) + ")"


class BiPoly:
    """Dense bivariate polynomial; coeffs[i][j] is the coefficient of x^i y^j."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs, trim=True):
        if trim:
            coeffs = _trim_grid(coeffs)
        self.field = field
        self.coeffs = coeffs

    @classmethod
    def zero(cls, field):
        return cls(field, [], trim=False)

    @classmethod
    def one(cls, field):
        return cls(field, [[field.one]], trim=False)

    @classmethod
    def monomial(cls, field, a, b, c=None):
        if c is None:
            c = field.one
        grid = [[field.zero] * (b + 1) for _ in range(a + 1)]
        grid[a][b] = c
        return cls(field, grid, trim=False)

    @classmethod
    def from_grid(cls, field, grid):
        return cls(field, [[field.coerce(v) for v in row] for row in grid])

    @property
    def deg_x(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    @property
    def deg_y(self):
        return max((len(r) for r in self.coeffs), default=0) - 1 if self.coeffs else NEG_INF

    def is_zero(self):
        return not self.coeffs

    def coeff(self, i, j):
        if 0 <= i < len(self.coeffs) and 0 <= j < len(self.coeffs[i]):
            return self.coeffs[i][j]
        return self.field.zero

    def padded(self, nx, ny):
        return [
            [self.coeff(i, j) for j in range(ny)]
            for i in range(nx)
        ]

    def __eq__(self, other):
        if not isinstance(other, BiPoly):
            return NotImplemented
        nx = max(len(self.coeffs), len(other.coeffs))
        ny = max(
            max((len(r) for r in self.coeffs), default=0),
            max((len(r) for r in other.coeffs), default=0),
        )
        return self.field == other.field and self.padded(nx, ny) == other.padded(nx, ny)

    def __neg__(self):
        return BiPoly(self.field, [[-c for c in row] for row in self.coeffs], trim=False)

    def __add__(self, other):
        nx = max(len(self.coeffs), len(other.coeffs))
        ny = max(
            max((len(r) for r in self.coeffs), default=0),
            max((len(r) for r in other.coeffs), default=0),
        )
        a = self.padded(nx, ny)
        b = other.padded(nx, ny)
        return BiPoly(
            self.field,
            [[a[i][j] + b[i][j] for j in range(ny)] for i in range(nx)],
        )

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        c = self.field.coerce(c)
        return BiPoly(self.field, [[a * c for a in row] for row in self.coeffs])

    def shift(self, a, b):
        """Multiply by x^a y^b."""
        if self.is_zero():
            return self
        ny = max(len(r) for r in self.coeffs)
        out = [[self.field.zero] * (ny + b) for _ in range(a)]
        for row in self.coeffs:
            out.append([self.field.zero] * b + list(row) + [self.field.zero] * (ny - len(row)))
        return BiPoly(self.field, out, trim=False)

    def __mul__(self, other):
        if self.is_zero() or other.is_zero():
            return BiPoly.zero(self.field)
        if not self.field.exact:
            return BiPoly(self.field, _fft_mul_2d(self, other))
        field = self.field
        nx = len(self.coeffs) + len(other.coeffs) - 1
        ny = (max(len(r) for r in self.coeffs)
              + max(len(r) for r in other.coeffs) - 1)
        out = [[field.zero] * ny for _ in range(nx)]
        for i, row_a in enumerate(self.coeffs):
            for j, a in enumerate(row_a):
                if a == 0:
                    continue
                for k, row_b in enumerate(other.coeffs):
                    orow = out[i + k]
                    for l, b in enumerate(row_b):
                        orow[j + l] = orow[j + l] + a * b
        return BiPoly(field, out)

    def __call__(self, x, y):
        acc = 0 * x
        for i, row in enumerate(self.coeffs):
            for j, c in enumerate(row):
                if c != 0:
                    acc = acc + c * x**i * y**j
        return acc

    def max_norm(self):
        return max((abs(c) for row in self.coeffs for c in row), default=0)

    def __repr__(self):
        if self.is_zero():
            return "BiPoly(0)"
        terms = [
            f"{c}*x^{i}y^{j}"
            for i, row in enumerate(self.coeffs)
            for j, c in enumerate(row)
            if c != 0
        ]
        return "BiPoly(" + " + ".join(terms) + ")"


def _trim_grid(grid):
    grid = [list(row) for row in grid]
    ny = max((len(r) for r in grid), default=0)
    for row in grid:
        row.extend([0] * (ny - len(row)))
    while grid and all(c == 0 for c in grid[-1]):
        grid.pop()
    if grid:
        while ny > 0 and all(row[ny - 1] == 0 for row in grid):
            ny -= 1
        grid = [row[:ny] for row in grid]
    return grid


def _fft_mul_2d(p, q):
    pa = np.asarray(p.padded(len(p.coeffs), max(len(r) for r in p.coeffs)), dtype=float)
    qa = np.asarray(q.padded(len(q.coeffs), max(len(r) for r in q.coeffs)), dtype=float)
    nx = pa.shape[0] + qa.shape[0] - 1
    ny = pa.shape[1] + qa.shape[1] - 1
    sx = 1 << max(0, (nx - 1).bit_length())
    sy = 1 << max(0, (ny - 1).bit_length())
    out = np.fft.irfft2(
        np.fft.rfft2(pa, s=(sx, sy)) * np.fft.rfft2(qa, s=(sx, sy)), s=(sx, sy)
    )[:nx, :ny]
    return [[float(c) for c in row] for row in out]
