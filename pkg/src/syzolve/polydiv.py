"""Division of a polynomial 2-vector by a 2x2 polynomial matrix.

The divisor must have an invertible leading-coefficient matrix.  Reversing
coefficients (p(x) -> x^d p(1/x)) turns the division into a power-series
problem at the origin: the reversed quotient is the first m-n+1 coefficients
of W(z) E^(z) where W is the truncated inverse of the reversed divisor,
computed by Newton iteration W <- 2W - W B^ W with doubling precision.
A naive long-division path is kept alongside as an independent oracle.
"""

from dataclasses import dataclass

from .errors import LeadingCoefficientError, NumericalBreakdownError
from .poly import NEG_INF, UniPoly


@dataclass(frozen=True)
class PolyMat2:
    """2x2 matrix with univariate polynomial entries."""

    a: UniPoly
    b: UniPoly
    c: UniPoly
    d: UniPoly

    @property
    def field(self):
        return self.a.field

    @property
    def degree(self):
        return max(self.a.degree, self.b.degree, self.c.degree, self.d.degree)

    @classmethod
    def identity(cls, field):
        one, zero = UniPoly.one(field), UniPoly.zero(field)
        return cls(one, zero, zero, one)

    def entries(self):
        return (self.a, self.b, self.c, self.d)

    def coeff_matrix(self, k):
        """The 2x2 scalar matrix of x^k coefficients."""
        return ((self.a[k], self.b[k]), (self.c[k], self.d[k]))

    def __add__(self, other):
        return PolyMat2(*(x + y for x, y in zip(self.entries(), other.entries())))

    def __sub__(self, other):
        return PolyMat2(*(x - y for x, y in zip(self.entries(), other.entries())))

    def __matmul__(self, other):
        if isinstance(other, PolyVec2):
            return PolyVec2(self.a * other.p + self.b * other.q,
                            self.c * other.p + self.d * other.q)
        return PolyMat2(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def scale(self, k):
        return PolyMat2(*(e.scale(k) for e in self.entries()))

    def truncate(self, k):
        return PolyMat2(*(e.truncate(k) for e in self.entries()))

    def reverse(self, deg):
        return PolyMat2(*(e.reverse(deg) for e in self.entries()))

    def max_norm(self):
        return max(e.max_norm() for e in self.entries())


@dataclass(frozen=True)
class PolyVec2:
    p: UniPoly
    q: UniPoly

    @property
    def field(self):
        return self.p.field

    @property
    def degree(self):
        return max(self.p.degree, self.q.degree)

    @classmethod
    def zero(cls, field):
        z = UniPoly.zero(field)
        return cls(z, z)

    def entries(self):
        return (self.p, self.q)

    def __add__(self, other):
        return PolyVec2(self.p + other.p, self.q + other.q)

    def __sub__(self, other):
        return PolyVec2(self.p - other.p, self.q - other.q)

    def truncate(self, k):
        return PolyVec2(self.p.truncate(k), self.q.truncate(k))

    def reverse(self, deg):
        return PolyVec2(self.p.reverse(deg), self.q.reverse(deg))

    def max_norm(self):
        return max(self.p.max_norm(), self.q.max_norm())

    def is_zero(self):
        return self.p.is_zero() and self.q.is_zero()


def _invert_2x2(field, m):
    (a, b), (c, d) = m
    det = a * d - b * c
    if det == 0:
        raise LeadingCoefficientError("2x2 constant block is singular")
    inv = field.inv(det)
    return ((d * inv, -b * inv), (-c * inv, a * inv))


def _const_mat2(field, m):
    (a, b), (c, d) = m
    mk = lambda v: UniPoly(field, [v])
    return PolyMat2(mk(a), mk(b), mk(c), mk(d))


def newton_inverse_truncated(bhat, k):
    """W with W bhat = I mod x^k, by Newton iteration with doubling precision."""
    if k < 1:
        raise ValueError("truncation order must be >= 1")
    field = bhat.field
    w = _const_mat2(field, _invert_2x2(field, bhat.coeff_matrix(0)))
    prec = 1
    while prec < k:
        prec = min(2 * prec, k)
        bt = bhat.truncate(prec)
        w = (w.scale(2) - ((w @ bt).truncate(prec) @ w)).truncate(prec)
    return w


def matrix_divrem(E, B, method="auto"):
    """Quotient and remainder of E by B: E = B Q + R, deg R < deg B.

    method: "newton" (reversal + truncated power-series inverse), "naive"
    (long division, the independent oracle), or "auto", which picks newton
    over floats and a common-denominator integer long division over exact
    rationals (Newton's truncated inverse suffers severe rational-coefficient
    swell, and normalizing every intermediate dominates the runtime).
    """
    n = B.degree
    if n == NEG_INF:
        raise LeadingCoefficientError("zero divisor matrix")
    n = int(n)
    _require_invertible_leading(B, n)
    m = E.degree
    if m == NEG_INF or m < n:
        return PolyVec2.zero(E.field), E
    m = int(m)
    if method == "auto":
        if E.field.exact and B.coeff_matrix(n) == (
            (E.field.one, E.field.zero),
            (E.field.zero, E.field.one),
        ):
            return _divrem_exact_scaled(E, B, m, n)
        method = "newton" if not E.field.exact else "naive"
    if method == "naive":
        return _divrem_naive(E, B, m, n)
    ehat = E.reverse(m)
    bhat = B.reverse(n)
    w = newton_inverse_truncated(bhat, m - n + 1)
    qhat = (w @ ehat).truncate(m - n + 1)
    Q = qhat.reverse(m - n)
    R = E - (B @ Q)
    return _checked_remainder(E, B, Q, R, n)


def _require_invertible_leading(B, n):
    field = B.field
    (a, b), (c, d) = B.coeff_matrix(n)
    if a * d - b * c == 0:
        raise LeadingCoefficientError("leading-coefficient matrix is singular")


def _divrem_exact_scaled(E, B, m, n):
    """Long division for a divisor with identity leading-coefficient matrix.

    Clears B's denominators once (common denominator D) and runs the whole
    division over integers, tracking the running denominator D^j implicitly;
    fractions are reduced only when a quotient or remainder coefficient is
    emitted.  Same result as the other methods, much cheaper over rationals.
    """
    from gmpy2 import lcm, mpq, mpz

    field = E.field
    D = mpz(1)
    for e in B.entries():
        for c in e.coeffs:
            D = lcm(D, mpq(c).denominator)
    nb = []
    for e in B.entries():
        cs = e.padded(n + 1)
        nb.append([mpz(mpq(c).numerator * (D // mpq(c).denominator)) for c in cs])
    n11, n12, n21, n22 = nb

    DE = mpz(1)
    for e in E.entries():
        for c in e.coeffs:
            DE = lcm(DE, mpq(c).denominator)
    rp = [mpz(mpq(c).numerator * (DE // mpq(c).denominator)) for c in E.p.padded(m + 1)]
    rq = [mpz(mpq(c).numerator * (DE // mpq(c).denominator)) for c in E.q.padded(m + 1)]

    den = DE
    qp = [field.zero] * (m - n + 1)
    qq = [field.zero] * (m - n + 1)
    for k in range(m - n, -1, -1):
        top = k + n
        q0, q1 = rp[top], rq[top]
        qp[k] = field.coerce(mpq(q0, den))
        qq[k] = field.coerce(mpq(q1, den))
        for i in range(top):
            rp[i] *= D
            rq[i] *= D
        for i in range(n):
            j = k + i
            rp[j] -= q0 * n11[i] + q1 * n12[i]
            rq[j] -= q0 * n21[i] + q1 * n22[i]
        rp[top] = rq[top] = mpz(0)
        den *= D
    Q = PolyVec2(UniPoly(field, qp), UniPoly(field, qq))
    R = PolyVec2(
        UniPoly(field, [field.coerce(mpq(c, den)) for c in rp[:n]]),
        UniPoly(field, [field.coerce(mpq(c, den)) for c in rq[:n]]),
    )
    return Q, R


def _divrem_naive(E, B, m, n):
    field = E.field
    lc_inv = _invert_2x2(field, B.coeff_matrix(n))
    R = E
    qp = [field.zero] * (m - n + 1)
    qq = [field.zero] * (m - n + 1)
    while R.degree >= n:
        d = int(R.degree)
        r0, r1 = R.p[d], R.q[d]
        c0 = lc_inv[0][0] * r0 + lc_inv[0][1] * r1
        c1 = lc_inv[1][0] * r0 + lc_inv[1][1] * r1
        qp[d - n] = qp[d - n] + c0
        qq[d - n] = qq[d - n] + c1
        step = PolyVec2(UniPoly.x_power(field, d - n, c0),
                        UniPoly.x_power(field, d - n, c1))
        R = R - (B @ step)
        if R.degree >= d:
            raise NumericalBreakdownError("long division failed to lower degree")
    Q = PolyVec2(UniPoly(field, qp), UniPoly(field, qq))
    return Q, R


def _checked_remainder(E, B, Q, R, n):
    field = E.field
    if field.exact:
        if R.degree >= n:
            raise NumericalBreakdownError(
                f"remainder degree {R.degree} not below divisor degree {n}"
            )
        return Q, R
    # float path: coefficients at degree >= n must be FFT noise; chop them
    scale = max(E.max_norm(), B.max_norm() * max(Q.max_norm(), 1.0), 1.0)
    tol = 1e-9 * scale
    chopped = []
    for e in R.entries():
        high = e.coeffs[n:]
        if any(abs(c) > tol for c in high):
            raise NumericalBreakdownError(
                f"remainder tail {max(abs(c) for c in high):.3e} above {tol:.3e}"
            )
        chopped.append(UniPoly(field, e.coeffs[:n]))
    return Q, PolyVec2(*chopped)


def reduce_vec3(vec, basis):
    """Remainder of a 3-vector by a syzygy basis, on the first two coordinates.

    The quotient depends only on the (sigma1, sigma2) block; the third
    coordinate is carried through so the remainder is a full 3-vector with
    all components of degree <= n-1.
    """
    from .syzygy import SyzygyVec3

    B = PolyMat2(basis.rho1.u, basis.rho2.u, basis.rho1.v, basis.rho2.v)
    E = PolyVec2(vec.u, vec.v)
    Q, R = matrix_divrem(E, B)
    w = vec.w - (basis.rho1.w * Q.p + basis.rho2.w * Q.q)
    if not vec.u.field.exact:
        w = w.normalize(1e-9 * max(w.max_norm(), 1.0)) if w.degree >= basis.n else w
    return SyzygyVec3(R.p, R.q, w)
