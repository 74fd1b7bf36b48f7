"""Degree-n bases of the syzygy module L(T~(x), x^n, x^{2n}-1).

Two construction routes are provided.  The dense route solves the structured
3n x 3n system (block-eliminated down to one dense n x n Toeplitz solve) for
the right-hand sides T~(x) x^n and 1.  The Euclidean route runs the extended
Euclidean algorithm on x^{n-1} T(x) and x^{2n-1} and reads both generators
off the cofactor sequences.  For invertible T both routes produce the same
normalized basis: the coefficient vectors of x^n in (rho1, rho2) form the
2x2 identity on the first two coordinates, and a degree-n syzygy with a
prescribed leading vector is unique because no nonzero syzygy of degree
<= n-1 exists.
"""

from dataclasses import dataclass

from . import linalg, toeplitz
from .errors import (
    DegenerateSequenceError,
    NumericalBreakdownError,
    SingularMatrixError,
    SyzolveError,
)
from .poly import NEG_INF, UniPoly


@dataclass(frozen=True)
class SyzygyVec3:
    u: UniPoly
    v: UniPoly
    w: UniPoly

    def max_degree(self):
        return max(self.u.degree, self.v.degree, self.w.degree)

    def __sub__(self, other):
        return SyzygyVec3(self.u - other.u, self.v - other.v, self.w - other.w)


@dataclass(frozen=True)
class SyzygyBasis:
    rho1: SyzygyVec3
    rho2: SyzygyVec3
    n: int


@dataclass(frozen=True)
class EeaTrace:
    r: list
    s: list
    t: list
    q: list


def extended_euclid(p, pprime, stop_deg, unstable_ok=False):
    """Extended Euclidean algorithm, traced, stopping once deg r <= stop_deg.

    Keeps the full r/s/t sequences so callers can pick the step where the
    remainder degree crosses their target.  Over floats the remainder degree
    must strictly decrease from step to step; cancellation that breaks this
    raises NumericalBreakdownError.
    """
    if p.is_zero() or pprime.is_zero():
        raise ValueError("extended_euclid requires non-zero inputs")
    field = p.field
    if not field.exact and not unstable_ok:
        raise NumericalBreakdownError(
            "float EEA is numerically unstable; pass unstable_ok=True to force it"
        )
    one, zero = UniPoly.one(field), UniPoly.zero(field)
    r = [p, pprime]
    s = [one, zero]
    t = [zero, one]
    q = []
    while not r[-1].is_zero() and r[-1].degree > stop_deg:
        qi, ri = r[-2].divmod(r[-1])
        if not field.exact and not ri.is_zero() and ri.degree >= r[-1].degree:
            raise NumericalBreakdownError("remainder degree failed to decrease")
        r.append(ri)
        s.append(s[-2] - qi * s[-1])
        t.append(t[-2] - qi * t[-1])
        q.append(qi)
    return EeaTrace(r, s, t, q)


def _eea_rows_exact(p, n):
    """The two Euclidean rows around the degree-(n-1) crossing, over integers.

    Fraction-free variant of extended_euclid for exact coefficients: rows are
    kept as integer polynomial triples (r, s, t) with the common content
    divided out after each pseudo-division step, so every row is a scalar
    multiple of the classical one.  The recovery downstream normalizes by
    leading coefficients, so rows are only needed up to scale.
    """
    from gmpy2 import gcd, lcm, mpz

    field = p.field
    scale = mpz(1)
    for c in p.coeffs:
        scale = lcm(scale, c.denominator)
    r0 = [mpz(c.numerator * (scale // c.denominator)) for c in p.coeffs]

    def trim(cs):
        while cs and cs[-1] == 0:
            cs.pop()
        return cs

    def deg(cs):
        return len(cs) - 1 if cs else NEG_INF

    r1 = [mpz(0)] * (2 * n - 1) + [mpz(1)]
    rows = [(trim(list(r0)), [mpz(1)], []), (r1, [], [mpz(1)])]
    degrees = [deg(rows[0][0]), deg(rows[1][0])]

    def poly_mul(a, b):
        if not a or not b:
            return []
        out = [mpz(0)] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    out[i + j] += ai * bj
        return trim(out)

    def poly_comb(c, a, q, b):
        """c*a - q*b with integer coefficient lists."""
        qb = poly_mul(q, b)
        out = [mpz(0)] * max(len(a), len(qb))
        for i, ai in enumerate(a):
            out[i] = c * ai
        for i, x in enumerate(qb):
            out[i] -= x
        return trim(out)

    while rows[-1][0] and deg(rows[-1][0]) > n - 2:
        (ra, sa, ta), (rb, sb, tb) = rows[-2], rows[-1]
        c = rb[-1]
        delta = deg(ra) - deg(rb)
        rem = list(ra)
        q = []
        for k in range(delta, -1, -1):
            lead = rem[deg(rb) + k] if deg(rb) + k < len(rem) else mpz(0)
            rem = [c * x for x in rem]
            q = [c * x for x in q]
            while len(q) <= k:
                q.append(mpz(0))
            q[k] += lead
            for i, bx in enumerate(rb):
                rem[i + k] -= lead * bx
        trim(rem)
        cpow = c ** max(delta + 1, 0)
        new = (rem, poly_comb(cpow, sa, q, sb), poly_comb(cpow, ta, q, tb))
        content = mpz(0)
        for part in new:
            for x in part:
                content = gcd(content, x)
        if content > 1:
            new = tuple([x // content for x in part] for part in new)
        rows.append(new)
        degrees.append(deg(new[0]))

    l = next((i for i, d in enumerate(degrees) if d == n - 1), None)
    if l is None or l + 1 >= len(degrees) or degrees[l + 1] != n - 2:
        raise DegenerateSequenceError(
            f"remainder degrees {degrees} skip {n - 1} or {n - 2}"
        )

    def to_row(row):
        r, s, t = row
        # s carries the denominator-clearing scale of p: s*(scale*p) + t*p' = r
        return (
            UniPoly(field, [field.coerce(x) for x in r]),
            UniPoly(field, [field.coerce(x * scale) for x in s]),
            UniPoly(field, [field.coerce(x) for x in t]),
        )

    return to_row(rows[l]), to_row(rows[l + 1])


def verify_syzygy(T, vec):
    """Residual T~ u + x^n v + (x^{2n}-1) w; zero iff vec is a syzygy."""
    n = T.n
    tilde = toeplitz.symbols(T).T_tilde
    return (tilde * vec.u) + vec.v.shift(n) + (vec.w.shift(2 * n) - vec.w)


def generators_dense(T):
    """Basis from the dense solve of the 3n x 3n system S.

    S's block structure reduces each solve S (u,v,w)^T = rhs to the Toeplitz
    solve T u = rhs_low + rhs_high followed by reading v, w off the middle
    and high coefficient windows of T~(x) u(x).
    """
    n = T.n
    field = T.field
    tilde = toeplitz.symbols(T).T_tilde
    td = tilde.padded(2 * n)

    # rhs T~(x) x^n has windows (0, td[0:n], td[n:2n]); rhs 1 has (e_0, 0, 0)
    g_a = td[n:2 * n]
    g_b = [field.one] + [field.zero] * (n - 1)
    sol_a, sol_b = _solve_pair(T, g_a, g_b)
    u_a, v_a, w_a = _complete_window_solution(T, sol_a, high=td[n:2 * n], mid=td[0:n])
    u_b, v_b, w_b = _complete_window_solution(T, sol_b, high=None, mid=None)

    xn = UniPoly.x_power(field, n)
    rho1 = SyzygyVec3(xn - u_a, -v_a, -w_a)
    rho2 = SyzygyVec3(-u_b, xn - v_b, -w_b - UniPoly.one(field))
    basis = SyzygyBasis(rho1, rho2, n)
    _check_membership(T, basis)
    return basis


def _solve_pair(T, g_a, g_b):
    if T.field.exact:
        cols = linalg.exact_solve(T.dense(), [g_a, g_b])
        return cols[0], cols[1]
    import numpy as np

    rhs = np.column_stack([g_a, g_b]).astype(float)
    out = linalg.float_solve(T.to_numpy(), rhs)
    return [float(x) for x in out[:, 0]], [float(x) for x in out[:, 1]]


def _complete_window_solution(T, u_vec, high, mid):
    """Given u with T u = g0 + g2, recover v, w from the product windows."""
    field = T.field
    n = T.n
    u_poly = UniPoly(field, list(u_vec))
    w0, w1, w2 = toeplitz.symbol_windows(T, u_poly)
    g1 = mid if mid is not None else [field.zero] * n
    g2 = high if high is not None else [field.zero] * n
    v = UniPoly(field, [a - b for a, b in zip(g1, w1)])
    w = UniPoly(field, [a - b for a, b in zip(g2, w2)])
    return u_poly, v, w


def generators_eea(T, unstable_ok=False):
    """Basis via the extended Euclidean algorithm on x^{n-1} T(x), x^{2n-1}.

    Requires the generic remainder degree sequence that passes through n-1
    and n-2 exactly; otherwise DegenerateSequenceError is raised and the
    caller may fall back to generators_dense.
    """
    n = T.n
    field = T.field
    p = UniPoly(field, list(T.diagonals))  # x^{n-1} T(x) in dense form
    pprime = UniPoly.x_power(field, 2 * n - 1)
    if p.is_zero():
        raise SingularMatrixError("zero Toeplitz matrix has no syzygy basis")
    if field.exact:
        (r_l, s_l, t_l), (r_next, s_next_row, t_next) = _eea_rows_exact(p, n)
    else:
        trace = extended_euclid(p, pprime, n - 2, unstable_ok=unstable_ok)
        l = next(
            (i for i in range(len(trace.r)) if trace.r[i].degree == n - 1), None
        )
        if l is None or l + 1 >= len(trace.r) or trace.r[l + 1].degree != n - 2:
            raise DegenerateSequenceError(
                f"remainder degrees {[r.degree for r in trace.r]} "
                f"skip {n - 1} or {n - 2}"
            )
        r_l, s_l, t_l = trace.r[l], trace.s[l], trace.t[l]
        r_next, s_next_row, t_next = trace.r[l + 1], trace.s[l + 1], trace.t[l + 1]

    tilde = toeplitz.symbols(T).T_tilde
    one = UniPoly.one(field)
    xn = UniPoly.x_power(field, n)

    # degree-(n-1) row: x^{n-1} T u' + x^{2n-1} B1 = x^{n-1} + A1, normalized
    # by the remainder's leading coefficient
    c1_inv = field.inv(r_l.leading())
    u_b = s_l.scale(c1_inv)
    b1 = t_l.scale(c1_inv)
    a1 = r_l.scale(c1_inv) - UniPoly.x_power(field, n - 1)
    v_b = b1 - a1.shift(1)
    w_b = _div_by_cyclic(one - tilde * u_b - v_b.shift(n), 2 * n)
    rho2 = SyzygyVec3(-u_b, xn - v_b, -w_b - one)

    # next row: its cofactor s/c2 is monic of degree n and is rho1's first
    # coordinate
    s_next = s_next_row
    if s_next.degree != n:
        raise DegenerateSequenceError(
            f"cofactor degree {s_next.degree} != {n} at the n-1 crossing"
        )
    c2_inv = field.inv(s_next.leading())
    rho1_u = s_next.scale(c2_inv)
    b2 = t_next.scale(c2_inv)
    a2 = r_next.scale(c2_inv)
    rho1_v = b2 - a2.shift(1)
    rho1_w = _div_by_cyclic(-(tilde * rho1_u) - rho1_v.shift(n), 2 * n)
    rho1 = SyzygyVec3(rho1_u, rho1_v, rho1_w)

    basis = SyzygyBasis(rho1, rho2, n)
    _check_membership(T, basis)
    return basis


def _div_by_cyclic(p, k):
    """Exact division by x^k - 1 (tolerant remainder check over floats)."""
    field = p.field
    divisor = UniPoly(field, [-field.one] + [field.zero] * (k - 1) + [field.one])
    if field.exact:
        return p.exact_div(divisor)
    q, r = p.divmod(divisor)
    tol = 1e-6 * max(p.max_norm(), 1.0)
    if r.max_norm() > tol:
        raise NumericalBreakdownError(
            f"division by x^{k}-1 left residual {r.max_norm():.3e}"
        )
    return q


def _check_membership(T, basis):
    for name, vec in (("rho1", basis.rho1), ("rho2", basis.rho2)):
        res = verify_syzygy(T, vec)
        if T.field.exact:
            ok = res.is_zero()
        else:
            scale = max(toeplitz.symbols(T).T_tilde.max_norm(), 1.0)
            ok = res.max_norm() <= 1e-8 * scale * max(vec.u.max_norm(), 1.0)
        if not ok:
            raise SyzolveError(f"constructed {name} is not a syzygy")


def mu_degrees(basis):
    """Component-wise max degrees of both generators (n, n for a valid basis)."""

    def as_int(d):
        return -1 if d == NEG_INF else int(d)

    return as_int(basis.rho1.max_degree()), as_int(basis.rho2.max_degree())
