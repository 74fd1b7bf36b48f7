"""End-to-end Toeplitz solve through the syzygy basis.

The particular vector (0, x^n g, -g) satisfies
T~ * 0 + x^n * (x^n g) + (x^{2n}-1) * (-g) = g identically; reducing it by a
degree-n basis leaves the unique low-degree representative, whose first
coordinate is the solution of T u = g.
"""

import time
from dataclasses import dataclass, field as dc_field

from . import polydiv, syzygy, toeplitz
from .errors import DegenerateSequenceError
from .fields import RR
from .poly import UniPoly, eval_at_roots_of_unity

ROUTE_EEA = "eea"
ROUTE_DENSE = "dense-generators"


@dataclass
class SolveReport:
    u: list
    residual_norm: float
    route: str
    timings: dict = dc_field(default_factory=dict)


def particular_solution(g, n, field):
    """The explicit member (0, x^n g(x), -g(x)) of L(T~, x^n, x^{2n}-1; g)."""
    if len(g) != n:
        raise ValueError(f"rhs length {len(g)} != {n}")
    gp = UniPoly.from_list(field, g)
    return syzygy.SyzygyVec3(UniPoly.zero(field), gp.shift(n), -gp)


def compute_basis(T, route=ROUTE_EEA, fallback=True, unstable_ok=False):
    """Basis by the requested route; returns (basis, route actually used).

    The float field always goes through the dense route unless the unstable
    EEA is explicitly requested.
    """
    if route in (ROUTE_EEA, "eea") and T.field.exact:
        try:
            return syzygy.generators_eea(T), ROUTE_EEA
        except DegenerateSequenceError:
            if not fallback:
                raise
            return syzygy.generators_dense(T), ROUTE_DENSE
    if route in (ROUTE_EEA, "eea") and unstable_ok:
        try:
            return syzygy.generators_eea(T, unstable_ok=True), ROUTE_EEA
        except DegenerateSequenceError:
            if not fallback:
                raise
    return syzygy.generators_dense(T), ROUTE_DENSE


def solve(T, g, route=ROUTE_EEA, fallback=True, basis=None):
    """Solve T u = g; returns a SolveReport with phase timings.

    A precomputed basis may be passed in, in which case only the reduction
    and residual phases run (the basis is reusable across right-hand sides).
    """
    timings = {}
    t0 = time.perf_counter()
    if basis is None:
        basis, route_used = compute_basis(T, route=route, fallback=fallback)
    else:
        route_used = route
    timings["basis"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    part = particular_solution(g, T.n, T.field)
    rem = polydiv.reduce_vec3(part, basis)
    u = rem.u.padded(T.n)
    timings["reduce"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    res = [a - b for a, b in zip(toeplitz.matvec(T, u), g)]
    residual = float(max((abs(c) for c in res), default=0))
    timings["residual"] = time.perf_counter() - t0
    return SolveReport(u=u, residual_norm=residual, route=route_used, timings=timings)


def scaled_residual(T, g, u):
    """max-norm residual of T u - g over (|T| |u| + |g|)."""
    res = [a - b for a, b in zip(toeplitz.matvec(T, u), g)]
    num = float(max((abs(c) for c in res), default=0))
    den = float(T.max_norm()) * float(max((abs(c) for c in u), default=0)) + float(
        max((abs(c) for c in g), default=0)
    )
    return num / den if den else num


def interpolation_check(T, basis):
    """Max violation of T~(w) u(w) + w^n v(w) = 0 over w in U_{2n}, both generators.

    The (x^{2n}-1) w term vanishes at the 2n-th roots of unity, so membership
    makes these rational-interpolation conditions hold exactly.
    """
    Tf = to_float_matrix(T)
    n = Tf.n
    N = 2 * n
    tilde_vals = eval_at_roots_of_unity(toeplitz.symbols(Tf).T_tilde, N)
    # in FFT order w_j = e^{-2 pi i j / 2n}, so w_j^n = (-1)^j
    signs = [1.0 if j % 2 == 0 else -1.0 for j in range(N)]
    worst = 0.0
    for vec in (basis.rho1, basis.rho2):
        u_vals = eval_at_roots_of_unity(_to_float_poly(vec.u), N)
        v_vals = eval_at_roots_of_unity(_to_float_poly(vec.v), N)
        for tv, uv, vv, s in zip(tilde_vals, u_vals, v_vals, signs):
            worst = max(worst, abs(tv * uv + s * vv))
    return worst


def to_float_matrix(T):
    if not T.field.exact:
        return T
    return toeplitz.ToeplitzMatrix(RR, T.n, [float(d) for d in T.diagonals])


def _to_float_poly(p):
    if not p.field.exact:
        return p
    return UniPoly(RR, [float(c) for c in p.coeffs])


def basis_to_float(basis):
    def conv(vec):
        return syzygy.SyzygyVec3(
            _to_float_poly(vec.u), _to_float_poly(vec.v), _to_float_poly(vec.w)
        )

    return syzygy.SyzygyBasis(conv(basis.rho1), conv(basis.rho2), basis.n)
