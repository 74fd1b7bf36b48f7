"""Matrix polynomial division: Newton truncated inverse, the reversal-based
divrem, the long-division oracle, and reduction of 3-vectors by a basis."""

import random

import pytest

from syzolve import instances, polydiv, solver, syzygy, toeplitz
from syzolve.errors import LeadingCoefficientError
from syzolve.fields import QQ, RR
from syzolve.poly import UniPoly
from syzolve.polydiv import PolyMat2, PolyVec2


def qp(*coeffs):
    return UniPoly.from_list(QQ, list(coeffs))


def random_mat(rng, field, deg, invertible_leading=True):
    while True:
        entries = [
            UniPoly.from_list(field, [rng.randint(-9, 9) for _ in range(deg + 1)])
            for _ in range(4)
        ]
        M = PolyMat2(*entries)
        if M.degree != deg:
            continue
        (a, b), (c, d) = M.coeff_matrix(deg)
        if not invertible_leading or a * d - b * c != 0:
            return M


def random_vec(rng, field, deg):
    return PolyVec2(
        UniPoly.from_list(field, [rng.randint(-9, 9) for _ in range(deg + 1)]),
        UniPoly.from_list(field, [rng.randint(-9, 9) for _ in range(deg + 1)]),
    )


class TestNewtonInverse:
    def test_identity_fixed_point(self):
        I = PolyMat2.identity(QQ)
        W = polydiv.newton_inverse_truncated(I, 8)
        assert W.a == qp(1) and W.d == qp(1)
        assert W.b.is_zero() and W.c.is_zero()

    def test_nilpotent_upper_triangular(self):
        B = PolyMat2(qp(1), qp(0, 1), qp(0), qp(1))
        W = polydiv.newton_inverse_truncated(B, 2)
        assert W.a == qp(1) and W.d == qp(1)
        assert W.b == qp(0, -1) and W.c.is_zero()

    def test_constant_scaling(self):
        B = PolyMat2(qp(2), qp(0), qp(0), qp(2))
        W = polydiv.newton_inverse_truncated(B, 4)
        half = UniPoly.from_list(QQ, ["1/2"])
        assert W.a == half and W.d == half
        assert W.b.is_zero() and W.c.is_zero()

    def test_singular_constant_term(self):
        B = PolyMat2(qp(0, 1), qp(0), qp(0), qp(1))
        with pytest.raises(LeadingCoefficientError):
            polydiv.newton_inverse_truncated(B, 4)

    def test_contract_at_every_doubling_step(self):
        # W_l B^ = I mod x^{2^l} for each intermediate precision
        rng = random.Random(5)
        for _ in range(10):
            B = random_mat(rng, QQ, deg=6)
            (a, b), (c, d) = B.coeff_matrix(0)
            if a * d - b * c == 0:
                continue
            for l in range(0, 6):
                k = 1 << l
                W = polydiv.newton_inverse_truncated(B, k)
                prod = (W @ B).truncate(k)
                assert prod.a == qp(1).truncate(k)
                assert prod.d == qp(1).truncate(k)
                assert prod.b.is_zero() and prod.c.is_zero()


class TestMatrixDivrem:
    def test_exact_multiple(self):
        rng = random.Random(1)
        B = random_mat(rng, QQ, deg=3)
        ones = PolyVec2(qp(1), qp(1))
        E = B @ ones
        for method in ("auto", "newton", "naive"):
            Q, R = polydiv.matrix_divrem(E, B, method=method)
            assert Q.p == qp(1) and Q.q == qp(1)
            assert R.is_zero()

    def test_low_degree_passthrough(self):
        B = random_mat(random.Random(2), QQ, deg=4)
        E = PolyVec2(qp(1, 2), qp(3))
        Q, R = polydiv.matrix_divrem(E, B)
        assert Q.is_zero()
        assert R.p == E.p and R.q == E.q

    def test_entrywise_division_by_x(self):
        B = PolyMat2(qp(0, 1), qp(0), qp(0), qp(0, 1))
        E = PolyVec2(qp(1, 0, 1), qp(0, 1))
        Q, R = polydiv.matrix_divrem(E, B)
        assert Q.p == qp(0, 1) and Q.q == qp(1)
        assert R.p == qp(1) and R.q.is_zero()

    def test_zero_divisor(self):
        z = UniPoly.zero(QQ)
        with pytest.raises(LeadingCoefficientError):
            polydiv.matrix_divrem(PolyVec2(qp(1), qp(1)), PolyMat2(z, z, z, z))

    def test_division_identity_random(self):
        rng = random.Random(3)
        for _ in range(40):
            n = rng.randint(1, 8)
            m = rng.randint(n, 24)
            B = random_mat(rng, QQ, deg=n)
            E = random_vec(rng, QQ, deg=m)
            Q, R = polydiv.matrix_divrem(E, B, method="newton")
            recon = B @ Q
            assert E.p == recon.p + R.p and E.q == recon.q + R.q
            assert R.degree < n
            assert Q.degree <= m - n

    def test_newton_equals_naive(self):
        rng = random.Random(4)
        for _ in range(25):
            n = rng.randint(1, 6)
            m = rng.randint(n, 18)
            B = random_mat(rng, QQ, deg=n)
            E = random_vec(rng, QQ, deg=m)
            Qn, Rn = polydiv.matrix_divrem(E, B, method="newton")
            Ql, Rl = polydiv.matrix_divrem(E, B, method="naive")
            assert Qn.p == Ql.p and Qn.q == Ql.q
            assert Rn.p == Rl.p and Rn.q == Rl.q

    def test_float_residual_large_degree(self):
        rng = random.Random(6)
        n, m = 64, 512
        B = PolyMat2(
            *(
                UniPoly.from_list(
                    RR,
                    [rng.uniform(-1, 1) for _ in range(n)]
                    + [4.0 if k in (0, 3) else 0.0],
                )
                for k in range(4)
            )
        )
        E = PolyVec2(
            UniPoly.from_list(RR, [rng.uniform(-1, 1) for _ in range(m + 1)]),
            UniPoly.from_list(RR, [rng.uniform(-1, 1) for _ in range(m + 1)]),
        )
        Q, R = polydiv.matrix_divrem(E, B, method="newton")
        recon = B @ Q
        scale = max(E.max_norm(), recon.max_norm())
        err = max(
            max(
                abs(a - b - c)
                for a, b, c in zip(
                    e.padded(m + 1), r.padded(m + 1), rr.padded(m + 1)
                )
            )
            for e, r, rr in zip(E.entries(), recon.entries(), R.entries())
        )
        assert err <= 1e-9 * scale


class TestReduceVec3:
    def _basis(self, n=2, seed=0):
        T = instances.random_toeplitz(n, seed, QQ, dominant=False)
        basis, _ = solver.compute_basis(T, route=solver.ROUTE_DENSE)
        return T, basis

    def test_basis_member_reduces_to_zero(self):
        _, basis = self._basis(3, 1)
        rem = polydiv.reduce_vec3(basis.rho1, basis)
        assert rem.u.is_zero() and rem.v.is_zero() and rem.w.is_zero()

    def test_low_degree_passthrough(self):
        _, basis = self._basis(3, 2)
        vec = syzygy.SyzygyVec3(qp(1, 2, 0), qp(0, -1, 3), qp(5))
        rem = polydiv.reduce_vec3(vec, basis)
        assert rem.u == vec.u and rem.v == vec.v and rem.w == vec.w

    def test_identity_reduction_solves_system(self):
        # reduce (0, x^2 g, -g) for T = I, g = 1+x: remainder is (g, 0, 0)
        T = toeplitz.ToeplitzMatrix.identity(QQ, 2)
        basis = syzygy.generators_dense(T)
        part = solver.particular_solution([QQ.one, QQ.one], 2, QQ)
        rem = polydiv.reduce_vec3(part, basis)
        assert rem.u == qp(1, 1)
        assert rem.v.is_zero() and rem.w.is_zero()

    def test_remainder_degrees_bounded(self):
        T, basis = self._basis(4, 3)
        g = instances.random_rhs(4, 9, QQ)
        part = solver.particular_solution(g, 4, QQ)
        rem = polydiv.reduce_vec3(part, basis)
        assert rem.max_degree() <= 3
