"""Matrices over noncommutative rings: column determinant,
decomplexification, correction blocks, multi-indexes."""

import random

import pytest

from nc_capelli import matrixops as mo
from nc_capelli import weyl
from nc_capelli.ringapi import COEFFICIENT_RING
from nc_capelli.scalars import Coefficient
from nc_capelli.weyl import GeneratorSet, WeylElement


def C(value, den=None):
    return Coefficient.from_rational(value, den)


@pytest.fixture
def wring():
    gens = GeneratorSet(["x", "y"])
    return gens, weyl.weyl_ring(gens)


class TestColdet:
    def test_two_by_two_order(self):
        a, b, c, d = (Coefficient.param(x) for x in "abcd")
        M = mo.matrix(COEFFICIENT_RING, [[a, b], [c, d]])
        assert mo.coldet(M) == a * d - c * b

    def test_identity(self):
        assert mo.coldet(mo.identity(COEFFICIENT_RING, 3)) == Coefficient.one()

    def test_weyl_noncommutative(self, wring):
        gens, ring = wring
        x = WeylElement.variable(gens, "x")
        dx = WeylElement.derivative(gens, "x")
        M = mo.matrix(ring, [[x, dx], [ring.one, x]])
        # column order: M[0][0]*M[1][1] - M[1][0]*M[0][1] = x*x - dx
        assert mo.coldet(M) == x * x - dx

    def test_laplace_agreement_random(self, wring):
        gens, ring = wring
        rng = random.Random(7)
        x = WeylElement.variable(gens, "x")
        dx = WeylElement.derivative(gens, "x")
        pool = [x, dx, x * dx, ring.one, ring.zero, x + dx]
        for _ in range(25):
            M = mo.matrix(
                ring,
                [[rng.choice(pool) for _ in range(3)] for _ in range(3)],
            )
            assert (mo.coldet(M) - mo.coldet_laplace(M)).is_zero()

    def test_rejects_non_square(self):
        M = mo.matrix(COEFFICIENT_RING, [[Coefficient.one()] * 2])
        with pytest.raises(ValueError):
            mo.coldet(M)


class TestDecomplexify:
    def test_variable_block(self, wring):
        gens, ring = wring
        z, dz = weyl.complex_pair(GeneratorSet(["x", "y"]), "")
        x = WeylElement.variable(z.gens, "x")
        y = WeylElement.variable(z.gens, "y")
        ZR = mo.decomplexify(mo.matrix(weyl.weyl_ring(z.gens), [[z]]))
        assert ZR.entries[0][0] == x
        assert ZR.entries[0][1] == y
        assert ZR.entries[1][0] == -y
        assert ZR.entries[1][1] == x

    def test_derivative_block(self):
        gens = GeneratorSet(["x", "y"])
        z, dz = weyl.complex_pair(gens, "")
        dx = WeylElement.derivative(gens, "x")
        dy = WeylElement.derivative(gens, "y")
        DR = mo.decomplexify(mo.matrix(weyl.weyl_ring(gens), [[dz]]))
        half = Coefficient.from_rational(1, 2)
        assert DR.entries[0][0] == dx.scale(half)
        assert DR.entries[0][1] == -dy.scale(half)
        assert DR.entries[1][0] == dy.scale(half)
        assert DR.entries[1][1] == dx.scale(half)

    def test_homomorphism(self):
        gens = GeneratorSet(["x1", "y1", "x2", "y2"])
        ring = weyl.weyl_ring(gens)
        z1, d1 = weyl.complex_pair(gens, "1")
        z2, d2 = weyl.complex_pair(gens, "2")
        M = mo.matrix(ring, [[z1, d2], [z2, d1]])
        N = mo.matrix(ring, [[d1, z2], [z1.bar(), d2.bar()]])
        lhs = mo.decomplexify(mo.matmul(M, N))
        rhs = mo.matmul(mo.decomplexify(M), mo.decomplexify(N))
        assert all(
            (a - b).is_zero()
            for ra, rb in zip(lhs.entries, rhs.entries)
            for a, b in zip(ra, rb)
        )

    def test_transpose_is_bar_transpose(self):
        gens = GeneratorSet(["x1", "y1"])
        ring = weyl.weyl_ring(gens)
        z, _ = weyl.complex_pair(gens, "1")
        M = mo.matrix(ring, [[z]])
        lhs = mo.transpose(mo.decomplexify(M))
        rhs = mo.decomplexify(mo.matrix(ring, [[z.bar()]]))
        assert all(
            (a - b).is_zero()
            for ra, rb in zip(lhs.entries, rhs.entries)
            for a, b in zip(ra, rb)
        )


class TestCorrTriDiag:
    def test_n1_block(self):
        corr = mo.corr_tridiag(COEFFICIENT_RING, [C(0)], "plus")
        i4 = C(1, 4) * Coefficient.i()
        assert corr.entries[0][0] == C(1, 4)
        assert corr.entries[0][1] == i4
        assert corr.entries[1][0] == i4
        assert corr.entries[1][1] == C(-1, 4)

    def test_n2_blocks(self):
        corr = mo.corr_tridiag(COEFFICIENT_RING, [C(1), C(0)], "plus")
        assert corr.entries[0][0] == C(5, 4)
        assert corr.entries[1][1] == C(3, 4)
        assert corr.entries[2][2] == C(1, 4)
        assert corr.entries[3][3] == C(-1, 4)
        assert corr.entries[0][2].is_zero()

    def test_block_determinant_is_d_squared(self):
        d = Coefficient.param("d1")
        for sign in ("plus", "minus"):
            corr = mo.corr_tridiag(COEFFICIENT_RING, [d], sign)
            det = (corr.entries[0][0] * corr.entries[1][1]
                   - corr.entries[1][0] * corr.entries[0][1])
            assert det == d * d

    def test_minus_sign(self):
        plus = mo.corr_tridiag(COEFFICIENT_RING, [C(0)], "plus")
        minus = mo.corr_tridiag(COEFFICIENT_RING, [C(0)], "minus")
        assert minus.entries[0][1] == -plus.entries[0][1]


class TestIndexHelpers:
    def test_submatrix_full(self):
        a, b, c, d = (Coefficient.param(x) for x in "abcd")
        M = mo.matrix(COEFFICIENT_RING, [[a, b], [c, d]])
        S = mo.submatrix(M, (1, 2), (1, 2))
        assert S.entries == M.entries

    def test_submatrix_single(self):
        a, b, c, d = (Coefficient.param(x) for x in "abcd")
        M = mo.matrix(COEFFICIENT_RING, [[a, b], [c, d]])
        assert mo.submatrix(M, (2,), (1,)).entries[0][0] == c

    def test_double_index(self):
        assert mo.double_index((1, 3)) == (1, 2, 5, 6)

    def test_multi_indexes(self):
        assert mo.multi_indexes(3, 2) == [(1, 2), (1, 3), (2, 3)]
        assert mo.multi_indexes(2, 0) == [()]


class TestMatrixAlgebra:
    def test_transpose_involution(self):
        a, b, c, d = (Coefficient.param(x) for x in "abcd")
        M = mo.matrix(COEFFICIENT_RING, [[a, b], [c, d]])
        T = mo.transpose(mo.transpose(M))
        assert T.entries == M.entries

    def test_identity_matmul(self):
        a, b, c, d = (Coefficient.param(x) for x in "abcd")
        M = mo.matrix(COEFFICIENT_RING, [[a, b], [c, d]])
        P = mo.matmul(mo.identity(COEFFICIENT_RING, 2), M)
        assert P.entries == M.entries
