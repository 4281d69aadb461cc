"""PBW layer: structure constants, straightening, bar, HC projection."""

import random

import pytest

from nc_capelli import pbw
from nc_capelli.ringapi import commutator
from nc_capelli.scalars import Coefficient


def C(value, den=None):
    return Coefficient.from_rational(value, den)


@pytest.fixture(scope="module")
def gl2():
    return pbw.build_gln(2)


@pytest.fixture(scope="module")
def gl3():
    return pbw.build_gln(3)


class TestStructureConstants:
    def test_n1_abelian(self):
        g = pbw.build_gln(1)
        e = g.generator("E11")
        assert commutator(e, e).is_zero()

    def test_gl2_bracket(self, gl2):
        e12, e21 = gl2.generator("E12"), gl2.generator("E21")
        e11, e22 = gl2.generator("E11"), gl2.generator("E22")
        assert commutator(e12, e21) == e11 - e22

    def test_jacobi_gl3(self, gl3):
        assert gl3.check_jacobi()

    def test_straighten_example(self, gl2):
        e12, e21 = gl2.generator("E12"), gl2.generator("E21")
        e11, e22 = gl2.generator("E11"), gl2.generator("E22")
        assert e12 * e21 == e21 * e12 + e11 - e22

    def test_cartan_commute(self, gl2):
        e11 = gl2.generator("E11")
        assert e11 * e11 == e11 ** 2

    def test_associativity_random(self, gl2):
        rng = random.Random(11)
        gens = [gl2.generator(name) for name in gl2.basis]
        for _ in range(20):
            a, b, c = (rng.choice(gens) for _ in range(3))
            assert ((a * b) * c - a * (b * c)).is_zero()


class TestDoubled:
    def test_bar_copy_commutes(self):
        g = pbw.build_doubled_gln(2)
        assert commutator(g.generator("E12"), g.generator("Eb21")).is_zero()

    def test_bar_map(self):
        g = pbw.build_doubled_gln(2)
        assert g.generator("E12").bar() == g.generator("Eb12")
        assert g.generator("Eb12").bar() == g.generator("E12")

    def test_barred_bracket(self):
        g = pbw.build_doubled_gln(2)
        got = commutator(g.generator("Eb12"), g.generator("Eb21"))
        assert got == g.generator("Eb11") - g.generator("Eb22")


class TestHarishChandra:
    def test_n1(self):
        g = pbw.build_gln(1)
        assert pbw.hc_projection(g.generator("E11")) == Coefficient.param("lam1")

    def test_gl2_capelli_determinant(self, gl2):
        from nc_capelli import matrixops as mo
        ring = gl2.ring()
        E = mo.matrix(
            ring,
            [[gl2.generator(f"E{i}{j}") for j in (1, 2)] for i in (1, 2)],
        )
        u = Coefficient.param("u")
        shifted = E + mo.diag(
            ring,
            [ring.from_coefficient(C(1) + u), ring.from_coefficient(u)],
        )
        lam1, lam2 = Coefficient.param("lam1"), Coefficient.param("lam2")
        expected = (lam1 + C(1) + u) * (lam2 + u)
        assert pbw.hc_projection(mo.coldet(shifted)) == expected


class TestCentrality:
    def test_trace_central(self, gl2):
        assert pbw.is_central(gl2.generator("E11") + gl2.generator("E22"))

    def test_raising_not_central(self, gl2):
        assert not pbw.is_central(gl2.generator("E12"))

    def test_capelli_coefficients_central(self, gl2):
        from nc_capelli import matrixops as mo
        ring = gl2.ring()
        E = mo.matrix(
            ring,
            [[gl2.generator(f"E{i}{j}") for j in (1, 2)] for i in (1, 2)],
        )
        u = Coefficient.param("u")
        shifted = E + mo.diag(
            ring,
            [ring.from_coefficient(C(1) + u), ring.from_coefficient(u)],
        )
        parts = mo.coldet(shifted).split_by_param("u")
        assert parts
        for part in parts.values():
            assert pbw.is_central(part)


class TestLoadStructureConstants:
    def test_round_trip(self):
        sl2 = "\n".join([
            "basis: f h e",
            "bracket: h f f -2",
            "bracket: e f h 1",
            "bracket: e h e -2",
        ])
        g = pbw.load_structure_constants(sl2)
        e, h, f = g.generator("e"), g.generator("h"), g.generator("f")
        assert commutator(e, f) == h
        assert commutator(h, e) == e.scale(2)
        assert commutator(h, f) == f.scale(-2)
        assert g.check_jacobi()
