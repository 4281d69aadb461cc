"""Exact scalar layer: Gaussian rationals with formal parameters."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nc_capelli.scalars import Coefficient, GaussianRational, rat


def C(value, den=None):
    return Coefficient.from_rational(value, den)


I = Coefficient.i()


@st.composite
def coefficients(draw):
    out = Coefficient.zero()
    for _ in range(draw(st.integers(0, 3))):
        re = draw(st.integers(-5, 5))
        im = draw(st.integers(-5, 5))
        term = C(re) + I * C(im)
        name = draw(st.sampled_from(["s", "u", "k", "d1"]))
        exp = draw(st.integers(0, 2))
        out = out + term * Coefficient.param(name, exp) if exp else out + term
    return out


class TestGaussianRational:
    def test_arithmetic(self):
        a = GaussianRational(rat(1, 2), rat(3))
        b = GaussianRational(rat(1, 2), rat(-3))
        assert (a + b) == GaussianRational(rat(1))
        assert (a * b) == GaussianRational(rat(1, 4) + rat(9))

    def test_i_squared(self):
        i = GaussianRational(rat(0), rat(1))
        assert i * i == GaussianRational(rat(-1))

    def test_inverse(self):
        a = GaussianRational(rat(2), rat(-1))
        assert a * a.inverse() == GaussianRational(rat(1))

    def test_conjugate(self):
        a = GaussianRational(rat(2), rat(3))
        assert a.conjugate() == GaussianRational(rat(2), rat(-3))


class TestCoefficient:
    def test_half_plus_half(self):
        assert C(1, 2) + C(1, 2) == Coefficient.one()

    def test_i_cancellation(self):
        assert (I + (-I)).is_zero()

    def test_like_term_merge(self):
        s = Coefficient.param("s")
        assert s + s == C(2) * s

    def test_i_squared(self):
        assert I * I == C(-1)

    def test_inverse_of_minus_two_i(self):
        inv = C(1, 2) * I  # 1/(-2i) = i/2
        assert inv * (C(-2) * I) == Coefficient.one()

    def test_s_times_s_plus_one(self):
        s = Coefficient.param("s")
        assert s * (s + Coefficient.one()) == Coefficient.param("s", 2) + s

    def test_bar(self):
        assert (C(2) + C(3) * I).bar() == C(2) - C(3) * I
        s = Coefficient.param("s")
        assert (s * I).bar() == -(s * I)

    def test_substitute_sum(self):
        a, c, k = (Coefficient.param(x) for x in "ack")
        assert (a + c).substitute({"a": k, "c": k}) == C(2) * k

    def test_substitute_eval(self):
        s = Coefficient.param("s")
        poly = s * (s + Coefficient.one())
        assert poly.substitute({"s": C(3)}) == C(12)

    def test_substitute_affine(self):
        b, d, k = (Coefficient.param(x) for x in "bdk")
        assert (d - b).substitute({"d": b - C(2) * k}) == -(C(2) * k)

    def test_split_by_param(self):
        u = Coefficient.param("u")
        s = Coefficient.param("s")
        poly = u * u + s * u + C(7)
        parts = poly.split_by_param("u")
        assert parts[2] == Coefficient.one()
        assert parts[1] == s
        assert parts[0] == C(7)

    def test_rational_value(self):
        assert C(3, 4).rational_value() == Fraction(3, 4)

    def test_render(self):
        assert C(0).render() == "0"
        assert (C(2) + C(3) * I).render() == "2+3*i"

    @given(coefficients())
    @settings(max_examples=60, deadline=None)
    def test_bar_involution(self, x):
        assert x.bar().bar() == x

    @given(coefficients(), coefficients())
    @settings(max_examples=60, deadline=None)
    def test_mul_commutative(self, x, y):
        assert x * y == y * x

    @given(coefficients(), coefficients(), coefficients())
    @settings(max_examples=60, deadline=None)
    def test_distributive(self, x, y, z):
        assert x * (y + z) == x * y + x * z

    @given(coefficients(), coefficients())
    @settings(max_examples=60, deadline=None)
    def test_bar_multiplicative(self, x, y):
        assert (x * y).bar() == x.bar() * y.bar()

    def test_param_validation(self):
        with pytest.raises(ValueError):
            Coefficient.param("not a param!")
