"""Cayley identity family: classical, decomplexified, quaternionic,
radial-part."""

import pytest

from nc_capelli import cayley
from nc_capelli.scalars import Coefficient


def C(value, den=None):
    return Coefficient.from_rational(value, den)


class TestScalar:
    def test_n1_s3(self):
        assert cayley.cayley_scalar(1, 3) == C(3)

    def test_n2_values(self):
        assert cayley.cayley_scalar(2, 1) == C(2)
        assert cayley.cayley_scalar(2, 3) == C(12)

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_b_polynomial_reconstruction(self, n):
        report = cayley.verify_cayley_scalar(n)
        assert report.residualIsZero

    def test_rejects_nonpositive_s(self):
        with pytest.raises(ValueError):
            cayley.cayley_scalar(2, 0)


class TestDecomplexified:
    def test_n1_values(self):
        assert cayley.cayley_decomplexified(1, 1) == C(1)
        assert cayley.cayley_decomplexified(1, 2) == C(4)

    def test_n2_s1(self):
        assert cayley.cayley_decomplexified(2, 1) == C(4)

    def test_square_of_scalar(self):
        for n in (1, 2):
            for s in (1, 2):
                b = cayley.cayley_scalar(n, s)
                assert cayley.cayley_decomplexified(n, s) == b * b


class TestQuaternion:
    @pytest.mark.parametrize("n", [1, 2])
    def test_commutation_table(self, n):
        assert cayley.quaternion_commutation_check(n).residualIsZero

    def test_complex_form_values(self):
        assert cayley.cayley_quaternion("complexForm", 1, 1) == C(1, 2)

    def test_real_form_values(self):
        assert cayley.cayley_quaternion("realForm", 1, 1) == C(3, 4)
        assert cayley.cayley_quaternion("realForm", 1, 2) == C(15)

    def test_closed_form_polynomials(self):
        assert cayley.verify_cayley_quaternion("complexForm", 1).residualIsZero
        assert cayley.verify_cayley_quaternion("realForm", 1).residualIsZero


class TestRadial:
    def test_n1(self):
        assert cayley.radial_identity(1, 3).residualIsZero

    def test_gl2_example_value(self):
        assert cayley.radial_gl2_example() == C(2)

    @pytest.mark.parametrize("n", [2, 3])
    def test_matches_scalar(self, n):
        for s in (1, 2):
            report = cayley.radial_identity(n, s)
            assert report.residualIsZero
            b = 1
            for k in range(n):
                b *= s + k
            assert cayley.cayley_scalar(n, s) == C(b)


class TestInterpolation:
    def test_linear(self):
        pts = [(1, C(3)), (2, C(5))]
        s = Coefficient.param("s")
        assert cayley.interpolate(pts) == s * C(2) + C(1)

    def test_b_polynomial(self):
        s = Coefficient.param("s")
        assert cayley.b_polynomial(2) == s * s + s
