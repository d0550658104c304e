"""
Copyright (c) 2025 cluster-ideals contributors
SPDX-License-Identifier: MIT
"""

"""
Tests for exact Laurent polynomial arithmetic and rendering.
"""

import pytest

from cluster_ideals.common.exceptions import NonExactDivision
from cluster_ideals.laurent import laurent_ring, ring_for, yhat


@pytest.fixture
def R():
    return laurent_ring(["1", "2"])


class TestRing:
    """Test variable registration."""

    def test_variable_order(self, R):
        """Test that x variables come first, then y variables, in label order."""
        assert R.names == ("x1", "x2", "y1", "y2")

    def test_natural_label_order(self):
        """Test that labels are ordered numerically where they are numbers."""
        assert laurent_ring(["10", "2", "1"]).labels == ("1", "2", "10")

    def test_rings_are_shared(self, pentagon):
        """Test that equal label sets share a ring instance."""
        assert laurent_ring(["2", "1"]) is ring_for(pentagon)


class TestArithmetic:
    """Test arithmetic with negative exponents."""

    def test_inverse_and_product(self, R):
        """Test that a monomial times its inverse is one."""
        x1 = R.x("1")
        assert x1 * x1 ** -1 == R.one
        assert x1 ** -1 * 1 == R.monomial({"x1": -1})

    def test_integer_coercion(self, R):
        """Test that integers combine with Laurent polynomials."""
        assert (R.x("1") + 1) - 1 == R.x("1")
        assert 2 * R.y("1") == R.monomial({"y1": 1}, coeff=2)

    def test_div_exact_by_monomial(self, R):
        """Test division by a monomial moves exponents negative."""
        num = R.x("2") + R.y("1")
        q = num.div_exact(R.x("1"))
        assert q * R.x("1") == num
        assert q.render() == "(x2 + y1)/x1"

    def test_div_exact_by_polynomial(self, R):
        """Test exact division by a binomial."""
        a = R.x("1") + R.y("2")
        b = R.x("2") ** -1 + R.y("1")
        assert (a * b).div_exact(b) == a

    def test_non_exact_division(self, R):
        """Test that a remainder raises NonExactDivision."""
        with pytest.raises(NonExactDivision):
            (R.x("1") + 1).div_exact(R.x("2") + 1)

    def test_division_by_zero(self, R):
        """Test that dividing by zero raises NonExactDivision."""
        with pytest.raises(NonExactDivision):
            R.one.div_exact(R.zero)

    def test_coefficient_not_divisible(self, R):
        """Test that integer coefficients must divide exactly."""
        with pytest.raises(NonExactDivision):
            (R.x("1") * 3).div_exact(R.constant(2))

    def test_inverse_of_binomial_refused(self, R):
        """Test that only monomials have Laurent inverses."""
        with pytest.raises(NonExactDivision):
            (R.x("1") + 1) ** -1


class TestSpecialization:
    """Test setting variables to one."""

    def test_specialize_y(self, R):
        """Test that coefficient-free specialization drops every y."""
        value = (R.x("1") * R.y("1") * R.y("2") + R.x("2") + R.y("1")).div_exact(R.x("1") * R.x("2"))
        assert value.specialize_y().render() == "(x1 + x2 + 1)/(x1*x2)"

    def test_specialize_collects_terms(self, R):
        """Test that terms that become equal are added."""
        assert (R.y("1") + R.y("2")).specialize(["y1", "y2"]) == R.constant(2)

    def test_substitute(self, R):
        """Test substitution of a variable by a polynomial."""
        value = R.x("1") ** -1 * R.y("1")
        out = value.substitute({"y1": R.x("1") + R.x("2")})
        assert out == R.one + R.x("2") * R.x("1") ** -1

    def test_y_free_part(self, R):
        """Test extraction of the y-degree zero terms."""
        value = R.x("1") ** -1 + R.y("1") * R.x("2")
        assert value.y_free_part() == R.x("1") ** -1


class TestRendering:
    """Test the canonical text form."""

    @pytest.mark.parametrize(
        "build, expected",
        [
            (lambda R: R.x("1") ** -1, "1/x1"),
            (lambda R: R.y("1") + 1, "y1 + 1"),
            (lambda R: (R.y("1") + 1) * R.x("1") ** -1, "(y1 + 1)/x1"),
            (lambda R: R.x("1") * R.x("2") ** 2, "x1*x2^2"),
            (lambda R: R.x("2") - 3, "x2 - 3"),
            (lambda R: R.zero, "0"),
            (lambda R: R.x("1") * (R.x("2") * R.y("2")) ** -1, "x1/(x2*y2)"),
        ],
    )
    def test_render(self, R, build, expected):
        """Test numerator over the smallest monomial denominator."""
        assert build(R).render() == expected

    def test_str_matches_render(self, R):
        """Test that str() uses the canonical form."""
        value = R.x("1") + R.y("2")
        assert str(value) == value.render()


class TestYhat:
    """Test the yhat monomials of a triangulation."""

    def test_pentagon(self, pentagon):
        """Test yhat from the columns of the exchange matrix."""
        R = ring_for(pentagon)
        assert yhat(pentagon, "1") == R.y("1") * R.x("2") ** -1
        assert yhat(pentagon, "2") == R.y("2") * R.x("1")

    def test_square(self, square):
        """Test that a lone arc has yhat equal to y."""
        R = ring_for(square)
        assert yhat(square, "1") == R.y("1")
