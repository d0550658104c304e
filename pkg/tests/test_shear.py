"""
Copyright (c) 2025 cluster-ideals contributors
SPDX-License-Identifier: MIT
"""

"""
Tests for g-vectors, shear coordinates and the assembled cluster variables.
"""

import pytest

from cluster_ideals.arcpath import arc_path, enumerate_paths, kappa, parse_path
from cluster_ideals.common.exceptions import InvalidGeodesicError
from cluster_ideals.common.types import Tag
from cluster_ideals.laurent import ring_for
from cluster_ideals.oracle import explore
from cluster_ideals.shear import (
    cluster_variable,
    coefficient_free,
    expand,
    coefficient_rows,
    g_monomial,
    lamination_shears,
    shear_coords,
)
from cluster_ideals.verify import structural_check


class TestGVector:
    """Test g-vector monomials from shear coordinates."""

    def test_arc_of_triangulation(self, pentagon):
        """Test that an arc of T has g-monomial x of itself."""
        R = ring_for(pentagon)
        for label in pentagon.arcs:
            assert g_monomial(pentagon, arc_path(pentagon, label)) == R.x(label)

    def test_square_diagonal(self, square):
        """Test the g-monomial of the crossing diagonal."""
        path = parse_path(square, "path p=v2 q=v4 cross=1")
        assert g_monomial(square, path).render() == "1/x1"

    def test_pentagon_long_diagonal(self, pentagon, long_diagonal):
        """Test the g-monomial of the long pentagon diagonal."""
        assert g_monomial(pentagon, long_diagonal).render() == "1/x1"

    def test_self_folded_digon(self, selffolded_digon):
        """Test the g-monomial of the arc crossing the loop."""
        path = parse_path(selffolded_digon, "path p=B q=P cross=3")
        assert g_monomial(selffolded_digon, path).render() == "1/x3"

    def test_shear_coordinates_are_integers(self, hexagon):
        """Test that shear coordinates are integer vectors over the arcs."""
        path = parse_path(hexagon, "path p=v2 q=v6 cross=1,2,3")
        b = shear_coords(hexagon, kappa(hexagon, path))
        assert set(b) <= set(hexagon.arcs)
        assert all(isinstance(v, int) for v in b.values())


class TestLaminations:
    """Test coefficient rows predicted by elementary laminations."""

    @pytest.mark.parametrize("fixture_name", ["pentagon", "hexagon", "punctured_digon"])
    def test_initial_arcs_are_unit_vectors(self, request, fixture_name):
        """Test that the lamination of an arc of T has shear coordinate one at that arc only."""
        T = request.getfixturevalue(fixture_name)
        for gamma in T.arcs:
            b = lamination_shears(T, arc_path(T, gamma))
            assert {label: b[label] for label in T.arcs} == {label: int(label == gamma) for label in T.arcs}

    def test_rows_follow_mutation(self, pentagon):
        """Test that tracked laminations reproduce the mutated coefficient rows."""
        for d in explore(pentagon, track=True):
            if d.initial:
                continue
            assert coefficient_rows(d.seed.triangulation, d.tracked) == d.seed.coefficient_rows()


class TestExpand:
    """Test x = g * F(P)."""

    def test_square(self, square):
        """Test the crossing diagonal of the square."""
        expansion = expand(square, parse_path(square, "path p=v2 q=v4 cross=1"))
        assert expansion.render() == {"g": "1/x1", "F": "y1 + 1", "x": "(y1 + 1)/x1"}
        assert expansion.arc is None

    def test_arc_of_triangulation(self, square):
        """Test that an arc of T evaluates to its own variable."""
        expansion = expand(square, parse_path(square, "path p=v1 q=v3 coincide=1"))
        assert expansion.arc == "1"
        assert expansion.render() == {"g": "x1", "F": "1", "x": "x1"}
        assert len(expansion.poset) == 0

    def test_pentagon_long_diagonal(self, pentagon, long_diagonal):
        """Test the long pentagon diagonal with principal coefficients."""
        expansion = expand(pentagon, long_diagonal)
        assert expansion.value.render() == "(x1*y1*y2 + x2 + y1)/(x1*x2)"
        assert expansion.g.render() == "1/x1"
        assert expansion.f_in_y.render() == "y1*y2 + y1 + 1"
        assert expansion.value == expansion.g * expansion.f

    def test_coefficient_free(self, pentagon, long_diagonal):
        """Test the coefficient-free specialization."""
        assert coefficient_free(pentagon, long_diagonal).render() == "(x1 + x2 + 1)/(x1*x2)"
        rendered = expand(pentagon, long_diagonal).render(coefficient_free=True)
        assert rendered["x"] == "(x1 + x2 + 1)/(x1*x2)"

    def test_cluster_variable_is_expansion_value(self, pentagon, long_diagonal):
        """Test that cluster_variable returns the expansion value."""
        assert cluster_variable(pentagon, long_diagonal) == expand(pentagon, long_diagonal).value

    def test_orientation_independent(self, pentagon, long_diagonal):
        """Test that the reversed path gives the same variable."""
        reverse = parse_path(pentagon, "path p=v5 q=v2 cross=2,1")
        assert cluster_variable(pentagon, reverse) == cluster_variable(pentagon, long_diagonal)

    def test_invalid_path_rejected(self, pentagon, long_diagonal):
        """Test that a notched boundary end is refused."""
        bad = long_diagonal.with_tags(Tag.NOTCHED, Tag.PLAIN)
        with pytest.raises(InvalidGeodesicError):
            expand(pentagon, bad)

    @pytest.mark.parametrize(
        "fixture_name, max_crossings",
        [
            ("hexagon", 3),
            ("punctured_triangle", 3),
            ("annulus", 3),
        ],
    )
    def test_f_polynomials_are_well_formed(self, request, fixture_name, max_crossings):
        """Test constant term one, positivity and a unique top monomial."""
        T = request.getfixturevalue(fixture_name)
        for path in enumerate_paths(T, max_crossings, tagged=True):
            expansion = expand(T, path)
            assert structural_check(expansion.f) == [], path
            assert not expansion.f_in_y.has_negative_y()


MAIN_PATH = "path p=P4~ q=P3~ cross=10,3,2@S1.2,3,6,1,8,7,5"


def _x(R, exponents):
    return R.monomial({f"x{label}": e for label, e in exponents.items()})


class TestFourPuncturedDisk:
    """Test worked values on the disk with four punctures and two self-folded triangles."""

    def test_doubly_notched_g(self, four_punctured_disk):
        """Test the g-monomial of the arc notched at P4 and P3."""
        R = ring_for(four_punctured_disk)
        path = parse_path(four_punctured_disk, MAIN_PATH)
        expected = _x(R, {"5": 1, "6": 1, "8": 1, "1": -1, "4": -1, "7": -1, "9": -1})
        assert g_monomial(four_punctured_disk, path) == expected
        assert g_monomial(four_punctured_disk, path).render() == "(x5*x6*x8)/(x1*x4*x7*x9)"

    def test_doubly_notched_poset(self, four_punctured_disk):
        """Test the crossing core, the chain at P3 and the number of ideals."""
        expansion = expand(four_punctured_disk, parse_path(four_punctured_disk, MAIN_PATH))
        P = expansion.poset
        assert len(P) == 13
        assert len(P.covers()) == 13
        assert P.count_ideals() == 180
        labels = sorted(P.weight(e).label() for e in P.elements)
        assert labels == sorted(["9", "3", "2/3", "3", "6", "1", "8", "7", "5", "4", "1", "8", "11"])
        assert expansion.value == expansion.g * expansion.f
        assert expansion.f_in_y.y_free_part() == 1
        assert expansion.f_in_y.is_nonnegative()

    def test_plain_at_p3(self, four_punctured_disk):
        """Test that the plain end at P3 drops the chain and moves the g-monomial."""
        R = ring_for(four_punctured_disk)
        path = parse_path(four_punctured_disk, "path p=P4~ q=P3 cross=10,3,2@S1.2,3,6,1,8,7,5")
        expansion = expand(four_punctured_disk, path)
        assert expansion.g == _x(R, {"6": 1, "8": 1, "11": 1, "1": -1, "7": -1, "9": -1})
        assert len(expansion.poset) == 9
        assert not expansion.poset.is_chain()
        assert expansion.poset.count_ideals() == 45

    def test_arc_notched_at_one_end(self, four_punctured_disk):
        """Test arc 11 notched at P2: a two-element chain weighted by the other arcs at P2."""
        R = ring_for(four_punctured_disk)
        expansion = expand(four_punctured_disk, parse_path(four_punctured_disk, "path p=P3 q=P2~ coincide=11"))
        P = expansion.poset
        assert expansion.g == _x(R, {"8": 1, "7": -1})
        assert P.is_chain()
        ((low, high),) = P.covers()
        assert (P.weight(low).label(), P.weight(high).label()) == ("7", "5")
        assert expansion.f_in_y == 1 + R.y("7") + R.y("7") * R.y("5")

    def test_arc_notched_at_both_ends(self, four_punctured_disk):
        """Test arc 11 notched at both punctures."""
        R = ring_for(four_punctured_disk)
        path = parse_path(four_punctured_disk, "path p=P3~ q=P2~ coincide=11")
        assert g_monomial(four_punctured_disk, path) == R.x("11") ** -1


class TestAnnulus:
    """Test geodesics of the annulus, including self-crossing ones."""

    def test_single_crossing(self, annulus):
        """Test the arc from O to I crossing arc 1 once."""
        R = ring_for(annulus)
        value = cluster_variable(annulus, parse_path(annulus, "path p=O q=I cross=1"))
        assert value == (R.x("2") ** 2 + R.y("1")) * R.x("1") ** -1

    def test_three_crossings(self, annulus):
        """Test the arc from O to I crossing 1, 2, 1."""
        R = ring_for(annulus)
        x1, x2, y1, y2 = R.x("1"), R.x("2"), R.y("1"), R.y("2")
        expansion = expand(annulus, parse_path(annulus, "path p=O q=I cross=1,2,1"))
        assert expansion.g == x2 ** 3 * x1 ** -2
        assert expansion.f_in_y == 1 + 2 * y1 + y1 ** 2 + y1 ** 2 * y2
        numerator = x2 ** 4 + 2 * x2 ** 2 * y1 + y1 ** 2 + x1 ** 2 * y1 ** 2 * y2
        assert expansion.value == numerator * x1 ** -2 * x2 ** -1

    def test_winding_twice(self, annulus):
        """Test the self-crossing loop at O crossing 2, 1."""
        R = ring_for(annulus)
        x1, x2, y1, y2 = R.x("1"), R.x("2"), R.y("1"), R.y("2")
        expansion = expand(annulus, parse_path(annulus, "path p=O q=O cross=2,1"))
        assert expansion.g == x2 * x1 ** -1
        assert expansion.f_in_y == 1 + y1 + y1 * y2
        assert expansion.value == (x2 ** 2 + y1 + x1 ** 2 * y1 * y2) * x1 ** -1 * x2 ** -1

    def test_winding_three_times(self, annulus):
        """Test the self-crossing loop at O crossing 2, 1, 2, 1."""
        R = ring_for(annulus)
        x1, x2, y1, y2 = R.x("1"), R.x("2"), R.y("1"), R.y("2")
        expansion = expand(annulus, parse_path(annulus, "path p=O q=O cross=2,1,2,1"))
        assert expansion.g == x2 ** 2 * x1 ** -2
        assert expansion.poset.count_ideals() == 8
        assert expansion.f_in_y == (
            1 + 2 * y1 + y1 ** 2 + y1 * y2 + 2 * y1 ** 2 * y2 + y1 ** 2 * y2 ** 2
        )

    def test_self_crossing_loops_are_positive(self, annulus):
        """Test constant term one and positive coefficients on every loop with at most four crossings."""
        loops = [p for p in enumerate_paths(annulus, 4) if p.start == p.end and not p.is_coincident]
        assert {(p.start, p.n_crossings) for p in loops} == {("O", 2), ("O", 4), ("I", 2), ("I", 4)}
        for path in loops:
            f = expand(annulus, path).f_in_y
            assert f.y_free_part() == 1, path
            assert f.is_nonnegative(), path
