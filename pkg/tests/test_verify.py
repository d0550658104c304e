"""
Copyright (c) 2025 cluster-ideals contributors
SPDX-License-Identifier: MIT
"""

"""
Tests for verification: oracle comparison, tidiness, tile covers and exchange relations.
"""

import json

import pytest

from cluster_ideals.arcpath import parse_path
from cluster_ideals.common.exceptions import NotExchangeable, NotTidy
from cluster_ideals.laurent import ring_for
from cluster_ideals.poset import build_poset
from cluster_ideals.verify import (
    VerificationReport,
    birkhoff_check,
    check_lifts,
    check_theorem,
    exchange_decomposition,
    exchangeable_arcs,
    is_tidy,
    structural_check,
    tile_cover,
    tidy_corpus,
)


class TestCheckTheorem:
    """Test the formula against the mutation oracle."""

    @pytest.mark.parametrize(
        "fixture_name",
        ["square", "pentagon", "hexagon", "punctured_digon", "selffolded_digon", "punctured_triangle"],
    )
    def test_small_surfaces(self, request, clean_env, fixture_name):
        """Test that every tagged arc of a small surface matches the oracle."""
        T = request.getfixturevalue(fixture_name)
        report = check_theorem(T)
        assert report.ok, report.lines()
        assert report.counts["variable"] > 0
        assert report.counts["g_vector"] == report.counts["variable"]

    def test_annulus_depth(self, clean_env, annulus):
        """Test the annulus up to a fixed flip depth."""
        report = check_theorem(annulus, depth=2)
        assert report.ok, report.lines()
        assert report.counts["lamination"] > 0

    @pytest.mark.slow
    def test_octagon(self, clean_env, octagon):
        """Test all diagonals of the octagon."""
        assert check_theorem(octagon).ok

    @pytest.mark.slow
    def test_punctured_square(self, clean_env, punctured_square):
        """Test every tagged arc of the once-punctured square."""
        assert check_theorem(punctured_square).ok

    @pytest.mark.slow
    @pytest.mark.parametrize("spec", ["path p=P1 q=P3 cross=3,6", "path p=P1 q=P3~ cross=3,6"])
    def test_four_punctured_disk(self, clean_env, four_punctured_disk, spec):
        """Test steered arcs between punctures next to a self-folded triangle."""
        path = parse_path(four_punctured_disk, spec)
        report = check_theorem(four_punctured_disk, paths=[path])
        assert report.ok, report.lines()

    def test_explicit_paths(self, clean_env, pentagon, long_diagonal):
        """Test that explicit paths are steered to and compared."""
        report = check_theorem(pentagon, paths=[long_diagonal])
        assert report.ok
        assert report.counts["variable"] == 1

    def test_geodesics_get_structural_checks(self, clean_env, hexagon):
        """Test structural checks on geodesics given directly."""
        path = parse_path(hexagon, "path p=v2 q=v6 cross=1,2,3")
        report = check_theorem(hexagon, paths=[], geodesics=[path])
        assert report.ok
        assert report.counts["geodesic"] == 1
        assert report.counts["structure"] == 1

    def test_mirrored_orientation_fails(self, clean_env, monkeypatch, pentagon):
        """Test that swapping left and right is caught."""
        monkeypatch.setenv("CLUSTER_IDEALS_MIRROR_ORIENTATION", "true")
        report = check_theorem(pentagon)
        assert not report.ok
        assert report.failures

    def test_budget_exhausted(self, clean_env, hexagon):
        """Test that a tiny budget is reported instead of raised."""
        report = check_theorem(hexagon, budget=1)
        assert report.budget_exhausted
        assert not report.ok
        assert not report.failures

    def test_tidy_relations(self, clean_env, pentagon):
        """Test tile covers and exchange relations along the exploration."""
        report = check_theorem(pentagon, tidy=True)
        assert report.ok, report.lines()
        assert report.counts["exchange"] > 0
        assert report.counts["lift"] > 0


class TestReport:
    """Test report rendering."""

    def test_summary(self):
        """Test counts, failures and the first failure."""
        report = VerificationReport("demo")
        report.record("variable", "a->b", True)
        report.record("variable", "a->c", False, "differs")
        summary = report.summary()
        assert summary["checks"] == {"variable": 2}
        assert summary["failures"] == 1
        assert summary["first_failure"]["subject"] == "a->c"
        assert json.loads(report.to_json())["ok"] is False

    def test_lines(self):
        """Test the human-readable lines."""
        report = VerificationReport("demo")
        report.record("structure", "a->b", True)
        assert report.lines() == ["surface demo", "structure: 1/1 passed", "PASS"]


class TestTidy:
    """Test the tidiness conditions."""

    def test_pentagon_pair_is_tidy(self, pentagon, long_diagonal):
        """Test that the long diagonal of the pentagon fan is tidy."""
        report = is_tidy(pentagon, long_diagonal)
        assert report.tidy
        assert report.multiplicities == {"1": 1, "2": 1}

    def test_self_folded_not_tidy(self, selffolded_digon):
        """Test that self-folded triangles violate tidiness."""
        path = parse_path(selffolded_digon, "path p=B q=P cross=3")
        report = is_tidy(selffolded_digon, path)
        assert not report.tidy
        assert "plain" in report.failed()

    def test_hexagon_diagonals_are_tidy(self, hexagon):
        """Test that diagonals crossing a fan away from its apex are tidy."""
        for spec in ("path p=v2 q=v6 cross=1,2,3", "path p=v2 q=v4 cross=1"):
            assert is_tidy(hexagon, parse_path(hexagon, spec)).tidy

    def test_parallel_arc_must_coincide(self, square):
        """Test that an arc of T satisfies the parallel-arc condition."""
        report = is_tidy(square, parse_path(square, "path p=v1 q=v3 coincide=1"))
        assert report.conditions["coincides_if_parallel"]


class TestTileCover:
    """Test lifts to tile covers."""

    def test_pentagon(self, pentagon, long_diagonal):
        """Test that the cover reproduces the arc's data."""
        cover = tile_cover(pentagon, long_diagonal)
        assert len(cover.tiles) >= len(long_diagonal.segments)
        lift = check_lifts(pentagon, long_diagonal, cover)
        assert lift.ok, lift.witness
        lift.raise_for_failure()

    def test_lift_is_identity_on_weights(self, pentagon, long_diagonal):
        """Test that lifting x and y weights lands in the source ring."""
        cover = tile_cover(pentagon, long_diagonal)
        R = ring_for(pentagon)
        for label, origin in cover.origin.items():
            assert cover.x_weights[label] == R.x(origin)
            assert cover.y_weights[label] == R.y(origin)

    def test_corpus(self, hexagon):
        """Test lifts and exchange relations for a fixed list of arcs."""
        paths = [
            parse_path(hexagon, "path p=v2 q=v6 cross=1,2,3"),
            parse_path(hexagon, "path p=v2 q=v5 cross=1,2"),
        ]
        report = tidy_corpus(hexagon, paths)
        assert report.ok, report.lines()


class TestExchange:
    """Test the exchange decomposition of tidy pairs."""

    def test_pentagon_first_crossing(self, pentagon, long_diagonal):
        """Test the split at the lowest element of the chain."""
        ex = exchange_decomposition(pentagon, long_diagonal, "1")
        assert ex.ok
        assert ex.kind == "crossing"
        assert len(ex.blue) == 0
        assert len(ex.red) == 1
        R = ring_for(pentagon)
        assert ex.orange == R.y("1") * R.x("2") ** -1

    def test_pentagon_second_crossing(self, pentagon, long_diagonal):
        """Test the split at the top of the chain."""
        ex = exchange_decomposition(pentagon, long_diagonal, "2")
        assert ex.ok
        assert len(ex.blue) == 1
        assert len(ex.red) == 0

    def test_exchangeable_arcs(self, pentagon, long_diagonal):
        """Test that both crossed arcs label a single element."""
        assert exchangeable_arcs(pentagon, long_diagonal) == ["1", "2"]

    def test_not_exchangeable(self, pentagon, long_diagonal):
        """Test that a label outside the poset is refused."""
        with pytest.raises(NotExchangeable):
            exchange_decomposition(pentagon, long_diagonal, "9")

    def test_not_tidy(self, selffolded_digon):
        """Test that non-tidy pairs are refused."""
        path = parse_path(selffolded_digon, "path p=B q=P cross=3")
        with pytest.raises(NotTidy):
            exchange_decomposition(selffolded_digon, path, "3")


class TestStructuralChecks:
    """Test F-polynomial sanity checks."""

    def test_well_formed(self, pentagon):
        """Test that 1 + y1 + y1 y2 passes."""
        R = ring_for(pentagon)
        assert structural_check(1 + R.y("1") + R.y("1") * R.y("2")) == []

    def test_problems_reported(self, pentagon):
        """Test that each defect is named."""
        R = ring_for(pentagon)
        problems = structural_check(2 + R.y("1") ** -1 - R.y("2"))
        assert "constant term is not 1" in problems
        assert "y-denominator" in problems
        assert "negative coefficient" in problems

    def test_birkhoff(self, pentagon, long_diagonal):
        """Test that distinct ideals have distinct weight monomials."""
        assert birkhoff_check(pentagon, build_poset(pentagon, long_diagonal))
