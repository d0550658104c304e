"""
Copyright (c) 2025 cluster-ideals contributors
SPDX-License-Identifier: MIT
"""

"""
Tests for environment-based configuration.
"""

import logging
import os
from unittest.mock import patch

from cluster_ideals.common.config import (
    DEFAULT_BFS_BUDGET,
    DEFAULT_MAX_STEER_FLIPS,
    DEFAULT_SPIRAL_TURNS,
    get_bfs_budget,
    get_max_steer_flips,
    get_spiral_turns,
    is_mirrored,
    is_verbose_startup,
)


class TestSearchBudget:
    """Test the flip-search node budget."""

    @patch.dict(os.environ, {}, clear=True)
    def test_default(self):
        """Test the default budget."""
        assert get_bfs_budget() == DEFAULT_BFS_BUDGET

    @patch.dict(os.environ, {"CLUSTER_IDEALS_BFS_BUDGET": "250"})
    def test_from_environment(self):
        """Test that the environment sets the budget."""
        assert get_bfs_budget() == 250

    @patch.dict(os.environ, {"CLUSTER_IDEALS_BFS_BUDGET": "250"})
    def test_override_wins(self):
        """Test that an explicit value beats the environment."""
        assert get_bfs_budget(7) == 7

    @patch.dict(os.environ, {"CLUSTER_IDEALS_BFS_BUDGET": "lots"})
    def test_invalid_value_falls_back(self, caplog):
        """Test that a non-integer is logged and replaced by the default."""
        with caplog.at_level(logging.WARNING, logger="cluster_ideals.common.config"):
            assert get_bfs_budget() == DEFAULT_BFS_BUDGET
        assert "CLUSTER_IDEALS_BFS_BUDGET" in caplog.text

    @patch.dict(os.environ, {"CLUSTER_IDEALS_BFS_BUDGET": "0"})
    def test_below_minimum_falls_back(self):
        """Test that a zero budget is refused."""
        assert get_bfs_budget() == DEFAULT_BFS_BUDGET

    @patch.dict(os.environ, {"CLUSTER_IDEALS_BFS_BUDGET": "  "})
    def test_blank_value(self):
        """Test that a blank value means unset."""
        assert get_bfs_budget() == DEFAULT_BFS_BUDGET


class TestCurveSettings:
    """Test spiral truncation and steering limits."""

    @patch.dict(os.environ, {}, clear=True)
    def test_defaults(self):
        """Test the defaults."""
        assert get_spiral_turns() == DEFAULT_SPIRAL_TURNS
        assert get_max_steer_flips() == DEFAULT_MAX_STEER_FLIPS

    @patch.dict(os.environ, {"CLUSTER_IDEALS_SPIRAL_TURNS": "4", "CLUSTER_IDEALS_MAX_STEER_FLIPS": "12"})
    def test_from_environment(self):
        """Test values read from the environment."""
        assert get_spiral_turns() == 4
        assert get_max_steer_flips() == 12

    @patch.dict(os.environ, {"CLUSTER_IDEALS_SPIRAL_TURNS": "-1"})
    def test_negative_turns_refused(self):
        """Test that spirals are unrolled at least once."""
        assert get_spiral_turns() == DEFAULT_SPIRAL_TURNS


class TestFlags:
    """Test boolean switches."""

    @patch.dict(os.environ, {}, clear=True)
    def test_off_by_default(self):
        """Test that flags default to off."""
        assert not is_mirrored()
        assert not is_verbose_startup()

    @patch.dict(os.environ, {"CLUSTER_IDEALS_MIRROR_ORIENTATION": "TRUE"})
    def test_mirror_case_insensitive(self):
        """Test that truthy values are matched case-insensitively."""
        assert is_mirrored()

    @patch.dict(os.environ, {"CLUSTER_IDEALS_VERBOSE_STARTUP": "1"})
    def test_verbose_startup(self):
        """Test the numeric truthy value."""
        assert is_verbose_startup()

    @patch.dict(os.environ, {"CLUSTER_IDEALS_MIRROR_ORIENTATION": "no"})
    def test_other_values_are_false(self):
        """Test that anything else is false."""
        assert not is_mirrored()


class TestLoggingSetup:
    """Test the package logger bootstrap."""

    def test_package_logger_has_one_handler(self):
        """Test that importing the package installs a single handler."""
        import cluster_ideals  # noqa: F401

        assert len(logging.getLogger("cluster_ideals").handlers) == 1

    @patch.dict(os.environ, {"CLUSTER_IDEALS_LOG_LEVEL": "warning"})
    def test_configure_logging_reads_level(self):
        """Test that the environment level is applied."""
        import cluster_ideals

        package_logger = logging.getLogger("cluster_ideals")
        previous = package_logger.level
        try:
            assert cluster_ideals._configure_logging() == logging.WARNING
            assert package_logger.level == logging.WARNING
            assert len(package_logger.handlers) == 1
        finally:
            package_logger.setLevel(previous)

    @patch.dict(os.environ, {"CLUSTER_IDEALS_LOG_LEVEL": "chatty"})
    def test_unknown_level_defaults_to_info(self):
        """Test that an unknown level falls back to INFO."""
        import cluster_ideals

        package_logger = logging.getLogger("cluster_ideals")
        previous = package_logger.level
        try:
            assert cluster_ideals._configure_logging() == logging.INFO
        finally:
            package_logger.setLevel(previous)
