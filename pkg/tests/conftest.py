"""
Copyright (c) 2025 cluster-ideals contributors
SPDX-License-Identifier: MIT
"""

"""
Pytest configuration and shared fixtures.

This file provides:
- One fixture per bundled sample surface
- Shared path fixtures
- Environment isolation for configuration tests
"""

import pytest

from cluster_ideals.arcpath import parse_path
from cluster_ideals.surface import load_sample


@pytest.fixture
def square():
    """Square with one diagonal (rank 1)."""
    return load_sample("square")


@pytest.fixture
def pentagon():
    """Pentagon with a fan triangulation (rank 2)."""
    return load_sample("pentagon")


@pytest.fixture
def hexagon():
    """Hexagon with a fan triangulation (rank 3)."""
    return load_sample("hexagon")


@pytest.fixture
def octagon():
    """Octagon with a fan triangulation (rank 5)."""
    return load_sample("octagon")


@pytest.fixture
def punctured_digon():
    """Once-punctured digon, both boundary points joined to the puncture."""
    return load_sample("punctured_digon")


@pytest.fixture
def selffolded_digon():
    """Once-punctured digon with a self-folded triangle around the puncture."""
    return load_sample("selffolded_digon")


@pytest.fixture
def punctured_triangle():
    """Once-punctured triangle (rank 3)."""
    return load_sample("punctured_triangle")


@pytest.fixture
def punctured_square():
    """Once-punctured square (rank 4)."""
    return load_sample("punctured_square")


@pytest.fixture
def annulus():
    """Annulus with one marked point on each boundary component."""
    return load_sample("annulus")


@pytest.fixture
def four_punctured_disk():
    """Disk with two boundary points, four punctures and two self-folded triangles."""
    return load_sample("four_punctured_disk")


@pytest.fixture
def long_diagonal(pentagon):
    """The pentagon diagonal crossing both arcs of the fan."""
    return parse_path(pentagon, "path p=v2 q=v5 cross=1,2")


@pytest.fixture
def clean_env(monkeypatch):
    """Clear all cluster-ideals environment variables."""
    env_vars = [
        "CLUSTER_IDEALS_LOG_LEVEL",
        "CLUSTER_IDEALS_VERBOSE_STARTUP",
        "CLUSTER_IDEALS_BFS_BUDGET",
        "CLUSTER_IDEALS_SPIRAL_TURNS",
        "CLUSTER_IDEALS_MAX_STEER_FLIPS",
        "CLUSTER_IDEALS_MIRROR_ORIENTATION",
    ]
    for var in env_vars:
        monkeypatch.delenv(var, raising=False)


def pytest_configure(config):
    """Configure pytest with custom markers."""
    config.addinivalue_line(
        "markers",
        "unit: Unit tests (fast, small surfaces)"
    )
    config.addinivalue_line(
        "markers",
        "slow: Tests that explore larger flip graphs"
    )


def pytest_collection_modifyitems(config, items):
    """Automatically mark tests that are not marked slow as unit tests."""
    for item in items:
        if "slow" not in item.keywords and "unit" not in item.keywords:
            item.add_marker(pytest.mark.unit)
