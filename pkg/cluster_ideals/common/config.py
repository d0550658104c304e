"""
Runtime configuration read from environment variables.

Each setting has a typed getter with a default; invalid values are logged
and replaced by the default.
"""

import os
import logging
from typing import Optional

logger = logging.getLogger(__name__)

# Environment variable names
ENV_LOG_LEVEL = "CLUSTER_IDEALS_LOG_LEVEL"
ENV_VERBOSE_STARTUP = "CLUSTER_IDEALS_VERBOSE_STARTUP"
ENV_BFS_BUDGET = "CLUSTER_IDEALS_BFS_BUDGET"
ENV_SPIRAL_TURNS = "CLUSTER_IDEALS_SPIRAL_TURNS"
ENV_MAX_STEER_FLIPS = "CLUSTER_IDEALS_MAX_STEER_FLIPS"
ENV_MIRROR_ORIENTATION = "CLUSTER_IDEALS_MIRROR_ORIENTATION"

# Defaults
DEFAULT_BFS_BUDGET = 100_000
DEFAULT_SPIRAL_TURNS = 2
DEFAULT_MAX_STEER_FLIPS = 200

_TRUE_VALUES = ("true", "1", "yes")


def _get_int(name: str, default: int, minimum: int = 0) -> int:
    raw = os.getenv(name)
    if raw is None or not raw.strip():
        return default
    try:
        value = int(raw.strip())
    except ValueError:
        logger.warning("Invalid %s value '%s', using default %d", name, raw, default)
        return default
    if value < minimum:
        logger.warning("%s must be >= %d, got %d; using default %d", name, minimum, value, default)
        return default
    return value


def get_bfs_budget(override: Optional[int] = None) -> int:
    """
    Node budget of the breadth-first flip search.

    Args:
        override: explicit value (e.g. from a CLI flag) taking precedence

    Returns:
        Positive node budget
    """
    if override is not None:
        return override
    return _get_int(ENV_BFS_BUDGET, DEFAULT_BFS_BUDGET, minimum=1)


def get_spiral_turns() -> int:
    """Number of full turns a spiral is unrolled before the checked extra turn."""
    return _get_int(ENV_SPIRAL_TURNS, DEFAULT_SPIRAL_TURNS, minimum=1)


def get_max_steer_flips() -> int:
    """Upper bound on greedy steering flips before falling back to search."""
    return _get_int(ENV_MAX_STEER_FLIPS, DEFAULT_MAX_STEER_FLIPS, minimum=1)


def is_mirrored() -> bool:
    """
    Whether left/right decisions are mirrored.

    Only meant as a negative control: a mirrored build must fail verification.
    """
    return os.getenv(ENV_MIRROR_ORIENTATION, "").lower() in _TRUE_VALUES


def is_verbose_startup() -> bool:
    return os.getenv(ENV_VERBOSE_STARTUP, "").lower() in _TRUE_VALUES
