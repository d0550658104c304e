"""
Common utilities and shared types for cluster-ideals.

This module contains the value types, exceptions, configuration getters and
helpers shared by the surface, curve, poset, oracle and verification modules.
"""

from .types import (
    EdgeKind,
    EdgeRef,
    Rotation,
    Segment,
    Tag,
    Turn,
    Weight,
)

from .utils import (
    natural_key,
    natural_sorted,
    rotate,
    min_rotation,
    is_debug_logging_enabled,
    log_variable,
)

from .exceptions import (
    ClusterIdealsError,
    SurfaceParseError,
    ExcludedSurfaceError,
    PathParseError,
    PathAmbiguityError,
    InvalidGeodesicError,
    NonExactDivision,
    NonPolynomialF,
    ChainTooShort,
    SpiralTruncationViolation,
    OracleError,
    MultipleYFreeTerms,
    SteeringStuck,
    BFSBudgetExceeded,
    NotTidy,
    NotExchangeable,
    LiftMismatch,
    ConfigurationError,
    handle_parse_error,
    handle_oracle_error,
)

from .config import (
    get_bfs_budget,
    get_spiral_turns,
    get_max_steer_flips,
    is_mirrored,
    is_verbose_startup,
)

__all__ = [
    # Types
    "EdgeKind",
    "EdgeRef",
    "Rotation",
    "Segment",
    "Tag",
    "Turn",
    "Weight",
    # Utils
    "natural_key",
    "natural_sorted",
    "rotate",
    "min_rotation",
    "is_debug_logging_enabled",
    "log_variable",
    # Exceptions
    "ClusterIdealsError",
    "SurfaceParseError",
    "ExcludedSurfaceError",
    "PathParseError",
    "PathAmbiguityError",
    "InvalidGeodesicError",
    "NonExactDivision",
    "NonPolynomialF",
    "ChainTooShort",
    "SpiralTruncationViolation",
    "OracleError",
    "MultipleYFreeTerms",
    "SteeringStuck",
    "BFSBudgetExceeded",
    "NotTidy",
    "NotExchangeable",
    "LiftMismatch",
    "ConfigurationError",
    "handle_parse_error",
    "handle_oracle_error",
    # Config
    "get_bfs_budget",
    "get_spiral_turns",
    "get_max_steer_flips",
    "is_mirrored",
    "is_verbose_startup",
]
