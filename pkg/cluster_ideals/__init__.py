"""
Cluster variables of triangulated marked surfaces as sums over poset ideals.

Given a tagged triangulation and a tagged arc (or, more generally, a tagged
geodesic given by its crossing sequence), this package builds the weighted
poset of the curve and evaluates the principal-coefficient cluster variable
as a g-vector monomial times a sum over the order ideals of the poset. A
seed-mutation oracle, tile covers and exchange decompositions check the
results independently.

Usage:
    from cluster_ideals import load_sample, parse_path, expand

    T = load_sample("pentagon")
    path = parse_path(T, "path p=v2 q=v5 cross=1,2")
    print(expand(T, path).value)
"""

import logging

from .common.config import ENV_LOG_LEVEL, is_verbose_startup
import os


# Configure logging based on CLUSTER_IDEALS_LOG_LEVEL environment variable
def _configure_logging():
    """Configure logging for cluster-ideals."""
    log_level_str = os.getenv(ENV_LOG_LEVEL, "INFO").upper()

    # Map string levels to logging constants
    level_mapping = {
        "DEBUG": logging.DEBUG,
        "INFO": logging.INFO,
        "WARNING": logging.WARNING,
        "ERROR": logging.ERROR,
        "CRITICAL": logging.CRITICAL,
    }

    log_level = level_mapping.get(log_level_str, logging.INFO)

    package_logger = logging.getLogger("cluster_ideals")
    package_logger.setLevel(log_level)

    # Only add handler if none exists to avoid duplicate logs
    if not package_logger.handlers:
        handler = logging.StreamHandler()
        formatter = logging.Formatter("%(name)s - %(levelname)s - %(message)s")
        handler.setFormatter(formatter)
        package_logger.addHandler(handler)

    return log_level


_log_level = _configure_logging()

logger = logging.getLogger(__name__)

if is_verbose_startup():
    logger.info("cluster-ideals initialization starting")

from .surface import (
    ExchangeMatrix,
    Triangulation,
    flip_triangulation,
    format_surface,
    load_sample,
    load_surface,
    parse_surface,
    resolve_surface,
    sample_names,
    signed_adjacency,
    tag_switch,
)
from .laurent import LaurentPoly, LaurentRing, laurent_ring, ring_for
from .arcpath import (
    CrossingPath,
    enumerate_paths,
    format_path,
    parse_path,
    validate_geodesic,
)
from .poset import WeightedPoset, build_poset, f_polynomial
from .shear import Expansion, cluster_variable, expand, g_monomial, shear_coords
from .oracle import Seed, explore, initial_seed, mutate, steer_to
from .verify import (
    VerificationReport,
    check_lifts,
    check_theorem,
    exchange_decomposition,
    is_tidy,
    tile_cover,
)

if is_verbose_startup():
    logger.debug("cluster-ideals modules loaded")

__all__ = [
    "ExchangeMatrix",
    "Triangulation",
    "flip_triangulation",
    "format_surface",
    "load_sample",
    "load_surface",
    "parse_surface",
    "resolve_surface",
    "sample_names",
    "signed_adjacency",
    "tag_switch",
    "LaurentPoly",
    "LaurentRing",
    "laurent_ring",
    "ring_for",
    "CrossingPath",
    "enumerate_paths",
    "format_path",
    "parse_path",
    "validate_geodesic",
    "WeightedPoset",
    "build_poset",
    "f_polynomial",
    "Expansion",
    "cluster_variable",
    "expand",
    "g_monomial",
    "shear_coords",
    "Seed",
    "explore",
    "initial_seed",
    "mutate",
    "steer_to",
    "VerificationReport",
    "check_lifts",
    "check_theorem",
    "exchange_decomposition",
    "is_tidy",
    "tile_cover",
]
