"""
Common utilities for cluster-ideals.

Label ordering, cyclic rotation helpers and logging helpers shared by the
computational modules.
"""

import logging
import re
from typing import Any, Iterable, List, Sequence, Tuple, TypeVar

logger = logging.getLogger(__name__)

T = TypeVar("T")

_NATURAL_CHUNK = re.compile(r"(\d+)")


def natural_key(label: str) -> Tuple[Any, ...]:
    """
    Sort key ordering labels like ``2 < 10`` and ``a2 < a10``.

    Args:
        label: arc, boundary or vertex label

    Returns:
        Tuple usable as a sort key
    """
    parts = _NATURAL_CHUNK.split(label)
    return tuple((0, int(p), "") if p.isdigit() else (1, 0, p) for p in parts if p != "")


def natural_sorted(labels: Iterable[str]) -> List[str]:
    return sorted(labels, key=natural_key)


def rotate(seq: Sequence[T], shift: int) -> Tuple[T, ...]:
    """Cyclically rotate ``seq`` left by ``shift`` places."""
    if not seq:
        return tuple()
    shift %= len(seq)
    return tuple(seq[shift:]) + tuple(seq[:shift])


def min_rotation(seq: Sequence[T]) -> Tuple[Tuple[T, ...], int]:
    """Return the lexicographically smallest rotation of ``seq`` and its shift."""
    best = None
    best_shift = 0
    for shift in range(len(seq)):
        candidate = rotate(seq, shift)
        if best is None or candidate < best:
            best = candidate
            best_shift = shift
    return (best if best is not None else tuple()), best_shift


def is_debug_logging_enabled() -> bool:
    """Check whether the package logger emits debug records."""
    return logging.getLogger("cluster_ideals").isEnabledFor(logging.DEBUG)


def log_variable(log: logging.Logger, what: str, rendered: str, n_terms: int) -> None:
    """Log a computed variable at debug level, truncating long renderings."""
    if not log.isEnabledFor(logging.DEBUG):
        return
    if len(rendered) > 200:
        rendered = rendered[:197] + "..."
    log.debug("%s: %d terms, %s", what, n_terms, rendered)
