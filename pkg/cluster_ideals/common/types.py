"""
Shared type definitions for cluster-ideals.

This module contains the small value types used across the surface,
curve, poset and oracle modules.
"""

from dataclasses import dataclass
from enum import Enum
from typing import Optional


class EdgeKind(str, Enum):
    """Kinds of triangle sides."""

    ARC = "a"
    BOUNDARY = "b"


class Tag(str, Enum):
    """Tagging of a curve end at a puncture."""

    PLAIN = "plain"
    NOTCHED = "notched"

    def toggled(self) -> "Tag":
        return Tag.NOTCHED if self is Tag.PLAIN else Tag.PLAIN


class Turn(str, Enum):
    """Side of the traversal on which a segment cuts its triangle corner."""

    LEFT = "L"
    RIGHT = "R"


class Rotation(str, Enum):
    """Direction in which a curve end winds through the corners at a marked point."""

    CCW = "ccw"
    CW = "cw"

    def reversed(self) -> "Rotation":
        return Rotation.CW if self is Rotation.CCW else Rotation.CCW


@dataclass(frozen=True)
class EdgeRef:
    """A triangle side: an arc or a boundary segment with its label."""

    kind: EdgeKind
    label: str

    @property
    def is_arc(self) -> bool:
        return self.kind is EdgeKind.ARC

    def token(self) -> str:
        return f"{self.kind.value}{self.label}"

    def __str__(self) -> str:
        return self.token()


@dataclass(frozen=True)
class Segment:
    """
    The piece of a curve inside one triangle.

    ``entry`` and ``exit`` are slot indices of the triangle; ``None`` marks the
    start or end of the curve at the corner opposite the other slot.
    """

    tid: str
    entry: Optional[int]
    exit: Optional[int]

    def reversed(self) -> "Segment":
        return Segment(self.tid, self.exit, self.entry)

    @property
    def turn(self) -> Optional[Turn]:
        if self.entry is None or self.exit is None:
            return None
        return Turn.RIGHT if self.exit == (self.entry + 1) % 3 else Turn.LEFT


@dataclass(frozen=True)
class Weight:
    """Poset element weight: yhat of ``arc``, divided by yhat of ``denominator`` if set."""

    arc: str
    denominator: Optional[str] = None

    @property
    def is_quotient(self) -> bool:
        return self.denominator is not None

    def label(self) -> str:
        if self.denominator is None:
            return self.arc
        return f"{self.arc}/{self.denominator}"
