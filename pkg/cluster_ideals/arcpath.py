"""
Combinatorial tagged geodesics.

A :class:`CrossingPath` is stored as the walk it takes through the
triangles: one :class:`Segment` per triangle visited, the crossings being
the slots through which consecutive segments pass. Storing slots rather
than bare arc labels keeps paths well defined when an arc label occurs
twice in a triangle (self-folded triangles) and lets flips rewrite a path
locally. A path that coincides with an arc stores one slot of that arc,
oriented from the start point to the end point.
"""

import logging
import re
from dataclasses import dataclass, replace
from typing import Dict, FrozenSet, Iterator, List, Optional, Sequence, Tuple

from .common.config import get_spiral_turns
from .common.exceptions import (
    ClusterIdealsError,
    InvalidGeodesicError,
    PathAmbiguityError,
    PathParseError,
)
from .common.types import Rotation, Segment, Tag, Turn
from .common.utils import min_rotation, natural_sorted
from .surface import Slot, Triangulation, flip_triangulation, tag_switch

logger = logging.getLogger(__name__)

_CROSS_ITEM = re.compile(r"^([A-Za-z0-9_]+)(?:@([A-Za-z0-9_]+)\.([012]))?$")


@dataclass(frozen=True)
class CrossingPath:
    """A combinatorial tagged geodesic relative to a fixed triangulation."""

    start: str
    end: str
    segments: Tuple[Segment, ...] = ()
    start_tag: Tag = Tag.PLAIN
    end_tag: Tag = Tag.PLAIN
    coincident: Optional[Slot] = None

    @property
    def is_coincident(self) -> bool:
        return self.coincident is not None

    @property
    def n_crossings(self) -> int:
        return max(len(self.segments) - 1, 0)

    def crossing_slots(self) -> List[Slot]:
        return [(s.tid, s.exit) for s in self.segments[:-1]]  # type: ignore[misc]

    def crossings(self, T: Triangulation) -> List[str]:
        """Labels of the arcs crossed, in order."""
        return [T.edge(slot).label for slot in self.crossing_slots()]

    def tags(self) -> Tuple[Tag, Tag]:
        return self.start_tag, self.end_tag

    def toggled_at(self, v: str) -> "CrossingPath":
        """Reverse the tagging of every end at ``v``."""
        return replace(
            self,
            start_tag=self.start_tag.toggled() if self.start == v else self.start_tag,
            end_tag=self.end_tag.toggled() if self.end == v else self.end_tag,
        )

    def with_tags(self, start_tag: Tag, end_tag: Tag) -> "CrossingPath":
        return replace(self, start_tag=start_tag, end_tag=end_tag)


@dataclass(frozen=True)
class CurveEnd:
    """How a curve finishes at one of its endpoints."""

    vertex: str
    rotation: Rotation
    at_boundary: bool

    @property
    def spirals(self) -> bool:
        return not self.at_boundary


@dataclass(frozen=True)
class Curve:
    """A crossing path whose ends land on the boundary or spiral into punctures."""

    path: CrossingPath
    start: CurveEnd
    end: CurveEnd

    def with_reversed_spirals_at(self, v: str) -> "Curve":
        start = self.start
        end = self.end
        if start.vertex == v and start.spirals:
            start = replace(start, rotation=start.rotation.reversed())
        if end.vertex == v and end.spirals:
            end = replace(end, rotation=end.rotation.reversed())
        return Curve(self.path, start, end)


@dataclass(frozen=True)
class Violation:
    """First violated geodesic condition."""

    condition: str
    position: Optional[int]
    message: str


@dataclass(frozen=True)
class Unrolled:
    """Explicit triangle walk of a curve; ``outer`` holds crossings in the truncated outermost turn."""

    segments: Tuple[Segment, ...]
    outer: FrozenSet[int]

    def crossing_slots(self) -> List[Slot]:
        return [(s.tid, s.exit) for s in self.segments[:-1]]  # type: ignore[misc]


# Construction helpers


def arc_path(T: Triangulation, label: str) -> CrossingPath:
    """The coincident path of the tagged arc denoted by ``label``."""
    arc = T.tagged_arc(label)
    return CrossingPath(
        start=arc.start,
        end=arc.end,
        start_tag=arc.start_tag,
        end_tag=arc.end_tag,
        coincident=arc.slot,
    )


def reversed_path(T: Triangulation, path: CrossingPath) -> CrossingPath:
    """The same curve traversed from the other end."""
    coincident = T.partner(path.coincident) if path.coincident is not None else None
    return CrossingPath(
        start=path.end,
        end=path.start,
        segments=tuple(s.reversed() for s in reversed(path.segments)),
        start_tag=path.end_tag,
        end_tag=path.start_tag,
        coincident=coincident,
    )


def path_key(T: Triangulation, path: CrossingPath) -> Tuple:
    """Orientation-independent identity of a path relative to ``T``."""
    if path.coincident is not None:
        edge = tuple(sorted(T.arc_slots[T.edge(path.coincident).label]))
        ends = min(
            (path.start, path.start_tag.value, path.end, path.end_tag.value),
            (path.end, path.end_tag.value, path.start, path.start_tag.value),
        )
        return ("coincide", ends, edge)
    rev = reversed_path(T, path)

    def walk(p: CrossingPath) -> Tuple:
        steps = tuple(
            (s.tid, -1 if s.entry is None else s.entry, -1 if s.exit is None else s.exit)
            for s in p.segments
        )
        return (p.start, p.start_tag.value, p.end, p.end_tag.value, steps)

    return ("cross",) + min(walk(path), walk(rev))


# Validation


def validate_geodesic(T: Triangulation, path: CrossingPath) -> Optional[Violation]:
    """
    Check the combinatorial geodesic conditions.

    Returns:
        ``None`` when ``path`` is a combinatorial tagged geodesic, otherwise
        the first violated condition.
    """
    for v, tag in ((path.start, path.start_tag), (path.end, path.end_tag)):
        if v not in T.vertices:
            return Violation("vertex", None, f"Unknown marked point {v}")
        if tag is Tag.NOTCHED and not T.is_puncture(v):
            return Violation("tag", None, f"Boundary point {v} cannot be tagged notched")
    if path.coincident is not None:
        if path.segments:
            return Violation("coincident", None, "Coincident path must not cross arcs")
        tid, s = path.coincident
        if tid not in T.by_tid or s not in (0, 1, 2) or not T.edge(path.coincident).is_arc:
            return Violation("coincident", None, f"{path.coincident} is not an arc slot")
        if T.slot_endpoints(path.coincident) != (path.start, path.end):
            return Violation(
                "coincident", None, f"Arc at {path.coincident} does not join {path.start} and {path.end}"
            )
        return None
    segs = path.segments
    if len(segs) < 2:
        return Violation("empty", None, "Path crosses no arc and coincides with none")
    for k, seg in enumerate(segs):
        if seg.tid not in T.by_tid:
            return Violation("triangle", k, f"Unknown triangle {seg.tid}")
        if seg.entry is not None and seg.entry == seg.exit:
            return Violation("backtrack", k, "Segment leaves through the side it entered")
    first, last = segs[0], segs[-1]
    if first.entry is not None or first.exit is None:
        return Violation("start", 0, "First segment must start at a corner")
    if T.corner_name((first.tid, first.exit + 2)) != path.start:
        return Violation("start", 0, f"First crossing is not opposite {path.start}")
    if last.exit is not None or last.entry is None:
        return Violation("end", len(segs) - 1, "Last segment must end at a corner")
    if T.corner_name((last.tid, last.entry + 2)) != path.end:
        return Violation("end", len(segs) - 1, f"Last crossing is not opposite {path.end}")
    for k in range(len(segs) - 1):
        seg, nxt = segs[k], segs[k + 1]
        if seg.exit is None or nxt.entry is None:
            return Violation("adjacent", k, "Interior segment without an exit or entry")
        slot = (seg.tid, seg.exit)
        if not T.edge(slot).is_arc:
            return Violation("boundary", k, f"Crossing {k} is a boundary segment")
        if T.partner(slot) != (nxt.tid, nxt.entry):
            return Violation("adjacent", k, f"Crossing {k} does not lead into the next segment")
    labels = path.crossings(T)
    for k in range(len(labels) - 1):
        if labels[k] == labels[k + 1]:
            return Violation("distinct", k, f"Arc {labels[k]} crossed twice in a row")
    for k in range(1, len(segs) - 1):
        a, b = segs[k], segs[k + 1]
        if a.tid == b.tid and {a.entry, a.exit} == {b.entry, b.exit}:
            return Violation("repeat", k, f"Triangle {a.tid} used twice in a row")
    return None


def check_geodesic(T: Triangulation, path: CrossingPath) -> CrossingPath:
    """Return ``path`` or raise InvalidGeodesicError."""
    violation = validate_geodesic(T, path)
    if violation is not None:
        raise InvalidGeodesicError(
            violation.message, condition=violation.condition, position=violation.position
        )
    return path


# Text format


def _parse_point(T: Triangulation, token: str) -> Tuple[str, Tag]:
    notched = token.endswith("~")
    name = token[:-1] if notched else token
    if name not in T.vertices:
        raise PathParseError(f"Unknown marked point '{name}'", vertices=list(T.vertices))
    return name, Tag.NOTCHED if notched else Tag.PLAIN


def _resolve_tid(T: Triangulation, tid: str) -> str:
    if tid in T.by_tid:
        return tid
    if f"t{tid}" in T.by_tid:
        return f"t{tid}"
    raise PathParseError(f"Unknown triangle '{tid}'")


def _walks(
    T: Triangulation,
    p: str,
    q: str,
    items: Sequence[Tuple[str, Optional[Slot]]],
) -> List[Tuple[Segment, ...]]:
    """All triangle walks from ``p`` to ``q`` crossing the listed arcs."""
    results: List[Tuple[Segment, ...]] = []

    def candidates(label: str, pin: Optional[Slot], tid: Optional[str], entry: Optional[int]) -> List[Slot]:
        if pin is not None:
            slots = [pin]
        else:
            slots = list(T.arc_slots.get(label, []))
        out = []
        for slot in slots:
            if T.edge(slot).label != label or not T.edge(slot).is_arc:
                continue
            if tid is not None and (slot[0] != tid or slot[1] == entry):
                continue
            out.append(slot)
        return out

    def extend(prefix: List[Segment], k: int) -> None:
        last = prefix[-1]
        nxt = T.partner((last.tid, last.exit))  # type: ignore[arg-type]
        if nxt is None:
            return
        tid, entry = nxt
        if k == len(items):
            if T.corner_name((tid, entry + 2)) == q:
                results.append(tuple(prefix + [Segment(tid, entry, None)]))
            return
        label, pin = items[k]
        for _, exit_slot in candidates(label, pin, tid, entry):
            extend(prefix + [Segment(tid, entry, exit_slot)], k + 1)

    label, pin = items[0]
    for tid, s in candidates(label, pin, None, None):
        if T.corner_name((tid, s + 2)) == p:
            extend([Segment(tid, None, s)], 1)
    return results


def parse_path(T: Triangulation, text: str) -> CrossingPath:
    """
    Parse ``path p=<pt>[~] q=<pt>[~] cross=<id,...>`` or ``... coincide=<id>``.

    A crossing item may be pinned to a slot as ``<id>@<tid>.<slot>`` when the
    label sequence alone admits several walks.

    Raises:
        PathParseError: malformed text or no matching walk
        PathAmbiguityError: several walks fit the crossing list
        InvalidGeodesicError: the resolved path violates a geodesic condition
    """
    tokens = text.split()
    if tokens and tokens[0] == "path":
        tokens = tokens[1:]
    fields: Dict[str, str] = {}
    for token in tokens:
        if "=" not in token:
            raise PathParseError(f"Expected key=value, got '{token}'")
        key, value = token.split("=", 1)
        if key in fields:
            raise PathParseError(f"Duplicate field '{key}'")
        fields[key] = value
    unknown = set(fields) - {"p", "q", "cross", "coincide"}
    if unknown:
        raise PathParseError(f"Unknown fields {sorted(unknown)}")
    if "p" not in fields or "q" not in fields:
        raise PathParseError("Both p= and q= are required")
    if ("cross" in fields) == ("coincide" in fields):
        raise PathParseError("Exactly one of cross= and coincide= is required")
    p, p_tag = _parse_point(T, fields["p"])
    q, q_tag = _parse_point(T, fields["q"])

    if "coincide" in fields:
        m = _CROSS_ITEM.match(fields["coincide"])
        if not m:
            raise PathParseError(f"Invalid arc reference '{fields['coincide']}'")
        label = m.group(1)
        if label not in T.arc_slots:
            raise PathParseError(f"Unknown arc '{label}'", arcs=list(T.arcs))
        if m.group(2) is not None:
            slots = [(_resolve_tid(T, m.group(2)), int(m.group(3)))]
        else:
            slots = T.arc_slots[label]
        matching = [s for s in slots if T.edge(s).label == label and T.slot_endpoints(s) == (p, q)]
        if not matching:
            raise PathParseError(f"Arc '{label}' does not join {p} and {q}")
        path = CrossingPath(p, q, (), p_tag, q_tag, coincident=matching[0])
        return check_geodesic(T, path)

    items: List[Tuple[str, Optional[Slot]]] = []
    for raw in fields["cross"].split(","):
        m = _CROSS_ITEM.match(raw.strip())
        if not m:
            raise PathParseError(f"Invalid crossing item '{raw}'")
        pin = None
        if m.group(2) is not None:
            pin = (_resolve_tid(T, m.group(2)), int(m.group(3)))
        if m.group(1) not in T.arc_slots:
            raise PathParseError(f"Unknown arc '{m.group(1)}'", arcs=list(T.arcs))
        items.append((m.group(1), pin))
    walks = _walks(T, p, q, items)
    paths = [CrossingPath(p, q, w, p_tag, q_tag) for w in walks]
    valid = [path for path in paths if validate_geodesic(T, path) is None]
    if not valid:
        if paths:
            return check_geodesic(T, paths[0])
        raise PathParseError(
            f"No walk from {p} to {q} crosses {[i[0] for i in items]}", crossings=len(items)
        )
    if len(valid) > 1:
        raise PathAmbiguityError(
            f"{len(valid)} walks match the crossing list; pin crossings as <id>@<tid>.<slot>",
            candidates=[format_path(T, path, pinned=True) for path in valid],
        )
    return valid[0]


def _format_point(v: str, tag: Tag) -> str:
    return f"{v}~" if tag is Tag.NOTCHED else v


def format_path(T: Triangulation, path: CrossingPath, pinned: Optional[bool] = None) -> str:
    """
    Render ``path`` in the text syntax accepted by :func:`parse_path`.

    Crossings are pinned to slots when ``pinned`` is true, or, by default,
    only when the bare label sequence would be ambiguous.
    """
    head = f"path p={_format_point(path.start, path.start_tag)} q={_format_point(path.end, path.end_tag)}"
    if path.coincident is not None:
        label = T.edge(path.coincident).label
        first = [s for s in T.arc_slots[label] if T.slot_endpoints(s) == (path.start, path.end)]
        if first and first[0] != path.coincident:
            tid, s = path.coincident
            return f"{head} coincide={label}@{tid}.{s}"
        return f"{head} coincide={label}"
    labels = path.crossings(T)
    if pinned is None:
        walks = _walks(T, path.start, path.end, [(label, None) for label in labels])
        pinned = len(walks) > 1
    if pinned:
        items = [f"{label}@{tid}.{s}" for label, (tid, s) in zip(labels, path.crossing_slots())]
    else:
        items = labels
    return f"{head} cross={','.join(items)}"


# Enumeration


def enumerate_paths(
    T: Triangulation,
    max_crossings: int,
    tagged: bool = False,
) -> Iterator[CrossingPath]:
    """
    Yield every combinatorial tagged geodesic with at most ``max_crossings`` crossings.

    Each geodesic is produced once, in the orientation with the smaller
    :func:`path_key`. Coincident paths (the arcs of ``T``) are included.
    With ``tagged`` every tagging at puncture ends is produced, otherwise
    only plain ones.
    """
    seen = set()

    def tag_variants(path: CrossingPath) -> Iterator[CrossingPath]:
        if not tagged:
            yield path
            return
        starts = [Tag.PLAIN, Tag.NOTCHED] if T.is_puncture(path.start) else [Tag.PLAIN]
        ends = [Tag.PLAIN, Tag.NOTCHED] if T.is_puncture(path.end) else [Tag.PLAIN]
        for a in starts:
            for b in ends:
                if path.start == path.end and a is not b:
                    continue
                yield path.with_tags(a, b)

    def emit(path: CrossingPath) -> Iterator[CrossingPath]:
        for variant in tag_variants(path):
            key = path_key(T, variant)
            if key in seen:
                continue
            seen.add(key)
            yield variant

    for label in T.arcs:
        slot = T.arc_slots[label][0]
        if label in T.self_folded:
            slot = (T.self_folded[label].tid, T.self_folded[label].interior_slot)
        start, end = T.slot_endpoints(slot)
        yield from emit(CrossingPath(start, end, (), coincident=slot))

    def grow(prefix: List[Segment], labels: List[str]) -> Iterator[CrossingPath]:
        last = prefix[-1]
        tid, entry = T.partner((last.tid, last.exit))  # type: ignore[misc,arg-type]
        finished = prefix + [Segment(tid, entry, None)]
        start = T.corner_name((prefix[0].tid, prefix[0].exit + 2))  # type: ignore[operator]
        path = CrossingPath(start, T.corner_name((tid, entry + 2)), tuple(finished))
        if validate_geodesic(T, path) is None:
            yield from emit(path)
        if len(labels) >= max_crossings:
            return
        for exit_slot in range(3):
            if exit_slot == entry:
                continue
            edge = T.edge((tid, exit_slot))
            if not edge.is_arc or edge.label == labels[-1]:
                continue
            seg = Segment(tid, entry, exit_slot)
            if last.tid == tid and {last.entry, last.exit} == {entry, exit_slot}:
                continue
            yield from grow(prefix + [seg], labels + [edge.label])

    if max_crossings < 1:
        return
    for t in T.triangles:
        for s in range(3):
            if not t.edges[s].is_arc:
                continue
            yield from grow([Segment(t.tid, None, s)], [t.edges[s].label])


# Curves and unrolling


def kappa(T: Triangulation, path: CrossingPath) -> Curve:
    """
    The curve whose shear coordinates give the g-vector.

    Boundary ends are moved along the boundary so that the surface stays on
    the left; plain ends spiral clockwise and notched ends counterclockwise.
    """

    def end(v: str, tag: Tag) -> CurveEnd:
        if not T.is_puncture(v):
            return CurveEnd(v, Rotation.CW, True)
        return CurveEnd(v, Rotation.CCW if tag is Tag.NOTCHED else Rotation.CW, False)

    return Curve(path, end(path.start, path.start_tag), end(path.end, path.end_tag))


def elementary_lamination(T: Triangulation, gamma) -> Curve:
    """
    The elementary lamination of a tagged arc: the mirror image of :func:`kappa`.

    Args:
        T: triangulation
        gamma: arc label of ``T`` or a CrossingPath
    """
    path = arc_path(T, gamma) if isinstance(gamma, str) else gamma

    def end(v: str, tag: Tag) -> CurveEnd:
        if not T.is_puncture(v):
            return CurveEnd(v, Rotation.CCW, True)
        return CurveEnd(v, Rotation.CW if tag is Tag.NOTCHED else Rotation.CCW, False)

    return Curve(path, end(path.start, path.start_tag), end(path.end, path.end_tag))


def _first_exit(corner: int, rotation: Rotation) -> int:
    return (corner - 1) % 3 if rotation is Rotation.CCW else corner % 3


def wind(
    T: Triangulation,
    tid: str,
    corner: int,
    rotation: Rotation,
    max_crossings: Optional[int],
) -> Tuple[int, List[Segment]]:
    """
    Wind around the marked point at ``(tid, corner)``.

    Returns the slot through which the curve leaves ``tid`` and the segments
    that follow. Winding stops on reaching a boundary segment or after
    ``max_crossings`` crossings; the last segment's exit is not crossed.
    """
    exit_slot = _first_exit(corner, rotation)
    segs: List[Segment] = []
    cur = tid
    crossed = 0
    while True:
        slot = (cur, exit_slot)
        if not T.edge(slot).is_arc:
            break
        if max_crossings is not None and crossed >= max_crossings:
            break
        nxt = T.partner(slot)
        t2, s2 = nxt  # type: ignore[misc]
        crossed += 1
        c2 = s2 if rotation is Rotation.CCW else (s2 + 1) % 3
        exit_slot = _first_exit(c2, rotation)
        segs.append(Segment(t2, s2, exit_slot))
        cur = t2
        if max_crossings is None and crossed > 3 * len(T.triangles):
            raise ClusterIdealsError("Boundary fan does not terminate", {"corner": (tid, corner)})
    return _first_exit(corner, rotation), segs


def coincident_side(
    T: Triangulation, path: CrossingPath, start_rot: Rotation, end_rot: Rotation
) -> Tuple[str, int, int, int, int]:
    """
    Choose a triangle next to the coincident arc in which a deformed curve runs.

    Returns ``(tid, start_corner, end_corner, start_exit, end_exit)`` for the first side
    on which the two winding directions leave through different slots.
    """
    slot = path.coincident
    other = T.partner(slot)  # type: ignore[arg-type]
    sides = [(slot, True), (other, False)]
    for (tid, s), forward in sides:  # type: ignore[misc]
        cp = s if forward else (s + 1) % 3
        cq = (s + 1) % 3 if forward else s
        a = _first_exit(cp, start_rot)
        b = _first_exit(cq, end_rot)
        if a != b:
            return tid, cp, cq, a, b
    raise ClusterIdealsError("No side of the coincident arc separates the two windings", {"slot": slot})


def unroll(T: Triangulation, curve: Curve, turns: Optional[int] = None) -> Unrolled:
    """
    Explicit walk of ``curve``: body plus boundary fans and truncated spirals.

    Spirals are followed for ``turns`` full turns plus one extra turn whose
    crossings are reported in ``Unrolled.outer``.
    """
    turns = get_spiral_turns() if turns is None else turns
    path = curve.path

    def limit(v_corner: Tuple[str, int], end: CurveEnd) -> Optional[int]:
        if end.at_boundary:
            return None
        return (turns + 1) * len(T.ring(v_corner))

    if path.coincident is not None:
        tid, cp, cq, a, b = coincident_side(T, path, curve.start.rotation, curve.end.rotation)
        start_corner = (tid, cp)
        end_corner = (tid, cq)
        _, start_segs = wind(T, tid, start_corner[1], curve.start.rotation, limit(start_corner, curve.start))
        _, end_segs = wind(T, tid, end_corner[1], curve.end.rotation, limit(end_corner, curve.end))
        body = [Segment(tid, a, b)]
    else:
        first, last = path.segments[0], path.segments[-1]
        start_corner = (first.tid, (first.exit + 2) % 3)  # type: ignore[operator]
        end_corner = (last.tid, (last.entry + 2) % 3)  # type: ignore[operator]
        a, start_segs = wind(T, first.tid, start_corner[1], curve.start.rotation, limit(start_corner, curve.start))
        b, end_segs = wind(T, last.tid, end_corner[1], curve.end.rotation, limit(end_corner, curve.end))
        body = list(path.segments)
        body[0] = Segment(first.tid, a, first.exit)
        body[-1] = Segment(last.tid, last.entry, b)

    head = [s.reversed() for s in reversed(start_segs)]
    segments = tuple(head + body + end_segs)
    n_cross = len(segments) - 1
    outer = set()
    if curve.start.spirals:
        per_turn = len(T.ring(start_corner))
        # crossings are numbered from the head; the outermost turn comes first
        for i in range(per_turn):
            if i < len(head):
                outer.add(i)
    if curve.end.spirals:
        per_turn = len(T.ring(end_corner))
        for i in range(per_turn):
            k = n_cross - 1 - i
            if k >= 0 and k >= len(head):
                outer.add(k)
    return Unrolled(segments, frozenset(outer))


# Tag reduction


def reduce_tagging(
    T: Triangulation, path: CrossingPath
) -> Tuple[Triangulation, CrossingPath, Dict[str, str]]:
    """
    Switch taggings so that ``T`` is plain and ``path`` is plain at self-folded punctures.

    Every puncture of ``S`` is switched, then every puncture enclosed by a
    self-folded triangle at which ``path`` is notched. Labels keep
    denoting the switched counterparts of their arcs, so the returned
    variable relabeling is the identity.
    """
    switched: List[str] = []
    for p in natural_sorted(T.switched):
        T, _ = tag_switch(T, p)
        path = path.toggled_at(p)
        switched.append(p)
    for v, tag in ((path.start, path.start_tag), (path.end, path.end_tag)):
        if tag is Tag.NOTCHED and T.fold_at(v) is not None:
            T, _ = tag_switch(T, v)
            path = path.toggled_at(v)
            switched.append(v)
    if switched:
        logger.debug("Reduced tagging by switching at %s", switched)
    return T, path, {label: label for label in T.arcs}


# Flips


def flip_slots(T: Triangulation, label: str) -> Tuple[Slot, Slot]:
    """The two slots of the geometric edge replaced when ``label`` is flipped."""
    fold = T.self_folded.get(label)
    if fold is not None:
        a, b = T.arc_slots[fold.loop]
    else:
        a, b = T.arc_slots[label]
    return a, b


_T1_SIDES = {0: "e", 1: "a", 2: "b"}
_T2_SIDES = {0: "e", 1: "c", 2: "d"}
_T1_CORNERS = {0: "P", 1: "Q", 2: "R"}
_T2_CORNERS = {0: "Q", 1: "P", 2: "U"}


def rewrite_under_flip(T: Triangulation, label: str, path: CrossingPath) -> CrossingPath:
    """
    Re-express ``path`` relative to ``flip_triangulation(T, label)``.

    The flipped edge and its two triangles form a quadrilateral with sides
    ``a, b`` (first triangle) and ``c, d`` (second triangle). Every maximal
    passage of the path through the quadrilateral is determined by the
    ports where it enters and leaves, and is replaced by the unique minimal
    route between the same ports in the two new triangles.
    """
    (t1, s1), (t2, s2) = flip_slots(T, label)
    if t1 == t2:
        raise ClusterIdealsError(f"Edge of {label} bounds a single triangle", {"arc": label})

    new_side = {"b": (t1, 0), "c": (t1, 1), "d": (t2, 0), "a": (t2, 1)}
    new_corner_of = {(t1, 0): "R", (t1, 1): "P", (t1, 2): "U", (t2, 0): "U", (t2, 1): "Q", (t2, 2): "R"}

    def side_port(tid: str, slot: int) -> str:
        if tid == t1:
            return _T1_SIDES[(slot - s1) % 3]
        return _T2_SIDES[(slot - s2) % 3]

    def corner_port(tid: str, corner: int) -> str:
        if tid == t1:
            return _T1_CORNERS[(corner - s1) % 3]
        return _T2_CORNERS[(corner - s2) % 3]

    def route_from_corner(x: str, y: str) -> List[Segment]:
        tb, sb = new_side[y]
        if new_corner_of[(tb, (sb + 2) % 3)] == x:
            return [Segment(tb, None, sb)]
        if x not in ("P", "Q"):
            raise ClusterIdealsError("No route in flipped quadrilateral", {"from": x, "to": y})
        tx = t1 if x == "P" else t2
        if tx == tb:
            raise ClusterIdealsError("No route in flipped quadrilateral", {"from": x, "to": y})
        return [Segment(tx, None, 2), Segment(tb, 2, sb)]

    def route(src: Tuple[str, str], dst: Tuple[str, str]) -> List[Segment]:
        (sk, sx), (dk, dx) = src, dst
        if sk == "side" and dk == "side":
            ta, sa = new_side[sx]
            tb, sb = new_side[dx]
            if ta == tb:
                return [Segment(ta, sa, sb)]
            return [Segment(ta, sa, 2), Segment(tb, 2, sb)]
        if sk == "corner" and dk == "side":
            return route_from_corner(sx, dx)
        if sk == "side" and dk == "corner":
            return [s.reversed() for s in reversed(route_from_corner(dx, sx))]
        raise ClusterIdealsError("Corner-to-corner passage", {"from": sx, "to": dx})

    if path.coincident is not None:
        tid, s = path.coincident
        if tid not in (t1, t2):
            return path
        port = side_port(tid, s)
        if port == "e":
            if tid == t1:  # runs P -> Q
                segs = (Segment(t1, None, 2), Segment(t2, 2, None))
            else:
                segs = (Segment(t2, None, 2), Segment(t1, 2, None))
            return replace(path, segments=segs, coincident=None)
        return replace(path, coincident=new_side[port])

    def is_e(seg: Segment) -> bool:
        return seg.exit is not None and seg.tid in (t1, t2) and side_port(seg.tid, seg.exit) == "e"

    segs = list(path.segments)
    out: List[Segment] = []
    i = 0
    while i < len(segs):
        seg = segs[i]
        if seg.tid not in (t1, t2):
            out.append(seg)
            i += 1
            continue
        j = i
        while is_e(segs[j]) and j + 1 < len(segs):
            j += 1
        first, last = segs[i], segs[j]
        if first.entry is None:
            src = ("corner", corner_port(first.tid, (first.exit + 2) % 3))  # type: ignore[operator]
        else:
            src = ("side", side_port(first.tid, first.entry))
        if last.exit is None:
            dst = ("corner", corner_port(last.tid, (last.entry + 2) % 3))  # type: ignore[operator]
        else:
            dst = ("side", side_port(last.tid, last.exit))
        if src[0] == "corner" and dst[0] == "corner":
            if i != 0 or j != len(segs) - 1 or {src[1], dst[1]} != {"R", "U"}:
                raise ClusterIdealsError("Unexpected passage between corners", {"from": src, "to": dst})
            # the whole path is the crossing of the flipped edge: it becomes the new edge
            coincident = (t2, 2) if src[1] == "R" else (t1, 2)
            return replace(path, segments=(), coincident=coincident)
        out.extend(route(src, dst))
        i = j + 1
    return replace(path, segments=tuple(out))


def flip_path(T: Triangulation, label: str, path: CrossingPath) -> Tuple[Triangulation, CrossingPath]:
    """Flip ``label`` and rewrite ``path`` alongside."""
    return flip_triangulation(T, label), rewrite_under_flip(T, label, path)


def find_arc(T: Triangulation, path: CrossingPath) -> Optional[str]:
    """The label whose tagged arc equals the coincident ``path``, if any."""
    if path.coincident is None:
        return None
    want = {
        (path.start, path.start_tag, path.end, path.end_tag),
        (path.end, path.end_tag, path.start, path.start_tag),
    }
    for label in T.arcs_on_edge(path.coincident):
        arc = T.tagged_arc(label)
        if (arc.start, arc.start_tag, arc.end, arc.end_tag) in want:
            return label
    return None


# Alignment of isomorphic triangulations


def align(source: Triangulation, target: Triangulation) -> Dict[str, Tuple[str, int]]:
    """
    Match triangles of two equal tagged triangulations with different ids or rotations.

    Returns:
        ``tid -> (target tid, offset)``; slot ``i`` of a source triangle is slot
        ``i + offset`` of its target triangle.
    """

    def keyed(T: Triangulation) -> Dict[Tuple, Tuple[str, int]]:
        out: Dict[Tuple, Tuple[str, int]] = {}
        for t in T.triangles:
            cyc = [(e.kind.value, e.label, c) for e, c in zip(t.edges, t.corners)]
            key, shift = min_rotation(cyc)
            if key in out:
                raise ClusterIdealsError("Triangles are not distinguishable by labels", {"triangle": t.tid})
            out[key] = (t.tid, shift)
        return out

    if source.switched != target.switched:
        raise ClusterIdealsError("Tagging sets differ", {"source": sorted(source.switched), "target": sorted(target.switched)})
    a, b = keyed(source), keyed(target)
    if set(a) != set(b):
        raise ClusterIdealsError("Triangulations are not equal up to triangle ids")
    return {a[k][0]: (b[k][0], (b[k][1] - a[k][1]) % 3) for k in a}


def transport(path: CrossingPath, mapping: Dict[str, Tuple[str, int]]) -> CrossingPath:
    """Move ``path`` along a triangle matching produced by :func:`align`."""

    def move(tid: str, slot: Optional[int]) -> Optional[int]:
        if slot is None:
            return None
        return (slot + mapping[tid][1]) % 3

    segs = tuple(Segment(mapping[s.tid][0], move(s.tid, s.entry), move(s.tid, s.exit)) for s in path.segments)
    coincident = None
    if path.coincident is not None:
        tid, s = path.coincident
        coincident = (mapping[tid][0], move(tid, s))
    return replace(path, segments=segs, coincident=coincident)  # type: ignore[arg-type]


def oriented_turn(seg: Segment, mirrored: bool = False) -> Optional[Turn]:
    """Turn of ``seg``, swapped when left/right decisions are mirrored."""
    turn = seg.turn
    if turn is None or not mirrored:
        return turn
    return Turn.LEFT if turn is Turn.RIGHT else Turn.RIGHT
