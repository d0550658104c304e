"""
Marked surfaces, ordinary and tagged triangulations, and exchange matrices.

A triangulation is stored as a tuple of oriented triangles. Each triangle
lists its three sides counterclockwise; slot ``i`` runs from corner ``i`` to
corner ``i + 1``, so the corner opposite slot ``i`` is ``i + 2``. Two slots
carrying the same arc label are glued with opposite directions. Vertices
are never input: corners are grouped into marked points by the gluing.

The tagged triangulation is the ordinary one together with the set ``S`` of
punctures at which every arc end is notched. Self-folded triangles encode
plain/notched pairs: the interior edge denotes the arc plain at the
enclosed puncture, the loop denotes the same arc notched there. The
representation is kept canonical: a puncture enclosed by a self-folded
triangle is never in ``S``.
"""

import logging
import os
import re
from importlib import resources
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, List, Optional, Tuple

import networkx as nx
import numpy as np
from networkx.utils import UnionFind

from .common.exceptions import (
    ClusterIdealsError,
    ExcludedSurfaceError,
    SurfaceParseError,
    handle_parse_error,
)
from .common.types import EdgeKind, EdgeRef, Tag
from .common.utils import min_rotation, natural_key, natural_sorted

logger = logging.getLogger(__name__)

Slot = Tuple[str, int]
Corner = Tuple[str, int]

_TOKEN = re.compile(r"^([ab])([A-Za-z0-9_]+)$")
_CORNER_REF = re.compile(r"^t?([A-Za-z0-9_]+)\.([012])$")
_SAMPLE_NAME = re.compile(r"^[a-z0-9_]+$")


@dataclass(frozen=True)
class Triangle:
    """An oriented triangle: three sides counterclockwise and the corner names."""

    tid: str
    edges: Tuple[EdgeRef, EdgeRef, EdgeRef]
    corners: Tuple[str, str, str]

    def rotated(self, shift: int) -> "Triangle":
        """Return the same triangle with slot ``i`` renumbered from slot ``i + shift``."""
        shift %= 3
        edges = tuple(self.edges[(i + shift) % 3] for i in range(3))
        corners = tuple(self.corners[(i + shift) % 3] for i in range(3))
        return Triangle(self.tid, edges, corners)  # type: ignore[arg-type]

    def relabeled(self, mapping: Dict[str, str]) -> "Triangle":
        edges = tuple(
            EdgeRef(e.kind, mapping.get(e.label, e.label)) if e.is_arc else e
            for e in self.edges
        )
        return Triangle(self.tid, edges, self.corners)  # type: ignore[arg-type]


@dataclass(frozen=True)
class SelfFold:
    """A self-folded triangle: interior edge, loop, enclosed puncture and base point."""

    tid: str
    interior: str
    loop: str
    puncture: str
    base: str
    interior_slot: int  # first of the two consecutive interior slots


@dataclass(frozen=True)
class TaggedArc:
    """The tagged arc a label denotes: a geometric edge plus endpoint taggings."""

    label: str
    slot: Slot
    start: str
    end: str
    start_tag: Tag
    end_tag: Tag


class ExchangeMatrix:
    """Skew-symmetric signed adjacency matrix indexed by arc labels."""

    def __init__(self, labels: Iterable[str], matrix: np.ndarray):
        self.labels: Tuple[str, ...] = tuple(labels)
        self.matrix = np.asarray(matrix, dtype=np.int64)
        self._index = {label: i for i, label in enumerate(self.labels)}

    def index(self, label: str) -> int:
        return self._index[label]

    def entry(self, beta: str, gamma: str) -> int:
        return int(self.matrix[self._index[beta], self._index[gamma]])

    def column(self, gamma: str) -> Dict[str, int]:
        j = self._index[gamma]
        return {label: int(self.matrix[i, j]) for i, label in enumerate(self.labels)}

    def relabeled(self, mapping: Dict[str, str]) -> "ExchangeMatrix":
        """Rename rows and columns; the result is re-sorted into natural label order."""
        renamed = [mapping.get(label, label) for label in self.labels]
        order = sorted(range(len(renamed)), key=lambda i: natural_key(renamed[i]))
        return ExchangeMatrix([renamed[i] for i in order], self.matrix[np.ix_(order, order)])

    def is_skew_symmetric(self) -> bool:
        return bool(np.array_equal(self.matrix, -self.matrix.T))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ExchangeMatrix):
            return NotImplemented
        return self.labels == other.labels and bool(np.array_equal(self.matrix, other.matrix))

    def __repr__(self) -> str:
        return f"ExchangeMatrix(labels={list(self.labels)}, matrix={self.matrix.tolist()})"


@dataclass(frozen=True)
class Triangulation:
    """
    A triangulated marked surface with its tagging set.

    Instances are immutable; derived incidence data is computed lazily.
    """

    name: str
    triangles: Tuple[Triangle, ...]
    switched: FrozenSet[str] = field(default_factory=frozenset)
    genus: int = 0

    # Incidence

    @cached_property
    def by_tid(self) -> Dict[str, Triangle]:
        return {t.tid: t for t in self.triangles}

    @cached_property
    def arc_slots(self) -> Dict[str, List[Slot]]:
        slots: Dict[str, List[Slot]] = {}
        for t in self.triangles:
            for i, e in enumerate(t.edges):
                if e.is_arc:
                    slots.setdefault(e.label, []).append((t.tid, i))
        return slots

    @cached_property
    def boundary_slots(self) -> Dict[str, Slot]:
        return {
            e.label: (t.tid, i)
            for t in self.triangles
            for i, e in enumerate(t.edges)
            if not e.is_arc
        }

    @cached_property
    def arcs(self) -> Tuple[str, ...]:
        return tuple(natural_sorted(self.arc_slots))

    @property
    def rank(self) -> int:
        return len(self.arc_slots)

    def edge(self, slot: Slot) -> EdgeRef:
        tid, i = slot
        return self.by_tid[tid].edges[i]

    def corner_name(self, corner: Corner) -> str:
        tid, c = corner
        return self.by_tid[tid].corners[c % 3]

    def slot_endpoints(self, slot: Slot) -> Tuple[str, str]:
        """Start and end vertex of a slot in its triangle's orientation."""
        tid, i = slot
        t = self.by_tid[tid]
        return t.corners[i], t.corners[(i + 1) % 3]

    def partner(self, slot: Slot) -> Optional[Slot]:
        """The other slot of the arc at ``slot``; ``None`` for boundary segments."""
        e = self.edge(slot)
        if not e.is_arc:
            return None
        a, b = self.arc_slots[e.label]
        return b if a == slot else a

    @cached_property
    def vertices(self) -> Tuple[str, ...]:
        names = {c for t in self.triangles for c in t.corners}
        return tuple(natural_sorted(names))

    @cached_property
    def boundary_points(self) -> FrozenSet[str]:
        pts = set()
        for slot in self.boundary_slots.values():
            pts.update(self.slot_endpoints(slot))
        return frozenset(pts)

    @cached_property
    def punctures(self) -> Tuple[str, ...]:
        return tuple(v for v in self.vertices if v not in self.boundary_points)

    def is_puncture(self, v: str) -> bool:
        return v not in self.boundary_points

    @cached_property
    def self_folded(self) -> Dict[str, SelfFold]:
        """Self-folded triangles keyed by the label of their interior edge."""
        folds: Dict[str, SelfFold] = {}
        for label, slots in self.arc_slots.items():
            (t1, s1), (t2, s2) = slots
            if t1 != t2:
                continue
            j = s1 if (s1 + 1) % 3 == s2 else s2
            t = self.by_tid[t1]
            loop = t.edges[(j + 2) % 3]
            folds[label] = SelfFold(
                tid=t1,
                interior=label,
                loop=loop.label,
                puncture=t.corners[(j + 1) % 3],
                base=t.corners[j],
                interior_slot=j,
            )
        return folds

    @cached_property
    def loops(self) -> Dict[str, SelfFold]:
        """Self-folded triangles keyed by the label of their loop."""
        return {f.loop: f for f in self.self_folded.values()}

    @cached_property
    def self_folded_tids(self) -> FrozenSet[str]:
        return frozenset(f.tid for f in self.self_folded.values())

    def fold_at(self, puncture: str) -> Optional[SelfFold]:
        """The self-folded triangle enclosing ``puncture``, if any."""
        for f in self.self_folded.values():
            if f.puncture == puncture:
                return f
        return None

    def arc_endpoints(self, label: str) -> Tuple[str, str]:
        return self.slot_endpoints(self.arc_slots[label][0])

    def degree(self, v: str) -> int:
        """Number of arc ends at ``v`` in the ordinary triangulation."""
        count = 0
        for label in self.arc_slots:
            a, b = self.arc_endpoints(label)
            count += (a == v) + (b == v)
        return count

    # Rotation around marked points

    def ccw_next(self, corner: Corner) -> Optional[Corner]:
        """Next corner counterclockwise around the same marked point, or ``None`` at a boundary."""
        tid, j = corner
        other = self.partner((tid, (j - 1) % 3))
        if other is None:
            return None
        return other[0], other[1]

    def cw_next(self, corner: Corner) -> Optional[Corner]:
        """Next corner clockwise around the same marked point, or ``None`` at a boundary."""
        tid, j = corner
        other = self.partner((tid, j % 3))
        if other is None:
            return None
        return other[0], (other[1] + 1) % 3

    def ring(self, corner: Corner) -> List[Corner]:
        """
        All corners around the marked point of ``corner``, counterclockwise.

        For a boundary point the list starts at the corner whose outgoing side
        is a boundary segment; for a puncture it starts at ``corner``.
        """
        limit = 3 * len(self.triangles) + 1
        start = corner
        for _ in range(limit):
            prev = self.cw_next(start)
            if prev is None:
                break
            if prev == corner:
                start = corner
                break
            start = prev
        else:
            raise ClusterIdealsError("Corner rotation does not close", {"corner": corner})
        ring = [start]
        for _ in range(limit):
            nxt = self.ccw_next(ring[-1])
            if nxt is None or nxt == start:
                return ring
            ring.append(nxt)
        raise ClusterIdealsError("Corner rotation does not close", {"corner": corner})

    # Tagging

    def tagged_arc(self, label: str) -> TaggedArc:
        """Describe the tagged arc denoted by ``label``."""
        fold = self.self_folded.get(label) or self.loops.get(label)
        if fold is not None:
            slot = (fold.tid, fold.interior_slot)
            start, end = self.slot_endpoints(slot)
            notch_p = label == fold.loop
            tags = []
            for v in (start, end):
                if v == fold.puncture:
                    tags.append(Tag.NOTCHED if notch_p else Tag.PLAIN)
                else:
                    tags.append(Tag.NOTCHED if v in self.switched else Tag.PLAIN)
            return TaggedArc(label, slot, start, end, tags[0], tags[1])
        slot = self.arc_slots[label][0]
        start, end = self.slot_endpoints(slot)
        return TaggedArc(
            label,
            slot,
            start,
            end,
            Tag.NOTCHED if start in self.switched else Tag.PLAIN,
            Tag.NOTCHED if end in self.switched else Tag.PLAIN,
        )

    def arcs_on_edge(self, slot: Slot) -> List[str]:
        """Labels whose tagged arcs run along the geometric edge at ``slot``."""
        e = self.edge(slot)
        if not e.is_arc:
            return []
        if e.label in self.self_folded:
            return [e.label, self.self_folded[e.label].loop]
        return [e.label]

    # Canonical forms

    def canonical_form(self) -> Tuple:
        """Labeled, triangle-id free key; equal for equal tagged triangulations."""
        keys = []
        for t in self.triangles:
            cyc = [(e.kind.value, e.label, c) for e, c in zip(t.edges, t.corners)]
            keys.append(min_rotation(cyc)[0])
        return tuple(sorted(keys)), tuple(sorted(self.switched))

    def unlabeled_form(self) -> Tuple:
        """Key invariant under renaming of arcs, boundary segments, vertices and triangles."""
        best: Optional[Tuple] = None
        for t in self.triangles:
            for shift in range(3):
                key = self._walk_key(t.tid, shift)
                if best is None or key < best:
                    best = key
        return best or ()

    def _walk_key(self, tid: str, shift: int) -> Tuple:
        edge_ids: Dict[Tuple[str, str], int] = {}
        vertex_ids: Dict[str, int] = {}
        seen = {tid}
        queue = [(tid, shift)]
        out = []
        while queue:
            tid, shift = queue.pop(0)
            t = self.by_tid[tid].rotated(shift)
            row = []
            for e, v in zip(t.edges, t.corners):
                ek = edge_ids.setdefault((e.kind.value, e.label), len(edge_ids))
                vk = vertex_ids.setdefault(v, len(vertex_ids))
                row.append((e.kind.value, ek, vk))
            out.append(tuple(row))
            for i in range(3):
                other = self.partner((tid, (i + shift) % 3))
                if other is not None and other[0] not in seen:
                    seen.add(other[0])
                    queue.append(other)
        switched = tuple(sorted(vertex_ids[p] for p in self.switched))
        return tuple(out), switched

    def with_triangles(
        self, triangles: Iterable[Triangle], switched: Optional[FrozenSet[str]] = None
    ) -> "Triangulation":
        return Triangulation(
            self.name,
            tuple(triangles),
            self.switched if switched is None else frozenset(switched),
            self.genus,
        )

    @classmethod
    def from_triangles(
        cls,
        name: str,
        triangles: Iterable[Tuple[str, Tuple[str, str, str]]],
        names: Optional[Dict[Corner, str]] = None,
        genus: Optional[int] = None,
        check_excluded: bool = True,
    ) -> "Triangulation":
        """
        Build and validate a triangulation from slot tokens.

        Args:
            name: surface name
            triangles: ``(tid, (tok0, tok1, tok2))`` with tokens ``a<label>`` or ``b<label>``
            names: optional vertex names keyed by a representative corner
            genus: declared genus to check against the Euler characteristic
            check_excluded: reject surfaces from the excluded small cases

        Returns:
            Validated Triangulation
        """
        return _build(name, list(triangles), names or {}, genus, check_excluded)


# Construction and validation


def _parse_token(token: str, line: Optional[int] = None) -> EdgeRef:
    m = _TOKEN.match(token)
    if not m:
        raise SurfaceParseError(f"Invalid slot token '{token}'", line=line)
    kind = EdgeKind.ARC if m.group(1) == "a" else EdgeKind.BOUNDARY
    return EdgeRef(kind, m.group(2))


def _build(
    name: str,
    raw: List[Tuple[str, Tuple[str, str, str]]],
    names: Dict[Corner, str],
    genus: Optional[int],
    check_excluded: bool,
) -> Triangulation:
    if not raw:
        raise SurfaceParseError("Surface has no triangles")
    seen_tids = set()
    edges_by_tid: Dict[str, Tuple[EdgeRef, EdgeRef, EdgeRef]] = {}
    arc_slots: Dict[str, List[Slot]] = {}
    boundary_slots: Dict[str, List[Slot]] = {}
    for tid, tokens in raw:
        if tid in seen_tids:
            raise SurfaceParseError(f"Duplicate triangle id '{tid}'")
        seen_tids.add(tid)
        if len(tokens) != 3:
            raise SurfaceParseError(f"Triangle '{tid}' needs exactly three slots")
        refs = tuple(_parse_token(tok) for tok in tokens)
        edges_by_tid[tid] = refs  # type: ignore[assignment]
        for i, ref in enumerate(refs):
            target = arc_slots if ref.is_arc else boundary_slots
            target.setdefault(ref.label, []).append((tid, i))

    for label, slots in arc_slots.items():
        if len(slots) != 2:
            raise SurfaceParseError(
                f"Arc '{label}' occupies {len(slots)} slots, expected 2", arc=label
            )
    for label, slots in boundary_slots.items():
        if len(slots) != 1:
            raise SurfaceParseError(
                f"Boundary segment '{label}' occupies {len(slots)} slots, expected 1",
                boundary=label,
            )
    uf = UnionFind()
    for tid in edges_by_tid:
        for c in range(3):
            uf[(tid, c)]
    for label, ((t1, s1), (t2, s2)) in arc_slots.items():
        uf.union((t1, s1), (t2, (s2 + 1) % 3))
        uf.union((t1, (s1 + 1) % 3), (t2, s2))

    class_names: Dict[Corner, str] = {}
    for corner, vname in names.items():
        if corner[0] not in edges_by_tid:
            raise SurfaceParseError(f"Unknown triangle in corner reference {corner}")
        root = uf[corner]
        if root in class_names and class_names[root] != vname:
            raise SurfaceParseError(
                f"Vertex named both '{class_names[root]}' and '{vname}'"
            )
        class_names[root] = vname
    if len(set(class_names.values())) != len(class_names):
        raise SurfaceParseError("Two different marked points share a name")
    counter = 0
    used = set(class_names.values())
    for tid, _ in raw:
        for c in range(3):
            root = uf[(tid, c)]
            if root not in class_names:
                while f"v{counter}" in used:
                    counter += 1
                class_names[root] = f"v{counter}"
                used.add(f"v{counter}")

    triangles = tuple(
        Triangle(
            tid,
            edges_by_tid[tid],
            tuple(class_names[uf[(tid, c)]] for c in range(3)),  # type: ignore[arg-type]
        )
        for tid, _ in raw
    )
    T = Triangulation(name, triangles, frozenset(), 0)

    graph = nx.Graph()
    graph.add_nodes_from(edges_by_tid)
    for (t1, _), (t2, _) in arc_slots.values():
        graph.add_edge(t1, t2)
    if not nx.is_connected(graph):
        raise SurfaceParseError("Surface is disconnected", components=nx.number_connected_components(graph))

    n_boundary = _count_boundary_components(T)
    chi = len(T.vertices) - (len(arc_slots) + len(boundary_slots)) + len(triangles)
    twice_genus = 2 - n_boundary - chi
    if twice_genus < 0 or twice_genus % 2:
        raise SurfaceParseError(
            "Euler characteristic is inconsistent with an oriented surface",
            euler_characteristic=chi,
            boundary_components=n_boundary,
        )
    computed_genus = twice_genus // 2
    if genus is not None and genus != computed_genus:
        raise SurfaceParseError(
            f"Declared genus {genus} but the gluing gives genus {computed_genus}"
        )
    T = Triangulation(name, triangles, frozenset(), computed_genus)

    if check_excluded:
        _check_excluded(T, n_boundary)
    logger.debug(
        "Built surface %s: genus %d, %d boundary components, %d punctures, rank %d",
        name,
        computed_genus,
        n_boundary,
        len(T.punctures),
        T.rank,
    )
    return T


def _count_boundary_components(T: Triangulation) -> int:
    outgoing: Dict[str, str] = {}
    for label, slot in T.boundary_slots.items():
        start, _ = T.slot_endpoints(slot)
        if start in outgoing:
            raise SurfaceParseError(
                f"Marked point {start} has two outgoing boundary segments"
            )
        outgoing[start] = label
    remaining = set(T.boundary_slots)
    components = 0
    while remaining:
        label = remaining.pop()
        components += 1
        while True:
            _, end = T.slot_endpoints(T.boundary_slots[label])
            nxt = outgoing.get(end)
            if nxt is None:
                raise SurfaceParseError(f"Boundary segment {label} does not close up")
            if nxt not in remaining:
                break
            remaining.discard(nxt)
            label = nxt
    return components


def _check_excluded(T: Triangulation, n_boundary: int) -> None:
    punctures = len(T.punctures)
    marked_boundary = len(T.boundary_points)
    signature = (T.genus, n_boundary, punctures, marked_boundary)
    excluded = False
    if T.rank == 0:
        excluded = True
    elif T.genus == 0 and n_boundary == 0 and punctures <= 3:
        excluded = True
    elif T.genus == 0 and n_boundary == 1 and punctures == 0 and marked_boundary <= 3:
        excluded = True
    elif T.genus == 0 and n_boundary == 1 and punctures == 1 and marked_boundary == 1:
        excluded = True
    if excluded:
        raise ExcludedSurfaceError(
            "Surface is one of the excluded small cases",
            signature=signature,
            genus=T.genus,
            boundary_components=n_boundary,
            punctures=punctures,
            boundary_points=marked_boundary,
        )


@handle_parse_error
def parse_surface(text: str) -> Triangulation:
    """
    Parse the line-oriented surface format.

    Recognized lines (``#`` starts a comment)::

        surface <name>
        tri <tid> <slot0> <slot1> <slot2>
        selffold <interior-label> <loop-label>
        point <vertex-name> <tid>.<corner>
        genus <g>

    Args:
        text: surface description

    Returns:
        Validated Triangulation
    """
    name = None
    raw: List[Tuple[str, Tuple[str, str, str]]] = []
    names: Dict[Corner, str] = {}
    folds: List[Tuple[str, str, int]] = []
    genus: Optional[int] = None
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        keyword = parts[0]
        if keyword == "surface":
            if len(parts) != 2:
                raise SurfaceParseError("Expected 'surface <name>'", line=lineno)
            name = parts[1]
        elif keyword == "tri":
            if len(parts) != 5:
                raise SurfaceParseError("Expected 'tri <tid> <slot0> <slot1> <slot2>'", line=lineno)
            for tok in parts[2:]:
                _parse_token(tok, lineno)
            raw.append((parts[1], (parts[2], parts[3], parts[4])))
        elif keyword == "selffold":
            if len(parts) != 3:
                raise SurfaceParseError("Expected 'selffold <interior> <loop>'", line=lineno)
            folds.append((parts[1], parts[2], lineno))
        elif keyword == "point":
            if len(parts) != 3:
                raise SurfaceParseError("Expected 'point <name> <tid>.<corner>'", line=lineno)
            m = _CORNER_REF.match(parts[2])
            if not m:
                raise SurfaceParseError(f"Invalid corner reference '{parts[2]}'", line=lineno)
            names[(m.group(1), int(m.group(2)))] = parts[1]
        elif keyword == "genus":
            if len(parts) != 2 or not parts[1].isdigit():
                raise SurfaceParseError("Expected 'genus <g>'", line=lineno)
            genus = int(parts[1])
        else:
            raise SurfaceParseError(f"Unknown keyword '{keyword}'", line=lineno)
    if name is None:
        raise SurfaceParseError("Missing 'surface <name>' header")
    # point lines may precede the triangle they reference
    resolved: Dict[Corner, str] = {}
    tids = {r[0] for r in raw}
    for (tid, c), vname in names.items():
        if tid not in tids and f"t{tid}" in tids:
            tid = f"t{tid}"
        resolved[(tid, c)] = vname
    T = Triangulation.from_triangles(name, raw, resolved, genus)
    for interior, loop, lineno in folds:
        fold = T.self_folded.get(interior)
        if fold is None or fold.loop != loop:
            raise SurfaceParseError(
                f"Declared self-folded pair ({interior}, {loop}) does not match the gluing",
                line=lineno,
            )
    logger.info("Parsed surface %s with %d triangles", name, len(T.triangles))
    return T


def load_surface(path: str) -> Triangulation:
    """Read and parse a surface file."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as e:
        raise SurfaceParseError(f"Cannot read surface file {path}: {e}") from e
    return parse_surface(text)


def sample_names() -> List[str]:
    """Names of the surfaces bundled under ``cluster_ideals/data``."""
    root = resources.files("cluster_ideals") / "data"
    return natural_sorted(p.name[: -len(".surf")] for p in root.iterdir() if p.name.endswith(".surf"))


def load_sample(name: str) -> Triangulation:
    """Parse a bundled sample surface by name (e.g. ``"pentagon"``)."""
    resource = resources.files("cluster_ideals") / "data" / f"{name}.surf"
    if not resource.is_file():
        raise SurfaceParseError(f"Unknown sample surface '{name}'", available=sample_names())
    return parse_surface(resource.read_text(encoding="utf-8"))


def resolve_surface(spec: str) -> Triangulation:
    """Load ``spec`` as a file path, or as a bundled sample name when no such file exists."""
    if os.path.exists(spec) or not _SAMPLE_NAME.match(spec):
        return load_surface(spec)
    return load_sample(spec)


def format_surface(T: Triangulation) -> str:
    """Render a triangulation back to the surface format."""
    lines = [f"surface {T.name}"]
    for t in T.triangles:
        lines.append("tri {} {}".format(t.tid, " ".join(e.token() for e in t.edges)))
    named = set()
    for t in T.triangles:
        for c, v in enumerate(t.corners):
            if v not in named:
                named.add(v)
                lines.append(f"point {v} {t.tid}.{c}")
    for fold in T.self_folded.values():
        lines.append(f"selffold {fold.interior} {fold.loop}")
    return "\n".join(lines) + "\n"


# Exchange matrix


def signed_adjacency(T: Triangulation) -> ExchangeMatrix:
    """
    Signed adjacency matrix B(T).

    In every triangle that is not self-folded, an arc followed clockwise by
    another arc contributes +1 to the entry (first, second). Interior edges of
    self-folded triangles copy the row and column of their loop.
    """
    labels = list(T.arcs)
    index = {label: i for i, label in enumerate(labels)}
    B = np.zeros((len(labels), len(labels)), dtype=np.int64)
    for t in T.triangles:
        if t.tid in T.self_folded_tids:
            continue
        for i in range(3):
            beta, gamma = t.edges[i], t.edges[(i - 1) % 3]
            if not (beta.is_arc and gamma.is_arc):
                continue
            B[index[beta.label], index[gamma.label]] += 1
            B[index[gamma.label], index[beta.label]] -= 1
    for fold in T.self_folded.values():
        r, ell = index[fold.interior], index[fold.loop]
        B[:, r] = B[:, ell]
        B[r, :] = B[ell, :]
        B[r, ell] = 0
        B[ell, r] = 0
    return ExchangeMatrix(labels, B)


# Tag switching and flips


def _canonicalize(T: Triangulation) -> Tuple[Triangulation, Dict[str, str]]:
    """Move punctures enclosed by self-folded triangles out of ``S`` by swapping labels."""
    swap: Dict[str, str] = {}
    switched = set(T.switched)
    for fold in T.self_folded.values():
        if fold.puncture in switched:
            swap[fold.interior] = fold.loop
            swap[fold.loop] = fold.interior
            switched.discard(fold.puncture)
    if not swap:
        return T, {}
    triangles = [t.relabeled(swap) for t in T.triangles]
    return T.with_triangles(triangles, frozenset(switched)), swap


def tag_switch(T: Triangulation, p: str) -> Tuple[Triangulation, Dict[str, str]]:
    """
    Reverse all taggings at puncture ``p``.

    Returns:
        The switched triangulation and the relabeling of geometric edges
        (identity except for a swapped self-folded pair at ``p``). Labels keep
        denoting the switched counterparts of the arcs they denoted before.
    """
    if not T.is_puncture(p):
        raise ClusterIdealsError(f"{p} is not a puncture", {"vertex": p})
    toggled = T.with_triangles(T.triangles, frozenset(T.switched ^ {p}))
    result, swap = _canonicalize(toggled)
    relabel = {label: swap.get(label, label) for label in T.arcs}
    logger.debug("Tag switch at %s: relabeling %s", p, swap or "identity")
    return result, relabel


def _flip_edge(T: Triangulation, label: str) -> Triangulation:
    (t1id, s1), (t2id, s2) = T.arc_slots[label]
    if t1id == t2id:
        raise ClusterIdealsError(f"Edge {label} is the interior edge of a self-folded triangle")
    t1 = T.by_tid[t1id].rotated(s1)
    t2 = T.by_tid[t2id].rotated(s2)
    e, a, b = t1.edges
    _, c, d = t2.edges
    P, Q, R = t1.corners
    U = t2.corners[2]
    new1 = Triangle(t1id, (b, c, e), (R, P, U))
    new2 = Triangle(t2id, (d, a, e), (U, Q, R))
    triangles = [
        new1 if t.tid == t1id else new2 if t.tid == t2id else t for t in T.triangles
    ]
    return T.with_triangles(triangles)


def flip_triangulation(T: Triangulation, label: str) -> Triangulation:
    """
    Flip the tagged arc ``label``.

    Ordinary arcs and loops are flipped inside their quadrilateral. Flipping
    the interior edge of a self-folded triangle first re-expresses the pair
    with the puncture switched, so that the label becomes the loop, and then
    flips that loop.
    """
    if label not in T.arc_slots:
        raise ClusterIdealsError(f"Unknown arc {label}", {"arcs": list(T.arcs)})
    fold = T.self_folded.get(label)
    if fold is not None:
        swap = {fold.interior: fold.loop, fold.loop: fold.interior}
        triangles = [t.relabeled(swap) for t in T.triangles]
        T = T.with_triangles(triangles, frozenset(T.switched ^ {fold.puncture}))
    flipped = _flip_edge(T, label)
    result, _ = _canonicalize(flipped)
    logger.debug("Flipped %s in %s", label, T.name)
    return result


def same_tagged_triangulation(T1: Triangulation, T2: Triangulation) -> bool:
    return T1.canonical_form() == T2.canonical_form()
