"""
Tidy instances, tile covers and the verification harness.

A tile cover lifts a tagged arc to a disk of copies of the triangles it
passes through, glued along the arc, plus the triangles around its
endpoints. The lifted pair is tidy: every triangle has distinct corners
and sides and no arc meets the lifted arc twice, which is where the
exchange relations become plain poset decompositions.
"""

import itertools
import json
import logging
from collections import Counter
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .arcpath import (
    CrossingPath,
    check_geodesic,
    reduce_tagging,
    reversed_path,
    validate_geodesic,
    wind,
)
from .common.exceptions import (
    BFSBudgetExceeded,
    ClusterIdealsError,
    LiftMismatch,
    NotExchangeable,
    NotTidy,
)
from .common.types import Rotation, Segment, Tag
from .common.utils import is_debug_logging_enabled
from .laurent import LaurentPoly, ring_for
from .oracle import explore, split_F_and_g, steer_to
from .poset import WeightedPoset, build_poset, f_polynomial, ideal_monomials, weight_monomial
from .shear import Expansion, alternative_weights, coefficient_rows, expand, g_monomial, lifted_lengths
from .surface import Corner, Slot, Triangulation, signed_adjacency

logger = logging.getLogger(__name__)

TIDY_CONDITIONS = (
    "plain",
    "distinct_corners",
    "distinct_endpoints",
    "single_crossings",
    "no_crossing_at_endpoints",
    "coincides_if_parallel",
)


# Tidiness


@dataclass
class TidyReport:
    conditions: Dict[str, bool]
    multiplicities: Dict[str, int]

    @property
    def tidy(self) -> bool:
        return all(self.conditions.values())

    def failed(self) -> List[str]:
        return [name for name in TIDY_CONDITIONS if not self.conditions[name]]


def is_tidy(T: Triangulation, path: CrossingPath) -> TidyReport:
    """Evaluate the six tidiness conditions for ``(T, path)``."""
    crossings = path.crossings(T) if path.coincident is None else []
    counts = Counter(crossings)
    ends = {path.start, path.end}
    parallel = [label for label in T.arcs if set(T.arc_endpoints(label)) == ends]
    on_edge = T.arcs_on_edge(path.coincident) if path.coincident is not None else []
    conditions = {
        "plain": not T.switched and not T.self_folded,
        "distinct_corners": all(
            len(set(t.corners)) == 3 and len({(e.kind, e.label) for e in t.edges}) == 3 for t in T.triangles
        ),
        "distinct_endpoints": path.start != path.end,
        "single_crossings": all(c == 1 for c in counts.values()),
        "no_crossing_at_endpoints": not any(ends & set(T.arc_endpoints(label)) for label in counts),
        "coincides_if_parallel": all(label in on_edge for label in parallel),
    }
    return TidyReport(conditions, dict(counts))


# Tile covers


@dataclass
class TileCover:
    """A tidy lift of a tagged arc together with the weights translating back."""

    source: Triangulation
    source_path: CrossingPath
    triangulation: Triangulation
    path: CrossingPath
    tiles: Dict[str, str]
    origin: Dict[str, str]
    x_weights: Dict[str, LaurentPoly]
    y_weights: Dict[str, LaurentPoly]

    def images(self) -> Dict[str, LaurentPoly]:
        images = {f"x{label}": w for label, w in self.x_weights.items()}
        images.update({f"y{label}": w for label, w in self.y_weights.items()})
        return images

    def lift(self, value: LaurentPoly) -> LaurentPoly:
        """Rewrite a polynomial in the variables of the cover in those of the source."""
        return value.substitute(self.images(), ring_for(self.source))


class _CoverBuilder:
    def __init__(self, T: Triangulation):
        self.T = T
        self.tiles: Dict[str, str] = {}
        self.glued: Dict[Slot, Slot] = {}

    def tile(self, tid: str) -> str:
        name = f"u{len(self.tiles)}"
        self.tiles[name] = tid
        return name

    def source_label(self, side: Slot) -> str:
        return self.T.by_tid[self.tiles[side[0]]].edges[side[1]].label

    def join(self, a: Slot, b: Slot) -> None:
        if self.glued.get(a) == b:
            return
        if a in self.glued or b in self.glued or self.source_label(a) != self.source_label(b):
            raise ClusterIdealsError("Inconsistent tile gluing", {"sides": (a, b)})
        self.glued[a] = b
        self.glued[b] = a

    def corona(self, corner: Corner, fixed: Sequence[Tuple[Corner, str]]) -> None:
        """Tiles for every corner around the marked point of ``corner``, glued in rotation order."""
        ring = self.T.ring(corner)
        closed = self.T.is_puncture(self.T.corner_name(corner))
        if closed and len(ring) == 1:
            # a puncture inside a self-folded triangle: two copies form a digon
            ring = ring * 2
        tiles: List[Optional[str]] = [None] * len(ring)
        for c, tile in fixed:
            i = next(i for i, r in enumerate(ring) if r == c and tiles[i] is None)
            tiles[i] = tile
        names = [t if t is not None else self.tile(c[0]) for t, c in zip(tiles, ring)]
        steps = len(ring) if closed else len(ring) - 1
        for i in range(steps):
            j = (i + 1) % len(ring)
            self.join((names[i], (ring[i][1] - 1) % 3), (names[j], ring[j][1]))


def _endpoint_names(path: CrossingPath) -> Tuple[str, str]:
    if path.start != path.end:
        return path.start, path.end
    return f"{path.start}_0", f"{path.end}_1"


def tile_cover(T: Triangulation, path: CrossingPath) -> TileCover:
    """
    Build the tile cover of a tagged arc.

    The tagging is reduced first. Arc sides of tiles left unglued get an
    auxiliary triangle with two new boundary segments, so that every lifted
    arc stays an arc; sides coming from boundary segments stay boundary.

    Raises:
        NotTidy: if the lifted pair fails a tidiness condition
    """
    T, path, _ = reduce_tagging(T, path)
    check_geodesic(T, path)
    builder = _CoverBuilder(T)
    if path.coincident is None:
        segs = path.segments
        tiles = [builder.tile(s.tid) for s in segs]
        for k in range(len(segs) - 1):
            builder.join((tiles[k], segs[k].exit), (tiles[k + 1], segs[k + 1].entry))  # type: ignore[arg-type]
        start = (segs[0].tid, (segs[0].exit + 2) % 3)  # type: ignore[operator]
        end = (segs[-1].tid, (segs[-1].entry + 2) % 3)  # type: ignore[operator]
        builder.corona(start, [(start, tiles[0])])
        builder.corona(end, [(end, tiles[-1])])
        lifted_segs = tuple(Segment(tiles[k], s.entry, s.exit) for k, s in enumerate(segs))
        start_ref, end_ref = (tiles[0], start[1]), (tiles[-1], end[1])
        coincident = None
    else:
        t1, s1 = path.coincident
        t2, s2 = T.partner(path.coincident)  # type: ignore[misc]
        x_tile, y_tile = builder.tile(t1), builder.tile(t2)
        builder.join((x_tile, s1), (y_tile, s2))
        builder.corona((t1, s1), [((t1, s1), x_tile), ((t2, (s2 + 1) % 3), y_tile)])
        builder.corona((t1, (s1 + 1) % 3), [((t1, (s1 + 1) % 3), x_tile), ((t2, s2), y_tile)])
        lifted_segs = ()
        start_ref, end_ref = (x_tile, s1), (x_tile, (s1 + 1) % 3)
        coincident = (x_tile, s1)

    origin: Dict[str, str] = {}
    side_label: Dict[Slot, str] = {}
    triangles: List[Tuple[str, Tuple[str, str, str]]] = []
    auxiliary: List[Tuple[str, Tuple[str, str, str]]] = []
    counter = itertools.count(1)
    for tile, tid in builder.tiles.items():
        tokens = []
        for i, e in enumerate(T.by_tid[tid].edges):
            side = (tile, i)
            if side in side_label:
                tokens.append(f"a{side_label[side]}")
                continue
            n = next(counter)
            label = f"{e.label}_{n}"
            if not e.is_arc:
                tokens.append(f"b{label}")
                continue
            origin[label] = e.label
            side_label[side] = label
            other = builder.glued.get(side)
            if other is not None:
                side_label[other] = label
            else:
                auxiliary.append((f"w{n}", (f"a{label}", f"bw{n}_1", f"bw{n}_2")))
            tokens.append(f"a{label}")
        triangles.append((tile, tuple(tokens)))  # type: ignore[arg-type]

    start_name, end_name = _endpoint_names(path)
    cover = Triangulation.from_triangles(
        f"{T.name}-cover",
        triangles + auxiliary,
        names={start_ref: start_name, end_ref: end_name},
        check_excluded=False,
    )
    lifted = CrossingPath(start_name, end_name, lifted_segs, path.start_tag, path.end_tag, coincident)

    ring = ring_for(T)
    lengths, laminations = lifted_lengths(T), alternative_weights(T)
    x_weights = {label: ring.monomial(lengths[o]) for label, o in origin.items()}
    y_weights = {label: ring.monomial(laminations[o]) for label, o in origin.items()}

    report = is_tidy(cover, lifted)
    if not report.tidy:
        raise NotTidy("Tile cover is not tidy", {"failed": report.failed(), "surface": T.name})
    logger.debug("Tile cover of %s: %d tiles, %d auxiliary triangles", T.name, len(builder.tiles), len(auxiliary))
    return TileCover(T, path, cover, lifted, dict(builder.tiles), origin, x_weights, y_weights)


@dataclass
class LiftReport:
    g: bool
    f: bool
    shape: bool
    weights: bool
    witness: Optional[str] = None

    @property
    def ok(self) -> bool:
        return self.g and self.f and self.shape and self.weights

    def raise_for_failure(self) -> None:
        if not self.ok:
            raise LiftMismatch("Tile cover does not reproduce the arc", element=self.witness)


def check_lifts(T: Triangulation, path: CrossingPath, cover: Optional[TileCover] = None) -> LiftReport:
    """
    Compare an arc with its tile-cover lift.

    Checks the g-monomial and the F-polynomial under the lifted weights, that
    both posets have the same elements and covers, and that corresponding
    elements have equal weights.
    """
    cover = cover or tile_cover(T, path)
    source, spath = cover.source, cover.source_path
    lifted_T, lifted_path = cover.triangulation, cover.path
    ring = ring_for(source)
    witness = None

    g = g_monomial(source, spath, ring)
    g_lift = cover.lift(g_monomial(lifted_T, lifted_path))
    if g != g_lift:
        witness = f"g {g.render()} != {g_lift.render()}"

    P = build_poset(source, spath)
    Q = build_poset(lifted_T, lifted_path)
    f_ok = f_polynomial(source, P, ring) == cover.lift(f_polynomial(lifted_T, Q))
    shape = set(P.elements) == set(Q.elements) and set(P.covers()) == set(Q.covers())
    if not shape and witness is None:
        witness = f"posets differ: {P!r} vs {Q!r}"
    weights = shape
    if shape:
        B, B_lift = signed_adjacency(source), signed_adjacency(lifted_T)
        lifted_ring = ring_for(lifted_T)
        for e in P.elements:
            mine = weight_monomial(source, P.weight(e), ring, B)
            theirs = cover.lift(weight_monomial(lifted_T, Q.weight(e), lifted_ring, B_lift))
            if mine != theirs:
                weights = False
                witness = witness or f"element {e}: {mine.render()} != {theirs.render()}"
                break
    return LiftReport(g == g_lift, f_ok, shape, weights, witness)


# Exchange relations in tidy position


@dataclass
class ExchangeCheck:
    gamma: str
    kind: str
    blue: WeightedPoset
    red: WeightedPoset
    orange: LaurentPoly
    blue_arcs: Tuple[Optional[CrossingPath], ...]
    red_arcs: Tuple[Optional[CrossingPath], ...]
    ideal_sum: bool
    f_blue: bool
    f_red: bool
    g_blue: bool
    g_red: bool

    @property
    def ok(self) -> bool:
        return self.ideal_sum and self.f_blue and self.f_red and self.g_blue and self.g_red


def _side_path(T: Triangulation, tid: str, start: str, start_tag: Tag, end: str) -> Optional[CrossingPath]:
    """The side of ``tid`` joining ``start`` to ``end``; ``None`` for a boundary segment."""
    t = T.by_tid[tid]
    for i in range(3):
        a, b = t.corners[i], t.corners[(i + 1) % 3]
        if {a, b} != {start, end}:
            continue
        if not t.edges[i].is_arc:
            return None
        slot = (tid, i) if a == start else T.partner((tid, i))
        return CrossingPath(start, end, (), start_tag, Tag.PLAIN, slot)
    raise ClusterIdealsError(f"No side of {tid} joins {start} and {end}")


def _tighten(
    T: Triangulation, start: str, start_tag: Tag, walk: Sequence[Segment], end: str
) -> Optional[CrossingPath]:
    """
    Pull a walk from ``start`` into ``end``.

    The walk ends in a triangle with a corner at ``end``; crossings of arcs
    fanning out of ``end`` just before it are dropped.
    """
    segs = list(walk)
    while len(segs) > 1:
        last = segs[-1]
        if T.corner_name((last.tid, last.entry + 2)) == end:  # type: ignore[operator]
            break
        dropped = (segs[-2].tid, segs[-2].exit)
        if end not in T.slot_endpoints(dropped):  # type: ignore[arg-type]
            raise ClusterIdealsError("Walk does not fan into its endpoint", {"end": end})
        segs.pop()
    if len(segs) == 1:
        return _side_path(T, segs[0].tid, start, start_tag, end)
    segs[-1] = Segment(segs[-1].tid, segs[-1].entry, None)
    return CrossingPath(start, end, tuple(segs), start_tag, Tag.PLAIN)


def _crossing_candidates(T: Triangulation, path: CrossingPath, gamma: str) -> List[Tuple[Optional[CrossingPath], ...]]:
    """The two pairs of opposite sides of the quadrilateral with diagonals ``path`` and ``gamma``."""
    n = path.n_crossings
    k = path.crossings(T).index(gamma)
    seg = path.segments[k]
    u, w = T.slot_endpoints((seg.tid, seg.exit))  # type: ignore[arg-type]
    back = reversed_path(T, path)
    from_p = {v: _tighten(T, path.start, path.start_tag, path.segments[: k + 1], v) for v in (u, w)}
    from_q = {v: _tighten(T, back.start, back.start_tag, back.segments[: n - k], v) for v in (u, w)}
    return [(from_p[u], from_q[w]), (from_p[w], from_q[u])]


def _digon_candidates(T: Triangulation, path: CrossingPath, gamma: str) -> List[Tuple[Optional[CrossingPath], ...]]:
    """Arcs from the far end of ``path`` to the far end of ``gamma``, passing either side of their shared puncture."""
    ends = [(v, tag) for v, tag in ((path.end, path.end_tag), (path.start, path.start_tag))]
    shared = [v for v, tag in ends if tag is Tag.NOTCHED and v in T.arc_endpoints(gamma)]
    if not shared:
        raise NotExchangeable(f"{gamma} neither crosses the arc nor meets a notched end", {"arc": gamma})
    v = shared[0]
    oriented = path if path.end == v else reversed_path(T, path)
    a, b = T.arc_endpoints(gamma)
    c = b if a == v else a
    out = []
    for rotation in (Rotation.CCW, Rotation.CW):
        if oriented.coincident is None:
            last = oriented.segments[-1]
            tid, corner, entry = last.tid, (last.entry + 2) % 3, last.entry  # type: ignore[operator]
            prefix = list(oriented.segments[:-1])
        else:
            t, s = oriented.coincident
            if rotation is Rotation.CW:
                tid, corner = t, (s + 1) % 3
            else:
                tid, corner = T.partner((t, s))  # type: ignore[misc]
            entry, prefix = None, []
        first, winding = wind(T, tid, corner, rotation, len(T.ring((tid, corner))))
        walk = prefix + [Segment(tid, entry, first)] + winding
        cut = next(
            i
            for i in range(len(prefix), len(walk))
            if walk[i].exit is not None and T.edge((walk[i].tid, walk[i].exit)).label == gamma
        )
        out.append((_tighten(T, oriented.start, oriented.start_tag, walk[: cut + 1], c),))
    return out


def _product(T: Triangulation, arcs: Iterable[Optional[CrossingPath]]) -> Tuple[LaurentPoly, LaurentPoly]:
    ring = ring_for(T)
    f, g = ring.one, ring.one
    for arc in arcs:
        if arc is None:
            continue
        expansion = expand(T, arc, ring)
        f, g = f * expansion.f, g * expansion.g
    return f, g


def exchange_decomposition(T: Triangulation, path: CrossingPath, gamma: str) -> ExchangeCheck:
    """
    Split the poset of a tidy arc at the element labeled ``gamma`` and check the exchange relation.

    The blue poset drops everything weakly above that element, the red one
    everything weakly below; the orange monomial is the weight of the
    elements weakly below. The geometric blue and red arcs are computed
    from their own paths and compared with both halves.

    Raises:
        NotTidy: if ``(T, path)`` is not tidy
        NotExchangeable: if ``gamma`` does not label exactly one element
    """
    report = is_tidy(T, path)
    if not report.tidy:
        raise NotTidy("Exchange decomposition needs a tidy pair", {"failed": report.failed()})
    ring = ring_for(T)
    P = build_poset(T, path)
    occurrences = P.occurrences(gamma)
    if len(occurrences) != 1:
        raise NotExchangeable(f"{gamma} labels {len(occurrences)} elements", {"arc": gamma})
    e = occurrences[0]
    blue = P.without(P.up_set(e))
    red = P.without(P.down_set(e))
    B = signed_adjacency(T)
    orange = ring.one
    for x in P.down_set(e):
        orange = orange * weight_monomial(T, P.weight(x), ring, B)

    f_all, f_b, f_r = (f_polynomial(T, Q, ring) for Q in (P, blue, red))
    ideal_sum = f_all == f_b + orange * f_r

    if path.coincident is None and gamma in path.crossings(T):
        kind, candidates = "crossing", _crossing_candidates(T, path, gamma)
    else:
        kind, candidates = "digon", _digon_candidates(T, path, gamma)
    g_alpha = g_monomial(T, path, ring)
    want_blue = ring.x(gamma) * g_alpha
    want_red = want_blue * orange.specialize_y()
    products = [_product(T, arcs) for arcs in candidates]
    # blue is the side whose F matches the blue half; ties are settled by the g-vector
    order = sorted(range(2), key=lambda i: (products[i][0] != f_b, products[i][1] != want_blue))
    i_blue, i_red = order[0], order[1]
    (fb, gb), (fr, gr) = products[i_blue], products[i_red]
    if is_debug_logging_enabled():
        logger.debug("Exchange at %s (%s): orange %s", gamma, kind, orange.render())
    return ExchangeCheck(
        gamma,
        kind,
        blue,
        red,
        orange,
        candidates[i_blue],
        candidates[i_red],
        ideal_sum,
        fb == f_b,
        fr == f_r,
        gb == want_blue,
        gr == want_red,
    )


def exchangeable_arcs(T: Triangulation, path: CrossingPath) -> List[str]:
    """Arcs labeling exactly one element of the poset of a tidy pair."""
    P = build_poset(T, path)
    return [label for label in T.arcs if len(P.occurrences(label)) == 1]


# Structural checks


def structural_check(f: LaurentPoly) -> List[str]:
    """Problems with an F-polynomial: constant term, y-denominators, signs, top monomial."""
    problems = []
    if f.y_free_part() != f.ring.one:
        problems.append("constant term is not 1")
    if f.has_negative_y():
        problems.append("y-denominator")
    if not f.is_nonnegative():
        problems.append("negative coefficient")
    top = max((f.y_degree(m) for m, _ in f.terms()), default=0)
    tops = [(m, c) for m, c in f.terms() if f.y_degree(m) == top]
    if len(tops) != 1 or tops[0][1] != 1:
        problems.append("top monomial is not unique")
    return problems


def birkhoff_check(T: Triangulation, P: WeightedPoset) -> bool:
    """Whether distinct order ideals have distinct weight monomials."""
    vectors = [exps for _, exps in ideal_monomials(T, P)]
    return len(vectors) == len(set(vectors))


def brute_force_ideals(P: WeightedPoset) -> int:
    """Count down-closed subsets by trying every subset."""
    order = P.elements
    lower = {e: set(P.lower_covers(e)) for e in order}
    count = 0
    for mask in range(1 << len(order)):
        chosen = {e for i, e in enumerate(order) if mask >> i & 1}
        if all(lower[e] <= chosen for e in chosen):
            count += 1
    return count


# Harness


@dataclass
class Failure:
    check: str
    subject: str
    message: str


@dataclass
class VerificationReport:
    """Counts of passed checks per kind and the failures met on the way."""

    surface: str
    counts: Counter = field(default_factory=Counter)
    failures: List[Failure] = field(default_factory=list)
    budget_exhausted: bool = False

    @property
    def ok(self) -> bool:
        return not self.failures and not self.budget_exhausted

    def record(self, check: str, subject: str, ok: bool, message: str = "") -> None:
        self.counts[check] += 1
        if not ok:
            self.failures.append(Failure(check, subject, message))
            logger.debug("%s failed for %s: %s", check, subject, message)

    def summary(self) -> Dict:
        first = self.failures[0] if self.failures else None
        return {
            "surface": self.surface,
            "ok": self.ok,
            "checks": dict(sorted(self.counts.items())),
            "failures": len(self.failures),
            "first_failure": None if first is None else vars(first),
            "budget_exhausted": self.budget_exhausted,
        }

    def to_json(self) -> str:
        return json.dumps(self.summary(), indent=2, sort_keys=True)

    def lines(self) -> List[str]:
        out = [f"surface {self.surface}"]
        for check, n in sorted(self.counts.items()):
            failed = sum(1 for f in self.failures if f.check == check)
            out.append(f"{check}: {n - failed}/{n} passed")
        for f in self.failures:
            out.append(f"FAIL {f.check} {f.subject}: {f.message}")
        if self.budget_exhausted:
            out.append("search budget exhausted")
        out.append("PASS" if self.ok else "FAIL")
        return out


def _subject(path: CrossingPath) -> str:
    def point(v: str, tag: Tag) -> str:
        return f"{v}*" if tag is Tag.NOTCHED else v

    return f"{point(path.start, path.start_tag)}->{point(path.end, path.end_tag)}"


def _compare(
    report: VerificationReport, T: Triangulation, path: CrossingPath, value: LaurentPoly
) -> None:
    subject = _subject(path)
    expansion = expand(T, path)
    report.record("variable", subject, expansion.value == value, f"{expansion.value.render()} != {value.render()}")
    report.record(
        "coefficient_free",
        subject,
        expansion.coefficient_free == value.specialize_y(),
        "coefficient-free specialization differs",
    )
    _, g = split_F_and_g(value, subject)
    report.record("g_vector", subject, expansion.g == g, f"{expansion.g.render()} != {g.render()}")
    _structure(report, T, expansion, subject)


def _structure(
    report: VerificationReport, T: Triangulation, expansion: Expansion, subject: str, brute_force_limit: int = 12
) -> None:
    problems = structural_check(expansion.f)
    report.record("structure", subject, not problems, ", ".join(problems))
    P = expansion.poset
    n_ideals = P.count_ideals()
    report.record("ideal_count", subject, n_ideals == sum(1 for _ in P.ideals()), "transfer count differs")
    if len(P) <= brute_force_limit:
        report.record("brute_force", subject, brute_force_ideals(P) == n_ideals, "brute force count differs")
    if not T.punctures:
        report.record("birkhoff", subject, birkhoff_check(expansion.reduced, P), "two ideals share a monomial")


def check_tidy_relations(report: VerificationReport, T: Triangulation, path: CrossingPath) -> None:
    """Lift ``path`` to its tile cover and check the lifted data and every exchange relation there."""
    subject = _subject(path)
    try:
        cover = tile_cover(T, path)
    except NotTidy as e:
        report.record("tile_cover", subject, False, str(e))
        return
    report.record("tile_cover", subject, True)
    lift = check_lifts(T, path, cover)
    report.record("lift", subject, lift.ok, lift.witness or "")
    for gamma in exchangeable_arcs(cover.triangulation, cover.path):
        try:
            ex = exchange_decomposition(cover.triangulation, cover.path, gamma)
        except ClusterIdealsError as e:
            report.record("exchange", f"{subject} at {gamma}", False, str(e))
            continue
        report.record("exchange", f"{subject} at {gamma}", ex.ok, f"{ex.kind} relation fails")


def check_theorem(
    T: Triangulation,
    depth: Optional[int] = None,
    paths: Optional[Sequence[CrossingPath]] = None,
    geodesics: Sequence[CrossingPath] = (),
    budget: Optional[int] = None,
    tidy: bool = False,
) -> VerificationReport:
    """
    Compare the poset formula with the mutation oracle.

    Without ``paths`` every tagged arc reachable within ``depth`` flips is
    checked, along with the coefficient rows predicted by laminations.
    With ``paths`` each one is reached by steering. ``geodesics`` get the
    structural checks only. ``tidy`` adds tile-cover and exchange checks.
    """
    report = VerificationReport(T.name)
    try:
        if paths is None:
            for d in explore(T, depth, budget, track=True):
                _compare(report, T, d.path, d.variable)
                if d.tracked is not None and not d.initial:
                    predicted = coefficient_rows(d.seed.triangulation, d.tracked)
                    report.record(
                        "lamination",
                        _subject(d.path),
                        predicted == d.seed.coefficient_rows(),
                        "coefficient rows differ from lamination shears",
                    )
                if tidy:
                    check_tidy_relations(report, T, d.path)
        else:
            for path in paths:
                result = steer_to(T, path, budget)
                _compare(report, T, path, result.variable)
                if tidy:
                    check_tidy_relations(report, T, path)
    except BFSBudgetExceeded as e:
        logger.warning("Verification of %s stopped: %s", T.name, e.message)
        report.budget_exhausted = True
    for path in geodesics:
        subject = _subject(path)
        violation = validate_geodesic(T, path)
        report.record("geodesic", subject, violation is None, violation.message if violation else "")
        if violation is None:
            _structure(report, T, expand(T, path), subject)
    logger.info(
        "Verified %s: %d checks, %d failures", T.name, sum(report.counts.values()), len(report.failures)
    )
    return report


def tidy_corpus(T: Triangulation, paths: Iterable[CrossingPath]) -> VerificationReport:
    report = VerificationReport(T.name)
    for path in paths:
        check_tidy_relations(report, T, path)
    return report

