"""
Weighted posets of curves and their order-ideal sums.

Elements are crossings of a curve with arcs, plus the chains added at
notched endpoints. Every element carries a :class:`Weight`; the
F-polynomial of the curve is the sum over order ideals of the product of
the weights. Posets are held as networkx Hasse diagrams with an edge
``u -> v`` for each cover ``u < v``.
"""

import logging
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Sequence, Tuple

import networkx as nx

from .arcpath import CrossingPath, find_arc, oriented_turn, reversed_path, wind
from .common.config import is_mirrored
from .common.exceptions import ChainTooShort, ClusterIdealsError, NonPolynomialF
from .common.types import Rotation, Segment, Tag, Turn, Weight
from .common.utils import natural_key
from .laurent import LaurentPoly, LaurentRing, ring_for, yhat
from .surface import Slot, Triangulation, signed_adjacency

logger = logging.getLogger(__name__)

Relation = Tuple[str, str]


class WeightedPoset:
    """A finite poset with weighted elements, stored as its Hasse diagram."""

    def __init__(self, hasse: nx.DiGraph):
        self.hasse = hasse

    @classmethod
    def from_relations(cls, weights: Dict[str, Weight], relations: Iterable[Relation]) -> "WeightedPoset":
        """
        Build a poset from element weights and generating relations ``(lower, upper)``.

        Raises:
            ClusterIdealsError: if the relations contain a cycle
        """
        graph = nx.DiGraph()
        for element, weight in weights.items():
            graph.add_node(element, weight=weight)
        graph.add_edges_from(relations)
        if not nx.is_directed_acyclic_graph(graph):
            raise ClusterIdealsError("Relations do not define a partial order", {"elements": len(weights)})
        reduced = nx.transitive_reduction(graph)
        reduced.add_nodes_from(graph.nodes(data=True))
        return cls(reduced)

    @classmethod
    def empty(cls) -> "WeightedPoset":
        return cls(nx.DiGraph())

    def __len__(self) -> int:
        return self.hasse.number_of_nodes()

    def __contains__(self, element: str) -> bool:
        return element in self.hasse

    @property
    def elements(self) -> Tuple[str, ...]:
        """Elements in a deterministic linear extension."""
        return tuple(nx.lexicographical_topological_sort(self.hasse, key=natural_key))

    def weight(self, element: str) -> Weight:
        return self.hasse.nodes[element]["weight"]

    def covers(self) -> List[Relation]:
        return sorted(self.hasse.edges(), key=lambda e: (natural_key(e[0]), natural_key(e[1])))

    def lower_covers(self, element: str) -> List[str]:
        return list(self.hasse.predecessors(element))

    def less(self, a: str, b: str) -> bool:
        return a != b and nx.has_path(self.hasse, a, b)

    def down_set(self, element: str) -> FrozenSet[str]:
        return frozenset(nx.ancestors(self.hasse, element) | {element})

    def up_set(self, element: str) -> FrozenSet[str]:
        return frozenset(nx.descendants(self.hasse, element) | {element})

    def restricted(self, keep: Iterable[str]) -> "WeightedPoset":
        """Induced subposet on ``keep``."""
        keep = set(keep)
        closure = nx.transitive_closure_dag(self.hasse)
        sub = closure.subgraph(keep).copy()
        reduced = nx.transitive_reduction(sub)
        reduced.add_nodes_from((n, self.hasse.nodes[n]) for n in keep)
        return WeightedPoset(reduced)

    def without(self, remove: Iterable[str]) -> "WeightedPoset":
        remove = set(remove)
        return self.restricted(n for n in self.hasse if n not in remove)

    def occurrences(self, label: str) -> List[str]:
        """Elements whose weight is the single yhat of ``label``."""
        return [e for e in self.elements if self.weight(e) == Weight(label)]

    def is_chain(self) -> bool:
        return all(self.hasse.out_degree(n) <= 1 and self.hasse.in_degree(n) <= 1 for n in self.hasse) and (
            len(self) == 0 or nx.is_weakly_connected(self.hasse)
        )

    # Order ideals

    def ideals(self) -> Iterator[FrozenSet[str]]:
        """Yield every order ideal exactly once."""
        order = self.elements
        lower = {e: set(self.hasse.predecessors(e)) for e in order}

        def walk(i: int, chosen: FrozenSet[str]) -> Iterator[FrozenSet[str]]:
            if i == len(order):
                yield chosen
                return
            e = order[i]
            yield from walk(i + 1, chosen)
            if lower[e] <= chosen:
                yield from walk(i + 1, chosen | {e})

        yield from walk(0, frozenset())

    def count_ideals(self) -> int:
        """
        Number of order ideals by a frontier transfer-matrix sweep.

        Elements are processed along a linear extension; the state records
        which processed elements that still have unprocessed upper covers
        were taken.
        """
        order = self.elements
        position = {e: i for i, e in enumerate(order)}
        last_use = {
            e: max((position[u] for u in self.hasse.successors(e)), default=position[e]) for e in order
        }
        states: Dict[FrozenSet[str], int] = {frozenset(): 1}
        for i, e in enumerate(order):
            below = set(self.hasse.predecessors(e))
            nxt: Dict[FrozenSet[str], int] = {}
            for state, count in states.items():
                options = [state]
                if below <= state:
                    options.append(state | {e})
                for option in options:
                    kept = frozenset(x for x in option if last_use[x] > i)
                    nxt[kept] = nxt.get(kept, 0) + count
            states = nxt
        return sum(states.values())

    # Rendering

    def to_dot(self, name: str = "P") -> str:
        """Graphviz source of the Hasse diagram, minimal elements at the bottom."""
        lines = [f"digraph {name} {{", "  rankdir=BT;"]
        for e in self.elements:
            lines.append(f'  "{e}" [label="{self.weight(e).label()}"];')
        for lo, hi in self.covers():
            lines.append(f'  "{lo}" -> "{hi}";')
        lines.append("}")
        return "\n".join(lines) + "\n"

    def describe(self) -> Dict:
        return {
            "elements": [{"id": e, "weight": self.weight(e).label()} for e in self.elements],
            "covers": [list(c) for c in self.covers()],
        }

    def __repr__(self) -> str:
        return f"WeightedPoset({len(self)} elements, {self.hasse.number_of_edges()} covers)"


# Weights


def crossing_weights(T: Triangulation, labels: Sequence[str], cyclic: bool = False) -> List[Weight]:
    """
    Default weights of a crossing sequence.

    An interior edge of a self-folded triangle crossed between two crossings
    of its loop is weighted by the quotient of the two yhats.
    """
    out = []
    n = len(labels)
    for k, label in enumerate(labels):
        fold = T.self_folded.get(label)
        if fold is not None:
            if cyclic:
                before, after = labels[(k - 1) % n], labels[(k + 1) % n]
            else:
                before = labels[k - 1] if k > 0 else None
                after = labels[k + 1] if k + 1 < n else None
            if before == fold.loop and after == fold.loop:
                out.append(Weight(label, fold.loop))
                continue
        out.append(Weight(label))
    return out


def _relation(before: str, after: str, seg: Segment, mirrored: bool) -> Relation:
    """Order two consecutive crossings: right turn between them puts ``before`` above."""
    turn = oriented_turn(seg, mirrored)
    if turn is None:
        raise ClusterIdealsError("Segment between crossings has no turn", {"segment": seg})
    return (after, before) if turn is Turn.RIGHT else (before, after)


# Crossing poset


def build_pcr(T: Triangulation, path: CrossingPath) -> WeightedPoset:
    """
    Poset of the crossings of a non-coincident path.

    Consecutive crossings are related through the triangle between them.
    An end notched at a puncture enclosed by a self-folded triangle gives
    its first crossing, a loop, the weight of the interior edge instead.
    """
    if path.coincident is not None:
        raise ClusterIdealsError("Coincident paths have no crossing poset")
    mirrored = is_mirrored()
    labels = path.crossings(T)
    weights = crossing_weights(T, labels)
    n = len(labels)
    for k, v, tag in ((0, path.start, path.start_tag), (n - 1, path.end, path.end_tag)):
        fold = T.fold_at(v)
        if tag is Tag.NOTCHED and fold is not None and labels[k] == fold.loop:
            weights[k] = Weight(fold.interior)
    elements = {f"c{k}": w for k, w in enumerate(weights)}
    relations = [
        _relation(f"c{k - 1}", f"c{k}", path.segments[k], mirrored) for k in range(1, n)
    ]
    return WeightedPoset.from_relations(elements, relations)


def _winding(T: Triangulation, tid: str, corner: int, count: int) -> Tuple[List[Slot], List[Segment]]:
    """Slots crossed while winding counterclockwise ``count`` times, and the winding segments."""
    first, segs = wind(T, tid, corner, Rotation.CCW, count)
    slots = [(tid, first)] + [(s.tid, s.exit) for s in segs[:-1]]  # type: ignore[misc]
    return slots, segs


def end_chain(T: Triangulation, path: CrossingPath) -> Tuple[List[Weight], List[Segment], Segment]:
    """
    Chain of a notched end of a crossing path.

    Returns the chain weights in winding order, the segments between chain
    elements and the segment joining the last crossing to the first chain
    element.
    """
    last = path.segments[-1]
    corner = (last.entry + 2) % 3  # type: ignore[operator]
    m = len(T.ring((last.tid, corner)))
    if m < 2:
        raise ChainTooShort(f"Winding around {path.end} crosses {m} arcs", puncture=path.end)
    slots, segs = _winding(T, last.tid, corner, m)
    labels = [T.edge(s).label for s in slots]
    weights = crossing_weights(T, labels, cyclic=True)
    joint = Segment(last.tid, last.entry, slots[0][1])
    return weights, segs[: m - 1], joint


def attach_chains(T: Triangulation, path: CrossingPath, P: WeightedPoset) -> WeightedPoset:
    """
    Add the chains of notched ends at punctures not enclosed by self-folded triangles.

    The bottom of each chain is covered by the neighbouring crossing and the
    top covers it.
    """
    mirrored = is_mirrored()
    n = path.n_crossings
    weights = {e: P.weight(e) for e in P.elements}
    relations: List[Relation] = list(P.covers())
    ends = []
    if path.end_tag is Tag.NOTCHED and T.fold_at(path.end) is None:
        ends.append(("e", path, f"c{n - 1}"))
    if path.start_tag is Tag.NOTCHED and T.fold_at(path.start) is None:
        ends.append(("s", reversed_path(T, path), "c0"))
    for prefix, oriented, anchor in ends:
        chain, segs, joint = end_chain(T, oriented)
        names = [f"{prefix}{i + 1}" for i in range(len(chain))]
        for name, w in zip(names, chain):
            weights[name] = w
        for i in range(1, len(names)):
            relations.append(_relation(names[i - 1], names[i], segs[i - 1], mirrored))
        lo, hi = _relation(anchor, names[0], joint, mirrored)
        relations.append((lo, hi))
        # the top of the chain sits on the other side of the anchor
        if lo == anchor:
            relations.append((names[-1], anchor))
        else:
            relations.append((anchor, names[-1]))
        logger.debug("Attached %d-element chain at %s", len(names), oriented.end)
    return WeightedPoset.from_relations(weights, relations)


# Coincident paths


def _side_toward(T: Triangulation, path: CrossingPath, at_end: bool) -> Tuple[str, int]:
    """Corner at the chosen endpoint in a triangle whose slot runs into it along the arc."""
    slot = path.coincident if at_end else T.partner(path.coincident)  # type: ignore[arg-type]
    tid, s = slot  # type: ignore[misc]
    return tid, (s + 1) % 3


def _chain_at(
    T: Triangulation, path: CrossingPath, at_end: bool, full: bool, mirrored: bool, prefix: str
) -> Tuple[List[str], Dict[str, Weight], List[Relation]]:
    """
    Chain obtained by winding counterclockwise from the arc itself.

    ``full`` keeps the arc at both ends of the chain; otherwise both copies
    of the arc are left out.
    """
    tid, corner = _side_toward(T, path, at_end)
    v = T.corner_name((tid, corner))
    m = len(T.ring((tid, corner)))
    slots, segs = _winding(T, tid, corner, m + 1)
    labels = [T.edge(s).label for s in slots]
    weights = crossing_weights(T, labels[:m], cyclic=True)
    weights.append(weights[0])
    if not full:
        labels, weights, segs = labels[1:m], weights[1:m], segs[1 : m - 1]
    if m < 2 or not labels:
        raise ChainTooShort(f"Winding around {v} leaves {len(labels)} chain elements", puncture=v)
    names = [f"{prefix}{i}" for i in range(len(labels))]
    rels = [_relation(names[i - 1], names[i], segs[i - 1], mirrored) for i in range(1, len(names))]
    return names, dict(zip(names, weights)), rels


def _tag_of_arc_at(T: Triangulation, label: str, path: CrossingPath, at_end: bool) -> Tag:
    arc = T.tagged_arc(label)
    v = path.end if at_end else path.start
    if path.start == path.end:
        return arc.start_tag
    if arc.start == v:
        return arc.start_tag
    return arc.end_tag


def is_loop_curve(T: Triangulation, path: CrossingPath) -> bool:
    """Whether ``path`` runs along the loop of a self-folded triangle."""
    return path.coincident is not None and T.edge(path.coincident).label in T.loops


def build_degenerate(T: Triangulation, path: CrossingPath) -> WeightedPoset:
    """
    Poset of a path that coincides with an arc of ``T``.

    Returns the empty poset for arcs of ``T`` and for loops of self-folded
    triangles; otherwise chains at the ends where the tagging differs from
    the arc of ``T``.
    """
    if path.coincident is None:
        raise ClusterIdealsError("Path does not coincide with an arc")
    if is_loop_curve(T, path) or find_arc(T, path) is not None:
        return WeightedPoset.empty()
    mirrored = is_mirrored()
    label = T.edge(path.coincident).label
    fold = T.self_folded.get(label)
    differs = {
        at_end: (path.end_tag if at_end else path.start_tag) is not _tag_of_arc_at(T, label, path, at_end)
        for at_end in (False, True)
    }
    if fold is not None:
        at_end = path.end == fold.base
        names, weights, rels = _chain_at(T, path, at_end, False, mirrored, "k")
        notched_p = (path.start_tag if at_end else path.end_tag) is Tag.NOTCHED
        if notched_p:
            ordered = WeightedPoset.from_relations(weights, rels).elements
            weights[ordered[0]] = Weight(fold.interior)
            weights[ordered[-1]] = Weight(fold.interior)
        return WeightedPoset.from_relations(weights, rels)
    if differs[True] and differs[False]:
        return _double_chain(T, path, mirrored)
    at_end = differs[True]
    names, weights, rels = _chain_at(T, path, at_end, False, mirrored, "k")
    return WeightedPoset.from_relations(weights, rels)


def _double_chain(T: Triangulation, path: CrossingPath, mirrored: bool) -> WeightedPoset:
    """Two full windings glued along their copies of the arc, then cross-linked."""
    chains = []
    weights: Dict[str, Weight] = {}
    relations: List[Relation] = []
    for at_end, prefix in ((False, "s"), (True, "e")):
        names, w, rels = _chain_at(T, path, at_end, True, mirrored, prefix)
        ordered = list(WeightedPoset.from_relations(w, rels).elements)
        bottom, top = ordered[0], ordered[-1]
        rename = {bottom: "bot", top: "top"}
        weights.update({rename.get(n, n): x for n, x in w.items()})
        relations.extend((rename.get(a, a), rename.get(b, b)) for a, b in rels)
        chains.append([rename.get(n, n) for n in ordered])
    (ps, qs) = chains
    if len(ps) > 2 and len(qs) > 2:
        relations.append((ps[1], qs[-2]))
        relations.append((qs[1], ps[-2]))
    return WeightedPoset.from_relations(weights, relations)


def build_poset(T: Triangulation, path: CrossingPath) -> WeightedPoset:
    """
    The weighted poset of a tagged geodesic.

    ``T`` is expected to be plain at the endpoints of ``path`` that are not
    enclosed by self-folded triangles (see :func:`~cluster_ideals.arcpath.reduce_tagging`).
    """
    for v in (path.start, path.end):
        if v in T.switched:
            raise ClusterIdealsError(f"Triangulation is notched at {v}; reduce the tagging first", {"vertex": v})
    if path.coincident is not None:
        return build_degenerate(T, path)
    return attach_chains(T, path, build_pcr(T, path))


# Ideal sums


def weight_monomial(T: Triangulation, w: Weight, ring: Optional[LaurentRing] = None, B=None) -> LaurentPoly:
    """yhat of the weight's arc, divided by yhat of its denominator."""
    ring = ring or ring_for(T)
    B = B if B is not None else signed_adjacency(T)
    value = yhat(T, w.arc, ring, B)
    if w.denominator is not None:
        value = value.div_exact(yhat(T, w.denominator, ring, B))
    return value


def ideal_monomials(
    T: Triangulation, P: WeightedPoset, ring: Optional[LaurentRing] = None
) -> Iterator[Tuple[FrozenSet[str], Tuple[int, ...]]]:
    """Yield each order ideal with the exponent vector of its weight product."""
    ring = ring or ring_for(T)
    B = signed_adjacency(T)
    vectors = {}
    for e in P.elements:
        ((exps, _),) = weight_monomial(T, P.weight(e), ring, B).terms()
        vectors[e] = exps
    width = len(ring.names)
    for ideal in P.ideals():
        total = [0] * width
        for e in ideal:
            for i, x in enumerate(vectors[e]):
                total[i] += x
        yield ideal, tuple(total)


def f_polynomial(T: Triangulation, P: WeightedPoset, ring: Optional[LaurentRing] = None) -> LaurentPoly:
    """
    Weighted order-ideal sum of ``P``.

    Raises:
        NonPolynomialF: if a y-variable keeps a negative exponent
    """
    ring = ring or ring_for(T)
    counts: Dict[Tuple[int, ...], int] = {}
    for _, exps in ideal_monomials(T, P, ring):
        counts[exps] = counts.get(exps, 0) + 1
    result = ring.from_terms(counts)
    if result.has_negative_y():
        raise NonPolynomialF("Ideal sum has a y-denominator", elements=len(P))
    return result
