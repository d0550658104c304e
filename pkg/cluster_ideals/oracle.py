"""
Principal-coefficient seed mutation along flip sequences.

The oracle never looks at posets: it mutates the seed of the initial
triangulation, dividing exactly at every step, and reads g-vectors and
F-polynomials off the resulting Laurent polynomials. The formula in
:mod:`cluster_ideals.shear` is checked against it.
"""

import logging
from collections import deque
from dataclasses import dataclass
from typing import Deque, Dict, FrozenSet, Iterator, List, Mapping, Optional, Tuple

import numpy as np

from .arcpath import (
    CrossingPath,
    align,
    arc_path,
    check_geodesic,
    find_arc,
    flip_path,
    path_key,
    reduce_tagging,
    rewrite_under_flip,
    transport,
)
from .common.config import get_bfs_budget, get_max_steer_flips
from .common.exceptions import (
    BFSBudgetExceeded,
    MultipleYFreeTerms,
    OracleError,
    SteeringStuck,
    handle_oracle_error,
)
from .common.types import Tag
from .common.utils import natural_sorted
from .laurent import LaurentPoly, LaurentRing, ring_for
from .surface import ExchangeMatrix, Triangulation, flip_triangulation, signed_adjacency

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class Seed:
    """
    A seed of the principal-coefficient cluster algebra of a triangulation.

    ``matrix`` is the extended exchange matrix: the exchange matrix of the
    current triangulation on top, one coefficient row per initial arc below.
    Flips keep arc labels, so rows and columns are always indexed by
    ``labels``.
    """

    triangulation: Triangulation
    labels: Tuple[str, ...]
    matrix: np.ndarray
    cluster: Mapping[str, LaurentPoly]
    ring: LaurentRing
    flips: Tuple[str, ...] = ()

    @property
    def rank(self) -> int:
        return len(self.labels)

    def index(self, label: str) -> int:
        return self.labels.index(label)

    def variable(self, label: str) -> LaurentPoly:
        return self.cluster[label]

    def exchange_matrix(self) -> ExchangeMatrix:
        return ExchangeMatrix(self.labels, self.matrix[: self.rank])

    def coefficient_rows(self) -> Dict[str, Dict[str, int]]:
        """Initial label -> (current arc -> entry of that coefficient row)."""
        n = self.rank
        return {
            initial: {label: int(self.matrix[n + i, j]) for j, label in enumerate(self.labels)}
            for i, initial in enumerate(self.labels)
        }


def initial_seed(T: Triangulation) -> Seed:
    """Exchange matrix of ``T`` stacked on the identity, cluster the initial variables."""
    B = signed_adjacency(T)
    n = len(B.labels)
    matrix = np.vstack([B.matrix, np.eye(n, dtype=np.int64)])
    ring = ring_for(T)
    cluster = {label: ring.x(label) for label in B.labels}
    return Seed(T, tuple(B.labels), matrix, cluster, ring)


def mutate_matrix(M: np.ndarray, k: int) -> np.ndarray:
    """Matrix mutation in direction ``k`` of an extended exchange matrix."""
    col = M[:, k]
    row = M[k, :]
    out = M + (np.abs(col)[:, None] * row[None, :] + col[:, None] * np.abs(row)[None, :]) // 2
    out[:, k] = -M[:, k]
    out[k, :] = -M[k, :]
    return out


@handle_oracle_error
def mutate(seed: Seed, gamma: str) -> Seed:
    """
    Mutate ``seed`` at the arc ``gamma`` and flip its triangulation alongside.

    Raises:
        NonExactDivision: if the exchange binomial is not divisible by the old variable
        OracleError: if the mutated matrix disagrees with the flipped triangulation
    """
    k = seed.index(gamma)
    n = seed.rank
    col = seed.matrix[:, k]
    ring = seed.ring
    plus, minus = ring.one, ring.one
    for i, label in enumerate(seed.labels):
        b = int(col[i])
        if b > 0:
            plus = plus * seed.cluster[label] ** b
        elif b < 0:
            minus = minus * seed.cluster[label] ** (-b)
    y_plus = {f"y{label}": int(col[n + i]) for i, label in enumerate(seed.labels) if col[n + i] > 0}
    y_minus = {f"y{label}": -int(col[n + i]) for i, label in enumerate(seed.labels) if col[n + i] < 0}
    binomial = plus * ring.monomial(y_plus) + minus * ring.monomial(y_minus)
    new_variable = binomial.div_exact(seed.cluster[gamma])

    matrix = mutate_matrix(seed.matrix, k)
    T = flip_triangulation(seed.triangulation, gamma)
    expected = signed_adjacency(T)
    if not np.array_equal(expected.matrix, matrix[:n]):
        raise OracleError(
            f"Matrix mutation at {gamma} disagrees with the flipped triangulation",
            {"flips": list(seed.flips) + [gamma]},
        )
    cluster = dict(seed.cluster)
    cluster[gamma] = new_variable
    logger.debug("Mutated at %s: new variable has %d terms", gamma, len(new_variable))
    return Seed(T, seed.labels, matrix, cluster, ring, seed.flips + (gamma,))


def mutate_along(seed: Seed, flips: Tuple[str, ...]) -> Seed:
    for gamma in flips:
        seed = mutate(seed, gamma)
    return seed


def split_F_and_g(value: LaurentPoly, subject: str = "variable") -> Tuple[LaurentPoly, LaurentPoly]:
    """
    Split a Laurent polynomial into its F-polynomial part and g-vector monomial.

    Returns:
        ``(F, g)`` with ``value == g * F``; F stays expanded in x and y.

    Raises:
        MultipleYFreeTerms: if the y-degree-zero part is not a single monomial
    """
    g = value.y_free_part()
    if not g.is_monomial:
        raise MultipleYFreeTerms(
            f"{subject} has {len(g)} y-free terms", {"subject": subject, "y_free": g.render()}
        )
    return value.div_exact(g), g


def oracle_F_and_g(seed: Seed, label: str) -> Tuple[LaurentPoly, LaurentPoly]:
    """Split the seed variable of ``label``, see :func:`split_F_and_g`."""
    return split_F_and_g(seed.variable(label), f"Variable of {label}")


# Steering


@dataclass
class SteerResult:
    """
    Flips leading from the initial triangulation to one containing a tagged arc.

    A path along the loop of a self-folded triangle is matched by the loop
    and interior pair; ``partner`` then names the interior arc and the
    variable is the product of both.
    """

    flips: Tuple[str, ...]
    seed: Seed
    label: str
    path: CrossingPath
    searched: bool = False
    partner: Optional[str] = None

    @property
    def variable(self) -> LaurentPoly:
        value = self.seed.variable(self.label)
        if self.partner is not None:
            value = value * self.seed.variable(self.partner)
        return value


def _tag_at(T: Triangulation, v: str) -> Tag:
    return Tag.NOTCHED if v in T.switched else Tag.PLAIN


def match_arc(T: Triangulation, path: CrossingPath) -> Optional[Tuple[str, Optional[str]]]:
    """
    The arc of ``T`` that ``path`` runs along, as ``(label, partner)``.

    Tagged arcs give ``(label, None)``. A loop around the puncture of a
    self-folded triangle, plain or notched at its base as the pair is,
    gives ``(loop, interior)``.
    """
    label = find_arc(T, path)
    if label is not None:
        return label, None
    if path.coincident is None:
        return None
    fold = T.loops.get(T.edge(path.coincident).label)
    if fold is None or path.start != fold.base or path.end != fold.base:
        return None
    tag = _tag_at(T, fold.base)
    if path.start_tag is tag and path.end_tag is tag:
        return fold.loop, fold.interior
    return None


def _greedy_step(T: Triangulation, path: CrossingPath) -> Optional[Tuple[str, CrossingPath]]:
    """The crossed arc whose flip removes the most crossings, if any flip removes one."""
    best = None
    for gamma in natural_sorted(set(path.crossings(T))):
        rewritten = rewrite_under_flip(T, gamma, path)
        if rewritten.n_crossings < path.n_crossings or rewritten.is_coincident:
            if best is None or rewritten.n_crossings < best[1].n_crossings:
                best = (gamma, rewritten)
    return best


def _mismatched_ends(T: Triangulation, path: CrossingPath) -> List[Tuple[str, Tag]]:
    labels = T.arcs_on_edge(path.coincident)  # type: ignore[arg-type]
    out = []
    for v, tag in ((path.start, path.start_tag), (path.end, path.end_tag)):
        ok = False
        for label in labels:
            arc = T.tagged_arc(label)
            if (arc.start == v and arc.start_tag is tag) or (arc.end == v and arc.end_tag is tag):
                ok = True
        if not ok:
            out.append((v, tag))
    return out


def _lower_degree(T: Triangulation, v: str, on_edge: set, keep: Optional[str]) -> str:
    """A flip lowering the degree of ``v``; flips leaving ``keep`` with degree one come last."""
    degree = T.degree(v)
    fallback = None
    for gamma in T.arcs:
        if gamma in on_edge or v not in T.arc_endpoints(gamma):
            continue
        flipped = flip_triangulation(T, gamma)
        if flipped.degree(v) >= degree:
            continue
        if keep is not None and T.is_puncture(keep) and flipped.degree(keep) < 2:
            fallback = fallback or gamma
            continue
        return gamma
    if fallback is not None:
        return fallback
    raise SteeringStuck(f"No flip lowers the degree of {v}", {"vertex": v})


def _tag_step(T: Triangulation, path: CrossingPath) -> str:
    """
    One flip moving a coincident path toward matching tags.

    A mismatched end is folded into a self-folded triangle around it. When
    the other end already carries such a triangle and must be notched, the
    interior arc is flipped, which switches the tagging there for good.
    """
    ends = _mismatched_ends(T, path)
    if not ends:
        raise SteeringStuck("Coincident path has matching tags but no arc", {"path": str(path)})
    v, tag = ends[-1]
    other = path.start if v == path.end else path.end
    edge = T.edge(path.coincident).label  # type: ignore[arg-type]
    fold = T.self_folded.get(edge) or T.loops.get(edge)
    if fold is not None and fold.puncture != v:
        wanted = path.start_tag if path.start == fold.puncture else path.end_tag
        if wanted is Tag.NOTCHED and fold.puncture not in T.switched:
            return fold.interior
        return fold.loop
    on_edge = set(T.arcs_on_edge(path.coincident))  # type: ignore[arg-type]
    if T.degree(v) > 1:
        return _lower_degree(T, v, on_edge, other if other != v else None)
    if fold is None:
        raise SteeringStuck(f"{v} has degree one outside a self-folded triangle", {"vertex": v})
    return fold.interior if tag is Tag.NOTCHED else fold.loop


def _greedy(
    T: Triangulation, path: CrossingPath, limit: int
) -> Tuple[Tuple[str, ...], Tuple[str, Optional[str]], CrossingPath]:
    flips: List[str] = []
    while len(flips) < limit:
        found = match_arc(T, path)
        if found is not None:
            return tuple(flips), found, path
        if path.is_coincident:
            gamma = _tag_step(T, path)
            T, path = flip_path(T, gamma, path)
        else:
            step = _greedy_step(T, path)
            if step is None:
                raise SteeringStuck("No flip decreases the crossing count", {"crossings": path.n_crossings})
            gamma, rewritten = step
            T, path = flip_triangulation(T, gamma), rewritten
        flips.append(gamma)
    raise SteeringStuck(f"Steering did not finish within {limit} flips", {"flips": flips})


def arc_keys(T: Triangulation) -> Dict[str, Tuple]:
    """Label -> path key of every arc of ``T``, relative to ``T`` itself."""
    return {label: path_key(T, arc_path(T, label)) for label in T.arcs}


def _state(keys: Mapping[str, Tuple]) -> FrozenSet[Tuple]:
    return frozenset(keys.values())


def _search(
    T: Triangulation, path: CrossingPath, budget: int
) -> Tuple[Tuple[str, ...], Tuple[str, Optional[str]], CrossingPath]:
    """
    Breadth-first search over flip sequences for a triangulation containing ``path``.

    Triangulations are identified by their sets of tagged arcs, each written
    relative to ``T``.
    """
    root = arc_keys(T)
    queue: Deque[Tuple[Tuple[Triangulation, ...], CrossingPath, Tuple[str, ...], Dict[str, Tuple]]] = deque(
        [((T,), path, (), root)]
    )
    seen = {_state(root)}
    explored = 0
    while queue:
        chain, p, flips, keys = queue.popleft()
        cur = chain[-1]
        found = match_arc(cur, p)
        if found is not None:
            logger.debug("Search found %s after %d nodes", found[0], explored)
            return flips, found, p
        explored += 1
        if explored > budget:
            raise BFSBudgetExceeded("Flip search exhausted its budget", budget=budget, explored=explored)
        for gamma in cur.arcs:
            nxt, q = flip_path(cur, gamma, p)
            moved = flips + (gamma,)
            longer = chain + (nxt,)
            nxt_keys = dict(keys)
            nxt_keys[gamma] = path_key(T, path_of_new_arc(longer, moved, gamma))
            state = _state(nxt_keys)
            if state in seen:
                continue
            seen.add(state)
            queue.append((longer, q, moved, nxt_keys))
    raise BFSBudgetExceeded("Flip graph exhausted without reaching the arc", budget=budget, explored=explored)


@handle_oracle_error
def steer_to(T: Triangulation, path: CrossingPath, budget: Optional[int] = None) -> SteerResult:
    """
    Find flips from ``T`` to a triangulation containing the tagged arc ``path``.

    The tagging is reduced first. Tag switching keeps labels and exchange
    matrices, so flips found for the reduced triangulation apply to ``T``
    unchanged. Greedy crossing reduction runs next, then tag resolution at
    notched ends; if either gets stuck, breadth-first search takes over.

    Raises:
        BFSBudgetExceeded: if the fallback search exceeds its node budget
    """
    check_geodesic(T, path)
    reduced, rpath, _ = reduce_tagging(T, path)
    searched = False
    try:
        flips, found, final = _greedy(reduced, rpath, get_max_steer_flips())
    except SteeringStuck as e:
        logger.warning("Steering fell back to search: %s", e.message)
        flips, found, final = _search(reduced, rpath, get_bfs_budget(budget))
        searched = True
    label, partner = found
    seed = mutate_along(initial_seed(T), flips)
    logger.debug("Steered to %s with %d flips", label, len(flips))
    return SteerResult(flips, seed, label, final, searched, partner)


# Exploration


@dataclass
class Discovery:
    """A tagged arc first reached by :func:`explore`."""

    label: str
    seed: Seed
    path: CrossingPath
    key: Tuple
    initial: bool = False
    tracked: Optional[Dict[str, CrossingPath]] = None

    @property
    def flips(self) -> Tuple[str, ...]:
        return self.seed.flips

    @property
    def variable(self) -> LaurentPoly:
        return self.seed.variable(self.label)


@dataclass
class _Node:
    seed: Seed
    chain: Tuple[Triangulation, ...]
    tracked: Dict[str, CrossingPath]
    keys: Dict[str, Tuple]


def path_of_new_arc(chain: Tuple[Triangulation, ...], flips: Tuple[str, ...], label: str) -> CrossingPath:
    """
    Express an arc of the last triangulation of ``chain`` relative to the first.

    ``chain[i + 1]`` is ``chain[i]`` flipped at ``flips[i]``. Flipping the
    same label again undoes a flip up to triangle ids, which :func:`align`
    restores.
    """
    T = chain[-1]
    path = arc_path(T, label)
    for i in range(len(flips) - 1, -1, -1):
        back, path = flip_path(T, flips[i], path)
        path = transport(path, align(back, chain[i]))
        T = chain[i]
    return path


def explore(
    T: Triangulation,
    depth: Optional[int] = None,
    budget: Optional[int] = None,
    track: bool = False,
) -> Iterator[Discovery]:
    """
    Breadth-first exploration of the flip graph of ``T``.

    Yields every tagged arc once, in order of discovery, initial arcs first.
    With ``track`` each discovery also carries the initial arcs re-expressed
    in the discovering triangulation. Triangulations are told apart by their
    sets of tagged arcs written relative to ``T``; on surfaces with mapping
    classes the labeled gluing alone does not separate them.
    """
    budget = get_bfs_budget(budget)
    root = initial_seed(T)
    tracked = {label: arc_path(T, label) for label in T.arcs} if track else {}
    keys = arc_keys(T)
    seen_arcs = set()
    for label in T.arcs:
        path = arc_path(T, label)
        seen_arcs.add(keys[label])
        yield Discovery(label, root, path, keys[label], initial=True, tracked=dict(tracked) if track else None)

    queue: Deque[Tuple[_Node, int]] = deque([(_Node(root, (T,), tracked, keys), 0)])
    visited = {_state(keys)}
    while queue:
        node, d = queue.popleft()
        if depth is not None and d >= depth:
            continue
        cur = node.seed.triangulation
        for gamma in cur.arcs:
            chain = node.chain + (flip_triangulation(cur, gamma),)
            path = path_of_new_arc(chain, node.seed.flips + (gamma,), gamma)
            key = path_key(T, path)
            nxt_keys = dict(node.keys)
            nxt_keys[gamma] = key
            state = _state(nxt_keys)
            if state in visited:
                continue
            visited.add(state)
            if len(visited) > budget:
                raise BFSBudgetExceeded("Exploration exceeded its budget", budget=budget, explored=len(visited))
            seed = mutate(node.seed, gamma)
            moved = {k: rewrite_under_flip(cur, gamma, p) for k, p in node.tracked.items()}
            if key not in seen_arcs:
                seen_arcs.add(key)
                yield Discovery(gamma, seed, path, key, tracked=dict(moved) if track else None)
            queue.append((_Node(seed, chain, moved, nxt_keys), d + 1))
    logger.debug("Explored %d triangulations, %d tagged arcs", len(visited), len(seen_arcs))
