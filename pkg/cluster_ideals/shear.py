"""
Shear coordinates, g-vector monomials and the assembled cluster-variable formula.

Shear coordinates are read off an unrolled curve one crossing at a time:
a crossing between a right-turning and a left-turning segment traverses
the quadrilateral of the crossed arc in an S or Z shape and contributes
``+1`` or ``-1``. Interior edges of self-folded triangles take the loop's
coordinate of the curve with its spirals at the enclosed puncture reversed.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Optional

from .arcpath import (
    CrossingPath,
    Curve,
    check_geodesic,
    elementary_lamination,
    find_arc,
    kappa,
    oriented_turn,
    reduce_tagging,
    unroll,
)
from .common.config import is_mirrored
from .common.exceptions import SpiralTruncationViolation
from .common.types import Segment, Turn
from .common.utils import log_variable, natural_sorted
from .laurent import LaurentPoly, LaurentRing, ring_for
from .poset import WeightedPoset, build_poset, f_polynomial, is_loop_curve
from .surface import Triangulation

logger = logging.getLogger(__name__)

ShearVector = Dict[str, int]


def _contribution(before: Segment, after: Segment, mirrored: bool) -> int:
    u = oriented_turn(before, mirrored)
    v = oriented_turn(after, mirrored)
    if u is None or v is None or u is v:
        return 0
    return 1 if u is Turn.RIGHT else -1


def _raw_shears(T: Triangulation, curve: Curve, turns: Optional[int]) -> ShearVector:
    """Crossing contributions of every arc except interior edges of self-folded triangles."""
    mirrored = is_mirrored()
    unrolled = unroll(T, curve, turns)
    segs = unrolled.segments
    out: ShearVector = {label: 0 for label in T.arcs}
    for k, slot in enumerate(unrolled.crossing_slots()):
        label = T.edge(slot).label
        if label in T.self_folded:
            continue
        value = _contribution(segs[k], segs[k + 1], mirrored)
        if value and k in unrolled.outer:
            raise SpiralTruncationViolation(
                f"Outermost spiral turn contributes {value} at arc {label}",
                arc=label,
                crossing=k,
            )
        out[label] += value
    return out


def shear_coords(T: Triangulation, curve: Curve, turns: Optional[int] = None) -> ShearVector:
    """
    Shear coordinates of ``curve`` with respect to the tagged triangulation ``T``.

    Spirals at notched punctures of ``T`` are reversed first, so the
    computation runs on the ordinary triangulation.

    Raises:
        SpiralTruncationViolation: if the extra unrolled turn of a spiral
            contributes, meaning the truncation is too short
    """
    for p in natural_sorted(T.switched):
        curve = curve.with_reversed_spirals_at(p)
    result = _raw_shears(T, curve, turns)
    for fold in T.self_folded.values():
        spirals_in = any(
            end.spirals and end.vertex == fold.puncture for end in (curve.start, curve.end)
        )
        if spirals_in:
            reversed_curve = curve.with_reversed_spirals_at(fold.puncture)
            result[fold.interior] = _raw_shears(T, reversed_curve, turns)[fold.loop]
        else:
            result[fold.interior] = result[fold.loop]
    return result


def lamination_shears(T: Triangulation, path: CrossingPath) -> ShearVector:
    """Shear coordinates of the elementary lamination of a tagged arc given as a path in ``T``."""
    return shear_coords(T, elementary_lamination(T, path))


def coefficient_rows(T: Triangulation, paths: Mapping[str, CrossingPath]) -> Dict[str, ShearVector]:
    """
    Coefficient rows predicted by elementary laminations.

    Args:
        T: current triangulation
        paths: initial arc label -> that arc re-expressed as a path in ``T``

    Returns:
        initial label -> (arc of ``T`` -> shear coordinate)
    """
    return {label: lamination_shears(T, path) for label, path in paths.items()}


# g-vectors


def _monomial(ring: LaurentRing, exponents: Mapping[str, int]) -> LaurentPoly:
    return ring.monomial({f"x{label}": e for label, e in exponents.items() if e})


def g_monomial(T: Triangulation, path: CrossingPath, ring: Optional[LaurentRing] = None) -> LaurentPoly:
    """
    The monomial g = prod x_gamma^(-b_gamma) of the curve kappa(path).

    Arcs of ``T`` give their own variable. A path along the loop of a
    self-folded triangle gives the product of the loop and interior variables.
    """
    ring = ring or ring_for(T)
    T, path, _ = reduce_tagging(T, path)
    label = find_arc(T, path)
    if label is not None:
        return ring.x(label)
    if is_loop_curve(T, path):
        fold = T.loops[T.edge(path.coincident).label]  # type: ignore[arg-type]
        return ring.x(fold.loop) * ring.x(fold.interior)
    b = shear_coords(T, kappa(T, path))
    return _monomial(ring, {label: -v for label, v in b.items()})


# Cluster variables


@dataclass
class Expansion:
    """A cluster variable together with the pieces of its formula."""

    path: CrossingPath
    reduced: Triangulation
    reduced_path: CrossingPath
    poset: WeightedPoset
    g: LaurentPoly
    f: LaurentPoly
    value: LaurentPoly
    arc: Optional[str] = None
    notes: List[str] = field(default_factory=list)

    @property
    def coefficient_free(self) -> LaurentPoly:
        return self.value.specialize_y()

    @property
    def f_in_y(self) -> LaurentPoly:
        """The F-polynomial in the y variables alone (``f`` is it evaluated at the yhats)."""
        ring = self.f.ring
        return self.f.specialize(ring.names[: ring.n])

    def render(self, coefficient_free: bool = False) -> Dict[str, str]:
        if coefficient_free:
            return {
                "g": self.g.render(),
                "F": self.f.specialize_y().render(),
                "x": self.coefficient_free.render(),
            }
        return {"g": self.g.render(), "F": self.f_in_y.render(), "x": self.value.render()}


def expand(T: Triangulation, path: CrossingPath, ring: Optional[LaurentRing] = None) -> Expansion:
    """
    Evaluate the poset formula x = g * F(P) for a tagged geodesic.

    The tagging is reduced first; labels keep denoting the switched
    counterparts of their arcs, so the result is already expressed in the
    variables of ``T``.
    """
    check_geodesic(T, path)
    ring = ring or ring_for(T)
    reduced, rpath, _ = reduce_tagging(T, path)
    label = find_arc(reduced, rpath)
    if label is not None:
        x = ring.x(label)
        return Expansion(path, reduced, rpath, WeightedPoset.empty(), x, ring.one, x, arc=label)
    poset = build_poset(reduced, rpath)
    g = g_monomial(reduced, rpath, ring)
    f = f_polynomial(reduced, poset, ring)
    value = g * f
    log_variable(logger, "Cluster variable", value.render(), len(value))
    logger.debug("Poset has %d elements and %d covers", len(poset), len(poset.covers()))
    return Expansion(path, reduced, rpath, poset, g, f, value)


def cluster_variable(T: Triangulation, path: CrossingPath, ring: Optional[LaurentRing] = None) -> LaurentPoly:
    """Principal-coefficient cluster variable (laminated lambda length) of ``path``."""
    return expand(T, path, ring).value


def coefficient_free(T: Triangulation, path: CrossingPath, ring: Optional[LaurentRing] = None) -> LaurentPoly:
    """The cluster variable with every y set to 1."""
    return expand(T, path, ring).coefficient_free


# Alternative multilamination


def alternative_weights(T: Triangulation) -> Dict[str, Dict[str, int]]:
    """
    y-exponents of the alternative multilamination, one per edge of the ordinary triangulation.

    Interior edges of self-folded triangles weigh y_interior / y_loop, loops
    weigh y_loop, and every other arc its own y.
    """
    out: Dict[str, Dict[str, int]] = {}
    for label in T.arcs:
        fold = T.self_folded.get(label)
        if fold is not None:
            out[label] = {f"y{label}": 1, f"y{fold.loop}": -1}
        else:
            out[label] = {f"y{label}": 1}
    return out


def lifted_lengths(T: Triangulation) -> Dict[str, Dict[str, int]]:
    """
    x-exponents of the lambda lengths of the edges of the ordinary triangulation.

    A loop of a self-folded triangle has length x_loop * x_interior.
    """
    out: Dict[str, Dict[str, int]] = {}
    for label in T.arcs:
        fold = T.loops.get(label)
        if fold is not None:
            out[label] = {f"x{label}": 1, f"x{fold.interior}": 1}
        else:
            out[label] = {f"x{label}": 1}
    return out
