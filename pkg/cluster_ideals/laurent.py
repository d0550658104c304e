"""
Exact Laurent polynomials in the variables x_γ and y_γ of a triangulation.

Values wrap sparse sympy ``PolyElement`` objects over ``ZZ``. The sparse
representation stores exponent tuples directly, so negative exponents are
carried through addition and multiplication unchanged; exact division is
reduced to polynomial ``exquo`` after clearing monomial content.
"""

import logging
from functools import lru_cache
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Tuple

from sympy.polys.domains import ZZ
from sympy.polys.orderings import lex
from sympy.polys.polyerrors import ExactQuotientFailed
from sympy.polys.rings import PolyRing

from .common.exceptions import NonExactDivision
from .common.utils import natural_sorted

logger = logging.getLogger(__name__)

Exponents = Tuple[int, ...]


class LaurentRing:
    """
    Variable registry: ``x<label>`` for every arc label, then ``y<label>``.

    Use :func:`laurent_ring` to obtain shared instances.
    """

    def __init__(self, labels: Tuple[str, ...]):
        self.labels = labels
        self.n = len(labels)
        self.names: Tuple[str, ...] = tuple(f"x{l}" for l in labels) + tuple(
            f"y{l}" for l in labels
        )
        self._index = {name: i for i, name in enumerate(self.names)}
        self.poly_ring = PolyRing(self.names, ZZ, lex)

    def __repr__(self) -> str:
        return f"LaurentRing({list(self.labels)})"

    def index(self, name: str) -> int:
        return self._index[name]

    def has(self, name: str) -> bool:
        return name in self._index

    def from_terms(self, terms: Mapping[Exponents, int]) -> "LaurentPoly":
        return LaurentPoly(self, self.poly_ring.from_dict(dict(terms)))

    def monomial(self, exponents: Mapping[str, int], coeff: int = 1) -> "LaurentPoly":
        """Monomial ``coeff * prod(name**e)`` from a name-to-exponent mapping."""
        vec = [0] * len(self.names)
        for name, e in exponents.items():
            vec[self._index[name]] += e
        return self.from_terms({tuple(vec): coeff})

    @property
    def one(self) -> "LaurentPoly":
        return self.from_terms({(0,) * len(self.names): 1})

    @property
    def zero(self) -> "LaurentPoly":
        return LaurentPoly(self, self.poly_ring.zero)

    def x(self, label: str) -> "LaurentPoly":
        return self.monomial({f"x{label}": 1})

    def y(self, label: str) -> "LaurentPoly":
        return self.monomial({f"y{label}": 1})

    def constant(self, c: int) -> "LaurentPoly":
        return self.from_terms({(0,) * len(self.names): c})


@lru_cache(maxsize=None)
def _ring_for(labels: Tuple[str, ...]) -> LaurentRing:
    return LaurentRing(labels)


def laurent_ring(labels: Iterable[str]) -> LaurentRing:
    """Shared ring over the given arc labels, in natural label order."""
    return _ring_for(tuple(natural_sorted(set(labels))))


class LaurentPoly:
    """An exact Laurent polynomial with integer coefficients."""

    __slots__ = ("ring", "element")

    def __init__(self, ring: LaurentRing, element):
        self.ring = ring
        self.element = element

    # Structure

    def terms(self) -> List[Tuple[Exponents, int]]:
        """Terms sorted by descending exponent tuple."""
        return sorted(((tuple(m), int(c)) for m, c in self.element.items()), reverse=True)

    def __iter__(self) -> Iterator[Tuple[Exponents, int]]:
        return iter(self.terms())

    def __len__(self) -> int:
        return len(self.element)

    @property
    def is_zero(self) -> bool:
        return not self.element

    @property
    def is_monomial(self) -> bool:
        return len(self.element) == 1

    def coefficient(self, exponents: Exponents) -> int:
        return int(self.element.get(tuple(exponents), 0))

    def _check(self, other: "LaurentPoly") -> None:
        if other.ring is not self.ring:
            raise ValueError(f"Mixing Laurent polynomials of {self.ring} and {other.ring}")

    def _coerce(self, other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            self._check(other)
            return other
        if isinstance(other, int):
            return self.ring.constant(other)
        raise TypeError(f"Cannot combine LaurentPoly with {type(other).__name__}")

    # Arithmetic

    def __add__(self, other) -> "LaurentPoly":
        other = self._coerce(other)
        return LaurentPoly(self.ring, self.element + other.element)

    __radd__ = __add__

    def __sub__(self, other) -> "LaurentPoly":
        other = self._coerce(other)
        return LaurentPoly(self.ring, self.element - other.element)

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly(self.ring, -self.element)

    def __mul__(self, other) -> "LaurentPoly":
        other = self._coerce(other)
        return LaurentPoly(self.ring, self.element * other.element)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "LaurentPoly":
        if k >= 0:
            result = self.ring.one
            for _ in range(k):
                result = result * self
            return result
        if not self.is_monomial:
            raise NonExactDivision("Only monomials have Laurent inverses", power=k)
        return self.ring.one.div_exact(self) ** (-k)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = self.ring.constant(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        if other.ring is not self.ring:
            return self.names_terms() == other.names_terms()
        return dict(self.element) == dict(other.element)

    def __hash__(self) -> int:
        return hash(tuple(self.terms()))

    def div_exact(self, other: "LaurentPoly") -> "LaurentPoly":
        """
        Exact quotient in the Laurent ring.

        Raises:
            NonExactDivision: if ``other`` does not divide ``self``
        """
        other = self._coerce(other)
        if other.is_zero:
            raise NonExactDivision("Division by zero")
        if other.is_monomial:
            (mono, c), = other.element.items()
            out: Dict[Exponents, int] = {}
            for m, a in self.element.items():
                if a % c:
                    raise NonExactDivision(
                        "Coefficient not divisible by monomial coefficient",
                        coefficient=int(a),
                        divisor=int(c),
                    )
                out[tuple(x - y for x, y in zip(m, mono))] = a // c
            return self.ring.from_terms(out)
        if self.is_zero:
            return self
        low_a = self._min_exponents()
        low_b = other._min_exponents()
        a = self._shift([-e for e in low_a])
        b = other._shift([-e for e in low_b])
        try:
            q = a.element.exquo(b.element)
        except ExactQuotientFailed as e:
            raise NonExactDivision(
                "Laurent polynomial division leaves a remainder",
                dividend_terms=len(self),
                divisor_terms=len(other),
            ) from e
        return LaurentPoly(self.ring, q)._shift([x - y for x, y in zip(low_a, low_b)])

    def _min_exponents(self) -> List[int]:
        width = len(self.ring.names)
        low = [0] * width
        first = True
        for m in self.element:
            if first:
                low = list(m)
                first = False
            else:
                low = [min(x, y) for x, y in zip(low, m)]
        return low

    def _shift(self, exps: List[int]) -> "LaurentPoly":
        return self.ring.from_terms(
            {tuple(x + y for x, y in zip(m, exps)): c for m, c in self.element.items()}
        )

    # Specialization and substitution

    def specialize(self, names: Iterable[str]) -> "LaurentPoly":
        """Set the given variables to 1."""
        idx = [self.ring.index(n) for n in names]
        out: Dict[Exponents, int] = {}
        for m, c in self.element.items():
            m = list(m)
            for i in idx:
                m[i] = 0
            key = tuple(m)
            out[key] = out.get(key, 0) + int(c)
        return self.ring.from_terms(out)

    def specialize_y(self) -> "LaurentPoly":
        """Coefficient-free specialization: every y-variable set to 1."""
        return self.specialize(self.ring.names[self.ring.n:])

    def substitute(self, images: Mapping[str, "LaurentPoly"], target: Optional[LaurentRing] = None) -> "LaurentPoly":
        """
        Replace variables by Laurent polynomials of ``target``.

        Variables without an image must also exist in ``target``. Images of
        variables occurring with negative exponents must be monomials.
        """
        target = target or self.ring
        result = target.zero
        for m, c in self.element.items():
            term = target.constant(int(c))
            plain: Dict[str, int] = {}
            for i, e in enumerate(m):
                if e == 0:
                    continue
                name = self.ring.names[i]
                if name in images:
                    term = term * (images[name] ** e)
                else:
                    plain[name] = plain.get(name, 0) + e
            if plain:
                term = term * target.monomial(plain)
            result = result + term
        return result

    # Queries

    def names_terms(self) -> Tuple[Tuple[Tuple[Tuple[str, int], ...], int], ...]:
        """Ring-independent description of the terms."""
        out = []
        for m, c in self.element.items():
            out.append((tuple((self.ring.names[i], e) for i, e in enumerate(m) if e), int(c)))
        return tuple(sorted(out))

    def y_free_part(self) -> "LaurentPoly":
        n = self.ring.n
        return self.ring.from_terms(
            {m: c for m, c in self.element.items() if not any(m[n:])}
        )

    def has_negative_y(self) -> bool:
        n = self.ring.n
        return any(e < 0 for m in self.element for e in m[n:])

    def is_nonnegative(self) -> bool:
        return all(c > 0 for c in self.element.values())

    def y_degree(self, exps: Exponents) -> int:
        return sum(exps[self.ring.n:])

    # Rendering

    def render(self) -> str:
        """
        Canonical text form ``N/D`` with ``D`` the smallest common monomial denominator.

        Products and sums are parenthesized, e.g. ``(x5*x6*x8)/(x1*x4*x7*x9)``.
        """
        if self.is_zero:
            return "0"
        width = len(self.ring.names)
        low = [min(0, e) for e in self._min_exponents()] if self.element else [0] * width
        numerator = self._shift([-e for e in low])
        num_terms = numerator.terms()
        num = " + ".join(_render_term(self.ring, m, c, i == 0) for i, (m, c) in enumerate(num_terms))
        num = num.replace("+ -", "- ")
        if not any(low):
            return num
        den = _render_monomial(self.ring, [-e for e in low])
        if len(num_terms) > 1 or "*" in num:
            num = f"({num})"
        if "*" in den:
            den = f"({den})"
        return f"{num}/{den}"

    def __str__(self) -> str:
        return self.render()

    def __repr__(self) -> str:
        return f"LaurentPoly({self.render()})"


def _render_monomial(ring: LaurentRing, exps: Iterable[int]) -> str:
    factors = []
    for name, e in zip(ring.names, exps):
        if e == 1:
            factors.append(name)
        elif e:
            factors.append(f"{name}^{e}")
    return "*".join(factors) if factors else "1"


def _render_term(ring: LaurentRing, exps: Exponents, c: int, first: bool) -> str:
    mono = _render_monomial(ring, exps)
    if mono == "1":
        return str(c)
    if c == 1:
        return mono
    if c == -1:
        return f"-{mono}"
    return f"{c}*{mono}"


def ring_for(T) -> LaurentRing:
    """The Laurent ring of a triangulation's arc labels."""
    return laurent_ring(T.arcs)


def yhat(T, gamma: str, ring: Optional[LaurentRing] = None, B=None) -> LaurentPoly:
    """
    The monomial y_γ · ∏ x_β^{b_βγ}.

    Args:
        T: triangulation containing ``gamma``
        gamma: arc label
        ring: ring to build the monomial in (defaults to the ring of ``T``)
        B: precomputed exchange matrix of ``T``

    Returns:
        LaurentPoly monomial
    """
    from .surface import signed_adjacency

    ring = ring or ring_for(T)
    B = B if B is not None else signed_adjacency(T)
    exps = {f"y{gamma}": 1}
    for beta, b in B.column(gamma).items():
        if b:
            exps[f"x{beta}"] = exps.get(f"x{beta}", 0) + b
    return ring.monomial(exps)
