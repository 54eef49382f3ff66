"""Rational intersection ring of the resolved manifold.

Conventions: T^n is oriented by dx_1 ^ ... ^ dx_n, every coordinate subtorus
by its free coordinates in ascending order (times its ``orientation`` flag),
and a transverse intersection Y . Z is oriented by the frame rule: a basis e of
Y n Z is positive when (e, e', e'') is positive in the ambient space, where
(e, e') and (e, e'') are positive bases of Y and Z.  With this rule

    u . v = (-1)^((n - dim u)(n - dim v)) v . u.

Torus generators are normalized as pushforwards pi_*[A] of their 1/3-offset
representatives, so a pair of dual torus cycles meets |Gamma| times.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product as cartesian
from typing import Iterable, Optional, Sequence

from . import cohomology as coh
from .cohomology import Monomial
from .fixed_loci import AffineSubtorus
from .resolution import GeneratorCatalogue, RingGenerator

# self-intersection of the exceptional CP^1 in the resolved C^2/{+-1}
EXCEPTIONAL_SELF_INTERSECTION = -2


class NonComplementary(ValueError):
    pass


class DimensionTooLow(ValueError):
    pass


class SingularIntersection(RuntimeError):
    """Representative tori meet on the singular set, so counting in T^n is invalid."""


# ---------------------------------------------------------------------------
# transverse products of coordinate subtori


def frame_product(
    a: Monomial, a_orientation: int, b: Monomial, b_orientation: int, ambient: Monomial
) -> Optional[tuple[int, Monomial]]:
    """Oriented intersection of coordinate subtori free on ``a`` and ``b``.

    Both live in a coordinate torus free on ``ambient``.  Returns
    ``(sign, a & b)`` with the intersection carrying ``sign`` times its
    ascending orientation, or None if the subtori are not transverse.  A
    non-transverse pair shares an offset direction and can be pushed apart,
    so it contributes zero.
    """
    if (a | b) != ambient:
        return None
    w = a & b
    a_rest, b_rest = a & ~w, b & ~w
    # positive bases (e, e') of Y and (e, e'') of Z
    sign = a_orientation * coh.wedge_sign(w, a_rest)
    sign *= b_orientation * coh.wedge_sign(w, b_rest)
    # orientation of (e, e', e'') in the ambient subtorus
    sign *= coh.wedge_sign(w, a_rest) * coh.wedge_sign(w | a_rest, b_rest)
    return sign, w


def intersection_point(a: AffineSubtorus, b: AffineSubtorus) -> tuple[Fraction, ...]:
    if a.free & b.free or (a.free | b.free) != coh.top(a.n):
        raise NonComplementary("subtori do not split the coordinates")
    return tuple(x if x is not None else y for x, y in zip(a.offsets, b.offsets))


def subtorus_intersection_number(a: AffineSubtorus, b: AffineSubtorus) -> int:
    """Signed intersection number of complementary-dimensional coordinate subtori."""
    if a.n != b.n:
        raise NonComplementary("subtori live in tori of different dimensions")
    if a.dimension + b.dimension != a.n:
        raise NonComplementary(
            f"dimensions {a.dimension} + {b.dimension} do not add up to {a.n}"
        )
    result = frame_product(a.free, a.orientation, b.free, b.orientation, coh.top(a.n))
    if result is None:
        # parallel in a shared free direction: disjoint, or displaceable
        return 0
    return result[0]


# ---------------------------------------------------------------------------
# ring elements


@dataclass(frozen=True)
class RingElement:
    """Homogeneous rational combination of generators.

    Dimension-0 results are multiples of the point class and live in
    ``scalar``.  ``provenance`` is "computed", or "theorem" for entries set
    to zero by convention rather than by a geometric argument.
    """

    dimension: int
    terms: tuple[tuple[RingGenerator, Fraction], ...] = ()
    scalar: Fraction = Fraction(0)
    provenance: str = "computed"

    @classmethod
    def zero(cls, dimension: int, provenance: str = "computed") -> "RingElement":
        return cls(dimension, provenance=provenance)

    @classmethod
    def point(cls, value) -> "RingElement":
        return cls(0, scalar=Fraction(value))

    @classmethod
    def of(cls, generator: RingGenerator, coefficient=1) -> "RingElement":
        c = Fraction(coefficient)
        return cls(generator.dimension, ((generator, c),) if c else ())

    @classmethod
    def combination(cls, dimension: int, pairs: Iterable[tuple[RingGenerator, Fraction]]) -> "RingElement":
        acc: dict[RingGenerator, Fraction] = {}
        order: list[RingGenerator] = []
        for g, c in pairs:
            if g.dimension != dimension:
                raise ValueError("inhomogeneous ring element")
            if g not in acc:
                order.append(g)
                acc[g] = Fraction(0)
            acc[g] += c
        return cls(dimension, tuple((g, acc[g]) for g in order if acc[g]))

    def is_zero(self) -> bool:
        return not self.terms and not self.scalar

    def scale(self, c) -> "RingElement":
        c = Fraction(c)
        return RingElement(
            self.dimension,
            tuple((g, c * x) for g, x in self.terms if c * x),
            c * self.scalar,
            self.provenance,
        )

    def __add__(self, other: "RingElement") -> "RingElement":
        if self.dimension != other.dimension:
            raise ValueError("cannot add ring elements of different dimensions")
        if self.dimension == 0:
            return RingElement.point(self.scalar + other.scalar)
        return RingElement.combination(self.dimension, self.terms + other.terms)

    def equals(self, other: "RingElement") -> bool:
        """Equality of values, ignoring provenance."""
        return (
            self.dimension == other.dimension
            and self.scalar == other.scalar
            and dict(self.terms) == dict(other.terms)
        )

    def coefficient(self, generator: RingGenerator) -> Fraction:
        for g, c in self.terms:
            if g == generator:
                return c
        return Fraction(0)

    def as_dict(self) -> dict:
        out = {"dimension": self.dimension, "provenance": self.provenance}
        if self.dimension == 0:
            out["scalar"] = str(self.scalar)
        else:
            out["terms"] = {g.name: str(c) for g, c in self.terms}
        return out

    def __str__(self) -> str:
        if self.dimension == 0:
            return str(self.scalar)
        if not self.terms:
            return "0"
        parts = []
        for g, c in self.terms:
            if c == 1:
                parts.append(g.name)
            elif c == -1:
                parts.append(f"-{g.name}")
            else:
                parts.append(f"{c}*{g.name}")
        return " + ".join(parts).replace("+ -", "- ")


# ---------------------------------------------------------------------------
# products of generators


def _group_images(catalogue: GeneratorCatalogue, g: RingGenerator) -> list[AffineSubtorus]:
    """gamma(A) for every gamma in Gamma, with multiplicity."""
    rep = g.representative(catalogue.n)
    return [rep.image(h) for h in catalogue.group]


def _singular_tori(catalogue: GeneratorCatalogue) -> list[AffineSubtorus]:
    return [m for o in catalogue.orbits for m in o.members]


def quotient_pairing(catalogue: GeneratorCatalogue, a: RingGenerator, b: RingGenerator) -> int:
    """Intersection number of two torus cycles of complementary dimension.

    Counts signed intersections of all Gamma-images of the two
    representatives in T^n and divides by |Gamma|.  Every intersection point
    must avoid the singular tori.
    """
    if not (a.is_torus and b.is_torus):
        raise TypeError("quotient_pairing takes torus cycles")
    n = catalogue.n
    if a.dimension + b.dimension != n:
        raise NonComplementary(f"{a.name} and {b.name} are not complementary")
    singular = _singular_tori(catalogue)
    total = 0
    for x, y in cartesian(_group_images(catalogue, a), _group_images(catalogue, b)):
        s = subtorus_intersection_number(x, y)
        if s:
            p = intersection_point(x, y)
            if any(t.contains(p) for t in singular):
                raise SingularIntersection(f"{a.name} and {b.name} meet at singular point {p}")
        total += s
    value = Fraction(total, catalogue.group.order)
    if value.denominator != 1:
        raise ArithmeticError(f"non-integral pairing {value} for {a.name}, {b.name}")
    return int(value)


def monomial_pairing(catalogue: GeneratorCatalogue, a: RingGenerator, b: RingGenerator) -> int:
    """Shortcut for ``quotient_pairing``: |Gamma| times the exterior-algebra sign."""
    if a.support & b.support:
        return 0
    return catalogue.group.order * coh.wedge_sign(a.support, b.support) * a.orientation * b.orientation


def _meets_orbit(catalogue: GeneratorCatalogue, torus: RingGenerator, orbit: int) -> bool:
    members = catalogue.orbits[orbit].members
    return any(x.intersects(t) for x in _group_images(catalogue, torus) for t in members)


def _torus_class(catalogue: GeneratorCatalogue, support: Monomial, coefficient, dimension: int) -> RingElement:
    if dimension == 0:
        return RingElement.point(coefficient)
    g = catalogue.torus_generator(support)
    if g is None:
        # no invariant class: the subtorus is rationally null-homologous
        return RingElement.zero(dimension)
    return RingElement.of(g, Fraction(coefficient) * g.orientation)


def product(catalogue: GeneratorCatalogue, a: RingGenerator, b: RingGenerator) -> RingElement:
    """Intersection a . b of two catalogued generators."""
    n = catalogue.n
    d = a.dimension + b.dimension - n
    if d < 0:
        raise DimensionTooLow(f"dim {a.name} + dim {b.name} < {n}")

    if a.is_torus and b.is_torus:
        if d == 0:
            return RingElement.point(quotient_pairing(catalogue, a, b))
        # pi^! is injective and multiplicative and pi^! pi_* = |Gamma| on these
        # classes, so the product is |Gamma| times the product upstairs
        result = frame_product(a.support, a.orientation, b.support, b.orientation, coh.top(n))
        if result is None:
            return RingElement.zero(d)
        sign, w = result
        return _torus_class(catalogue, w, catalogue.group.order * sign, d)

    if a.is_exceptional and b.is_exceptional:
        if a.orbit != b.orbit:
            return RingElement.zero(d)
        base = catalogue.orbits[a.orbit].homology_class
        result = frame_product(a.support, a.orientation, b.support, b.orientation, base)
        if result is None:
            return RingElement.zero(d)
        sign, w = result
        # base intersection times the CP^1 self-intersection in the fibre over it
        return _torus_class(catalogue, w, EXCEPTIONAL_SELF_INTERSECTION * sign, d)

    torus, exc = (a, b) if a.is_torus else (b, a)
    if not _meets_orbit(catalogue, torus, exc.orbit):
        return RingElement.zero(d)
    # the torus cycle passes through the resolved stratum (K3-type); its
    # products with exceptional cycles are taken to vanish by convention
    return RingElement.zero(d, provenance="theorem")


def multiply(catalogue: GeneratorCatalogue, x: RingElement, y: RingElement, table=None) -> RingElement:
    """Bilinear extension of ``product``; zero when the dimensions are too low."""
    n = catalogue.n
    d = x.dimension + y.dimension - n
    if d < 0 or x.dimension == 0 or y.dimension == 0:
        # the point class meets nothing below the fundamental class
        return RingElement.zero(max(d, 0))
    look = table.product if table is not None else (lambda a, b: product(catalogue, a, b))
    acc = RingElement.zero(d)
    for (ga, ca), (gb, cb) in cartesian(x.terms, y.terms):
        acc = acc + look(ga, gb).scale(ca * cb)
    return acc


# ---------------------------------------------------------------------------
# the full table


def anticommutativity_sign(n: int, da: int, db: int) -> int:
    return -1 if ((n - da) * (n - db)) % 2 else 1


@dataclass
class RingTable:
    catalogue: GeneratorCatalogue
    products: dict[tuple[str, str], RingElement] = field(default_factory=dict)

    def product(self, a: RingGenerator, b: RingGenerator) -> RingElement:
        if a.dimension + b.dimension < self.catalogue.n:
            return RingElement.zero(0)
        return self.products[(a.name, b.name)]

    def nontrivial(self) -> list[tuple[RingGenerator, RingGenerator, RingElement]]:
        """Nonzero entries up to anticommutativity, in catalogue order."""
        gens = self.catalogue.generators
        out = []
        for i, a in enumerate(gens):
            for b in gens[i:]:
                if a.dimension + b.dimension < self.catalogue.n:
                    continue
                value = self.products[(a.name, b.name)]
                if not value.is_zero():
                    out.append((a, b, value))
        return out

    def theorem_sourced(self) -> list[tuple[str, str]]:
        return [k for k, v in self.products.items() if v.provenance == "theorem"]

    def relations(self) -> list[str]:
        return [f"{a.name} . {b.name} = {v}" for a, b, v in self.nontrivial()]


def ring_table(catalogue: GeneratorCatalogue) -> RingTable:
    """Every product with dim a + dim b >= n, each order computed independently."""
    n = catalogue.n
    table = RingTable(catalogue)
    gens = catalogue.generators
    for a, b in cartesian(gens, gens):
        if a.dimension + b.dimension >= n:
            table.products[(a.name, b.name)] = product(catalogue, a, b)
    for a, b in cartesian(gens, gens):
        if a.dimension + b.dimension < n:
            continue
        s = anticommutativity_sign(n, a.dimension, b.dimension)
        ab, ba = table.products[(a.name, b.name)], table.products[(b.name, a.name)]
        if not ab.scale(s).equals(ba):
            raise ArithmeticError(f"anticommutativity fails for {a.name}, {b.name}")
    return table


# ---------------------------------------------------------------------------
# pairings, Massey candidates, consistency checks


def exact_determinant(matrix: Sequence[Sequence]) -> Fraction:
    """Determinant over Q by fraction-exact Gaussian elimination."""
    m = [[Fraction(x) for x in row] for row in matrix]
    size = len(m)
    if any(len(row) != size for row in m):
        raise ValueError("determinant of a non-square matrix")
    det = Fraction(1)
    for col in range(size):
        pivot = next((r for r in range(col, size) if m[r][col]), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            det = -det
        det *= m[col][col]
        for r in range(col + 1, size):
            if m[r][col]:
                f = m[r][col] / m[col][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return det


@dataclass
class Pairing:
    k: int
    rows: list[RingGenerator]
    columns: list[RingGenerator]
    matrix: list[list[Fraction]]
    determinant: Fraction

    def is_diagonal(self) -> bool:
        return all(
            not x for i, row in enumerate(self.matrix) for j, x in enumerate(row) if i != j
        )

    def diagonal(self) -> list[Fraction]:
        return [self.matrix[i][i] for i in range(min(len(self.rows), len(self.columns)))]

    def as_dict(self) -> dict:
        return {
            "k": self.k,
            "size": len(self.rows),
            "diagonal": self.is_diagonal(),
            "entries": [str(x) for x in self.diagonal()] if self.is_diagonal() else None,
            "determinant": str(self.determinant),
        }


def pairing_matrix(table: RingTable, k: int) -> Pairing:
    """Intersection pairing H_k x H_(n-k) -> Q in catalogue order."""
    n = table.catalogue.n
    if not 0 <= k <= n:
        raise ValueError(f"k = {k} outside 0..{n}")
    rows = table.catalogue.of_dimension(k)
    cols = table.catalogue.of_dimension(n - k)
    matrix = [[table.product(a, b).scalar for b in cols] for a in rows]
    det = exact_determinant(matrix) if len(rows) == len(cols) else Fraction(0)
    return Pairing(k, rows, cols, matrix, det)


def massey_candidates(table: RingTable) -> list[tuple[RingGenerator, RingGenerator, RingGenerator]]:
    """Ordered basis triples (a, b, c) of degree-2 classes with a.b = b.c = 0.

    Degree-2 cohomology classes are represented by their Poincare dual
    generators of dimension n - 2.  The Massey products themselves are not
    evaluated.
    """
    n = table.catalogue.n
    gens = table.catalogue.of_dimension(n - 2)
    vanish = {
        (a.name, b.name): table.product(a, b).is_zero() for a, b in cartesian(gens, gens)
    }
    return [
        (a, b, c)
        for a, b, c in cartesian(gens, gens, gens)
        if vanish[(a.name, b.name)] and vanish[(b.name, c.name)]
    ]


@dataclass
class AssociativityDefect:
    triple: tuple[RingGenerator, RingGenerator, RingGenerator]
    left: RingElement
    right: RingElement

    def __str__(self) -> str:
        a, b, c = (g.name for g in self.triple)
        return f"({a} . {b}) . {c} = {self.left}  but  {a} . ({b} . {c}) = {self.right}"


def associativity_defects(table: RingTable) -> list[AssociativityDefect]:
    """Triples of generators where (a.b).c differs from a.(b.c)."""
    cat = table.catalogue
    n = cat.n
    gens = cat.generators
    out = []
    for a, b, c in cartesian(gens, gens, gens):
        if a.dimension + b.dimension + c.dimension < 2 * n:
            continue
        if a.dimension + b.dimension < n or b.dimension + c.dimension < n:
            continue
        left = multiply(cat, table.product(a, b), RingElement.of(c), table)
        right = multiply(cat, RingElement.of(a), table.product(b, c), table)
        if not left.equals(right):
            out.append(AssociativityDefect((a, b, c), left, right))
    return out


def forced_k3_products(table: RingTable) -> dict[tuple[str, str], RingElement]:
    """Values of c'[delta,i] . t'_delta that associativity would require.

    With x = c'[delta,i] and K the K3-type partner of t_delta, associativity
    of (x.x).K = x.(x.K) and x.c = e give x.K = ((x.x).K / e) c.
    """
    cat = table.catalogue
    out = {}
    for g in cat.generators:
        if g.kind != "C_dual":
            continue
        c = cat.exceptional(g.orbit, 0)
        square = table.product(g, g)
        e = table.product(g, c).scalar
        for k3 in cat.generators:
            if not k3.k3_type or k3.stabilizer != g.stabilizer:
                continue
            lhs = multiply(cat, square, RingElement.of(k3), table).scalar
            out[(g.name, k3.name)] = RingElement.of(c, lhs / e)
    return out
