"""Rational cohomology of T^n and of the orbifold T^n / Gamma.

H*(T^n; Q) is the exterior algebra on dx_1, ..., dx_n.  A monomial
dx_{i1} ^ ... ^ dx_{ik} (i1 < ... < ik) is an ``int`` bitmask with bit i-1
set for every index i.  Translations act trivially on cohomology and x_i -> -x_i
negates dx_i, so every monomial is an eigenvector of every group element.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Iterable, Mapping

from .group import AffineInvolutionMap, DimensionMismatch, GroupZ2k

Monomial = int


def monomial(*indices: int) -> Monomial:
    """Monomial from 1-based coordinate indices: ``monomial(5, 6, 7)``."""
    m = 0
    for i in indices:
        if i < 1:
            raise ValueError("coordinate indices are 1-based")
        if m >> (i - 1) & 1:
            raise ValueError(f"repeated index {i}: the monomial vanishes")
        m |= 1 << (i - 1)
    return m


def indices(m: Monomial) -> tuple[int, ...]:
    """Sorted 1-based coordinate indices of a monomial."""
    out = []
    i = 1
    while m:
        if m & 1:
            out.append(i)
        m >>= 1
        i += 1
    return tuple(out)


def degree(m: Monomial) -> int:
    return bin(m).count("1")


def top(n: int) -> Monomial:
    return (1 << n) - 1


def complement(m: Monomial, n: int) -> Monomial:
    return top(n) & ~m


def format_monomial(m: Monomial) -> str:
    if not m:
        return "1"
    return "^".join(f"dx{i}" for i in indices(m))


def wedge_sign(a: Monomial, b: Monomial) -> int:
    """Sign of dx_a ^ dx_b relative to dx_{a|b} (0 if they share an index).

    Counts the transpositions needed to sort the concatenated index lists.
    """
    if a & b:
        return 0
    inversions = 0
    for i in indices(b):
        # every index of a above i must hop over it
        inversions += degree(a >> i)
    return -1 if inversions % 2 else 1


def _check_dimension(g: AffineInvolutionMap, m: Monomial) -> None:
    if m >> g.dimension:
        raise DimensionMismatch(f"monomial {format_monomial(m)} lives beyond T^{g.dimension}")


def induced_sign(g: AffineInvolutionMap, m: Monomial) -> int:
    """Eigenvalue of g^* on the monomial ``m``."""
    _check_dimension(g, m)
    sign = 1
    for i in indices(m):
        sign *= g.signs[i - 1]
    return sign


def monomials_of_degree(n: int, k: int) -> list[Monomial]:
    return [m for m in range(1 << n) if degree(m) == k]


def is_invariant(group: GroupZ2k, m: Monomial) -> bool:
    # characters multiply, so the generators suffice
    return all(induced_sign(g, m) == 1 for g in group.generators)


def invariant_basis(group: GroupZ2k, k: int) -> list[Monomial]:
    """Gamma-invariant degree-k monomials in ascending bitmask order."""
    if not 0 <= k <= group.n:
        raise ValueError(f"degree {k} outside 0..{group.n}")
    return [m for m in monomials_of_degree(group.n, k) if is_invariant(group, m)]


def orbifold_betti(group: GroupZ2k) -> list[int]:
    """b^k(T^n / Gamma; Q) for k = 0..n."""
    return [len(invariant_basis(group, k)) for k in range(group.n + 1)]


def torus_betti(n: int) -> list[int]:
    return [comb(n, k) for k in range(n + 1)]


def preserves_orientation(group: GroupZ2k) -> bool:
    return is_invariant(group, top(group.n))


@dataclass(frozen=True)
class ExteriorClass:
    """Homogeneous element of the rational exterior algebra on n generators."""

    n: int
    terms: Mapping[Monomial, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        clean = {m: Fraction(c) for m, c in self.terms.items() if c}
        if len({degree(m) for m in clean}) > 1:
            raise ValueError("ExteriorClass terms must share one degree")
        for m in clean:
            if m >> self.n:
                raise DimensionMismatch(f"monomial beyond T^{self.n}")
        object.__setattr__(self, "terms", dict(sorted(clean.items())))

    @classmethod
    def from_monomial(cls, n: int, m: Monomial, coefficient=1) -> "ExteriorClass":
        return cls(n, {m: Fraction(coefficient)})

    @property
    def degree(self) -> int | None:
        for m in self.terms:
            return degree(m)
        return None

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "ExteriorClass") -> "ExteriorClass":
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return ExteriorClass(self.n, out)

    def __rmul__(self, scalar) -> "ExteriorClass":
        return ExteriorClass(self.n, {m: scalar * c for m, c in self.terms.items()})

    def wedge(self, other: "ExteriorClass") -> "ExteriorClass":
        out: dict[Monomial, Fraction] = {}
        for a, ca in self.terms.items():
            for b, cb in other.terms.items():
                s = wedge_sign(a, b)
                if s:
                    out[a | b] = out.get(a | b, 0) + s * ca * cb
        return ExteriorClass(self.n, out)

    def pullback(self, g: AffineInvolutionMap) -> "ExteriorClass":
        return ExteriorClass(self.n, {m: induced_sign(g, m) * c for m, c in self.terms.items()})

    def average(self, group: GroupZ2k) -> "ExteriorClass":
        """Projection onto the invariant subspace (transfer)."""
        total = ExteriorClass(self.n)
        for g in group:
            total = total + self.pullback(g)
        return Fraction(1, group.order) * total

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"{c}*{format_monomial(m)}" for m, c in self.terms.items())


def invariant_classes(group: GroupZ2k, k: int) -> list[ExteriorClass]:
    return [ExteriorClass.from_monomial(group.n, m) for m in invariant_basis(group, k)]


def hodge_partner(m: Monomial, n: int) -> tuple[int, Monomial]:
    """Flat Hodge star of a monomial: ``*dx_m = sign * dx_{complement}``."""
    c = complement(m, n)
    return wedge_sign(m, c), c


def closed_under_complement(monomials: Iterable[Monomial], n: int) -> bool:
    ms = set(monomials)
    return all(complement(m, n) in ms for m in ms)
