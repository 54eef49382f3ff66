"""Affine involutions of the flat torus R^n/Z^n and the Z_2^k groups they generate.

A map is stored as ``x -> signs * x + translation`` with ``signs`` in {+1, -1}
and every translation entry reduced into [0, 1).  Two maps are equal exactly
when their canonical forms agree.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence


class GroupError(ValueError):
    """Base class for invalid group data."""


class DimensionMismatch(GroupError):
    pass


class NonInvolutive(GroupError):
    pass


class NonCommuting(GroupError):
    pass


class NotEffective(GroupError):
    pass


def mod1(q) -> Fraction:
    """Canonical representative of ``q`` modulo 1, in [0, 1)."""
    q = Fraction(q)
    return q - (q.numerator // q.denominator)


@dataclass(frozen=True)
class AffineInvolutionMap:
    signs: tuple[int, ...]
    translation: tuple[Fraction, ...]

    def __init__(self, signs: Iterable[int], translation: Iterable | None = None):
        signs = tuple(int(s) for s in signs)
        if translation is None:
            translation = (0,) * len(signs)
        translation = tuple(mod1(t) for t in translation)
        if not signs:
            raise DimensionMismatch("a torus map needs at least one coordinate")
        if len(signs) != len(translation):
            raise DimensionMismatch(
                f"{len(signs)} signs but {len(translation)} translation entries"
            )
        if any(s not in (1, -1) for s in signs):
            raise ValueError(f"signs must be +1 or -1, got {signs}")
        object.__setattr__(self, "signs", signs)
        object.__setattr__(self, "translation", translation)

    @classmethod
    def identity(cls, n: int) -> "AffineInvolutionMap":
        return cls((1,) * n)

    @property
    def dimension(self) -> int:
        return len(self.signs)

    @property
    def reflected(self) -> tuple[int, ...]:
        """0-based coordinates on which the map acts by x -> b - x."""
        return tuple(i for i, s in enumerate(self.signs) if s == -1)

    def is_identity(self) -> bool:
        return all(s == 1 for s in self.signs) and not any(self.translation)

    def is_involution(self) -> bool:
        # g(g(x)) = x + (signs*b + b); only coordinates with sign +1 contribute.
        return all(
            mod1(2 * b) == 0 for s, b in zip(self.signs, self.translation) if s == 1
        )

    def __call__(self, point: Sequence) -> tuple[Fraction, ...]:
        if len(point) != self.dimension:
            raise DimensionMismatch("point and map have different dimensions")
        return tuple(
            mod1(s * Fraction(x) + b)
            for s, x, b in zip(self.signs, point, self.translation)
        )

    def __str__(self) -> str:
        terms = []
        for i, (s, b) in enumerate(zip(self.signs, self.translation), start=1):
            x = f"x{i}" if s == 1 else f"-x{i}"
            terms.append(x if b == 0 else f"{b}{'+' if s == 1 else ''}{x}")
        return "(" + ", ".join(terms) + ")"


def compose(g: AffineInvolutionMap, h: AffineInvolutionMap) -> AffineInvolutionMap:
    """The map ``x -> g(h(x))``; ``h`` is applied first."""
    if g.dimension != h.dimension:
        raise DimensionMismatch(
            f"cannot compose maps of dimension {g.dimension} and {h.dimension}"
        )
    signs = tuple(a * b for a, b in zip(g.signs, h.signs))
    translation = tuple(
        bg + sg * bh for sg, bg, bh in zip(g.signs, g.translation, h.translation)
    )
    return AffineInvolutionMap(signs, translation)


@dataclass(frozen=True)
class GroupZ2k:
    """A validated effective action of Z_2^k on T^n.

    ``elements[index]`` is the product of the generators whose bits are set in
    ``index`` (bit j <-> generator j), so ``elements[0]`` is the identity.
    """

    generators: tuple[AffineInvolutionMap, ...]
    elements: tuple[AffineInvolutionMap, ...]

    @property
    def n(self) -> int:
        return self.elements[0].dimension

    @property
    def k(self) -> int:
        return len(self.generators)

    @property
    def order(self) -> int:
        return len(self.elements)

    def bits(self, index: int) -> tuple[int, ...]:
        return tuple((index >> j) & 1 for j in range(self.k))

    def name(self, index: int) -> str:
        """Bit-vector name of an element, generator 1 first (e.g. '100')."""
        return "".join(str(b) for b in self.bits(index))

    def index_of(self, g: AffineInvolutionMap) -> int:
        return self.elements.index(g)

    def generator_indices(self) -> tuple[int, ...]:
        return tuple(1 << j for j in range(self.k))

    def __iter__(self):
        return iter(self.elements)

    def __len__(self) -> int:
        return len(self.elements)


def make_group(generators: Sequence[AffineInvolutionMap]) -> GroupZ2k:
    generators = tuple(generators)
    if not generators:
        raise GroupError("at least one generator is required")
    n = generators[0].dimension
    for g in generators:
        if g.dimension != n:
            raise DimensionMismatch("generators act on tori of different dimensions")
    for j, g in enumerate(generators):
        if not g.is_involution():
            raise NonInvolutive(f"generator {j + 1} {g} does not square to the identity")
    for (i, g), (j, h) in combinations(enumerate(generators), 2):
        if compose(g, h) != compose(h, g):
            raise NonCommuting(f"generators {i + 1} and {j + 1} do not commute")

    k = len(generators)
    elements = []
    for index in range(2**k):
        g = AffineInvolutionMap.identity(n)
        for j in range(k):
            if (index >> j) & 1:
                g = compose(generators[j], g)
        elements.append(g)

    seen: dict[AffineInvolutionMap, int] = {}
    for index, g in enumerate(elements):
        if g in seen:
            name = lambda i: "".join(str((i >> j) & 1) for j in range(k))
            raise NotEffective(
                f"elements {name(seen[g])} and {name(index)} are the same map {g}"
            )
        seen[g] = index
    return GroupZ2k(generators, tuple(elements))


def trivial_group(n: int) -> GroupZ2k:
    """The group {id} acting on T^n (k = 0)."""
    e = AffineInvolutionMap.identity(n)
    return GroupZ2k((), (e,))


def kummer_example(
    b1=0, b2=Fraction(1, 2), c1=Fraction(1, 2), c3=Fraction(1, 2), c5=0
) -> GroupZ2k:
    """The standard three-involution group alpha, beta, gamma on T^7.

    The default constants give the simply connected example with
    b2(M) = 12, b3(M) = 43.
    """
    alpha = AffineInvolutionMap((-1, -1, -1, -1, 1, 1, 1))
    beta = AffineInvolutionMap((-1, -1, 1, 1, -1, -1, 1), (b1, b2, 0, 0, 0, 0, 0))
    gamma = AffineInvolutionMap((-1, 1, -1, 1, -1, 1, -1), (c1, 0, c3, 0, c5, 0, 0))
    return make_group([alpha, beta, gamma])
