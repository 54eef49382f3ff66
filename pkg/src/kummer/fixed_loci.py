"""Fixed subtori of group elements, their Gamma-orbits, and resolvability checks."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from typing import Optional, Sequence

from .cohomology import Monomial, induced_sign
from .group import AffineInvolutionMap, DimensionMismatch, GroupZ2k, mod1

HALF = Fraction(1, 2)


class OverlappingLoci(ValueError):
    def __init__(self, first: "AffineSubtorus", second: "AffineSubtorus"):
        super().__init__(f"fixed components {first} and {second} intersect")
        self.components = (first, second)


@dataclass(frozen=True)
class AffineSubtorus:
    """Coordinate subtorus of T^n.

    ``offsets[i]`` is None when coordinate i ranges over R/Z and a value in
    [0, 1) otherwise.  ``orientation`` is +1 when the subtorus carries the
    orientation of its free coordinates taken in ascending order.
    """

    offsets: tuple[Optional[Fraction], ...]
    orientation: int = 1

    def __init__(self, offsets: Sequence, orientation: int = 1):
        offsets = tuple(None if x is None else mod1(x) for x in offsets)
        if orientation not in (1, -1):
            raise ValueError("orientation must be +1 or -1")
        object.__setattr__(self, "offsets", offsets)
        object.__setattr__(self, "orientation", orientation)

    @classmethod
    def with_free(cls, n: int, free: Monomial, value=Fraction(1, 3), orientation=1):
        """Subtorus free on ``free`` with every other coordinate equal to ``value``."""
        return cls([None if free >> i & 1 else value for i in range(n)], orientation)

    @property
    def n(self) -> int:
        return len(self.offsets)

    @property
    def free(self) -> Monomial:
        return sum(1 << i for i, x in enumerate(self.offsets) if x is None)

    @property
    def dimension(self) -> int:
        return sum(x is None for x in self.offsets)

    @property
    def offset_vector(self) -> tuple[Fraction, ...]:
        return tuple(x for x in self.offsets if x is not None)

    def unoriented(self) -> "AffineSubtorus":
        return self if self.orientation == 1 else AffineSubtorus(self.offsets)

    def reversed(self) -> "AffineSubtorus":
        return AffineSubtorus(self.offsets, -self.orientation)

    def image(self, g: AffineInvolutionMap) -> "AffineSubtorus":
        """g applied to the subtorus, carrying the pushed-forward orientation."""
        if g.dimension != self.n:
            raise DimensionMismatch("map and subtorus live on different tori")
        offsets = [
            None if x is None else s * x + b
            for x, s, b in zip(self.offsets, g.signs, g.translation)
        ]
        return AffineSubtorus(offsets, self.orientation * induced_sign(g, self.free))

    def contains(self, point: Sequence) -> bool:
        return all(x is None or mod1(p) == x for x, p in zip(self.offsets, point))

    def intersects(self, other: "AffineSubtorus") -> bool:
        return all(
            a is None or b is None or a == b for a, b in zip(self.offsets, other.offsets)
        )

    def meet(self, other: "AffineSubtorus") -> Optional["AffineSubtorus"]:
        """Set-theoretic intersection (unoriented), or None when disjoint."""
        if not self.intersects(other):
            return None
        return AffineSubtorus([a if a is not None else b for a, b in zip(self.offsets, other.offsets)])

    def sort_key(self):
        return (self.offset_vector, self.free)

    def __str__(self) -> str:
        parts = [f"x{i + 1}" if x is None else str(x) for i, x in enumerate(self.offsets)]
        return ("-" if self.orientation == -1 else "") + "(" + ", ".join(parts) + ")"


def fixed_locus(g: AffineInvolutionMap) -> list[AffineSubtorus]:
    """Connected components of {x : g(x) = x}, sorted by offset vector."""
    choices = []
    for s, b in zip(g.signs, g.translation):
        if s == 1:
            if b != 0:
                return []
            choices.append((None,))
        else:
            # 2x = b (mod 1)
            choices.append((mod1(b / 2), mod1(b / 2 + HALF)))
    return sorted((AffineSubtorus(c) for c in product(*choices)), key=AffineSubtorus.sort_key)


def orbit(group: GroupZ2k, torus: AffineSubtorus) -> list[AffineSubtorus]:
    """Distinct unoriented images of ``torus`` under the group, sorted."""
    images = {torus.image(g).unoriented() for g in group}
    return sorted(images, key=AffineSubtorus.sort_key)


def setwise_stabilizer(group: GroupZ2k, torus: AffineSubtorus) -> list[int]:
    t = torus.unoriented()
    return [i for i, g in enumerate(group.elements) if t.image(g).unoriented() == t]


@dataclass(frozen=True)
class SingularOrbit:
    stabilizer: int
    members: tuple[AffineSubtorus, ...]

    @property
    def representative(self) -> AffineSubtorus:
        return self.members[0]

    @property
    def homology_class(self) -> Monomial:
        return self.representative.free

    @property
    def free_coordinates(self) -> tuple[int, ...]:
        """0-based free coordinates of the members, ascending."""
        return tuple(i for i, x in enumerate(self.representative.offsets) if x is None)

    def __len__(self) -> int:
        return len(self.members)


def fixed_components(group: GroupZ2k) -> list[tuple[int, AffineSubtorus]]:
    """(element index, component) for every non-identity element."""
    return [(i, c) for i, g in enumerate(group.elements) if i for c in fixed_locus(g)]


def _collect_orbits(group: GroupZ2k) -> list[SingularOrbit]:
    seen: set[AffineSubtorus] = set()
    orbits = []
    for index, component in fixed_components(group):
        if component in seen:
            continue
        members = orbit(group, component)
        seen.update(members)
        orbits.append(SingularOrbit(index, tuple(members)))
    orbits.sort(key=lambda o: (o.stabilizer, o.representative.sort_key()))
    return orbits


def singular_orbits(group: GroupZ2k) -> list[SingularOrbit]:
    """Gamma-orbits of fixed components of non-identity elements.

    Raises OverlappingLoci when components fixed by different elements meet.
    """
    components = fixed_components(group)
    for (i, a), (j, b) in combinations(components, 2):
        if i != j and a.intersects(b):
            raise OverlappingLoci(a, b)
    return _collect_orbits(group)


def orbits_of(group: GroupZ2k, stabilizer: int, orbits: Sequence[SingularOrbit]) -> list[SingularOrbit]:
    return [o for o in orbits if o.stabilizer == stabilizer]


@dataclass
class Condition:
    key: str
    description: str
    passed: bool
    witnesses: list[str] = field(default_factory=list)

    def as_dict(self) -> dict:
        return {
            "key": self.key,
            "description": self.description,
            "passed": self.passed,
            "witnesses": list(self.witnesses),
        }


@dataclass
class ConditionReport:
    conditions: list[Condition]
    singular_tori: int
    orbit_sizes: list[int]
    notes: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.conditions)

    def __getitem__(self, key: str) -> Condition:
        for c in self.conditions:
            if c.key == key:
                return c
        raise KeyError(key)

    def as_dict(self) -> dict:
        return {
            "passed": self.passed,
            "conditions": [c.as_dict() for c in self.conditions],
            "singular_tori": self.singular_tori,
            "orbit_sizes": list(self.orbit_sizes),
            "notes": list(self.notes),
        }


def check_joyce_conditions(group: GroupZ2k) -> ConditionReport:
    """Check that every singular stratum looks like T^(n-4) x C^2/{+-1}.

    Failures are reported with witnesses; nothing is raised.
    """
    generators = set(group.generator_indices())
    loci = {i: fixed_locus(g) for i, g in enumerate(group.elements) if i}

    free = Condition("a", "every non-generator element acts freely", True)
    for i, comps in loci.items():
        if i not in generators and comps:
            free.passed = False
            free.witnesses.append(f"{group.name(i)} fixes {len(comps)} components")

    codim = Condition("b", "fixed components of generators have codimension 4", True)
    for i in sorted(generators):
        g = group.elements[i]
        if loci[i] and len(g.reflected) != 4:
            codim.passed = False
            codim.witnesses.append(f"{group.name(i)} reflects {len(g.reflected)} coordinates")

    stab = Condition("c", "setwise stabilizer of each fixed component is {1, delta}", True)
    for i, comps in loci.items():
        for c in comps:
            s = setwise_stabilizer(group, c)
            if s != [0, i]:
                stab.passed = False
                names = ",".join(group.name(j) for j in s)
                stab.witnesses.append(f"{c} fixed by {group.name(i)} is preserved by {{{names}}}")

    disjoint = Condition("d", "distinct fixed components are pairwise disjoint", True)
    components = [(i, c) for i, comps in loci.items() for c in comps]
    for (i, a), (j, b) in combinations(components, 2):
        if a != b and a.intersects(b):
            disjoint.passed = False
            disjoint.witnesses.append(f"{a} ({group.name(i)}) meets {b} ({group.name(j)})")

    orbits = _collect_orbits(group)
    report = ConditionReport(
        [free, codim, stab, disjoint],
        singular_tori=len({c for _, c in components}),
        orbit_sizes=[len(o) for o in orbits],
    )
    if not free.witnesses and len(generators) == 1:
        report.notes.append("condition a is vacuous: no composite elements")
    report.notes.append(f"{report.singular_tori} singular tori in {len(orbits)} orbits")
    return report


@dataclass
class SimplyConnectedReport:
    """Outcome of a sufficient (not necessary) test for pi_1(T^n / Gamma) = 0."""

    sufficient: bool
    covered: dict[int, str]
    uncovered: list[int]

    def as_dict(self) -> dict:
        return {
            "sufficient_condition_holds": self.sufficient,
            "kind": "sufficient-only",
            "verdict": "simply connected" if self.sufficient else "inconclusive",
            "covered": {str(i): name for i, name in self.covered.items()},
            "uncovered": list(self.uncovered),
        }


def simply_connected_sufficient(group: GroupZ2k) -> SimplyConnectedReport:
    """Each coordinate loop must be reflected by some generator with fixed points.

    Such a loop, based at a fixed point, is folded onto a path in the quotient,
    so it dies in pi_1.  ``covered`` maps 1-based coordinates to the name of the
    first covering generator.
    """
    covered: dict[int, str] = {}
    for index in group.generator_indices():
        g = group.elements[index]
        if not fixed_locus(g):
            continue
        for i in g.reflected:
            covered.setdefault(i + 1, group.name(index))
    uncovered = [i for i in range(1, group.n + 1) if i not in covered]
    return SimplyConnectedReport(not uncovered, dict(sorted(covered.items())), uncovered)
