"""Homology generators of the resolved manifold M and its Betti numbers.

Two families of cycles span H_*(M; Q):

* torus cycles: for every invariant monomial m, the projection of a coordinate
  subtorus free on m (offsets 1/3 elsewhere).  These come in dual pairs
  (m, complement of m).  When singular orbits of an involution delta have free
  coordinates m, the cycle is called t_delta and its dual partner t'_delta
  (which meets the singular strata and becomes a K3-type cycle after resolution).
* exceptional cycles: over every singular orbit T^(n-4) x C^2/{+-1}, the
  exceptional CP^1 times a coordinate subtorus S of the singular torus,
  of dimension |S| + 2.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Optional, Sequence

from . import cohomology as coh
from .cohomology import Monomial
from .fixed_loci import (
    AffineSubtorus,
    ConditionReport,
    SingularOrbit,
    check_joyce_conditions,
    singular_orbits,
)
from .group import GroupZ2k

TORUS_KINDS = ("T", "Tdual", "Tdelta", "Tdelta_dual")
EXCEPTIONAL_KINDS = ("C", "C_lambda", "C_tau_dual", "C_dual", "C_sigma")


class ResolutionError(ValueError):
    pass


class NotResolvable(ResolutionError):
    def __init__(self, report: ConditionReport):
        failed = ", ".join(c.key for c in report.conditions if not c.passed)
        super().__init__(f"resolvability conditions fail: {failed}")
        self.report = report


class InconsistentClaims(ResolutionError):
    pass


class NonOrientable(ResolutionError):
    pass


@dataclass(frozen=True)
class RingGenerator:
    """One catalogued homology class of M.

    ``support`` is the free-coordinate mask of the representative subtorus:
    the torus itself for torus kinds, the base subtorus S inside the singular
    torus for exceptional kinds.  ``pair_key`` is shared with the Poincare dual
    partner and orders the catalogue so that pairing matrices are diagonal.
    """

    kind: str
    dimension: int
    name: str
    support: Monomial
    orientation: int = 1
    orbit: Optional[int] = None
    stabilizer: Optional[int] = None
    j: Optional[int] = None
    pair_key: tuple = ()

    @property
    def is_torus(self) -> bool:
        return self.kind in TORUS_KINDS

    @property
    def is_exceptional(self) -> bool:
        return self.kind in EXCEPTIONAL_KINDS

    @property
    def k3_type(self) -> bool:
        return self.kind == "Tdelta_dual"

    def representative(self, n: int) -> AffineSubtorus:
        """Torus kinds only: the 1/3-offset subtorus realizing the class."""
        if not self.is_torus:
            raise TypeError(f"{self.name} is not a torus cycle")
        return AffineSubtorus.with_free(n, self.support, orientation=self.orientation)

    def __str__(self) -> str:
        return self.name


def _set_name(m: Monomial) -> str:
    return "{" + ",".join(str(i) for i in coh.indices(m)) + "}"


@dataclass(frozen=True)
class GeneratorCatalogue:
    group: GroupZ2k
    orbits: tuple[SingularOrbit, ...]
    invariant_monomials: tuple[Monomial, ...]
    generators: tuple[RingGenerator, ...]

    @property
    def n(self) -> int:
        return self.group.n

    @property
    def orbit_count(self) -> int:
        return len(self.orbits)

    def of_dimension(self, d: int) -> list[RingGenerator]:
        return [g for g in self.generators if g.dimension == d]

    def counts(self) -> list[int]:
        return [len(self.of_dimension(d)) for d in range(self.n + 1)]

    def by_name(self, name: str) -> RingGenerator:
        for g in self.generators:
            if g.name == name:
                return g
        raise KeyError(name)

    def torus_generator(self, support: Monomial) -> Optional[RingGenerator]:
        for g in self.generators:
            if g.is_torus and g.support == support:
                return g
        return None

    def exceptional(self, orbit: int, base: Monomial) -> RingGenerator:
        for g in self.generators:
            if g.is_exceptional and g.orbit == orbit and g.support == base:
                return g
        raise KeyError((orbit, base))

    def orbit_rank(self, orbit: int) -> int:
        """1-based rank of an orbit among the orbits of its involution."""
        stab = self.orbits[orbit].stabilizer
        same = [i for i, o in enumerate(self.orbits) if o.stabilizer == stab]
        return same.index(orbit) + 1

    def __iter__(self):
        return iter(self.generators)

    def __len__(self) -> int:
        return len(self.generators)


def claimed_monomials(group: GroupZ2k, orbits: Sequence[SingularOrbit]) -> dict[Monomial, int]:
    """Invariant monomial -> stabilizer of the orbits whose free coordinates span it."""
    claims: dict[Monomial, int] = {}
    for o in orbits:
        m = o.homology_class
        if not coh.is_invariant(group, m):
            continue
        if claims.setdefault(m, o.stabilizer) != o.stabilizer:
            raise InconsistentClaims(
                f"monomial {coh.format_monomial(m)} is spanned by fixed tori of "
                f"{group.name(claims[m])} and {group.name(o.stabilizer)}"
            )
    return claims


def _torus_generators(group: GroupZ2k, claims: dict[Monomial, int]) -> list[RingGenerator]:
    n = group.n
    out = []
    for m in range(1, coh.top(n)):
        if not coh.is_invariant(group, m):
            continue
        c = coh.complement(m, n)
        lower = m if (coh.degree(m), m) < (coh.degree(c), c) else c
        is_lower = m == lower
        name = f"t{_set_name(lower)}" if is_lower else f"t'{_set_name(lower)}"
        if m in claims:
            kind = "Tdelta"
        elif coh.complement(m, n) in claims:
            kind = "Tdelta_dual"
        else:
            kind = "T" if is_lower else "Tdual"
        stab = claims.get(m, claims.get(c))
        out.append(
            RingGenerator(
                kind,
                coh.degree(m),
                name,
                m,
                stabilizer=stab,
                pair_key=(0, coh.degree(lower), lower),
            )
        )
    return out


def _exceptional_generators(group: GroupZ2k, catalogue_orbits, ranks) -> list[RingGenerator]:
    out = []
    for index, o in enumerate(catalogue_orbits):
        free = o.free_coordinates
        fmask = o.homology_class
        delta = group.name(o.stabilizer)
        i = ranks[index]
        r = len(free)
        for size in range(r + 1):
            for subset in combinations(free, size):
                base = sum(1 << c for c in subset)
                rest = fmask & ~base
                lower = base if (size, base) < (r - size, rest) else rest
                is_lower = base == lower
                # the upper member of a dual pair is oriented so that
                # (lower subtorus) . (upper subtorus) = +1 inside the singular torus
                orientation = 1 if is_lower else coh.wedge_sign(lower, base)
                j = None
                if size == 0:
                    kind, name = "C", f"c[{delta},{i}]"
                elif base == fmask:
                    kind, name = "C_dual", f"c'[{delta},{i}]"
                elif size == 1:
                    j = free.index(subset[0]) + 1
                    kind, name = "C_lambda", f"c[{delta},{i},{j}]"
                elif size == r - 1:
                    (missing,) = [c for c in free if c not in subset]
                    j = free.index(missing) + 1
                    kind, name = "C_tau_dual", f"c'[{delta},{i},{j}]"
                else:
                    kind = "C_sigma"
                    name = f"c[{delta},{i};{_set_name(base)}]"
                out.append(
                    RingGenerator(
                        kind,
                        size + 2,
                        name,
                        base,
                        orientation=orientation,
                        orbit=index,
                        stabilizer=o.stabilizer,
                        j=j,
                        pair_key=(1, index, coh.degree(lower), lower),
                    )
                )
    return out


def _resolvable_orbits(group: GroupZ2k) -> list[SingularOrbit]:
    report = check_joyce_conditions(group)
    if not report.passed:
        raise NotResolvable(report)
    return singular_orbits(group)


def generator_catalogue(
    group: GroupZ2k,
    orbits: Optional[Sequence[SingularOrbit]] = None,
    invariant_basis_3: Optional[Sequence[Monomial]] = None,
) -> GeneratorCatalogue:
    """Assemble torus and exceptional generators of H_*(M; Q) in dimensions 1..n-1."""
    if orbits is None:
        orbits = _resolvable_orbits(group)
    if not coh.preserves_orientation(group):
        raise NonOrientable("some group element reverses the orientation of T^n")
    if invariant_basis_3 is None:
        invariant_basis_3 = coh.invariant_basis(group, min(3, group.n))
    claims = claimed_monomials(group, orbits)

    ranks = []
    counter: dict[int, int] = {}
    for o in orbits:
        counter[o.stabilizer] = counter.get(o.stabilizer, 0) + 1
        ranks.append(counter[o.stabilizer])

    gens = _torus_generators(group, claims) + _exceptional_generators(group, orbits, ranks)
    gens.sort(key=lambda g: (g.dimension, g.pair_key))
    return GeneratorCatalogue(group, tuple(orbits), tuple(invariant_basis_3), tuple(gens))


def resolved_betti(group: GroupZ2k) -> list[int]:
    """Betti numbers of M: orbifold classes plus H_*(T^(n-4)) x H_2(CP^1) per orbit."""
    orbits = _resolvable_orbits(group)
    n = group.n
    betti = coh.orbifold_betti(group)
    if not orbits:
        return betti
    for k in range(2, n - 1):
        betti[k] += len(orbits) * comb(n - 4, k - 2)
    return betti


def torus_class(t: AffineSubtorus, invariant_basis: Sequence[Monomial]) -> Optional[Monomial]:
    """The invariant monomial integrating to 1 over ``t``, if it is in the basis."""
    m = t.free
    return m if m in set(invariant_basis) else None


def euler_characteristic(betti: Sequence[int]) -> int:
    return sum((-1) ** k * b for k, b in enumerate(betti))
