"""Brute-force oracles over finite grids of T^n, independent of the solvers."""

import random
from fractions import Fraction
from math import lcm

import numpy as np

from kummer.fixed_loci import AffineSubtorus
from kummer.group import AffineInvolutionMap

HALF = Fraction(1, 2)
GRID_BUDGET = 2**22


def common_denominator(values) -> int:
    d = 1
    for v in values:
        if v is not None:
            d = lcm(d, Fraction(v).denominator)
    return d


def grid_size(d: int) -> int:
    return 2 * d if d > 1 else 4


def scan_fixed_points(signs, translation, d: int):
    """Fixed grid points of x -> signs*x + translation on (Z/2d)^n, grouped into components.

    Fixed points lie on the (1/2d)-grid.  For d = 1 the grid is refined to
    Z/4 so the two solutions of a reflected coordinate cannot cover a whole
    grid circle.  Returns (free coordinate set, set of offset tuples on the
    other coordinates).  Free coordinates are the directions along which the
    fixed set is invariant under a one-step shift.
    """
    n = len(signs)
    size = grid_size(d)
    mask = np.ones((size,) * n, dtype=bool)
    k = np.arange(size)
    for i in range(n):
        b = Fraction(translation[i]) * size
        assert b.denominator == 1, "translation not on the grid"
        fixed_i = ((signs[i] * k + int(b) - k) % size) == 0
        shape = [1] * n
        shape[i] = size
        mask = mask & fixed_i.reshape(shape)
    if not mask.any():
        return None, set()
    free = frozenset(i for i in range(n) if np.array_equal(mask, np.roll(mask, 1, axis=i)))
    fixed = np.argwhere(mask)
    rest = [i for i in range(n) if i not in free]
    comps = {tuple(Fraction(int(p[i]), size) for i in rest) for p in fixed}
    for c in comps:
        members = np.all(fixed[:, rest] == [int(x * size) for x in c], axis=1).sum() if rest else len(fixed)
        assert members == size ** len(free)
    return free, comps


def count_common_points(a_offsets, b_offsets, size: int) -> int:
    """Grid points of (Z/size)^n lying on both coordinate subtori."""
    n = len(a_offsets)
    mask = np.ones((size,) * n, dtype=bool)
    k = np.arange(size)
    for offsets in (a_offsets, b_offsets):
        for i, x in enumerate(offsets):
            if x is not None:
                v = Fraction(x) * size
                assert v.denominator == 1, "offset not on the grid"
                shape = [1] * n
                shape[i] = size
                mask = mask & (k == int(v)).reshape(shape)
    return int(mask.sum())


def transverse_count(a_offsets, b_offsets) -> int:
    """Number of isolated intersection points, 0 for empty or positive-dimensional overlaps.

    A finite intersection has the same number of grid points on every
    refinement; a positive-dimensional one grows with the grid.
    """
    d = common_denominator(list(a_offsets) + list(b_offsets))
    coarse = count_common_points(a_offsets, b_offsets, d)
    fine = count_common_points(a_offsets, b_offsets, 2 * d)
    return coarse if coarse == fine else 0


def frame_determinant(first, second) -> int:
    """Orientation of the frame (e_i for i in first) + (e_j for j in second)."""
    order = list(first) + list(second)
    n = len(order)
    m = np.zeros((n, n))
    for row, i in enumerate(order):
        m[row, i] = 1
    return int(round(np.linalg.det(m)))


# -- random inputs -------------------------------------------------------------


def feasible_denominator(rng: random.Random, n: int) -> int:
    """Random denominator in 1..8 whose scan grid fits the budget on T^n."""
    cap = max(d for d in range(1, 9) if grid_size(d) ** n <= GRID_BUDGET)
    return rng.randint(1, cap)


def random_involution(rng: random.Random, n: int, d: int) -> AffineInvolutionMap:
    signs = [rng.choice((1, -1)) for _ in range(n)]
    translation = []
    for s in signs:
        if s == 1:
            # involutive only if 2b = 0 mod 1; biased towards having fixed points
            translation.append(rng.choice((0, 0, 0, HALF)))
        else:
            translation.append(Fraction(rng.randrange(d), d))
    return AffineInvolutionMap(signs, translation)


def random_subtorus_pair(rng: random.Random, n: int, crossing: bool):
    """Two oriented coordinate subtori of complementary dimension on T^n.

    With ``crossing`` the free sets split the coordinates; otherwise they are
    drawn independently and usually overlap.
    """
    d = max(d for d in range(1, 9) if (2 * d) ** n <= GRID_BUDGET)
    d = rng.randint(1, d)
    k = rng.randint(1, n - 1)
    a = set(rng.sample(range(n), k))
    b = set(range(n)) - a if crossing else set(rng.sample(range(n), n - k))

    def make(free):
        offs = [None if i in free else Fraction(rng.randrange(d), d) for i in range(n)]
        return AffineSubtorus(offs, rng.choice((1, -1)))

    return make(a), make(b)
