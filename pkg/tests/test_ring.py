import random
from fractions import Fraction
from itertools import combinations

import numpy as np
import pytest

from conftest import ALPHA
from kummer.cohomology import indices, monomial, top, wedge_sign
from kummer.fixed_loci import AffineSubtorus, fixed_locus
from kummer.resolution import generator_catalogue
from kummer.ring import (
    DimensionTooLow,
    NonComplementary,
    RingElement,
    anticommutativity_sign,
    associativity_defects,
    exact_determinant,
    forced_k3_products,
    frame_product,
    massey_candidates,
    monomial_pairing,
    multiply,
    pairing_matrix,
    product,
    quotient_pairing,
    ring_table,
    subtorus_intersection_number,
)
from oracles import frame_determinant, random_subtorus_pair, transverse_count


@pytest.mark.parametrize("seed", range(60))
def test_intersection_number_against_grid(seed):
    rng = random.Random(seed)
    n = rng.randint(5, 8)
    a, b = random_subtorus_pair(rng, n, crossing=rng.random() < 0.6)
    number = subtorus_intersection_number(a, b)
    assert abs(number) == transverse_count(a.offsets, b.offsets)
    if number:
        first = [i - 1 for i in indices(a.free)]
        second = [i - 1 for i in indices(b.free)]
        assert number == a.orientation * b.orientation * frame_determinant(first, second)


def test_non_complementary_subtori_raise():
    a = AffineSubtorus.with_free(5, monomial(1, 2))
    with pytest.raises(NonComplementary):
        subtorus_intersection_number(a, a)


@pytest.mark.parametrize("seed", range(20))
def test_frame_product_orientation(seed):
    rng = random.Random(1000 + seed)
    n = rng.randint(4, 8)
    coords = list(range(n))
    rng.shuffle(coords)
    w_size = rng.randint(0, n - 2)
    split = rng.randint(w_size + 1, n - 1)
    w = coords[:w_size]
    a_cols = sorted(w + coords[w_size:split])
    b_cols = sorted(w + coords[split:])
    a = sum(1 << i for i in a_cols)
    b = sum(1 << i for i in b_cols)
    sign, meet = frame_product(a, 1, b, 1, top(n))
    assert meet == sum(1 << i for i in w)

    # e = ascending basis of W; (e, e') and (e, e'') are compared with the
    # ascending bases of A and B, then (e, e', e'') with the ambient basis
    e = sorted(w)
    e1 = [i for i in a_cols if i not in w]
    e2 = [i for i in b_cols if i not in w]

    def relative(frame, cols):
        m = np.zeros((len(frame), len(frame)))
        for row, i in enumerate(frame):
            m[row, cols.index(i)] = 1
        return int(round(np.linalg.det(m)))

    expected = relative(e + e1, a_cols) * relative(e + e2, b_cols) * frame_determinant(e + e1, e2)
    assert sign == expected


def test_frame_product_non_transverse():
    assert frame_product(monomial(1, 2), 1, monomial(1, 3), 1, top(4)) is None


def test_alpha_torus_meets_dual_once():
    t_alpha = fixed_locus(ALPHA)[0]
    dual = AffineSubtorus.with_free(7, monomial(1, 2, 3, 4))
    assert subtorus_intersection_number(t_alpha, dual) == 1


def test_gamma_images_count_64(example):
    t_alpha = fixed_locus(ALPHA)[0]
    dual = AffineSubtorus.with_free(7, monomial(1, 2, 3, 4))
    total = sum(
        subtorus_intersection_number(t_alpha.image(g), dual.image(h)) for g in example for h in example
    )
    assert total == 64


def test_quotient_pairing_matches_monomial_shortcut(catalogue):
    tori = [g for g in catalogue if g.is_torus]
    for a in tori:
        for b in tori:
            if a.dimension + b.dimension == 7:
                assert quotient_pairing(catalogue, a, b) == monomial_pairing(catalogue, a, b)
    t = catalogue.by_name("t{2,3,5}")
    assert quotient_pairing(catalogue, t, catalogue.by_name("t'{2,3,5}")) == 8
    assert quotient_pairing(catalogue, t, catalogue.by_name("t'{1,4,5}")) == 0
    delta = catalogue.by_name("t{5,6,7}")
    assert quotient_pairing(catalogue, delta, catalogue.by_name("t'{5,6,7}")) == 8


def test_quotient_pairing_rejects_wrong_inputs(catalogue):
    with pytest.raises(TypeError):
        quotient_pairing(catalogue, catalogue.by_name("c[100,1]"), catalogue.by_name("t'{2,3,5}"))
    with pytest.raises(NonComplementary):
        quotient_pairing(catalogue, catalogue.by_name("t{2,3,5}"), catalogue.by_name("t{1,4,5}"))


class TestProductCases:
    def test_torus_torus_point(self, catalogue):
        v = product(catalogue, catalogue.by_name("t{1,4,5}"), catalogue.by_name("t'{1,4,5}"))
        assert v.dimension == 0 and v.scalar == 8

    def test_torus_torus_positive_dimension(self, catalogue):
        # supports {1,4,6,7} and {1,3,5,7} do not span T^7
        v = product(catalogue, catalogue.by_name("t'{2,3,5}"), catalogue.by_name("t'{1,4,5}"))
        assert v.is_zero() and v.dimension == 1

    def test_exceptional_same_orbit_point(self, catalogue):
        v = product(catalogue, catalogue.by_name("c[100,1,1]"), catalogue.by_name("c'[100,1,1]"))
        assert v.scalar == -2

    def test_exceptional_self_product_gives_torus(self, catalogue):
        x = catalogue.by_name("c'[100,1]")
        v = product(catalogue, x, x)
        t = catalogue.by_name("t{5,6,7}")
        assert v.dimension == 3
        assert v.coefficient(t) == -2 and len(v.terms) == 1

    def test_exceptional_different_orbits(self, catalogue):
        v = product(catalogue, catalogue.by_name("c'[100,1]"), catalogue.by_name("c'[100,2]"))
        assert v.is_zero() and v.provenance == "computed"

    def test_torus_exceptional_disjoint(self, catalogue):
        v = product(catalogue, catalogue.by_name("t'{2,3,5}"), catalogue.by_name("c'[100,1]"))
        assert v.is_zero() and v.provenance == "computed"

    def test_torus_exceptional_k3_is_theorem_zero(self, catalogue):
        v = product(catalogue, catalogue.by_name("t'{5,6,7}"), catalogue.by_name("c'[100,1]"))
        assert v.is_zero() and v.provenance == "theorem"

    def test_dimension_too_low(self, catalogue):
        with pytest.raises(DimensionTooLow):
            product(catalogue, catalogue.by_name("c[100,1]"), catalogue.by_name("t{2,3,5}"))


def test_anticommutativity_everywhere(catalogue, table):
    n = catalogue.n
    for (a_name, b_name), ab in table.products.items():
        a, b = catalogue.by_name(a_name), catalogue.by_name(b_name)
        ba = table.products[(b_name, a_name)]
        assert ab.scale(anticommutativity_sign(n, a.dimension, b.dimension)).equals(ba)


def test_nontrivial_census(table):
    rows = table.nontrivial()
    assert len(rows) == 67
    kinds = {}
    for a, b, v in rows:
        kinds[(a.kind, b.kind)] = kinds.get((a.kind, b.kind), 0) + 1
    assert kinds[("C_lambda", "C_tau_dual")] == 36
    assert kinds[("C", "C_dual")] == 12
    assert kinds[("C_dual", "C_dual")] == 12
    assert kinds[("T", "Tdual")] == 4
    assert kinds[("Tdelta", "Tdelta_dual")] == 3
    assert len(table.theorem_sourced()) == 168


@pytest.mark.parametrize("k,expected", [(2, 4096), (3, 2**57)])
def test_pairing_determinants(table, k, expected):
    p = pairing_matrix(table, k)
    assert p.determinant == expected
    assert p.is_diagonal()


def test_pairing_transpose(table):
    n = table.catalogue.n
    for k in range(n + 1):
        p, q = pairing_matrix(table, k), pairing_matrix(table, n - k)
        s = anticommutativity_sign(n, k, n - k)
        for i, row in enumerate(p.matrix):
            for j, x in enumerate(row):
                assert q.matrix[j][i] == s * x


def test_pairing_rejects_bad_k(table):
    with pytest.raises(ValueError):
        pairing_matrix(table, 9)


def test_exact_determinant():
    assert exact_determinant([[0, 1], [1, 0]]) == -1
    assert exact_determinant([[2, 4], [1, 2]]) == 0
    m = [[Fraction(1, 2), 3, 0], [1, Fraction(-1, 3), 2], [5, 0, 1]]
    assert exact_determinant(m) == Fraction(np.linalg.det(np.array(m, dtype=float))).limit_denominator(1000)
    with pytest.raises(ValueError):
        exact_determinant([[1, 2]])


def test_free_action_table(free_group):
    cat = generator_catalogue(free_group)
    table = ring_table(cat)
    assert not table.theorem_sourced()
    for a, b, v in table.nontrivial():
        assert a.is_torus and b.is_torus
        if v.dimension == 0:
            assert abs(v.scalar) == free_group.order


def test_massey_candidate_count(table):
    triples = massey_candidates(table)
    assert len(triples) == 1452
    for a, b, c in triples:
        assert table.product(a, b).is_zero() and table.product(b, c).is_zero()


def test_associativity_defects_come_from_k3_zeros(table):
    defects = associativity_defects(table)
    assert len(defects) == 24
    for d in defects:
        assert any(g.k3_type for g in d.triple)


def test_forced_k3_products(table, catalogue):
    forced = forced_k3_products(table)
    assert len(forced) == 12
    for (x_name, k3_name), value in forced.items():
        x = catalogue.by_name(x_name)
        c = catalogue.exceptional(x.orbit, 0)
        assert value.coefficient(c) == 8


def test_multiply_is_bilinear(catalogue, table):
    a = RingElement.combination(
        5, [(catalogue.by_name("c'[100,1]"), Fraction(2)), (catalogue.by_name("c'[100,2]"), Fraction(-1))]
    )
    b = RingElement.of(catalogue.by_name("c[100,1]"))
    assert multiply(catalogue, a, b, table).scalar == -4
    assert multiply(catalogue, RingElement.point(1), a, table).is_zero()


def test_monomial_pairing_sign_is_wedge_sign(catalogue):
    for a, b in combinations([g for g in catalogue if g.is_torus], 2):
        if a.dimension + b.dimension == 7 and not a.support & b.support:
            assert monomial_pairing(catalogue, a, b) == 8 * wedge_sign(a.support, b.support)
