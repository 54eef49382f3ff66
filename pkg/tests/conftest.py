from fractions import Fraction

import pytest

from kummer.cohomology import monomial
from kummer.group import AffineInvolutionMap, compose, kummer_example, make_group
from kummer.resolution import generator_catalogue
from kummer.ring import ring_table

HALF = Fraction(1, 2)

ALPHA = AffineInvolutionMap((-1, -1, -1, -1, 1, 1, 1))
BETA = AffineInvolutionMap((-1, -1, 1, 1, -1, -1, 1), (0, HALF, 0, 0, 0, 0, 0))
GAMMA = AffineInvolutionMap((-1, 1, -1, 1, -1, 1, -1), (HALF, 0, HALF, 0, 0, 0, 0))

# the seven invariant 3-forms of the example, as 1-based index triples
EXAMPLE_FORMS = [(2, 4, 6), (3, 4, 7), (5, 6, 7), (1, 2, 7), (1, 3, 6), (1, 4, 5), (2, 3, 5)]


@pytest.fixture(scope="session")
def example():
    return kummer_example()


@pytest.fixture(scope="session")
def alpha_group():
    return make_group([ALPHA])


@pytest.fixture(scope="session")
def free_group():
    return make_group([compose(ALPHA, BETA)])


@pytest.fixture(scope="session")
def catalogue(example):
    return generator_catalogue(example)


@pytest.fixture(scope="session")
def table(catalogue):
    return ring_table(catalogue)


def forms_as_monomials():
    return sorted(monomial(*f) for f in EXAMPLE_FORMS)
