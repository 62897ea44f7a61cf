import itertools

import numpy as np
import pytest

from cayley_census import (
    make_abelian,
    make_cyclic,
    make_dihedral,
    make_generalized_dicyclic,
)


@pytest.fixture(scope="session")
def C3():
    return make_cyclic(3)


@pytest.fixture(scope="session")
def C4():
    return make_cyclic(4)


@pytest.fixture(scope="session")
def V4():
    return make_abelian([2, 2])


@pytest.fixture(scope="session")
def S3():
    return make_dihedral(3)


@pytest.fixture(scope="session")
def D4():
    return make_dihedral(4)


@pytest.fixture(scope="session")
def Q8_with_witness():
    return make_generalized_dicyclic(make_cyclic(4), 2)


@pytest.fixture(scope="session")
def Q8(Q8_with_witness):
    return Q8_with_witness[0]


def brute_force_automorphisms(G):
    """Every permutation of the elements that respects the table (n! scan)."""
    n = G.order
    out = []
    for p in itertools.permutations(range(n)):
        p = np.array(p)
        if np.array_equal(p[G.mul], G.mul[p[:, None], p[None, :]]):
            out.append(tuple(int(v) for v in p))
    return out


def all_subsets(n):
    for bits in range(1 << n):
        yield [x for x in range(n) if bits >> x & 1]


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
