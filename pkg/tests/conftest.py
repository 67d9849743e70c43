import numpy as np
import pytest

from enriques_lattices.e10 import build_e10
from enriques_lattices.lattice import identity
from enriques_lattices.roots import build_root_datum, word_product

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def E10():
    return build_e10()


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


def random_weyl_element(t, rng, length=None):
    """Random Weyl word in the fundamental reflections of a root lattice, as a matrix."""
    rd = build_root_datum(t)
    n = int(rng.integers(0, 12)) if length is None else length
    word = rng.integers(0, rd.rank, size=n).tolist()
    return word_product(rd.fundamental_reflections, word, rd.rank)


def random_root_isometry(t, rng):
    """+-(Weyl element) possibly composed with a diagram automorphism."""
    from enriques_lattices.roots import covering_involution_action

    rd = build_root_datum(t)
    g = random_weyl_element(t, rng)
    if rng.integers(0, 2):
        g = g.dot(covering_involution_action(t).matrix())
    if rng.integers(0, 2):
        g = -g
    return g


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


__all__ = ["identity"]
