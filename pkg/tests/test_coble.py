import numpy as np
import pytest

from enriques_lattices.coble import (
    FOUND,
    NOT_FOUND,
    InsufficientPlanesError,
    bounded_word_search,
    make_generator_set,
    sample_g0_element,
)
from enriques_lattices.e10 import RANK, is_in_g0
from enriques_lattices.lattice import LatticeError, identity

ONE = identity(RANK)


@pytest.fixture(scope="module")
def gens():
    return make_generator_set(5, 1)


def test_single_generator(E10):
    g = make_generator_set(1, 1)
    assert len(g) == 1 and is_in_g0(E10, g.involutions[0])


def test_five_generators_bound_three():
    g = make_generator_set(5, 3)
    keys = {tuple(m.flat) for m in g.involutions}
    assert len(keys) == 5


def test_generators_are_involutions(gens):
    for s in gens.involutions:
        assert (s.dot(s) == ONE).all()


def test_seeded_generator_sets_differ():
    a = make_generator_set(3, 1, seed=1)
    b = make_generator_set(3, 1, seed=2)
    assert a.planes != b.planes
    assert make_generator_set(3, 1, seed=1).planes == a.planes


def test_insufficient_planes():
    with pytest.raises(InsufficientPlanesError):
        make_generator_set(10**6, 1)


def test_sigma_word_length_zero(gens):
    assert (sample_g0_element("sigma_word", 0, length=0, gens=gens) == ONE).all()


def test_reflection_squared(E10):
    from enriques_lattices.coble import root_reflection

    s = root_reflection(E10, [1] + [0] * 9)
    assert is_in_g0(E10, s.dot(s))


def test_reflection_pair_nontrivial(E10):
    for seed in range(20):
        g = sample_g0_element("reflection_pair", seed)
        assert is_in_g0(E10, g)
        assert not (g == ONE).all()


def test_samples_in_g0(E10, gens):
    for seed in range(300):
        assert is_in_g0(E10, sample_g0_element("reflection_pair", seed))
        assert is_in_g0(E10, sample_g0_element("sigma_word", seed, gens=gens))


def test_unknown_kind():
    with pytest.raises(ValueError):
        sample_g0_element("nope")


def test_search_identity(gens):
    r = bounded_word_search(ONE, gens)
    assert r.status == FOUND and r.word == []


def test_search_generator(gens):
    r = bounded_word_search(gens.involutions[0], gens)
    assert r.status == FOUND and r.word == [0]


def test_search_conjugate(gens):
    target = gens.word([0, 1, 0])
    r = bounded_word_search(target, gens)
    assert r.found and len(r.word) <= 3
    assert (gens.word(r.word) == target).all()


def test_search_planted(gens, rng):
    for _ in range(40):
        n = int(rng.integers(0, 7))
        w = rng.integers(0, 5, size=n).tolist()
        r = bounded_word_search(gens.word(w), gens)
        assert r.found and len(r.word) <= n
        assert (gens.word(r.word) == gens.word(w)).all()


def test_search_deterministic(gens):
    target = gens.word([3, 1, 4, 2])
    assert bounded_word_search(target, gens).word == bounded_word_search(target, gens).word


def test_search_caps(gens):
    target = gens.word([0, 1, 2, 3, 4, 0])
    r = bounded_word_search(target, gens, max_depth=2)
    assert r.status == NOT_FOUND and r.word is None
    r = bounded_word_search(target, gens, max_nodes=10)
    assert r.status == NOT_FOUND


def test_search_outside_generated_group(gens):
    # a reflection pair is in G0 but need not be a short word in five involutions
    target = sample_g0_element("reflection_pair", 3)
    r = bounded_word_search(target, gens, max_depth=4)
    assert r.status in (FOUND, NOT_FOUND)
    if r.found:
        assert (gens.word(r.word) == target).all()


def test_search_rejects_non_g0(E10, gens):
    with pytest.raises(LatticeError):
        bounded_word_search(E10.reflections[0], gens)
