import itertools

import numpy as np
import pytest

from enriques_lattices.lattice import (
    LatticeError,
    NotAnIsometryError,
    determinant,
    discriminant_group,
    identity,
    inner,
    is_isometry,
)
from enriques_lattices.roots import (
    ADEType,
    DiagramAutomorphism,
    all_types,
    build_root_datum,
    covering_involution_action,
    decompose_isometry,
    dynkin_edges,
    is_minus_weyl,
    positive_roots,
    reflection,
    simple_root_discriminant_bijection,
    word_product,
)

from conftest import random_weyl_element

TYPES = all_types(10)


def T(s):
    return ADEType.parse(s)


def brute_positive_roots(t, box):
    """All vectors with coordinates in [0, box] of square -2 (independent of the closure)."""
    rd = build_root_datum(t)
    out = []
    for c in itertools.product(range(box + 1), repeat=t.rank):
        if any(c) and inner(rd.lattice, c, c) == -2:
            out.append(c)
    return sorted(out)


@pytest.mark.parametrize("bad", [("A", 0), ("D", 3), ("E", 9), ("B", 2)])
def test_invalid_types(bad):
    with pytest.raises(LatticeError):
        ADEType(*bad)


def test_parse():
    assert ADEType.parse("e8") == ADEType("E", 8)
    assert ADEType.parse("D_5") == ADEType("D", 5)
    with pytest.raises(LatticeError):
        ADEType.parse("F4")


def test_node_order_matches_labels():
    # branch node b_1 sits on b_3, c_1 sits on c_4
    assert (0, 2) in dynkin_edges(T("D6"))
    assert (0, 3) in dynkin_edges(T("E7"))


def test_highest_root_a3():
    assert list(build_root_datum(T("A3")).highest_root) == [1, 1, 1]


def test_highest_root_e8():
    # branch c_1 carries 3, chain c_2..c_8 carries 2 4 6 5 4 3 2
    assert list(build_root_datum(T("E8")).highest_root) == [3, 2, 4, 6, 5, 4, 3, 2]


def test_highest_root_d5():
    assert list(build_root_datum(T("D5")).highest_root) == [1, 1, 2, 2, 1]


@pytest.mark.parametrize("t", TYPES, ids=str)
def test_highest_root_is_max_height(t):
    rd = build_root_datum(t)
    roots = rd.positive_roots
    top = max(sum(r) for r in roots)
    assert [list(r) for r in roots if sum(r) == top] == [list(rd.highest_root)]
    assert rd.simple_roots == tuple(i for i, c in enumerate(rd.highest_root) if c == 1)


@pytest.mark.parametrize("t,count", [("A1", 1), ("A2", 3), ("E8", 120), ("D10", 90)])
def test_positive_root_counts(t, count):
    assert len(positive_roots(T(t))) == count


@pytest.mark.parametrize("t", ["A2", "A4", "D4", "D5", "E6"])
def test_positive_roots_brute_force(t):
    box = max(build_root_datum(T(t)).highest_root)
    assert [tuple(r) for r in positive_roots(T(t))] == brute_positive_roots(T(t), box)


def test_reflection_a1():
    rd = build_root_datum(T("A1"))
    assert reflection(rd, [1]).tolist() == [[-1]]


def test_reflection_a2_on_a2():
    rd = build_root_datum(T("A2"))
    assert list(reflection(rd, [1, 0]).dot([0, 1])) == [1, 1]


def test_reflection_needs_root():
    with pytest.raises(LatticeError):
        reflection(build_root_datum(T("A2")), [2, 0])


@pytest.mark.parametrize("t", TYPES, ids=str)
def test_reflections_are_isometric_involutions(t):
    rd = build_root_datum(t)
    one = identity(rd.rank)
    for r in rd.positive_roots:
        s = reflection(rd, r)
        assert is_isometry(rd.lattice, s)
        assert (s.dot(s) == one).all()
        assert list(s.dot(r)) == [-v for v in r]


def test_bijection_e8_empty():
    assert simple_root_discriminant_bijection(build_root_datum(T("E8"))) == {}


def test_bijection_a2():
    m = simple_root_discriminant_bijection(build_root_datum(T("A2")))
    assert set(m) == {0, 1}
    assert len(set(m.values())) == 2 and (0,) not in m.values()


def test_bijection_d4():
    rd = build_root_datum(T("D4"))
    m = simple_root_discriminant_bijection(rd)
    assert set(m) == {0, 1, 3}
    assert set(m.values()) == {(1, 0), (0, 1), (1, 1)}


@pytest.mark.parametrize("t", TYPES, ids=str)
def test_simple_roots_count(t):
    rd = build_root_datum(t)
    assert len(rd.simple_roots) + 1 == abs(determinant(rd.lattice.gram))


def test_decompose_identity():
    word, graph = decompose_isometry(build_root_datum(T("E6")), identity(6))
    assert word == [] and graph.is_identity


@pytest.mark.parametrize("i", range(4))
def test_decompose_fundamental_reflection(i):
    rd = build_root_datum(T("D4"))
    word, graph = decompose_isometry(rd, rd.fundamental_reflections[i])
    assert word == [i] and graph.is_identity


def test_decompose_minus_id_a2():
    word, graph = decompose_isometry(build_root_datum(T("A2")), -identity(2))
    assert len(word) == 3 and graph.perm == (1, 0)


def test_decompose_rejects_non_isometry():
    with pytest.raises(NotAnIsometryError):
        decompose_isometry(build_root_datum(T("A2")), [[1, 1], [0, 1]])


@pytest.mark.parametrize("t", TYPES, ids=str)
def test_decompose_round_trip(t, rng):
    rd = build_root_datum(t)
    sigma = covering_involution_action(t).matrix()
    for k in range(100):
        g = random_weyl_element(t, rng)
        if k % 2:
            g = g.dot(sigma)
        word, graph = decompose_isometry(rd, g)
        assert len(word) <= len(rd.positive_roots)
        rebuilt = word_product(rd.fundamental_reflections, word, rd.rank).dot(graph.matrix())
        assert (rebuilt == g).all()


@pytest.mark.parametrize("t,expected", [("E8", True), ("A2", False), ("A1", True)])
def test_is_minus_weyl_identity(t, expected):
    rd = build_root_datum(T(t))
    assert is_minus_weyl(rd, identity(rd.rank)) is expected


@pytest.mark.parametrize("t", TYPES, ids=str)
def test_is_minus_weyl_truth_table(t):
    rd = build_root_datum(t)
    two_torsion = all(d == 2 for d in discriminant_group(rd.lattice).invariant_factors)
    expected = t in {T("A1"), T("E7"), T("E8")} or (t.family == "D" and t.rank % 2 == 0)
    assert is_minus_weyl(rd, identity(rd.rank)) == expected == two_torsion
    assert decompose_isometry(rd, -identity(rd.rank))[1].is_identity == expected


def test_covering_a4():
    assert covering_involution_action(T("A4")).perm == (3, 2, 1, 0)


def test_covering_d5():
    assert covering_involution_action(T("D5")).perm == (1, 0, 2, 3, 4)


def test_covering_e7():
    assert covering_involution_action(T("E7")).is_identity


@pytest.mark.parametrize("t", TYPES, ids=str)
def test_covering_is_involution_and_negates(t):
    rd = build_root_datum(t)
    sigma = covering_involution_action(t)
    assert sigma.compose(sigma).is_identity
    assert is_minus_weyl(rd, sigma.matrix())


def test_diagram_automorphism_validation():
    with pytest.raises(LatticeError):
        DiagramAutomorphism((1, 0, 2), T("A3"))
    with pytest.raises(LatticeError):
        DiagramAutomorphism((0, 0, 1))
