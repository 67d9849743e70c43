"""Registry of end-to-end checks run by ``verify-all``.

Each check returns ``(ok, details)``. Details never contain timings so that
two runs with the same seed produce byte-identical reports.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import coble, e10, f2
from .class_groups import is_p_torsion, local_class_group
from .lattice import identity, lattice_invariants, orthogonal_complement, sublattice
from .roots import (
    ADEType,
    all_types,
    build_root_datum,
    covering_involution_action,
    decompose_isometry,
    is_minus_weyl,
    simple_root_discriminant_bijection,
)

MAX_RANK = 10


@dataclass(frozen=True)
class Check:
    name: str
    anchor: str
    run: Callable[[int], tuple[bool, str]]


def expected_covering_perm(t: ADEType) -> list[int]:
    """The covering-involution table written out by hand, 0-based node indices."""
    n = t.rank
    if t.family == "A":
        return [n - 1 - i for i in range(n)]
    if t.family == "D":
        return list(range(n)) if n % 2 == 0 else [1, 0] + list(range(2, n))
    if n == 6:
        # c_1 fixed, c_i -> c_{8-i}
        return [0] + [6 - i for i in range(1, 6)]
    return list(range(n))


def expected_minus_id_in_weyl(t: ADEType) -> bool:
    return (t.family, t.rank % 2 if t.family == "D" else t.rank) in {
        ("A", 1), ("D", 0), ("E", 7), ("E", 8)
    }


def expected_class_group_order(t: ADEType) -> int:
    return {"A": t.rank + 1, "D": 4, "E": {6: 3, 7: 2, 8: 1}.get(t.rank)}[t.family]


def brute_force_positive_roots(t: ADEType) -> list[tuple[int, ...]]:
    """Every vector of square -2 in the box ``0 <= c <= highest root``."""
    rd = build_root_datum(t)
    g = np.array(rd.lattice.gram.tolist(), dtype=np.int64)
    ranges = [np.arange(0, int(c) + 1) for c in rd.highest_root]
    box = np.stack(np.meshgrid(*ranges, indexing="ij"), -1).reshape(-1, t.rank)
    sq = np.einsum("ij,jk,ik->i", box, g, box)
    return sorted(tuple(int(v) for v in r) for r in box[sq == -2])


def check_527(seed: int) -> tuple[bool, str]:
    c = f2.count_isotropic()
    return c["nonzero_isotropic"] == 527, f"nonzero isotropic = {c['nonzero_isotropic']}, total = {c['total']}"


def check_diagram_table(seed: int) -> tuple[bool, str]:
    bad = [str(t) for t in all_types(MAX_RANK)
           if list(covering_involution_action(t).perm) != expected_covering_perm(t)]
    return not bad, f"{len(all_types(MAX_RANK))} types checked" + (f"; mismatched: {bad}" if bad else "")


def check_simple_root_bijection(seed: int) -> tuple[bool, str]:
    bad = []
    for t in all_types(MAX_RANK):
        rd = build_root_datum(t)
        disc = rd.discriminant
        classes = list(simple_root_discriminant_bijection(rd).values())
        zero = tuple(0 for _ in disc.invariant_factors)
        nonzero = {c for c in disc.elements() if c != zero}
        if len(rd.simple_roots) != disc.order - 1 or len(set(classes)) != len(classes) \
                or set(classes) != nonzero:
            bad.append(str(t))
    return not bad, "simple roots biject with nonzero classes" + (f"; failed: {bad}" if bad else "")


def check_minus_weyl(seed: int) -> tuple[bool, str]:
    bad = []
    for t in all_types(MAX_RANK):
        rd = build_root_datum(t)
        one = identity(t.rank)
        via_disc = is_minus_weyl(rd, one)
        via_graph = decompose_isometry(rd, -one)[1].is_identity
        if not (via_disc == via_graph == expected_minus_id_in_weyl(t)):
            bad.append(str(t))
    truth = [str(t) for t in all_types(MAX_RANK) if expected_minus_id_in_weyl(t)]
    return not bad, f"-1 in W for {truth}" + (f"; failed: {bad}" if bad else "")


def _sigma_ok(L, U) -> bool:
    s = e10.sigma_u(L, U)
    one = identity(e10.RANK)
    f1, f2_ = np.array(U.f1, dtype=object), np.array(U.f2, dtype=object)
    comp = orthogonal_complement(L.lattice, [f1, f2_])
    return (
        (s.dot(s) == one).all()
        and (s.T.dot(L.gram).dot(s) == L.gram).all()
        and (s.dot(f1) == f1).all()
        and (s.dot(f2_) == f2_).all()
        and all((s.dot(v) == -v).all() for v in comp)
        and all(v % 2 == 0 for v in (s - one).flat)
        and e10.is_in_o_plus(L, s)
    )


def check_sigma_g0(seed: int) -> tuple[bool, str]:
    L = e10.build_e10()
    planes = e10.find_hyperbolic_planes(1, 50)
    good = sum(1 for U in planes if _sigma_ok(L, U))
    return len(planes) == 50 and good == 50, f"{good}/{len(planes)} planes (bound 1) pass"


def sample_o_plus(L, count: int, seed: int) -> list[np.ndarray]:
    """Half random Weyl words, half ``sigma_U`` involutions."""
    rng = np.random.default_rng(seed)
    words = [e10.word_matrix(L, e10.random_weyl_word(int(rng.integers(1, 31)), rng))
             for _ in range(count - count // 2)]
    planes = e10.find_hyperbolic_planes(1, count // 2)
    return words + [e10.sigma_u(L, U) for U in planes]


def check_chamber(seed: int) -> tuple[bool, str]:
    L = e10.build_e10()
    bad_points = 0
    for x in e10.random_cone_points(L, 1000, seed):
        r = e10.chamber_reduce(L, x)
        replay = e10.apply_word(L, r.word, x)
        if list(replay) != r.reduced or any(p < 0 for p in L.gram.dot(np.array(r.reduced, dtype=object))):
            bad_points += 1
    bad_words = 0
    for g in sample_o_plus(L, 100, seed):
        w = e10.express_in_fundamental_reflections(L, g)
        if not (e10.word_matrix(L, w) == g).all():
            bad_words += 1
    ok = bad_points == 0 and bad_words == 0
    return ok, f"1000 points reduced ({bad_points} bad); 100 O+ round trips ({bad_words} bad)"


def check_complement_e8(seed: int) -> tuple[bool, str]:
    L = e10.build_e10()
    planes = e10.find_hyperbolic_planes(1, 50)
    target = {"determinant": 1, "is_even": True, "signature": (0, 8)}
    good = 0
    for U in planes:
        basis = orthogonal_complement(L.lattice, [list(U.f1), list(U.f2)])
        if len(basis) == 8 and lattice_invariants(sublattice(L.lattice, basis)) == target:
            good += 1
    return good == len(planes) > 0, f"{good}/{len(planes)} complements are even unimodular negative definite rank 8"


def check_class_groups(seed: int) -> tuple[bool, str]:
    bad = []
    for t in all_types(MAX_RANK):
        order = local_class_group(t).order
        rd = build_root_datum(t)
        if order != expected_class_group_order(t) or order != len(rd.simple_roots) + 1 \
                or is_p_torsion(t, 2) != expected_minus_id_in_weyl(t):
            bad.append(str(t))
    return not bad, "orders and 2-torsion flags match" + (f"; failed: {bad}" if bad else "")


def check_generation(seed: int) -> tuple[bool, str]:
    L = e10.build_e10()
    gens = coble.make_generator_set(5, 1)
    samples_bad = 0
    for k in range(1000):
        kind = "reflection_pair" if k % 2 == 0 else "sigma_word"
        g = coble.sample_g0_element(kind, seed * 100003 + k, gens=gens)
        if not e10.is_in_g0(L, g):
            samples_bad += 1
    rng = np.random.default_rng(seed)
    planted_bad = 0
    planted = [rng.integers(0, 5, size=n).tolist() for n in range(7) for _ in range(8)]
    for w in planted:
        r = coble.bounded_word_search(gens.word(w), gens)
        if not r.found or len(r.word) > len(w) or not (gens.word(r.word) == gens.word(w)).all():
            planted_bad += 1
    ok = samples_bad == 0 and planted_bad == 0
    return ok, (f"1000 samples in G0 ({samples_bad} bad); "
                f"{len(planted)} planted words recovered ({planted_bad} bad)")


def check_root_counts(seed: int) -> tuple[bool, str]:
    types = [ADEType("A", n) for n in range(1, 6)] + [ADEType("D", 4), ADEType("D", 5)] \
        + [ADEType("E", n) for n in (6, 7, 8)]
    bad = []
    counts = []
    for t in types:
        closure = list(build_root_datum(t).positive_roots)
        if closure != brute_force_positive_roots(t):
            bad.append(str(t))
        counts.append(f"{t}:{len(closure)}")
    return not bad, " ".join(counts) + (f"; failed: {bad}" if bad else "")


CHECKS: list[Check] = [
    Check("f2-isotropic-527", "527 nonzero isotropic vectors in E10 (x) F2", check_527),
    Check("covering-involution-table", "deck involution acts as -1 on E^vee/E", check_diagram_table),
    Check("simple-root-bijection", "simple roots <-> nonzero classes of E^vee/E", check_simple_root_bijection),
    Check("minus-one-in-weyl", "g in -W(E) iff D_g = -id, applied to g = 1", check_minus_weyl),
    Check("sigma-u-in-g0", "id_U + (-id_{U^perp}) lies in the 2-congruence subgroup", check_sigma_g0),
    Check("vinberg-chamber", "O+(E10) = W(E10), chamber x.e_i >= 0", check_chamber),
    Check("complement-is-e8", "E10 = U + E8", check_complement_e8),
    Check("class-group-table", "Cl_P(X) = E^vee/E and p-torsion", check_class_groups),
    Check("g0-generation-probes", "G0 generated by sigma_U (soundness probes only)", check_generation),
    Check("positive-root-counts", "positive root closure vs box enumeration", check_root_counts),
]


def run_all(seed: int = 0) -> list[dict]:
    report = []
    for c in CHECKS:
        try:
            ok, details = c.run(seed)
        except Exception as exc:  # a crashing check is a failed check
            ok, details = False, f"{type(exc).__name__}: {exc}"
        report.append({
            "check_name": c.name,
            "paper_anchor": c.anchor,
            "status": "pass" if ok else "fail",
            "details": details,
        })
    return report
