"""Desk-scale probes of the generation of G0 by the involutions ``sigma_U``.

Words over a generator set are read left to right as matrix products:
``[i, j, k]`` is ``g_i @ g_j @ g_k``. All generators are involutions, so a
word is inverted by reversing it.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from .e10 import (
    E10Lattice,
    HyperbolicPlane,
    build_e10,
    find_hyperbolic_planes,
    is_in_g0,
    isotropic_vectors,
    random_weyl_word,
    sigma_u,
    word_matrix,
)
from .lattice import LatticeError, identity, int_vector

RANK = 10
DEFAULT_MAX_DEPTH = 8
DEFAULT_MAX_NODES = 10**6
FOUND = "found"
NOT_FOUND = "not_found_within_depth"


class InsufficientPlanesError(LookupError):
    pass


@dataclass(frozen=True, eq=False)
class GeneratorSet:
    planes: tuple[HyperbolicPlane, ...]
    involutions: tuple[np.ndarray, ...] = field(repr=False)
    seed: int
    bound: int

    def __len__(self):
        return len(self.involutions)

    def word(self, word) -> np.ndarray:
        out = identity(RANK)
        for i in word:
            out = out.dot(self.involutions[i])
        return out

    def to_json(self) -> dict:
        return {
            "seed": self.seed,
            "bound": self.bound,
            "planes": [p.to_json() for p in self.planes],
        }


def make_generator_set(n: int, bound: int, seed: int = 0) -> GeneratorSet:
    """``sigma_U`` for the first ``n`` planes found within ``bound``.

    With a nonzero ``seed`` the ``n`` planes are drawn from the first ``20 n``
    instead, so different seeds give different (still reproducible) sets.
    """
    if n < 1:
        raise ValueError("need at least one generator")
    L = build_e10()
    pool = n if seed == 0 else 20 * n
    planes = find_hyperbolic_planes(bound, pool)
    if len(planes) < n:
        raise InsufficientPlanesError(f"only {len(planes)} planes within bound {bound}, need {n}")
    if seed != 0:
        rng = np.random.default_rng(seed)
        picks = sorted(rng.choice(len(planes), size=n, replace=False).tolist())
        planes = [planes[i] for i in picks]
    planes = planes[:n]
    invs = []
    for U in planes:
        s = sigma_u(L, U)
        if not is_in_g0(L, s):
            raise AssertionError(f"sigma_U for {U.to_json()} is not in G0")
        invs.append(s)
    keys = {_key(s) for s in invs}
    if len(keys) != len(invs):
        raise AssertionError("generator involutions are not pairwise distinct")
    return GeneratorSet(tuple(planes), tuple(invs), seed, bound)


def root_reflection(L: E10Lattice, e) -> np.ndarray:
    e = int_vector(e)
    if L.inner(e, e) != -2:
        raise LatticeError("not a root")
    return identity(RANK) + np.outer(e, L.gram.dot(e)).astype(object)


def _reflection_pair(L: E10Lattice, rng: np.random.Generator) -> np.ndarray:
    iso = isotropic_vectors(1)
    pairings = np.array(L.gram.tolist(), dtype=np.int64) @ iso.T
    for _ in range(100):
        i = int(rng.integers(0, RANK))
        # f = e_i + 2v is a root whenever v is isotropic and orthogonal to e_i
        candidates = np.nonzero(pairings[i] == 0)[0]
        if candidates.size == 0:
            continue
        v = iso[int(rng.choice(candidates))]
        e = int_vector([int(k == i) for k in range(RANK)])
        f = e + 2 * int_vector(v.tolist())
        w = word_matrix(L, random_weyl_word(int(rng.integers(0, 9)), rng))
        return root_reflection(L, w.dot(e)).dot(root_reflection(L, w.dot(f)))
    raise LookupError("no root pair found; retry with another seed")


def sample_g0_element(kind: str, seed: int = 0, length: int | None = None,
                      gens: GeneratorSet | None = None) -> np.ndarray:
    """A seeded element of G0.

    ``reflection_pair`` returns ``s_e s_f`` for roots ``e = f mod 2``;
    ``sigma_word`` returns a random product of ``sigma_U`` generators
    (``length`` defaults to a random value in ``0..6``).
    """
    L = build_e10()
    rng = np.random.default_rng(seed)
    if kind == "reflection_pair":
        g = _reflection_pair(L, rng)
    elif kind == "sigma_word":
        gens = gens or make_generator_set(5, 1)
        if length is None:
            length = int(rng.integers(0, 7))
        g = gens.word(rng.integers(0, len(gens), size=length).tolist())
    else:
        raise ValueError(f"unknown sample kind {kind!r}")
    if not is_in_g0(L, g):
        raise AssertionError("sampled element is not in G0")
    return g


@dataclass
class WordSearchResult:
    status: str
    word: list[int] | None
    visited: int
    depth: int
    max_depth: int
    max_nodes: int
    wall_time: float = 0.0

    @property
    def found(self) -> bool:
        return self.status == FOUND

    def to_json(self) -> dict:
        return {
            "status": self.status,
            "word": self.word,
            "visited": self.visited,
            "depth": self.depth,
            "max_depth": self.max_depth,
            "max_nodes": self.max_nodes,
            "wall_time": round(self.wall_time, 6),
        }


def _key(m: np.ndarray) -> tuple:
    # full entry sequence: dict lookup compares tuples exactly after hashing
    return tuple(int(v) for v in m.flat)


def bounded_word_search(target, gens: GeneratorSet, max_depth: int = DEFAULT_MAX_DEPTH,
                        max_nodes: int = DEFAULT_MAX_NODES) -> WordSearchResult:
    """Bidirectional BFS for a word in ``gens`` equal to ``target``.

    Layers are expanded whole, the smaller side first, and the shortest word
    among all meetings in a layer is returned (ties broken lexicographically).
    ``not_found_within_depth`` only means the caps were hit.
    """
    L = build_e10()
    target = np.asarray(target, dtype=object)
    if not is_in_g0(L, target):
        raise LatticeError("target is not in G0")
    start = time.perf_counter()
    invs = gens.involutions
    ident = identity(RANK)
    fwd = {_key(ident): []}
    bwd = {_key(target): []}
    front_f = [(ident, [])]
    front_b = [(target, [])]
    depth_f = depth_b = 0

    def result(status, word):
        return WordSearchResult(status, word, len(fwd) + len(bwd), depth_f + depth_b,
                                max_depth, max_nodes, time.perf_counter() - start)

    if _key(ident) in bwd:
        return result(FOUND, [])
    while depth_f + depth_b < max_depth and front_f and front_b:
        forward = len(front_f) <= len(front_b)
        mine, other = (fwd, bwd) if forward else (bwd, fwd)
        frontier = front_f if forward else front_b
        nxt = []
        meets = []
        for m, w in frontier:
            for j, g in enumerate(invs):
                p = m.dot(g)
                k = _key(p)
                if k in mine:
                    continue
                w2 = w + [j]
                mine[k] = w2
                nxt.append((p, w2))
                if k in other:
                    a, b = (w2, other[k]) if forward else (other[k], w2)
                    meets.append(a + b[::-1])
                if len(fwd) + len(bwd) > max_nodes:
                    break
            if len(fwd) + len(bwd) > max_nodes:
                break
        if forward:
            front_f, depth_f = nxt, depth_f + 1
        else:
            front_b, depth_b = nxt, depth_b + 1
        if meets:
            word = min(meets, key=lambda w: (len(w), w))
            if not (gens.word(word) == target).all():
                raise AssertionError("word search produced a word that does not replay")
            return result(FOUND, word)
        if len(fwd) + len(bwd) > max_nodes:
            break
    return result(NOT_FOUND, None)
