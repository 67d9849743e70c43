"""The even unimodular hyperbolic lattice E10 in its Vinberg basis.

The basis is the fundamental root system ``e_1 .. e_10`` of the T(2,3,7)
diagram: a chain ``e_1 - ... - e_9`` with ``e_10`` attached to ``e_3``.
Reflection words use these 1-based labels; ``[3, 1]`` means ``s_3 s_1``.
The Vinberg chamber is ``{x : x.e_i >= 0}`` and ``h`` is the interior point
with ``h.e_i = 1``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from itertools import product
from math import lcm

import numpy as np

from .lattice import (
    Lattice,
    LatticeError,
    check_isometry,
    identity,
    int_matrix,
    int_vector,
    inverse,
    lattice_invariants,
    primitive,
)

log = logging.getLogger(__name__)

RANK = 10
EDGES = [(i, i + 1) for i in range(8)] + [(2, 9)]
DEFAULT_CAP = 10**6


class ReductionError(RuntimeError):
    """A reduction loop hit its iteration cap."""


def e10_gram() -> np.ndarray:
    g = -2 * identity(RANK)
    for i, j in EDGES:
        g[i, j] = g[j, i] = 1
    return g


@dataclass(frozen=True, eq=False)
class E10Lattice:
    lattice: Lattice
    h: np.ndarray

    @property
    def gram(self) -> np.ndarray:
        return self.lattice.gram

    def inner(self, x, y) -> int:
        return int(np.asarray(x, dtype=object).dot(self.gram.dot(np.asarray(y, dtype=object))))

    @cached_property
    def gram_inverse(self) -> np.ndarray:
        return int_matrix(inverse(self.gram))

    @cached_property
    def reflections(self) -> tuple[np.ndarray, ...]:
        """Fundamental reflections; index 0 is ``s_1``."""
        out = []
        for i in range(RANK):
            m = identity(RANK)
            m[i, :] += self.gram[i, :]
            out.append(m)
        return tuple(out)

    def from_pairings(self, y) -> np.ndarray:
        """The vector ``x`` with ``x.e_i = y_i``."""
        return self.gram_inverse.dot(int_vector(y))


@lru_cache(maxsize=1)
def build_e10() -> E10Lattice:
    lat = Lattice(e10_gram())
    inv = lattice_invariants(lat)
    if inv != {"determinant": -1, "is_even": True, "signature": (1, 9)}:
        raise AssertionError(f"E10 self-check failed: {inv}")
    # solve h.e_i = d with the smallest d making h integral
    raw = inverse(lat.gram).dot(np.array([Fraction(1)] * RANK, dtype=object))
    d = lcm(*(Fraction(v).denominator for v in raw))
    h = int_matrix([[v * d for v in raw]]).reshape(-1)
    h.setflags(write=False)
    L = E10Lattice(lat, h)
    pair = lat.gram.dot(h)
    if not all(p > 0 for p in pair) or L.inner(h, h) <= 0:
        raise AssertionError("interior point is not in the open chamber")
    return L


@dataclass(frozen=True, eq=False)
class HyperbolicPlane:
    f1: tuple[int, ...]
    f2: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "f1", tuple(int(v) for v in self.f1))
        object.__setattr__(self, "f2", tuple(int(v) for v in self.f2))

    def __eq__(self, other):
        return isinstance(other, HyperbolicPlane) and (self.f1, self.f2) == (other.f1, other.f2)

    def __hash__(self):
        return hash((self.f1, self.f2))

    def validate(self, L: E10Lattice) -> None:
        f1, f2 = int_vector(self.f1), int_vector(self.f2)
        if len(self.f1) != RANK or len(self.f2) != RANK:
            raise LatticeError("plane vectors must have length 10")
        if L.inner(f1, f1) != 0 or L.inner(f2, f2) != 0:
            raise LatticeError("plane vectors must be isotropic")
        if L.inner(f1, f2) != 1:
            raise LatticeError("plane vectors must pair to 1")
        if not (primitive(self.f1) and primitive(self.f2)):
            raise LatticeError("plane vectors must be primitive")
        if L.inner(f1, L.h) <= 0 or L.inner(f2, L.h) <= 0:
            raise LatticeError("plane vectors must lie in the positive cone")

    def to_json(self) -> dict:
        return {"f1": list(self.f1), "f2": list(self.f2)}

    @classmethod
    def from_json(cls, data: dict) -> "HyperbolicPlane":
        return cls(data["f1"], data["f2"])


@lru_cache(maxsize=8)
def isotropic_vectors(bound: int) -> np.ndarray:
    """Primitive isotropic vectors in the closed positive cone, box-bounded.

    The box is taken on the pairings ``x.e_i``, i.e. on coordinates in the
    (unimodular) dual basis; the vectors are returned in root coordinates,
    sorted lexicographically, as an int64 array.
    """
    if bound < 1:
        raise ValueError("bound must be >= 1")
    L = build_e10()
    gi = np.array(L.gram_inverse.tolist(), dtype=np.int64)
    h = np.array(L.h.tolist(), dtype=np.int64)
    vals = np.arange(-bound, bound + 1, dtype=np.int64)
    side = len(vals)
    head = 3 if side ** 10 > 5 * 10**5 else 0
    tail = np.stack(np.meshgrid(*([vals] * (RANK - head)), indexing="ij"), -1).reshape(-1, RANK - head)
    # quadratic form in pairing coordinates is y^T G^{-1} y
    tail_q = np.einsum("ij,jk,ik->i", tail, gi[head:, head:], tail)
    tail_h = tail @ h[head:]
    found = []
    for prefix in product(vals.tolist(), repeat=head):
        p = np.array(prefix, dtype=np.int64)
        q = tail_q + 2 * (tail @ (gi[head:, :head] @ p)) + p @ gi[:head, :head] @ p
        hx = tail_h + p @ h[:head]
        idx = np.nonzero((q == 0) & (hx > 0))[0]
        if idx.size:
            y = np.concatenate([np.broadcast_to(p, (idx.size, head)), tail[idx]], axis=1)
            found.append(y)
    if not found:
        return np.zeros((0, RANK), dtype=np.int64)
    y = np.concatenate(found)
    y = y[np.gcd.reduce(np.abs(y), axis=1) == 1]
    x = y @ gi.T
    order = np.lexsort(x.T[::-1])
    out = x[order]
    out.setflags(write=False)
    return out


def find_hyperbolic_planes(bound: int, count: int) -> list[HyperbolicPlane]:
    """The first ``count`` planes ``(f1, f2)``, ``f1 < f2``, in lexicographic order.

    Fewer planes are returned (with a warning) if the box does not hold enough.
    """
    L = build_e10()
    iso = isotropic_vectors(bound)
    g = np.array(L.gram.tolist(), dtype=np.int64)
    paired = iso @ g
    planes: list[HyperbolicPlane] = []
    for a in range(len(iso)):
        if len(planes) >= count:
            break
        hits = np.nonzero(paired[a + 1:] @ iso[a] == 1)[0]
        for b in hits[: count - len(planes)]:
            planes.append(HyperbolicPlane(iso[a].tolist(), iso[a + 1 + b].tolist()))
    if len(planes) < count:
        log.warning("only %d of %d hyperbolic planes within bound %d", len(planes), count, bound)
    return planes


def sigma_u(L: E10Lattice, U: HyperbolicPlane) -> np.ndarray:
    """Involution acting as the identity on ``U`` and as ``-1`` on ``U^perp``."""
    U.validate(L)
    f1, f2 = int_vector(U.f1), int_vector(U.f2)
    g = L.gram
    # x -> 2((x.f2) f1 + (x.f1) f2) - x
    m = 2 * (np.outer(f1, g.dot(f2)) + np.outer(f2, g.dot(f1))).astype(object) - identity(RANK)
    return m


def is_in_o_plus(L: E10Lattice, g) -> bool:
    g = check_isometry(L.lattice, g)
    return L.inner(g.dot(L.h), L.h) > 0


def is_in_g0(L: E10Lattice, g) -> bool:
    if not is_in_o_plus(L, g):
        return False
    d = np.asarray(g, dtype=object) - identity(RANK)
    return all(v % 2 == 0 for v in d.flat)


@dataclass(frozen=True)
class ReductionResult:
    word: list[int]
    reduced: list[int]
    steps: int

    def to_json(self) -> dict:
        return {"word": list(self.word), "reduced": list(self.reduced), "steps": self.steps}


def in_closed_positive_cone(L: E10Lattice, x) -> bool:
    x = int_vector(x)
    return L.inner(x, x) >= 0 and L.inner(x, L.h) >= 0


def chamber_reduce(L: E10Lattice, x, cap: int = DEFAULT_CAP) -> ReductionResult:
    """Move ``x`` into the Vinberg chamber by fundamental reflections.

    Each step reflects in the smallest ``e_i`` with ``x.e_i < 0``; the word
    lists the reflections in the order they were applied.
    """
    if len(x) != RANK:
        raise LatticeError("E10 vectors have length 10")
    x = [int(v) for v in x]
    if not in_closed_positive_cone(L, x):
        raise LatticeError("chamber_reduce needs a vector in the closed positive cone")
    g = [[int(v) for v in row] for row in L.gram]
    pairing = [sum(g[i][k] * x[k] for k in range(RANK)) for i in range(RANK)]
    word: list[int] = []
    while True:
        i = next((i for i in range(RANK) if pairing[i] < 0), None)
        if i is None:
            break
        if len(word) >= cap:
            raise ReductionError(f"chamber reduction exceeded {cap} steps")
        c = pairing[i]
        x[i] += c
        for k in range(RANK):
            pairing[k] += c * g[k][i]
        word.append(i + 1)
    return ReductionResult(word=word, reduced=x, steps=len(word))


def word_matrix(L: E10Lattice, word) -> np.ndarray:
    """``s_{w_0} s_{w_1} ... s_{w_k}`` for a 1-based word."""
    out = identity(RANK)
    for i in word:
        out = out.dot(L.reflections[i - 1])
    return out


def apply_word(L: E10Lattice, word, x) -> np.ndarray:
    """Apply the reflections of ``word`` to ``x`` in order (first letter first)."""
    x = int_vector(x)
    for i in word:
        x = L.reflections[i - 1].dot(x)
    return x


def express_in_fundamental_reflections(L: E10Lattice, g, cap: int = DEFAULT_CAP) -> list[int]:
    """A word ``w`` with ``s_{w_0} ... s_{w_k} = g`` for ``g`` in ``O^+(E10)``."""
    g = check_isometry(L.lattice, g)
    if not is_in_o_plus(L, g):
        raise LatticeError("isometry does not preserve the positive cone")
    word = chamber_reduce(L, g.dot(L.h), cap).word
    rest = g
    for i in word:
        rest = L.reflections[i - 1].dot(rest)
    # the T(2,3,7) diagram has no symmetries, so the chamber stabilizer is trivial
    if not (rest == identity(RANK)).all():
        raise AssertionError("residual isometry fixing h is not the identity")
    return word


def random_cone_points(L: E10Lattice, count: int, seed: int = 0, box: int = 3) -> list[list[int]]:
    """Seeded rejection sample of integral points in the closed positive cone.

    Candidates are drawn uniformly from ``[-box, box]^10`` in pairing
    coordinates.
    """
    rng = np.random.default_rng(seed)
    out: list[list[int]] = []
    while len(out) < count:
        y = rng.integers(-box, box + 1, size=RANK).tolist()
        x = L.from_pairings(y)
        if in_closed_positive_cone(L, x):
            out.append([int(v) for v in x])
    return out


def random_weyl_word(length: int, rng: np.random.Generator) -> list[int]:
    return [int(v) + 1 for v in rng.integers(0, RANK, size=length)]

