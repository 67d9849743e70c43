"""ADE root lattices in the negative-definite convention (Gram = -Cartan).

Node order (0-based indices) follows the diagram labels:

======  =====================================================================
family  nodes
======  =====================================================================
A_n     ``a_1 .. a_n`` = ``0 .. n-1``, a chain.
D_n     ``b_1 .. b_n`` = ``0 .. n-1``; chain ``b_2 - b_3 - ... - b_n``,
        branch ``b_1`` attached to ``b_3``.
E_n     ``c_1 .. c_n`` = ``0 .. n-1``; chain ``c_2 - c_3 - ... - c_n``,
        branch ``c_1`` attached to ``c_4``.
======  =====================================================================

Reflections act on column vectors as ``x -> x + (x.e) e``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property, lru_cache

import numpy as np

from .lattice import (
    DiscriminantGroup,
    Lattice,
    LatticeError,
    check_isometry,
    determinant,
    discriminant_action,
    discriminant_group,
    dual_basis,
    identity,
    int_matrix,
    int_vector,
    inner,
)

FAMILIES = ("A", "D", "E")


@dataclass(frozen=True, order=True)
class ADEType:
    family: str
    rank: int

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise LatticeError(f"unknown ADE family {self.family!r}")
        ok = {
            "A": self.rank >= 1,
            "D": self.rank >= 4,
            "E": self.rank in (6, 7, 8),
        }[self.family]
        if not ok:
            raise LatticeError(f"invalid rank {self.rank} for family {self.family}")

    def __str__(self):
        return f"{self.family}{self.rank}"

    @classmethod
    def parse(cls, text: str) -> "ADEType":
        m = re.fullmatch(r"\s*([ADEade])_?(\d+)\s*", text)
        if not m:
            raise LatticeError(f"cannot parse ADE type {text!r}")
        return cls(m.group(1).upper(), int(m.group(2)))

    def to_json(self) -> dict:
        return {"family": self.family, "rank": self.rank}

    @classmethod
    def from_json(cls, data: dict) -> "ADEType":
        return cls(str(data["family"]).upper(), int(data["rank"]))

    @property
    def label(self) -> str:
        return {"A": "a", "D": "b", "E": "c"}[self.family]


def all_types(max_rank: int = 10) -> list[ADEType]:
    """Every ADE type of rank at most ``max_rank`` (A, then D, then E)."""
    out = [ADEType("A", n) for n in range(1, max_rank + 1)]
    out += [ADEType("D", n) for n in range(4, max_rank + 1)]
    out += [ADEType("E", n) for n in (6, 7, 8) if n <= max_rank]
    return out


def dynkin_edges(t: ADEType) -> list[tuple[int, int]]:
    n = t.rank
    if t.family == "A":
        return [(i, i + 1) for i in range(n - 1)]
    # D and E: chain on nodes 1..n-1, branch node 0 on the third (D) or fourth (E) label
    chain = [(i, i + 1) for i in range(1, n - 1)]
    attach = 2 if t.family == "D" else 3
    return chain + [(0, attach)]


def node_labels(t: ADEType) -> list[str]:
    return [f"{t.label}{i + 1}" for i in range(t.rank)]


# Multiplicities of the fundamental roots in the highest root, in node order.
def _highest_root_table(t: ADEType) -> list[int]:
    n = t.rank
    if t.family == "A":
        return [1] * n
    if t.family == "D":
        return [1, 1] + [2] * (n - 3) + [1]
    return {
        6: [2, 1, 2, 3, 2, 1],
        7: [2, 2, 3, 4, 3, 2, 1],
        8: [3, 2, 4, 6, 5, 4, 3, 2],
    }[n]


def negative_cartan(t: ADEType) -> np.ndarray:
    g = -2 * identity(t.rank)
    for i, j in dynkin_edges(t):
        g[i, j] = g[j, i] = 1
    return g


@dataclass(frozen=True)
class DiagramAutomorphism:
    """Permutation ``perm`` of nodes: node ``j`` is sent to ``perm[j]``."""

    perm: tuple[int, ...]
    type: ADEType | None = None

    def __post_init__(self):
        object.__setattr__(self, "perm", tuple(int(p) for p in self.perm))
        if sorted(self.perm) != list(range(len(self.perm))):
            raise LatticeError(f"{self.perm} is not a permutation")
        if self.type is not None:
            edges = {frozenset(e) for e in dynkin_edges(self.type)}
            image = {frozenset((self.perm[i], self.perm[j])) for i, j in edges}
            if image != edges:
                raise LatticeError(f"{self.perm} does not preserve the {self.type} diagram")

    @property
    def is_identity(self) -> bool:
        return all(i == p for i, p in enumerate(self.perm))

    def compose(self, other: "DiagramAutomorphism") -> "DiagramAutomorphism":
        """``self after other``."""
        return DiagramAutomorphism(tuple(self.perm[p] for p in other.perm), self.type)

    def matrix(self) -> np.ndarray:
        n = len(self.perm)
        m = identity(n) * 0
        for j, p in enumerate(self.perm):
            m[p, j] = 1
        return m

    def describe(self) -> str:
        if self.type is None:
            return str(list(self.perm))
        names = node_labels(self.type)
        moved = [f"{names[j]}->{names[p]}" for j, p in enumerate(self.perm) if j != p]
        return ", ".join(moved) if moved else "identity"


@dataclass(frozen=True, eq=False)
class RootDatum:
    type: ADEType
    lattice: Lattice
    highest_root: np.ndarray
    simple_roots: tuple[int, ...]
    positive_roots: tuple[tuple[int, ...], ...] = field(repr=False)

    @property
    def rank(self) -> int:
        return self.type.rank

    @cached_property
    def discriminant(self) -> DiscriminantGroup:
        return discriminant_group(self.lattice)

    @cached_property
    def rho(self) -> np.ndarray:
        """Integral interior point of the fundamental chamber: ``rho . e_i = |det|``."""
        d = abs(determinant(self.lattice.gram))
        col = dual_basis(self.lattice).dot(int_vector([d] * self.rank))
        return int_matrix([col]).reshape(-1)

    @cached_property
    def fundamental_reflections(self) -> tuple[np.ndarray, ...]:
        return tuple(reflection(self, unit(self.rank, i)) for i in range(self.rank))

    def root_json(self) -> dict:
        return {
            "type": self.type.to_json(),
            "labels": node_labels(self.type),
            "gram": self.lattice.to_json()["gram"],
            "highest_root": [int(v) for v in self.highest_root],
            "simple_roots": list(self.simple_roots),
            "positive_root_count": len(self.positive_roots),
        }


def unit(n: int, i: int) -> np.ndarray:
    v = int_vector([0] * n)
    v[i] = 1
    return v


def _positive_root_closure(gram: np.ndarray) -> list[tuple[int, ...]]:
    n = gram.shape[0]
    g = [[int(v) for v in row] for row in gram]
    found = {tuple(int(i == j) for j in range(n)) for i in range(n)}
    frontier = list(found)
    while frontier:
        new = []
        for r in frontier:
            # r + e_i has square r^2 + 2 r.e_i - 2, so it is a root iff r.e_i == 1
            pair = [sum(r[k] * g[k][i] for k in range(n)) for i in range(n)]
            for i in range(n):
                if pair[i] == 1:
                    s = r[:i] + (r[i] + 1,) + r[i + 1:]
                    if s not in found:
                        found.add(s)
                        new.append(s)
        frontier = new
    return sorted(found)


def positive_roots(t: ADEType) -> list[np.ndarray]:
    return [int_vector(r) for r in build_root_datum(t).positive_roots]


@lru_cache(maxsize=None)
def build_root_datum(t: ADEType) -> RootDatum:
    gram = negative_cartan(t)
    lat = Lattice(gram)
    roots = _positive_root_closure(gram)
    table = _highest_root_table(t)
    top = max(roots, key=sum)
    if list(top) != table or sum(1 for r in roots if sum(r) == sum(top)) != 1:
        raise AssertionError(f"highest root table for {t} disagrees with enumeration: {top}")
    hr = int_vector(table)
    hr.setflags(write=False)
    return RootDatum(
        type=t,
        lattice=lat,
        highest_root=hr,
        simple_roots=tuple(i for i, c in enumerate(table) if c == 1),
        positive_roots=tuple(roots),
    )


def reflection(rd: RootDatum | Lattice, e) -> np.ndarray:
    """Matrix of ``x -> x + (x.e) e`` for a (-2)-vector ``e``."""
    L = rd.lattice if isinstance(rd, RootDatum) else rd
    e = int_vector(e)
    if inner(L, e, e) != -2:
        raise LatticeError(f"{list(e)} is not a (-2)-vector")
    row = L.gram.dot(e)
    return identity(L.rank) + np.outer(e, row).astype(object)


def simple_root_discriminant_bijection(rd: RootDatum) -> dict[int, tuple[int, ...]]:
    """Class of ``e_i^vee`` in the discriminant group, for each simple root ``e_i``."""
    duals = dual_basis(rd.lattice)
    return {i: rd.discriminant.classify(duals[:, i]) for i in rd.simple_roots}


def word_product(gens, word, n: int) -> np.ndarray:
    out = identity(n)
    for i in word:
        out = out.dot(gens[i])
    return out


def decompose_isometry(rd: RootDatum, g) -> tuple[list[int], DiagramAutomorphism]:
    """Split ``g = s_{w_0} s_{w_1} ... s_{w_k} P`` with ``P`` a diagram automorphism.

    The word is obtained by walking ``g(rho)`` back into the fundamental
    chamber, always reflecting in the smallest index with negative pairing.
    """
    g = check_isometry(rd.lattice, g)
    G = rd.lattice.gram
    refl = rd.fundamental_reflections
    y = g.dot(rd.rho)
    word: list[int] = []
    cap = len(rd.positive_roots) + 1
    while True:
        pairing = G.dot(y)
        i = next((i for i in range(rd.rank) if pairing[i] < 0), None)
        if i is None:
            break
        y = refl[i].dot(y)
        word.append(i)
        if len(word) > cap:
            raise AssertionError("chamber walk exceeded the number of positive roots")
    rest = g
    for i in word:
        rest = refl[i].dot(rest)
    perm = []
    for j in range(rd.rank):
        col = rest[:, j]
        hits = [k for k in range(rd.rank) if col[k] != 0]
        if len(hits) != 1 or col[hits[0]] != 1:
            raise AssertionError("residual after chamber walk is not a permutation")
        perm.append(hits[0])
    return word, DiagramAutomorphism(tuple(perm), rd.type)


def is_minus_weyl(rd: RootDatum, g) -> bool:
    """True iff ``g`` lies in ``-W``, i.e. it acts as ``-1`` on the discriminant group."""
    disc = rd.discriminant
    action = discriminant_action(rd.lattice, g, disc)
    k = len(disc.invariant_factors)
    for i, d in enumerate(disc.invariant_factors):
        for j in range(k):
            if (action[i, j] + (i == j)) % d:
                return False
    return True


def covering_involution_action(t: ADEType) -> DiagramAutomorphism:
    """Diagram automorphism ``sigma`` with ``P_sigma`` acting as ``-1`` on the discriminant group mod W.

    Read off as the graph part of ``-id``.
    """
    rd = build_root_datum(t)
    _, graph = decompose_isometry(rd, -identity(rd.rank))
    return graph
