"""The quadratic space ``E10 (x) F2``.

Vectors are bit-packed into ints: bit ``i`` is the coordinate on ``e_{i+1}``.
The quadratic form is ``q(x) = x.x / 2 mod 2`` for an integral lift ``x``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable, Sequence

import numpy as np

from .e10 import RANK, build_e10
from .lattice import LatticeError

SIZE = 1 << RANK


def reduce_vector(x: Sequence[int]) -> int:
    if len(x) != RANK:
        raise LatticeError("E10 vectors have length 10")
    return sum(1 << i for i, v in enumerate(x) if int(v) % 2)


def to_bits(v: int) -> list[int]:
    return [(v >> i) & 1 for i in range(RANK)]


def from_bits(bits: Sequence[int]) -> int:
    if len(bits) != RANK or any(b not in (0, 1) for b in bits):
        raise LatticeError("F2 vectors are 0/1 arrays of length 10")
    return reduce_vector(bits)


@dataclass(frozen=True)
class F2QuadSpace:
    """Quadratic form induced from an even Gram matrix, tabulated on all 1024 vectors."""

    diag: tuple[int, ...]
    polar_rows: tuple[int, ...]

    @classmethod
    def from_gram(cls, gram) -> "F2QuadSpace":
        g = [[int(v) for v in row] for row in gram]
        if any(g[i][i] % 2 for i in range(RANK)):
            raise LatticeError("quadratic form needs an even lattice")
        diag = tuple((g[i][i] // 2) % 2 for i in range(RANK))
        rows = tuple(sum(1 << j for j in range(RANK) if g[i][j] % 2) for i in range(RANK))
        return cls(diag, rows)

    @cached_property
    def table(self) -> bytes:
        out = bytearray(SIZE)
        for v in range(SIZE):
            val = 0
            for i in range(RANK):
                if v >> i & 1:
                    val ^= self.diag[i]
                    # each edge i<j counted once
                    val ^= bin(self.polar_rows[i] & v & ~((2 << i) - 1)).count("1") & 1
            out[v] = val
        return bytes(out)

    def q(self, v: int) -> int:
        return self.table[v]

    def b(self, u: int, v: int) -> int:
        """Polar form ``x.y mod 2``."""
        val = 0
        for i in range(RANK):
            if u >> i & 1:
                val ^= bin(self.polar_rows[i] & v).count("1") & 1
        return val

    def isotropic(self) -> list[int]:
        return [v for v in range(SIZE) if self.table[v] == 0]


@lru_cache(maxsize=1)
def e10_space() -> F2QuadSpace:
    return F2QuadSpace.from_gram(build_e10().gram)


@dataclass(frozen=True)
class F2Isometry:
    """Bit matrix stored by columns: ``columns[j]`` is the image of ``e_{j+1}``."""

    columns: tuple[int, ...]

    def __call__(self, v: int) -> int:
        out = 0
        j = 0
        while v:
            if v & 1:
                out ^= self.columns[j]
            v >>= 1
            j += 1
        return out

    @property
    def is_identity(self) -> bool:
        return all(c == 1 << j for j, c in enumerate(self.columns))

    def preserves(self, space: F2QuadSpace) -> bool:
        t = space.table
        return all(t[self(v)] == t[v] for v in range(SIZE))

    def rows(self) -> list[list[int]]:
        return [[(self.columns[j] >> i) & 1 for j in range(RANK)] for i in range(RANK)]


F2_IDENTITY = F2Isometry(tuple(1 << j for j in range(RANK)))


def reduce_isometry(g, space: F2QuadSpace | None = None) -> F2Isometry:
    m = np.asarray(g, dtype=object)
    if m.shape != (RANK, RANK):
        raise LatticeError("E10 isometries are 10x10")
    cols = tuple(sum(1 << i for i in range(RANK) if int(m[i, j]) % 2) for j in range(RANK))
    out = F2Isometry(cols)
    if not out.preserves(space or e10_space()):
        raise LatticeError("reduction mod 2 does not preserve q; input is not an isometry")
    return out


def count_isotropic(space: F2QuadSpace | None = None) -> dict:
    space = space or e10_space()
    total = sum(1 for v in range(SIZE) if space.table[v] == 0)
    return {
        "nonzero_isotropic": total - 1,
        "total": total,
        "nonisotropic": SIZE - total,
        "vectors": SIZE,
    }


def orbit(space: F2QuadSpace, v: int, gens: Iterable[F2Isometry]) -> list[int]:
    """BFS closure of ``{v}`` under ``gens``, sorted by bit value."""
    gens = list(gens)
    seen = {v}
    queue = deque([v])
    while queue:
        u = queue.popleft()
        for g in gens:
            w = g(u)
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return sorted(seen)


def ramification_degree(space: F2QuadSpace, f: int, gens: Iterable[F2Isometry]) -> int:
    """Orbit size of a nonzero isotropic class ``f`` under the group generated by ``gens``."""
    if f == 0:
        raise LatticeError("the zero vector is not a half-fiber class")
    if space.q(f) != 0:
        raise LatticeError("half-fiber classes are isotropic")
    return len(orbit(space, f, gens))


@lru_cache(maxsize=1)
def reflection_generators() -> tuple[F2Isometry, ...]:
    """Mod-2 images of the ten fundamental reflections of E10."""
    L = build_e10()
    return tuple(reduce_isometry(s) for s in L.reflections)
