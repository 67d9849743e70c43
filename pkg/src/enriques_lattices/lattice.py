"""Exact integral lattice arithmetic.

Gram matrices, Smith normal form, discriminant groups, orthogonal
complements and the induced action of isometries on discriminant groups.
Everything is done over Python integers and ``fractions.Fraction``; numpy is
used only as a container (``dtype=object``) so no value is ever rounded.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Sequence

import numpy as np


class LatticeError(ValueError):
    """Raised on malformed lattice data (dimension mismatch, degeneracy, ...)."""


class NotAnIsometryError(LatticeError):
    pass


def int_matrix(rows) -> np.ndarray:
    """Return ``rows`` as a 2-d numpy array of Python ints."""
    arr = np.array(rows, dtype=object)
    if arr.ndim == 1:
        arr = arr.reshape(1, -1) if arr.size else arr.reshape(0, 0)
    out = np.empty(arr.shape, dtype=object)
    for idx, v in np.ndenumerate(arr):
        if isinstance(v, Fraction):
            if v.denominator != 1:
                raise LatticeError(f"non-integral entry {v}")
            v = v.numerator
        out[idx] = int(v)
    return out


def int_vector(coords) -> np.ndarray:
    out = np.empty(len(coords), dtype=object)
    for i, v in enumerate(coords):
        out[i] = int(v)
    return out


def identity(n: int) -> np.ndarray:
    return int_matrix(np.eye(n, dtype=np.int64))


def to_list(a) -> list:
    """Plain nested lists of ints, for JSON output."""
    return np.asarray(a, dtype=object).tolist()


@dataclass(frozen=True, eq=False)
class Lattice:
    """A nondegenerate integral lattice given by its Gram matrix."""

    gram: np.ndarray
    rank: int = field(init=False)

    def __post_init__(self):
        g = int_matrix(self.gram)
        if g.shape[0] != g.shape[1]:
            raise LatticeError(f"Gram matrix must be square, got {g.shape}")
        if g.shape[0] == 0:
            raise LatticeError("rank must be positive")
        if not (g == g.T).all():
            raise LatticeError("Gram matrix is not symmetric")
        g.setflags(write=False)
        object.__setattr__(self, "gram", g)
        object.__setattr__(self, "rank", g.shape[0])

    def __eq__(self, other):
        return isinstance(other, Lattice) and np.array_equal(self.gram, other.gram)

    def __hash__(self):
        return hash(tuple(self.gram.flatten()))

    def to_json(self) -> dict:
        return {"rank": self.rank, "gram": to_list(self.gram)}

    @classmethod
    def from_json(cls, data: dict) -> "Lattice":
        try:
            gram = data["gram"]
        except (KeyError, TypeError) as exc:
            raise LatticeError("lattice JSON needs a 'gram' entry") from exc
        lat = cls(gram)
        if "rank" in data and int(data["rank"]) != lat.rank:
            raise LatticeError(f"rank {data['rank']} does not match Gram size {lat.rank}")
        return lat


def direct_sum(*lattices: Lattice) -> Lattice:
    n = sum(L.rank for L in lattices)
    g = np.zeros((n, n), dtype=object)
    g[:] = 0
    k = 0
    for L in lattices:
        g[k:k + L.rank, k:k + L.rank] = L.gram
        k += L.rank
    return Lattice(g)


def _check_vec(L: Lattice, x) -> np.ndarray:
    x = np.asarray(x, dtype=object)
    if x.shape != (L.rank,):
        raise LatticeError(f"vector of shape {x.shape} does not live in a rank {L.rank} lattice")
    return x


def inner(L: Lattice, x, y) -> int:
    """Bilinear pairing ``x^T G y``."""
    x = _check_vec(L, x)
    y = _check_vec(L, y)
    return x.dot(L.gram.dot(y))


def determinant(m) -> int:
    """Exact integer determinant via fraction-free (Bareiss) elimination."""
    a = [[int(v) for v in row] for row in np.asarray(m, dtype=object)]
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def inverse(m) -> np.ndarray:
    """Exact inverse over the rationals (Gauss-Jordan on Fractions)."""
    a = [[Fraction(int(v)) for v in row] for row in np.asarray(m, dtype=object)]
    n = len(a)
    inv = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for c in range(n):
        p = next((r for r in range(c, n) if a[r][c] != 0), None)
        if p is None:
            raise LatticeError("matrix is singular")
        a[c], a[p] = a[p], a[c]
        inv[c], inv[p] = inv[p], inv[c]
        piv = a[c][c]
        a[c] = [v / piv for v in a[c]]
        inv[c] = [v / piv for v in inv[c]]
        for r in range(n):
            if r != c and a[r][c] != 0:
                f = a[r][c]
                a[r] = [u - f * v for u, v in zip(a[r], a[c])]
                inv[r] = [u - f * v for u, v in zip(inv[r], inv[c])]
    return np.array(inv, dtype=object)


def signature(gram) -> tuple[int, int]:
    """Signature ``(p, n)`` of a symmetric matrix by rational congruence diagonalization."""
    a = [[Fraction(int(v)) for v in row] for row in np.asarray(gram, dtype=object)]
    n = len(a)
    pos = neg = 0
    k = 0
    while k < n:
        if a[k][k] == 0:
            j = next((j for j in range(k + 1, n) if a[j][j] != 0), None)
            if j is not None:
                a[k], a[j] = a[j], a[k]
                for row in a:
                    row[k], row[j] = row[j], row[k]
            else:
                j = next((j for j in range(k + 1, n) if a[k][j] != 0), None)
                if j is None:
                    # zero row: degenerate direction
                    k += 1
                    continue
                # x_k -> x_k + x_j gives a nonzero pivot 2*a[k][j]
                a[k] = [u + v for u, v in zip(a[k], a[j])]
                for row in a:
                    row[k] += row[j]
        piv = a[k][k]
        if piv > 0:
            pos += 1
        else:
            neg += 1
        for i in range(k + 1, n):
            f = a[i][k] / piv
            if f:
                a[i] = [u - f * v for u, v in zip(a[i], a[k])]
        for i in range(k + 1, n):
            a[i][k] = Fraction(0)
            a[k][i] = Fraction(0)
        k += 1
    return pos, neg


def lattice_invariants(L: Lattice) -> dict:
    det = determinant(L.gram)
    if det == 0:
        raise LatticeError("degenerate Gram matrix")
    return {
        "determinant": det,
        "is_even": all(L.gram[i, i] % 2 == 0 for i in range(L.rank)),
        "signature": signature(L.gram),
    }


def smith_normal_form(m) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Smith normal form ``P @ M @ Q = D`` over the integers.

    ``P`` and ``Q`` are unimodular, ``D`` is diagonal with nonnegative
    entries and ``d_i | d_{i+1}``. Works for rectangular ``M``.
    """
    A = [[int(v) for v in row] for row in np.asarray(m, dtype=object)]
    rows = len(A)
    cols = len(A[0]) if rows else 0
    P = [[int(i == j) for j in range(rows)] for i in range(rows)]
    Q = [[int(i == j) for j in range(cols)] for i in range(cols)]

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        P[i], P[j] = P[j], P[i]

    def swap_cols(i, j):
        for M in (A, Q):
            for row in M:
                row[i], row[j] = row[j], row[i]

    def add_row(src, dst, f):  # row_dst += f * row_src
        A[dst] = [u + f * v for u, v in zip(A[dst], A[src])]
        P[dst] = [u + f * v for u, v in zip(P[dst], P[src])]

    def add_col(src, dst, f):  # col_dst += f * col_src
        for M in (A, Q):
            for row in M:
                row[dst] += f * row[src]

    for t in range(min(rows, cols)):
        nz = [(abs(A[i][j]), i, j) for i in range(t, rows) for j in range(t, cols) if A[i][j]]
        if not nz:
            break
        _, i, j = min(nz)
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            done = True
            for i in range(t + 1, rows):
                if A[i][t]:
                    add_row(t, i, -(A[i][t] // A[t][t]))
                    if A[i][t]:
                        swap_rows(t, i)
                        done = False
            for j in range(t + 1, cols):
                if A[t][j]:
                    add_col(t, j, -(A[t][j] // A[t][t]))
                    if A[t][j]:
                        swap_cols(t, j)
                        done = False
            if not done:
                continue
            # divisibility of the remaining block
            bad = next(
                ((i, j) for i in range(t + 1, rows) for j in range(t + 1, cols)
                 if A[i][j] % A[t][t]),
                None,
            )
            if bad is None:
                break
            add_row(bad[0], t, 1)
        if A[t][t] < 0:
            A[t] = [-v for v in A[t]]
            P[t] = [-v for v in P[t]]
    return int_matrix(A) if rows else np.zeros((0, cols), dtype=object), int_matrix(P), int_matrix(Q)


@dataclass(frozen=True, eq=False)
class DiscriminantGroup:
    """The finite abelian group ``L^vee / L``.

    ``invariant_factors`` are the Smith invariants of the Gram matrix that
    exceed one. ``generator_lifts`` are rational vectors (lattice-basis
    coordinates, reduced to ``[0, 1)``) whose classes generate the cyclic
    factors in order. ``_coord`` is the integral matrix ``Q^{-1}`` used to
    read off the coordinates of a class.
    """

    lattice: Lattice
    invariant_factors: tuple[int, ...]
    generator_lifts: tuple[tuple[Fraction, ...], ...]
    _coord: np.ndarray = field(repr=False)
    _rows: tuple[int, ...] = field(repr=False)

    @property
    def order(self) -> int:
        out = 1
        for d in self.invariant_factors:
            out *= d
        return out

    def classify(self, x) -> tuple[int, ...]:
        """Coordinates of the class of a dual vector ``x`` on the generators."""
        x = [Fraction(v) for v in x]
        out = []
        for r, d in zip(self._rows, self.invariant_factors):
            y = sum((self._coord[r, j] * x[j] for j in range(len(x))), Fraction(0))
            z = y * d
            if z.denominator != 1:
                raise LatticeError(f"{x} is not in the dual lattice")
            out.append(int(z) % d)
        return tuple(out)

    def elements(self) -> list[tuple[int, ...]]:
        out = [()]
        for d in self.invariant_factors:
            out = [e + (k,) for e in out for k in range(d)]
        return out

    def negate(self, c: Sequence[int]) -> tuple[int, ...]:
        return tuple((-v) % d for v, d in zip(c, self.invariant_factors))

    def to_json(self) -> dict:
        return {
            "invariant_factors": list(self.invariant_factors),
            "order": self.order,
            "generator_lifts": [[str(v) for v in g] for g in self.generator_lifts],
        }


def discriminant_group(L: Lattice) -> DiscriminantGroup:
    D, P, Q = smith_normal_form(L.gram)
    diag = [D[i, i] for i in range(L.rank)]
    if any(d == 0 for d in diag):
        raise LatticeError("degenerate Gram matrix")
    # L^vee = G^{-1} Z^n = Q D^{-1} Z^n, so Q[:, i] / d_i generate
    rows = tuple(i for i, d in enumerate(diag) if d > 1)
    lifts = []
    for i in rows:
        col = [Fraction(Q[j, i], diag[i]) for j in range(L.rank)]
        lifts.append(tuple(v - (v.numerator // v.denominator) for v in col))
    return DiscriminantGroup(
        lattice=L,
        invariant_factors=tuple(diag[i] for i in rows),
        generator_lifts=tuple(lifts),
        _coord=inverse(Q),
        _rows=rows,
    )


def dual_basis(L: Lattice) -> np.ndarray:
    """Columns are the dual basis vectors ``e_i^vee`` (``e_i . e_j^vee = delta_ij``)."""
    return inverse(L.gram)


def orthogonal_complement(L: Lattice, S: Sequence) -> np.ndarray:
    """Integral basis of ``S^perp`` in ``L``, returned as rows.

    The basis is read off the unimodular column transform of the Smith form
    of the pairing matrix, so the complement is automatically primitive.
    """
    if len(S) == 0:
        return identity(L.rank)
    A = int_matrix([_check_vec(L, s) for s in S]).dot(L.gram)
    D, _, Q = smith_normal_form(A)
    r = sum(1 for i in range(min(D.shape)) if D[i, i] != 0)
    if r < len(S):
        raise LatticeError("vectors in S are linearly dependent")
    return int_matrix(Q[:, r:].T) if r < L.rank else np.zeros((0, L.rank), dtype=object)


def sublattice(L: Lattice, basis) -> Lattice:
    B = int_matrix(basis)
    return Lattice(B.dot(L.gram).dot(B.T))


def is_isometry(L: Lattice, M) -> bool:
    M = np.asarray(M, dtype=object)
    if M.shape != (L.rank, L.rank):
        return False
    return bool((M.T.dot(L.gram).dot(M) == L.gram).all())


def check_isometry(L: Lattice, M) -> np.ndarray:
    M = int_matrix(M)
    if not is_isometry(L, M):
        raise NotAnIsometryError("matrix does not preserve the Gram form")
    return M


def discriminant_action(L: Lattice, g, disc: DiscriminantGroup | None = None) -> np.ndarray:
    """Matrix of the automorphism induced by ``g`` on ``L^vee / L``.

    Column ``j`` holds the coordinates of ``g(generator_j)``; entries in row
    ``i`` are reduced modulo the ``i``-th invariant factor.
    """
    g = check_isometry(L, g)
    disc = disc or discriminant_group(L)
    k = len(disc.invariant_factors)
    out = np.zeros((k, k), dtype=object)
    out[:] = 0
    for j, lift in enumerate(disc.generator_lifts):
        image = [sum((g[r, c] * lift[c] for c in range(L.rank)), Fraction(0)) for r in range(L.rank)]
        out[:, j] = disc.classify(image)
    return out


def isometry_from_json(data: dict, L: Lattice | None = None) -> np.ndarray:
    try:
        M = int_matrix(data["matrix"])
    except (KeyError, TypeError) as exc:
        raise LatticeError("isometry JSON needs a 'matrix' entry") from exc
    if L is not None:
        M = check_isometry(L, M)
    return M


def isometry_to_json(M) -> dict:
    return {"matrix": to_list(M)}


def primitive(x) -> bool:
    g = 0
    for v in x:
        g = gcd(g, int(v))
    return g == 1
