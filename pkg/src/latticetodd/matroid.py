"""Integer vector configurations and their matroid combinatorics.

Column indices are 0-based throughout. A configuration is an *ordered*
list; the order matters for external activity and hence for the Q_B basis.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from itertools import combinations
from typing import Iterable, Sequence

from . import linalg
from .algebra import Polynomial


class PreconditionError(ValueError):
    """An operation was called on an input outside its domain."""


@dataclass(frozen=True)
class VectorConfig:
    columns: tuple[tuple[int, ...], ...]
    dim: int
    labels: tuple[str, ...] | None = field(default=None, compare=False)

    def __post_init__(self):
        cols = tuple(tuple(int(v) for v in c) for c in self.columns)
        for c in cols:
            if len(c) != self.dim:
                raise ValueError(f"column {c} does not have length {self.dim}")
        object.__setattr__(self, "columns", cols)
        if self.labels is not None and len(self.labels) != len(cols):
            raise ValueError("one label per column required")

    @classmethod
    def from_columns(cls, columns: Iterable[Sequence[int]], dim: int | None = None,
                     labels=None) -> "VectorConfig":
        columns = [tuple(c) for c in columns]
        if dim is None:
            if not columns:
                raise ValueError("dimension needed for an empty configuration")
            dim = len(columns[0])
        return cls(tuple(columns), dim, tuple(labels) if labels else None)

    @classmethod
    def from_matrix(cls, rows: Sequence[Sequence[int]], labels=None) -> "VectorConfig":
        """Build from a d x N matrix whose columns are the vectors."""
        rows = [list(r) for r in rows]
        d = len(rows)
        n = len(rows[0]) if rows else 0
        if any(len(r) != n for r in rows):
            raise ValueError("ragged matrix")
        return cls(tuple(tuple(rows[i][j] for i in range(d)) for j in range(n)), d,
                   tuple(labels) if labels else None)

    @property
    def N(self) -> int:
        return len(self.columns)

    @property
    def matrix(self) -> list[list[int]]:
        return [[c[i] for c in self.columns] for i in range(self.dim)]

    def __len__(self):
        return len(self.columns)

    def __getitem__(self, i):
        return self.columns[i]

    def delete(self, i: int) -> "VectorConfig":
        cols = self.columns[:i] + self.columns[i + 1:]
        labels = self.labels[:i] + self.labels[i + 1:] if self.labels else None
        return VectorConfig(cols, self.dim, labels)

    def select(self, indices: Iterable[int]) -> "VectorConfig":
        return VectorConfig(tuple(self.columns[i] for i in indices), self.dim)

    def permute(self, order: Sequence[int]) -> "VectorConfig":
        return VectorConfig(tuple(self.columns[i] for i in order), self.dim)

    def form(self, i: int) -> Polynomial:
        """Column ``i`` as a linear form in sym(U)."""
        return Polynomial.linear(self.columns[i])

    def is_loop(self, i: int) -> bool:
        return not any(self.columns[i])

    def is_coloop(self, i: int) -> bool:
        return rank(self.delete(i)) < rank(self)

    def spans(self) -> bool:
        return rank(self) == self.dim

    @cached_property
    def fingerprint(self) -> str:
        return f"d={self.dim};" + ";".join(",".join(map(str, c)) for c in self.columns)

    def __repr__(self):
        return f"VectorConfig({self.matrix})"


def rank(X: VectorConfig, subset: Iterable[int] | None = None) -> int:
    cols = X.columns if subset is None else [X.columns[i] for i in subset]
    return linalg.integer_rank(cols, X.dim)


def is_totally_unimodular(X: VectorConfig) -> bool:
    """Every square submatrix has determinant in {-1, 0, 1} (brute force)."""
    m = X.matrix
    d, n = X.dim, X.N
    if any(v not in (-1, 0, 1) for row in m for v in row):
        return False
    for k in range(2, min(d, n) + 1):
        for rows in combinations(range(d), k):
            for cols in combinations(range(n), k):
                sub = [[m[r][c] for c in cols] for r in rows]
                if linalg.det_int(sub) not in (-1, 0, 1):
                    return False
    return True


@dataclass(frozen=True)
class BasisRecord:
    indices: tuple[int, ...]
    ext_active: tuple[int, ...]
    det: int

    def outside(self, n: int) -> tuple[int, ...]:
        """Indices of X \\ (B u E(B)), whose product is Q_B."""
        used = set(self.indices) | set(self.ext_active)
        return tuple(i for i in range(n) if i not in used)


def _basis_det(X: VectorConfig, indices: Sequence[int]) -> int:
    return linalg.det_int([[X.columns[j][i] for j in indices] for i in range(X.dim)])


def external_activity(X: VectorConfig, B: Sequence[int]) -> tuple[int, ...]:
    """E(B): columns x outside B lying in the span of the basis elements before x."""
    B = tuple(sorted(B))
    if len(B) != X.dim or rank(X, B) != X.dim:
        raise PreconditionError(f"{B} is not a basis")
    out = []
    for x in range(X.N):
        if x in B:
            continue
        earlier = [b for b in B if b < x]
        if rank(X, earlier + [x]) == len(earlier):
            out.append(x)
    return tuple(out)


def external_activity_by_circuits(X: VectorConfig, B: Sequence[int]) -> tuple[int, ...]:
    """E(B) as the set of x that are maximal in the unique circuit inside B u x."""
    B = tuple(sorted(B))
    if len(B) != X.dim or rank(X, B) != X.dim:
        raise PreconditionError(f"{B} is not a basis")
    bmat = [[X.columns[j][i] for j in B] for i in range(X.dim)]
    inv = linalg.inverse(bmat) if X.dim else []
    out = []
    for x in range(X.N):
        if x in B:
            continue
        coeffs = linalg.matvec(inv, X.columns[x])
        circuit = [x] + [b for b, c in zip(B, coeffs) if c != 0]
        if max(circuit) == x:
            out.append(x)
    return tuple(out)


@lru_cache(maxsize=512)
def enumerate_bases(X: VectorConfig) -> tuple[BasisRecord, ...]:
    if not X.spans():
        raise PreconditionError("configuration does not span")
    out = []
    for B in combinations(range(X.N), X.dim):
        det = _basis_det(X, B)
        if det != 0:
            out.append(BasisRecord(B, external_activity(X, B), det))
    return tuple(out)


@lru_cache(maxsize=512)
def hyperplane_flats(X: VectorConfig) -> tuple[tuple[tuple[int, ...], frozenset[int]], ...]:
    """(primitive normal, member indices) for each hyperplane spanned by columns."""
    r = rank(X)
    if r != X.dim or X.dim == 0:
        return ()
    seen: dict[tuple[int, ...], frozenset[int]] = {}
    nonloops = [i for i in range(X.N) if not X.is_loop(i)]
    for sub in combinations(nonloops, X.dim - 1):
        if rank(X, sub) != X.dim - 1:
            continue
        eta = linalg.integer_normal([X.columns[i] for i in sub], X.dim)
        if eta in seen:
            continue
        members = frozenset(
            i for i in range(X.N) if sum(a * b for a, b in zip(eta, X.columns[i])) == 0
        )
        seen[eta] = members
    return tuple(sorted(seen.items()))


def cocircuits(X: VectorConfig) -> list[tuple[int, ...]]:
    """Complements of hyperplane flats, sorted."""
    out = {tuple(i for i in range(X.N) if i not in members) for _, members in hyperplane_flats(X)}
    return sorted(out, key=lambda c: (len(c), c))


def cocircuits_brute_force(X: VectorConfig) -> list[tuple[int, ...]]:
    r = rank(X)
    dropping = [
        set(C)
        for k in range(1, X.N + 1)
        for C in combinations(range(X.N), k)
        if rank(X, [i for i in range(X.N) if i not in C]) < r
    ]
    minimal = [C for C in dropping if not any(D < C for D in dropping)]
    return sorted((tuple(sorted(C)) for C in minimal), key=lambda c: (len(c), c))


def unimodular_reducer(x: Sequence[int]) -> list[list[int]]:
    """Unimodular integer matrix M with M x = e_d, for primitive nonzero x."""
    d = len(x)
    m = [[int(i == j) for j in range(d)] for i in range(d)]
    v = list(x)
    last = d - 1
    for i in range(d - 1):
        if v[i] == 0:
            continue
        g, p, q = linalg.egcd(v[i], v[last])
        a, b = v[i] // g, v[last] // g
        row_i = [-b * s + a * t for s, t in zip(m[i], m[last])]
        row_last = [p * s + q * t for s, t in zip(m[i], m[last])]
        m[i], m[last] = row_i, row_last
        v[i], v[last] = 0, g
    if v[last] == -1:
        m[last] = [-s for s in m[last]]
        v[last] = 1
    if v[last] != 1:
        raise PreconditionError(f"column {tuple(x)} is not primitive")
    return m


@dataclass(frozen=True)
class Contraction:
    """X/x in unimodular quotient coordinates, with the induced maps."""

    quotient: VectorConfig
    index: int
    matrix: tuple[tuple[int, ...], ...]

    def point(self, z: Sequence) -> tuple:
        """The image of a point (lattice or rational) in U/x."""
        image = linalg.matvec(self.matrix, z)
        return tuple(image[:-1])

    def poly(self, f: Polynomial) -> Polynomial:
        """pi_x on sym(U): change coordinates so x = s_d, then set s_d = 0."""
        d = len(self.matrix)
        images = [
            Polynomial.linear([self.matrix[j][i] for j in range(d - 1)]) if d > 1
            else Polynomial.zero(0)
            for i in range(d)
        ]
        return f.compose(images)

    def column_map(self) -> dict[int, int]:
        n = self.quotient.N + 1
        return {i: (i if i < self.index else i - 1) for i in range(n) if i != self.index}


def contract(X: VectorConfig, i: int, check_tu: bool = True) -> Contraction:
    if X.is_loop(i):
        raise PreconditionError(f"column {i} is a loop")
    m = unimodular_reducer(X.columns[i])
    cols = []
    for j, c in enumerate(X.columns):
        if j == i:
            continue
        cols.append(tuple(linalg.matvec(m, c)[:-1]))
    quotient = VectorConfig(tuple(cols), X.dim - 1)
    if check_tu and is_totally_unimodular(X) and not is_totally_unimodular(quotient):
        raise AssertionError(f"contraction of {X} at {i} is not totally unimodular")
    return Contraction(quotient, i, tuple(tuple(r) for r in m))


# graphic configurations ----------------------------------------------------

def graph_config(n_vertices: int, edges: Sequence[tuple[int, int]]) -> VectorConfig:
    """Reduced oriented incidence matrix: edge (i, j) with i < j becomes
    e_i - e_j, the row of the last vertex is dropped.

    Orienting from smaller to larger label keeps the digraph acyclic, so the
    cone of the configuration is pointed.
    """
    d = n_vertices - 1
    cols = []
    for a, b in edges:
        i, j = min(a, b), max(a, b)
        v = [0] * d
        if i < d:
            v[i] += 1
        if j < d:
            v[j] -= 1
        cols.append(tuple(v))
    return VectorConfig(tuple(cols), d)


def _connected(n: int, edges: Sequence[tuple[int, int]]) -> bool:
    parent = list(range(n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for a, b in edges:
        parent[find(a)] = find(b)
    return len({find(v) for v in range(n)}) == 1


def connected_graphs(n: int) -> list[list[tuple[int, int]]]:
    """All labelled connected simple graphs on vertices 0..n-1."""
    all_edges = list(combinations(range(n), 2))
    out = []
    for k in range(n - 1, len(all_edges) + 1):
        for es in combinations(all_edges, k):
            if _connected(n, es):
                out.append(list(es))
    return out


def random_connected_graph(n: int, max_edges: int, rng: random.Random) -> list[tuple[int, int]]:
    all_edges = list(combinations(range(n), 2))
    while True:
        k = rng.randint(n - 1, min(max_edges, len(all_edges)))
        es = sorted(rng.sample(all_edges, k))
        if _connected(n, es):
            return es


def basis_inverse(X: VectorConfig, B: Sequence[int]) -> list[list[Fraction]]:
    return _basis_inverse(X, tuple(B))


@lru_cache(maxsize=8192)
def _basis_inverse(X: VectorConfig, B: tuple[int, ...]) -> list[list[Fraction]]:
    return linalg.inverse([[X.columns[j][i] for j in B] for i in range(X.dim)])
