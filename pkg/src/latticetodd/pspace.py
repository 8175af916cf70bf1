"""The central and internal P-spaces, the cocircuit ideal, the projection
psi_X onto P(X) along J(X), and the Dahmen-Micchelli space D(X)."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import factorial
from typing import Sequence

from . import linalg
from .algebra import GradedSeries, Polynomial, from_vector, monomials, vector_of
from .matroid import (
    BasisRecord,
    PreconditionError,
    VectorConfig,
    cocircuits,
    enumerate_bases,
    rank,
)


def product_of_forms(X: VectorConfig, indices: Sequence[int]) -> Polynomial:
    """p_Y for the sublist Y given by ``indices``; p_() = 1."""
    out = Polynomial.one(X.dim)
    for i in indices:
        out = out * X.form(i)
    return out


def max_degree(X: VectorConfig) -> int:
    return X.N - X.dim


@lru_cache(maxsize=512)
def q_basis(X: VectorConfig) -> tuple[tuple[BasisRecord, Polynomial], ...]:
    return tuple((B, product_of_forms(X, B.outside(X.N))) for B in enumerate_bases(X))


def jideal_generators(X: VectorConfig) -> list[Polynomial]:
    return [product_of_forms(X, C) for C in cocircuits(X)]


def _ideal_span(X: VectorConfig, k: int) -> list[Polynomial]:
    """All products (monomial of degree k - |C|) * p_C."""
    out = []
    for C in cocircuits(X):
        if len(C) > k:
            continue
        pc = product_of_forms(X, C)
        for e in monomials(X.dim, k - len(C)):
            out.append(pc * Polynomial(X.dim, {e: 1}))
    return out


@dataclass(frozen=True)
class GradedSubspace:
    """Per-degree bases of a graded subspace of the polynomial ring."""

    dim: int
    pieces: tuple[tuple[Polynomial, ...], ...]

    @property
    def max_degree(self) -> int:
        return len(self.pieces) - 1

    def basis(self, k: int) -> tuple[Polynomial, ...]:
        return self.pieces[k] if 0 <= k < len(self.pieces) else ()

    def all_basis(self) -> list[Polynomial]:
        return [p for piece in self.pieces for p in piece]

    @property
    def dimension(self) -> int:
        return sum(len(p) for p in self.pieces)

    def dims(self) -> list[int]:
        return [len(p) for p in self.pieces]

    def contains(self, f: Polynomial) -> bool:
        if f.is_zero():
            return True
        if f.degree > self.max_degree:
            return False
        for k in range(f.degree + 1):
            part = f.homogeneous_part(k)
            if part.is_zero():
                continue
            if not _in_span(part, self.basis(k), k):
                return False
        return True


def _in_span(f: Polynomial, gens: Sequence[Polynomial], k: int) -> bool:
    if not gens:
        return f.is_zero()
    mons = monomials(f.dim, k)
    rows = [vector_of(g, mons) for g in gens]
    return linalg.rank(rows + [vector_of(f, mons)]) == linalg.rank(rows)


def _echelon_polys(polys: Sequence[Polynomial], dim: int, k: int) -> tuple[Polynomial, ...]:
    mons = monomials(dim, k)
    red, _ = linalg.rref([vector_of(p, mons) for p in polys])
    return tuple(from_vector(dim, mons, row) for row in red)


class ProjectionTable:
    """psi_X(m) for every monomial m of degree <= N - d.

    For each degree the Q_B of that degree together with a basis of the
    degree-k part of J(X) form a square invertible system; solving it once
    gives the P-part of every monomial.
    """

    def __init__(self, X: VectorConfig):
        if not X.spans():
            raise PreconditionError("configuration does not span")
        self.X = X
        self.top = max_degree(X)
        qb = q_basis(X)
        self.images: dict[tuple[int, ...], Polynomial] = {}
        for k in range(self.top + 1):
            mons = monomials(X.dim, k)
            qk = [q for _, q in qb if q.degree == k]
            jk = _echelon_polys(_ideal_span(X, k), X.dim, k) if k else ()
            if len(qk) + len(jk) != len(mons):
                raise AssertionError(
                    f"degree {k}: {len(qk)} + {len(jk)} != {len(mons)}; P(X) + J(X) is not direct"
                )
            if not mons:
                continue
            cols = [vector_of(q, mons) for q in qk] + [vector_of(j, mons) for j in jk]
            # rows of the inverse give coordinates of each monomial
            inv = linalg.inverse(linalg.transpose(cols))
            for mi, m in enumerate(mons):
                img = Polynomial.zero(X.dim)
                for bi, q in enumerate(qk):
                    c = inv[bi][mi]
                    if c:
                        img = img + q * c
                self.images[m] = img

    def project(self, g: GradedSeries | Polynomial) -> Polynomial:
        if isinstance(g, GradedSeries):
            if g.cap < self.top:
                raise ValueError(f"series cap {g.cap} below N - d = {self.top}")
            g = g.poly
        if g.dim != self.X.dim:
            raise ValueError("dimension mismatch")
        out = Polynomial.zero(self.X.dim)
        for e, c in g.terms.items():
            if sum(e) <= self.top:
                out = out + self.images[e] * c
        return out

    def ideal_part(self, g: Polynomial) -> Polynomial:
        return g - self.project(g)


@lru_cache(maxsize=512)
def projection_table(X: VectorConfig) -> ProjectionTable:
    return ProjectionTable(X)


def psi_project(X: VectorConfig, g: GradedSeries | Polynomial) -> Polynomial:
    return projection_table(X).project(g)


def in_ideal(X: VectorConfig, g: Polynomial) -> bool:
    """Whether every homogeneous part of g lies in the span of the J(X) generators."""
    for k in range(g.degree + 1):
        part = g.homogeneous_part(k)
        if part.is_zero():
            continue
        if k > max_degree(X):
            continue
        if not _in_span(part, _ideal_span(X, k), k):
            return False
    return True


def _central_pieces(Y: VectorConfig, dim: int, top: int) -> list[tuple[Polynomial, ...]]:
    """P(Y) straight from its definition: span of p_S with Y \\ S spanning U."""
    pieces = []
    nonloops = [i for i in range(Y.N) if not Y.is_loop(i)]
    spanning: dict[frozenset, bool] = {}
    for k in range(top + 1):
        gens = {}
        if rank(Y) == dim:
            for S in combinations(nonloops, k):
                # repeated columns give repeated generators; key on the multiset
                key = tuple(sorted(Y.columns[i] for i in S))
                if key in gens:
                    continue
                rest = frozenset(Y.columns[i] for i in range(Y.N) if i not in S)
                if rest not in spanning:
                    spanning[rest] = linalg.rank(list(rest)) == dim if rest else dim == 0
                if spanning[rest]:
                    gens[key] = product_of_forms(Y, S)
        gens = list(gens.values())
        pieces.append(_echelon_polys(gens, dim, k) if gens else ())
    return pieces


@lru_cache(maxsize=512)
def central_space(X: VectorConfig) -> GradedSubspace:
    return GradedSubspace(X.dim, tuple(_central_pieces(X, X.dim, max_degree(X))))


def _intersect(a: Sequence[Polynomial], b: Sequence[Polynomial], dim: int, k: int):
    if not a or not b:
        return ()
    mons = monomials(dim, k)
    va = [vector_of(p, mons) for p in a]
    vb = [vector_of(p, mons) for p in b]
    # sum_i c_i a_i - sum_j e_j b_j = 0
    system = linalg.transpose(va + [[-x for x in v] for v in vb])
    kernel = linalg.nullspace(system, len(va) + len(vb))
    vecs = []
    for sol in kernel:
        v = [sum((sol[i] * va[i][m] for i in range(len(va))), Fraction(0)) for m in range(len(mons))]
        vecs.append(from_vector(dim, mons, v))
    return _echelon_polys(vecs, dim, k) if vecs else ()


@lru_cache(maxsize=512)
def internal_space(X: VectorConfig) -> GradedSubspace:
    """Intersection of P(X \\ x) over all x in X.

    A deletion that no longer spans U contributes the zero space, so any
    coloop makes the internal space zero.
    """
    if not X.spans():
        raise PreconditionError("configuration does not span")
    top = max_degree(X)
    current = list(central_space(X).pieces)
    for i in range(X.N):
        pieces = _central_pieces(X.delete(i), X.dim, top)
        current = [_intersect(current[k], pieces[k], X.dim, k) for k in range(top + 1)]
    while len(current) > 1 and not current[-1]:
        current.pop()
    return GradedSubspace(X.dim, tuple(current))


def dspace_basis(X: VectorConfig, k: int) -> list[Polynomial]:
    """Degree-k polynomials in t annihilated (under the pairing) by J(X)."""
    if k > max_degree(X):
        raise ValueError(f"degree {k} exceeds N - d = {max_degree(X)}")
    mons = monomials(X.dim, k)
    weights = []
    for e in mons:
        w = 1
        for a in e:
            w *= factorial(a)
        weights.append(w)
    rows = [[c * w for c, w in zip(vector_of(g, mons), weights)] for g in _ideal_span(X, k)]
    kernel = linalg.nullspace(rows, len(mons)) if rows else [
        [Fraction(int(i == j)) for i in range(len(mons))] for j in range(len(mons))
    ]
    return [from_vector(X.dim, mons, v) for v in kernel]


def dspace(X: VectorConfig) -> GradedSubspace:
    return GradedSubspace(X.dim, tuple(tuple(dspace_basis(X, k)) for k in range(max_degree(X) + 1)))
