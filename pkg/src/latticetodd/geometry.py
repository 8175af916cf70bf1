"""Zonotope lattice points, hyperplane normals, affine regular vectors and
point-local alcove/chamber identification."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import floor
from typing import Sequence

from . import linalg
from .matroid import PreconditionError, VectorConfig, hyperplane_flats

Point = tuple


def dot(a: Sequence, b: Sequence):
    return sum((x * y for x, y in zip(a, b)), 0)


@lru_cache(maxsize=512)
def hyperplane_normals(X: VectorConfig) -> tuple[tuple[int, ...], ...]:
    """One primitive normal per linear hyperplane spanned by columns of X."""
    return tuple(eta for eta, _ in hyperplane_flats(X))


@lru_cache(maxsize=512)
def support_ranges(X: VectorConfig) -> tuple[tuple[int, int], ...]:
    """For each normal eta, the interval eta . Z(X)."""
    out = []
    for eta in hyperplane_normals(X):
        vals = [dot(eta, x) for x in X.columns]
        out.append((sum(v for v in vals if v < 0), sum(v for v in vals if v > 0)))
    return tuple(out)


def in_zonotope(X: VectorConfig, u: Sequence, strict: bool = False) -> bool:
    for eta, (lo, hi) in zip(hyperplane_normals(X), support_ranges(X)):
        v = dot(eta, u)
        if strict and not lo < v < hi:
            return False
        if not lo <= v <= hi:
            return False
    return True


def bounding_box(X: VectorConfig) -> list[tuple[int, int]]:
    return [
        (sum(min(0, x[i]) for x in X.columns), sum(max(0, x[i]) for x in X.columns))
        for i in range(X.dim)
    ]


@lru_cache(maxsize=512)
def zonotope_points(X: VectorConfig) -> tuple[tuple[Point, ...], tuple[Point, ...]]:
    """(lattice points of Z(X), interior lattice points), lex sorted."""
    if not X.spans():
        raise PreconditionError("configuration does not span")
    box = bounding_box(X)
    pts, interior = [], []
    for u in product(*(range(lo, hi + 1) for lo, hi in box)):
        if in_zonotope(X, u):
            pts.append(u)
            if in_zonotope(X, u, strict=True):
                interior.append(u)
    return tuple(pts), tuple(interior)


def interior_points(X: VectorConfig) -> tuple[Point, ...]:
    return zonotope_points(X)[1]


def is_affine_regular(X: VectorConfig, w: Sequence) -> bool:
    return all(Fraction(dot(eta, w)).denominator != 1 for eta in hyperplane_normals(X))


def is_short(X: VectorConfig, w: Sequence) -> bool:
    """w lies in an alcove whose closure contains the origin."""
    return all(abs(dot(eta, w)) < 1 for eta in hyperplane_normals(X))


def shifted_points(X: VectorConfig, w: Sequence) -> tuple[Point, ...]:
    """Z(X, w): lattice points z with z + w in Z(X)."""
    return _shifted_points(X, tuple(Fraction(a) for a in w))


@lru_cache(maxsize=4096)
def _shifted_points(X: VectorConfig, w: tuple) -> tuple[Point, ...]:
    if not is_affine_regular(X, w):
        raise PreconditionError(f"{tuple(map(str, w))} lies on an affine admissible hyperplane")
    box = bounding_box(X)
    out = []
    for z in product(*(range(lo - 1, hi + 1) for lo, hi in box)):
        if in_zonotope(X, [a + b for a, b in zip(z, w)]):
            out.append(z)
    return tuple(out)


def short_affine_regular(X: VectorConfig, signs: Sequence[int] | None = None,
                         start: int = 2, extra=None) -> tuple[Fraction, ...]:
    """w = (+-eps, +-eps^2, ..., +-eps^d) with eps = 2^-k for the smallest k >= start
    making w affine regular, short, and |Z(X, w)| equal to the number of bases.

    ``extra`` is an optional predicate on w for callers needing more (e.g.
    regularity of a contracted image); it is honoured by shrinking eps too.
    """
    if signs is None:
        signs = (1,) * X.dim
    if extra is None:
        return _short_affine_regular(X, tuple(signs), start)
    return _search_short(X, tuple(signs), start, extra)


@lru_cache(maxsize=1024)
def _short_affine_regular(X: VectorConfig, signs: tuple, start: int):
    return _search_short(X, signs, start, None)


def _search_short(X: VectorConfig, signs: tuple, start: int, extra):
    from .matroid import enumerate_bases

    target = len(enumerate_bases(X))
    for k in range(start, 64):
        eps = Fraction(1, 2 ** k)
        w = tuple(s * eps ** (i + 1) for i, s in enumerate(signs))
        if not (is_affine_regular(X, w) and is_short(X, w)):
            continue
        if len(shifted_points(X, w)) != target:
            continue
        if extra is not None and not extra(w):
            continue
        return w
    raise RuntimeError("no short affine regular vector found")


def direction_family(X: VectorConfig, count: int = 3) -> list[tuple[Fraction, ...]]:
    """Several short affine regular vectors in distinct alcoves around 0."""
    if X.dim == 0:
        return [()]
    out: list[tuple[Fraction, ...]] = []
    start = 2
    # few sign patterns in low dimension: repeat them with a smaller eps
    while len(out) < count:
        for signs in product((1, -1), repeat=X.dim):
            w = short_affine_regular(X, signs, start=start)
            if w not in out:
                out.append(w)
            if len(out) == count:
                break
        start += 1
    return out


# alcoves and chambers ------------------------------------------------------

def alcove_key(X: VectorConfig, u: Sequence) -> tuple[tuple[int, bool], ...]:
    """Per normal: (floor(eta . u), whether eta . u is an integer)."""
    out = []
    for eta in hyperplane_normals(X):
        v = Fraction(dot(eta, u))
        out.append((floor(v), v.denominator == 1))
    return tuple(out)


def is_generic(X: VectorConfig, u: Sequence) -> bool:
    return not any(flag for _, flag in alcove_key(X, u))


def same_alcove(X: VectorConfig, u: Sequence, v: Sequence) -> bool:
    ku, kv = alcove_key(X, u), alcove_key(X, v)
    if any(f for _, f in ku) or any(f for _, f in kv):
        return False
    return ku == kv


def nudge(X: VectorConfig, u: Sequence, w: Sequence) -> tuple[Fraction, ...]:
    """A point u + eps*w in the open alcove entered from u in direction w.

    eps is chosen so that no eta . (u + t w), 0 < t <= eps, crosses an integer.
    """
    eps = Fraction(1)
    for eta in hyperplane_normals(X):
        v = Fraction(dot(eta, u))
        slope = Fraction(dot(eta, w))
        if slope == 0:
            if v.denominator == 1:
                raise PreconditionError("direction lies in a hyperplane through u")
            continue
        if v.denominator == 1:
            room = Fraction(1)
        elif slope > 0:
            room = floor(v) + 1 - v
        else:
            room = v - floor(v)
        eps = min(eps, room / abs(slope) / 2)
    return tuple(Fraction(a) + eps * Fraction(b) for a, b in zip(u, w))


@lru_cache(maxsize=512)
def cone_facets(X: VectorConfig) -> tuple[tuple[int, ...], ...]:
    """Inner normals of the facets of cone(X) for spanning X.

    Each facet is spanned by columns, so its normal is one of the
    hyperplane normals with all columns on one side.
    """
    out = []
    for eta in hyperplane_normals(X):
        vals = [dot(eta, x) for x in X.columns]
        if all(v >= 0 for v in vals):
            out.append(eta)
        elif all(v <= 0 for v in vals):
            out.append(tuple(-a for a in eta))
    return tuple(out)


def in_cone(X: VectorConfig, u: Sequence) -> bool:
    if not X.spans():
        return in_cone_by_bases(X, u)
    return all(dot(eta, u) >= 0 for eta in cone_facets(X))


def in_cone_by_bases(X: VectorConfig, u: Sequence) -> bool:
    """u in cone(X), by Caratheodory over the bases of X."""
    from .matroid import basis_inverse, enumerate_bases, rank

    if not any(u):
        return True
    if rank(X) < X.dim:
        raise PreconditionError("configuration does not span")
    for B in enumerate_bases(X):
        coeffs = linalg.matvec(basis_inverse(X, B.indices), u)
        if all(c >= 0 for c in coeffs):
            return True
    return False


def chamber_key(X: VectorConfig, u: Sequence, direction: Sequence | None = None) -> tuple[int, ...]:
    """Sign vector of eta . u over all normals; zero entries are resolved by
    the sign of eta . direction."""
    if not in_cone(X, u):
        raise PreconditionError(f"{tuple(map(str, u))} is outside cone(X)")
    signs = []
    for eta in hyperplane_normals(X):
        v = dot(eta, u)
        if v == 0:
            if direction is None:
                raise PreconditionError("u lies on a wall; a perturbation direction is required")
            v = dot(eta, direction)
            if v == 0:
                raise PreconditionError("perturbation direction lies in a wall")
        signs.append(1 if v > 0 else -1)
    key = tuple(signs)
    if direction is not None and any(dot(eta, u) == 0 for eta in hyperplane_normals(X)):
        probe = nudge_linear(X, u, direction)
        if not in_cone(X, probe):
            raise PreconditionError("perturbed point leaves cone(X)")
    return key


def nudge_linear(X: VectorConfig, u: Sequence, direction: Sequence) -> tuple[Fraction, ...]:
    """u + eps*direction without crossing any linear hyperplane."""
    eps = Fraction(1)
    for eta in hyperplane_normals(X):
        v = Fraction(dot(eta, u))
        slope = Fraction(dot(eta, direction))
        if v != 0 and slope != 0 and (v > 0) != (slope > 0):
            eps = min(eps, abs(v / slope) / 2)
    return tuple(Fraction(a) + eps * Fraction(b) for a, b in zip(u, direction))


def in_closed_chamber(X: VectorConfig, key: Sequence[int], u: Sequence) -> bool:
    return all(s * dot(eta, u) >= 0 for s, eta in zip(key, hyperplane_normals(X)))


def in_open_chamber(X: VectorConfig, key: Sequence[int], u: Sequence) -> bool:
    return all(s * dot(eta, u) > 0 for s, eta in zip(key, hyperplane_normals(X)))


def interior_direction(X: VectorConfig) -> tuple[Fraction, ...]:
    """A regular direction pointing into the interior of cone(X)."""
    total = [sum(x[i] for x in X.columns) for i in range(X.dim)]
    w = short_affine_regular(X)
    delta = Fraction(1)
    while True:
        d = tuple(Fraction(t) + delta * c for t, c in zip(total, w))
        if all(dot(eta, d) != 0 for eta in hyperplane_normals(X)) and in_cone(X, d):
            return d
        delta /= 2
