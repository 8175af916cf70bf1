"""Box spline B_X, multivariate spline T_X and vector partition function
with exact rational arithmetic.

Local pieces of B_X are built symbolically from the two-term recurrence

    (N - d) B_X(u) = sum_j t_j B_{X\\x_j}(u) + (1 - t_j) B_{X\\x_j}(u - x_j),

with ``X t = u`` solved by a fixed basis of each sublist, so that every t_j
is a linear polynomial in u and the recurrence is a polynomial identity on
an alcove. The scalar evaluator runs the same recurrence on numbers with a
different basis choice and serves as a cross-check.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, product
from math import ceil, floor, lcm
from typing import Sequence

from . import linalg
from .algebra import Polynomial, diff_apply, monomials, pairing
from .geometry import (
    alcove_key,
    bounding_box,
    chamber_key,
    dot,
    hyperplane_normals,
    in_closed_chamber,
    in_open_chamber,
    interior_direction,
    is_generic,
    nudge,
)
from .matroid import PreconditionError, VectorConfig

Key = tuple


@dataclass(frozen=True)
class LocalPiece:
    """A polynomial (in t) agreeing with B_X or T_X on one alcove or chamber."""

    key: Key
    poly: Polynomial
    kind: str = "box"


def _first_basis(cols: Sequence[Sequence[int]], idx: tuple[int, ...], dim: int,
                 reverse: bool = False):
    subsets = combinations(idx, dim)
    if reverse:
        subsets = reversed(list(subsets))
    for B in subsets:
        det = linalg.det_int([[cols[j][i] for j in B] for i in range(dim)])
        if det:
            inv = linalg.inverse([[cols[j][i] for j in B] for i in range(dim)])
            return B, inv, abs(det)
    return None


class BoxSpline:
    """Exact local pieces and values of B_X.

    Loops are dropped: they change neither the fibre volume nor the
    normalisation.
    """

    def __init__(self, X: VectorConfig):
        self.X = X
        self.dim = X.dim
        self.cols = tuple(c for c in X.columns if any(c))
        self.normals = hyperplane_normals(X)
        self._bases: dict[tuple, object] = {}
        self._walls: dict[tuple, tuple] = {}
        self._memo: dict[tuple, Polynomial] = {}
        self._pieces: dict[tuple, Polynomial] = {}
        self._germs: dict[tuple, Polynomial] = {}

    def _basis(self, idx: tuple[int, ...], reverse: bool = False):
        key = (idx, reverse)
        if key not in self._bases:
            self._bases[key] = _first_basis(self.cols, idx, self.dim, reverse)
        return self._bases[key]

    def _sub_walls(self, idx: tuple[int, ...]):
        """Normals spanned by the sublist, each with its range over Z(sublist).

        B of the sublist is polynomial on the alcoves cut out by these
        normals alone and vanishes outside the ranges.
        """
        hit = self._walls.get(idx)
        if hit is None:
            walls = []
            for k, eta in enumerate(self.normals):
                on = [self.cols[j] for j in idx if dot(eta, self.cols[j]) == 0]
                if (linalg.rank([list(c) for c in on]) if on else 0) == self.dim - 1:
                    vals = [dot(eta, self.cols[j]) for j in idx]
                    walls.append((k, sum(v for v in vals if v < 0), sum(v for v in vals if v > 0)))
            hit = self._walls[idx] = tuple(walls)
        return hit

    def _floors(self, u0) -> tuple[int, ...]:
        return tuple(floor(Fraction(dot(eta, u0))) for eta in self.normals)

    # symbolic pieces ---------------------------------------------------

    def piece(self, u0: Sequence) -> Polynomial:
        """The polynomial agreeing with B_X on the open alcove containing
        the generic point ``u0``."""
        u0 = tuple(Fraction(v) for v in u0)
        if self.dim and not is_generic(self.X, u0):
            raise PreconditionError(f"{tuple(map(str, u0))} is not generic")
        floors = self._floors(u0)
        if floors not in self._pieces:
            idx = tuple(range(len(self.cols)))
            self._pieces[floors] = self._piece(idx, u0, floors)
        return self._pieces[floors]

    def _piece(self, idx: tuple[int, ...], u0: tuple, floors: tuple) -> Polynomial:
        d = self.dim
        walls = self._sub_walls(idx)
        key = (idx, tuple(floors[k] for k, _, _ in walls))
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        basis = self._basis(idx)
        if basis is None or any(not lo <= floors[k] < hi for k, lo, hi in walls):
            result = Polynomial.zero(d)
        elif len(idx) == d:
            _, inv, det = basis
            coords = linalg.matvec(inv, u0)
            inside = all(0 < c < 1 for c in coords)
            result = Polynomial.constant(d, Fraction(1, det)) if inside else Polynomial.zero(d)
        else:
            B, inv, _ = basis
            n = len(idx) - d
            acc = Polynomial.zero(d)
            for j in idx:
                rest = tuple(i for i in idx if i != j)
                x = self.cols[j]
                shifted_u0 = tuple(a - b for a, b in zip(u0, x))
                shifted_floors = tuple(f - dot(eta, x) for f, eta in zip(floors, self.normals))
                here = self._piece(rest, u0, floors)
                there = self._piece(rest, shifted_u0, shifted_floors).translate([-v for v in x])
                if j in B:
                    t_j = Polynomial.linear(inv[B.index(j)])
                    acc = acc + t_j * (here - there)
                acc = acc + there
            result = acc / n
        self._memo[key] = result
        return result

    def limit_piece(self, u: Sequence, w: Sequence) -> Polynomial:
        """p_c for the alcove c entered from u in direction w."""
        if self.dim == 0:
            return Polynomial.one(0)
        return self.piece(nudge(self.X, u, w))

    def limit_germ(self, u: Sequence, w: Sequence) -> Polynomial:
        """limit_piece(u, w) re-centred at u, i.e. t -> p_c(u + t)."""
        u = tuple(Fraction(v) for v in u)
        if self.dim == 0:
            return Polynomial.one(0)
        direct = (u, tuple(Fraction(v) for v in w))
        germ = self._germs.get(direct)
        if germ is None:
            near = nudge(self.X, u, w)
            key = (u, self._floors(near))
            germ = self._germs.get(key)
            if germ is None:
                germ = self._germs[key] = self.piece(near).translate(u)
            self._germs[direct] = germ
        return germ

    def limit_value(self, f: Polynomial, u: Sequence, w: Sequence) -> Fraction:
        """lim_w f(D_pw) B_X (u)."""
        return pairing(f, self.limit_germ(u, w))

    # scalar evaluation -------------------------------------------------

    def value(self, u: Sequence) -> Fraction:
        u = tuple(Fraction(v) for v in u)
        if self.dim == 0:
            return Fraction(1)
        if not is_generic(self.X, u):
            raise PreconditionError(f"{tuple(map(str, u))} is not generic; use a directional limit")
        memo: dict = {}
        return self._value(tuple(range(len(self.cols))), u, memo)

    def _value(self, idx, u, memo) -> Fraction:
        key = (idx, u)
        if key in memo:
            return memo[key]
        d = self.dim
        basis = self._basis(idx, reverse=True)
        if basis is None:
            result = Fraction(0)
        elif len(idx) == d:
            _, inv, det = basis
            coords = linalg.matvec(inv, u)
            result = Fraction(1, det) if all(0 < c < 1 for c in coords) else Fraction(0)
        else:
            B, inv, _ = basis
            t = dict(zip(B, linalg.matvec(inv, u)))
            n = len(idx) - d
            acc = Fraction(0)
            for j in idx:
                rest = tuple(i for i in idx if i != j)
                tj = t.get(j, Fraction(0))
                shifted = tuple(a - b for a, b in zip(u, self.cols[j]))
                if tj:
                    acc += tj * self._value(rest, u, memo)
                if tj != 1:
                    acc += (1 - tj) * self._value(rest, shifted, memo)
            result = acc / n
        memo[key] = result
        return result


@lru_cache(maxsize=256)
def box_spline(X: VectorConfig) -> BoxSpline:
    return BoxSpline(X)


def box_spline_eval(X: VectorConfig, u: Sequence) -> Fraction:
    return box_spline(X).value(u)


def box_spline_piece(X: VectorConfig, at: Sequence, toward: Sequence) -> LocalPiece:
    point = nudge(X, at, toward) if X.dim else ()
    poly = box_spline(X).piece(point) if X.dim else Polynomial.one(0)
    return LocalPiece(alcove_key(X, point), poly, "box")


def lim_w_diff(X: VectorConfig, f: Polynomial, u: Sequence, w: Sequence) -> Fraction:
    """lim_w f(D_pw) B_X (u) = (f(D) p_c)(u)."""
    p = box_spline(X).limit_piece(u, w)
    return diff_apply(f, p).evaluate(u)


def box_spline_limit(X: VectorConfig, u: Sequence, w: Sequence) -> Fraction:
    return box_spline(X).limit_piece(u, w).evaluate(u)


# multivariate spline (truncated power) --------------------------------------

def multispline_eval(X: VectorConfig, u: Sequence) -> Fraction:
    """T_X(u) at a point off every linear hyperplane, from the recurrence
    (N - d) T_X(u) = sum_j t_j T_{X\\x_j}(u)."""
    positive_functional(X)
    u = tuple(Fraction(v) for v in u)
    if any(dot(eta, u) == 0 for eta in hyperplane_normals(X)):
        raise PreconditionError("u lies on a wall of the chamber complex")
    cols = tuple(c for c in X.columns if any(c))
    d = X.dim
    memo: dict = {}

    def rec(idx):
        if idx in memo:
            return memo[idx]
        basis = _first_basis(cols, idx, d)
        if basis is None:
            val = Fraction(0)
        elif len(idx) == d:
            _, inv, det = basis
            val = Fraction(1, det) if all(c > 0 for c in linalg.matvec(inv, u)) else Fraction(0)
        else:
            B, inv, _ = basis
            t = linalg.matvec(inv, u)
            val = Fraction(0)
            for j, tj in zip(B, t):
                if tj:
                    val += tj * rec(tuple(i for i in idx if i != j))
            val /= len(idx) - d
        memo[idx] = val
        return val

    return rec(tuple(range(len(cols))))


# vector partition function --------------------------------------------------

@lru_cache(maxsize=256)
def positive_functional(X: VectorConfig) -> tuple[int, ...]:
    """Integer c with c . x > 0 for every column; certifies 0 is not in
    the convex hull of X."""
    if any(not any(c) for c in X.columns):
        raise PreconditionError("configuration has a zero column; the cone is not pointed")
    if X.N == 0:
        return (0,) * X.dim
    from scipy.optimize import linprog

    import numpy as np

    a = -np.array(X.columns, dtype=float)
    res = linprog(np.zeros(X.dim), A_ub=a, b_ub=-np.ones(X.N), bounds=[(None, None)] * X.dim,
                  method="highs")
    if res.status != 0:
        raise PreconditionError("0 lies in the convex hull of X; counts would be infinite")
    for bound in (1, 10, 100, 1000, 10 ** 6):
        c = [Fraction(v).limit_denominator(bound) for v in res.x]
        if all(dot(c, x) > 0 for x in X.columns):
            den = lcm(*(v.denominator for v in c))
            return tuple(int(v * den) for v in c)
    raise PreconditionError("could not certify a pointed cone exactly")


def partition_count(X: VectorConfig, u: Sequence[int]) -> int:
    """Number of nonnegative integer w with X w = u."""
    if any(Fraction(v).denominator != 1 for v in u):
        raise PreconditionError("u must be a lattice point")
    u = tuple(int(v) for v in u)
    c = positive_functional(X)
    if X.N == 0:
        return int(not any(u))
    if not X.spans():
        raise PreconditionError("configuration does not span")
    return _count(X, u, c)


class _Counter:
    """Partition counts of one configuration with a memo shared across queries.

    Columns outside a fixed basis B are peeled off one at a time and the
    remaining basis coordinates are checked directly. The memo is keyed on
    (level, remaining target); targets such as u - z for z in Z(X) differ by
    sums of columns and so share most of their sub-counts.
    """

    def __init__(self, X: VectorConfig, c: tuple[int, ...]):
        d = X.dim
        B, _, det = _first_basis(X.columns, tuple(range(X.N)), d)
        bm = [[X.columns[j][i] for j in B] for i in range(d)]
        # |det| times the inverse is integral; nonnegativity is unchanged
        self.adj = [[int(v * det) for v in row] for row in linalg.inverse(bm)]
        self.det = det
        self.c = c
        free = [j for j in range(X.N) if j not in B]
        self.cols = [X.columns[j] for j in free]
        self.costs = [dot(c, x) for x in self.cols]
        self.steps = [[dot(row, x) for row in self.adj] for x in self.cols]
        self.memo: dict[tuple, int] = {}
        self.results: dict[tuple, int] = {}

    def _ok(self, a) -> bool:
        return all(v >= 0 and v % self.det == 0 for v in a)

    def count(self, u: tuple[int, ...]) -> int:
        hit = self.results.get(u)
        if hit is None:
            a = [dot(row, u) for row in self.adj]
            hit = int(self._ok(a)) if not self.cols else self._rec(0, u, a)
            self.results[u] = hit
        return hit

    def _rec(self, k: int, u: tuple[int, ...], a: list[int]) -> int:
        left = dot(self.c, u)
        if left < 0:
            return 0
        hi = left // self.costs[k]
        step = self.steps[k]
        if k == len(self.cols) - 1:
            if self.det == 1:
                lo = 0
                for ai, bi in zip(a, step):
                    if bi > 0:
                        hi = min(hi, ai // bi)
                    elif bi < 0:
                        lo = max(lo, -(ai // -bi))
                    elif ai < 0:
                        return 0
                return max(0, hi - lo + 1)
            return sum(1 for m in range(hi + 1)
                       if self._ok([ai - m * bi for ai, bi in zip(a, step)]))
        key = (k, u)
        hit = self.memo.get(key)
        if hit is None:
            hit = 0
            x = self.cols[k]
            for m in range(hi + 1):
                hit += self._rec(k + 1, tuple(p - m * q for p, q in zip(u, x)),
                                 [p - m * q for p, q in zip(a, step)])
            self.memo[key] = hit
        return hit


@lru_cache(maxsize=64)
def _counter(X: VectorConfig, c: tuple[int, ...]) -> _Counter:
    return _Counter(X, c)


def _count(X: VectorConfig, u: tuple[int, ...], c: tuple[int, ...]) -> int:
    return _counter(X, c).count(u)


def multispline_convolution(X: VectorConfig, v: Sequence, scalar: bool = False) -> Fraction:
    """T_X(v) = sum_lambda B_X(v - lambda) * partition_count(X, lambda).

    v must be generic. B_X is read from its memoized local pieces, or from
    the scalar evaluator when ``scalar`` is set.
    """
    v = tuple(Fraction(a) for a in v)
    bs = box_spline(X)
    box = bounding_box(X)
    ranges = [range(ceil(vi - hi), floor(vi - lo) + 1) for vi, (lo, hi) in zip(v, box)]
    total = Fraction(0)
    for lam in product(*ranges):
        count = partition_count(X, lam)
        if count:
            pt = tuple(a - b for a, b in zip(v, lam))
            total += (bs.value(pt) if scalar else bs.piece(pt).evaluate(pt)) * count
    return total


# chamber pieces ------------------------------------------------------------

_PRIME = (1 << 61) - 1


class _Greedy:
    """Incrementally collect points whose monomial rows are independent.

    Independence is tested modulo a large prime: rows independent mod p are
    independent over Q, so every accepted set is a valid interpolation set.
    """

    def __init__(self, mons):
        self.mons = mons
        self.rows: dict[int, list[int]] = {}
        self.points: list = []

    def _row(self, point) -> list[int]:
        # nodes are lattice points
        ints = [int(x) for x in point]
        row = []
        for e in self.mons:
            v = 1
            for x, k in zip(ints, e):
                if k:
                    v *= x ** k
            row.append(v % _PRIME)
        return row

    def offer(self, point) -> bool:
        r = self._row(point)
        for piv, base in self.rows.items():
            f = r[piv]
            if f:
                r = [(a - f * b) % _PRIME for a, b in zip(r, base)]
        lead = next((i for i, a in enumerate(r) if a), None)
        if lead is None:
            return False
        inv = pow(r[lead], _PRIME - 2, _PRIME)
        r = [a * inv % _PRIME for a in r]
        for piv, base in self.rows.items():
            f = base[lead]
            if f:
                self.rows[piv] = [(a - f * b) % _PRIME for a, b in zip(base, r)]
        self.rows[lead] = r
        self.points.append(point)
        return True

    @property
    def full(self) -> bool:
        return len(self.rows) == len(self.mons)


def _fit(dim: int, mons, points, values) -> Polynomial:
    rows = [[_mono_value(p, e) for e in mons] for p in points]
    coeffs = linalg.solve(rows, values)
    return Polynomial(dim, dict(zip(mons, coeffs)))


def _mono_value(point, e) -> Fraction:
    v = Fraction(1)
    for x, p in zip(point, e):
        if p:
            v *= Fraction(x) ** p
    return v


def _shell(dim: int, r: int):
    for pt in product(range(-r, r + 1), repeat=dim):
        if max((abs(a) for a in pt), default=0) == r:
            yield pt


def chamber_polynomial_from_counts(X: VectorConfig, key: Sequence[int], holdout: int = 3,
                                   max_radius: int = 60) -> Polynomial:
    """The polynomial agreeing with the partition function on the closed
    chamber, interpolated from exact lattice counts."""
    n = X.N - X.dim
    d = X.dim
    if d == 0:
        holdout = 0  # the zero lattice has one point
    mons = [e for k in range(n + 1) for e in monomials(d, k)]
    greedy = _Greedy(mons)
    extra = []
    for r in range(max_radius + 1):
        for pt in _shell(d, r):
            if not in_closed_chamber(X, key, pt):
                continue
            if greedy.full:
                extra.append(pt)
            elif not greedy.offer(pt):
                extra.append(pt)
        if greedy.full and len(extra) >= holdout:
            break
    else:
        raise RuntimeError("could not find enough lattice points in the chamber")
    q = _fit(d, mons, greedy.points, [partition_count(X, p) for p in greedy.points])
    for pt in extra[:holdout]:
        if q.evaluate(pt) != partition_count(X, pt):
            raise AssertionError(f"chamber polynomial fails at held-out point {pt}")
    return q


def chamber_piece_by_convolution(X: VectorConfig, key: Sequence[int], p0: Sequence) -> Polynomial:
    """p_Omega from the finite convolution T_X = B_X *_d T_X, done symbolically.

    Near a generic point p0 of the open chamber every term B_X(v - lambda)
    agrees with a single local piece, so the sum of translated pieces is a
    polynomial equal to T_X on an open set, hence to p_Omega.
    """
    p0 = tuple(Fraction(a) for a in p0)
    if not (is_generic(X, p0) and in_open_chamber(X, key, p0)):
        raise PreconditionError("p0 must be a generic point of the open chamber")
    bs = box_spline(X)
    box = bounding_box(X)
    ranges = [range(ceil(vi - hi), floor(vi - lo) + 1) for vi, (lo, hi) in zip(p0, box)]
    total = Polynomial.zero(X.dim)
    for lam in product(*ranges):
        count = partition_count(X, lam)
        if count:
            piece = bs.piece(tuple(a - b for a, b in zip(p0, lam)))
            if not piece.is_zero():
                total = total + piece.translate([-b for b in lam]) * count
    return total


_chamber_cache: dict[tuple, Polynomial] = {}


def multispline_piece(X: VectorConfig, at: Sequence, toward: Sequence | None = None,
                      cross_check: bool = True) -> LocalPiece:
    """p_Omega for the chamber containing ``at`` (or entered from it along
    ``toward``)."""
    positive_functional(X)
    key = chamber_key(X, at, toward)
    cache_key = (X, key)
    if cache_key not in _chamber_cache:
        q = chamber_polynomial_from_counts(X, key)
        _chamber_cache[cache_key] = q.homogeneous_part(X.N - X.dim)
    p = _chamber_cache[cache_key]
    if cross_check:
        if is_generic(X, at) and in_open_chamber(X, key, at):
            p0 = tuple(Fraction(a) for a in at)
        else:
            p0 = nudge(X, at, toward if toward is not None else interior_direction(X))
        other = chamber_piece_by_convolution(X, key, p0)
        if other != p:
            raise AssertionError(f"chamber piece routes disagree: {p} vs {other}")
    if not (p.is_homogeneous() and (p.is_zero() or p.degree == X.N - X.dim)):
        raise AssertionError("chamber piece is not homogeneous of degree N - d")
    return LocalPiece(key, p, "chamber")
