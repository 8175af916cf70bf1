"""Executable checks of the interpolation theorems on a given configuration.

Every check returns a :class:`CheckReport`. Failures carry the exact
rational values involved so that a counterexample can be replayed.
"""

from __future__ import annotations

import random
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from . import linalg
from .algebra import Polynomial, diff_apply, monomials, pairing, todd_series
from .geometry import (
    chamber_key,
    direction_family,
    in_closed_chamber,
    in_cone,
    interior_direction,
    is_affine_regular,
    is_short,
    shifted_points,
    short_affine_regular,
    zonotope_points,
)
from .matroid import (
    PreconditionError,
    VectorConfig,
    contract,
    enumerate_bases,
    is_totally_unimodular,
)
from .pspace import (
    central_space,
    dspace,
    internal_space,
    jideal_generators,
    max_degree,
    psi_project,
    q_basis,
)
from .splines import box_spline, multispline_piece, partition_count, positive_functional
from .toddcalc import central_basis, f_z, gamma_function, internal_basis


@dataclass
class CheckReport:
    name: str
    config: str
    status: str  # "pass", "fail" or "skipped"
    details: dict = field(default_factory=dict)
    counterexample: dict | None = None

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "config": self.config,
            "status": self.status,
            "details": _jsonable(self.details),
            "counterexample": _jsonable(self.counterexample),
        }


def _jsonable(obj):
    if isinstance(obj, Fraction):
        return f"{obj.numerator}/{obj.denominator}" if obj.denominator != 1 else str(obj.numerator)
    if isinstance(obj, Polynomial):
        return obj.to_str()
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    return obj


class _Fail(Exception):
    def __init__(self, message: str, **payload):
        super().__init__(message)
        self.payload = {"message": message, **payload}


def _run(name: str, X: VectorConfig, body: Callable[[dict], None],
         pre: Callable[[], str | None] | None = None) -> CheckReport:
    fp = X.fingerprint if X is not None else ""
    if pre is not None:
        reason = pre()
        if reason:
            return CheckReport(name, fp, "skipped", {"reason": reason})
    details: dict = {}
    try:
        body(details)
    except _Fail as exc:
        return CheckReport(name, fp, "fail", details, exc.payload)
    return CheckReport(name, fp, "pass", details)


def _tu_spanning(X: VectorConfig) -> str | None:
    if not X.spans():
        return "configuration does not span"
    if not is_totally_unimodular(X):
        return "configuration is not totally unimodular"
    return None


def _expect(actual, expected, message: str, **where):
    if actual != expected:
        raise _Fail(message, expected=expected, actual=actual, **where)


# main theorem --------------------------------------------------------------

def check_main_theorem(X: VectorConfig, z: Sequence[int],
                       directions: Sequence[Sequence] | None = None) -> CheckReport:
    z = tuple(z)
    interior = zonotope_points(X)[1] if X.spans() else ()

    def pre():
        return _tu_spanning(X) or (None if z in interior else f"{z} is not an interior lattice point")

    def body(details):
        ws = list(directions) if directions else direction_family(X, 3)
        f = f_z(X, z)
        details["f_z"] = f
        details["directions"] = len(ws)
        if not internal_space(X).contains(f):
            raise _Fail("f_z is not in the internal space", f_z=f)
        todd = todd_series(X.columns, z, max_degree(X), dim=X.dim).poly
        bs = box_spline(X)
        points = zonotope_points(X)[0]
        for u in points:
            for w in ws:
                val = bs.limit_value(f, u, w)
                _expect(val, Fraction(int(u == z)), "delta property fails", u=u, w=w)
                # the full Todd series acts the same way on every local piece
                _expect(bs.limit_value(todd, u, w), val,
                        "Todd operator and f_z disagree on a local piece", u=u, w=w)
        details["points"] = len(points)

    return _run("main-theorem", X, body, pre)


def check_boundary_theorem(X: VectorConfig, w: Sequence | None = None) -> CheckReport:
    def body(details):
        ww = tuple(w) if w is not None else short_affine_regular(X)
        shifted = shifted_points(X, ww)
        support = sorted(set(zonotope_points(X)[0]) | set(shifted))
        bs = box_spline(X)
        for z in shifted:
            f = f_z(X, z)
            for u in support:
                val = bs.limit_value(f, u, ww)
                _expect(val, Fraction(int(u == z)), "boundary delta property fails", z=z, u=u, w=ww)
        details["points"] = len(shifted)

    return _run("boundary-theorem", X, body, lambda: _tu_spanning(X))


# Khovanskii-Pukhlikov --------------------------------------------------------

def _kp_direction(X: VectorConfig, u: Sequence[int], direction):
    if direction is not None:
        return tuple(direction), "given"
    w = short_affine_regular(X)
    try:
        chamber_key(X, u, w)
        return w, "short affine regular"
    except PreconditionError:
        return interior_direction(X), "cone interior"


def check_kp(X: VectorConfig, z: Sequence[int], u: Sequence[int], direction=None,
             cross_check: bool = True) -> CheckReport:
    z, u = tuple(z), tuple(u)

    def pre():
        reason = _tu_spanning(X)
        if reason:
            return reason
        try:
            positive_functional(X)
        except PreconditionError as exc:
            return str(exc)
        if z not in zonotope_points(X)[0]:
            return f"{z} is not a lattice point of the zonotope"
        if not in_cone(X, u):
            return f"{u} is outside cone(X)"
        if z not in zonotope_points(X)[1]:
            # a boundary shift is only covered while u - z stays in the closed chamber
            dirn, _ = _kp_direction(X, u, direction)
            key = chamber_key(X, u, dirn)
            if not in_closed_chamber(X, key, [a - b for a, b in zip(u, z)]):
                return "z is on the boundary and u - z leaves the closed chamber"
        return None

    def body(details):
        dirn, how = _kp_direction(X, u, direction)
        details["direction"] = how
        piece = multispline_piece(X, u, dirn, cross_check=cross_check)
        lhs = partition_count(X, tuple(a - b for a, b in zip(u, z)))
        rhs = diff_apply(f_z(X, z), piece.poly).evaluate(u)
        details.update(count=lhs, p_omega=piece.poly, chamber=piece.key)
        _expect(rhs, Fraction(lhs), "lattice count differs from f_z(D) p_Omega", z=z, u=u)

    return _run("kp", X, body, pre)


def is_deep(X: VectorConfig, u: Sequence[int]) -> bool:
    """u - z lies in the closed chamber of u for every lattice point z of Z(X)."""
    if not in_cone(X, u):
        return False
    dirn, _ = _kp_direction(X, u, None)
    key = chamber_key(X, u, dirn)
    return all(in_closed_chamber(X, key, [a - b for a, b in zip(u, z)])
               for z in zonotope_points(X)[0])


def sample_cone_points(X: VectorConfig, count: int, seed: int = 0,
                       radius: int | None = None, deep: bool = True) -> list[tuple[int, ...]]:
    """Deterministic lattice points of cone(X), optionally restricted to deep
    points. The sampling box starts at the given radius (default N * max|x|)
    and doubles whenever points are scarce."""
    if X.dim == 0:
        return [()][:count]
    if radius is None:
        radius = X.N * max((abs(v) for c in X.columns for v in c), default=1)
    radius = max(radius, 1)
    rng = random.Random(seed)
    out: list[tuple[int, ...]] = []
    seen = set()
    tries = 0
    while len(out) < count and radius < 10 ** 6:
        tries += 1
        if tries > 50 * count:
            radius, tries = 2 * radius, 0
        u = tuple(rng.randint(-radius, radius) for _ in range(X.dim))
        if u in seen:
            continue
        seen.add(u)
        if (is_deep(X, u) if deep else in_cone(X, u)):
            out.append(u)
    return out


def check_kp_batch(X: VectorConfig, points: Sequence[Sequence[int]] | None = None,
                   zs: Sequence[Sequence[int]] | None = None, n_points: int = 20,
                   seed: int = 0, radius: int | None = None,
                   cross_check_first: bool = True) -> CheckReport:
    def pre():
        reason = _tu_spanning(X)
        if reason:
            return reason
        try:
            positive_functional(X)
        except PreconditionError as exc:
            return str(exc)
        return None

    def body(details):
        pts = list(points) if points is not None else sample_cone_points(X, n_points, seed, radius)
        # the zero-dimensional lattice has a single point
        if len(pts) < min(n_points, 1 if X.dim == 0 else n_points) and points is None:
            raise _Fail("too few deep lattice points found", found=len(pts))
        zlist = [tuple(z) for z in zs] if zs is not None else list(zonotope_points(X)[0])
        checked_chambers = set()
        n = 0
        for u in pts:
            u = tuple(u)
            dirn, _ = _kp_direction(X, u, None)
            key = chamber_key(X, u, dirn)
            cross = cross_check_first and key not in checked_chambers
            checked_chambers.add(key)
            piece = multispline_piece(X, u, dirn, cross_check=cross)
            for z in zlist:
                lhs = partition_count(X, tuple(a - b for a, b in zip(u, z)))
                rhs = diff_apply(f_z(X, z), piece.poly).evaluate(u)
                _expect(rhs, Fraction(lhs), "lattice count differs from f_z(D) p_Omega", z=z, u=u)
                n += 1
        details.update(points=len(pts), shifts=len(zlist), comparisons=n,
                       chambers=len(checked_chambers))

    return _run("kp-batch", X, body, pre)


# partition of unity -------------------------------------------------------------

def check_partition_unity(X: VectorConfig) -> CheckReport:
    def pre():
        reason = _tu_spanning(X)
        if reason:
            return reason
        if any(X.is_coloop(i) for i in range(X.N)):
            return "configuration has a coloop"
        return None

    def body(details):
        bs = box_spline(X)
        ws = direction_family(X, 3)
        total = Polynomial.zero(X.dim)
        values = {}
        for z in zonotope_points(X)[1]:
            vals = {bs.limit_piece(z, w).evaluate(z) for w in ws}
            if len(vals) != 1:
                raise _Fail("B_X is not continuous at an interior lattice point", z=z,
                            values=sorted(vals))
            b = vals.pop()
            values[z] = b
            total = total + f_z(X, z) * b
        details["values"] = values
        _expect(total, Polynomial.one(X.dim), "sum of B_X(z) f_z is not 1")

    return _run("partition-unity", X, body, pre)


# univariate residue identity ----------------------------------------------------

def check_residue_1d(a: int, b: int) -> CheckReport:
    X = VectorConfig.from_columns([(-1,)] * a + [(1,)] * b, dim=1)

    def pre():
        return None if a >= 1 and b >= 1 else "a and b must be positive"

    def body(details):
        top = a + b - 1
        coeffs = {}
        for z in range(-a + 1, b):
            series = todd_series(X.columns, (z,), top, dim=1)
            c = series.coefficient((top,))
            coeffs[z] = c
            _expect(c, Fraction(0), "top Todd coefficient does not vanish", z=z, degree=top)
            f = psi_project(X, series)
            _expect(f, series.poly.truncate(top - 1), "projection is not truncation", z=z)
        details["c_N"] = coeffs
        P = central_space(X)
        _expect(P.dims(), [1] * (top + 1), "P(X) is not all polynomials of degree <= N")
        _expect(internal_space(X).dims(), [1] * top, "P_-(X) is not all polynomials of degree < N")

    r = _run("residue-1d", X, body, pre)
    r.details.setdefault("a", a)
    r.details.setdefault("b", b)
    return r


# deletion and contraction ---------------------------------------------------------

def _contraction_w(X: VectorConfig, i: int):
    con = contract(X, i)
    Y = X.delete(i)

    def ok(w):
        wbar = con.point(w)
        Q = con.quotient
        if Q.dim and not (is_affine_regular(Q, wbar) and is_short(Q, wbar)):
            return False
        if len(shifted_points(Q, wbar)) != len(enumerate_bases(Q)):
            return False
        return len(shifted_points(Y, w)) == len(enumerate_bases(Y))

    w = short_affine_regular(X, extra=ok)
    return con, w, con.point(w)


def check_delcon(X: VectorConfig) -> CheckReport:
    def body(details):
        base_w = short_affine_regular(X)
        done = 0
        for i in range(X.N):
            if X.is_loop(i) or X.is_coloop(i):
                continue
            x = X.columns[i]
            xf = X.form(i)
            Y = X.delete(i)
            con, w, wbar = _contraction_w(X, i)
            Q = con.quotient
            where = {"column": i, "w": w}
            # basis counts
            _expect(len(enumerate_bases(X)), len(enumerate_bases(Y)) + len(enumerate_bases(Q)),
                    "basis deletion-contraction count fails", **where)
            # deletion and contraction: x f_z^{X\x} = f_z^X - f_{z+x}^X and pi_x f_z^X = f_{zbar}^{X/x}
            zX = shifted_points(X, w)
            window = sorted(set(zX) | {tuple(a - b for a, b in zip(z, x)) for z in zX})
            for z in window:
                zx = tuple(a + b for a, b in zip(z, x))
                _expect(xf * f_z(Y, z), f_z(X, z) - f_z(X, zx),
                        "multiplication identity fails", z=z, **where)
                _expect(con.poly(f_z(X, z)), f_z(Q, con.point(z)),
                        "projection identity fails", z=z, **where)
            # x * psi_{X\x}(g) = psi_X(x g) on monomials up to N - d - 1
            for k in range(max_degree(Y) + 1):
                for e in monomials(X.dim, k):
                    g = Polynomial(X.dim, {e: 1})
                    _expect(xf * psi_project(Y, g), psi_project(X, xf * g),
                            "psi commutes badly with multiplication", monomial=e, **where)
            # bijection Z(X,w) \ Z(X\x,w) -> Z(X/x, wbar)
            zY = set(shifted_points(Y, w))
            images = [con.point(z) for z in zX if z not in zY]
            zQ = shifted_points(Q, wbar)
            _expect(sorted(images), sorted(zQ), "z -> zbar is not a bijection", **where)
            # commutative diagram
            for _, p in q_basis(Y):
                gY = gamma_function(Y, p, w)
                gX = gamma_function(X, xf * p, w)
                for z in sorted(set(gX) | {tuple(a + b for a, b in zip(z0, x)) for z0 in gY}):
                    nab = gY.get(z, Fraction(0)) - gY.get(tuple(a - b for a, b in zip(z, x)), Fraction(0))
                    _expect(gX.get(z, Fraction(0)), nab, "gamma(x p) != nabla_x gamma(p)",
                            z=z, p=p, **where)
            for _, p in q_basis(X):
                gX = gamma_function(X, p, w)
                sums: dict = defaultdict(Fraction)
                for z, v in gX.items():
                    sums[con.point(z)] += v
                gQ = gamma_function(Q, con.poly(p), wbar)
                for zb in set(sums) | set(gQ):
                    _expect(gQ.get(zb, Fraction(0)), sums.get(zb, Fraction(0)),
                            "gamma(pi_x p) != Sigma_x gamma(p)", zbar=zb, p=p, **where)
            done += 1
        details["columns"] = done
        details["w"] = base_w

    return _run("delcon", X, body, lambda: _tu_spanning(X))


# dimensions and bases ---------------------------------------------------------------

def check_dims(X: VectorConfig) -> CheckReport:
    def body(details):
        bases = enumerate_bases(X)
        w = short_affine_regular(X)
        zX = shifted_points(X, w)
        points, interior = zonotope_points(X)
        P = central_space(X)
        Pm = internal_space(X)
        details.update(bases=len(bases), shifted=len(zX), interior=len(interior),
                       dim_P=P.dimension, dim_P_minus=Pm.dimension)
        _expect(P.dimension, len(bases), "dim P(X) != number of bases")
        _expect(len(zX), len(bases), "|Z(X,w)| != number of bases")
        _expect(Pm.dimension, len(interior), "dim P_-(X) != number of interior points")
        # the Q_B span P(X) as defined by products p_Y
        for _, q in q_basis(X):
            if not P.contains(q):
                raise _Fail("Q_B outside P(X)", q=q)
        # J(X) is killed by psi and P(X) is fixed
        for g in jideal_generators(X):
            _expect(psi_project(X, g), Polynomial.zero(X.dim), "psi does not kill J(X)", g=g)
        for q in P.all_basis():
            _expect(psi_project(X, q), q, "psi is not the identity on P(X)", q=q)
        # duality between the Q_B basis and D(X)
        D = dspace(X).all_basis()
        _expect(len(D), len(bases), "dim D(X) != number of bases")
        mat = [[pairing(q, f) for f in D] for _, q in q_basis(X)]
        _expect(linalg.rank(mat) if mat else 0, len(bases), "pairing matrix is singular")
        # local pieces of B_X lie in D(X)
        bs = box_spline(X)
        gens = jideal_generators(X)
        for u in points:
            piece = bs.limit_piece(u, w)
            for g in gens:
                _expect(diff_apply(g, piece), Polynomial.zero(X.dim),
                        "local piece not annihilated by J(X)", u=u, g=g)
        internal_basis(X)
        central_basis(X, w)

    return _run("dims", X, body, lambda: _tu_spanning(X))


# continuity --------------------------------------------------------------------------

def check_continuity(X: VectorConfig) -> CheckReport:
    def body(details):
        ws = direction_family(X, max(3, min(2 ** X.dim, 8)))
        bs = box_spline(X)
        points, interior = zonotope_points(X)
        for z in interior:
            f = f_z(X, z)
            for u in points:
                vals = {bs.limit_value(f, u, w) for w in ws}
                if len(vals) != 1:
                    raise _Fail("interior f_z has direction-dependent limits", z=z, u=u,
                                values=sorted(vals))
        w = ws[0]
        minus = tuple(-a for a in w)
        boundary = [z for z in shifted_points(X, w) if z not in set(interior)]
        for z in boundary:
            f = f_z(X, z)
            a = bs.limit_value(f, z, w)
            b = bs.limit_value(f, z, minus)
            if a == b:
                raise _Fail("boundary f_z shows no discontinuity at z", z=z, values=[a, b])
        details.update(interior=len(interior), boundary=len(boundary), directions=len(ws))

    return _run("continuity", X, body, lambda: _tu_spanning(X))


SUITES = {
    "main-theorem": lambda X: [check_main_theorem(X, z) for z in zonotope_points(X)[1]],
    "boundary": lambda X: [check_boundary_theorem(X, w) for w in direction_family(X, 3)],
    "kp": lambda X: [check_kp_batch(X)],
    "partition-unity": lambda X: [check_partition_unity(X)],
    "delcon": lambda X: [check_delcon(X)],
    "dims": lambda X: [check_dims(X)],
    "continuity": lambda X: [check_continuity(X)],
}


def run_suite(X: VectorConfig, names: Sequence[str] = ("all",)) -> list[CheckReport]:
    if "all" in names:
        names = list(SUITES)
    pre = _tu_spanning(X)
    if pre:
        return [CheckReport(n, X.fingerprint, "skipped", {"reason": pre}) for n in names]
    reports: list[CheckReport] = []
    for name in names:
        if name not in SUITES:
            raise KeyError(f"unknown suite {name!r}")
        out = SUITES[name](X)
        if not out:
            out = [CheckReport(name, X.fingerprint, "pass", {"note": "vacuous"})]
        reports.extend(out)
    return reports
