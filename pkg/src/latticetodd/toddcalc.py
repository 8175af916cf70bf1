"""The polynomials f_z = psi_X(todd(X, z)), the interpolation solver on
interior lattice points, and the evaluation map gamma_X^w."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Mapping, Sequence

from . import linalg
from .algebra import Polynomial, monomials, todd_series, vector_of
from .geometry import interior_points, shifted_points
from .matroid import PreconditionError, VectorConfig
from .pspace import internal_space, max_degree, psi_project
from .splines import box_spline


@lru_cache(maxsize=4096)
def f_z(X: VectorConfig, z: tuple[int, ...], check_internal: bool = False) -> Polynomial:
    """psi_X of the z-shifted Todd series truncated at N - d."""
    z = tuple(z)
    if len(z) != X.dim:
        raise ValueError("z has the wrong dimension")
    g = todd_series(X.columns, z, max_degree(X), dim=X.dim)
    f = psi_project(X, g)
    if check_internal and z in interior_points(X) and not internal_space(X).contains(f):
        raise AssertionError(f"f_{z} is not in the internal space")
    return f


@dataclass(frozen=True)
class FzTable:
    X: VectorConfig
    cap: int
    polys: tuple[tuple[tuple[int, ...], Polynomial], ...]

    def __getitem__(self, z):
        return dict(self.polys)[tuple(z)]

    def points(self) -> list[tuple[int, ...]]:
        return [z for z, _ in self.polys]

    def rank(self) -> int:
        top = self.cap
        mons = [e for k in range(top + 1) for e in monomials(self.X.dim, k)]
        return linalg.rank([vector_of(p, mons) for _, p in self.polys]) if self.polys else 0


def fz_table(X: VectorConfig, points: Sequence[Sequence[int]]) -> FzTable:
    return FzTable(X, max_degree(X), tuple((tuple(z), f_z(X, tuple(z))) for z in points))


def internal_basis(X: VectorConfig) -> FzTable:
    table = fz_table(X, interior_points(X))
    if table.rank() != len(table.polys) or len(table.polys) != internal_space(X).dimension:
        raise AssertionError("f_z over interior points is not a basis of the internal space")
    return table


def central_basis(X: VectorConfig, w: Sequence) -> FzTable:
    from .matroid import enumerate_bases

    table = fz_table(X, shifted_points(X, w))
    if table.rank() != len(table.polys) or len(table.polys) != len(enumerate_bases(X)):
        raise AssertionError("f_z over Z(X, w) is not a basis of P(X)")
    return table


def gamma_value(X: VectorConfig, p: Polynomial, z: Sequence, w: Sequence) -> Fraction:
    """lim_w p(D_pw) B_X (z)."""
    return box_spline(X).limit_value(p, z, w)


def gamma_function(X: VectorConfig, p: Polynomial, w: Sequence) -> dict[tuple, Fraction]:
    """gamma_X^w(p) as a map on Z(X, w); it vanishes on every other lattice point."""
    return {z: gamma_value(X, p, z, w) for z in shifted_points(X, w)}


@dataclass(frozen=True)
class GammaMatrix:
    rows: tuple[tuple[int, ...], ...]
    basis: tuple[Polynomial, ...]
    matrix: tuple[tuple[Fraction, ...], ...]

    def solve_delta(self, z: Sequence[int]) -> Polynomial:
        """The q in span(basis) with gamma(q) = delta_z."""
        target = [Fraction(int(tuple(z) == r)) for r in self.rows]
        coeffs = linalg.solve([list(r) for r in self.matrix], target)
        out = Polynomial.zero(self.basis[0].dim)
        for c, b in zip(coeffs, self.basis):
            out = out + b * c
        return out


def gamma_matrix(X: VectorConfig, w: Sequence, basis: Sequence[Polynomial]) -> GammaMatrix:
    rows = shifted_points(X, w)
    if len(rows) != len(basis):
        raise PreconditionError(f"{len(rows)} points but {len(basis)} basis polynomials")
    m = tuple(tuple(gamma_value(X, b, z, w) for b in basis) for z in rows)
    if rows and linalg.rank(m) != len(rows):
        raise AssertionError("gamma matrix is singular")
    return GammaMatrix(tuple(rows), tuple(basis), m)


def interpolate_internal(X: VectorConfig, values: Mapping[Sequence[int], object]) -> Polynomial:
    """The unique p in P_-(X) with p(D)B_X = values on interior lattice points."""
    interior = set(interior_points(X))
    out = Polynomial.zero(X.dim)
    for z, v in values.items():
        z = tuple(z)
        if z not in interior:
            raise PreconditionError(f"{z} is not an interior lattice point")
        out = out + f_z(X, z) * Fraction(v)
    return out
