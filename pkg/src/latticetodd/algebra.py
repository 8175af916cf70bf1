"""Exact sparse multivariate polynomials, truncated power series, the
differential pairing, Bernoulli numbers and Todd series.

Polynomials in ``s`` (operators) and in ``t`` (functions) share one class;
the distinction is only which side of :func:`diff_apply` a value is used on.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations_with_replacement
from math import factorial
from typing import Iterable, Mapping, Sequence

Exponent = tuple[int, ...]


def monomials(dim: int, degree: int) -> list[Exponent]:
    """All exponent vectors of the given total degree, in graded-lex order."""
    out = []
    for combo in combinations_with_replacement(range(dim), degree):
        e = [0] * dim
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    return sorted(set(out), key=_order_key)


def _order_key(e: Exponent):
    # graded lex with s_1 < ... < s_d: compare degree, then the exponent of s_d first
    return (sum(e), e[::-1])


class Polynomial:
    """Polynomial with rational coefficients in ``dim`` variables.

    Immutable; zero coefficients are never stored.
    """

    __slots__ = ("dim", "terms", "_hash")

    def __init__(self, dim: int, terms: Mapping[Exponent, object] | None = None):
        self.dim = dim
        clean: dict[Exponent, Fraction] = {}
        for e, c in (terms or {}).items():
            e = tuple(e)
            if len(e) != dim:
                raise ValueError(f"exponent {e} does not have length {dim}")
            c = Fraction(c)
            if c != 0:
                clean[e] = clean.get(e, Fraction(0)) + c
                if clean[e] == 0:
                    del clean[e]
        self.terms = clean
        self._hash = None

    # constructors -----------------------------------------------------

    @classmethod
    def zero(cls, dim: int) -> "Polynomial":
        return cls(dim)

    @classmethod
    def constant(cls, dim: int, c) -> "Polynomial":
        return cls(dim, {(0,) * dim: c})

    @classmethod
    def one(cls, dim: int) -> "Polynomial":
        return cls.constant(dim, 1)

    @classmethod
    def variable(cls, dim: int, i: int) -> "Polynomial":
        e = [0] * dim
        e[i] = 1
        return cls(dim, {tuple(e): 1})

    @classmethod
    def linear(cls, coefficients: Sequence) -> "Polynomial":
        """The linear form sum_i c_i s_i of a vector."""
        dim = len(coefficients)
        terms = {}
        for i, c in enumerate(coefficients):
            e = [0] * dim
            e[i] = 1
            terms[tuple(e)] = c
        return cls(dim, terms)

    @classmethod
    def _raw(cls, dim: int, terms: dict) -> "Polynomial":
        p = cls.__new__(cls)
        p.dim = dim
        p.terms = terms
        p._hash = None
        return p

    # basic queries ----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def coefficient(self, e: Exponent) -> Fraction:
        return self.terms.get(tuple(e), Fraction(0))

    def constant_term(self) -> Fraction:
        return self.coefficient((0,) * self.dim)

    def sorted_terms(self) -> list[tuple[Exponent, Fraction]]:
        return sorted(self.terms.items(), key=lambda kv: _order_key(kv[0]))

    def homogeneous_part(self, k: int) -> "Polynomial":
        return Polynomial._raw(self.dim, {e: c for e, c in self.terms.items() if sum(e) == k})

    def truncate(self, cap: int) -> "Polynomial":
        return Polynomial._raw(self.dim, {e: c for e, c in self.terms.items() if sum(e) <= cap})

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    # arithmetic -------------------------------------------------------

    def _check(self, other: "Polynomial"):
        if other.dim != self.dim:
            raise ValueError(f"dimension mismatch: {self.dim} vs {other.dim}")

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial.constant(self.dim, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms = dict(self.terms)
        for e, c in other.terms.items():
            v = terms.get(e, 0) + c
            if v:
                terms[e] = v
            else:
                terms.pop(e, None)
        return Polynomial._raw(self.dim, terms)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(self.dim, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return Polynomial.zero(self.dim)
            return Polynomial._raw(self.dim, {e: c * other for e, c in self.terms.items()})
        if not isinstance(other, Polynomial):
            return NotImplemented
        self._check(other)
        terms: dict[Exponent, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                terms[e] = terms.get(e, 0) + c1 * c2
        return Polynomial._raw(self.dim, {e: c for e, c in terms.items() if c})

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        return self * (1 / Fraction(scalar))

    def __pow__(self, n: int):
        out = Polynomial.one(self.dim)
        for _ in range(n):
            out = out * self
        return out

    def mul_truncated(self, other: "Polynomial", cap: int) -> "Polynomial":
        self._check(other)
        terms: dict[Exponent, Fraction] = {}
        for e1, c1 in self.terms.items():
            d1 = sum(e1)
            for e2, c2 in other.terms.items():
                if d1 + sum(e2) > cap:
                    continue
                e = tuple(a + b for a, b in zip(e1, e2))
                terms[e] = terms.get(e, 0) + c1 * c2
        return Polynomial._raw(self.dim, {e: c for e, c in terms.items() if c})

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Polynomial.constant(self.dim, other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.dim == other.dim and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.dim, frozenset(self.terms.items())))
        return self._hash

    # calculus and evaluation -----------------------------------------

    def derivative(self, i: int, times: int = 1) -> "Polynomial":
        terms = {}
        for e, c in self.terms.items():
            if e[i] < times:
                continue
            k = e[i]
            f = factorial(k) // factorial(k - times)
            ne = list(e)
            ne[i] -= times
            terms[tuple(ne)] = c * f
        return Polynomial._raw(self.dim, terms)

    def evaluate(self, point: Sequence) -> Fraction:
        if len(point) != self.dim:
            raise ValueError("point has wrong dimension")
        total = Fraction(0)
        for e, c in self.terms.items():
            v = c
            for x, k in zip(point, e):
                if k:
                    v *= Fraction(x) ** k
            total += v
        return total

    __call__ = evaluate

    def compose(self, images: Sequence["Polynomial"]) -> "Polynomial":
        """Substitute variable i by ``images[i]``."""
        if len(images) != self.dim:
            raise ValueError("need one image per variable")
        target = images[0].dim if images else 0
        out = Polynomial.zero(target)
        powers: dict[tuple[int, int], Polynomial] = {}
        for e, c in self.terms.items():
            term = Polynomial.constant(target, c)
            for i, k in enumerate(e):
                if k:
                    if (i, k) not in powers:
                        powers[(i, k)] = images[i] ** k
                    term = term * powers[(i, k)]
            out = out + term
        return out

    def translate(self, v: Sequence) -> "Polynomial":
        """The polynomial u -> p(u + v)."""
        images = [Polynomial.variable(self.dim, i) + Fraction(v[i]) for i in range(self.dim)]
        return self.compose(images)

    # display ----------------------------------------------------------

    def to_str(self, var: str = "s") -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                f"{var}{i + 1}" + (f"^{k}" if k > 1 else "") for i, k in enumerate(e) if k
            )
            mag = abs(c)
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            parts.append(("-" if c < 0 else "+", body))
        text = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self):
        return f"Polynomial({self.dim}, {self.to_str()!r})"

    def __str__(self):
        return self.to_str()


def vector_of(p: Polynomial, basis: Sequence[Exponent]) -> list[Fraction]:
    return [p.coefficient(e) for e in basis]


def from_vector(dim: int, basis: Sequence[Exponent], coeffs: Iterable) -> Polynomial:
    return Polynomial(dim, dict(zip(basis, coeffs)))


@dataclass(frozen=True)
class GradedSeries:
    """A power series known up to total degree ``cap``."""

    poly: Polynomial
    cap: int

    def __post_init__(self):
        if self.poly.degree > self.cap:
            object.__setattr__(self, "poly", self.poly.truncate(self.cap))

    @property
    def dim(self) -> int:
        return self.poly.dim

    def __mul__(self, other: "GradedSeries") -> "GradedSeries":
        cap = min(self.cap, other.cap)
        return GradedSeries(self.poly.mul_truncated(other.poly, cap), cap)

    def __add__(self, other: "GradedSeries") -> "GradedSeries":
        cap = min(self.cap, other.cap)
        return GradedSeries((self.poly + other.poly).truncate(cap), cap)

    def __sub__(self, other: "GradedSeries") -> "GradedSeries":
        cap = min(self.cap, other.cap)
        return GradedSeries((self.poly - other.poly).truncate(cap), cap)

    def coefficient(self, e: Exponent) -> Fraction:
        if sum(e) > self.cap:
            raise ValueError(f"degree {sum(e)} beyond cap {self.cap}")
        return self.poly.coefficient(e)


def diff_apply(p: Polynomial, f: Polynomial) -> Polynomial:
    """Let ``p`` act on ``f`` as a constant-coefficient differential operator."""
    if p.dim != f.dim:
        raise ValueError(f"dimension mismatch: {p.dim} vs {f.dim}")
    out: dict[Exponent, Fraction] = {}
    for a, c in p.terms.items():
        for e, v in f.terms.items():
            if any(x < y for x, y in zip(e, a)):
                continue
            k = c * v
            for x, y in zip(e, a):
                if y:
                    k *= factorial(x) // factorial(x - y)
            ne = tuple(x - y for x, y in zip(e, a))
            out[ne] = out.get(ne, 0) + k
    return Polynomial._raw(f.dim, {e: c for e, c in out.items() if c})


def pairing(p: GradedSeries | Polynomial, f: Polynomial) -> Fraction:
    """(p(D) f)(0)."""
    if isinstance(p, GradedSeries):
        if p.cap < f.degree:
            raise ValueError(f"series cap {p.cap} below degree {f.degree}")
        p = p.poly
    if p.dim != f.dim:
        raise ValueError(f"dimension mismatch: {p.dim} vs {f.dim}")
    total = Fraction(0)
    for e, c in f.terms.items():
        a = p.terms.get(e)
        if a:
            w = 1
            for k in e:
                w *= factorial(k)
            total += a * c * w
    return total


@lru_cache(maxsize=None)
def bernoulli(k: int) -> Fraction:
    """B_k with B_1 = -1/2, from inverting (e^s - 1)/s = sum s^j/(j+1)!."""
    if k < 0:
        raise ValueError("k must be non-negative")
    if k == 0:
        return Fraction(1)
    acc = sum(bernoulli(k - j) / (factorial(k - j) * factorial(j + 1)) for j in range(1, k + 1))
    return -factorial(k) * acc


def _series_in_form(form: Polynomial, coeffs: Sequence[Fraction], cap: int) -> Polynomial:
    """sum_k coeffs[k] * form^k truncated at total degree cap."""
    out = Polynomial.zero(form.dim)
    power = Polynomial.one(form.dim)
    for k, c in enumerate(coeffs[: cap + 1]):
        if k:
            power = power * form
        if c:
            out = out + power * c
    return out


def todd_factor(x: Sequence[int], cap: int) -> Polynomial:
    """x / (1 - e^{-x}) = sum_k B_k/k! (-x)^k, truncated; a zero vector gives 1."""
    return _todd_factor(tuple(x), cap)


@lru_cache(maxsize=4096)
def _todd_factor(x: tuple[int, ...], cap: int) -> Polynomial:
    form = Polynomial.linear(x)
    if form.is_zero():
        return Polynomial.one(len(x))
    coeffs = [bernoulli(k) / factorial(k) * (-1) ** k for k in range(cap + 1)]
    return _series_in_form(form, coeffs, cap)


def exp_form(z: Sequence, cap: int, sign: int = 1) -> Polynomial:
    """e^{sign * z} truncated at total degree cap."""
    form = Polynomial.linear(z) * sign
    coeffs = [Fraction(1, factorial(k)) for k in range(cap + 1)]
    return _series_in_form(form, coeffs, cap)


def todd_series(columns: Sequence[Sequence[int]], z: Sequence[int], cap: int,
                dim: int | None = None) -> GradedSeries:
    """e^{-z} prod_x x/(1 - e^{-x}) truncated at total degree ``cap``."""
    if cap < 0:
        raise ValueError("cap must be non-negative")
    if dim is None:
        dim = len(z)
    acc = exp_form(z, cap, sign=-1) if dim else Polynomial.one(0)
    for x in columns:
        acc = acc.mul_truncated(todd_factor(x, cap), cap)
    return GradedSeries(acc, cap)


__all__ = [
    "Polynomial",
    "GradedSeries",
    "monomials",
    "diff_apply",
    "pairing",
    "bernoulli",
    "todd_series",
    "todd_factor",
    "exp_form",
    "vector_of",
    "from_vector",
]
