import random
from fractions import Fraction
from itertools import product
from math import ceil, floor

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from latticetodd.algebra import Polynomial
from latticetodd.geometry import bounding_box, chamber_key, is_generic, nudge, interior_direction
from latticetodd.matroid import PreconditionError, VectorConfig, graph_config
from latticetodd.pspace import dspace
from latticetodd.splines import (
    box_spline,
    chamber_piece_by_convolution,
    chamber_polynomial_from_counts,
    multispline_convolution,
    multispline_eval,
    multispline_piece,
    partition_count,
    positive_functional,
)

EX32 = VectorConfig.from_matrix([[1, 0, 1], [0, 1, 1]])
PENTAGON = VectorConfig.from_matrix([[1, 0, 0, 1, 0], [0, 1, 0, 0, 1], [0, 0, 1, 1, 1]])
GRAPH = graph_config(4, [(0, 1), (1, 2), (2, 3), (0, 3), (0, 2)])


def naive_count(X, u):
    c = positive_functional(X)
    budget = sum(a * b for a, b in zip(c, u))
    if budget < 0:
        return 0
    ranges = [range(budget // sum(a * b for a, b in zip(c, x)) + 1) for x in X.columns]
    return sum(
        1 for w in product(*ranges)
        if all(sum(m * x[i] for m, x in zip(w, X.columns)) == u[i] for i in range(X.dim))
    )


def cardinal_bspline(n, u):
    """Cardinal B-spline of order n (n ones in one dimension), by the
    Cox-de Boor recurrence on integer knots."""
    if n == 1:
        return Fraction(1) if 0 < u < 1 else Fraction(0)
    return (u * cardinal_bspline(n - 1, u) + (n - u) * cardinal_bspline(n - 1, u - 1)) / (n - 1)


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_univariate_box_spline_is_cardinal_bspline(n):
    X = VectorConfig.from_columns([(1,)] * n, dim=1)
    bs = box_spline(X)
    for k in range(-2, 4 * (n + 1)):
        u = Fraction(k, 4) + Fraction(1, 7)
        assert bs.value((u,)) == cardinal_bspline(n, u)
        assert bs.piece((u,)).evaluate((u,)) == cardinal_bspline(n, u)


def generic_points(X, count, seed):
    rng = random.Random(seed)
    box = bounding_box(X)
    out = []
    while len(out) < count:
        u = tuple(Fraction(rng.randint(lo * 12, hi * 12), 12) + Fraction(1, 97 + i)
                  for i, (lo, hi) in enumerate(box))
        if is_generic(X, u):
            out.append(u)
    return out


@pytest.mark.parametrize("X", [EX32, PENTAGON, GRAPH], ids=["ex32", "pentagon", "graph"])
def test_symbolic_pieces_match_scalar_recursion(X):
    bs = box_spline(X)
    for u in generic_points(X, 25, 1):
        assert bs.piece(u).evaluate(u) == bs.value(u)


@pytest.mark.parametrize("X", [EX32, PENTAGON, GRAPH], ids=["ex32", "pentagon", "graph"])
def test_box_spline_partition_of_unity(X):
    bs = box_spline(X)
    box = bounding_box(X)
    for u in generic_points(X, 5, 2):
        ranges = [range(floor(a - hi), ceil(a - lo) + 1) for a, (lo, hi) in zip(u, box)]
        total = sum(bs.value(tuple(a - b for a, b in zip(u, lam))) for lam in product(*ranges))
        assert total == 1


@pytest.mark.parametrize("X", [EX32, PENTAGON], ids=["ex32", "pentagon"])
def test_pieces_lie_in_dahmen_micchelli_space(X):
    D = dspace(X)
    bs = box_spline(X)
    for u in generic_points(X, 10, 3):
        p = bs.piece(u)
        assert D.contains(p)


def test_box_spline_needs_generic_point():
    with pytest.raises(PreconditionError):
        box_spline(EX32).value((1, 1))


@pytest.mark.parametrize("X", [EX32, PENTAGON, GRAPH], ids=["ex32", "pentagon", "graph"])
def test_partition_count_matches_enumeration(X):
    rng = random.Random(5)
    for _ in range(30):
        u = tuple(rng.randint(-1, 5) for _ in range(X.dim))
        assert partition_count(X, u) == naive_count(X, u)


def test_partition_count_example():
    assert partition_count(PENTAGON, (1, 1, 1)) == 3
    assert partition_count(EX32, (0, 0)) == 1
    assert partition_count(EX32, (-1, 0)) == 0


def test_unpointed_cone_rejected():
    with pytest.raises(PreconditionError):
        partition_count(VectorConfig.from_matrix([[1, -1]]), (0,))


@pytest.mark.parametrize("X", [EX32, PENTAGON, GRAPH], ids=["ex32", "pentagon", "graph"])
def test_chamber_routes_agree(X):
    d = interior_direction(X)
    for scale in (1, 3):
        u = tuple(int(a * scale) + 2 for a in d)
        key = chamber_key(X, u, d)
        p0 = nudge(X, u, d)
        by_counts = chamber_polynomial_from_counts(X, key).homogeneous_part(X.N - X.dim)
        assert by_counts == chamber_piece_by_convolution(X, key, p0)


@pytest.mark.parametrize("X", [EX32, PENTAGON], ids=["ex32", "pentagon"])
def test_multispline_recursion_and_convolution(X):
    d = interior_direction(X)
    checked = 0
    for k in range(1, 4):
        u = tuple(a * k + Fraction(1, 5 + i) for i, a in enumerate(d))
        if not is_generic(X, u):
            continue
        checked += 1
        value = multispline_eval(X, u)
        assert multispline_convolution(X, u) == value
        assert multispline_convolution(X, u, scalar=True) == value
        assert multispline_piece(X, u, cross_check=False).poly.evaluate(u) == value
    assert checked


def test_example32_multispline():
    assert multispline_eval(EX32, (Fraction(7, 2), Fraction(3, 2))) == Fraction(3, 2)
    piece = multispline_piece(EX32, (3, 1))
    assert piece.poly == Polynomial.variable(2, 1)


@settings(max_examples=25, deadline=None)
@given(st.tuples(st.integers(min_value=0, max_value=8), st.integers(min_value=0, max_value=8)))
def test_example32_count_formula(u):
    assert partition_count(EX32, u) == min(u) + 1
