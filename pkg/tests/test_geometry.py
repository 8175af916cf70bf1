from fractions import Fraction
from itertools import combinations
from math import gcd

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from latticetodd.geometry import (
    alcove_key,
    chamber_key,
    direction_family,
    hyperplane_normals,
    in_cone,
    in_cone_by_bases,
    in_zonotope,
    interior_points,
    interior_direction,
    is_affine_regular,
    is_generic,
    is_short,
    nudge,
    shifted_points,
    zonotope_points,
)
from latticetodd.matroid import PreconditionError, VectorConfig, connected_graphs, enumerate_bases, graph_config

FAMILY = [graph_config(n, e) for n in range(2, 5) for e in connected_graphs(n)] + [
    VectorConfig.from_matrix([[1, 0, 0, 1, 0], [0, 1, 0, 0, 1], [0, 0, 1, 1, 1]]),
    VectorConfig.from_matrix([[1, 0, 1], [0, 1, 1]]),
]
ids = [X.fingerprint for X in FAMILY]


def subset_sums(X):
    out = set()
    for k in range(X.N + 1):
        for S in combinations(range(X.N), k):
            out.add(tuple(sum(X.columns[i][j] for i in S) for j in range(X.dim)))
    return out


@pytest.mark.parametrize("X", FAMILY, ids=ids)
def test_zonotope_points_are_subset_sums(X):
    # for unimodular X the lattice points of Z(X) are the vertex sums of the cube
    points, interior = zonotope_points(X)
    assert set(points) == subset_sums(X)
    assert list(points) == sorted(points)
    assert set(interior) <= set(points)


@pytest.mark.parametrize("X", FAMILY, ids=ids)
def test_shifted_points_count_bases(X):
    for w in direction_family(X, 3):
        assert is_short(X, w) and is_affine_regular(X, w)
        assert len(shifted_points(X, w)) == len(enumerate_bases(X))
        assert set(interior_points(X)) <= set(shifted_points(X, w))


def test_direction_family_distinct():
    X = VectorConfig.from_matrix([[1, 0, 1], [0, 1, 1]])
    ws = direction_family(X, 4)
    assert len(set(ws)) == 4


def test_shifted_points_reject_nonregular():
    X = VectorConfig.from_columns([(1,), (1,)], dim=1)
    with pytest.raises(PreconditionError):
        shifted_points(X, (Fraction(0),))


PENTAGON = VectorConfig.from_matrix([[1, 0, 0, 1, 0], [0, 1, 0, 0, 1], [0, 0, 1, 1, 1]])
coords = st.integers(min_value=-4, max_value=6)


@settings(max_examples=150, deadline=None)
@given(st.tuples(coords, coords, coords))
def test_cone_membership_two_ways(u):
    assert in_cone(PENTAGON, u) == in_cone_by_bases(PENTAGON, u)


@settings(max_examples=100, deadline=None)
@given(st.tuples(st.fractions(min_value=-1, max_value=4, max_denominator=5),
                 st.fractions(min_value=-1, max_value=4, max_denominator=5)))
def test_nudge_enters_open_alcove(u):
    X = VectorConfig.from_matrix([[1, 0, 1], [0, 1, 1]])
    w = direction_family(X, 1)[0]
    v = nudge(X, u, w)
    assert is_generic(X, v)
    # the nudged point and a smaller nudge lie in the same alcove
    half = tuple(a + (b - a) / 2 for a, b in zip(u, v))
    assert alcove_key(X, half) == alcove_key(X, v)


def test_zonotope_boundary():
    X = VectorConfig.from_matrix([[1, 0, 1], [0, 1, 1]])
    assert in_zonotope(X, (1, 1), strict=True)
    assert in_zonotope(X, (0, 0)) and not in_zonotope(X, (0, 0), strict=True)
    assert not in_zonotope(X, (2, 0))


def test_chamber_key():
    X = VectorConfig.from_matrix([[1, 0, 1], [0, 1, 1]])
    assert chamber_key(X, (2, 1)) != chamber_key(X, (1, 2))
    assert chamber_key(X, (1, 1), (1, 0)) == chamber_key(X, (2, 1))
    with pytest.raises(PreconditionError):
        chamber_key(X, (-1, 0))
    with pytest.raises(PreconditionError):
        chamber_key(X, (1, 1))
    d = interior_direction(X)
    assert in_cone(X, d)


def test_k4_hyperplanes_by_brute_force():
    X = VectorConfig.from_matrix([[1, 0, 0, 1, 1, 0], [0, 1, 0, -1, 0, 1], [0, 0, 1, 0, -1, -1]])
    planes = set()
    for a, b in combinations(X.columns, 2):
        n = (a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0])
        if any(n):
            g = gcd(*n)
            first = next(v for v in n if v)
            planes.add(tuple(v * (1 if first > 0 else -1) // g for v in n))
    # four triangles and three pairs of disjoint edges
    assert len(planes) == 7
    normals = {tuple(v * (1 if next(c for c in eta if c) > 0 else -1) for v in eta)
               for eta in hyperplane_normals(X)}
    assert normals == planes
