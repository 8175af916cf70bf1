from fractions import Fraction
from itertools import permutations

from hypothesis import given, settings
from hypothesis import strategies as st

from latticetodd import linalg

ints = st.integers(min_value=-4, max_value=4)


def square(n):
    return st.lists(st.lists(ints, min_size=n, max_size=n), min_size=n, max_size=n)


def leibniz_det(a):
    n = len(a)
    total = 0
    for perm in permutations(range(n)):
        sign = 1
        for i in range(n):
            for j in range(i + 1, n):
                if perm[i] > perm[j]:
                    sign = -sign
        prod = 1
        for i in range(n):
            prod *= a[i][perm[i]]
        total += sign * prod
    return total


@settings(max_examples=80, deadline=None)
@given(st.integers(min_value=1, max_value=4).flatmap(square))
def test_det_matches_leibniz(a):
    assert linalg.det_int(a) == leibniz_det(a)


@settings(max_examples=50, deadline=None)
@given(st.integers(min_value=1, max_value=4).flatmap(square))
def test_inverse(a):
    if linalg.det_int(a) == 0:
        assert linalg.rank(a) < len(a)
        return
    inv = linalg.inverse(a)
    n = len(a)
    for i in range(n):
        for j in range(n):
            assert sum(a[i][k] * inv[k][j] for k in range(n)) == int(i == j)


@settings(max_examples=50, deadline=None)
@given(st.lists(st.lists(ints, min_size=4, max_size=4), min_size=1, max_size=3))
def test_nullspace(rows):
    kernel = linalg.nullspace(rows, 4)
    assert len(kernel) == 4 - linalg.rank(rows)
    for v in kernel:
        assert all(sum(Fraction(r[i]) * v[i] for i in range(4)) == 0 for r in rows)


def test_solve():
    assert linalg.solve([[2, 1], [1, 3]], [3, 5]) == [Fraction(4, 5), Fraction(7, 5)]


def test_primitive_and_normal():
    assert linalg.primitive((4, -6, 2)) == (2, -3, 1) or linalg.primitive((4, -6, 2)) == (-2, 3, -1)
    eta = linalg.integer_normal([(1, 0, 1), (0, 1, 1)], 3)
    assert all(sum(a * b for a, b in zip(eta, c)) == 0 for c in [(1, 0, 1), (0, 1, 1)])
    assert any(eta)


def test_egcd():
    g, x, y = linalg.egcd(12, 18)
    assert g == 6 and 12 * x + 18 * y == 6
