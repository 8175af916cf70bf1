from fractions import Fraction

import pytest

from latticetodd.algebra import Polynomial
from latticetodd.geometry import direction_family, interior_points, shifted_points
from latticetodd.matroid import PreconditionError, VectorConfig, graph_config
from latticetodd.pspace import internal_space, q_basis
from latticetodd.toddcalc import (
    central_basis,
    f_z,
    gamma_function,
    gamma_matrix,
    internal_basis,
    interpolate_internal,
)

CONFIGS = [
    VectorConfig.from_columns([(1,)] * 4, dim=1),
    VectorConfig.from_matrix([[1, 0, 1], [0, 1, 1]]),
    VectorConfig.from_matrix([[1, 0, 0, 1, 0], [0, 1, 0, 0, 1], [0, 0, 1, 1, 1]]),
    graph_config(4, [(0, 1), (1, 2), (2, 3), (0, 3), (0, 2)]),
]
ids = ["line4", "ex32", "pentagon", "graph"]


@pytest.mark.parametrize("X", CONFIGS, ids=ids)
def test_todd_route_matches_linear_algebra_route(X):
    # gamma on the Q_B basis, inverted, must reproduce psi(todd(X, z))
    w = direction_family(X, 1)[0]
    gm = gamma_matrix(X, w, [q for _, q in q_basis(X)])
    for z in shifted_points(X, w):
        assert gm.solve_delta(z) == f_z(X, z)


@pytest.mark.parametrize("X", CONFIGS, ids=ids)
def test_gamma_of_f_z_is_delta(X):
    w = direction_family(X, 1)[0]
    points = shifted_points(X, w)
    for z in points:
        values = gamma_function(X, f_z(X, z), w)
        assert values == {y: Fraction(int(y == z)) for y in points}


@pytest.mark.parametrize("X", CONFIGS, ids=ids)
def test_bases(X):
    table = internal_basis(X)
    assert table.points() == list(interior_points(X))
    assert all(internal_space(X).contains(p) for _, p in table.polys)
    for w in direction_family(X, 2):
        assert central_basis(X, w).rank() == len(shifted_points(X, w))


def test_interpolation():
    X = CONFIGS[2]
    values = {(1, 1, 1): 3, (1, 1, 2): Fraction(-1, 2)}
    p = interpolate_internal(X, values)
    w = direction_family(X, 1)[0]
    achieved = gamma_function(X, p, w)
    for z, v in values.items():
        assert achieved[z] == v
    assert internal_space(X).contains(p)


def test_interpolation_rejects_boundary_point():
    with pytest.raises(PreconditionError):
        interpolate_internal(CONFIGS[1], {(0, 0): 1})


def test_f_z_checks():
    X = CONFIGS[1]
    assert f_z(X, (1, 1), check_internal=True) == Polynomial.one(2)
    with pytest.raises(ValueError):
        f_z(X, (1,))
