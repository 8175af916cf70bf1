import random
from itertools import combinations

import pytest

from latticetodd.matroid import (
    PreconditionError,
    VectorConfig,
    cocircuits,
    cocircuits_brute_force,
    connected_graphs,
    contract,
    enumerate_bases,
    external_activity,
    external_activity_by_circuits,
    graph_config,
    is_totally_unimodular,
    random_connected_graph,
    rank,
)


def family():
    out = [graph_config(n, e) for n in range(2, 5) for e in connected_graphs(n)]
    out.append(VectorConfig.from_matrix([[1, 0, 0, 1, 0], [0, 1, 0, 0, 1], [0, 0, 1, 1, 1]]))
    out.append(VectorConfig.from_matrix([[1, 0, 1, 0], [0, 1, 1, 0]]))  # with a loop
    return out


def test_from_matrix_keeps_column_order():
    X = VectorConfig.from_matrix([[1, 0, 1], [0, 1, 1]], labels=["a", "b", "c"])
    assert X.columns == ((1, 0), (0, 1), (1, 1))
    assert X.N == 3 and X.dim == 2 and X.labels == ("a", "b", "c")
    with pytest.raises(ValueError):
        VectorConfig.from_matrix([[1, 0], [1]])


def test_total_unimodularity():
    assert is_totally_unimodular(graph_config(4, list(combinations(range(4), 2))))
    assert not is_totally_unimodular(VectorConfig.from_matrix([[2, 1]]))
    assert not is_totally_unimodular(VectorConfig.from_matrix([[1, 1], [-1, 1]]))


def test_spanning_trees_of_k4():
    X = graph_config(4, list(combinations(range(4), 2)))
    assert len(enumerate_bases(X)) == 16


@pytest.mark.parametrize("X", family(), ids=lambda X: X.fingerprint)
def test_external_activity_two_ways(X):
    for B in enumerate_bases(X):
        assert B.ext_active == external_activity_by_circuits(X, B.indices)
        assert abs(B.det) == 1


@pytest.mark.parametrize("X", family(), ids=lambda X: X.fingerprint)
def test_cocircuits_brute_force(X):
    assert sorted(cocircuits(X)) == sorted(cocircuits_brute_force(X))
    for C in cocircuits(X):
        rest = [i for i in range(X.N) if i not in C]
        assert rank(X, rest) < X.dim


def test_not_a_basis():
    X = VectorConfig.from_matrix([[1, 1, 0], [0, 0, 1]])
    with pytest.raises(PreconditionError):
        external_activity(X, (0, 1))


@pytest.mark.parametrize("X", family()[:8], ids=lambda X: X.fingerprint)
def test_contraction_bases(X):
    for i in range(X.N):
        if X.is_loop(i):
            continue
        c = contract(X, i)
        assert is_totally_unimodular(c.quotient)
        containing = [B for B in enumerate_bases(X) if i in B.indices]
        assert len(enumerate_bases(c.quotient)) == len(containing)


def test_contract_loop_rejected():
    X = VectorConfig.from_matrix([[1, 0], [0, 0]])
    with pytest.raises(PreconditionError):
        contract(X, 1)


def test_random_graphs_are_connected_and_deterministic():
    a = random_connected_graph(5, 8, random.Random(7))
    b = random_connected_graph(5, 8, random.Random(7))
    assert a == b and len(a) <= 8
    assert graph_config(5, a).spans()
