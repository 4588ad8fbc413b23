import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from interdict.errors import NotAFacility, NotATree, NotConnected, UnknownEdge
from interdict.graph import (
    Graph, Instance, Kind, count_customer_joints, evaluate_strategy, relabel,
    require_tree, validate_instance,
)

from _util import connected_graph, flood_fill_disconnected, joints_by_deletion, tree_instance


def test_graph_normalizes_and_indexes():
    g = Graph(3, [(1, 0), (2, 1)])
    assert g.edges == ((0, 1), (1, 2))
    assert g.edge_index(2, 1) == 1
    assert sorted(g.neighbors(1)) == [0, 2]
    for v in range(3):
        for u, e in g.adjacency[v]:
            assert set(g.edges[e]) == {u, v}


@pytest.mark.parametrize("edges", [[(0, 0)], [(0, 1), (1, 0)], [(0, 3)]])
def test_graph_rejects_bad_edges(edges):
    with pytest.raises(ValueError):
        Graph(3, edges)


def test_single_cut_disconnects_customer():
    inst = Instance.build(2, [(0, 1)], [0], {1: 3}, 1)
    rep = evaluate_strategy(inst, {0})
    assert rep.disconnected == {1} and rep.disconnected_weight == 3


def test_second_facility_still_reaches():
    inst = Instance.build(3, [(0, 1), (1, 2)], [0, 2], {1: 5}, 1)
    rep = evaluate_strategy(inst, {0})
    assert rep.disconnected == set() and rep.disconnected_weight == 0


def test_bad_removal_ids():
    inst = Instance.build(2, [(0, 1)], [0], None, 1)
    with pytest.raises(UnknownEdge):
        evaluate_strategy(inst, {5})
    fac = inst.with_kind(Kind.FACILITY)
    with pytest.raises(NotAFacility):
        evaluate_strategy(fac, {1})


def test_evaluate_matches_flood_fill():
    rng = random.Random(7)
    for _ in range(200):
        n = rng.randint(2, 12)
        inst = tree_instance(rng, n, 0.4, weighted=True)
        removed = rng.sample(range(n - 1), min(2, n - 1))
        rep = evaluate_strategy(inst, removed)
        assert rep.disconnected == flood_fill_disconnected(inst, removed)
        assert rep.covered | rep.disconnected == set(inst.customers)
        assert not rep.covered & rep.disconnected
        fac = inst.with_kind(Kind.FACILITY)
        gone = inst.facilities[: rng.randint(0, len(inst.facilities))]
        assert evaluate_strategy(fac, gone).disconnected == flood_fill_disconnected(fac, gone)


def test_accepts_numpy_ids():
    inst = Instance.build(2, [(0, 1)], [0], None, 1)
    assert evaluate_strategy(inst, np.array([0])).disconnected == {1}


def test_empty_removal_marks_facility_free_parts():
    inst = Instance.build(5, [(0, 1), (2, 3)], [0], {1: 2, 2: 3, 3: 4, 4: 5}, 0)
    rep = evaluate_strategy(inst, ())
    assert rep.disconnected == {2, 3, 4} and rep.disconnected_weight == 12


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 14), st.integers(0, 10**6))
def test_removal_is_monotone(n, seed):
    rng = random.Random(seed)
    edges = connected_graph(rng, n, rng.randint(0, 4))
    inst = Instance.build(n, edges, [v for v in range(n) if rng.random() < 0.3], None, 3)
    order = list(range(len(edges)))
    rng.shuffle(order)
    last = -1.0
    for k in range(len(order) + 1):
        w = evaluate_strategy(inst, order[:k]).disconnected_weight
        assert 0 <= w <= inst.total_weight
        assert w >= last
        last = w


def test_joints_examples():
    path = Instance.build(3, [(0, 1), (1, 2)], [], None, 0)
    assert count_customer_joints(path) == 0
    star = Instance.build(4, [(0, 1), (0, 2), (0, 3)], [1, 2, 3], None, 0)
    assert count_customer_joints(star) == 1


def test_joints_match_deletion_count():
    rng = random.Random(3)
    for _ in range(150):
        n = rng.randint(1, 50)
        edges = connected_graph(rng, n, rng.randint(0, 5)) if rng.random() < 0.7 else []
        if not edges and n > 1:
            edges = [e for e in connected_graph(rng, n, 0) if rng.random() < 0.7]
        inst = Instance.build(n, edges, [v for v in range(n) if rng.random() < 0.4], None, 0)
        assert count_customer_joints(inst) == joints_by_deletion(inst)


def test_validate_instance_violations():
    ok = Instance.build(2, [(0, 1)], [0], None, 1)
    assert validate_instance(ok) == []
    neg = Instance(ok.graph, ok.facility, (None, -1.0), 1, Kind.EDGE)
    assert [v.code for v in validate_instance(neg)] == ["NegativeWeight"]
    forest = Instance.build(4, [(0, 1), (2, 3)], [0], None, 1)
    assert [v.code for v in validate_instance(forest, for_tree=True)] == ["NotConnected"]
    with pytest.raises(NotConnected):
        require_tree(forest.graph)
    with pytest.raises(NotATree):
        require_tree(Graph(3, [(0, 1), (1, 2), (0, 2)]))


def test_relabel_preserves_objectives():
    rng = random.Random(5)
    inst = tree_instance(rng, 8, 0.4, weighted=True)
    perm = list(range(8))
    rng.shuffle(perm)
    other = relabel(inst, perm)
    assert other.total_weight == inst.total_weight
    assert sorted(other.facilities) == sorted(perm[v] for v in inst.facilities)
