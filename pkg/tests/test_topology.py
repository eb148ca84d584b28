"""Torus geometry tests against exhaustive enumeration oracles."""

import numpy as np
import pytest

from swlab.topology import (
    NodeId,
    TorusGrid,
    ball_offsets,
    count_at_distance,
    distance_counts,
    nodes_at_distance,
    shell_offsets,
    torus_distance,
)


def brute_distance(L, u, v):
    dr = abs(u[0] - v[0])
    dc = abs(u[1] - v[1])
    return min(dr, L - dr) + min(dc, L - dc)


def brute_shells(L, u):
    """Distance -> set of nodes, by checking every node on the torus."""
    shells = {}
    for r in range(L):
        for c in range(L):
            if (r, c) == u:
                continue
            shells.setdefault(brute_distance(L, u, (r, c)), set()).add(NodeId(r, c))
    return shells


def test_distance_examples():
    g = TorusGrid(4)
    assert torus_distance(g, NodeId(0, 0), NodeId(3, 3)) == 2
    assert torus_distance(g, NodeId(1, 2), NodeId(1, 2)) == 0
    g6 = TorusGrid(6)
    assert torus_distance(g6, NodeId(0, 0), NodeId(3, 3)) == 6


def test_grid_validation():
    with pytest.raises(ValueError):
        TorusGrid(1)
    with pytest.raises(ValueError):
        TorusGrid(0)
    assert TorusGrid(2).n == 4
    assert TorusGrid(5).max_distance == 4
    assert TorusGrid(6).max_distance == 6


def test_node_reduction_and_flattening():
    g = TorusGrid(5)
    assert g.node(7, -1) == NodeId(2, 4)
    u = NodeId(3, 4)
    assert g.unflatten(g.flatten(u)) == u


def test_count_examples_l8():
    g = TorusGrid(8)
    assert count_at_distance(g, 1) == 4
    assert count_at_distance(g, 3) == 12
    assert count_at_distance(g, 8) == 1


@pytest.mark.parametrize("L", [2, 3, 4, 5, 8, 11, 16])
def test_counts_match_brute_force(L):
    g = TorusGrid(L)
    shells = brute_shells(L, (0, 0))
    assert set(shells) == set(range(1, g.max_distance + 1))
    for d in range(1, g.max_distance + 1):
        assert count_at_distance(g, d) == len(shells[d])
    assert sum(len(s) for s in shells.values()) == g.n - 1


def test_shell_examples():
    g = TorusGrid(4)
    assert set(nodes_at_distance(g, NodeId(0, 0), 1)) == {
        NodeId(0, 1),
        NodeId(1, 0),
        NodeId(0, 3),
        NodeId(3, 0),
    }
    assert len(nodes_at_distance(TorusGrid(8), NodeId(5, 1), 3)) == 12
    # On the 4x4 torus only the antipode sits at distance 4.
    assert nodes_at_distance(g, NodeId(2, 2), 4) == [NodeId(0, 0)]


@pytest.mark.parametrize("L", [4, 5, 8])
def test_shells_match_brute_force(L):
    g = TorusGrid(L)
    u = NodeId(1, L - 2)
    shells = brute_shells(L, u)
    for d in range(1, g.max_distance + 1):
        assert set(nodes_at_distance(g, u, d)) == shells[d]


def test_shell_canonical_order_is_row_major_on_offsets():
    g = TorusGrid(5)
    u = NodeId(1, 2)
    for d in range(1, g.max_distance + 1):
        got = nodes_at_distance(g, u, d)
        offsets = [((v.row - u.row) % 5, (v.col - u.col) % 5) for v in got]
        assert offsets == sorted(offsets)


def test_distance_range_errors():
    g = TorusGrid(8)
    for d in (0, -1, 9, 100):
        with pytest.raises(ValueError):
            count_at_distance(g, d)
        with pytest.raises(ValueError):
            nodes_at_distance(g, NodeId(0, 0), d)


@pytest.mark.parametrize("L", [4, 7, 12])
def test_metric_invariants(L):
    g = TorusGrid(L)
    rng = np.random.default_rng(7)
    pts = rng.integers(0, L, size=(200, 6))
    for ur, uc, vr, vc, wr, wc in pts:
        u, v, w = NodeId(int(ur), int(uc)), NodeId(int(vr), int(vc)), NodeId(int(wr), int(wc))
        duv = torus_distance(g, u, v)
        assert duv == torus_distance(g, v, u)
        assert (duv == 0) == (u == v)
        assert duv <= g.max_distance
        assert torus_distance(g, u, w) <= duv + torus_distance(g, v, w)
        # translation invariance
        t = NodeId(int(wr), int(uc))
        us = g.node(u.row + t.row, u.col + t.col)
        vs = g.node(v.row + t.row, v.col + t.col)
        assert torus_distance(g, us, vs) == duv


@pytest.mark.parametrize("L", [3, 6, 9])
def test_shell_partition(L):
    g = TorusGrid(L)
    u = NodeId(2, 0)
    seen = set()
    for d in range(1, g.max_distance + 1):
        shell = nodes_at_distance(g, u, d)
        assert len(shell) == count_at_distance(g, d)
        assert seen.isdisjoint(shell)
        seen.update(shell)
    assert len(seen) == g.n - 1 and u not in seen


def test_distance_counts_total():
    for L in (2, 5, 32, 101):
        c = distance_counts(L)
        assert c[0] == 0
        assert int(c.sum()) == L * L - 1


def test_ball_offsets():
    dr, dc = ball_offsets(8, 2)
    ball = {((int(r)), int(c)) for r, c in zip(dr, dc)}
    expected = {
        (r % 8, c % 8)
        for r in range(-2, 3)
        for c in range(-2, 3)
        if 0 < abs(r) + abs(c) <= 2
    }
    assert ball == expected
    with pytest.raises(ValueError):
        ball_offsets(8, 0)
