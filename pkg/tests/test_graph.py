"""Graph construction and the metric primitives, including the circular
interval property of sphere DFS orders that the fixed-radius tree schemes
depend on."""

from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ballscheme import (Graph, GraphError, NotGated, Undefined, all_pairs_distances,
                        block_cut_tree, canonical_path, dfs_sphere_order,
                        diametral_pair, gate, interval, median, phi, sphere)
from ballscheme.generators import random_tree


def test_rejects_bad_input():
    with pytest.raises(GraphError):
        Graph(3, [(0, 0)])  # loop
    with pytest.raises(GraphError):
        Graph(3, [(0, 1), (1, 0), (1, 2)])  # duplicate edge
    with pytest.raises(GraphError):
        Graph(4, [(0, 1), (2, 3)])  # disconnected
    with pytest.raises(GraphError):
        Graph(2, [(0, 5)])  # out of range


def test_all_pairs_distances_examples():
    assert all_pairs_distances(Graph.path(3))[0][2] == 2
    D = all_pairs_distances(Graph.complete(4))
    assert all(D[u][v] == 1 for u in range(4) for v in range(4) if u != v)
    assert all_pairs_distances(Graph.cycle(6))[0][3] == 3


def test_interval_examples():
    p5 = Graph.path(5)
    D = all_pairs_distances(p5)
    assert interval(p5, D, 0, 4) == frozenset(range(5))
    c6 = Graph.cycle(6)
    Dc = all_pairs_distances(c6)
    assert interval(c6, Dc, 0, 2) == frozenset({0, 1, 2})
    assert interval(c6, Dc, 0, 3) == frozenset(range(6))


def test_interval_symmetry_and_endpoints():
    rng = random.Random(7)
    for _ in range(10):
        g = random_tree(rng.randint(2, 8), rng)
        D = all_pairs_distances(g)
        for _ in range(10):
            u, v = rng.randrange(g.n), rng.randrange(g.n)
            left = interval(g, D, u, v)
            assert left == interval(g, D, v, u)
            assert u in left and v in left


def test_median_examples():
    star = Graph.star(3)
    Ds = all_pairs_distances(star)
    assert median(star, Ds, 1, 2, 3) == frozenset({0})
    p5 = Graph.path(5)
    assert median(p5, all_pairs_distances(p5), 0, 2, 4) == frozenset({2})
    c4 = Graph.cycle(4)
    assert median(c4, all_pairs_distances(c4), 0, 1, 2) == frozenset({1})


def test_gate_examples():
    p5 = Graph.path(5)
    D = all_pairs_distances(p5)
    assert gate(p5, D, {3, 4}, 0) == 3
    assert gate(p5, D, {2, 3}, 2) == 2  # x in S
    c4 = Graph.cycle(4)
    with pytest.raises(NotGated):
        gate(c4, all_pairs_distances(c4), {0, 2}, 1)


def test_gate_is_distance_minimizer():
    rng = random.Random(13)
    for _ in range(15):
        g = random_tree(rng.randint(2, 9), rng)
        D = all_pairs_distances(g)
        members = rng.sample(range(g.n), rng.randint(1, g.n))
        # subtrees spanned by a vertex set are gated in trees
        span = set(members)
        for u in members:
            for v in members:
                span |= interval(g, D, u, v)
        x = rng.randrange(g.n)
        got = gate(g, D, span, x)
        best = min(span, key=lambda z: D[x][z])
        assert D[x][got] == D[x][best]


def test_block_cut_tree_examples():
    two_tri = Graph(5, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)])
    bt = block_cut_tree(two_tri)
    assert sorted(sorted(b) for b in bt.blocks) == [[0, 1, 2], [2, 3, 4]]
    assert bt.cut_vertices == frozenset({2})
    tree = Graph(5, [(0, 1), (1, 2), (2, 3), (2, 4)])
    bt = block_cut_tree(tree)
    assert sorted(sorted(b) for b in bt.blocks) == [[0, 1], [1, 2], [2, 3], [2, 4]]
    assert bt.cut_vertices == frozenset({1, 2})
    c6 = block_cut_tree(Graph.cycle(6))
    assert len(c6.blocks) == 1 and not c6.cut_vertices


def test_block_cut_tree_partitions_edges_and_contracts_to_a_tree():
    rng = random.Random(31)
    for _ in range(10):
        n = rng.randint(2, 10)
        g_edges = {(min(i, p), max(i, p)) for i, p in ((i, rng.randrange(i)) for i in range(1, n))}
        for u in range(n):
            for v in range(u + 1, n):
                if (u, v) not in g_edges and rng.random() < 0.25:
                    g_edges.add((u, v))
        g = Graph(n, sorted(g_edges))
        bt = block_cut_tree(g)
        covered = [e for b in bt.block_edges for e in b]
        assert sorted(covered) == sorted(g.edges)  # each edge in exactly one block
        # the block-cut incidence structure is a tree: nodes = blocks + cuts
        nodes = len(bt.blocks) + len(bt.cut_vertices)
        incidences = sum(1 for b in bt.blocks for v in b if v in bt.cut_vertices)
        assert incidences == nodes - 1


def test_sphere_examples():
    p5 = Graph.path(5)
    D = all_pairs_distances(p5)
    assert sphere(p5, D, 0, 2) == frozenset({2})
    star = Graph.star(3)
    assert sphere(star, all_pairs_distances(star), 0, 1) == frozenset({1, 2, 3})
    assert sphere(p5, D, 3, 0) == frozenset({3})


def test_dfs_sphere_order_examples():
    star = Graph.star(3)
    assert dfs_sphere_order(star, 1, 2).order == (2, 3)
    p5 = Graph.path(5)
    assert dfs_sphere_order(p5, 0, 2).order == (2,)
    assert dfs_sphere_order(p5, 2, 3).order == ()
    with pytest.raises(GraphError):
        dfs_sphere_order(Graph.cycle(4), 0, 1)


def test_phi_examples():
    star = Graph.star(3)
    D = all_pairs_distances(star)
    so = dfs_sphere_order(star, 1, 2)
    assert phi(star, D, so, 2, 1, "-") == 3
    assert phi(star, D, so, 3, 1, "+") == 3
    with pytest.raises(Undefined):
        phi(star, D, so, 0, 1, "+")


def _is_circular_interval(flags):
    """True iff the boolean ring has at most one False->True transition."""
    k = len(flags)
    changes = sum(1 for i in range(k) if flags[i] and not flags[(i + 1) % k])
    return changes <= 1


@settings(max_examples=40, deadline=None)
@given(st.integers(min_value=0, max_value=10 ** 6))
def test_sphere_ball_intersections_are_circular_intervals(seed):
    # Lemma: S_{r+1}(s) & B_r(v) is a circular interval of the DFS order.
    rng = random.Random(seed)
    t = random_tree(rng.randint(2, 9), rng)
    D = all_pairs_distances(t)
    for s in range(t.n):
        for r in range(D.diameter + 1):
            so = dfs_sphere_order(t, s, r + 1)
            if not so.order:
                continue
            for v in range(t.n):
                flags = [D[v][z] <= r for z in so.order]
                assert _is_circular_interval(flags)
                assert _is_circular_interval([not f for f in flags])


def test_triangle_inequality_random_triples():
    rng = random.Random(77)
    for _ in range(10):
        g = random_tree(rng.randint(2, 9), rng)
        D = all_pairs_distances(g)
        for _ in range(30):
            u, v, w = (rng.randrange(g.n) for _ in range(3))
            assert abs(D[u][w] - D[v][w]) <= D[u][v]


def test_diametral_pair_and_canonical_path():
    p5 = Graph.path(5)
    D = all_pairs_distances(p5)
    assert diametral_pair(D, [0, 1, 3]) == (0, 3)
    assert diametral_pair(D, [2]) == (2, 2)
    assert canonical_path(p5, 0, 4) == [0, 1, 2, 3, 4]
    c4 = Graph.cycle(4)
    assert canonical_path(c4, 0, 2) == [0, 1, 2]  # ascending parent rule
