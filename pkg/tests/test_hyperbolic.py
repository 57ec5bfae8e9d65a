"""Exact hyperbolicity and the approximate size-2 scheme, including the
positive/negative approximation bounds and relabeling invariance."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest

from ballscheme import (CompressedSample, Graph, NotRealizable, Sample,
                        enumerate_realizable_samples, hyp_compress, hyp_reconstruct,
                        hyperbolicity)
from ballscheme.hyperbolic import HyperbolicApproxLSCS
from conftest import assert_scheme_ok


def test_hyperbolicity_examples():
    assert hyperbolicity(Graph.path(6)).delta == 0
    assert hyperbolicity(Graph.star(5)).delta == 0
    assert hyperbolicity(Graph.cycle(4)).delta == 1
    assert hyperbolicity(Graph.cycle(5)).delta == Fraction(1, 2)
    result = hyperbolicity(Graph.cycle(4))
    assert sorted(result.witness) == [0, 1, 2, 3]


def test_hyperbolicity_relabel_invariance(random_pool):
    rng = random.Random(19)
    for g in random_pool[:8]:
        if g.n < 4:
            continue
        perm = list(range(g.n))
        rng.shuffle(perm)
        relabeled = Graph(g.n, [(perm[u], perm[v]) for u, v in g.edges])
        assert hyperbolicity(g).delta == hyperbolicity(relabeled).delta


def test_compress_examples():
    c6 = Graph.cycle(6)
    assert hyp_compress(c6, Sample(6)).entries() == []
    assert hyp_compress(c6, Sample.from_sets(6, [3])).slots == ((3, 1), None)
    assert hyp_compress(c6, Sample.from_sets(6, [0, 2, 3])).slots == ((0, 1), (3, 1))
    with pytest.raises(NotRealizable):
        hyp_compress(c6, Sample.from_sets(6, [0, 3], [1, 2, 4, 5]))


def test_reconstruct_examples():
    c6 = Graph.cycle(6)
    ball = hyp_reconstruct(c6, CompressedSample(((0, 1), (3, 1))))
    assert (ball.center, ball.radius) == (1, 2)
    assert hyp_reconstruct(c6, CompressedSample(((3, 1), None))).members == frozenset({3})
    assert hyp_reconstruct(c6, CompressedSample((None, None))).empty


def test_trees_are_exact_on_positives():
    # delta = 0: positives already inside the returned radius
    t = Graph.path(7)
    sch = HyperbolicApproxLSCS(t)
    assert sch.delta == 0
    space = sch.space
    for X in enumerate_realizable_samples(t, space.balls, cap=500):
        cs = sch.compress(X)
        ball = sch.reconstruct(cs)
        if ball.empty:
            assert not X.pos_mask
            continue
        assert X.pos_mask & ~space.ball_mask(ball.center, ball.radius) == 0


def test_positive_bound_holds_verbatim(random_pool):
    # X+ within r + 2*delta for every realizable sample
    for g in random_pool[:10]:
        sch = HyperbolicApproxLSCS(g)
        space = sch.space
        rho = 2 * sch.delta
        for X in enumerate_realizable_samples(g, space.balls, cap=400):
            ball = sch.reconstruct(sch.compress(X))
            if ball.empty:
                continue
            outer = space.ball_mask(ball.center, int(ball.radius + rho))
            assert X.pos_mask & ~outer == 0


def test_full_approx_verification(random_pool):
    for g in random_pool:
        sch = HyperbolicApproxLSCS(g)
        assert_scheme_ok(g, sch, proper=False, approx=sch.approx_params)


def test_even_pair_gets_sharper_negative_bound(random_pool):
    # when d(u+, v+) is even the sharper bound mu = 3*delta holds as-is
    for g in random_pool[:10]:
        sch = HyperbolicApproxLSCS(g)
        space = sch.space
        mu = 3 * sch.delta
        for X in enumerate_realizable_samples(g, space.balls, cap=400):
            pos = sorted(X.pos)
            if len(pos) < 2:
                continue
            cs = sch.compress(X)
            (u, _), (v, _) = cs.entries()
            if space.D[u][v] % 2:
                continue
            ball = sch.reconstruct(cs)
            inner_r = ball.radius - mu
            inner = space.ball_mask(ball.center, int(inner_r)) if inner_r >= 0 else 0
            assert X.neg_mask & inner == 0
