"""Interval graph schemes: representation validation, farthest pairs, the
segment-order lemmas, and exhaustive roundtrips in both modes."""

from __future__ import annotations

import pytest

from ballscheme import (BallSpace, Graph, GraphError, IntervalRepresentation,
                        NotRealizable, Sample, enumerate_realizable_samples,
                        farthest_pair, iv_compress, iv_reconstruct,
                        validate_representation)
from ballscheme.intervals import IntervalLSCS
from conftest import assert_scheme_ok

P4 = Graph.path(4)
REP4 = IntervalRepresentation.from_pairs([(0, 2), (1, 5), (4, 8), (7, 9)])


def test_validate_representation_examples():
    assert validate_representation(P4, REP4)
    dup = IntervalRepresentation.from_pairs([(0, 2), (2, 5), (4, 8), (7, 9)])
    assert not validate_representation(P4, dup)  # duplicate endpoint
    missing_edge = IntervalRepresentation.from_pairs([(0, 1), (2, 3), (4, 8), (7, 9)])
    assert not validate_representation(P4, missing_edge)


def test_farthest_pair_examples():
    assert farthest_pair(REP4, [1, 2]) == (1, 2)
    assert farthest_pair(REP4, [2]) == (2, 2)
    assert farthest_pair(REP4, [0, 1, 2]) == (0, 2)


def test_compress_reconstruct_examples():
    cs = iv_compress(P4, REP4, Sample.from_sets(4, [1, 2], [3]))
    assert cs.slots == ((1, 1), (2, 1), None, (3, -1))
    ball = iv_reconstruct(P4, REP4, cs)
    assert ball.members == frozenset({0, 1, 2}) and (ball.center, ball.radius) == (1, 1)
    cs = iv_compress(P4, REP4, Sample.from_sets(4, [2]))
    assert cs.slots == ((2, 1), None, None, None)
    assert iv_reconstruct(P4, REP4, cs).members == frozenset({2})
    cs = iv_compress(P4, REP4, Sample.from_sets(4, [], [0]), radius=0)
    assert cs.slots == (None, None, (0, -1), None)
    assert iv_reconstruct(P4, REP4, cs, radius=0).members == frozenset({1})


def test_scheme_rejects_bad_representation():
    with pytest.raises(GraphError):
        IntervalLSCS(P4, IntervalRepresentation.from_pairs([(0, 1), (2, 3), (4, 8), (7, 9)]))


def test_not_realizable():
    with pytest.raises(NotRealizable):
        iv_compress(P4, REP4, Sample.from_sets(4, [0, 3], [1, 2]))
    with pytest.raises(NotRealizable):
        iv_compress(P4, REP4, Sample.from_sets(4, [0, 1]), radius=0)


def _segments_meet(rep, u, v):
    return max(rep.start(u), rep.start(v)) <= min(rep.end(u), rep.end(v))


def test_lemma_between_segments(interval_pool):
    """If u, v are in a ball and z's segment spans between them, z is too."""
    for g, rep in interval_pool:
        space = BallSpace(g)
        for ball in space.balls:
            for u in ball.members:
                for v in ball.members:
                    for z in range(g.n):
                        if (rep.start(u) < rep.start(v) and rep.start(z) < rep.start(v)
                                and rep.end(u) < rep.end(v) and rep.end(u) < rep.end(z)):
                            assert z in ball.members, (sorted(g.edges), ball, u, v, z)


def test_lemma_farthest_pair_covers_positives(interval_pool):
    for g, rep in interval_pool:
        space = BallSpace(g)
        for X in enumerate_realizable_samples(g, space.balls, cap=250):
            if len(X.pos) < 2:
                continue
            u, v = farthest_pair(rep, X.pos)
            for ball in space.balls:
                if ball.radius >= 1 and ball.mask >> u & 1 and ball.mask >> v & 1:
                    assert X.pos_mask & ~ball.mask == 0


def test_lemma_bounder_exclusion(interval_pool):
    for g, rep in interval_pool:
        space = BallSpace(g)
        for ball in space.balls:
            if ball.radius == 0:
                continue
            x = ball.center
            for p in range(g.n):
                if rep.end(p) < rep.start(x) and not ball.mask >> p & 1:
                    for z in range(g.n):
                        if rep.end(z) < rep.end(p):
                            assert not ball.mask >> z & 1
                if rep.end(x) < rep.start(p) and not ball.mask >> p & 1:
                    for z in range(g.n):
                        if rep.start(p) < rep.start(z):
                            assert not ball.mask >> z & 1


def test_exhaustive_roundtrips_both_modes(interval_pool):
    for g, rep in interval_pool:
        space = BallSpace(g)
        assert_scheme_ok(g, IntervalLSCS(g, rep, space=space))
        for r in range(space.diam + 1):
            assert_scheme_ok(g, IntervalLSCS(g, rep, radius=r, space=space))
