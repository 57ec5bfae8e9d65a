"""The four tree schemes: frozen examples, the mid-path ball claim, the
r+1-sphere lemmas, and exhaustive roundtrips on a pool of random trees."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest

from ballscheme import (BallSpace, CompressedSample, Graph, MalformedInput,
                        NotRealizable, Sample, diametral_pair,
                        enumerate_realizable_samples, tree_fixed_r_compress,
                        tree_fixed_r_noinfo_compress, tree_fixed_r_noinfo_reconstruct,
                        tree_fixed_r_reconstruct, tree_lscs_compress,
                        tree_lscs_reconstruct, tree_uscs_compress,
                        tree_uscs_reconstruct)
from ballscheme.trees import (TreeBallLSCS, TreeBallUSCS, TreeFixedRadiusLSCS,
                              TreeFixedRadiusNoInfo)
from conftest import assert_scheme_ok

P5 = Graph.path(5)
STAR = Graph.star(3)


class TestUSCS:
    def test_compress_examples(self):
        assert tree_uscs_compress(P5, Sample.from_sets(5, [0, 4])) == frozenset({0, 4})
        assert tree_uscs_compress(P5, Sample.from_sets(5, [2])) == frozenset({2})
        assert tree_uscs_compress(P5, Sample.from_sets(5, [0, 1, 3], [4])) == frozenset({0, 3})

    def test_reconstruct_examples(self):
        mb = tree_uscs_reconstruct(P5, frozenset({0, 4}))
        assert (mb.center, mb.radius, mb.members) == (2, Fraction(2), frozenset(range(5)))
        mb = tree_uscs_reconstruct(P5, frozenset({0, 3}))
        assert mb.center == (1, 2) and mb.radius == Fraction(3, 2)
        assert mb.members == frozenset({0, 1, 2, 3})
        assert tree_uscs_reconstruct(P5, frozenset()).empty

    def test_not_realizable(self):
        with pytest.raises(NotRealizable):
            tree_uscs_compress(P5, Sample.from_sets(5, [0, 4], [2]))


class TestLSCS:
    def test_compress_examples(self):
        assert tree_lscs_compress(P5, Sample.from_sets(5, [0, 3], [4])).slots == ((0, 1), (4, -1))
        assert tree_lscs_compress(P5, Sample.from_sets(5, [0, 4])).slots == ((0, 1), (4, 1))
        assert tree_lscs_compress(P5, Sample.from_sets(5, [1])).slots == ((1, 1), None)

    def test_reconstruct_examples(self):
        ball = tree_lscs_reconstruct(P5, CompressedSample(((0, 1), (4, -1))))
        assert ball.members == frozenset({0, 1, 2, 3})
        assert (ball.center, ball.radius) == (1, 2)
        ball = tree_lscs_reconstruct(P5, CompressedSample(((0, 1), (4, 1))))
        assert (ball.center, ball.radius) == (2, 2)
        assert tree_lscs_reconstruct(P5, CompressedSample(((1, 1), None))).members == frozenset({1})

    def test_odd_pair_distance_rejected(self):
        with pytest.raises(MalformedInput):
            tree_lscs_reconstruct(P5, CompressedSample(((0, 1), (3, -1))))

    def test_mid_path_claim(self, tree_pool):
        # X+ always sits in both mid-path balls and one of them avoids X-.
        for t in tree_pool:
            if t.n < 2:
                continue
            space = BallSpace(t)
            for X in enumerate_realizable_samples(t, space.balls):
                if len(X.pos) < 2:
                    continue
                u, v = diametral_pair(space.D, X.pos)
                d = space.D[u][v]
                r = (d + 1) // 2
                mids = [z for z in range(t.n)
                        if space.D[u][z] + space.D[z][v] == d
                        and space.D[u][z] in (d // 2, r)]
                masks = [space.ball_mask(z, r) for z in mids]
                assert all(X.pos_mask & ~m == 0 for m in masks)
                assert any(X.neg_mask & m == 0 for m in masks)


class TestFixedRadius:
    def test_vector_examples_on_star(self):
        assert tree_fixed_r_compress(STAR, 1, Sample.from_sets(4, [0], [1])).slots == ((1, -1), None)
        assert tree_fixed_r_compress(STAR, 1, Sample.from_sets(4, [0], [1, 2])).slots == ((1, -1), (2, -1))
        ball = tree_fixed_r_reconstruct(STAR, 1, CompressedSample(((1, -1), None)))
        assert ball.center == 2 and ball.members == frozenset({0, 2})
        ball = tree_fixed_r_reconstruct(STAR, 1, CompressedSample(((1, -1), (2, -1))))
        assert ball.center == 3 and ball.members == frozenset({0, 3})

    def test_vector_examples_on_p5(self):
        cs = tree_fixed_r_compress(P5, 1, Sample.from_sets(5, [1, 2]))
        assert cs.slots == ((1, 1), (2, 1))
        assert tree_fixed_r_reconstruct(P5, 1, cs).members == frozenset({0, 1, 2})
        cs = tree_fixed_r_compress(P5, 1, Sample.from_sets(5, [2], [0]))
        assert cs.slots == ((0, -1), None)
        assert tree_fixed_r_reconstruct(P5, 1, cs).members == frozenset({1, 2, 3})

    def test_empty_positive_part_gives_empty_ball(self):
        cs = tree_fixed_r_compress(P5, 1, Sample.from_sets(5, [], [0]))
        assert cs.slots == (None, None)
        assert tree_fixed_r_reconstruct(P5, 1, cs).empty

    def test_noinfo_example_on_star(self):
        cs = tree_fixed_r_noinfo_compress(STAR, 1, Sample.from_sets(4, [0], [1, 2]))
        assert cs.slots == ((1, -1), (2, -1))
        ball = tree_fixed_r_noinfo_reconstruct(STAR, 1, cs)
        assert ball.members == frozenset({0, 3})

    def test_noinfo_empty_positive(self):
        cs = tree_fixed_r_noinfo_compress(STAR, 1, Sample.from_sets(4, [], [1]))
        assert cs.slots == ()
        assert tree_fixed_r_noinfo_reconstruct(STAR, 1, cs).empty

    def test_noinfo_decoder_lines_on_synthetic_vectors(self):
        # line (1): single negative -> a ball centered on its r+1 sphere
        ball = tree_fixed_r_noinfo_reconstruct(STAR, 1, CompressedSample(((1, -1),)))
        assert ball.center in {2, 3} and 0 in ball.members
        # line (2): positives only -> smallest covering center
        ball = tree_fixed_r_noinfo_reconstruct(STAR, 1, CompressedSample(((0, 1), (1, 1))))
        assert {0, 1} <= ball.members
        # lines (6)-(9) fall back to any r-ball avoiding the negatives
        p7 = Graph.path(7)
        for negs in ([0, 1, 2], [0, 1, 2, 3], [0, 1, 2, 3, 4]):
            Y = CompressedSample(tuple((v, -1) for v in negs))
            ball = tree_fixed_r_noinfo_reconstruct(p7, 1, Y)
            assert not ball.mask & sum(1 << v for v in negs)

    def test_lemma_any_ball_through_diametral_pair_contains_positives(self, tree_pool):
        for t in tree_pool:
            space = BallSpace(t)
            for r in range(space.diam + 1):
                fam = space.radius_family(r)
                for X in enumerate_realizable_samples(t, fam, cap=300):
                    if len(X.pos) < 2:
                        continue
                    u, v = diametral_pair(space.D, X.pos)
                    for x in range(t.n):
                        m = space.ball_mask(x, r)
                        if m >> u & 1 and m >> v & 1:
                            assert X.pos_mask & ~m == 0

    def test_lemma_r_plus_one_negative_witness(self, tree_pool):
        # Either every r-ball containing X+ avoids X-, or some realizing
        # r-ball has a negative at distance exactly r+1.
        for t in tree_pool[:12]:
            space = BallSpace(t)
            for r in range(space.diam + 1):
                fam = space.radius_family(r)
                for X in enumerate_realizable_samples(t, fam, cap=200):
                    if not X.pos_mask or not X.neg_mask:
                        continue
                    clean = True
                    for x in range(t.n):
                        m = space.ball_mask(x, r)
                        if X.pos_mask & ~m == 0 and X.neg_mask & m:
                            clean = False
                            break
                    if clean:
                        continue
                    witnesses = []
                    for x in range(t.n):
                        m = space.ball_mask(x, r)
                        if X.pos_mask & ~m == 0 and X.neg_mask & m == 0:
                            row = space.D[x]
                            if any(row[s] == r + 1 for s in X.neg):
                                witnesses.append(x)
                    assert witnesses


def test_exhaustive_roundtrips(tree_pool):
    for t in tree_pool:
        space = BallSpace(t)
        assert_scheme_ok(t, TreeBallUSCS(t, space), proper=False)
        assert_scheme_ok(t, TreeBallLSCS(t, space))
        for r in range(space.diam + 1):
            assert_scheme_ok(t, TreeFixedRadiusLSCS(t, r, space))
            assert_scheme_ok(t, TreeFixedRadiusNoInfo(t, r, space))


def test_randomized_roundtrips_larger_trees():
    rng = random.Random(909)
    from ballscheme.generators import random_tree
    from conftest import seeded_samples
    for trial in range(4):
        t = random_tree(rng.randint(20, 40), rng)
        space = BallSpace(t)
        samples = seeded_samples(space, 300, seed=trial)
        assert_scheme_ok(t, TreeBallUSCS(t, space), samples=samples, proper=False)
        assert_scheme_ok(t, TreeBallLSCS(t, space), samples=samples)
        r = rng.randint(1, max(space.diam - 1, 1))
        fam = space.radius_family(r)
        fixed_samples = [X for X in samples
                         if any(X.pos_mask & ~b.mask == 0 and X.neg_mask & b.mask == 0
                                for b in fam)]
        assert_scheme_ok(t, TreeFixedRadiusLSCS(t, r, space), samples=fixed_samples)
        assert_scheme_ok(t, TreeFixedRadiusNoInfo(t, r, space), samples=fixed_samples)
