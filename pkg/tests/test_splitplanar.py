"""Split-graph and planar radius-1 schemes: partitions, frozen examples,
the planar neighborhood lemmas, roundtrips, and the documented defect of the
written split-scheme case (C5) on twin-heavy instances."""

from __future__ import annotations

from itertools import combinations

import pytest

from ballscheme import (BallSpace, Graph, NotSplit, Sample, SchemeError,
                        enumerate_realizable_samples, potential_centers,
                        split_partition, verify_scheme)
from ballscheme.generators import grid_rotation, wheel_instance
from ballscheme.splitplanar import (PlanarUnitLSCS, RotationSystem, SplitLSCS,
                                    validate_rotation)
from ballscheme.errors import InvalidEmbedding
from conftest import assert_scheme_ok

SPLIT5 = Graph(5, [(0, 1), (1, 2), (0, 2), (3, 0), (3, 1), (4, 1), (4, 2)])


class TestSplitPartition:
    def test_examples(self):
        part = split_partition(Graph(4, [(0, 1), (1, 2), (0, 2), (0, 3)]))
        assert part.clique == (0, 1, 2) and part.independent == frozenset({3})
        part = split_partition(Graph.star(3))
        assert len(part.clique) == 2 and 0 in part.clique
        with pytest.raises(NotSplit):
            split_partition(Graph.cycle(4))

    def test_partition_is_valid(self, split_pool):
        for g in split_pool:
            part = split_partition(g)
            for u, v in combinations(part.clique, 2):
                assert g.has_edge(u, v)
            for u, v in combinations(sorted(part.independent), 2):
                assert not g.has_edge(u, v)


class TestSplitScheme:
    def test_examples(self):
        sch = SplitLSCS(SPLIT5)
        cs = sch.compress(Sample.from_sets(5, [3, 0], [4]))
        assert cs.slots == ((3, 1), (0, 1), None)
        assert sch.reconstruct(cs).members == frozenset({0, 1, 3})
        cs = sch.compress(Sample.from_sets(5, [0, 3]))
        assert cs.slots == ((0, 1), None, None)
        ball = sch.reconstruct(cs)
        assert ball.members == frozenset(range(5))
        assert (ball.center, ball.radius) == (1, 1)
        cs = sch.compress(Sample.from_sets(5, [3], [0]))
        assert cs.slots == (None, (3, 1), None)
        assert sch.reconstruct(cs).members == frozenset({3})

    def test_roundtrips(self, split_pool):
        clean = 0
        for g in split_pool:
            report = verify_scheme(g, SplitLSCS(g))
            if report.ok:
                clean += 1
            else:
                # only the documented (C5) defect may fail, and only as an error
                assert all("no compressor case" in reason
                           for _, reason in report.failures)
        assert clean >= len(split_pool) - 2

    def test_documented_c5_defect(self):
        """Two samples that the written scheme maps to the same vector but
        that no single ball realizes: triangle {0,1,2}, twins 3,4,5 adjacent
        to {0,1}.  With every clique slot signed there is no room left to
        name the clean twin, so the compressor reports the defect."""
        g = Graph(6, [(0, 1), (0, 2), (1, 2), (3, 0), (3, 1),
                      (4, 0), (4, 1), (5, 0), (5, 1)])
        sch = SplitLSCS(g)
        space = sch.space
        stuck = Sample.from_sets(6, [0, 1], [2, 3, 4])
        mirror = Sample.from_sets(6, [0, 1], [2, 3, 5])
        # both are realizable, by B_1(5) and B_1(4) respectively ...
        assert space.realizable(stuck) and space.realizable(mirror)
        # ... but no single ball realizes both, so one of them must fail
        common = [b for b in space.balls
                  if stuck.pos_mask & ~b.mask == 0 and stuck.neg_mask & b.mask == 0
                  and mirror.neg_mask & b.mask == 0]
        assert not common
        with pytest.raises(SchemeError):
            sch.compress(stuck)

    def test_successor_rule_uses_free_slot(self):
        # twins plus a pendant on 2: while clique vertex 2 stays unsigned its
        # slot carries a boundary negative and the successor rule finds the
        # clean twin; only full-slot samples (2 signed) remain out of reach
        g = Graph(7, [(0, 1), (0, 2), (1, 2), (3, 0), (3, 1),
                      (4, 0), (4, 1), (5, 0), (5, 1), (6, 2)])
        sch = SplitLSCS(g)
        X = Sample.from_sets(7, [0, 1], [3, 4])
        cs = sch.compress(X)
        assert cs.support <= X.support and cs.size <= sch.size_bound
        ball = sch.reconstruct(cs)
        assert X.pos_mask & ~ball.mask == 0 and X.neg_mask & ball.mask == 0
        report = verify_scheme(g, sch)
        assert report.failure_count == 6
        assert all("-[2, 3" in sample for sample, _ in report.failures)


class TestPotentialCenters:
    def test_examples(self):
        c4 = Graph.cycle(4)
        assert potential_centers(c4, Sample.from_sets(4, [0, 2])) == frozenset({1, 3})
        assert potential_centers(c4, Sample(4)) == frozenset(range(4))
        k23 = Graph(5, [(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)])
        assert potential_centers(k23, Sample.from_sets(5, [2, 3, 4])) == frozenset({0, 1})


PLANAR5 = Graph(5, [(0, 2), (0, 3), (1, 2), (1, 3), (2, 4)])
ROT5 = RotationSystem(((2, 3), (3, 2), (4, 1, 0), (0, 1), (2,)))


class TestRotation:
    def test_validation(self):
        validate_rotation(PLANAR5, ROT5)
        for k in (4, 5, 6, 7, 8):
            g, rot = wheel_instance(k)
            validate_rotation(g, rot)
        for dims in ((2, 2), (2, 3), (3, 3), (2, 5)):
            g, rot = grid_rotation(*dims)
            validate_rotation(g, rot)

    def test_rejects_wrong_neighbors(self):
        bad = RotationSystem(((2, 3), (3, 2), (1, 0), (0, 1), (2,)))
        with pytest.raises(InvalidEmbedding):
            validate_rotation(PLANAR5, bad)


class TestPlanarUnit:
    def test_two_positive_example(self):
        sch = PlanarUnitLSCS(PLANAR5, ROT5)
        X = Sample.from_sets(5, [0, 1], [4])
        cs = sch.compress(X)
        assert cs.slots == ((0, 1), (1, 1), (4, -1), None)
        ball = sch.reconstruct(cs)
        assert ball.members == frozenset({0, 1, 3})

    def test_center_in_positives_and_empty(self):
        g, rot = wheel_instance(5)
        sch = PlanarUnitLSCS(g, rot)
        X = Sample.from_sets(6, [0, 1, 2], [])
        cs = sch.compress(X)
        if cs.slots[1] is None:  # the hub's own ball realizes
            assert sch.reconstruct(cs).members == frozenset(range(6))
        assert sch.reconstruct(sch.compress(Sample(6))).empty

    def test_roundtrips(self):
        fixtures = [wheel_instance(k) for k in (4, 5, 6, 7, 8)]
        fixtures += [grid_rotation(2, 2), grid_rotation(2, 3), grid_rotation(3, 3),
                     grid_rotation(2, 4), grid_rotation(2, 5)]
        fixtures.append((PLANAR5, ROT5))
        for g, rot in fixtures:
            assert_scheme_ok(g, PlanarUnitLSCS(g, rot))

    def test_lemma_at_most_two_potential_centers(self):
        fixtures = [wheel_instance(k) for k in (4, 5, 6)]
        fixtures += [grid_rotation(2, 3), grid_rotation(3, 3)]
        for g, rot in fixtures:
            space = BallSpace(g)
            fam = space.radius_family(1)
            for X in enumerate_realizable_samples(g, fam, cap=400):
                if len(X.pos) < 3:
                    continue
                nbr = [space.ball_mask(v, 1) & ~(1 << v) for v in range(g.n)]
                if not all(nbr[v] & X.neg_mask for v in X.pos):
                    continue
                assert len(potential_centers(g, X)) in (1, 2)

    def test_lemma_negative_balls_cut_consecutive_arcs(self):
        for g, rot in [wheel_instance(5), grid_rotation(3, 3), (PLANAR5, ROT5)]:
            sch = PlanarUnitLSCS(g, rot)
            space = sch.space
            for X in enumerate_realizable_samples(g, sch.family, cap=400):
                if len(X.pos) != 2:
                    continue
                u, v = sorted(X.pos)
                W = sch._ell_uv(u, v)
                if not W:
                    continue
                k1 = len(W)
                for x in X.neg:
                    mx = space.ball_mask(x, 1)
                    flags = [bool(mx >> w & 1) for w in W]
                    hits = sum(flags)
                    assert hits <= 3 or hits == k1
                    changes = sum(1 for i in range(k1)
                                  if flags[i] and not flags[(i + 1) % k1])
                    assert changes <= 1  # circularly consecutive

    def test_tz_case_on_fan_fixture(self):
        # fan around 0 with a chord 5 ~ {0,1,3} and a pendant 6 ~ 2: the first
        # boundary candidate fails, so the compressor records a second negative
        g = Graph(7, [(0, 1), (0, 2), (0, 3), (0, 4), (0, 5), (1, 5), (3, 5), (2, 6)])
        rot = RotationSystem(((1, 2, 3, 5, 4), (5, 0), (6, 0), (0, 5), (0,),
                              (1, 0, 3), (2,)))
        sch = PlanarUnitLSCS(g, rot)
        X = Sample.from_sets(7, [0], [5, 6])
        cs = sch.compress(X)
        assert cs.slots == ((0, 1), None, (5, -1), (6, -1))
        assert sch.reconstruct(cs).members == frozenset({0, 4})
        assert_scheme_ok(g, sch)

    def test_claim_second_negative_identifies_predecessor(self):
        fan = (Graph(7, [(0, 1), (0, 2), (0, 3), (0, 4), (0, 5), (1, 5), (3, 5), (2, 6)]),
               RotationSystem(((1, 2, 3, 5, 4), (5, 0), (6, 0), (0, 5), (0,),
                               (1, 0, 3), (2,))))
        emitted = 0
        for g, rot in [wheel_instance(5), wheel_instance(6), grid_rotation(3, 3), fan]:
            sch = PlanarUnitLSCS(g, rot)
            for X in enumerate_realizable_samples(g, sch.family, cap=500):
                if len(X.pos) != 1:
                    continue
                cs = sch.compress(X)
                if cs.slots[1] is not None or cs.slots[2] is None or cs.slots[3] is None:
                    continue
                u, t, z = cs.slots[0][0], cs.slots[2][0], cs.slots[3][0]
                ring = sch._ell_u(u)
                exits = sch._boundary_set(ring, t)
                mz = sch.space.ball_mask(z, 1)
                hit = [s for s in exits if mz >> ring[s] & 1]
                assert 1 <= len(hit) <= 2
                if len(hit) == 2:
                    order = sorted(exits)
                    ia, ib = order.index(hit[0]), order.index(hit[1])
                    assert (order[(ia + 1) % len(order)] == hit[1]
                            or order[(ib + 1) % len(order)] == hit[0])
                emitted += 1
        assert emitted > 0
