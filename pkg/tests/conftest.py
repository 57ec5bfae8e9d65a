"""Shared helpers for the test suite: seeded instance pools and a thin
wrapper around the generic scheme verifier."""

from __future__ import annotations

import random

import pytest

from ballscheme import Sample, verify_scheme
from ballscheme.generators import (random_cactus, random_connected_graph,
                                   random_interval_instance, random_split_graph,
                                   random_tree)


def assert_scheme_ok(g, scheme, samples=None, **kwargs):
    report = verify_scheme(g, scheme, samples=samples, **kwargs)
    assert report.ok, f"{scheme.scheme_id} on {sorted(g.edges)}:\n{report.format()}"
    return report


def seeded_samples(space, n_samples, seed, sign_rate=0.4):
    """Realizable samples drawn concept-first: always realizable, any support."""
    rng = random.Random(seed)
    balls = space.balls
    n = space.g.n
    out = []
    for _ in range(n_samples):
        concept = balls[rng.randrange(len(balls))].mask
        pos = neg = 0
        for v in range(n):
            if rng.random() < sign_rate:
                if concept >> v & 1:
                    pos |= 1 << v
                else:
                    neg |= 1 << v
        out.append(Sample(n, pos, neg))
    return out


@pytest.fixture(scope="session")
def tree_pool():
    rng = random.Random(101)
    return [random_tree(rng.randint(1, 8), rng) for _ in range(25)]


@pytest.fixture(scope="session")
def cactus_pool():
    rng = random.Random(202)
    return [random_cactus(rng.randint(1, 9), rng) for _ in range(20)]


@pytest.fixture(scope="session")
def interval_pool():
    rng = random.Random(303)
    return [random_interval_instance(rng.randint(1, 8), rng) for _ in range(20)]


@pytest.fixture(scope="session")
def split_pool():
    rng = random.Random(404)
    return [random_split_graph(rng.randint(2, 9), rng) for _ in range(20)]


@pytest.fixture(scope="session")
def random_pool():
    rng = random.Random(505)
    return [random_connected_graph(rng.randint(2, 9), rng) for _ in range(20)]
