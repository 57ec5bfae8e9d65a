"""Deterministic instance generators for every graph class, and the
concept-class-to-split-graph reduction.

The same GenSpec always yields the same instance: each call runs a fresh
``random.Random(seed)`` and the construction consumes it in a fixed order.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

from .cfmedian import is_cube_free_median
from .errors import UnsupportedSpec
from .graph import Graph
from .intervals import IntervalRepresentation
from .oracle import Sample
from .splitplanar import RotationSystem, SplitPartition, validate_rotation

KINDS = ("tree", "cycle", "cactus", "cfmedian", "interval", "split", "planar-rot", "random")


@dataclass(frozen=True)
class GenSpec:
    """What to generate: class, size, seed, and class-specific knobs."""

    kind: str
    n: int = 0
    seed: int = 0
    params: Tuple[Tuple[str, int], ...] = ()

    def param(self, name: str, default: Optional[int] = None) -> Optional[int]:
        for key, value in self.params:
            if key == name:
                return value
        return default


@dataclass(frozen=True)
class GeneratedInstance:
    graph: Graph
    representation: Optional[IntervalRepresentation] = None
    rotation: Optional[RotationSystem] = None


def random_tree(n: int, rng: random.Random) -> Graph:
    if n == 1:
        return Graph(1, [])
    return Graph(n, [(i, rng.randrange(i)) for i in range(1, n)])


def random_cactus(n: int, rng: random.Random, cycle_bias: float = 0.5) -> Graph:
    """Random tree skeleton with vertices expanded into cycles: every block
    is a cycle or an edge by construction."""
    if n == 1:
        return Graph(1, [])
    edges: List[Tuple[int, int]] = []
    cur = 1
    while cur < n:
        a = rng.randrange(cur)
        if rng.random() < cycle_bias and cur + 2 <= n:
            length = rng.randint(3, min(6, n - cur + 1))
            ring = [a] + list(range(cur, cur + length - 1))
            edges += [(ring[i], ring[i + 1]) for i in range(len(ring) - 1)]
            edges.append((ring[-1], a))
            cur += length - 1
        else:
            edges.append((a, cur))
            cur += 1
    return Graph(n, edges)


def grid_graph(rows: int, cols: int) -> Graph:
    def vid(r: int, c: int) -> int:
        return r * cols + c

    edges = []
    for r in range(rows):
        for c in range(cols):
            if c + 1 < cols:
                edges.append((vid(r, c), vid(r, c + 1)))
            if r + 1 < rows:
                edges.append((vid(r, c), vid(r + 1, c)))
    return Graph(rows * cols, edges)


def staircase_graph(a: int, b: int, c: int, d: int) -> Graph:
    """Grid graph on the union of the origin-anchored rectangles a x b and
    c x d (an L-shaped gated amalgam of two grids; cube-free median)."""
    cells = sorted({(i, j) for i in range(a + 1) for j in range(b + 1)}
                   | {(i, j) for i in range(c + 1) for j in range(d + 1)})
    index = {p: i for i, p in enumerate(cells)}
    edges = []
    for (i, j) in cells:
        if (i + 1, j) in index:
            edges.append((index[(i, j)], index[(i + 1, j)]))
        if (i, j + 1) in index:
            edges.append((index[(i, j)], index[(i, j + 1)]))
    return Graph(len(cells), edges)


def random_interval_instance(n: int, rng: random.Random) -> Tuple[Graph, IntervalRepresentation]:
    if n == 1:
        return Graph(1, []), IntervalRepresentation.from_pairs([(0, 1)])
    while True:
        points = list(range(2 * n))
        rng.shuffle(points)
        segs = [(min(points[2 * i], points[2 * i + 1]), max(points[2 * i], points[2 * i + 1]))
                for i in range(n)]
        edges = [(u, v) for u in range(n) for v in range(u + 1, n)
                 if max(segs[u][0], segs[v][0]) <= min(segs[u][1], segs[v][1])]
        try:
            g = Graph(n, edges)
        except Exception:
            continue
        return g, IntervalRepresentation.from_pairs(segs)


def random_split_graph(n: int, rng: random.Random) -> Graph:
    if n == 1:
        return Graph(1, [])
    k = rng.randint(1, n - 1)
    edges = [(i, j) for i in range(k) for j in range(i + 1, k)]
    for v in range(k, n):
        for w in rng.sample(range(k), rng.randint(1, k)):
            edges.append((w, v))
    return Graph(n, edges)


def random_connected_graph(n: int, rng: random.Random, density: float = 0.3) -> Graph:
    if n == 1:
        return Graph(1, [])
    edges = {(min(i, p), max(i, p)) for i, p in
             ((i, rng.randrange(i)) for i in range(1, n))}
    for u in range(n):
        for v in range(u + 1, n):
            if (u, v) not in edges and rng.random() < density:
                edges.add((u, v))
    return Graph(n, sorted(edges))


def wheel_instance(k: int) -> Tuple[Graph, RotationSystem]:
    """Wheel W_k: hub 0 plus a k-cycle 1..k, with its planar rotation."""
    edges = [(0, i) for i in range(1, k + 1)]
    edges += [(i, i % k + 1) for i in range(1, k + 1)]
    g = Graph(k + 1, edges)
    # rim counterclockwise by index, so clockwise rotations list it descending
    rots: List[Tuple[int, ...]] = [tuple(range(k, 0, -1))]
    for i in range(1, k + 1):
        nxt = i % k + 1
        prev = (i - 2) % k + 1
        rots.append((0, nxt, prev))
    rot = RotationSystem(tuple(rots))
    validate_rotation(g, rot)
    return g, rot


def grid_rotation(rows: int, cols: int) -> Tuple[Graph, RotationSystem]:
    g = grid_graph(rows, cols)

    def vid(r: int, c: int) -> int:
        return r * cols + c

    rots = []
    for r in range(rows):
        for c in range(cols):
            ring = []
            # clockwise starting north (row - 1), in the drawing with row 0 on top
            for dr, dc in ((-1, 0), (0, 1), (1, 0), (0, -1)):
                rr, cc = r + dr, c + dc
                if 0 <= rr < rows and 0 <= cc < cols:
                    ring.append(vid(rr, cc))
            rots.append(tuple(ring))
    rot = RotationSystem(tuple(rots))
    validate_rotation(g, rot)
    return g, rot


def random_cfmedian(n: int, rng: random.Random) -> Graph:
    """Random grids and staircase amalgams, recognizer-checked (resampled on
    the rare rejection)."""
    while True:
        if rng.random() < 0.5:
            rows = rng.randint(1, 3)
            cols = max(1, min(6, n // max(rows, 1)))
            g = grid_graph(rows, max(cols, 1))
        else:
            a = rng.randint(0, 2)
            b = rng.randint(1, 3)
            c = rng.randint(a + 1, a + 3)
            d = rng.randint(0, max(b - 1, 0))
            g = staircase_graph(a, b, c, d)
        if g.n <= max(n, 2) + 3 and is_cube_free_median(g):
            return g


def generate(spec: GenSpec) -> GeneratedInstance:
    """Produce a member of the requested class; deterministic per GenSpec."""
    rng = random.Random(spec.seed)
    kind = spec.kind
    if kind == "tree":
        if spec.n < 1:
            raise UnsupportedSpec("tree needs n >= 1")
        return GeneratedInstance(random_tree(spec.n, rng))
    if kind == "cycle":
        if spec.n < 3:
            raise UnsupportedSpec("cycle needs n >= 3")
        return GeneratedInstance(Graph.cycle(spec.n))
    if kind == "cactus":
        if spec.n < 1:
            raise UnsupportedSpec("cactus needs n >= 1")
        return GeneratedInstance(random_cactus(spec.n, rng))
    if kind == "cfmedian":
        rows, cols = spec.param("rows"), spec.param("cols")
        if rows is not None and cols is not None:
            return GeneratedInstance(grid_graph(rows, cols))
        if spec.n < 1:
            raise UnsupportedSpec("cfmedian needs n >= 1 or rows/cols")
        return GeneratedInstance(random_cfmedian(spec.n, rng))
    if kind == "interval":
        if spec.n < 1:
            raise UnsupportedSpec("interval needs n >= 1")
        g, rep = random_interval_instance(spec.n, rng)
        return GeneratedInstance(g, representation=rep)
    if kind == "split":
        if spec.n < 1:
            raise UnsupportedSpec("split needs n >= 1")
        return GeneratedInstance(random_split_graph(spec.n, rng))
    if kind == "planar-rot":
        rows, cols = spec.param("rows"), spec.param("cols")
        if rows is not None and cols is not None:
            g, rot = grid_rotation(rows, cols)
        else:
            k = spec.param("spokes", spec.n - 1 if spec.n >= 5 else 4)
            if k < 3:
                raise UnsupportedSpec("wheel needs at least 3 spokes")
            g, rot = wheel_instance(k)
        return GeneratedInstance(g, rotation=rot)
    if kind == "random":
        if spec.n < 1:
            raise UnsupportedSpec("random needs n >= 1")
        density = spec.param("density_pct", 30) / 100.0
        return GeneratedInstance(random_connected_graph(spec.n, rng, density))
    raise UnsupportedSpec(f"unknown class {kind!r}")


def concept_to_split_graph(concepts: Sequence[Iterable], ground: Sequence
                           ) -> Tuple[Graph, SplitPartition, Callable[[Iterable, Iterable], Sample]]:
    """The concept-class-to-split-graph reduction: the ground set becomes a
    clique, each concept C a vertex adjacent exactly to C, so that the unit
    ball of a concept vertex traces C on the ground set.

    Concepts must be nonempty (an empty concept would disconnect the graph).
    Returns the graph, its split partition, and a translator taking
    (positive elements, negative elements) of a ground-set sample to a
    Sample over the graph's vertices.
    """
    ground_list = sorted(set(ground))
    if not ground_list or not concepts:
        raise UnsupportedSpec("ground set and concept list must be nonempty")
    index: Dict = {x: i for i, x in enumerate(ground_list)}
    m = len(ground_list)
    edges = [(i, j) for i in range(m) for j in range(i + 1, m)]
    concept_sets = []
    for ci, concept in enumerate(concepts):
        cset = set(concept)
        if not cset:
            raise UnsupportedSpec("empty concept would disconnect the graph")
        if not cset <= set(ground_list):
            raise UnsupportedSpec("concept outside the ground set")
        concept_sets.append(cset)
        for x in sorted(cset, key=index.get):
            edges.append((index[x], m + ci))
    g = Graph(m + len(concept_sets), edges)
    part = SplitPartition(tuple(range(m)), frozenset(range(m, g.n)))

    def translate(pos: Iterable, neg: Iterable) -> Sample:
        return Sample.from_sets(g.n, (index[x] for x in pos), (index[x] for x in neg))

    return g, part, translate
