"""Graph representation and metric primitives consumed by every scheme.

Vertices are the integers ``0..n-1``.  Graphs are simple, connected and
undirected; anything else is rejected at construction.  Distances are hop
counts.  Neighbor iteration is in ascending vertex id everywhere, which makes
every derived object (DFS orders, canonical paths, tie-breaks) deterministic
and shared between compressors and reconstructors.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Sequence, Tuple

from .errors import GraphError, NotGated, Undefined

Edge = Tuple[int, int]


def _normalize_edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


class Graph:
    """A simple connected undirected graph on vertices ``0..n-1``."""

    __slots__ = ("n", "edges", "adj")

    def __init__(self, n: int, edges: Iterable[Sequence[int]]) -> None:
        if n < 1:
            raise GraphError("graph needs at least one vertex")
        seen = set()
        adj: List[List[int]] = [[] for _ in range(n)]
        for e in edges:
            u, v = int(e[0]), int(e[1])
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"vertex out of range in edge {(u, v)}")
            if u == v:
                raise GraphError(f"loop at vertex {u}")
            ne = _normalize_edge(u, v)
            if ne in seen:
                raise GraphError(f"duplicate edge {ne}")
            seen.add(ne)
            adj[u].append(v)
            adj[v].append(u)
        self.n = n
        self.edges: FrozenSet[Edge] = frozenset(seen)
        self.adj: Tuple[Tuple[int, ...], ...] = tuple(tuple(sorted(a)) for a in adj)
        self._check_connected()

    def _check_connected(self) -> None:
        seen = [False] * self.n
        seen[0] = True
        queue = deque([0])
        count = 1
        while queue:
            u = queue.popleft()
            for v in self.adj[u]:
                if not seen[v]:
                    seen[v] = True
                    count += 1
                    queue.append(v)
        if count != self.n:
            raise GraphError("graph is disconnected")

    @property
    def m(self) -> int:
        return len(self.edges)

    def neighbors(self, v: int) -> Tuple[int, ...]:
        return self.adj[v]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return _normalize_edge(u, v) in self.edges

    def is_tree(self) -> bool:
        return self.m == self.n - 1

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((self.n, self.edges))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"

    @classmethod
    def path(cls, n: int) -> "Graph":
        return cls(n, [(i, i + 1) for i in range(n - 1)])

    @classmethod
    def cycle(cls, n: int) -> "Graph":
        if n < 3:
            raise GraphError("a cycle needs at least 3 vertices")
        return cls(n, [(i, (i + 1) % n) for i in range(n)])

    @classmethod
    def complete(cls, n: int) -> "Graph":
        return cls(n, [(i, j) for i in range(n) for j in range(i + 1, n)])

    @classmethod
    def star(cls, leaves: int) -> "Graph":
        """Star with center 0 and leaves 1..leaves."""
        return cls(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


class DistanceMatrix:
    """All-pairs hop distances, BFS-exact."""

    __slots__ = ("rows",)

    def __init__(self, rows: Sequence[Sequence[int]]) -> None:
        self.rows: Tuple[Tuple[int, ...], ...] = tuple(tuple(r) for r in rows)

    def __getitem__(self, u: int) -> Tuple[int, ...]:
        return self.rows[u]

    @property
    def n(self) -> int:
        return len(self.rows)

    def dist(self, u: int, v: int) -> int:
        return self.rows[u][v]

    def eccentricity(self, v: int) -> int:
        return max(self.rows[v])

    @property
    def diameter(self) -> int:
        return max(max(r) for r in self.rows)


def all_pairs_distances(g: Graph) -> DistanceMatrix:
    """BFS from every vertex; connectivity is guaranteed by Graph."""
    n = g.n
    rows = []
    for s in range(n):
        dist = [-1] * n
        dist[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            du = dist[u]
            for v in g.adj[u]:
                if dist[v] < 0:
                    dist[v] = du + 1
                    queue.append(v)
        rows.append(dist)
    return DistanceMatrix(rows)


def bfs_parents(g: Graph, root: int) -> List[int]:
    """BFS parent array with ascending-id parent selection (canonical geodesics)."""
    parent = [-1] * g.n
    dist = [-1] * g.n
    dist[root] = 0
    queue = deque([root])
    while queue:
        u = queue.popleft()
        for v in g.adj[u]:
            if dist[v] < 0:
                dist[v] = dist[u] + 1
                parent[v] = u
                queue.append(v)
    return parent


def canonical_path(g: Graph, u: int, v: int) -> List[int]:
    """The canonical shortest (u, v)-path: BFS from u, ascending parent rule."""
    parent = bfs_parents(g, u)
    path = [v]
    while path[-1] != u:
        path.append(parent[path[-1]])
    path.reverse()
    return path


def interval(g: Graph, D: DistanceMatrix, u: int, v: int) -> FrozenSet[int]:
    """I(u, v): vertices on shortest (u, v)-paths."""
    duv = D[u][v]
    du, dv = D[u], D[v]
    return frozenset(z for z in range(g.n) if du[z] + dv[z] == duv)


def median(g: Graph, D: DistanceMatrix, u: int, v: int, w: int) -> FrozenSet[int]:
    """All medians of the triplet: I(u,v) & I(v,w) & I(w,u).  May be empty."""
    return interval(g, D, u, v) & interval(g, D, v, w) & interval(g, D, w, u)


def gate(g: Graph, D: DistanceMatrix, S: Iterable[int], x: int) -> int:
    """The gate of x in S: the unique x' in S with x' in I(x, y) for all y in S.

    Raises NotGated when no vertex of S satisfies the interval condition.
    """
    members = sorted(set(S))
    if not members:
        raise NotGated("empty set has no gate")
    dx = D[x]
    for cand in members:
        base = dx[cand]
        row = D[cand]
        if all(base + row[y] == dx[y] for y in members):
            return cand
    raise NotGated(f"{sorted(members)} is not gated with respect to {x}")


def sphere(g: Graph, D: DistanceMatrix, x: int, r: int) -> FrozenSet[int]:
    """S_r(x): vertices at distance exactly r from x."""
    if r < 0:
        raise GraphError("sphere radius must be nonnegative")
    row = D[x]
    return frozenset(z for z in range(g.n) if row[z] == r)


def diametral_pair(D: DistanceMatrix, vertices: Iterable[int]) -> Tuple[int, int]:
    """Lexicographically smallest pair attaining diam(vertices)."""
    vs = sorted(set(vertices))
    if not vs:
        raise ValueError("diametral pair of an empty set")
    best = (vs[0], vs[0])
    best_d = 0
    for i, u in enumerate(vs):
        row = D[u]
        for v in vs[i:]:
            d = row[v]
            if d > best_d:
                best_d = d
                best = (u, v)
    return best


@dataclass(frozen=True)
class BlockTree:
    """Biconnected decomposition: blocks, cut vertices and their incidences."""

    blocks: Tuple[FrozenSet[int], ...]
    block_edges: Tuple[FrozenSet[Edge], ...]
    cut_vertices: FrozenSet[int]

    def blocks_of(self, v: int) -> Tuple[int, ...]:
        return tuple(i for i, b in enumerate(self.blocks) if v in b)

    def is_cut(self, v: int) -> bool:
        return v in self.cut_vertices

    def path_blocks(self, u: int, v: int) -> Tuple[List[int], List[int]]:
        """Blocks on the block-cut-tree path from C(u) to C(v).

        Returns (block ids in order, separating cut vertices between
        consecutive blocks).  The block list is empty when C(u) = C(v) is a
        single cut vertex, i.e. u = v and u is a cut vertex.
        """
        start = self._node_of(u)
        goal = self._node_of(v)
        nodes = self._tree_path(start, goal)
        block_ids = [node[1] for node in nodes if node[0] == "b"]
        # The path alternates block/cut nodes; cut endpoints are not separators.
        inner = [node[1] for node in nodes[1:-1] if node[0] == "c"]
        return block_ids, inner

    def _node_of(self, v: int):
        if v in self.cut_vertices:
            return ("c", v)
        for i, b in enumerate(self.blocks):
            if v in b:
                return ("b", i)
        raise GraphError(f"vertex {v} not in any block")

    def _adjacency(self):
        adj: Dict[Tuple[str, int], List[Tuple[str, int]]] = {}
        for i, b in enumerate(self.blocks):
            for c in sorted(b & self.cut_vertices):
                adj.setdefault(("b", i), []).append(("c", c))
                adj.setdefault(("c", c), []).append(("b", i))
            adj.setdefault(("b", i), [])
        return adj

    def _tree_path(self, start, goal):
        if start == goal:
            return [start]
        adj = self._adjacency()
        prev = {start: None}
        queue = deque([start])
        while queue:
            node = queue.popleft()
            for nxt in adj.get(node, ()):
                if nxt not in prev:
                    prev[nxt] = node
                    if nxt == goal:
                        queue.clear()
                        break
                    queue.append(nxt)
        if goal not in prev:
            raise GraphError("block-cut tree is disconnected")
        path = [goal]
        while path[-1] != start:
            path.append(prev[path[-1]])
        path.reverse()
        return path


def block_cut_tree(g: Graph) -> BlockTree:
    """Standard biconnected decomposition (iterative Hopcroft-Tarjan).

    Every edge lands in exactly one block; cut vertices are exactly the
    vertices lying in two or more blocks.  A single-vertex graph gets one
    trivial block so downstream block-path machinery stays total.
    """
    n = g.n
    if n == 1:
        return BlockTree((frozenset({0}),), (frozenset(),), frozenset())
    disc = [-1] * n
    low = [0] * n
    parent = [-1] * n
    ptr = [0] * n
    edge_stack: List[Edge] = []
    blocks: List[FrozenSet[Edge]] = []
    timer = 0
    for root in range(n):
        if disc[root] >= 0:
            continue
        disc[root] = low[root] = timer
        timer += 1
        stack = [root]
        while stack:
            u = stack[-1]
            if ptr[u] < len(g.adj[u]):
                v = g.adj[u][ptr[u]]
                ptr[u] += 1
                if disc[v] < 0:
                    parent[v] = u
                    disc[v] = low[v] = timer
                    timer += 1
                    edge_stack.append(_normalize_edge(u, v))
                    stack.append(v)
                elif v != parent[u] and disc[v] < disc[u]:
                    edge_stack.append(_normalize_edge(u, v))
                    low[u] = min(low[u], disc[v])
            else:
                stack.pop()
                if stack:
                    p = stack[-1]
                    low[p] = min(low[p], low[u])
                    if low[u] >= disc[p]:
                        comp = []
                        marker = _normalize_edge(p, u)
                        while True:
                            e = edge_stack.pop()
                            comp.append(e)
                            if e == marker:
                                break
                        blocks.append(frozenset(comp))
    block_vertices = tuple(frozenset(v for e in b for v in e) for b in blocks)
    counts: Dict[int, int] = {}
    for b in block_vertices:
        for v in b:
            counts[v] = counts.get(v, 0) + 1
    cuts = frozenset(v for v, c in counts.items() if c >= 2)
    return BlockTree(block_vertices, tuple(blocks), cuts)


@dataclass(frozen=True)
class SphereOrder:
    """DFS discovery order of a sphere in a tree, with labels 0..n_s."""

    root: int
    radius: int
    order: Tuple[int, ...]
    labels: Dict[int, int]

    @property
    def n_s(self) -> int:
        return max(len(self.order) - 1, 0)


def dfs_sphere_order(t: Graph, s: int, rho: int) -> SphereOrder:
    """DFS of the tree from s (children ascending), restricted to S_rho(s)."""
    if not t.is_tree():
        raise GraphError("dfs_sphere_order requires a tree")
    depth = [-1] * t.n
    depth[s] = 0
    order: List[int] = []
    stack = [s]
    while stack:
        u = stack.pop()
        if depth[u] == rho:
            order.append(u)
        children = [v for v in t.adj[u] if depth[v] < 0]
        for v in reversed(children):
            depth[v] = depth[u] + 1
            stack.append(v)
    return SphereOrder(s, rho, tuple(order), {v: i for i, v in enumerate(order)})


def phi(t: Graph, D: DistanceMatrix, so: SphereOrder, v: int, r: int,
        sign: str) -> int:
    """phi_s^+(v) / phi_s^-(v): last vertex of the circular interval that
    S_{r+1}(s) cuts out of B_r(v) (sign '+') or of its complement (sign '-').

    Raises Undefined when the set is empty or the whole sphere.
    """
    if sign not in ("+", "-"):
        raise ValueError("sign must be '+' or '-'")
    order = so.order
    k = len(order)
    if k == 0:
        raise Undefined("empty sphere")
    row = D[v]
    inside = [(row[z] <= r) == (sign == "+") for z in order]
    total = sum(inside)
    if total == 0 or total == k:
        raise Undefined("intersection empty or equal to the whole sphere")
    for i in range(k):
        if inside[i] and not inside[(i + 1) % k]:
            return order[i]
    raise Undefined("no boundary found")  # pragma: no cover
