"""Size-22 scheme for cube-free median graphs: recognition, the canonical
grid embedding of an interval between two vertices, and the four-part
compressor / five-step reconstructor built on it.

The embedding colors the Djokovic-Winkler classes crossing I(u, v) into
horizontal and vertical families (2-coloring of their crossing relation) and
reads coordinates off the number of separating classes of each color.  Both
sides of the scheme share it, including the tie-break that anchors each
crossing-component's first class (by position on the canonical (u, v)-path)
as horizontal.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from .errors import MalformedInput, NotMedian, NotRealizable
from .graph import DistanceMatrix, Graph, all_pairs_distances, canonical_path, diametral_pair
from .oracle import Ball, BallSpace, CompressedSample, Sample, empty_ball, mask_of

Coord = Tuple[int, int]


def is_cube_free_median(g: Graph, D: Optional[DistanceMatrix] = None) -> bool:
    """True iff every triple has exactly one median and no isometric 3-cube
    exists (local search around each vertex and its neighbor triples)."""
    if D is None:
        D = all_pairs_distances(g)
    n = g.n
    imask: Dict[Tuple[int, int], int] = {}

    def interval_mask(u: int, v: int) -> int:
        key = (u, v) if u <= v else (v, u)
        m = imask.get(key)
        if m is None:
            du, dv = D[u], D[v]
            duv = du[v]
            m = 0
            for z in range(n):
                if du[z] + dv[z] == duv:
                    m |= 1 << z
            imask[key] = m
        return m

    for u in range(n):
        for v in range(u, n):
            for w in range(v, n):
                med = interval_mask(u, v) & interval_mask(v, w) & interval_mask(w, u)
                if med == 0 or med & (med - 1):
                    return False
    # isometric Q3 search: corner v, neighbor triple, square mates, far corner
    for v in range(n):
        nbrs = g.adj[v]
        for a, b, c in combinations(nbrs, 3):
            for x_ab in _square_mates(g, D, v, a, b):
                for x_bc in _square_mates(g, D, v, b, c):
                    for x_ac in _square_mates(g, D, v, a, c):
                        for z in range(n):
                            if (D[v][z] == 3 and g.has_edge(z, x_ab)
                                    and g.has_edge(z, x_bc) and g.has_edge(z, x_ac)
                                    and _is_cube(D, (v, a, b, c, x_ab, x_bc, x_ac, z))):
                                return False
    return True


def _square_mates(g: Graph, D: DistanceMatrix, v: int, a: int, b: int) -> List[int]:
    return [x for x in range(g.n)
            if x != v and D[v][x] == 2 and g.has_edge(a, x) and g.has_edge(b, x)]


def _is_cube(D: DistanceMatrix, vs: Sequence[int]) -> bool:
    # vs = corner, three neighbors, three square mates, antipode
    codes = [0b000, 0b001, 0b010, 0b100, 0b011, 0b110, 0b101, 0b111]
    for i in range(8):
        for j in range(i + 1, 8):
            if D[vs[i]][vs[j]] != bin(codes[i] ^ codes[j]).count("1"):
                return False
    return True


@dataclass(frozen=True)
class GridEmbedding:
    """Isometric embedding of I(u, v) into the square grid, u at the origin."""

    u: int
    v: int
    vertices: FrozenSet[int]
    coords: Dict[int, Coord]

    @property
    def v_coord(self) -> Coord:
        return self.coords[self.v]


def embed_interval(g: Graph, D: DistanceMatrix, u: int, v: int) -> GridEmbedding:
    """Canonical isometric embedding of I(u, v) into Z^2 with u = (0, 0) and
    v in the nonnegative quadrant.  Raises NotMedian when the crossing
    relation of the separating classes is not 2-colorable."""
    du, dv = D[u], D[v]
    duv = du[v]
    verts = [z for z in range(g.n) if du[z] + dv[z] == duv]
    vset = frozenset(verts)
    edges = [e for e in sorted(g.edges) if e[0] in vset and e[1] in vset]
    k = len(edges)
    parent = list(range(k))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(k):
        a, b = edges[i]
        for j in range(i + 1, k):
            p, q = edges[j]
            if D[a][p] + D[b][q] != D[a][q] + D[b][p]:
                ri, rj = find(i), find(j)
                if ri != rj:
                    parent[ri] = rj
    classes: Dict[int, List[int]] = {}
    for i in range(k):
        classes.setdefault(find(i), []).append(i)
    class_list = list(classes.values())
    # side of u for each class, via any representative edge
    sides_u: List[int] = []
    for cls in class_list:
        a, b = edges[cls[0]]
        near, far = (a, b) if du[a] < du[b] else (b, a)
        m = 0
        for z in verts:
            if D[z][near] < D[z][far]:
                m |= 1 << z
        if not (m >> u & 1) or (m >> v & 1):
            raise NotMedian("a class of I(u,v) does not separate u from v")
        sides_u.append(m)
    # crossing relation and 2-coloring, anchored per component by the class
    # whose edge appears first on the canonical (u, v)-path
    full = mask_of(verts)
    ncls = len(class_list)
    crossing: List[List[int]] = [[] for _ in range(ncls)]
    for i in range(ncls):
        for j in range(i + 1, ncls):
            a, b = sides_u[i], sides_u[j]
            if (a & b) and (a & ~b & full) and (~a & b & full) and (~a & ~b & full):
                crossing[i].append(j)
                crossing[j].append(i)
    path = canonical_path(g, u, v)
    pos_of_class = {}
    for idx in range(len(path) - 1):
        e = tuple(sorted((path[idx], path[idx + 1])))
        ci = find(edges.index(e))
        root = ci
        pos_of_class.setdefault(root, idx)
    color = [-1] * ncls
    roots = sorted(range(ncls), key=lambda i: pos_of_class.get(find(class_list[i][0]), 0))
    for start in roots:
        if color[start] >= 0:
            continue
        color[start] = 0  # horizontal
        stack = [start]
        while stack:
            i = stack.pop()
            for j in crossing[i]:
                if color[j] < 0:
                    color[j] = 1 - color[i]
                    stack.append(j)
                elif color[j] == color[i]:
                    raise NotMedian("crossing classes are not 2-colorable")
    coords = {}
    for z in verts:
        za = zb = 0
        for i in range(ncls):
            if not (sides_u[i] >> z & 1):  # class separates z from u
                if color[i] == 0:
                    za += 1
                else:
                    zb += 1
        coords[z] = (za, zb)
    return GridEmbedding(u, v, vset, coords)


# substrip membership: for strip i and kind ('s','t','p','q'), the relevant
# half of the strip relative to a point (xa, xb), using the clockwise
# labeling (S1' is the top-left half, S1'' top-right, and so on around).
def _half_ok(i: int, kind: str, gc: Coord, at: Coord) -> bool:
    ga, gb = gc
    xa, xb = at
    prime = kind in ("s", "p") if i in (1, 3) else kind in ("t", "p")
    if i == 1:
        return ga <= xa if prime else ga >= xa
    if i == 2:
        return gb >= xb if prime else gb <= xb
    if i == 3:
        return ga >= xa if prime else ga <= xa
    return gb <= xb if prime else gb >= xb


class CubeFreeMedianLSCS:
    """Labeled size-22 scheme for all balls of a cube-free median graph."""

    size_bound = 22
    scheme_id = "cfmedian-lscs"
    GROUPS = (2, 4, 8, 8)

    def __init__(self, g: Graph, space: Optional[BallSpace] = None) -> None:
        self.g = g
        self.space = space if space is not None else BallSpace(g)
        self.D = self.space.D
        if not is_cube_free_median(g, self.D):
            raise NotMedian("graph is not a cube-free median graph")
        self._embeddings: Dict[Tuple[int, int], GridEmbedding] = {}
        self._imask: Dict[Tuple[int, int], int] = {}

    @property
    def family(self):
        return self.space.balls

    @property
    def proper_family(self):
        return self.space.balls

    def _interval_mask(self, u: int, v: int) -> int:
        key = (u, v) if u <= v else (v, u)
        m = self._imask.get(key)
        if m is None:
            du, dv = self.D[u], self.D[v]
            duv = du[v]
            m = 0
            for z in range(self.g.n):
                if du[z] + dv[z] == duv:
                    m |= 1 << z
            self._imask[key] = m
        return m

    def _embedding(self, u: int, v: int) -> GridEmbedding:
        key = (u, v)
        emb = self._embeddings.get(key)
        if emb is None:
            emb = embed_interval(self.g, self.D, u, v)
            self._embeddings[key] = emb
        return emb

    def _gate(self, u: int, v: int, w: int) -> int:
        """Gate of w in I(u, v) = the median of the triple (unique)."""
        m = (self._interval_mask(u, v) & self._interval_mask(v, w)
             & self._interval_mask(w, u))
        if m == 0 or m & (m - 1):
            raise NotMedian("triple without a unique median")
        return m.bit_length() - 1

    def compress(self, X: Sample) -> CompressedSample:
        ball = self.space.first_realizing(X)
        if ball is None:
            raise NotRealizable(f"{X!r} has no realizing ball")
        pos = sorted(X.pos)
        if not pos:
            return CompressedSample((None,) * 22, groups=self.GROUPS)
        if len(pos) == 1:
            return CompressedSample(((pos[0], 1),) + (None,) * 21, groups=self.GROUPS)
        up, vp = diametral_pair(self.D, pos)
        emb = self._embedding(up, vp)
        x = self._gate(up, vp, ball.center)  # realizing center projected onto I
        xa, xb = emb.coords[x]
        support = sorted(X.support)
        gates = {w: emb.coords[self._gate(up, vp, w)] for w in support}
        row_x = self.D[x]
        # region witnesses w1..w4: extremal gate per coordinate halfplane of x
        groups = [
            [w for w in support if gates[w][1] >= xb],
            [w for w in support if gates[w][0] >= xa],
            [w for w in support if gates[w][1] <= xb],
            [w for w in support if gates[w][0] <= xa],
        ]
        pick = (
            min(groups[0], key=lambda w: (gates[w][1], w)) if groups[0] else None,
            min(groups[1], key=lambda w: (gates[w][0], w)) if groups[1] else None,
            max(groups[2], key=lambda w: (gates[w][1], -w)) if groups[2] else None,
            max(groups[3], key=lambda w: (gates[w][0], -w)) if groups[3] else None,
        )
        a2 = tuple((w, X.sign(w)) if w is not None else None for w in pick)
        strip_of = [None] + [self._strip_tests(pick, gates, i) for i in range(1, 5)]
        a3: List[Optional[Tuple[int, int]]] = []
        a4: List[Optional[Tuple[int, int]]] = []
        at = (xa, xb)
        for i in range(1, 5):
            in_strip = strip_of[i]
            s_c = [w for w in pos if in_strip(w) and _half_ok(i, "s", gates[w], at)]
            t_c = [w for w in pos if in_strip(w) and _half_ok(i, "t", gates[w], at)]
            s = max(s_c, key=lambda w: (row_x[w], -w)) if s_c else None
            if i in (1, 3):
                t = min(t_c, key=lambda w: (abs(gates[w][0] - xa), w)) if t_c else None
            else:
                t = min(t_c, key=lambda w: (abs(gates[w][1] - xb), w)) if t_c else None
            a3 += [(s, 1) if s is not None else None, (t, 1) if t is not None else None]
            neg = sorted(X.neg)
            p_c = [w for w in neg if in_strip(w) and _half_ok(i, "p", gates[w], at)]
            q_c = [w for w in neg if in_strip(w) and _half_ok(i, "q", gates[w], at)]
            p = min(p_c, key=lambda w: (row_x[w], w)) if p_c else None
            q = min(q_c, key=lambda w: (row_x[w], w)) if q_c else None
            a4 += [(p, -1) if p is not None else None, (q, -1) if q is not None else None]
        slots = ((up, 1), (vp, 1)) + a2 + tuple(a3) + tuple(a4)
        return CompressedSample(slots, groups=self.GROUPS)

    def _strip_tests(self, pick, gates, i: int):
        """Membership in strip S_i (beyond w_i's gate line), given w_i exists."""
        w = pick[i - 1]
        if w is None:
            return lambda _w: False
        wa, wb = gates[w]
        if i == 1:
            return lambda z: gates[z][1] >= wb
        if i == 2:
            return lambda z: gates[z][0] >= wa
        if i == 3:
            return lambda z: gates[z][1] <= wb
        return lambda z: gates[z][0] <= wa

    def reconstruct(self, Y: CompressedSample) -> Ball:
        if len(Y.slots) != 22:
            raise MalformedInput("cube-free median vectors have 22 slots")
        a1, a2 = Y.slots[0:2], Y.slots[2:6]
        a3, a4 = Y.slots[6:14], Y.slots[14:22]
        if a1[0] is None:
            if any(e is not None for e in Y.slots):
                raise MalformedInput("missing diametral pair")
            return empty_ball()
        if a1[1] is None:
            return self.space.ball(a1[0][0], 0)
        y1, y2 = a1[0][0], a1[1][0]
        emb = self._embedding(y1, y2)
        gate_coord: Dict[int, Coord] = {}
        for e in Y.slots:
            if e is not None and e[0] not in gate_coord:
                gate_coord[e[0]] = emb.coords[self._gate(y1, y2, e[0])]
        # Step 2: region R from the four halfplanes of the region witnesses
        bounds = [gate_coord[e[0]] if e is not None else None for e in a2]
        region = []
        for z in sorted(emb.vertices):
            za, zb = emb.coords[z]
            if bounds[0] is not None and zb > bounds[0][1]:
                continue
            if bounds[1] is not None and za > bounds[1][0]:
                continue
            if bounds[2] is not None and zb < bounds[2][1]:
                continue
            if bounds[3] is not None and za < bounds[3][0]:
                continue
            region.append(z)
        contain = [y1, y2] + [e[0] for e in a3 if e is not None]
        avoid = [e[0] for e in a4 if e is not None]
        best = None
        for y in region:
            yc = emb.coords[y]
            ok = True
            for idx, e in enumerate(a3):
                if e is None:
                    continue
                i, kind = idx // 2 + 1, ("s", "t")[idx % 2]
                if not _half_ok(i, kind, gate_coord[e[0]], yc):
                    ok = False
                    break
            if not ok:
                continue
            for idx, e in enumerate(a4):
                if e is None:
                    continue
                i, kind = idx // 2 + 1, ("p", "q")[idx % 2]
                if not _half_ok(i, kind, gate_coord[e[0]], yc):
                    ok = False
                    break
            if not ok:
                continue
            row = self.D[y]
            r_lo = max(row[w] for w in contain)
            r_hi = min((row[w] - 1 for w in avoid), default=self.space.diam)
            if r_hi >= r_lo:
                cand = (emb.coords[y], y)
                if best is None or cand < best[0]:
                    best = (cand, y, r_hi)
        if best is None:
            raise MalformedInput("empty candidate region in reconstruction")
        _, y, r = best
        return self.space.ball(y, r)


def cfm_compress(g: Graph, X: Sample) -> CompressedSample:
    return CubeFreeMedianLSCS(g).compress(X)


def cfm_reconstruct(g: Graph, Y: CompressedSample) -> Ball:
    return CubeFreeMedianLSCS(g).reconstruct(Y)
