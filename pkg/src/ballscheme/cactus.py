"""Size-3 scheme for cycles and size-6 scheme for trees of cycles (cacti).

The cactus compressor encodes, with three slot pairs, a diametral pair of the
positives, the region of the block path where a realizing center lives, and
enough sample vertices to recover the center and radius.  Both sides share a
fixed clockwise orientation per cycle block: traverse from the block's
smallest vertex toward its smaller-id neighbor.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from .errors import GraphError, MalformedInput, NotCactus, NotRealizable, SchemeError
from .graph import BlockTree, Graph, block_cut_tree, canonical_path, diametral_pair
from .oracle import Ball, BallSpace, CompressedSample, Sample, empty_ball, mask_of


class CycleLSCS:
    """Labeled size-3 scheme for all balls of a cycle."""

    size_bound = 3
    scheme_id = "cycle-lscs"

    def __init__(self, cycle: Graph, space: Optional[BallSpace] = None) -> None:
        if cycle.n < 3 or any(cycle.degree(v) != 2 for v in range(cycle.n)):
            raise GraphError("scheme requires a cycle")
        self.g = cycle
        self.space = space if space is not None else BallSpace(cycle)
        self.D = self.space.D
        self.seq = _cycle_sequence(cycle, frozenset(range(cycle.n)))

    @property
    def family(self):
        return self.space.balls

    @property
    def proper_family(self):
        return self.space.balls

    def _arc(self, a: int, b: int, forward: bool = True) -> List[int]:
        return _walk(self.seq, a, b, forward)

    def compress(self, X: Sample) -> CompressedSample:
        if not self.space.realizable(X):
            raise NotRealizable(f"{X!r} has no realizing ball")
        pos = sorted(X.pos)
        neg = sorted(X.neg)
        if len(pos) <= 1 or (len(pos) == 2 and not neg):
            slots = tuple((v, 1) for v in pos) + (None,) * (3 - len(pos))
            return CompressedSample(slots)
        if not neg:
            return CompressedSample(tuple((v, 1) for v in pos[:3]))
        pos_mask, neg_mask = X.pos_mask, X.neg_mask
        for i, u in enumerate(pos):
            for v in pos[i + 1:]:
                for forward in (True, False):
                    arc = mask_of(self._arc(u, v, forward))
                    if pos_mask & ~arc == 0 and neg_mask & arc == 0:
                        w = min(neg, key=lambda z: (min(self.D[u][z], self.D[v][z]), z))
                        return CompressedSample(((u, 1), (v, 1), (w, -1)))
        raise SchemeError("no clean arc between two positives")  # pragma: no cover

    def reconstruct(self, Y: CompressedSample) -> Ball:
        pos = [v for v, s in Y.entries() if s > 0]
        neg = [v for v, s in Y.entries() if s < 0]
        if not pos and not neg:
            return empty_ball()
        if len(pos) == 1 and not neg:
            return self.space.ball(pos[0], 0)
        if not neg and len(pos) in (2, 3):
            return self.space.ball(0, self.g.n // 2)  # canonical covering ball
        if len(pos) == 2 and len(neg) == 1:
            u, v = pos
            w = neg[0]
            arc = self._arc(u, v, True)
            if w in arc:
                arc = self._arc(u, v, False)
            if w in arc:
                raise MalformedInput("negative witness lies on both (u,v)-paths")
            length = len(arc) - 1
            r = (length + 1) // 2
            for y in sorted({arc[length // 2], arc[(length + 1) // 2]}):
                if self.D[y][w] > r:
                    return self.space.ball(y, r)
            raise MalformedInput("no center of the path avoids the witness")
        raise MalformedInput(f"unexpected slot pattern {Y!r}")


def _cycle_sequence(g: Graph, block: FrozenSet[int]) -> Tuple[int, ...]:
    """Clockwise order of a cycle block: smallest vertex first, then its
    smaller-id neighbor inside the block."""
    start = min(block)
    inside = sorted(v for v in g.adj[start] if v in block)
    seq = [start, inside[0]]
    while True:
        prev, cur = seq[-2], seq[-1]
        nxt = next(v for v in g.adj[cur] if v in block and v != prev)
        if nxt == start:
            return tuple(seq)
        seq.append(nxt)


def _walk(seq: Sequence[int], a: int, b: int, forward: bool) -> List[int]:
    """Vertices from a to b along the cyclic order (forward = clockwise)."""
    k = len(seq)
    pos = {v: i for i, v in enumerate(seq)}
    step = 1 if forward else -1
    out = [a]
    i = pos[a]
    while out[-1] != b:
        i = (i + step) % k
        out.append(seq[i])
        if len(out) > k:
            raise MalformedInput("walk does not reach target")  # pragma: no cover
    return out


def locate_center_edge(P: Sequence[int]) -> Tuple[int, int]:
    """The unique edge (x0, y0) of the path with d'(x0,b)-d'(x0,a) in {1,2}
    and x0 closer to the start a."""
    length = len(P) - 1
    if length < 1:
        raise MalformedInput("path too short to contain the center edge")
    i = (length - 1) // 2
    return P[i], P[i + 1]


class _BlockPath:
    """The path of blocks C(u, v) in a cactus, with its separating cut
    vertices and a block lookup for non-separator vertices.

    C(u, u) is the single vertex {u}: the region between a vertex and itself
    is trivial (the construction needs this so that, when the gate of an
    endpoint coincides with the endpoint, its side region carries no blocks).
    """

    def __init__(self, bt: BlockTree, u: int, v: int) -> None:
        self.u, self.v = u, v
        if u == v:
            self.blocks, self.cuts = [], []
        else:
            self.blocks, self.cuts = bt.path_blocks(u, v)
        self.block_sets = [bt.blocks[i] for i in self.blocks]
        verts = set()
        for b in self.block_sets:
            verts |= b
        if not verts:
            verts = {u}
        self.vertices = frozenset(verts)
        self.mask = mask_of(verts)
        self.cut_set = frozenset(self.cuts)

    def block_of(self, z: int) -> FrozenSet[int]:
        """The unique path block containing a non-separator vertex."""
        for b in self.block_sets:
            if z in b:
                return b
        raise MalformedInput(f"vertex {z} is outside the block path")


class CactusLSCS:
    """Labeled size-6 scheme for all balls of a tree of cycles."""

    size_bound = 6
    scheme_id = "cactus-lscs"

    def __init__(self, g: Graph, space: Optional[BallSpace] = None) -> None:
        self.g = g
        self.space = space if space is not None else BallSpace(g)
        self.D = self.space.D
        self.bt = block_cut_tree(g)
        self._cycles: Dict[FrozenSet[int], Tuple[int, ...]] = {}
        for bset, bedges in zip(self.bt.blocks, self.bt.block_edges):
            if len(bedges) <= 1:
                continue
            if len(bedges) != len(bset):
                raise NotCactus("block is neither a cycle nor an edge")
            self._cycles[bset] = _cycle_sequence(g, bset)
        self._paths: Dict[Tuple[int, int], _BlockPath] = {}

    @property
    def family(self):
        return self.space.balls

    @property
    def proper_family(self):
        return self.space.balls

    def _path(self, u: int, v: int) -> _BlockPath:
        key = (u, v)
        bp = self._paths.get(key)
        if bp is None:
            bp = _BlockPath(self.bt, u, v)
            self._paths[key] = bp
        return bp

    def _gate(self, verts, x: int) -> int:
        """Gate of x in a gated vertex set = its unique distance minimizer."""
        row = self.D[x]
        return min(verts, key=lambda z: (row[z], z))

    def _r_star(self, y: int, pos: Sequence[int]) -> int:
        row = self.D[y]
        return max(row[p] for p in pos)

    def _realizes_mask(self, y: int, r: int, X: Sample) -> bool:
        m = self.space.ball_mask(y, r)
        return X.pos_mask & ~m == 0 and X.neg_mask & m == 0

    # ----- compressor -----------------------------------------------------

    def compress(self, X: Sample) -> CompressedSample:
        ball = self.space.first_realizing(X)
        if ball is None:
            raise NotRealizable(f"{X!r} has no realizing ball")
        star = (None, None)
        if not X.neg_mask:  # (C1)
            return CompressedSample(star * 3, groups=(2, 2, 2))
        if not X.pos_mask:  # (C2)
            z = min(X.neg)
            return CompressedSample(star + star + ((z, -1), None), groups=(2, 2, 2))
        pos = sorted(X.pos)
        if len(pos) == 1:  # (C3)
            z = min(X.neg)
            return CompressedSample(((pos[0], 1), None) + star + ((z, -1), None),
                                    groups=(2, 2, 2))
        up, vp = diametral_pair(self.D, pos)
        path = self._path(up, vp)
        # Project the oracle's realizing center onto the block path (its gate
        # keeps realizing with the reduced radius).
        x = self._gate(path.vertices, ball.center)
        if x in (up, vp) or x in path.cut_set:
            C: FrozenSet[int] = frozenset({x})
        else:
            C = path.block_of(x)
        u_star = self._gate(C, up)
        v_star = self._gate(C, vp)
        gates = {w: self._gate(path.vertices, w) for w in X.support}
        core = C - {u_star, v_star}
        X_C = [w for w in sorted(X.support) if gates[w] in core]
        if not X_C:
            return self._compress_flat(X, up, vp, path, x, u_star, v_star, gates)
        return self._compress_cycle(X, up, vp, path, C, u_star, v_star, gates, X_C)

    def _compress_flat(self, X, up, vp, path, x, u_star, v_star, gates):
        """(C4): no sample vertex gates into the interior of the central block."""
        ru = self._path(up, u_star)
        rv = self._path(vp, v_star)
        Xu = [w for w in sorted(X.support) if gates[w] in ru.vertices]
        Xv = [w for w in sorted(X.support) if gates[w] in rv.vertices]
        u0 = self._anchor(ru, u_star, up, [gates[w] for w in Xu])
        v0 = self._anchor(rv, v_star, vp, [gates[w] for w in Xv])
        w1 = self._pick_region_witness(Xu, gates, u0, path, up, vp)
        w2 = self._pick_region_witness(Xv, gates, v0, path, up, vp)
        neg_u = [w for w in Xu if X.sign(w) < 0]
        neg_v = [w for w in Xv if X.sign(w) < 0]
        row = self.D[x]
        z1 = min(neg_u, key=lambda z: (row[z], z)) if neg_u else None
        z2 = min(neg_v, key=lambda z: (row[z], z)) if neg_v else None
        slots = ((up, 1), (vp, 1),
                 (w1, X.sign(w1)), (w2, X.sign(w2)),
                 (z1, -1) if z1 is not None else None,
                 (z2, -1) if z2 is not None else None)
        return CompressedSample(slots, groups=(2, 2, 2))

    def _anchor(self, region: _BlockPath, near: int, far: int, gate_list) -> int:
        """u0: the cut vertex of C(far, near) farthest from `near` whose prefix
        C(far, u0) still holds every gate; `far` itself when all gates sit there."""
        gset = set(gate_list)
        if gset <= {far}:
            return far
        prefix: set = set()
        for blk, cut in zip(region.block_sets, region.cuts):
            prefix |= blk
            if gset <= prefix:
                return cut
        return near

    def _pick_region_witness(self, Xside, gates, anchor, path, up, vp) -> int:
        direct = [w for w in Xside if gates[w] == anchor]
        if direct:
            return direct[0]
        for w in Xside:
            gw = gates[w]
            if gw in (up, vp) or gw in path.cut_set:
                continue
            if anchor in path.block_of(gw):
                return w
        raise SchemeError("no witness vertex identifies the region anchor")  # pragma: no cover

    def _compress_cycle(self, X, up, vp, path, C, u_star, v_star, gates, X_C):
        """(C5): some sample vertex gates into the central cycle's interior."""
        seq = self._cycles.get(C)
        if seq is None:
            raise SchemeError("interior gate on a non-cycle block")  # pragma: no cover
        w = X_C[0]
        pos = sorted(X.pos)
        star_r = {y: self._r_star(y, pos) for y in seq}
        realizes = {y: self._realizes_mask(y, star_r[y], X) for y in seq}
        if all(realizes.values()):  # (C5i)
            wg = gates[w]
            s = min(p for p in pos if self.D[wg][p] == star_r[wg])
            return CompressedSample(((up, 1), (vp, 1), (w, X.sign(w)), None,
                                     (s, 1), None), groups=(2, 2, 2))
        edges = []
        k = len(seq)
        for i in range(k):
            a, b = seq[i], seq[(i + 1) % k]
            for xx, yy in ((a, b), (b, a)):
                if realizes[xx] and not realizes[yy]:
                    edges.append((xx, yy))
        if not edges:
            raise SchemeError("no realizing/non-realizing transition on the cycle")  # pragma: no cover
        xx, yy = min(edges)
        rx, ry = star_r[xx], star_r[yy]
        z = min(p for p in sorted(X.neg) if self.space.ball_mask(yy, ry) >> p & 1)
        s_cands = [p for p in pos if self.D[yy][p] == ry]
        s_pref = [p for p in s_cands if self.D[xx][p] == rx]
        s = min(s_pref) if s_pref else min(s_cands)
        t = s if self.D[xx][s] == rx else min(p for p in pos if self.D[xx][p] == rx)
        end = z if s == t else t
        s_g = self._gate(C, s)
        e_g = self._gate(C, end)
        if s_g == e_g:
            raise SchemeError("degenerate gate pair on the central cycle")  # pragma: no cover
        cw = _walk(seq, s_g, e_g, True)
        on_cw = any({cw[i], cw[i + 1]} == {xx, yy} for i in range(len(cw) - 1))
        w_slot = (None, (w, X.sign(w))) if on_cw else ((w, X.sign(w)), None)
        end_entry = (z, -1) if s == t else (t, 1)
        return CompressedSample(((up, 1), (vp, 1)) + w_slot + ((s, 1), end_entry),
                                groups=(2, 2, 2))

    # ----- reconstructor --------------------------------------------------

    def reconstruct(self, Y: CompressedSample) -> Ball:
        if len(Y.slots) != 6:
            raise MalformedInput("cactus vectors have six slots")
        a1, a2, a3 = Y.slots[0:2], Y.slots[2:4], Y.slots[4:6]
        if a1 == (None, None) and a2 == (None, None):
            if a3 == (None, None):  # (R1): a ball covering the whole graph
                return self.space.ball(0, self.D.eccentricity(0))
            return empty_ball()  # (R2)
        if a1[1] is None and a2 == (None, None) and a3[1] is None:  # (R3)
            return self.space.ball(a1[0][0], 0)
        if a1[0] is None or a1[1] is None:
            raise MalformedInput("missing diametral pair")
        y1, y2 = a1[0][0], a1[1][0]
        path = self._path(y1, y2)
        if a2[0] is not None and a2[1] is not None:  # (R4)
            return self._reconstruct_flat(y1, y2, path, a2, a3)
        return self._reconstruct_cycle(y1, y2, path, a2, a3)

    def _region_anchor(self, g3: int, toward: int, y1: int, y2: int, path: _BlockPath) -> int:
        if g3 in (y1, y2) or g3 in path.cut_set:
            return g3
        return self._gate(path.block_of(g3), toward)

    def _reconstruct_flat(self, y1, y2, path, a2, a3) -> Ball:
        g3 = self._gate(path.vertices, a2[0][0])
        g4 = self._gate(path.vertices, a2[1][0])
        u0 = self._region_anchor(g3, y2, y1, y2, path)
        v0 = self._region_anchor(g4, y1, y1, y2, path)
        region = self._path(u0, v0).vertices
        avoid = mask_of(e[0] for e in a3 if e is not None)
        d1, d2 = self.D[y1], self.D[y2]
        for y in sorted(region):
            r = max(d1[y], d2[y])
            if self.space.ball_mask(y, r) & avoid == 0:
                return self.space.ball(y, r)
        raise MalformedInput("no center in the region avoids the witnesses")

    def _reconstruct_cycle(self, y1, y2, path, a2, a3) -> Ball:
        if a2[0] is not None:
            w_entry, forward = a2[0], False  # (R5iii)/(R5v): counterclockwise
        elif a2[1] is not None:
            w_entry, forward = a2[1], True  # (R5ii)/(R5iv): clockwise
        else:
            raise MalformedInput("missing region witness")
        wg = self._gate(path.vertices, w_entry[0])
        if wg in (y1, y2) or wg in path.cut_set:
            raise MalformedInput("region witness does not gate into a cycle interior")
        C = path.block_of(wg)
        seq = self._cycles.get(C)
        if seq is None:
            raise MalformedInput("region witness gates into an edge block")
        if a3[0] is None:
            raise MalformedInput("missing radius witness")
        y5 = a3[0][0]
        if a3[1] is None:  # (R5i)
            g = self._gate(path.vertices, w_entry[0])
            return self.space.ball(g, self.D[g][y5])
        y6, y6_sign = a3[1][0], a3[1][1]
        g5 = self._gate(C, y5)
        g6 = self._gate(C, y6)
        if g5 == g6:
            raise MalformedInput("radius witnesses gate to the same cycle vertex")
        arc = _walk(seq, g5, g6, forward)
        P = canonical_path(self.g, y5, g5) + arc[1:] + canonical_path(self.g, g6, y6)[1:]
        x0, y0 = locate_center_edge(P)
        if x0 not in C or y0 not in C:
            raise MalformedInput("center edge falls outside the cycle")
        if y6_sign < 0:  # (R5ii)/(R5iii)
            d_path = P.index(y0)  # d'(y0, y5) along P
            d_real = self.D[y0][y5]
            r = d_real if d_path == d_real + 1 else d_real - 1
        else:  # (R5iv)/(R5v)
            r = self.D[x0][y6]
        return self.space.ball(x0, r)


@lru_cache(maxsize=64)
def _cycle_scheme(c: Graph) -> CycleLSCS:
    return CycleLSCS(c)


@lru_cache(maxsize=64)
def _cactus_scheme(g: Graph) -> CactusLSCS:
    return CactusLSCS(g)


def cycle_compress(C: Graph, X: Sample) -> CompressedSample:
    return _cycle_scheme(C).compress(X)


def cycle_reconstruct(C: Graph, Y: CompressedSample) -> Ball:
    return _cycle_scheme(C).reconstruct(Y)


def cactus_compress(G: Graph, X: Sample) -> CompressedSample:
    return _cactus_scheme(G).compress(X)


def cactus_reconstruct(G: Graph, Y: CompressedSample) -> Ball:
    return _cactus_scheme(G).reconstruct(Y)
