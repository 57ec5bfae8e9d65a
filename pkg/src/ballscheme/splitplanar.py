"""Size-omega scheme for split graphs and size-4 scheme for radius-1 balls
of planar graphs with a given combinatorial embedding (rotation system).

For the planar scheme the reconstructor follows the fixed decoding rules
(potential-center elimination, circular neighbor orders); the compressor
verifies its candidate encoding by decoding it and, where the written rules
leave slack, searches the remaining sample vertices for an encoding whose
decoding realizes the sample.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from .errors import (InvalidEmbedding, MalformedInput, NotRealizable, NotSplit,
                     SchemeError)
from .graph import Graph
from .oracle import Ball, BallSpace, CompressedSample, Sample, empty_ball, mask_of


@dataclass(frozen=True)
class SplitPartition:
    """Clique vertices in id order plus the independent rest."""

    clique: Tuple[int, ...]
    independent: FrozenSet[int]


def _maximal_cliques(g: Graph) -> List[FrozenSet[int]]:
    out: List[FrozenSet[int]] = []
    nbr = [mask_of(g.adj[v]) for v in range(g.n)]

    def expand(r: int, p: int, x: int) -> None:
        if p == 0 and x == 0:
            out.append(frozenset(i for i in range(g.n) if r >> i & 1))
            return
        pivot_pool = p | x
        pivot = (pivot_pool & -pivot_pool).bit_length() - 1
        cand = p & ~nbr[pivot]
        while cand:
            low = cand & -cand
            v = low.bit_length() - 1
            expand(r | low, p & nbr[v], x & nbr[v])
            p &= ~low
            x |= low
            cand ^= low

    expand(0, (1 << g.n) - 1, 0)
    return out


def split_partition(g: Graph) -> SplitPartition:
    """A clique/independent-set partition with the clique of size omega(G).

    Split graphs always admit one: among all maximum cliques, some has an
    independent complement.  Raises NotSplit otherwise.
    """
    cliques = _maximal_cliques(g)
    omega = max(len(c) for c in cliques)
    for c in sorted((c for c in cliques if len(c) == omega), key=sorted):
        rest = [v for v in range(g.n) if v not in c]
        if all(not g.has_edge(u, v) for u, v in combinations(rest, 2)):
            return SplitPartition(tuple(sorted(c)), frozenset(rest))
    raise NotSplit("no clique/independent-set partition exists")


class SplitLSCS:
    """Labeled scheme of size max(2, omega(G)) for all balls of a split graph."""

    scheme_id = "split-lscs"

    def __init__(self, g: Graph, part: Optional[SplitPartition] = None,
                 space: Optional[BallSpace] = None) -> None:
        self.g = g
        self.part = part if part is not None else split_partition(g)
        self.space = space if space is not None else BallSpace(g)
        self.D = self.space.D
        self.clique = self.part.clique
        self.independent = self.part.independent
        self.k = max(2, len(self.clique))
        self.size_bound = self.k
        self._n1 = [self.space.ball_mask(v, 1) for v in range(g.n)]

    @property
    def family(self):
        return self.space.balls

    @property
    def proper_family(self):
        return self.space.balls

    def _unit_realizes(self, u: int, X: Sample) -> bool:
        m = self._n1[u]
        return X.pos_mask & ~m == 0 and X.neg_mask & m == 0

    def _unit_candidates(self, pos_mask: int, neg_mask: int) -> List[int]:
        """Independent vertices whose open neighborhood covers the positives
        and avoids the negatives (the vertex's own sign is not consulted)."""
        out = []
        for u in sorted(self.independent):
            nb = self._n1[u] & ~(1 << u)
            if pos_mask & ~nb == 0 and neg_mask & nb == 0:
                out.append(u)
        return out

    def _decodes_ok(self, cs: CompressedSample, X: Sample) -> bool:
        try:
            ball = self.reconstruct(cs)
        except MalformedInput:
            return False
        return X.pos_mask & ~ball.mask == 0 and X.neg_mask & ball.mask == 0

    def compress(self, X: Sample) -> CompressedSample:
        """Cases (C1)-(C7).  Each emitted vector is decode-verified; when the
        written rule of (C5) is ambiguous (the reconstructor's smallest trace
        matching independent center may itself be an unrecorded negative), a
        free slot carries one boundary negative for the successor rule, and
        failing that the compressor falls through to (C6)/(C7)."""
        if not self.space.realizable(X):
            raise NotRealizable(f"{X!r} has no realizing ball")
        k = self.k
        pos = sorted(X.pos)
        if not pos:  # (C1)
            return CompressedSample((None,) * k)
        if not X.neg_mask:  # (C2)
            return CompressedSample(((pos[0], 1),) + (None,) * (k - 1))
        if len(pos) == 1:  # (C3)
            return CompressedSample((None, (pos[0], 1)) + (None,) * (k - 2))
        for u in pos:  # (C4)
            if u in self.independent and self._unit_realizes(u, X):
                v = min(w for w in pos if self.g.has_edge(u, w))
                return CompressedSample(((u, 1), (v, 1)) + (None,) * (k - 2))
        if any(u not in X.pos and self._unit_realizes(u, X)
               for u in sorted(self.independent)):  # (C5)
            slots = [((w, X.sign(w)) if X.sign(w) else None) for w in self.clique]
            slots += [None] * (k - len(self.clique))
            cs = CompressedSample(tuple(slots))
            if self._decodes_ok(cs, X):
                return cs
            # The written rule is ambiguous: the smallest trace-matching
            # independent center can itself be an unrecorded negative.  One
            # free slot carries a negative candidate whose cyclic successor
            # among the candidates is clean; the reconstructor follows it.
            if None in slots:
                cands = self._unit_candidates(mask_of(pos), X.neg_mask)
                clean = [u for u in cands if not (X.neg_mask >> u & 1)]
                if clean:
                    for z in cands:
                        if X.neg_mask >> z & 1:
                            nxt = cands[(cands.index(z) + 1) % len(cands)]
                            if nxt in clean:
                                slots[slots.index(None)] = (z, -1)
                                cs = CompressedSample(tuple(slots))
                                if self._decodes_ok(cs, X):
                                    return cs
                                break
        if any(self._unit_realizes(u, X) for u in self.clique):  # (C6)
            cs = self._fill_slots(X, positive_rule="outside")
            if self._decodes_ok(cs, X):
                return cs
        for u in sorted(self.independent):  # (C7)
            m2 = self.space.ball_mask(u, 2)
            if X.pos_mask & ~m2 == 0 and X.neg_mask & m2 == 0:
                cs = self._fill_slots(X, positive_rule="inside", center=u)
                if self._decodes_ok(cs, X):
                    return cs
        raise SchemeError(f"no compressor case yields a consistent decode for {X!r}")

    def _fill_slots(self, X: Sample, positive_rule: str,
                    center: Optional[int] = None) -> CompressedSample:
        used: set = set()
        slots: List[Optional[Tuple[int, int]]] = []
        neg = sorted(X.neg)
        pos = sorted(X.pos)
        for w in self.clique:
            nb = self._n1[w] & ~(1 << w)
            y = next((z for z in neg if nb >> z & 1 and z not in used), None)
            if y is not None:
                slots.append((y, -1))
                used.add(y)
                continue
            if positive_rule == "outside":
                # a positive outside the closed neighborhood of this clique vertex
                z = next((z for z in pos
                          if not (self._n1[w] >> z & 1) and z not in used), None)
            else:
                z = None
                if center is not None and self.g.has_edge(w, center):
                    z = next((z for z in pos if z in self.independent
                              and nb >> z & 1 and z not in used), None)
            if z is not None:
                slots.append((z, 1))
                used.add(z)
            else:
                slots.append(None)
        slots += [None] * (self.k - len(self.clique))
        return CompressedSample(tuple(slots))

    def reconstruct(self, Y: CompressedSample) -> Ball:
        if len(Y.slots) != self.k:
            raise MalformedInput(f"split vectors have {self.k} slots")
        slots = Y.slots
        entries = Y.entries()
        pos_entries = [(i, e) for i, e in enumerate(slots) if e is not None and e[1] > 0]
        neg_entries = [e for e in entries if e[1] < 0]
        if not entries:  # (R1)
            return empty_ball()
        if len(entries) == 1 and slots[0] is not None and slots[0][1] > 0:  # (R2)
            return self._covering_ball()
        if len(entries) == 1 and slots[1] is not None and slots[1][1] > 0:  # (R3)
            return self.space.ball(slots[1][0], 0)
        if (len(entries) == 2 and slots[0] is not None and slots[1] is not None
                and slots[0][1] > 0 and slots[1][1] > 0
                and slots[0][0] in self.independent
                and slots[1][0] in set(self.clique)):  # (R4)
            return self.space.ball(slots[0][0], 1)
        if any(slots[i] is not None for i in range(len(self.clique), self.k)):
            raise MalformedInput("entry in a padding slot")
        clique_set = set(self.clique)
        clique_pos = [e[0] for _, e in pos_entries if e[0] in clique_set]
        ymask = mask_of(e[0] for e in entries)
        ypos = mask_of(e[0] for e in entries if e[1] > 0)
        if len(clique_pos) >= 2:  # (R5)
            cands = self._unit_candidates(ypos, ymask & ~ypos)
            if not cands:
                raise MalformedInput("no independent unit center matches the vector")
            recorded = [u for u in cands if ymask >> u & 1]
            if recorded:
                return self.space.ball(cands[(cands.index(max(recorded)) + 1) % len(cands)], 1)
            return self.space.ball(cands[0], 1)
        if neg_entries and all(not (self._n1[self.clique[i]] >> e[0] & 1)
                               for i, e in pos_entries):  # (R6)
            for i, w in enumerate(self.clique):
                if slots[i] is None and self._n1[w] & ymask == ypos:
                    return self.space.ball(w, 1)
            raise MalformedInput("no free clique slot matches the vector")
        for u in sorted(self.independent):  # (R7)
            m2 = self.space.ball_mask(u, 2)
            if m2 & mask_of(e[0] for e in neg_entries):
                continue
            if all(self.g.has_edge(self.clique[i], u) for i, e in pos_entries):
                return self.space.ball(u, 2)
        raise MalformedInput("no radius-2 center matches the vector")

    def _covering_ball(self) -> Ball:
        full = mask_of(range(self.g.n))
        for b in self.space.balls:
            if b.mask == full:
                return b
        raise MalformedInput("no covering ball")  # pragma: no cover


@dataclass(frozen=True)
class RotationSystem:
    """Per-vertex clockwise cyclic order of neighbors."""

    rotations: Tuple[Tuple[int, ...], ...]

    def rotation(self, v: int) -> Tuple[int, ...]:
        return self.rotations[v]


def validate_rotation(g: Graph, rot: RotationSystem) -> None:
    """Check neighbor sets and Euler's formula via face tracing."""
    if len(rot.rotations) != g.n:
        raise InvalidEmbedding("rotation system has the wrong number of vertices")
    for v in range(g.n):
        if sorted(rot.rotations[v]) != list(g.adj[v]):
            raise InvalidEmbedding(f"rotation at {v} does not match the adjacency")
    darts = [(u, v) for u in range(g.n) for v in g.adj[u]]
    nxt: Dict[Tuple[int, int], Tuple[int, int]] = {}
    for u, v in darts:
        ring = rot.rotations[v]
        w = ring[(ring.index(u) + 1) % len(ring)]
        nxt[(u, v)] = (v, w)
    faces = 0
    seen = set()
    for d in darts:
        if d in seen:
            continue
        faces += 1
        cur = d
        while cur not in seen:
            seen.add(cur)
            cur = nxt[cur]
    if g.n - g.m + faces != 2:
        raise InvalidEmbedding("face count violates Euler's formula")


def potential_centers(g: Graph, X: Sample) -> FrozenSet[int]:
    """Vertices v outside X+ with X+ inside the open neighborhood N(v)."""
    out = []
    for v in range(g.n):
        if X.pos_mask >> v & 1:
            continue
        nb = mask_of(g.adj[v])
        if X.pos_mask & ~nb == 0:
            out.append(v)
    return frozenset(out)


class PlanarUnitLSCS:
    """Labeled size-4 scheme for the radius-1 balls of an embedded planar graph.

    Slot layout: (u, *, *, *) when some positive's own ball realizes;
    (v1, v2, v3, z?) for three positives; (u, v, t?, *) for two; and
    (u, *, t, z?) for a single positive, where t and z are the recorded
    negatives in order.
    """

    size_bound = 4
    scheme_id = "planar-unit-lscs"

    def __init__(self, g: Graph, rot: RotationSystem,
                 space: Optional[BallSpace] = None) -> None:
        validate_rotation(g, rot)
        self.g = g
        self.rot = rot
        self.space = space if space is not None else BallSpace(g)
        self.D = self.space.D
        self.family = self.space.radius_family(1)
        self.proper_family = self.family
        self._n1 = [self.space.ball_mask(v, 1) for v in range(g.n)]

    def _unit_realizes(self, u: int, X: Sample) -> bool:
        m = self._n1[u]
        return X.pos_mask & ~m == 0 and X.neg_mask & m == 0

    # --- shared circular orders -------------------------------------------

    def _ell_uv(self, u: int, v: int) -> List[int]:
        """Common neighbors of u and v in the cyclic order around u, starting
        after v when u and v are adjacent (the cut is otherwise irrelevant)."""
        ring = self.rot.rotation(u)
        nv = set(self.g.adj[v])
        if v in ring:
            i = ring.index(v)
            ring = ring[i + 1:] + ring[:i + 1]
            common = [w for w in ring if w in nv]
        else:
            common = [w for w in ring if w in nv]
            if common:
                j = common.index(min(common))
                common = common[j:] + common[:j]
        return common

    def _ell_u(self, u: int) -> List[int]:
        ring = self.rot.rotation(u)
        j = ring.index(min(ring))
        return list(ring[j:] + ring[:j])

    # --- compressor ---------------------------------------------------------

    def compress(self, X: Sample) -> CompressedSample:
        if not self.space.realizable(X, self.family):
            raise NotRealizable(f"{X!r} has no realizing unit ball")
        pos = sorted(X.pos)
        if not pos:
            return CompressedSample((None,) * 4)
        for u in pos:
            if self._unit_realizes(u, X):
                return CompressedSample(((u, 1), None, None, None))
        if len(pos) >= 3:
            return self._compress_three(X, pos)
        if len(pos) == 2:
            return self._compress_two(X, pos)
        return self._compress_one(X, pos[0])

    def _compress_three(self, X: Sample, pos: List[int]) -> CompressedSample:
        centers = potential_centers(self.g, X)
        touched = [z for z in sorted(X.neg)
                   if any(self.g.has_edge(z, c) for c in centers)]
        first = (tuple(pos[:3]), touched[0] if touched else None)
        candidates = [first] + [
            (tri, z)
            for tri in combinations(pos, 3)
            for z in [None] + sorted(X.neg)
        ]
        for tri, z in candidates:
            u = self._decode_three(tri, z)
            if u is not None and self._unit_realizes(u, X):
                zslot = (z, -1) if z is not None else None
                return CompressedSample(((tri[0], 1), (tri[1], 1), (tri[2], 1), zslot))
        raise SchemeError("no decodable three-positive encoding")

    def _decode_three(self, tri: Sequence[int], z: Optional[int]) -> Optional[int]:
        for u in range(self.g.n):
            if u in tri:
                continue
            if any(not self.g.has_edge(u, w) for w in tri):
                continue
            if z is not None and (u == z or self.g.has_edge(u, z)):
                continue
            return u
        return None

    def _compress_two(self, X: Sample, pos: List[int]) -> CompressedSample:
        u, v = pos
        W = self._ell_uv(u, v)
        touching = any(z in W or any(self.g.has_edge(z, w) for w in W)
                       for z in X.neg)
        if not touching:
            return CompressedSample(((u, 1), (v, 1), None, None))
        k1 = len(W)
        for s in range(k1):
            if not self._unit_realizes(W[s], X):
                continue
            prev = W[(s - 1) % k1]
            for t in sorted(X.neg):
                if not (self._n1[t] >> prev & 1):
                    continue
                if self._decode_two_boundary(W, t) == W[s]:
                    return CompressedSample(((u, 1), (v, 1), (t, -1), None))
        raise SchemeError("no decodable two-positive encoding")

    def _decode_two_boundary(self, W: Sequence[int], t: int) -> Optional[int]:
        k1 = len(W)
        mt = self._n1[t]
        for s in range(k1):
            if not (mt >> W[s] & 1) and (mt >> W[(s - 1) % k1] & 1):
                return W[s]
        return None

    def _compress_one(self, X: Sample, u: int) -> CompressedSample:
        neg = sorted(X.neg)
        for t in neg:
            w = self._decode_one_single(u, t)
            if w is not None and self._unit_realizes(w, X):
                return CompressedSample(((u, 1), None, (t, -1), None))
        for t in neg:
            for z in neg:
                if z == t:
                    continue
                w = self._decode_one_double(u, t, z)
                if w is not None and self._unit_realizes(w, X):
                    return CompressedSample(((u, 1), None, (t, -1), (z, -1)))
        raise SchemeError("no decodable single-positive encoding")

    def _boundary_set(self, ring: Sequence[int], t: int) -> List[int]:
        """Indices s with ring[s] outside B_1(t) and ring[s-1] inside."""
        mt = self._n1[t]
        k1 = len(ring)
        return [s for s in range(k1)
                if not (mt >> ring[s] & 1) and (mt >> ring[(s - 1) % k1] & 1)]

    def _entry_index(self, ring: Sequence[int], t: int) -> Optional[int]:
        """w_p: the first member (circularly) of the block N(u) & B_1(t)."""
        mt = self._n1[t]
        k1 = len(ring)
        members = [i for i in range(k1) if mt >> ring[i] & 1]
        if not members or len(members) == k1:
            return None
        for i in members:
            if not (mt >> ring[(i - 1) % k1] & 1):
                return i
        return None  # pragma: no cover

    def _decode_one_single(self, u: int, t: int) -> Optional[int]:
        ring = self._ell_u(u)
        exits = self._boundary_set(ring, t)
        p = self._entry_index(ring, t)
        if p is None or not exits:
            return None
        k1 = len(ring)
        for step in range(1, k1 + 1):
            j = (p + step) % k1
            if j in exits:
                return ring[j]
        return None  # pragma: no cover

    def _decode_one_double(self, u: int, t: int, z: int) -> Optional[int]:
        ring = self._ell_u(u)
        exits = self._boundary_set(ring, t)
        if not exits:
            return None
        k1 = len(ring)
        mz = self._n1[z]
        hit = [s for s in exits if mz >> ring[s] & 1]
        if len(hit) == 1:
            wp = hit[0]
        elif len(hit) == 2:
            a, b = hit
            order = sorted(exits)
            # the designated exit is the W-successor of the other
            ia, ib = order.index(a), order.index(b)
            if order[(ia + 1) % len(order)] == b:
                wp = b
            elif order[(ib + 1) % len(order)] == a:
                wp = a
            else:
                return None
        else:
            return None
        order = sorted(exits)
        return ring[order[(order.index(wp) + 1) % len(order)]]

    # --- reconstructor ------------------------------------------------------

    def reconstruct(self, Y: CompressedSample) -> Ball:
        if len(Y.slots) != 4:
            raise MalformedInput("planar vectors have four slots")
        s0, s1, s2, s3 = Y.slots
        if all(e is None for e in Y.slots):
            return empty_ball()
        if s0 is not None and s0[1] > 0 and s1 is None and s2 is None and s3 is None:
            return self.space.ball(s0[0], 1)
        if s0 is not None and s1 is not None and s2 is not None and s2[1] > 0:
            tri = (s0[0], s1[0], s2[0])
            z = s3[0] if s3 is not None else None
            u = self._decode_three(tri, z)
            if u is None:
                raise MalformedInput("no common neighbor for the positive triple")
            return self.space.ball(u, 1)
        if s0 is not None and s1 is not None and s1[1] > 0:
            u, v = s0[0], s1[0]
            W = self._ell_uv(u, v)
            if s2 is None:
                if not W:
                    raise MalformedInput("positives have no common neighbor")
                return self.space.ball(min(W), 1)
            w = self._decode_two_boundary(W, s2[0])
            if w is None:
                raise MalformedInput("negative does not cut the center cycle")
            return self.space.ball(w, 1)
        if s0 is not None and s2 is not None:
            u, t = s0[0], s2[0]
            if s3 is None:
                w = self._decode_one_single(u, t)
            else:
                w = self._decode_one_double(u, t, s3[0])
            if w is None:
                raise MalformedInput("negatives do not locate a center")
            return self.space.ball(w, 1)
        raise MalformedInput(f"unexpected slot pattern {Y!r}")


def split_compress(g: Graph, part: SplitPartition, X: Sample) -> CompressedSample:
    return SplitLSCS(g, part).compress(X)


def split_reconstruct(g: Graph, part: SplitPartition, Y: CompressedSample) -> Ball:
    return SplitLSCS(g, part).reconstruct(Y)


def planar_unit_compress(g: Graph, rot: RotationSystem, X: Sample) -> CompressedSample:
    return PlanarUnitLSCS(g, rot).compress(X)


def planar_unit_reconstruct(g: Graph, rot: RotationSystem, Y: CompressedSample) -> Ball:
    return PlanarUnitLSCS(g, rot).reconstruct(Y)
