"""Size-4 schemes for interval graphs, for all balls and for balls of one
fixed radius, driven by a segment representation with pairwise distinct ends.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Tuple

from .errors import GraphError, MalformedInput, NotRealizable
from .graph import Graph
from .oracle import Ball, BallSpace, CompressedSample, Sample, empty_ball, mask_of


@dataclass(frozen=True)
class IntervalRepresentation:
    """Per-vertex segments [s_v, e_v] of the line, all 2n endpoints distinct."""

    segments: Tuple[Tuple[Fraction, Fraction], ...]

    @classmethod
    def from_pairs(cls, pairs: Iterable[Sequence]) -> "IntervalRepresentation":
        return cls(tuple((Fraction(a), Fraction(b)) for a, b in pairs))

    def start(self, v: int) -> Fraction:
        return self.segments[v][0]

    def end(self, v: int) -> Fraction:
        return self.segments[v][1]

    def __len__(self) -> int:
        return len(self.segments)


def validate_representation(g: Graph, rep: IntervalRepresentation) -> bool:
    """True iff the segments are well-formed and realize exactly g's edges."""
    if len(rep) != g.n:
        return False
    endpoints = [x for seg in rep.segments for x in seg]
    if len(set(endpoints)) != 2 * g.n:
        return False
    if any(s > e for s, e in rep.segments):
        return False
    for u in range(g.n):
        su, eu = rep.segments[u]
        for v in range(u + 1, g.n):
            sv, ev = rep.segments[v]
            meets = max(su, sv) <= min(eu, ev)
            if meets != g.has_edge(u, v):
                return False
    return True


def farthest_pair(rep: IntervalRepresentation, pos: Iterable[int]) -> Tuple[int, int]:
    """(u+, v+): the positive whose segment ends leftmost and the one whose
    segment begins rightmost (ends are pairwise distinct, so no ties)."""
    vs = list(pos)
    if not vs:
        raise ValueError("farthest pair of an empty set")
    u = min(vs, key=rep.end)
    v = max(vs, key=rep.start)
    return u, v


class IntervalLSCS:
    """Labeled size-4 scheme for B(G) (radius=None) or B_r(G) (fixed radius).

    The compressor pairs the farthest positives with a bounding pair of
    negatives: the nearest excluded segments to the left and right of one
    realizing ball's center.  Slot layout: ((u+, v+), (p-, q-)).
    """

    size_bound = 4

    def __init__(self, g: Graph, rep: IntervalRepresentation,
                 radius: Optional[int] = None, space: Optional[BallSpace] = None) -> None:
        if not validate_representation(g, rep):
            raise GraphError("representation does not realize the graph")
        self.g = g
        self.rep = rep
        self.radius = radius
        self.space = space if space is not None else BallSpace(g)
        self.D = self.space.D
        if radius is None:
            self.family = self.space.balls
        else:
            self.family = self.space.radius_family(radius)
        self.proper_family = self.family if radius is not None else self.space.balls
        # vertices in increasing order of segment end (fixed radius-0 decoding)
        self._by_end = sorted(range(g.n), key=rep.end)

    @property
    def scheme_id(self) -> str:
        return "interval-lscs" if self.radius is None else f"interval-lscs-r{self.radius}"

    def _bounders(self, X: Sample) -> Tuple[Optional[int], Optional[int]]:
        witness = self.space.first_realizing(X, self.family)
        sx = self.rep.start(witness.center)
        ex = self.rep.end(witness.center)
        left = [p for p in X.neg if self.rep.end(p) < sx]
        right = [q for q in X.neg if self.rep.start(q) > ex]
        p = max(left, key=self.rep.end) if left else None
        q = min(right, key=self.rep.start) if right else None
        return p, q

    def compress(self, X: Sample) -> CompressedSample:
        if not self.space.realizable(X, self.family):
            raise NotRealizable(f"{X!r} has no realizing ball in the family")
        if self.radius == 0:
            return self._compress_radius_zero(X)
        pos = sorted(X.pos)
        if self.radius is None and not pos:  # (C1)
            return CompressedSample((None,) * 4, groups=(2, 2))
        if self.radius is None and len(pos) == 1:  # (C2)
            return CompressedSample(((pos[0], 1), None, None, None), groups=(2, 2))
        p, q = self._bounders(X)
        a2 = ((p, -1) if p is not None else None, (q, -1) if q is not None else None)
        if len(pos) >= 2:  # (C3)
            u, v = farthest_pair(self.rep, pos)
            a1 = ((u, 1), (v, 1)) if u != v else (None, (v, 1))
        elif len(pos) == 1:  # fixed radius >= 1, single positive
            a1 = (None, (pos[0], 1))
        else:  # fixed radius >= 1, no positives
            a1 = (None, None)
        return CompressedSample(a1 + a2, groups=(2, 2))

    def _compress_radius_zero(self, X: Sample) -> CompressedSample:
        pos = sorted(X.pos)
        if pos:
            return CompressedSample(((pos[0], 1), None, None, None), groups=(2, 2))
        for y in self._by_end:
            if not X.neg_mask >> y & 1:
                first_clean = y
                break
        idx = self._by_end.index(first_clean)
        if idx == 0:
            return CompressedSample((None,) * 4, groups=(2, 2))
        w = self._by_end[idx - 1]
        return CompressedSample((None, None, (w, -1), None), groups=(2, 2))

    def reconstruct(self, Y: CompressedSample) -> Ball:
        if len(Y.slots) != 4:
            raise MalformedInput("interval vectors have four slots")
        a1, a2 = Y.slots[0:2], Y.slots[2:4]
        if self.radius == 0:
            return self._reconstruct_radius_zero(a1, a2)
        if self.radius is None:
            if a1 == (None, None) and a2 == (None, None):  # (R1)
                return empty_ball()
            if a1[0] is not None and a1[1] is None and a2 == (None, None):  # (R2)
                return self.space.ball(a1[0][0], 0)
        contain = mask_of(e[0] for e in a1 if e is not None)
        avoid = mask_of(e[0] for e in a2 if e is not None)
        left = a2[0][0] if a2[0] is not None else None
        right = a2[1][0] if a2[1] is not None else None
        radii = (self.radius,) if self.radius is not None else range(1, max(self.space.diam, 1) + 1)
        for r in radii:
            for x in range(self.g.n):
                m = self.space.ball_mask(x, r)
                if contain & ~m or avoid & m:
                    continue
                if left is not None and not self.rep.end(left) < self.rep.start(x):
                    continue
                if right is not None and not self.rep.end(x) < self.rep.start(right):
                    continue
                return self.space.ball(x, r)
        raise MalformedInput("no ball satisfies the bounding conditions")

    def _reconstruct_radius_zero(self, a1, a2) -> Ball:
        if a1[0] is not None:
            return self.space.ball(a1[0][0], 0)
        if a2[0] is None:
            return self.space.ball(self._by_end[0], 0)
        w = a2[0][0]
        idx = self._by_end.index(w)
        if idx + 1 >= len(self._by_end):
            raise MalformedInput("no segment ends after the recorded negative")
        return self.space.ball(self._by_end[idx + 1], 0)


def iv_compress(g: Graph, rep: IntervalRepresentation, X: Sample,
                radius: Optional[int] = None) -> CompressedSample:
    return IntervalLSCS(g, rep, radius).compress(X)


def iv_reconstruct(g: Graph, rep: IntervalRepresentation, Y: CompressedSample,
                   radius: Optional[int] = None) -> Ball:
    return IntervalLSCS(g, rep, radius).reconstruct(Y)
