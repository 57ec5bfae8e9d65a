"""Exact four-point hyperbolicity and the approximate size-2 scheme.

The compressor keeps a diametral pair of the positives; the reconstructor
returns the ball around the midpoint of the canonical geodesic between them.
With delta the graph's hyperbolicity, positives stay within radius r + 2*delta
and negatives stay outside radius r - 3*delta (minus one more unit when the
pair distance is odd, because the midpoint is rounded to a vertex).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Optional, Tuple

from .errors import MalformedInput, NotRealizable
from .graph import DistanceMatrix, Graph, canonical_path, diametral_pair
from .oracle import Ball, BallSpace, CompressedSample, Sample, empty_ball


@dataclass(frozen=True)
class Hyperbolicity:
    """delta and a quadruple attaining it."""

    delta: Fraction
    witness: Tuple[int, int, int, int]


def hyperbolicity(g: Graph, D: Optional[DistanceMatrix] = None) -> Hyperbolicity:
    """Exact O(n^4) evaluation of the four-point condition: half the maximum
    gap between the two largest of the three pairing sums."""
    if D is None:
        from .graph import all_pairs_distances
        D = all_pairs_distances(g)
    best = Fraction(0)
    witness = (0, 0, 0, 0)
    n = g.n
    for u, v, x, y in combinations(range(n), 4):
        s1 = D[u][v] + D[x][y]
        s2 = D[u][x] + D[v][y]
        s3 = D[u][y] + D[v][x]
        _, mid, top = sorted((s1, s2, s3))
        gap = Fraction(top - mid, 2)
        if gap > best:
            best = gap
            witness = (u, v, x, y)
    return Hyperbolicity(best, witness)


class HyperbolicApproxLSCS:
    """(2*delta, 3*delta)-approximate labeled scheme of size 2 for all balls
    (3*delta + 1 on the negative side when the diametral distance is odd)."""

    size_bound = 2
    scheme_id = "hyperbolic-approx-lscs"

    def __init__(self, g: Graph, space: Optional[BallSpace] = None) -> None:
        self.g = g
        self.space = space if space is not None else BallSpace(g)
        self.D = self.space.D
        self.delta = hyperbolicity(g, self.D).delta

    @property
    def family(self):
        return self.space.balls

    proper_family = None  # approximate scheme: consistency is (rho, mu)-relative

    def compress(self, X: Sample) -> CompressedSample:
        if not self.space.realizable(X):
            raise NotRealizable(f"{X!r} has no realizing ball")
        pos = sorted(X.pos)
        if not pos:
            return CompressedSample((None, None))
        if len(pos) == 1:
            return CompressedSample(((pos[0], 1), None))
        u, v = diametral_pair(self.D, pos)
        return CompressedSample(((u, 1), (v, 1)))

    def reconstruct(self, Y: CompressedSample) -> Ball:
        entries = Y.entries()
        if not entries:
            return empty_ball()
        if len(entries) == 1:
            if entries[0][1] < 0:
                raise MalformedInput("single negative slot")
            return self.space.ball(entries[0][0], 0)
        (y1, _), (y2, _) = entries
        a, b = min(y1, y2), max(y1, y2)
        d = self.D[a][b]
        path = canonical_path(self.g, a, b)
        x = path[d // 2]
        return self.space.ball(x, (d + 1) // 2)

    def approx_params(self, X: Sample, cs: CompressedSample, ball: Ball) -> Tuple[Fraction, Fraction]:
        """(rho, mu) for the verifier: mu loses one unit on odd pair distances
        (the vertex midpoint concedes at most 1 on the negative side)."""
        entries = cs.entries() if isinstance(cs, CompressedSample) else []
        if len(entries) == 2:
            d = self.D[entries[0][0]][entries[1][0]]
            extra = 1 if d % 2 else 0
        else:
            extra = 0
        return 2 * self.delta, 3 * self.delta + extra


@lru_cache(maxsize=64)
def _hyp(g: Graph) -> HyperbolicApproxLSCS:
    return HyperbolicApproxLSCS(g)


def hyp_compress(g: Graph, X: Sample) -> CompressedSample:
    return _hyp(g).compress(X)


def hyp_reconstruct(g: Graph, Y: CompressedSample) -> Ball:
    return _hyp(g).reconstruct(Y)
