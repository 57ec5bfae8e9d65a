"""The four tree schemes: a size-2 unlabeled scheme for all balls (metric
variant), a size-2 labeled scheme for all balls, and two fixed-radius labeled
schemes (the size-2 vector scheme and the size-6 scheme that carries no slot
order information).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, FrozenSet, List, Optional, Tuple, Union

from .errors import GraphError, MalformedInput, NotRealizable, SchemeError, Undefined
from .graph import (Graph, SphereOrder, diametral_pair, dfs_sphere_order, phi)
from .oracle import Ball, BallSpace, CompressedSample, Sample, empty_ball, mask_of, set_of


@dataclass(frozen=True)
class MetricBall:
    """A ball of the metric tree: the center may be an edge midpoint and the
    radius a half-integer; ``members`` is its trace on the vertex set."""

    center: Union[None, int, Tuple[int, int]]
    radius: Optional[Fraction]
    members: FrozenSet[int]

    @property
    def mask(self) -> int:
        return mask_of(self.members)

    @property
    def empty(self) -> bool:
        return not self.members


class _TreeScheme:
    def __init__(self, tree: Graph, space: Optional[BallSpace] = None) -> None:
        if not tree.is_tree():
            raise GraphError("scheme requires a tree")
        self.t = tree
        self.space = space if space is not None else BallSpace(tree)
        self.D = self.space.D

    def _on_interval(self, u: int, v: int, dist_from_u: int) -> int:
        """The unique vertex of I(u, v) at the given distance from u."""
        du, dv = self.D[u], self.D[v]
        duv = du[v]
        for z in range(self.t.n):
            if du[z] == dist_from_u and du[z] + dv[z] == duv:
                return z
        raise MalformedInput(f"no vertex of I({u},{v}) at distance {dist_from_u} from {u}")

    def _require_realizable(self, X: Sample, family=None) -> None:
        if not self.space.realizable(X, family):
            raise NotRealizable(f"{X!r} has no realizing ball")


class TreeBallUSCS(_TreeScheme):
    """Unlabeled size-2 scheme for all balls of a metric tree: compress to a
    diametral pair, reconstruct to the metric ball centered mid-path."""

    scheme_id = "tree-uscs"
    size_bound = 2

    @property
    def family(self):
        return self.space.balls

    proper_family = None  # proper relative to metric balls, not B(T)

    def compress(self, X: Sample) -> FrozenSet[int]:
        self._require_realizable(X)
        pos = X.pos
        if len(pos) < 2:
            return frozenset(pos)
        return frozenset(diametral_pair(self.D, pos))

    def reconstruct(self, Y) -> MetricBall:
        vs = sorted(Y)
        if not vs:
            return MetricBall(None, None, frozenset())
        if len(vs) == 1:
            return MetricBall(vs[0], Fraction(0), frozenset(vs))
        if len(vs) != 2:
            raise MalformedInput("unlabeled tree scheme takes at most 2 vertices")
        u, v = vs
        d = self.D[u][v]
        if d % 2 == 0:
            c = self._on_interval(u, v, d // 2)
            return MetricBall(c, Fraction(d, 2), set_of(self.space.ball_mask(c, d // 2)))
        a = self._on_interval(u, v, (d - 1) // 2)
        b = self._on_interval(u, v, (d + 1) // 2)
        rr = (d - 1) // 2
        trace = self.space.ball_mask(a, rr) | self.space.ball_mask(b, rr)
        return MetricBall((min(a, b), max(a, b)), Fraction(d, 2), set_of(trace))


class TreeBallLSCS(_TreeScheme):
    """Labeled size-2 scheme for all balls of a combinatorial tree."""

    scheme_id = "tree-lscs"
    size_bound = 2

    @property
    def family(self):
        return self.space.balls

    @property
    def proper_family(self):
        return self.space.balls

    def compress(self, X: Sample) -> CompressedSample:
        self._require_realizable(X)
        pos = sorted(X.pos)
        if len(pos) == 0:
            return CompressedSample((None, None))
        if len(pos) == 1:
            return CompressedSample(((pos[0], 1), None))
        u, v = diametral_pair(self.D, pos)
        d = self.D[u][v]
        r = (d + 1) // 2
        x = self._on_interval(u, v, d // 2)
        y = self._on_interval(u, v, r)
        mx = self.space.ball_mask(x, r)
        my = self.space.ball_mask(y, r)
        ok_x = X.pos_mask & ~mx == 0 and X.neg_mask & mx == 0
        ok_y = X.pos_mask & ~my == 0 and X.neg_mask & my == 0
        if ok_x and ok_y:
            return CompressedSample(((u, 1), (v, 1)))
        if ok_x:
            w = min(set_of(X.neg_mask & my & ~mx))
            return CompressedSample(((u, 1), (w, -1)))
        if ok_y:
            w = min(set_of(X.neg_mask & mx & ~my))
            return CompressedSample(((v, 1), (w, -1)))
        raise SchemeError("neither mid-path ball realizes the sample")  # pragma: no cover

    def reconstruct(self, Y: CompressedSample) -> Ball:
        pos = [v for v, s in Y.entries() if s > 0]
        neg = [v for v, s in Y.entries() if s < 0]
        if not pos and not neg:
            return empty_ball()
        if len(pos) == 1 and not neg:
            return self.space.ball(pos[0], 0)
        if len(pos) == 2 and not neg:
            u, v = pos
            r = (self.D[u][v] + 1) // 2
            for c in range(self.t.n):
                if self.D[c][u] <= r and self.D[c][v] <= r:
                    return self.space.ball(c, r)
            raise MalformedInput("no ball of the forced radius contains the pair")
        if len(pos) == 1 and len(neg) == 1:
            u, w = pos[0], neg[0]
            d = self.D[u][w]
            if d % 2:
                raise MalformedInput("positive/negative pair at odd distance")
            r = d // 2
            x = self._on_interval(u, w, r - 1)
            return self.space.ball(x, r)
        raise MalformedInput(f"unexpected slot pattern {Y!r}")


class _FixedRadiusBase(_TreeScheme):
    """Shared case analysis for the two fixed-radius tree schemes."""

    def __init__(self, tree: Graph, r: int, space: Optional[BallSpace] = None) -> None:
        super().__init__(tree, space)
        if r < 0:
            raise GraphError("radius must be nonnegative")
        self.r = r
        self.family = self.space.radius_family(r)
        self.proper_family = self.family
        self._orders: Dict[int, SphereOrder] = {}

    def _order(self, s: int) -> SphereOrder:
        so = self._orders.get(s)
        if so is None:
            so = dfs_sphere_order(self.t, s, self.r + 1)
            self._orders[s] = so
        return so

    def _mask(self, x: int) -> int:
        return self.space.ball_mask(x, self.r)

    def _realizes(self, x: int, X: Sample) -> bool:
        m = self._mask(x)
        return X.pos_mask & ~m == 0 and X.neg_mask & m == 0

    def _phi(self, s: int, t: int, sign: str) -> Optional[int]:
        try:
            return phi(self.t, self.D, self._order(s), t, self.r, sign)
        except Undefined:
            return None

    def _case1(self, X: Sample) -> bool:
        """Every r-ball containing X+ avoids X-."""
        pos, neg = X.pos_mask, X.neg_mask
        for x in range(self.t.n):
            m = self._mask(x)
            if pos & ~m == 0 and neg & m:
                return False
        return True

    def _case2(self, X: Sample) -> Optional[int]:
        """Some s in X- whose whole sphere S_{r+1}(s) consists of realizing centers."""
        for s in sorted(X.neg):
            row = self.D[s]
            sph = [z for z in range(self.t.n) if row[z] == self.r + 1]
            if sph and all(self._realizes(x, X) for x in sph):
                return s
        return None

    def _designators(self, X: Sample):
        """All (s, t, sign) with t a center designator of s, ascending."""
        support = sorted(X.support)
        for s in sorted(X.neg):
            for t in support:
                if t == s:
                    continue
                sign = "+" if X.sign(t) > 0 else "-"
                x = self._phi(s, t, sign)
                if x is not None and self._realizes(x, X):
                    yield s, t, sign

    # canonical "any ball" choices: smallest center id
    def _ball_containing(self, mask: int) -> Ball:
        for x in range(self.t.n):
            if mask & ~self._mask(x) == 0:
                return self.space.ball(x, self.r)
        raise MalformedInput("no r-ball contains the requested vertices")

    def _ball_avoiding(self, mask: int) -> Ball:
        for x in range(self.t.n):
            if mask & self._mask(x) == 0:
                return self.space.ball(x, self.r)
        raise MalformedInput("no r-ball avoids the requested vertices")

    def _ball_on_sphere(self, s: int) -> Ball:
        row = self.D[s]
        for z in range(self.t.n):
            if row[z] == self.r + 1:
                return self.space.ball(z, self.r)
        raise MalformedInput(f"S_{self.r + 1}({s}) is empty")

    def _ball_at(self, x: int) -> Ball:
        return self.space.ball(x, self.r)


class TreeFixedRadiusLSCS(_FixedRadiusBase):
    """Labeled size-2 vector scheme for the balls of one fixed radius."""

    size_bound = 2

    @property
    def scheme_id(self) -> str:
        return f"tree-fixed-r{self.r}"

    def compress(self, X: Sample) -> CompressedSample:
        self._require_realizable(X, self.family)
        if X.pos_mask == 0:
            return CompressedSample((None, None))
        if self._case1(X):
            u, v = diametral_pair(self.D, X.pos)
            if u == v:
                return CompressedSample(((u, 1), None))
            return CompressedSample(((u, 1), (v, 1)))
        s = self._case2(X)
        if s is not None:
            return CompressedSample(((s, -1), None))
        for s, t, sign in self._designators(X):
            if sign == "-":
                return CompressedSample(((s, -1), (t, -1)))  # order: designated, designator
            return CompressedSample(((s, -1), (t, 1)))
        raise SchemeError("no case of the fixed-radius scheme applies")  # pragma: no cover

    def reconstruct(self, Y: CompressedSample) -> Ball:
        entries = Y.entries()
        pos = [v for v, s in entries if s > 0]
        neg = [v for v, s in entries if s < 0]
        if not entries:
            return empty_ball()
        if not neg:  # case (1): any r-ball containing the positives
            return self._ball_containing(mask_of(pos))
        if not pos and len(neg) == 1:  # case (2)
            return self._ball_on_sphere(neg[0])
        if not pos and len(neg) == 2:  # case (3'): slot order carries the roles
            s, t = (e[0] for e in entries if e is not None)
            y = self._phi(s, t, "-")
            if y is None:
                raise MalformedInput("negative designator does not cut the sphere")
            return self._ball_at(y)
        if len(pos) == 1 and len(neg) == 1:  # case (3'')
            y = self._phi(neg[0], pos[0], "+")
            if y is None:
                raise MalformedInput("positive designator does not cut the sphere")
            return self._ball_at(y)
        raise MalformedInput(f"unexpected slot pattern {Y!r}")


class TreeFixedRadiusNoInfo(_FixedRadiusBase):
    """Labeled size-6 fixed-radius scheme without slot-order information.

    Slots are emitted sorted by vertex id and the reconstructor never reads
    their order: the global labeling (vertex ids) disambiguates which
    negative vertex designates which, at the price of up to 6 slots.
    """

    size_bound = 6

    @property
    def scheme_id(self) -> str:
        return f"tree-noinfo-r{self.r}"

    @staticmethod
    def _pack(signed) -> CompressedSample:
        return CompressedSample(tuple(sorted(signed)))

    def compress(self, X: Sample) -> CompressedSample:
        self._require_realizable(X, self.family)
        if X.pos_mask == 0:
            return CompressedSample(())
        if self._case1(X):
            u, v = diametral_pair(self.D, X.pos)
            return self._pack({(u, 1), (v, 1)})
        s = self._case2(X)
        if s is not None:
            return self._pack({(s, -1)})
        negative_pairs: List[Tuple[int, int]] = []
        for s, t, sign in self._designators(X):
            if sign == "+":
                return self._pack({(s, -1), (t, 1)})
            negative_pairs.append((s, t))
        if not negative_pairs:
            raise SchemeError("no case of the fixed-radius scheme applies")  # pragma: no cover
        return self._encode_negative_pair(X, negative_pairs)

    def _encode_negative_pair(self, X: Sample, pairs: List[Tuple[int, int]]) -> CompressedSample:
        """Encoding lines (1)-(6): pad a both-negative designator pair so the
        reconstructor can tell the designator apart by vertex id alone."""
        neg = sorted(X.neg)
        # (1) a pair already ordered as the decoder will guess, or a full 2-sample
        well = sorted((s, t) for s, t in pairs if s < t)
        if well:
            s, t = well[0]
            return self._pack({(s, -1), (t, -1)})
        if len(X.support) == 2:
            return self._pack({(v, -1) for v in neg})
        # (2) pad with a positive vertex; decoder line (5) sorts the negatives
        if X.pos_mask:
            s, t = min(pairs)
            return self._pack({(s, -1), (t, -1), (min(X.pos), 1)})
        # From here on X+ is empty (unreachable in this artifact: empty-positive
        # samples take the empty compression above; kept to mirror the scheme).
        for s, t in sorted(pairs):  # (3)
            above = [p for p in neg if p > s and p != t]
            if above:
                return self._pack({(s, -1), (t, -1), (above[0], -1)})
        if len(neg) == 3:
            return self._pack({(v, -1) for v in neg})
        for s, t in sorted(pairs):  # (4)
            between = [p for p in neg if t < p < s]
            if len(between) >= 2:
                return self._pack({(s, -1), (t, -1), (between[0], -1), (between[1], -1)})
        if len(neg) == 4:
            return self._pack({(v, -1) for v in neg})
        for s, t in sorted(pairs):  # (5)
            between = [p for p in neg if t < p < s]
            below = [p for p in neg if p < t]
            if between and len(below) >= 2:
                return self._pack({(s, -1), (t, -1), (between[0], -1),
                                   (below[0], -1), (below[1], -1)})
        if len(neg) == 5:
            return self._pack({(v, -1) for v in neg})
        s, t = min(pairs)  # (6): here s = max(X-) and t = second max
        pad = [p for p in neg if p not in (s, t)][:4]
        return self._pack({(s, -1), (t, -1)} | {(p, -1) for p in pad})

    def reconstruct(self, Y: CompressedSample) -> Ball:
        entries = Y.entries()
        pos = sorted(v for v, s in entries if s > 0)
        neg = sorted(v for v, s in entries if s < 0)
        if not entries:
            return empty_ball()
        if not pos and len(neg) == 1:  # line (1)
            return self._ball_on_sphere(neg[0])
        if pos and not neg:  # line (2)
            return self._ball_containing(mask_of(pos))
        if len(pos) == 1 and len(neg) == 1:  # line (3)
            y = self._phi(neg[0], pos[0], "+")
            if y is None:
                raise MalformedInput("positive designator does not cut the sphere")
            return self._ball_at(y)
        if len(pos) == 1 and len(neg) == 2:  # line (5): s = larger id
            y = self._phi(neg[1], neg[0], "-")
            if y is None:
                raise MalformedInput("negative designator does not cut the sphere")
            return self._ball_at(y)
        if not pos and 2 <= len(neg) <= 5:  # lines (4), (6), (7), (8)
            s, t = self._guess_pair(neg)
            y = self._phi(s, t, "-")
            if y is not None and self._mask(y) & mask_of(neg) == 0:
                return self._ball_at(y)
            return self._ball_avoiding(mask_of(neg))
        if not pos and len(neg) == 6:  # line (9): s = max id, t = second max
            y = self._phi(neg[-1], neg[-2], "-")
            if y is None:
                raise MalformedInput("negative designator does not cut the sphere")
            return self._ball_at(y)
        raise MalformedInput(f"unexpected slot pattern {Y!r}")

    @staticmethod
    def _guess_pair(neg: List[int]) -> Tuple[int, int]:
        """The decoder's (s, t) guess for all-negative sets, by vertex id."""
        if len(neg) == 2:  # line (4)
            return neg[0], neg[1]
        if len(neg) == 3:  # line (6): ids ordered t < s < p
            return neg[1], neg[0]
        if len(neg) == 4:  # line (7): t = min, s = max
            return neg[-1], neg[0]
        return neg[-1], neg[2]  # line (8): w < q < t < p < s


@lru_cache(maxsize=64)
def _uscs(tree: Graph) -> TreeBallUSCS:
    return TreeBallUSCS(tree)


@lru_cache(maxsize=64)
def _lscs(tree: Graph) -> TreeBallLSCS:
    return TreeBallLSCS(tree)


@lru_cache(maxsize=64)
def _fixed(tree: Graph, r: int) -> TreeFixedRadiusLSCS:
    return TreeFixedRadiusLSCS(tree, r)


@lru_cache(maxsize=64)
def _noinfo(tree: Graph, r: int) -> TreeFixedRadiusNoInfo:
    return TreeFixedRadiusNoInfo(tree, r)


def tree_uscs_compress(T: Graph, X: Sample) -> FrozenSet[int]:
    return _uscs(T).compress(X)


def tree_uscs_reconstruct(T: Graph, Y) -> MetricBall:
    return _uscs(T).reconstruct(Y)


def tree_lscs_compress(T: Graph, X: Sample) -> CompressedSample:
    return _lscs(T).compress(X)


def tree_lscs_reconstruct(T: Graph, Y: CompressedSample) -> Ball:
    return _lscs(T).reconstruct(Y)


def tree_fixed_r_compress(T: Graph, r: int, X: Sample) -> CompressedSample:
    return _fixed(T, r).compress(X)


def tree_fixed_r_reconstruct(T: Graph, r: int, Y: CompressedSample) -> Ball:
    return _fixed(T, r).reconstruct(Y)


def tree_fixed_r_noinfo_compress(T: Graph, r: int, X: Sample) -> CompressedSample:
    return _noinfo(T, r).compress(X)


def tree_fixed_r_noinfo_reconstruct(T: Graph, r: int, Y: CompressedSample) -> Ball:
    return _noinfo(T, r).reconstruct(Y)
