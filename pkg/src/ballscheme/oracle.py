"""Concept-class machinery: balls as concepts, samples as sign vectors, and
the brute-force oracles every scheme is checked against.

Vertex sets travel as int bitmasks in the hot paths (bit z = vertex z); the
public types expose ordinary frozensets on top of the masks.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, FrozenSet, Iterable, Iterator, List, Optional, Sequence, Tuple, Union

from .errors import SchemeError
from .graph import DistanceMatrix, Graph, all_pairs_distances

EXHAUSTIVE_LIMIT = 12  # 3^12 sign maps is the largest exhaustive sweep


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def bits_of(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def set_of(mask: int) -> FrozenSet[int]:
    return frozenset(bits_of(mask))


class Sample:
    """A sign assignment V -> {+1, -1, 0} with disjoint positive/negative parts."""

    __slots__ = ("n", "pos_mask", "neg_mask")

    def __init__(self, n: int, pos_mask: int = 0, neg_mask: int = 0) -> None:
        if pos_mask & neg_mask:
            raise ValueError("positive and negative parts overlap")
        if (pos_mask | neg_mask) >> n:
            raise ValueError("sample mentions vertices outside 0..n-1")
        self.n = n
        self.pos_mask = pos_mask
        self.neg_mask = neg_mask

    @classmethod
    def from_sets(cls, n: int, pos: Iterable[int] = (), neg: Iterable[int] = ()) -> "Sample":
        return cls(n, mask_of(pos), mask_of(neg))

    @property
    def pos(self) -> FrozenSet[int]:
        return set_of(self.pos_mask)

    @property
    def neg(self) -> FrozenSet[int]:
        return set_of(self.neg_mask)

    @property
    def support_mask(self) -> int:
        return self.pos_mask | self.neg_mask

    @property
    def support(self) -> FrozenSet[int]:
        return set_of(self.support_mask)

    def sign(self, v: int) -> int:
        bit = 1 << v
        if self.pos_mask & bit:
            return 1
        if self.neg_mask & bit:
            return -1
        return 0

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Sample):
            return NotImplemented
        return (self.n, self.pos_mask, self.neg_mask) == (other.n, other.pos_mask, other.neg_mask)

    def __hash__(self) -> int:
        return hash((self.n, self.pos_mask, self.neg_mask))

    def __repr__(self) -> str:
        return f"Sample(+{sorted(self.pos)}, -{sorted(self.neg)})"


class Ball:
    """A concept B_r(x).  Identity is by member set; (radius, center) is the
    canonical representative used for reproducible reconstructor outputs."""

    __slots__ = ("center", "radius", "members", "mask")

    def __init__(self, center: Optional[int], radius: Optional[int],
                 members: Iterable[int]) -> None:
        self.center = center
        self.radius = radius
        self.members = frozenset(members)
        self.mask = mask_of(self.members)

    @property
    def empty(self) -> bool:
        return not self.members

    def __contains__(self, v: int) -> bool:
        return v in self.members

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Ball):
            return NotImplemented
        return self.members == other.members

    def __hash__(self) -> int:
        return hash(self.members)

    def __repr__(self) -> str:
        if self.empty:
            return "Ball(empty)"
        return f"Ball(B_{self.radius}({self.center})={sorted(self.members)})"


def empty_ball() -> Ball:
    """The empty-ball sentinel (the reconstructor's answer when X+ is empty)."""
    return Ball(None, None, ())


Entry = Optional[Tuple[int, int]]  # (vertex, sign) or None for an empty slot


@dataclass(frozen=True)
class CompressedSample:
    """An ordered slot vector of signed vertices with empty markers.

    ``groups`` records the part boundaries of the vector (e.g. (2, 4, 8, 8)
    for the cube-free median scheme); an empty tuple means a flat vector.
    """

    slots: Tuple[Entry, ...]
    groups: Tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if self.groups and sum(self.groups) != len(self.slots):
            raise ValueError("groups do not partition the slot vector")

    @property
    def support(self) -> FrozenSet[int]:
        return frozenset(v for e in self.slots if e for v in (e[0],))

    @property
    def size(self) -> int:
        return len(self.support)

    def entries(self) -> List[Tuple[int, int]]:
        return [e for e in self.slots if e is not None]

    def group_slices(self) -> List[Tuple[Entry, ...]]:
        if not self.groups:
            return [self.slots]
        out = []
        i = 0
        for size in self.groups:
            out.append(self.slots[i:i + size])
            i += size
        return out

    def __repr__(self) -> str:
        def fmt(e: Entry) -> str:
            if e is None:
                return "*"
            return ("+" if e[1] > 0 else "-") + str(e[0])

        parts = [" ".join(fmt(e) for e in grp) for grp in self.group_slices()]
        return "<" + " | ".join(parts) + ">"


CompressedLike = Union[CompressedSample, FrozenSet[int], frozenset, set]


class BallSpace:
    """Precomputed ball structure of one graph: distances, per-vertex
    cumulative ball masks, and the canonical deduplicated ball lists."""

    def __init__(self, g: Graph, D: Optional[DistanceMatrix] = None) -> None:
        self.g = g
        self.D = D if D is not None else all_pairs_distances(g)
        self.diam = self.D.diameter
        n = g.n
        # _masks[x][r] = bitmask of B_r(x), r clamped to diam
        masks: List[List[int]] = []
        for x in range(n):
            row = self.D[x]
            cur = [0] * (self.diam + 1)
            for z in range(n):
                cur[row[z]] |= 1 << z
            acc = 0
            for r in range(self.diam + 1):
                acc |= cur[r]
                cur[r] = acc
            masks.append(cur)
        self._masks = masks
        balls: List[Ball] = []
        seen: Dict[int, Ball] = {}
        for r in range(self.diam + 1):
            for x in range(n):
                m = masks[x][r]
                if m not in seen:
                    b = Ball(x, r, set_of(m))
                    seen[m] = b
                    balls.append(b)
        self.balls: Tuple[Ball, ...] = tuple(balls)
        self._by_mask = seen

    def ball_mask(self, x: int, r: int) -> int:
        if r < 0:
            return 0
        return self._masks[x][min(r, self.diam)]

    def ball(self, x: int, r: int) -> Ball:
        return Ball(x, r, set_of(self.ball_mask(x, r)))

    def canonical(self, mask: int) -> Optional[Ball]:
        """The canonical Ball with this member set, if it is a ball."""
        return self._by_mask.get(mask)

    def radius_family(self, r: int) -> Tuple[Ball, ...]:
        """Distinct balls of radius exactly r, canonical center = smallest id."""
        out: List[Ball] = []
        seen = set()
        for x in range(self.g.n):
            m = self.ball_mask(x, r)
            if m not in seen:
                seen.add(m)
                out.append(Ball(x, r, set_of(m)))
        return tuple(out)

    def first_realizing(self, X: Sample, family: Optional[Sequence[Ball]] = None) -> Optional[Ball]:
        """First ball (canonical order) realizing X, or None."""
        pos, neg = X.pos_mask, X.neg_mask
        for b in (family if family is not None else self.balls):
            if pos & ~b.mask == 0 and neg & b.mask == 0:
                return b
        return None

    def realizable(self, X: Sample, family: Optional[Sequence[Ball]] = None) -> bool:
        return self.first_realizing(X, family) is not None


def enumerate_balls(g: Graph, D: Optional[DistanceMatrix] = None,
                    radius_filter: Optional[int] = None) -> List[Ball]:
    """All distinct balls of g (or of one radius), canonical representatives.

    Canonical representative of a member set = lexicographically smallest
    (radius, center) generating it; the list is in that order.
    """
    space = BallSpace(g, D)
    if radius_filter is None:
        return list(space.balls)
    return list(space.radius_family(radius_filter))


def realizing_balls(g: Graph, D: DistanceMatrix, X: Sample,
                    family: Sequence[Ball]) -> List[Ball]:
    """All family members containing X+ and disjoint from X-."""
    pos, neg = X.pos_mask, X.neg_mask
    return [b for b in family if pos & ~b.mask == 0 and neg & b.mask == 0]


def vc_dimension(family: Iterable[Union[Ball, Iterable[int]]],
                 universe: Iterable[int]) -> int:
    """Exhaustive VC-dimension of a set family over the given universe.

    Grows shattered sets incrementally: every subset of a shattered set is
    shattered, so candidates of size d+1 extend shattered sets of size d.
    """
    uni = sorted(set(universe))
    masks = []
    seen_masks = set()
    for c in family:
        m = c.mask if isinstance(c, Ball) else mask_of(c)
        if m not in seen_masks:
            seen_masks.add(m)
            masks.append(m)
    if not masks:
        raise ValueError("family must be nonempty")

    def shattered(vset: Tuple[int, ...]) -> bool:
        ymask = mask_of(vset)
        traces = {m & ymask for m in masks}
        return len(traces) == 1 << len(vset)

    current: List[Tuple[int, ...]] = [()]
    dim = 0
    while True:
        nxt = []
        found = set()
        for base in current:
            start = uni.index(base[-1]) + 1 if base else 0
            for v in uni[start:]:
                cand = base + (v,)
                if cand in found:
                    continue
                if shattered(cand):
                    found.add(cand)
                    nxt.append(cand)
        if not nxt:
            return dim
        dim += 1
        current = nxt


def enumerate_realizable_samples(g: Graph, family: Sequence[Union[Ball, Iterable[int]]],
                                 cap: Optional[int] = None, *, seed: int = 0,
                                 sample_count: int = 10_000) -> Iterator[Sample]:
    """Stream the realizable samples of the concept family.

    For n <= 12 this is the exhaustive lexicographic enumeration of all
    {0,+1,-1}^V sign maps (vertex 0 most significant, sign order 0 < +1 < -1,
    so the all-zero sample comes first), filtered for realizability and
    truncated at ``cap``.  For larger graphs a seeded sampler replaces
    exhaustion: it draws a concept uniformly and then signs each vertex
    consistently with it, which yields exactly the realizable samples.
    """
    n = g.n
    masks = [c.mask if isinstance(c, Ball) else mask_of(c) for c in family]
    emitted = 0
    if n <= EXHAUSTIVE_LIMIT:
        for code in range(3 ** n):
            pos = neg = 0
            c = code
            for v in range(n - 1, -1, -1):
                trit = c % 3
                c //= 3
                if trit == 1:
                    pos |= 1 << v
                elif trit == 2:
                    neg |= 1 << v
            if any(pos & ~m == 0 and neg & m == 0 for m in masks):
                yield Sample(n, pos, neg)
                emitted += 1
                if cap is not None and emitted >= cap:
                    return
    else:
        rng = random.Random(seed)
        limit = cap if cap is not None else sample_count
        while emitted < limit:
            concept = masks[rng.randrange(len(masks))]
            pos = neg = 0
            for v in range(n):
                roll = rng.random()
                if roll < 0.35:
                    if concept & (1 << v):
                        pos |= 1 << v
                    else:
                        neg |= 1 << v
            yield Sample(n, pos, neg)
            emitted += 1


@dataclass
class VerificationReport:
    """Outcome of running a scheme over a set of samples."""

    scheme_id: str
    samples_tested: int = 0
    failures: List[Tuple[str, str]] = field(default_factory=list)
    failure_count: int = 0
    max_support: int = 0
    properness_violations: int = 0
    approx_params: Optional[str] = None

    @property
    def ok(self) -> bool:
        return self.failure_count == 0

    def format(self) -> str:
        lines = [f"scheme={self.scheme_id} samples={self.samples_tested} "
                 f"failures={self.failure_count} max_support={self.max_support}"]
        if self.approx_params:
            lines[0] += f" approx={self.approx_params}"
        lines.extend(f"FAIL {sample}: {reason}" for sample, reason in self.failures)
        return "\n".join(lines)


ApproxSpec = Union[None, Tuple[Fraction, Fraction],
                   Callable[[Sample, CompressedLike, Ball], Tuple[Fraction, Fraction]]]


def verify_scheme(g: Graph, scheme, k: Optional[int] = None, proper: bool = True,
                  approx: ApproxSpec = None,
                  samples: Optional[Iterable[Sample]] = None,
                  record_limit: int = 25) -> VerificationReport:
    """Run scheme.compress / scheme.reconstruct over samples and check the
    sample compression contract.

    Checks per sample: alpha(X) <= X (signs agree, support inside X's),
    support size within the bound, and either exact consistency
    (beta restricted to the support equals X, plus properness) or, in approx
    mode, X+ inside B_{r+rho}(x) and X- outside B_{r-mu}(x).

    ``approx`` is either a (rho, mu) pair or a callable
    (sample, compressed, ball) -> (rho, mu).  Properness treats the empty
    ball as legal exactly when X+ is empty.
    """
    space: BallSpace = getattr(scheme, "space", None) or BallSpace(g)
    bound = k if k is not None else scheme.size_bound
    proper_masks = None
    if proper:
        fam = getattr(scheme, "proper_family", None)
        proper_masks = {b.mask for b in (fam if fam is not None else space.balls)}
    report = VerificationReport(scheme_id=scheme.scheme_id)
    if approx is not None and not callable(approx):
        report.approx_params = f"(rho,mu)={approx}"
    if samples is None:
        samples = enumerate_realizable_samples(g, scheme.family)

    def record(X: Sample, reason: str) -> None:
        report.failure_count += 1
        if len(report.failures) < record_limit:
            report.failures.append((repr(X), reason))

    for X in samples:
        report.samples_tested += 1
        try:
            cs = scheme.compress(X)
            ok, why = _check_alpha(X, cs, bound)
            if not ok:
                record(X, why)
                continue
            sup = _support_size(cs)
            report.max_support = max(report.max_support, sup)
            ball = scheme.reconstruct(cs)
        except SchemeError as exc:
            record(X, f"scheme error: {exc}")
            continue
        if approx is None:
            mask = ball.mask
            if X.pos_mask & ~mask or X.neg_mask & mask:
                record(X, f"inconsistent reconstruction {ball!r}")
                continue
            if proper_masks is not None and mask not in proper_masks:
                if not (ball.empty and X.pos_mask == 0):
                    report.properness_violations += 1
                    record(X, f"improper reconstruction {ball!r}")
        else:
            rho, mu = approx(X, cs, ball) if callable(approx) else approx
            if ball.empty:
                if X.pos_mask:
                    record(X, "empty ball for a sample with positives")
                continue
            outer = space.ball_mask(ball.center, int(ball.radius + rho))
            inner_r = ball.radius - mu
            inner = space.ball_mask(ball.center, int(inner_r)) if inner_r >= 0 else 0
            if X.pos_mask & ~outer:
                record(X, f"positives escape B_(r+rho) of {ball!r}")
            elif X.neg_mask & inner:
                record(X, f"negatives inside B_(r-mu) of {ball!r}")
    return report


def _check_alpha(X: Sample, cs: CompressedLike, bound: int) -> Tuple[bool, str]:
    if isinstance(cs, CompressedSample):
        for v, s in cs.entries():
            if X.sign(v) != s:
                return False, f"alpha not below X at vertex {v}"
        if cs.size > bound:
            return False, f"support {cs.size} exceeds bound {bound}"
    else:  # unlabeled: a plain vertex set inside the support
        extra = set(cs) - set(X.support)
        if extra:
            return False, f"alpha mentions vertices outside the support: {sorted(extra)}"
        if len(set(cs)) > bound:
            return False, f"support {len(set(cs))} exceeds bound {bound}"
    return True, ""


def _support_size(cs: CompressedLike) -> int:
    if isinstance(cs, CompressedSample):
        return cs.size
    return len(set(cs))
