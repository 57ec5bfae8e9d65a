"""Line-oriented ASCII formats: graphs, samples, rotation systems, interval
representations, compressed samples and verification reports.

All formats accept '#' comments and blank lines; indices are decimal.
Parse/serialize round-trips are stable modulo whitespace.
"""

from __future__ import annotations

from fractions import Fraction
from typing import List, Optional, Tuple

from .errors import ParseError
from .graph import Graph
from .intervals import IntervalRepresentation
from .oracle import CompressedSample, Sample, VerificationReport
from .splitplanar import RotationSystem


def _lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line


def parse_graph(text: str) -> Graph:
    """Header "n m" followed by m edge lines "u v"."""
    rows = list(_lines(text))
    if not rows:
        raise ParseError("empty graph file")
    lineno, header = rows[0]
    parts = header.split()
    if len(parts) != 2:
        raise ParseError("expected header 'n m'", lineno, 1)
    try:
        n, m = int(parts[0]), int(parts[1])
    except ValueError:
        raise ParseError("non-integer header", lineno, 1)
    if len(rows) - 1 != m:
        raise ParseError(f"expected {m} edge lines, found {len(rows) - 1}", lineno, 1)
    edges = []
    for lineno, line in rows[1:]:
        parts = line.split()
        if len(parts) != 2:
            raise ParseError("expected edge 'u v'", lineno, 1)
        try:
            edges.append((int(parts[0]), int(parts[1])))
        except ValueError:
            raise ParseError("non-integer vertex id", lineno, 1)
    return Graph(n, edges)


def serialize_graph(g: Graph) -> str:
    lines = [f"{g.n} {g.m}"]
    lines += [f"{u} {v}" for u, v in sorted(g.edges)]
    return "\n".join(lines) + "\n"


def parse_sample(text: str, n: int) -> Sample:
    """Lines "+ v" / "- v"; omitted vertices are 0."""
    pos, neg = [], []
    for lineno, line in _lines(text):
        parts = line.split()
        if len(parts) != 2 or parts[0] not in "+-":
            raise ParseError("expected '+ v' or '- v'", lineno, 1)
        try:
            v = int(parts[1])
        except ValueError:
            raise ParseError("non-integer vertex id", lineno, 3)
        (pos if parts[0] == "+" else neg).append(v)
    try:
        return Sample.from_sets(n, pos, neg)
    except ValueError as exc:
        raise ParseError(str(exc))


def serialize_sample(X: Sample) -> str:
    lines = [f"+ {v}" for v in sorted(X.pos)]
    lines += [f"- {v}" for v in sorted(X.neg)]
    return "\n".join(lines) + ("\n" if lines else "")


def parse_rotation(text: str, g: Graph) -> RotationSystem:
    """Per vertex one line "v: n1 n2 ..." in clockwise order."""
    rots: List[Optional[Tuple[int, ...]]] = [None] * g.n
    for lineno, line in _lines(text):
        if ":" not in line:
            raise ParseError("expected 'v: neighbors...'", lineno, 1)
        head, tail = line.split(":", 1)
        try:
            v = int(head.strip())
            ring = tuple(int(t) for t in tail.split())
        except ValueError:
            raise ParseError("non-integer vertex id", lineno, 1)
        if not (0 <= v < g.n) or rots[v] is not None:
            raise ParseError(f"bad or repeated vertex {v}", lineno, 1)
        rots[v] = ring
    missing = [v for v in range(g.n) if rots[v] is None]
    if missing:
        raise ParseError(f"missing rotation for vertices {missing}")
    return RotationSystem(tuple(rots))


def serialize_rotation(rot: RotationSystem) -> str:
    return "".join(f"{v}: {' '.join(map(str, ring))}\n"
                   for v, ring in enumerate(rot.rotations))


def _parse_rational(token: str, lineno: int) -> Fraction:
    try:
        if "/" in token:
            p, q = token.split("/", 1)
            return Fraction(int(p), int(q))
        return Fraction(token)
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"bad rational {token!r}", lineno, 1)


def parse_intervals(text: str, n: int) -> IntervalRepresentation:
    """Per vertex one line "v s_v e_v" with rational endpoints."""
    segs: List[Optional[Tuple[Fraction, Fraction]]] = [None] * n
    for lineno, line in _lines(text):
        parts = line.split()
        if len(parts) != 3:
            raise ParseError("expected 'v s e'", lineno, 1)
        try:
            v = int(parts[0])
        except ValueError:
            raise ParseError("non-integer vertex id", lineno, 1)
        if not (0 <= v < n) or segs[v] is not None:
            raise ParseError(f"bad or repeated vertex {v}", lineno, 1)
        segs[v] = (_parse_rational(parts[1], lineno), _parse_rational(parts[2], lineno))
    missing = [v for v in range(n) if segs[v] is None]
    if missing:
        raise ParseError(f"missing segment for vertices {missing}")
    return IntervalRepresentation(tuple(segs))


def _fmt_rational(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def serialize_intervals(rep: IntervalRepresentation) -> str:
    return "".join(f"{v} {_fmt_rational(s)} {_fmt_rational(e)}\n"
                   for v, (s, e) in enumerate(rep.segments))


def serialize_compressed(cs: CompressedSample) -> str:
    def fmt(entry) -> str:
        if entry is None:
            return "*"
        return ("+" if entry[1] > 0 else "-") + str(entry[0])

    groups = cs.group_slices()
    return " | ".join(" ".join(fmt(e) for e in grp) for grp in groups)


def parse_compressed(text: str) -> CompressedSample:
    text = text.split("#", 1)[0].strip()
    if not text:
        raise ParseError("empty compressed sample")
    slots: List[Optional[Tuple[int, int]]] = []
    groups: List[int] = []
    for part in text.split("|"):
        count = 0
        for token in part.split():
            if token == "*":
                slots.append(None)
            elif token[0] in "+-":
                try:
                    slots.append((int(token[1:]), 1 if token[0] == "+" else -1))
                except ValueError:
                    raise ParseError(f"bad slot token {token!r}")
            else:
                raise ParseError(f"bad slot token {token!r}")
            count += 1
        groups.append(count)
    return CompressedSample(tuple(slots), groups=tuple(groups) if len(groups) > 1 else ())


def serialize_report(report: VerificationReport) -> str:
    return report.format() + "\n"


def parse_report(text: str) -> VerificationReport:
    rows = list(_lines(text))
    if not rows:
        raise ParseError("empty report")
    lineno, head = rows[0]
    fields = {}
    for token in head.split():
        if "=" not in token:
            raise ParseError(f"bad report field {token!r}", lineno, 1)
        key, value = token.split("=", 1)
        fields[key] = value
    try:
        report = VerificationReport(
            scheme_id=fields["scheme"],
            samples_tested=int(fields["samples"]),
            failure_count=int(fields["failures"]),
            max_support=int(fields["max_support"]),
            approx_params=fields.get("approx"),
        )
    except (KeyError, ValueError):
        raise ParseError("missing or bad report header fields", lineno, 1)
    for lineno, line in rows[1:]:
        if not line.startswith("FAIL "):
            raise ParseError("expected failure line", lineno, 1)
        body = line[5:]
        sample, _, reason = body.partition(": ")
        report.failures.append((sample, reason))
    return report
