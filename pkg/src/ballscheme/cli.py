"""Command-line interface: generate instances, run compressors and
reconstructors, verify schemes, and query the brute-force oracles.

Exit codes: 0 success, 1 verification failures, 2 usage errors.
"""

from __future__ import annotations

import argparse
import sys
from typing import List, Optional

from . import formats
from .cactus import CactusLSCS, CycleLSCS
from .cfmedian import CubeFreeMedianLSCS
from .errors import BallSchemeError
from .generators import GenSpec, GeneratedInstance, generate
from .graph import Graph
from .hyperbolic import HyperbolicApproxLSCS, hyperbolicity
from .intervals import IntervalLSCS, IntervalRepresentation
from .oracle import BallSpace, Sample, enumerate_balls, vc_dimension, verify_scheme
from .splitplanar import PlanarUnitLSCS, RotationSystem, SplitLSCS
from .trees import (TreeBallLSCS, TreeBallUSCS, TreeFixedRadiusLSCS,
                    TreeFixedRadiusNoInfo)

SCHEME_NAMES = ("tree-uscs", "tree-lscs", "tree-fixed", "tree-noinfo", "cycle",
                "cactus", "cfmedian", "interval", "split", "planar1", "hyperbolic")

# short scheme aliases accepted per generator class
ALIASES = {
    ("tree", "uscs"): "tree-uscs",
    ("tree", "lscs"): "tree-lscs",
    ("tree", "fixed"): "tree-fixed",
    ("tree", "noinfo"): "tree-noinfo",
    ("cycle", "lscs"): "cycle",
    ("cactus", "lscs"): "cactus",
    ("cfmedian", "lscs"): "cfmedian",
    ("interval", "lscs"): "interval",
    ("split", "lscs"): "split",
    ("planar-rot", "unit"): "planar1",
    ("planar-rot", "lscs"): "planar1",
    ("random", "hyperbolic"): "hyperbolic",
}


def build_scheme(name: str, g: Graph, r: Optional[int] = None,
                 rep: Optional[IntervalRepresentation] = None,
                 rot: Optional[RotationSystem] = None,
                 space: Optional[BallSpace] = None):
    """Instantiate a scheme by name for the given graph and extras."""
    if name == "tree-uscs":
        return TreeBallUSCS(g, space)
    if name == "tree-lscs":
        return TreeBallLSCS(g, space)
    if name == "tree-fixed":
        if r is None:
            raise BallSchemeError("tree-fixed needs --r")
        return TreeFixedRadiusLSCS(g, r, space)
    if name == "tree-noinfo":
        if r is None:
            raise BallSchemeError("tree-noinfo needs --r")
        return TreeFixedRadiusNoInfo(g, r, space)
    if name == "cycle":
        return CycleLSCS(g, space)
    if name == "cactus":
        return CactusLSCS(g, space)
    if name == "cfmedian":
        return CubeFreeMedianLSCS(g, space)
    if name == "interval":
        if rep is None:
            raise BallSchemeError("interval scheme needs --intervals")
        return IntervalLSCS(g, rep, radius=r, space=space)
    if name == "split":
        return SplitLSCS(g, space=space)
    if name == "planar1":
        if rot is None:
            raise BallSchemeError("planar1 scheme needs --rotation")
        return PlanarUnitLSCS(g, rot, space)
    if name == "hyperbolic":
        return HyperbolicApproxLSCS(g, space)
    raise BallSchemeError(f"unknown scheme {name!r}")


def _verify_kwargs(scheme) -> dict:
    if isinstance(scheme, HyperbolicApproxLSCS):
        return {"proper": False, "approx": scheme.approx_params}
    if isinstance(scheme, TreeBallUSCS):
        return {"proper": False}
    return {}


def _read(path: str) -> str:
    with open(path, "r", encoding="ascii") as handle:
        return handle.read()


def _load_graph(args) -> Graph:
    return formats.parse_graph(_read(args.graph))


def _scheme_from_args(args, g: Graph):
    rep = formats.parse_intervals(_read(args.intervals), g.n) if args.intervals else None
    rot = formats.parse_rotation(_read(args.rotation), g) if args.rotation else None
    return build_scheme(args.scheme, g, r=args.r, rep=rep, rot=rot)


def _cmd_gen(args) -> int:
    params = []
    for knob in ("rows", "cols", "spokes", "density_pct"):
        value = getattr(args, knob)
        if value is not None:
            params.append((knob, value))
    spec = GenSpec(args.cls, n=args.n, seed=args.seed, params=tuple(params))
    inst = generate(spec)
    if args.out:
        with open(args.out + ".graph", "w", encoding="ascii") as handle:
            handle.write(formats.serialize_graph(inst.graph))
        written = [args.out + ".graph"]
        if inst.representation is not None:
            with open(args.out + ".intervals", "w", encoding="ascii") as handle:
                handle.write(formats.serialize_intervals(inst.representation))
            written.append(args.out + ".intervals")
        if inst.rotation is not None:
            with open(args.out + ".rotation", "w", encoding="ascii") as handle:
                handle.write(formats.serialize_rotation(inst.rotation))
            written.append(args.out + ".rotation")
        print("\n".join(written))
    else:
        sys.stdout.write(formats.serialize_graph(inst.graph))
        if inst.representation is not None:
            sys.stdout.write(formats.serialize_intervals(inst.representation))
        if inst.rotation is not None:
            sys.stdout.write(formats.serialize_rotation(inst.rotation))
    return 0


def _cmd_balls(args) -> int:
    g = _load_graph(args)
    for ball in enumerate_balls(g, radius_filter=args.radius):
        members = " ".join(map(str, sorted(ball.members)))
        print(f"{ball.radius} {ball.center} : {members}")
    return 0


def _cmd_vcdim(args) -> int:
    g = _load_graph(args)
    fam = args.family
    if fam == "balls":
        family = enumerate_balls(g)
    elif fam.startswith("balls:"):
        family = enumerate_balls(g, radius_filter=int(fam.split(":", 1)[1]))
    else:
        raise BallSchemeError(f"unknown family {fam!r}")
    print(vc_dimension(family, range(g.n)))
    return 0


def _cmd_delta(args) -> int:
    g = _load_graph(args)
    print(hyperbolicity(g).delta)
    return 0


def _cmd_compress(args) -> int:
    g = _load_graph(args)
    scheme = _scheme_from_args(args, g)
    X = formats.parse_sample(_read(args.sample), g.n)
    cs = scheme.compress(X)
    if isinstance(cs, frozenset):
        print(" ".join(str(v) for v in sorted(cs)))
    else:
        print(formats.serialize_compressed(cs))
    return 0


def _cmd_reconstruct(args) -> int:
    g = _load_graph(args)
    scheme = _scheme_from_args(args, g)
    text = _read(args.compressed)
    if args.scheme == "tree-uscs":
        Y = frozenset(int(t) for t in text.split())
    else:
        Y = formats.parse_compressed(text)
    ball = scheme.reconstruct(Y)
    if ball.empty:
        print("empty")
    else:
        members = " ".join(map(str, sorted(ball.members)))
        print(f"{ball.radius} {ball.center} : {members}")
    return 0


def _cmd_verify(args) -> int:
    if args.graph:
        g = _load_graph(args)
        inst = GeneratedInstance(g)
    else:
        spec = GenSpec(args.cls, n=args.n, seed=args.seed)
        inst = generate(spec)
        g = inst.graph
    name = ALIASES.get((args.cls, args.scheme), args.scheme)
    rep = inst.representation
    rot = inst.rotation
    if args.intervals:
        rep = formats.parse_intervals(_read(args.intervals), g.n)
    if args.rotation:
        rot = formats.parse_rotation(_read(args.rotation), g)
    scheme = build_scheme(name, g, r=args.r, rep=rep, rot=rot)
    samples = None
    if not args.exhaustive and args.samples:
        from .oracle import enumerate_realizable_samples
        samples = enumerate_realizable_samples(g, scheme.family, cap=args.samples,
                                               seed=args.seed)
    report = verify_scheme(g, scheme, samples=samples, **_verify_kwargs(scheme))
    sys.stdout.write(formats.serialize_report(report))
    return 0 if report.ok else 1


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ballscheme",
        description="Sample compression schemes for balls in graphs, with brute-force oracles.")
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="generate a graph instance")
    gen.add_argument("--class", dest="cls", required=True)
    gen.add_argument("--n", type=int, default=0)
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--rows", type=int)
    gen.add_argument("--cols", type=int)
    gen.add_argument("--spokes", type=int)
    gen.add_argument("--density-pct", dest="density_pct", type=int)
    gen.add_argument("--out", help="path prefix for .graph/.intervals/.rotation files")
    gen.set_defaults(func=_cmd_gen)

    balls = sub.add_parser("balls", help="enumerate the distinct balls")
    balls.add_argument("--graph", required=True)
    balls.add_argument("--radius", type=int)
    balls.set_defaults(func=_cmd_balls)

    vcdim = sub.add_parser("vcdim", help="VC-dimension of a ball family")
    vcdim.add_argument("--graph", required=True)
    vcdim.add_argument("--family", default="balls", help="balls or balls:R")
    vcdim.set_defaults(func=_cmd_vcdim)

    delta = sub.add_parser("delta", help="exact four-point hyperbolicity")
    delta.add_argument("--graph", required=True)
    delta.set_defaults(func=_cmd_delta)

    for cmd, fn in (("compress", _cmd_compress), ("reconstruct", _cmd_reconstruct)):
        p = sub.add_parser(cmd, help=f"{cmd} with a named scheme")
        p.add_argument("--graph", required=True)
        p.add_argument("--scheme", required=True, choices=SCHEME_NAMES)
        p.add_argument("--r", type=int)
        p.add_argument("--intervals")
        p.add_argument("--rotation")
        if cmd == "compress":
            p.add_argument("--sample", required=True)
        else:
            p.add_argument("--compressed", required=True)
        p.set_defaults(func=fn)

    verify = sub.add_parser("verify", help="verify a scheme over realizable samples")
    verify.add_argument("--class", dest="cls", default="tree")
    verify.add_argument("--scheme", required=True)
    verify.add_argument("--n", type=int, default=7)
    verify.add_argument("--seed", type=int, default=0)
    verify.add_argument("--r", type=int)
    verify.add_argument("--graph")
    verify.add_argument("--intervals")
    verify.add_argument("--rotation")
    group = verify.add_mutually_exclusive_group()
    group.add_argument("--exhaustive", action="store_true",
                       help="sweep every realizable sample (default)")
    group.add_argument("--samples", type=int, help="cap the number of samples")
    verify.set_defaults(func=_cmd_verify)
    return parser


def cli_run(argv: Optional[List[str]] = None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except BallSchemeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(cli_run())


if __name__ == "__main__":
    main()
