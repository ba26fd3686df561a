"""Command line: ``python3 -m eulerqp <command> ...``.

Commands::

    continuant expand <a1,b1,...> [--n N]
    continuant count K
    continuant matrix x1,x2,...
    verify <suite> [--n N] [--dims d1,d2[;d1,d2...]] [--trials T] [--seed S] [--range R] [--mutate x,y]
    bracket eval <x> <y> [--n N] [--localise none|moment|all]
    rep sample [--n N] [--dims d1,d2] [--seed S] [--range R]

``--format json`` switches any command to JSON output.  The default seed is
taken from CONTINUANT_SEED when set.  ``verify`` exits with status 1 when an
identity fails.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .algebra import element_to_json, gamma_algebra, tensor_to_json
from .brackets import euler_bracket_table
from .continuants import matrix_continuant, parse_descriptor, continuant, term_count
from .oracle import sample_rep
from .parser import ElaborationError, ParseError, parse_element
from .reports import SUITES, SuiteConfig, run_suite


def _default_seed() -> str:
    return os.environ.get("CONTINUANT_SEED", "0")


def parse_dims(text: str) -> Tuple[Tuple[int, int], ...]:
    out = []
    for part in text.split(";"):
        items = [int(v) for v in part.split(",") if v.strip()]
        if len(items) != 2 or min(items) < 1:
            raise argparse.ArgumentTypeError(f"bad dimension vector {part!r}")
        out.append(tuple(items))
    return tuple(out)


def parse_pair(text: str) -> Tuple[str, str]:
    items = [v.strip() for v in text.split(",")]
    if len(items) != 2 or not all(items):
        raise argparse.ArgumentTypeError("expected x,y")
    return items[0], items[1]


def _frac(v: Fraction) -> str:
    return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")

    p = argparse.ArgumentParser(prog="eulerqp", description=__doc__.split("\n")[0])
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("continuant", help="Euler continuants").add_subparsers(dest="action", required=True)
    ce = c.add_parser("expand", parents=[common])
    ce.add_argument("descriptor")
    ce.add_argument("--n", type=int, default=None)
    cc = c.add_parser("count", parents=[common])
    cc.add_argument("k", type=int)
    cm = c.add_parser("matrix", parents=[common])
    cm.add_argument("values")

    v = sub.add_parser("verify", parents=[common], help="run a verification suite")
    v.add_argument("suite", choices=SUITES + ("all",))
    v.add_argument("--n", type=int, default=2)
    v.add_argument("--dims", type=parse_dims, default=None)
    v.add_argument("--trials", type=int, default=3)
    v.add_argument("--seed", default=None)
    v.add_argument("--range", dest="rng_range", type=int, default=999)
    v.add_argument("--mutate", type=parse_pair, default=None)
    v.add_argument("--timing", action="store_true", help="include timings in JSON output")

    b = sub.add_parser("bracket", help="double brackets").add_subparsers(dest="action", required=True)
    be = b.add_parser("eval", parents=[common])
    be.add_argument("x")
    be.add_argument("y")
    be.add_argument("--n", type=int, default=1)
    be.add_argument("--localise", choices=("none", "moment", "all"), default="none")

    r = sub.add_parser("rep", help="representations").add_subparsers(dest="action", required=True)
    rs = r.add_parser("sample", parents=[common])
    rs.add_argument("--n", type=int, default=1)
    rs.add_argument("--dims", type=parse_dims, default=((1, 1),))
    rs.add_argument("--seed", default=None)
    rs.add_argument("--range", dest="rng_range", type=int, default=999)
    rs.add_argument("--localise", choices=("none", "moment", "all"), default="moment")
    return p


def _emit(args, text: str, data) -> None:
    if args.format == "json":
        print(json.dumps(data, indent=2, sort_keys=True))
    else:
        print(text)


def _cmd_continuant(args) -> int:
    if args.action == "count":
        k = term_count(args.k)
        _emit(args, str(k), {"k": args.k, "terms": k})
        return 0
    if args.action == "matrix":
        xs = [Fraction(v) for v in args.values.split(",")]
        prod, form = matrix_continuant(xs)
        rows = [[_frac(Fraction(x)) for x in row] for row in prod]
        text = "\n".join(" ".join(r) for r in rows) + f"\nagrees with continuant form: {prod == form}"
        _emit(args, text, {"product": rows, "agrees": prod == form})
        return 0
    d = parse_descriptor(args.descriptor)
    n = args.n or max(int(s[1:]) for s in d.sequence)
    x = continuant(gamma_algebra(n), d)
    _emit(args, str(x), {"sequence": list(d.sequence), "terms": element_to_json(x)})
    return 0


def _cmd_verify(args) -> int:
    seed = args.seed if args.seed is not None else _default_seed()
    cfg = SuiteConfig(n=args.n, dims=args.dims, trials=args.trials, seed=seed, rng_range=args.rng_range, mutate=args.mutate)
    rep = run_suite(args.suite, cfg)
    if args.format == "json":
        print(rep.to_json(include_timing=args.timing))
    else:
        print(rep.to_text())
    return 0 if rep.passed else 1


def _cmd_bracket(args) -> int:
    alg = gamma_algebra(args.n, args.localise)
    db = euler_bracket_table(args.n, algebra=alg)
    x, y = parse_element(args.x, alg), parse_element(args.y, alg)
    t = db(x, y)
    _emit(args, t.to_text(), {"x": str(x), "y": str(y), "value": tensor_to_json(t)})
    return 0


def _cmd_rep(args) -> int:
    seed = args.seed if args.seed is not None else _default_seed()
    alg = gamma_algebra(args.n, args.localise)
    pts = [sample_rep(alg, d, seed=seed, rng_range=args.rng_range) for d in args.dims]
    data = [p.to_json() for p in pts]
    lines = []
    for p, js in zip(pts, data):
        lines.append(f"dims {js['dims']}")
        for name, rows in js["matrices"].items():
            lines.append(f"  {name} = {rows}")
    _emit(args, "\n".join(lines), data)
    return 0


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "continuant":
            return _cmd_continuant(args)
        if args.command == "verify":
            return _cmd_verify(args)
        if args.command == "bracket":
            return _cmd_bracket(args)
        return _cmd_rep(args)
    except (ParseError, ElaborationError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
