"""Command-line front end: evaluate expressions and run verification sweeps.

Exit codes: 0 pass, 1 internal error, 2 bad input or parse error,
3 unmet precondition, 4 verification failure.

Defaults for ``--prime``, ``--trials`` and ``--seed`` come, in increasing
priority, from the built-in values, a ``[rankswap]`` section of the file
named by ``--config``, the environment variables ``RANKSWAP_PRIME``,
``RANKSWAP_TRIALS`` and ``RANKSWAP_SEED``, and finally the flags.
"""

from __future__ import annotations

import argparse
import configparser
import json
import os
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction

from . import verify as V
from .bracket import BracketParams, bracket
from .errors import InvalidInput, ParseError, RankSwapError
from .fraction_field import FractionElement
from .grassmannian import SchubertIndex
from .networks import fixture, parse_network
from .parser import parse_expr, to_value
from .rank import DEFAULT_PRIME, DEFAULT_TRIALS, RankContext, is_zero_rank_n, reduce
from .ring import PointSet, Polynomial, render

EXIT_OK = 0
EXIT_VERIFY_FAILED = 4


@dataclass
class Report:
    task: str
    parameters: dict
    items: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return V.all_passed(self.items)

    def to_dict(self, timings: bool = False) -> dict:
        return {
            "task": self.task,
            "parameters": self.parameters,
            "items": [it.to_dict(timings) for it in self.items],
            "pass": self.passed,
        }

    def to_json(self, timings: bool = False) -> str:
        return json.dumps(self.to_dict(timings), indent=2, sort_keys=True) + "\n"

    def to_text(self, timings: bool = False) -> str:
        if self.items and all("value" in it.detail for it in self.items):
            return "".join(it.detail["value"] + "\n" for it in self.items)
        lines = [f"task: {self.task}"]
        lines += [f"  {k}: {v}" for k, v in self.parameters.items() if v is not None]
        for it in self.items:
            if "value" in it.detail:
                lines.append(it.detail["value"])
                continue
            mark = "ok  " if it.passed else "FAIL"
            extra = f" trials={it.trials}" if it.trials else ""
            if timings:
                extra += f" {it.elapsed:.4f}s"
            lines.append(f"{mark} {it.key}: {it.verdict} [{it.method}]{extra}")
            if not it.passed and it.detail:
                lines.append(f"       {json.dumps(it.detail, sort_keys=True)}")
        n_ok = sum(it.passed for it in self.items)
        lines.append(f"{'PASS' if self.passed else 'FAIL'}: {n_ok}/{len(self.items)} items")
        return "\n".join(lines) + "\n"


# -- argument handling ---------------------------------------------------------------


def _scalar(text: str):
    try:
        q = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None
    return q.numerator if q.denominator == 1 else q


def _subset(text: str) -> tuple:
    try:
        I = tuple(int(t) for t in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"subset must look like 1,2,4: {text!r}") from None
    if any(b <= a for a, b in zip(I, I[1:])):
        raise argparse.ArgumentTypeError(f"subset must be strictly increasing: {text!r}")
    return I


def _json_scalar(x):
    if isinstance(x, Fraction):
        return str(x)
    return x


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--points", type=int, default=None, help="number of points r on the circle")
    common.add_argument("--rank", type=int, default=None, help="rank n of the quotient")
    common.add_argument("--alpha", type=_scalar, default=1)
    common.add_argument("--beta", type=_scalar, default=0)
    common.add_argument("--subset", type=_subset, default=None, help="Schubert cell index set, e.g. 1,2")
    common.add_argument("--prime", type=int, default=None, help="oracle modulus")
    common.add_argument("--trials", type=int, default=None, help="oracle trials T")
    common.add_argument("--seed", type=int, default=None)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--config", default=None, help="INI file with a [rankswap] section")
    common.add_argument("--timings", action="store_true", help="include elapsed times (breaks byte-identical output)")

    ap = argparse.ArgumentParser(prog="rankswap", description="Rank-n swapping algebra toolkit.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bracket", parents=[common], help="bracket of two expressions")
    p.add_argument("--expr", action="append", required=True, help="give exactly twice")
    p = sub.add_parser("reduce", parents=[common], help="normal form modulo the minor ideal")
    p.add_argument("--expr", required=True)
    p = sub.add_parser("iszero", parents=[common], help="layered zero test in the rank-n quotient")
    p.add_argument("--expr", required=True)

    vp = sub.add_parser("verify", help="verification sweeps")
    vsub = vp.add_subparsers(dest="target", required=True)
    vsub.add_parser("jacobi", parents=[common])
    vsub.add_parser("poisson-ideal", parents=[common])
    p = vsub.add_parser("boundary-lemma", parents=[common])
    p.add_argument("--ranges", choices=("closed", "open", "printed"), default="closed")
    p = vsub.add_parser("det-ratio-independence", parents=[common])
    p.add_argument("--samples", type=int, default=50)
    p = vsub.add_parser("lemma01", parents=[common])
    p.add_argument("--method", choices=("pointwise", "symbolic"), default="pointwise")
    p = vsub.add_parser("main-theorem", parents=[common])
    p.add_argument("--method", choices=("pointwise", "symbolic"), default="pointwise")
    p.add_argument("--all-pairs", action="store_true", help="every ordered pair, diagonal included")
    p = vsub.add_parser("network", parents=[common])
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--network", help="network file")
    g.add_argument("--fixture", choices=("gr12", "gr24"))
    return ap


def _oracle_defaults(args) -> dict:
    vals = {"prime": DEFAULT_PRIME, "trials": DEFAULT_TRIALS, "seed": 0}
    if args.config:
        cp = configparser.ConfigParser()
        if not cp.read(args.config):
            raise InvalidInput(f"cannot read config file {args.config!r}")
        if cp.has_section("rankswap"):
            for k in vals:
                if cp.has_option("rankswap", k):
                    vals[k] = cp.getint("rankswap", k)
    for k in vals:
        env = os.environ.get(f"RANKSWAP_{k.upper()}")
        if env is not None:
            try:
                vals[k] = int(env)
            except ValueError:
                raise InvalidInput(f"RANKSWAP_{k.upper()} must be an integer, got {env!r}") from None
    for k in vals:
        if getattr(args, k) is not None:
            vals[k] = getattr(args, k)
    return vals


def _context(args, n: int | None, r: int) -> RankContext | None:
    if n is None:
        return None
    o = _oracle_defaults(args)
    return RankContext.standard(n, r, prime=o["prime"], trials=o["trials"], seed=o["seed"])


def _parameters(args, n, r, I=None) -> dict:
    o = _oracle_defaults(args)
    return {
        "n": n,
        "r": r,
        "I": list(I) if I is not None else None,
        "alpha": _json_scalar(args.alpha),
        "beta": _json_scalar(args.beta),
        "prime": o["prime"],
        "trials": o["trials"],
        "seed": o["seed"],
    }


def _show(x) -> str:
    if isinstance(x, FractionElement):
        if x.den.constant_value() == 1:
            return render(x.num)
        return f"({render(x.num)}) / ({render(x.den)})"
    return render(x)


def _value_item(key: str, x) -> V.Item:
    return V.Item(key, "Pass", "exact", detail={"value": _show(x)})


# -- commands --------------------------------------------------------------------------


def run_command(argv: list[str]) -> Report:
    return execute(build_parser().parse_args(argv))


def execute(args: argparse.Namespace) -> Report:
    p = BracketParams(args.alpha, args.beta)
    cmd = args.command if args.command != "verify" else f"verify {args.target}"

    if cmd in ("bracket", "reduce", "iszero"):
        r = args.points or 4
        points = PointSet.standard(r)
        ctx = _context(args, args.rank, r)
        rep = Report(cmd, _parameters(args, args.rank, r))
        if cmd == "bracket":
            if len(args.expr) != 2:
                raise InvalidInput("bracket needs --expr twice")
            A, B = (to_value(parse_expr(e, points), points, ctx) for e in args.expr)
            rep.items.append(_value_item("bracket", bracket(A, B, p, ctx)))
            return rep
        if ctx is None:
            raise InvalidInput(f"{cmd} needs --rank")
        f = to_value(parse_expr(args.expr, points), points, ctx)
        if cmd == "reduce":
            if not isinstance(f, Polynomial):
                raise InvalidInput("reduce takes a polynomial, not a fraction")
            rep.items.append(_value_item("reduce", reduce(f, ctx)))
            return rep
        num = f.num if isinstance(f, FractionElement) else f
        t0 = time.perf_counter()
        rep.items.append(V._from_cert("iszero", is_zero_rank_n(num, ctx), t0))
        return rep

    if cmd == "verify network":
        N = fixture(args.fixture) if args.fixture else _read_network(args.network)
        rep = Report(cmd, _parameters(args, N.n, N.r, N.sources))
        rep.items = V.network_checks(N, p)
        return rep

    if cmd == "verify jacobi":
        r = args.points or 5
        rep = Report(cmd, _parameters(args, None, r))
        rep.items = V.jacobi(r, p)
        return rep

    n = args.rank or 2
    r = args.points or n + 2
    ctx = _context(args, n, r)
    if cmd == "verify poisson-ideal":
        rep = Report(cmd, _parameters(args, n, r))
        rep.items = V.poisson_ideal(ctx, p)
    elif cmd == "verify boundary-lemma":
        rep = Report(cmd, _parameters(args, n, r))
        rep.items = V.boundary_lemma(ctx, args.ranges)
    elif cmd == "verify det-ratio-independence":
        rep = Report(cmd, _parameters(args, n, r))
        rep.items = V.det_ratio_independence(ctx, args.samples)
    elif cmd in ("verify lemma01", "verify main-theorem"):
        I = args.subset or tuple(range(1, n + 1))
        if len(I) != n:
            raise InvalidInput(f"--subset must have --rank={n} elements, got {len(I)}")
        S = SchubertIndex(r, I)
        rep = Report(cmd, _parameters(args, n, r, I))
        if cmd == "verify lemma01":
            rep.items = V.lemma01(S, ctx, args.method)
        else:
            rep.items = V.main_theorem(S, p, ctx, args.method, ordered=args.all_pairs)
    else:  # pragma: no cover - argparse rejects unknown commands
        raise InvalidInput(f"unknown command {cmd!r}")
    return rep


def _read_network(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            return parse_network(fh.read())
    except OSError as exc:
        raise InvalidInput(f"cannot read network file: {exc}") from None


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(sys.argv[1:] if argv is None else argv)
    try:
        rep = execute(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return exc.exit_code
    except RankSwapError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    out = rep.to_json(args.timings) if args.format == "json" else rep.to_text(args.timings)
    sys.stdout.write(out)
    return EXIT_OK if rep.passed else EXIT_VERIFY_FAILED


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
