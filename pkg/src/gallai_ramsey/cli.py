"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 usage error,
3 search budget exhausted / inconclusive.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import construct as cons
from .core import (
    format_gcol,
    pattern,
    rainbow_triangle,
    read_gcol,
    to_dot,
    to_json,
    write_gcol,
)
from .formula import Parameters, check_inequalities, condition_label, gallai_ramsey_value
from .partition import coarsen_to_minimal, find_gallai_partition
from .search import (
    Outcome,
    SearchBudget,
    SearchInconclusive,
    compute_ramsey,
    local_search_witness,
    witness_search,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_INCONCLUSIVE = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _nonneg(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {v}")
    return v


def _pattern_arg(text: str):
    try:
        return pattern(text)
    except KeyError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _add_triple(p: argparse.ArgumentParser) -> None:
    for name in ("r", "s", "t"):
        p.add_argument(name, type=_nonneg)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit one JSON envelope on stdout")
    common.add_argument("--threads", type=int, default=1, help="worker cap for verification")
    common.add_argument("-v", "--verbose", action="store_true")

    cached = argparse.ArgumentParser(add_help=False)
    cached.add_argument("--cache", type=Path, default=None,
                        help="sharpness-example cache (default $GALLAI_CACHE or ./qcache)")

    ap = _Parser(prog="gallai-ramsey", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("value", parents=[common], help="closed-form gr_k value")
    _add_triple(p)

    p = sub.add_parser("inequalities", parents=[common], help="check the ratio inequalities")
    p.add_argument("--max", type=int, default=8, dest="bound")

    p = sub.add_parser("construct", parents=[common, cached], help="build a lower-bound coloring")
    _add_triple(p)
    p.add_argument("--out", type=Path)

    p = sub.add_parser("verify", parents=[common], help="certify a lower-bound coloring")
    p.add_argument("file", type=Path)
    p.add_argument("--params", nargs=3, type=_nonneg, metavar=("R", "S", "T"), required=True)

    p = sub.add_parser("partition", parents=[common], help="Gallai partition of a coloring")
    p.add_argument("file", type=Path)
    p.add_argument("--minimize", action="store_true", help="coarsen to a merge-minimal partition")

    p = sub.add_parser("ramsey", parents=[common], help="two-color Ramsey number by exhaustive search")
    p.add_argument("a", type=_pattern_arg)
    p.add_argument("b", type=_pattern_arg)
    p.add_argument("--nmax", type=int, default=10)
    p.add_argument("--time", type=float, default=600.0)
    p.add_argument("--nodes", type=int, default=SearchBudget.max_nodes)

    p = sub.add_parser("witness", parents=[common], help="search one 2-coloring avoiding (a, b)")
    p.add_argument("a", type=_pattern_arg)
    p.add_argument("b", type=_pattern_arg)
    p.add_argument("n", type=int)
    p.add_argument("--time", type=float, default=60.0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--method", choices=("auto", "dfs", "local"), default="auto")
    p.add_argument("--out", type=Path)

    p = sub.add_parser("export", parents=[common], help="convert a .gcol file")
    p.add_argument("file", type=Path)
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--dot", dest="fmt", action="store_const", const="dot")
    fmt.add_argument("--to", dest="fmt", choices=("dot", "json", "gcol"))
    p.add_argument("--out", type=Path)
    p.set_defaults(fmt="dot")
    return ap


class _Out:
    def __init__(self, args):
        self.json = getattr(args, "json", False)
        self.command = getattr(args, "command", None)
        self.lines: list[str] = []
        self.result: dict = {}

    def line(self, text: str) -> None:
        self.lines.append(text)

    def finish(self, code: int, error: Optional[str] = None) -> int:
        if self.json:
            env = {"command": self.command, "ok": code == EXIT_OK, "exit_code": code, "result": self.result}
            if error:
                env["error"] = error
            print(json.dumps(env, sort_keys=True))
        else:
            for text in self.lines:
                print(text)
            if error:
                print(f"error: {error}", file=sys.stderr)
        return code


def _params(args) -> Parameters:
    return Parameters(args.r, args.s, args.t)


def _cmd_value(args, out: _Out) -> int:
    p = _params(args)
    if p.k == 0:
        raise UsageError("value needs r+s+t >= 1")
    gr, label = gallai_ramsey_value(p), condition_label(p)
    out.result = {"params": list(p.as_tuple()), "gr": gr, "f": gr - 1, "condition": label}
    out.line(f"gr={gr} condition={label}")
    return EXIT_OK


def _cmd_inequalities(args, out: _Out) -> int:
    if args.bound < 2:
        raise UsageError("--max must be at least 2")
    rep = check_inequalities(args.bound, args.bound, args.bound)
    for c in rep.checks:
        out.line(c.line())
    out.result = {
        "checked": len(rep.checks),
        "violations": [c.line() for c in rep.violations],
    }
    return EXIT_OK if rep.ok else EXIT_FAIL


def _cmd_construct(args, out: _Out) -> int:
    p = _params(args)
    if p.k == 0:
        raise UsageError("construct needs r+s+t >= 1")
    cache = cons.QCache(args.cache or cons.default_cache_dir())
    g = cons.construct_lower_bound(p, cache)
    text = format_gcol(g)
    out.result = {"params": list(p.as_tuple()), "order": g.n, "k": g.k, "condition": condition_label(p)}
    if args.out:
        args.out.write_text(text)
        out.result["out"] = str(args.out)
        out.line(f"order={g.n} k={g.k} condition={condition_label(p)} out={args.out}")
    elif out.json:
        out.result["gcol"] = text
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _cmd_verify(args, out: _Out) -> int:
    g = read_gcol(args.file)
    p = Parameters(*args.params)
    if g.k != p.k:
        out.result = {"error": "palette mismatch", "k": g.k, "expected_k": p.k}
        out.line(f"palette mismatch: file has k={g.k}, parameters give k={p.k}")
        return EXIT_FAIL
    cert = cons.verify_construction(g, p, threads=args.threads)
    out.result = cert.as_dict()
    flag = lambda b: "true" if b else "false"  # noqa: E731
    out.line(f"order_ok={flag(cert.order_ok)} gallai_ok={flag(cert.gallai_ok)} "
             f"avoid_ok={flag(cert.avoid_ok)} order={cert.order} expected={cert.expected_order}")
    if cert.violation is not None:
        c, pat, emb = cert.violation
        out.line(f"violation color={c} pattern={pat.name} vertices={' '.join(map(str, emb.map))}")
    if cert.rainbow is not None:
        out.line(f"rainbow_triangle={' '.join(map(str, cert.rainbow))}")
    return EXIT_OK if cert.ok else EXIT_FAIL


def _cmd_partition(args, out: _Out) -> int:
    g = read_gcol(args.file)
    if g.n < 2:
        raise UsageError("partition needs at least two vertices")
    tri = rainbow_triangle(g)
    if tri is not None:
        out.result = {"rainbow_triangle": list(tri)}
        out.line(f"not a Gallai coloring: rainbow triangle {' '.join(map(str, tri))}")
        return EXIT_FAIL
    part = find_gallai_partition(g)
    if args.minimize:
        part = coarsen_to_minimal(g, part)
    for i, vs in enumerate(part.parts):
        out.line(f"part {i}: {' '.join(map(str, vs))}")
    out.line(f"cross_colors={' '.join(map(str, part.cross_colors))}")
    out.line(f"q={part.q}")
    out.result = {"parts": [list(p) for p in part.parts], "cross_colors": list(part.cross_colors), "q": part.q}
    return EXIT_OK


def _cmd_ramsey(args, out: _Out) -> int:
    budget = SearchBudget(max_nodes=args.nodes, time_limit=args.time)
    try:
        value = compute_ramsey(args.a, args.b, args.nmax, budget)
    except SearchInconclusive as exc:
        out.result = {"a": args.a.name, "b": args.b.name, "inconclusive": str(exc)}
        out.line(f"inconclusive: {exc}")
        return EXIT_INCONCLUSIVE
    out.result = {"a": args.a.name, "b": args.b.name, "R": value}
    out.line(f"R({args.a.name},{args.b.name})={value}")
    return EXIT_OK


def _cmd_witness(args, out: _Out) -> int:
    if args.n < max(args.a.order, args.b.order):
        raise UsageError("n must be at least the larger pattern order")
    budget = SearchBudget(time_limit=args.time, seed=args.seed)
    method = args.method
    if method == "auto":
        method = "dfs" if args.n <= 10 else "local"
    if method == "dfs":
        res = witness_search(args.a, args.b, args.n, budget)
    else:
        res = local_search_witness(args.a, args.b, args.n, budget)
    out.result = {"a": args.a.name, "b": args.b.name, "n": args.n, "method": method,
                  "outcome": res.outcome.value, "nodes": res.nodes}
    out.line(f"outcome={res.outcome.value} n={args.n} method={method} nodes={res.nodes}")
    if res.outcome is Outcome.WITNESS:
        if args.out:
            write_gcol(res.graph, args.out)
            out.result["out"] = str(args.out)
        else:
            out.result["gcol"] = format_gcol(res.graph)
            if not out.json:
                out.line(format_gcol(res.graph).rstrip("\n"))
        return EXIT_OK
    if res.outcome is Outcome.EXHAUSTIVE_NONE:
        return EXIT_FAIL
    return EXIT_INCONCLUSIVE


def _cmd_export(args, out: _Out) -> int:
    g = read_gcol(args.file)
    text = {"dot": to_dot, "json": lambda x: to_json(x) + "\n", "gcol": format_gcol}[args.fmt](g)
    out.result = {"format": args.fmt, "n": g.n, "k": g.k}
    if args.out:
        args.out.write_text(text)
        out.result["out"] = str(args.out)
    elif out.json:
        out.result["text"] = text
    else:
        out.line(text.rstrip("\n"))
    return EXIT_OK


_COMMANDS = {
    "value": _cmd_value,
    "inequalities": _cmd_inequalities,
    "construct": _cmd_construct,
    "verify": _cmd_verify,
    "partition": _cmd_partition,
    "ramsey": _cmd_ramsey,
    "witness": _cmd_witness,
    "export": _cmd_export,
}


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    out = _Out(args)
    try:
        return out.finish(_COMMANDS[args.command](args, out))
    except UsageError as exc:
        return out.finish(EXIT_USAGE, str(exc))
    except (OSError, ValueError) as exc:
        return out.finish(EXIT_USAGE, str(exc))
    except cons.SearchExhausted as exc:
        return out.finish(EXIT_INCONCLUSIVE, str(exc))
    except cons.ConstructionError as exc:
        return out.finish(EXIT_FAIL, str(exc))


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
