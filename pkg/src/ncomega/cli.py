"""Command line front end.

Four verbs: ``group`` prints order data and Sylow counts, ``omega``
computes the clique number of the non-commuting graph with the chosen
method, ``export`` writes the graph in DIMACS form, and ``verify``
runs the built-in result suite.

Exit codes: 0 success, 1 verify found a failing row, 2 the job was
invalid (unknown family, bad parameters, or a method whose hypotheses
the group does not satisfy), 3 a search budget ran out before the
exact answer, 4 two independent methods disagreed.
"""

from __future__ import annotations

import argparse
import re
import sys
import time
from typing import Optional

from . import cache, report
from .graph import GraphBuildError, build_ncgraph, collapse_by_center, export_dimacs
from .groups.linear import _prime_power, linear_order
from .groups.suzuki import suzuki_order
from .groups.table import GroupBuildError
from .solver import LowerBoundOnly
from .structure import InconsistencyError, StructureError, omega

__all__ = ["main", "build_parser", "JobError"]

# dense bitsets over the whole group put a hard ceiling on usable orders
ORDER_CAP = 100_000

_NAMED = re.compile(r"^(dihedral|symmetric|alternating)\((\d+)\)$|^quaternion8$")

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_INVALID_JOB = 2
EXIT_BUDGET = 3
EXIT_INCONSISTENT = 4


class JobError(ValueError):
    """The requested job cannot be run as specified."""


def _named_order(name: str) -> int:
    m = _NAMED.match(name)
    if not m:
        raise JobError(
            f"unknown named group {name!r}; use dihedral(k), symmetric(k), "
            "alternating(k), or quaternion8")
    if m.group(1) is None:
        return 8
    kind, k = m.group(1), int(m.group(2))
    if kind == "dihedral":
        if k < 3:
            raise JobError("dihedral(k) needs k >= 3")
        return 2 * k
    if k < 3:
        raise JobError(f"{kind}(k) needs k >= 3")
    fact = 1
    for i in range(2, k + 1):
        fact *= i
    return fact if kind == "symmetric" else fact // 2


def resolve_job(args: argparse.Namespace) -> tuple[str, dict, dict]:
    """(builder family, builder params, echo dict) for the CLI arguments."""
    fam = args.family

    def need(flag: str):
        v = getattr(args, flag)
        if v is None:
            raise JobError(f"family {fam!r} requires --{flag}")
        return v

    def spare(*flags: str) -> None:
        for f in flags:
            if getattr(args, f, None) is not None:
                raise JobError(f"--{f} does not apply to family {fam!r}")

    if fam in ("psl2", "pgl2", "sl2", "gl2", "psl3"):
        q = need("q")
        spare("m", "p", "n", "form", "name")
        try:
            _prime_power(q)
        except ValueError as e:
            raise JobError(str(e)) from None
        kind = fam[:-1]
        n = int(fam[-1])
        order = linear_order(kind.upper(), n, q)
        family, params = kind, {"n": n, "q": q}
    elif fam == "suzuki":
        m = need("m")
        spare("q", "p", "n", "form", "name")
        if m < 1:
            raise JobError("--m must be at least 1")
        order = suzuki_order(m)
        family, params = "suzuki", {"m": m}
    elif fam == "extraspecial":
        p, n = need("p"), need("n")
        spare("q", "m", "name")
        form = args.form or "plus"
        if p < 2:
            raise JobError("--p must be a prime")
        if n < 1:
            raise JobError("--n must be at least 1")
        order = p ** (2 * n + 1)
        family, params = "extraspecial", {"p": p, "n": n, "form": form}
    elif fam == "named":
        name = need("name")
        spare("q", "m", "p", "n", "form")
        order = _named_order(name)
        family, params = "named", {"name": name}
    else:
        raise JobError(f"unknown family {fam!r}")

    if order > ORDER_CAP:
        raise JobError(
            f"group order {order} exceeds the dense-table ceiling {ORDER_CAP}")
    echo = {"command": args.command, "family": fam, "params": dict(params)}
    return family, params, echo


def cmd_group(args: argparse.Namespace) -> int:
    family, params, echo = resolve_job(args)
    G = cache.obtain_group(family, params, args.cache_dir)
    report.write_report(report.group_info_report(echo, G), args.out)
    return EXIT_OK


def cmd_omega(args: argparse.Namespace) -> int:
    family, params, echo = resolve_job(args)
    echo["method"] = args.method
    G = cache.obtain_group(family, params, args.cache_dir)
    t0 = time.monotonic()
    try:
        rep = omega(G, args.method, node_limit=args.node_limit,
                    time_limit=args.time_limit,
                    allow_big=args.allow_big_memory)
    except LowerBoundOnly as e:
        r = e.result
        data = {
            "schema_version": report.SCHEMA_VERSION,
            "kind": "omega",
            "job": echo,
            "group": report.group_summary(G),
            "result": {"omega_at_least": r.size, "omega_at_most": r.bound,
                       "method": "solver", "exact": False},
            "budget": {"nodes": r.nodes,
                       "node_limit": args.node_limit,
                       "time_limit": args.time_limit},
            "timing": {"seconds": round(time.monotonic() - t0, 3)},
        }
        report.write_report(data, args.out)
        print(f"budget exhausted: omega in [{r.size}, {r.bound}]",
              file=sys.stderr)
        return EXIT_BUDGET
    report.write_report(report.omega_report(echo, G, rep,
                                            time.monotonic() - t0), args.out)
    return EXIT_OK


def cmd_export(args: argparse.Namespace) -> int:
    family, params, echo = resolve_job(args)
    G = cache.obtain_group(family, params, args.cache_dir)
    g = build_ncgraph(G, allow_big=args.allow_big_memory)
    if args.collapse:
        g = collapse_by_center(G, g, allow_big=args.allow_big_memory)
    if args.out is None or args.out == "-":
        export_dimacs(g, sys.stdout)
    else:
        with open(args.out, "w", encoding="utf-8") as fh:
            export_dimacs(g, fh)
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    from . import verify
    failed = verify.run_suite(budget=args.budget, cache_dir=args.cache_dir,
                              rows=args.rows, stream=sys.stdout)
    return EXIT_VERIFY_FAILED if failed else EXIT_OK


def _add_selection(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--family", required=True,
                     choices=["psl2", "pgl2", "sl2", "gl2", "psl3",
                              "suzuki", "extraspecial", "named"],
                     help="group family")
    sub.add_argument("--q", type=int, help="field size for the linear families")
    sub.add_argument("--m", type=int,
                     help="Suzuki parameter; the field has 2^(2m+1) elements")
    sub.add_argument("--p", type=int, help="extra-special prime")
    sub.add_argument("--n", type=int,
                     help="extra-special rank; the order is p^(2n+1)")
    sub.add_argument("--form", choices=["plus", "minus"],
                     help="extra-special type (default plus)")
    sub.add_argument("--name",
                     help="named group: dihedral(k), symmetric(k), "
                          "alternating(k), quaternion8")
    sub.add_argument("--cache-dir", help="directory for cached group tables")
    sub.add_argument("--out", help="output file ('-' or omitted: stdout)")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="ncomega",
        description="exact clique numbers of non-commuting graphs of "
                    "finite groups, with verifiable certificates")
    sp = ap.add_subparsers(dest="command", required=True)

    g = sp.add_parser("group", help="group order data and Sylow counts")
    _add_selection(g)
    g.set_defaults(func=cmd_group)

    o = sp.add_parser("omega", help="clique number of the non-commuting graph")
    _add_selection(o)
    o.add_argument("--method", default="auto",
                   choices=["auto", "formula", "ac", "cover",
                            "partition", "solver"],
                   help="how to compute and certify the value")
    o.add_argument("--time-limit", type=float, default=600.0,
                   help="solver time budget in seconds (0: none)")
    o.add_argument("--node-limit", type=int, default=100_000_000,
                   help="solver search-node budget (0: none)")
    o.add_argument("--allow-big-memory", action="store_true",
                   help="permit dense graphs past the default vertex ceiling")
    o.set_defaults(func=cmd_omega)

    e = sp.add_parser("export", help="write the graph in DIMACS format")
    _add_selection(e)
    e.add_argument("--collapse", action="store_true",
                   help="identify vertices with the same central coset")
    e.add_argument("--allow-big-memory", action="store_true",
                   help="permit dense graphs past the default vertex ceiling")
    e.set_defaults(func=cmd_export)

    v = sp.add_parser("verify", help="run the built-in result suite")
    v.add_argument("--budget", type=float, default=0.0,
                   help="overall time budget in seconds; optional rows are "
                        "skipped once it runs out (0: run everything)")
    v.add_argument("--rows", help="comma-separated row numbers to run")
    v.add_argument("--cache-dir", help="directory for cached group tables")
    v.set_defaults(func=cmd_verify)
    return ap


def main(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (JobError, StructureError, GroupBuildError, GraphBuildError,
            ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INVALID_JOB
    except InconsistencyError as e:
        print(f"inconsistency: {e}", file=sys.stderr)
        return EXIT_INCONSISTENT


if __name__ == "__main__":
    sys.exit(main())
