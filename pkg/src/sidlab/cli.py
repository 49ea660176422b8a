"""Command-line interface: construct graphs, evaluate densities, run suites.

Exit codes: 0 success, 1 suite failure or certified violation, 2 usage
error, 3 I/O or format error.  Rationals cross the boundary as "p/q"
strings; decimal inputs are accepted only with --float.  Every artifact
embeds a header recording the tool version, seed, and effective config, and
identical command lines reproduce identical artifacts apart from the
recorded wall-clock runtime of suite reports.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from fractions import Fraction

from . import __version__
from .graphs import (
    Graph,
    complete_graph,
    complete_multipartite,
    cycle_graph,
    disjoint_union,
    flower,
    generalized_theta,
    path_graph,
    replace_edges,
    subdivide,
)
from .homdensity import hom_density
from .search import search_counterexample
from .stepgraphon import StepGraphon
from .verify import SUITES, SuiteReport

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2
EXIT_IO = 3


class FormatError(Exception):
    pass


def _parse_rational(text: str, allow_float: bool) -> Fraction:
    text = text.strip()
    try:
        if "/" in text or "." not in text:
            return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise FormatError(f"bad rational {text!r}: {exc}") from exc
    if not allow_float:
        raise FormatError(
            f"decimal {text!r} rejected; pass --float to accept decimals"
        )
    return Fraction(float(text))


def _parse_lengths(text: str):
    try:
        return [int(x) for x in text.split(",") if x != ""]
    except ValueError as exc:
        raise FormatError(f"bad length list {text!r}") from exc


def _header(args, seed=None) -> dict:
    config = {
        k: v for k, v in sorted(vars(args).items())
        if k not in ("func",) and v is not None
    }
    for k, v in config.items():
        if isinstance(v, Fraction):
            config[k] = f"{v.numerator}/{v.denominator}"
    return {"tool": "sidlab", "version": __version__, "seed": seed,
            "config": config}


def _emit(payload: dict, out_path):
    text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _load_json(path) -> dict:
    with open(path) as fh:
        return json.load(fh)


def _load_graph(path) -> Graph:
    data = _load_json(path)
    data.pop("header", None)
    return Graph.from_json_dict(data)


def _load_graphon(path) -> StepGraphon:
    data = _load_json(path)
    data.pop("header", None)
    return StepGraphon.from_json_dict(data)


# ---------------------------------------------------------------------------
# Subcommands.
# ---------------------------------------------------------------------------

def _cmd_construct(args) -> int:
    family = args.family
    if family == "theta":
        built = generalized_theta(_parse_lengths(args.lengths), args.parity)
        payload = built.to_json_dict()
    elif family == "flower":
        payload = flower(_parse_lengths(args.lengths)).to_json_dict()
    elif family == "complete":
        payload = complete_graph(int(args.lengths)).to_json_dict()
    elif family == "multipartite":
        payload = complete_multipartite(_parse_lengths(args.lengths)).to_json_dict()
    elif family == "path":
        payload = path_graph(int(args.lengths)).to_json_dict()
    elif family == "cycle":
        payload = cycle_graph(int(args.lengths)).to_json_dict()
    elif family == "subdivision":
        if not args.graph:
            raise FormatError("subdivision requires --graph")
        payload = subdivide(_load_graph(args.graph),
                            int(args.lengths)).to_json_dict()
    elif family == "replace":
        if not args.graph:
            raise FormatError("replace requires --graph")
        gadget = generalized_theta(_parse_lengths(args.lengths), args.parity)
        payload = replace_edges(_load_graph(args.graph), gadget).to_json_dict()
    elif family == "union":
        if not args.graph or not args.other:
            raise FormatError("union requires --graph and --other")
        payload = disjoint_union(
            _load_graph(args.graph), _load_graph(args.other)
        ).to_json_dict()
    else:
        raise FormatError(f"unknown family {family!r}")
    payload["header"] = _header(args)
    _emit(payload, args.out)
    return EXIT_OK


def _cmd_density(args) -> int:
    graph = _load_graph(args.graph)
    w = _load_graphon(args.graphon)
    pins = None
    if args.pins:
        pins = {}
        for item in args.pins.split(","):
            v, s = item.split(":")
            pins[int(v)] = int(s)
    value = hom_density(graph, w, mode=args.mode, strategy=args.strategy,
                        pins=pins)
    payload = value.to_json_dict()
    payload["header"] = _header(args)
    _emit(payload, args.out)
    return EXIT_OK


def _cmd_verify(args) -> int:
    if args.suite not in SUITES:
        raise FormatError(
            f"unknown suite {args.suite!r}; choose from {sorted(SUITES)}"
        )
    suite = SUITES[args.suite]
    report = suite(trials=args.trials, seed=args.seed, jobs=args.jobs)
    payload = report.to_json_dict()
    payload["header"] = _header(args, seed=args.seed)
    _emit(payload, args.out)
    return EXIT_OK if report.passed else EXIT_FAILURE


def _cmd_search(args) -> int:
    graph = _load_graph(args.graph)
    d = _parse_rational(args.d, args.float)
    result = search_counterexample(
        graph, n=args.n, d=d, starts=args.starts, iters=args.iters,
        seed=args.seed, step=args.step,
    )
    payload = result.to_json_dict()
    payload["header"] = _header(args, seed=args.seed)
    _emit(payload, args.out)
    if args.trace_csv:
        with open(args.trace_csv, "w") as fh:
            fh.write(result.trace_csv())
    return EXIT_FAILURE if result.certified_violation else EXIT_OK


def _cmd_report(args) -> int:
    reports = []
    for path in args.inputs:
        data = _load_json(path)
        data.pop("header", None)
        reports.append(SuiteReport.from_json_dict(data))
    reports.sort(key=lambda r: r.suite)
    if args.format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(["suite", "trials", "failures", "max_gap", "runtime_ms"])
        for r in reports:
            writer.writerow([r.suite, r.trials, len(r.failures), r.max_gap,
                             r.runtime_ms])
        text = buf.getvalue()
        if args.out:
            with open(args.out, "w") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
    else:
        payload = {
            "header": _header(args),
            "rows": [
                {"suite": r.suite, "trials": r.trials,
                 "failures": len(r.failures), "max_gap": r.max_gap,
                 "runtime_ms": r.runtime_ms}
                for r in reports
            ],
        }
        _emit(payload, args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sidlab",
        description="Graph constructions, graphon densities, verification "
                    "suites, and counterexample search.",
    )
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("construct", help="build a graph family member")
    p.add_argument("--family", required=True,
                   choices=["theta", "flower", "complete", "multipartite",
                            "path", "cycle", "subdivision", "replace", "union"])
    p.add_argument("--lengths", required=True,
                   help="comma-separated lengths (or a single integer)")
    p.add_argument("--parity", default="any", choices=["even", "odd", "any"])
    p.add_argument("--graph", help="input graph JSON (subdivision/replace/union)")
    p.add_argument("--other", help="second graph JSON (union)")
    p.add_argument("--out", help="output path (stdout if omitted)")
    p.set_defaults(func=_cmd_construct)

    p = sub.add_parser("density", help="evaluate a homomorphism density")
    p.add_argument("--graph", required=True)
    p.add_argument("--graphon", required=True)
    p.add_argument("--mode", default="exact", choices=["exact", "float"])
    p.add_argument("--strategy", default="eliminate",
                   choices=["eliminate", "bruteforce"])
    p.add_argument("--pins", help="comma-separated vertex:step pairs")
    p.add_argument("--out", help="output path (stdout if omitted)")
    p.set_defaults(func=_cmd_density)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("--suite", required=True)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--jobs", type=int,
                   default=int(os.environ.get("SIDLAB_JOBS", "1")))
    p.add_argument("--out", help="output path (stdout if omitted)")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("search", help="projected-gradient counterexample search")
    p.add_argument("--graph", required=True)
    p.add_argument("--n", type=int, required=True, help="step count")
    p.add_argument("--d", required=True, help='target degree, e.g. "1/2"')
    p.add_argument("--starts", type=int, default=32)
    p.add_argument("--iters", type=int, default=500)
    p.add_argument("--step", type=float, default=0.05)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--float", action="store_true",
                   help="accept decimal values for --d")
    p.add_argument("--out", help="output path (stdout if omitted)")
    p.add_argument("--trace-csv", dest="trace_csv",
                   help="write the descent trace as CSV")
    p.set_defaults(func=_cmd_search)

    p = sub.add_parser("report", help="aggregate suite reports")
    p.add_argument("--inputs", nargs="*", default=[],
                   help="suite report JSON paths")
    p.add_argument("--format", default="csv", choices=["csv", "json"])
    p.add_argument("--out", help="output path (stdout if omitted)")
    p.set_defaults(func=_cmd_report)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except FormatError as exc:
        print(f"sidlab: {exc}", file=sys.stderr)
        return EXIT_IO
    except (OSError, json.JSONDecodeError, KeyError) as exc:
        print(f"sidlab: input error: {exc!r}", file=sys.stderr)
        return EXIT_IO
    except ValueError as exc:
        print(f"sidlab: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
