"""Command-line entry point: ``copious analyze | census | verify``."""
from __future__ import annotations

import argparse
import json
import sys
from importlib import resources
from pathlib import Path

from .census import (
    CensusSummary,
    Options,
    analyze_graph,
    builtin_items,
    csv_text,
    run_census,
    write_csv,
)
from .graphs import (
    MAX_BUILTIN,
    GraphError,
    enumerate_graphs,
    from_nonedges,
    parse_graph6,
    parse_pairs,
    read_graph6_lines,
)
from .scattering import Verdict

EXIT_CODES = {Verdict.COPIOUS.value: 0, Verdict.NOT_COPIOUS.value: 1, Verdict.INCONCLUSIVE.value: 2}
EXIT_ERROR = 3
BUNDLED = {7: "graphs7.g6"}


def _options(args) -> Options:
    if args.samples < 1:
        raise SystemExit("copious: --samples must be positive")
    if args.starts < 1:
        raise SystemExit("copious: --starts must be positive")
    return Options(samples=args.samples, seed=args.seed, solve=args.solve, starts=args.starts, tol=args.tol)


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--samples", type=int, default=25, help="random evaluation points before escalation")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--solve", action="store_true", help="also count critical points numerically")
    p.add_argument("--starts", type=int, default=200, help="Newton starts for --solve")
    p.add_argument("--tol", type=float, default=1e-10, help="acceptance residual for --solve")
    p.add_argument("--threads", type=int, default=None, help="worker processes (default $COPIOUS_THREADS or 1)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="copious", description="Copious graphs and ML degrees of scattering equations.")
    sub = parser.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", help="report on a single graph")
    a.add_argument("graph", help="graph6 word, or a non-edge list such as 12,34,56 when --n is given")
    a.add_argument("--n", type=int, default=None, help="vertex count; switches GRAPH to a non-edge list")
    _common(a)

    c = sub.add_parser("census", help="analyze a list of graphs")
    src = c.add_mutually_exclusive_group(required=True)
    src.add_argument("path", nargs="?", help="graph6 file, one graph per line ('-' for stdin)")
    src.add_argument("--builtin", type=int, metavar="N",
                     help=f"all graphs on N vertices (generated for N <= {MAX_BUILTIN}, bundled for N = 7)")
    c.add_argument("--format", choices=("json", "csv"), default="json", help="what to print on stdout")
    c.add_argument("--out", type=Path, default=None, help="directory for census.csv, summary.json, histogram.png")
    _common(c)

    v = sub.add_parser("verify", help="check reference values")
    v.add_argument("--scope", choices=("n6", "bipyramid", "kn", "census", "all"), default="all")
    _common(v)
    return parser


def cmd_analyze(args) -> int:
    opts = _options(args)
    try:
        if args.n is not None:
            text = args.graph.strip()
            g = from_nonedges(args.n, parse_pairs(text) if text not in ("", "-") else [])
        else:
            g = parse_graph6(args.graph)
    except GraphError as exc:
        print(f"copious analyze: {args.graph!r}: {exc}", file=sys.stderr)
        return EXIT_ERROR
    report = analyze_graph(g, opts)
    print(json.dumps(report.as_dict(), indent=2))
    return EXIT_CODES[report.verdict]


def _census_items(args):
    if args.builtin is not None:
        n = args.builtin
        if n in BUNDLED:
            text = resources.files("copious").joinpath("data", BUNDLED[n]).read_text()
            return list(read_graph6_lines(text.splitlines()))
        if not 1 <= n <= MAX_BUILTIN:
            raise GraphError(f"--builtin supports 1..{MAX_BUILTIN} and {sorted(BUNDLED)}")
        return list(builtin_items(enumerate_graphs(n)))
    if args.path == "-":
        return list(read_graph6_lines(sys.stdin))
    with open(args.path, encoding="ascii", errors="replace") as fh:
        return list(read_graph6_lines(fh))


def cmd_census(args) -> int:
    opts = _options(args)
    try:
        items = _census_items(args)
    except (OSError, GraphError) as exc:
        print(f"copious census: {exc}", file=sys.stderr)
        return EXIT_ERROR
    for lineno, g, err in items:
        if g is None:
            print(f"copious census: line {lineno}: {err}", file=sys.stderr)
    try:
        entries = run_census(items, opts, args.threads)
    except ValueError as exc:
        print(f"copious census: {exc}", file=sys.stderr)
        return EXIT_ERROR
    summary = CensusSummary.from_entries(entries)
    if args.out is not None:
        args.out.mkdir(parents=True, exist_ok=True)
        with open(args.out / "census.csv", "w", encoding="ascii", newline="") as fh:
            write_csv(entries, fh)
        (args.out / "summary.json").write_text(json.dumps(summary.as_dict(), indent=2) + "\n")
        from .plotting import plot_histogram

        plot_histogram(summary, args.out / "histogram.png")
    if args.format == "csv":
        sys.stdout.write(csv_text(entries))
    else:
        print(json.dumps(summary.as_dict(), indent=2))
    return 0


def cmd_verify(args) -> int:
    from .verify import run_scope

    checks = run_scope(args.scope, _options(args), args.threads)
    width = max(len(c.name) for c in checks)
    failed = 0
    for c in checks:
        failed += not c.ok
        print(f"{'PASS' if c.ok else 'FAIL'}  {c.name:<{width}}  expected={c.expected}  observed={c.observed}")
    print(f"{len(checks) - failed}/{len(checks)} checks passed")
    return 1 if failed else 0


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    handler = {"analyze": cmd_analyze, "census": cmd_census, "verify": cmd_verify}[args.command]
    return handler(args)


if __name__ == "__main__":
    sys.exit(main())
