"""Per-graph reports and censuses over graph lists."""
from __future__ import annotations

import csv
import io
import os
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Iterator

from . import kinematics
from .graphs import Graph, emit_graph6
from .mldegree import gamma_kappa, mu_formula, mu_universal_vertex
from .scattering import DEFAULT_SAMPLES, Verdict, certify_copious
from .solver import sample_mandelstam, solve_critical_points

SCHEMA_VERSION = 1

CSV_COLUMNS = (
    "graph6",
    "n",
    "edge_count",
    "nonedges",
    "kappa",
    "scattering_rank",
    "verdict",
    "mu_predicted",
    "mu_chromatic",
    "mu_numeric",
    "mu",
    "mu_source",
    "discrepancy",
)

# Row and column bins of the edge-count x ML-degree tables for n = 7 and 8.
TABLE_LAYOUTS = {
    7: (
        [(12, 12), (13, 13), (14, 14), (15, 15), (16, 16), (17, 17), (18, 21)],
        [(1, 1), (2, 2), (3, 3), (4, 4), (5, 6), (7, 9), (10, 24)],
    ),
    8: (
        [(13, 13), (14, 14), (15, 15), (16, 16), (17, 17), (18, 18), (19, 19), (20, 21), (22, 28)],
        [(1, 1), (2, 2), (3, 4), (5, 6), (7, 10), (11, 20), (21, 120)],
    ),
}


@dataclass(frozen=True)
class Options:
    samples: int = DEFAULT_SAMPLES
    seed: int = 0
    solve: bool = False
    starts: int = 200
    tol: float = 1e-10


@dataclass
class GraphReport:
    graph6: str
    n: int
    edge_count: int
    nonedges: str
    verdict: str
    kappa: int | None = None
    scattering_rank: int | None = None
    target_rank: int | None = None
    mu_predicted: int | None = None
    mu_chromatic: int | None = None
    mu_numeric: int | None = None
    numeric: dict | None = None
    mu: int | None = None
    mu_source: str | None = None
    gamma_kappa: int | None = None
    gamma_c: int | None = None
    flags: dict = field(default_factory=dict)
    conditions: dict = field(default_factory=dict)
    witness: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)
    timings: dict = field(default_factory=dict)

    @property
    def discrepancy(self) -> bool:
        return bool(self.flags.get("DISCREPANCY"))

    def as_dict(self, timings: bool = True) -> dict:
        out = {
            "schema_version": SCHEMA_VERSION,
            "graph6": self.graph6,
            "n": self.n,
            "edge_count": self.edge_count,
            "nonedges": self.nonedges,
            "kappa": self.kappa,
            "scattering_rank": self.scattering_rank,
            "target_rank": self.target_rank,
            "verdict": self.verdict,
            "mu_predicted": self.mu_predicted,
            "mu_chromatic": self.mu_chromatic,
            "mu_numeric": self.mu_numeric,
            "numeric": self.numeric,
            "mu": self.mu,
            "mu_source": self.mu_source,
            "gamma_kappa": self.gamma_kappa,
            "gamma_c": self.gamma_c,
            "flags": dict(self.flags),
            "conditions": dict(self.conditions),
            "witness": dict(self.witness),
            "notes": list(self.notes),
        }
        if timings:
            out["timings"] = dict(self.timings)
        return out

    def csv_row(self) -> list:
        d = self.as_dict(timings=False)
        d["discrepancy"] = int(self.discrepancy)
        return ["" if d[c] is None else d[c] for c in CSV_COLUMNS]


def resolve_mu(predicted, chromatic, numeric, numeric_stable) -> tuple[int | None, str | None]:
    """Pick the value used for tables: theorem first, then measurement, then conjecture."""
    if chromatic is not None:
        return chromatic, "chromatic"
    if numeric is not None and numeric_stable:
        return numeric, "numeric"
    if predicted is not None:
        return predicted, "predicted"
    return None, None


def analyze_graph(g: Graph, opts: Options = Options()) -> GraphReport:
    t0 = time.perf_counter()
    universal = g.universal_vertices()
    report = GraphReport(
        graph6=emit_graph6(g),
        n=g.n,
        edge_count=g.edge_count,
        nonedges=",".join(f"{i}{j}" if g.n < 10 else f"{i}-{j}" for i, j in g.nonedges),
        verdict=Verdict.INCONCLUSIVE.value,
        flags={
            "universal_vertex": bool(universal),
            "bipartite_components": g.bipartite_components(),
            "degree_min": min(g.degrees) if g.n else 0,
            "DISCREPANCY": False,
        },
    )
    cert = certify_copious(g, samples=opts.samples, seed=opts.seed)
    report.timings["certify"] = round(time.perf_counter() - t0, 4)
    d = cert.as_dict()
    report.verdict = d["verdict"]
    report.kappa = d["kappa"]
    report.scattering_rank = d["scattering_rank"]
    report.target_rank = d["target_rank"]
    report.conditions = {
        k: d[k] for k in ("condition_coloop_free", "condition_rank", "condition_strict", "condition_kernel_sum")
    }
    report.conditions["samples_used"] = d["samples_used"]
    report.witness = d["witness"]
    report.notes = d["notes"]
    if cert.verdict != Verdict.COPIOUS:
        return report

    t1 = time.perf_counter()
    report.mu_predicted = mu_formula(g)
    if universal:
        report.mu_chromatic = mu_universal_vertex(g, universal[-1])
    report.timings["mu"] = round(time.perf_counter() - t1, 4)
    stable = False
    if opts.solve:
        t2 = time.perf_counter()
        sample = sample_mandelstam(kinematics.build(g), seed=opts.seed)
        sol = solve_critical_points(g, sample, starts=opts.starts, tol=opts.tol, seed=opts.seed)
        stable = sol.status == "stable"
        report.mu_numeric = sol.count
        report.numeric = {
            "status": sol.status,
            "starts": sol.starts_used,
            "converged": sol.converged,
            "max_residual": max(sol.residuals, default=None),
            "max_relative_residual": max(sol.relative_residuals, default=None),
        }
        report.timings["solve"] = round(time.perf_counter() - t2, 4)
    present = {v for v in (report.mu_predicted, report.mu_chromatic, report.mu_numeric) if v is not None}
    report.flags["DISCREPANCY"] = len(present) > 1
    report.mu, report.mu_source = resolve_mu(report.mu_predicted, report.mu_chromatic, report.mu_numeric, stable)
    if report.mu_source == "predicted":
        report.notes.append("mu from the conjectural partition formula")
    report.gamma_kappa, report.gamma_c = gamma_kappa(g, report.mu)
    return report


# -- census --------------------------------------------------------------------

@dataclass
class CensusEntry:
    lineno: int
    report: GraphReport | None = None
    error: str | None = None


@dataclass
class CensusSummary:
    n: int | None
    total_graphs: int = 0
    copious_count: int = 0
    not_copious_count: int = 0
    inconclusive_count: int = 0
    malformed: list = field(default_factory=list)
    histogram: Counter = field(default_factory=Counter)  # (edge_count, mu) -> count
    discrepancies: list = field(default_factory=list)
    lower_bound: bool = False

    @classmethod
    def from_entries(cls, entries: Iterable[CensusEntry]) -> "CensusSummary":
        entries = list(entries)
        ns = {e.report.n for e in entries if e.report}
        summary = cls(n=ns.pop() if len(ns) == 1 else None)
        for e in entries:
            if e.report is None:
                summary.malformed.append({"line": e.lineno, "error": e.error})
                continue
            r = e.report
            summary.total_graphs += 1
            if r.verdict == Verdict.COPIOUS.value:
                summary.copious_count += 1
                summary.histogram[(r.edge_count, r.mu)] += 1
                if r.discrepancy:
                    summary.discrepancies.append(
                        {"graph6": r.graph6, "nonedges": r.nonedges, "mu_predicted": r.mu_predicted,
                         "mu_chromatic": r.mu_chromatic, "mu_numeric": r.mu_numeric}
                    )
            elif r.verdict == Verdict.NOT_COPIOUS.value:
                summary.not_copious_count += 1
            else:
                summary.inconclusive_count += 1
        # with uncertified graphs, or at n >= 9 where inputs are not exhaustive,
        # the copious count can only be a lower bound
        summary.lower_bound = summary.inconclusive_count > 0 or (summary.n or 0) >= 9
        return summary

    def table(self) -> tuple[list[str], list[str], list[list[int]], int]:
        """Binned histogram: row labels, column labels, counts, and cells outside the bins."""
        layout = TABLE_LAYOUTS.get(self.n)
        if layout is None:
            rows = sorted({(e, e) for e, _ in self.histogram})
            cols = sorted({(m, m) for _, m in self.histogram})
        else:
            rows, cols = layout
        counts = [[0] * len(cols) for _ in rows]
        outside = 0
        for (e, m), c in self.histogram.items():
            ri = next((k for k, (a, b) in enumerate(rows) if a <= e <= b), None)
            ci = next((k for k, (a, b) in enumerate(cols) if a <= m <= b), None)
            if ri is None or ci is None:
                outside += c
            else:
                counts[ri][ci] += c
        label = lambda a, b: str(a) if a == b else f"{a}..{b}"
        return [label(*r) for r in rows], [label(*c) for c in cols], counts, outside

    def as_dict(self) -> dict:
        rows, cols, counts, outside = self.table()
        return {
            "schema_version": SCHEMA_VERSION,
            "n": self.n,
            "total_graphs": self.total_graphs,
            "copious_count": self.copious_count,
            "copious_count_is_lower_bound": self.lower_bound,
            "not_copious_count": self.not_copious_count,
            "inconclusive_count": self.inconclusive_count,
            "malformed": list(self.malformed),
            "histogram": [
                {"edge_count": e, "mu": m, "count": c} for (e, m), c in sorted(self.histogram.items())
            ],
            "table": {"rows": rows, "columns": cols, "counts": counts, "outside": outside},
            "discrepancies": list(self.discrepancies),
        }


def resolve_threads(threads: int | None) -> int:
    if threads is None:
        env = os.environ.get("COPIOUS_THREADS")
        threads = int(env) if env else 1
    if threads < 1:
        raise ValueError("threads must be positive")
    return threads


def _work(args) -> GraphReport:
    g, opts = args
    return analyze_graph(g, opts)


def run_census(items: Iterable[tuple[int, Graph | None, str | None]], opts: Options = Options(),
               threads: int | None = None) -> list[CensusEntry]:
    """Analyze every parsed graph; output order follows input order for any thread count."""
    items = list(items)
    graphs = [(k, g) for k, (_, g, _) in enumerate(items) if g is not None]
    threads = resolve_threads(threads)
    work = [(g, opts) for _, g in graphs]
    if threads == 1 or len(work) < 2:
        reports = [_work(w) for w in work]
    else:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            reports = list(pool.map(_work, work, chunksize=max(1, len(work) // (8 * threads))))
    by_index = {k: r for (k, _), r in zip(graphs, reports)}
    return [
        CensusEntry(lineno, by_index.get(k), err)
        for k, (lineno, _, err) in enumerate(items)
    ]


def builtin_items(graphs: Iterable[Graph]) -> Iterator[tuple[int, Graph, None]]:
    for k, g in enumerate(graphs, 1):
        yield k, g, None


def write_csv(entries: Iterable[CensusEntry], out) -> None:
    out.write(f"# copious census schema {SCHEMA_VERSION}; columns: {','.join(CSV_COLUMNS)}\n")
    w = csv.writer(out, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for e in entries:
        if e.report is not None:
            w.writerow(e.report.csv_row())


def csv_text(entries: Iterable[CensusEntry]) -> str:
    buf = io.StringIO()
    write_csv(entries, buf)
    return buf.getvalue()
