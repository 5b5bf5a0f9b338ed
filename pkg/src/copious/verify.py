"""Reference values and the checks behind ``copious verify``."""
from __future__ import annotations

from dataclasses import dataclass
from math import factorial

from . import kinematics
from .census import Options, analyze_graph, builtin_items, run_census, CensusSummary
from .graphs import bipyramid, canonical_form, complete_graph, enumerate_graphs, from_nonedges, parse_pairs
from .mldegree import mu_formula, mu_universal_vertex
from .scattering import Verdict, scattering_rank
from .solver import sample_mandelstam, solve_critical_points

# The fifteen copious graphs on six vertices: non-edges, kappa, mu, and the
# leading multidegree coefficient gamma_kappa.
N6_TABLE = (
    ("12,13,23,45,46,56", 5, 1, 4),
    ("12,23,34", 6, 1, 4),
    ("12,13,23", 6, 1, 4),
    ("12,34,45,56", 6, 1, 4),
    ("12,13,23,45", 6, 1, 4),
    ("12,23,34,45", 6, 1, 4),
    ("12,23,34,45,56", 6, 1, 4),
    ("12,15,23,34,45", 6, 1, 4),
    ("12,23", 6, 2, 8),
    ("12,34,56", 6, 2, 8),
    ("12,34,45", 6, 2, 8),
    ("15,25,36,46", 6, 2, 8),
    ("12,34", 6, 3, 12),
    ("12", 6, 4, 16),
    ("", 6, 6, 24),
)

CENSUS_COUNTS = {4: 1, 5: 3, 6: 15, 7: 129}

SCOPES = ("n6", "bipyramid", "kn", "census", "all")


@dataclass
class Check:
    name: str
    expected: object
    observed: object

    @property
    def ok(self) -> bool:
        return self.expected == self.observed


def n6_graphs():
    return [from_nonedges(6, parse_pairs(ne)) if ne else complete_graph(6) for ne, *_ in N6_TABLE]


def check_n6(opts: Options) -> list[Check]:
    out = []
    for (ne, kappa, mu, lead), g in zip(N6_TABLE, n6_graphs()):
        r = analyze_graph(g, opts)
        label = f"n6 [{ne or 'none'}]"
        out.append(Check(f"{label} verdict", "Copious", r.verdict))
        out.append(Check(f"{label} kappa", kappa, r.kappa))
        out.append(Check(f"{label} mu", mu, r.mu))
        out.append(Check(f"{label} mu_predicted", mu, r.mu_predicted))
        out.append(Check(f"{label} gamma_kappa", lead, r.gamma_kappa))
        if opts.solve:
            out.append(Check(f"{label} mu_numeric", mu, r.mu_numeric))
    table = {canonical_form(g).bits for g in n6_graphs()}
    graphs = list(enumerate_graphs(6))
    entries = run_census(builtin_items(graphs), Options(opts.samples, opts.seed))
    found = {
        canonical_form(g).bits
        for e, g in zip(entries, graphs)
        if e.report.verdict == Verdict.COPIOUS.value
    }
    out.append(Check("n6 copious set equals table", True, found == table))
    return out


def check_bipyramid(opts: Options, top: int = 10) -> list[Check]:
    out = []
    for n in range(5, top + 1):
        g = bipyramid(n)
        out.append(Check(f"bipyramid({n}) mu_predicted", n - 4, mu_formula(g)))
        if n <= 8:
            r = analyze_graph(g, Options(opts.samples, opts.seed))
            out.append(Check(f"bipyramid({n}) verdict", "Copious", r.verdict))
        if opts.solve and n <= 7:
            s = sample_mandelstam(kinematics.build(g), opts.seed)
            sol = solve_critical_points(g, s, starts=opts.starts, tol=opts.tol, seed=opts.seed)
            out.append(Check(f"bipyramid({n}) mu_numeric", n - 4, sol.count))
    return out


def check_kn(opts: Options, top: int = 7) -> list[Check]:
    out = []
    for n in range(4, top + 1):
        g = complete_graph(n)
        r = analyze_graph(g, opts)
        out.append(Check(f"K{n} verdict", "Copious", r.verdict))
        out.append(Check(f"K{n} scattering rank", 2 * n - 3, scattering_rank(g, opts.samples, opts.seed)))
        out.append(Check(f"K{n} mu_predicted", factorial(n - 3), r.mu_predicted))
        out.append(Check(f"K{n} mu_chromatic", factorial(n - 3), mu_universal_vertex(g, n)))
        if opts.solve:
            out.append(Check(f"K{n} mu_numeric", factorial(n - 3), r.mu_numeric))
    return out


def check_census(opts: Options, threads: int | None = None) -> list[Check]:
    out = []
    for n in (4, 5, 6):
        entries = run_census(builtin_items(enumerate_graphs(n)), Options(opts.samples, opts.seed), threads)
        summary = CensusSummary.from_entries(entries)
        out.append(Check(f"census n={n} copious", CENSUS_COUNTS[n], summary.copious_count))
        out.append(Check(f"census n={n} inconclusive", 0, summary.inconclusive_count))
    return out


def run_scope(scope: str, opts: Options, threads: int | None = None) -> list[Check]:
    if scope not in SCOPES:
        raise ValueError(f"unknown scope {scope!r}")
    checks = []
    if scope in ("n6", "all"):
        checks += check_n6(opts)
    if scope in ("bipyramid", "all"):
        checks += check_bipyramid(opts)
    if scope in ("kn", "all"):
        checks += check_kn(opts)
    if scope in ("census", "all"):
        checks += check_census(opts, threads)
    return checks
