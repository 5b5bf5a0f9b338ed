"""Copious graphs: CHY scattering equations restricted to a graph.

Certifies copiousness, computes the ML degree three ways and runs censuses.
"""
from __future__ import annotations

from .graphs import Graph, complete_graph, from_nonedges, parse_graph6, emit_graph6
from .scattering import Verdict, certify_copious
from .mldegree import mu_formula, mu_universal_vertex, partition_counts, chromatic
from .solver import sample_mandelstam, solve_critical_points

__version__ = "0.1.0"

__all__ = [
    "Graph",
    "Verdict",
    "certify_copious",
    "chromatic",
    "complete_graph",
    "emit_graph6",
    "from_nonedges",
    "mu_formula",
    "mu_universal_vertex",
    "parse_graph6",
    "partition_counts",
    "sample_mandelstam",
    "solve_critical_points",
]
