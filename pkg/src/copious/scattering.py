"""Scattering matroid S(G) at rational sample points and copiousness certification.

The matrix S_G(u) stacks the n momentum rows on top of the n rows of
coefficients of the scattering equations at x = u.  Everything is exact;
randomness only enters through the choice of sample points.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Sequence

import numpy as np

from . import kinematics
from .graphs import Graph
from .linalg import RationalMatrix, int_kernel_vectors, int_rref, integer_rows, intersect_rowspaces

DEFAULT_SAMPLES = 25
CONFIRM_SAMPLES = 100
SAMPLE_RANGE = 10**6


class Verdict(str, enum.Enum):
    COPIOUS = "Copious"
    NOT_COPIOUS = "NotCopious"
    INCONCLUSIVE = "Inconclusive"


class ScatteringError(ValueError):
    pass


def _check_point(g: Graph, u: Sequence) -> list[Fraction]:
    if len(u) != g.n:
        raise ScatteringError(f"sample point needs {g.n} coordinates, got {len(u)}")
    u = [Fraction(x) for x in u]
    if len(set(u)) != len(u):
        raise ScatteringError("sample point has coincident coordinates")
    return u


def scattering_rows(g: Graph, u: Sequence) -> list[list[Fraction]]:
    """Rows of S_G(u): momentum rows, then (u_k - u_w)^-1 at column kw for w ~ k."""
    u = _check_point(g, u)
    rows = kinematics.momentum_matrix(g)
    rows = [[Fraction(x) for x in r] for r in rows]
    for k in range(1, g.n + 1):
        row = []
        for i, j in g.edges:
            if i == k:
                row.append(1 / (u[i - 1] - u[j - 1]))
            elif j == k:
                row.append(1 / (u[j - 1] - u[i - 1]))
            else:
                row.append(Fraction(0))
        rows.append(row)
    return rows


def _integer_scattering_rows(g: Graph, u: Sequence[int]) -> list[list[int]]:
    """Same row space as S_G(u) for integer u, each equation row scaled to integers.

    Row n+k is multiplied by prod_{w ~ k} (u_k - u_w).
    """
    rows = kinematics.momentum_matrix(g)
    for k in range(1, g.n + 1):
        nbrs = g.neighbors(k)
        diffs = {w: u[k - 1] - u[w - 1] for w in nbrs}
        total = 1
        for d in diffs.values():
            total *= d
        row = []
        for i, j in g.edges:
            if k == i:
                row.append(total // diffs[j])
            elif k == j:
                row.append(total // diffs[i])
            else:
                row.append(0)
        rows.append(row)
    return rows


@dataclass(frozen=True)
class ScatteringEvaluation:
    graph: Graph
    point: tuple
    matrix: RationalMatrix

    @cached_property
    def _int_rows(self) -> list[list[int]]:
        return integer_rows(self.matrix.to_rows())

    @property
    def rank(self) -> int:
        return len(int_rref(self._int_rows, self.matrix.cols)[1])

    @cached_property
    def kernel(self) -> list[list[int]]:
        return int_kernel_vectors(self._int_rows, self.matrix.cols)


def evaluate(g: Graph, u: Sequence) -> ScatteringEvaluation:
    rows = scattering_rows(g, u)
    return ScatteringEvaluation(g, tuple(Fraction(x) for x in u), RationalMatrix.from_rows(rows, g.edge_count))


def sample_points(n: int, count: int, seed: int) -> list[list[int]]:
    """``count`` points with distinct integer coordinates in [1, 10^6]."""
    rng = np.random.default_rng(seed)
    return [[int(x) + 1 for x in rng.choice(SAMPLE_RANGE, size=n, replace=False)] for _ in range(count)]


def scattering_rank(g: Graph, samples: int = DEFAULT_SAMPLES, seed: int = 0) -> int:
    """Maximum of rank S_G(u) over sampled points (never exceeds the matroid rank)."""
    if samples < 1:
        raise ScatteringError("samples must be positive")
    if g.edge_count == 0:
        return 0
    best = 0
    for u in sample_points(g.n, samples, seed):
        best = max(best, len(int_rref(_integer_scattering_rows(g, u), g.edge_count)[1]))
    return best


# -- certification -------------------------------------------------------------

@dataclass
class CopiousReport:
    graph: Graph
    kappa: int | None
    scattering_rank: int | None
    condition_coloop_free: dict = field(default_factory=dict)
    condition_rank: bool = False
    condition_strict: bool = False
    condition_kernel_sum: bool = False
    verdict: Verdict = Verdict.INCONCLUSIVE
    samples_used: int = 0
    seed: int = 0
    witness: dict = field(default_factory=dict)
    kernel_sum_dim: int | None = None
    kinematic_dim: int | None = None
    notes: list = field(default_factory=list)

    @property
    def target_rank(self) -> int | None:
        return None if self.kappa is None else self.kappa + self.graph.n - 3

    def as_dict(self) -> dict:
        return {
            "n": self.graph.n,
            "edge_count": self.graph.edge_count,
            "kappa": self.kappa,
            "scattering_rank": self.scattering_rank,
            "target_rank": self.target_rank,
            "condition_coloop_free": all(self.condition_coloop_free.values()) if self.condition_coloop_free else False,
            "scattering_coloops": [f"{i}{j}" for (i, j), ok in self.condition_coloop_free.items() if not ok],
            "condition_rank": self.condition_rank,
            "condition_strict": self.condition_strict,
            "condition_kernel_sum": self.condition_kernel_sum,
            "kernel_sum_dim": self.kernel_sum_dim,
            "kinematic_dim": self.kinematic_dim,
            "verdict": self.verdict.value,
            "samples_used": self.samples_used,
            "seed": self.seed,
            "witness": self.witness,
            "notes": list(self.notes),
        }


class _Accumulator:
    """Running per-sample statistics; one exact elimination per sample point."""

    def __init__(self, g: Graph):
        self.g = g
        self.m = g.edge_count
        self.max_rank = 0
        self.del_rank = [0] * self.m
        self.kernel_span: list[list[int]] = []
        self.kernel_dim = 0
        self.history: list[int] = []

    def add(self, u):
        rows = _integer_scattering_rows(self.g, u)
        kern = int_kernel_vectors(rows, self.m)
        r = self.m - len(kern)
        self.max_rank = max(self.max_rank, r)
        for e in range(self.m):
            coloop = all(v[e] == 0 for v in kern)
            self.del_rank[e] = max(self.del_rank[e], r - coloop)
        if kern:
            red, piv = int_rref(self.kernel_span + kern, self.m)
            self.kernel_span = red
            self.kernel_dim = len(piv)
        self.history.append(self.kernel_dim)


def _linear_form(vec: Sequence[int], edges) -> str:
    terms = []
    for c, (i, j) in zip(vec, edges):
        if not c:
            continue
        sign = "-" if c < 0 else "+"
        mag = "" if abs(c) == 1 else f"{abs(c)}*"
        terms.append(f"{sign} {mag}s{i}{j}" if i < 10 and j < 10 else f"{sign} {mag}s{i},{j}")
    text = " ".join(terms)
    return text[2:] if text.startswith("+ ") else "-" + text[2:]


def certify_copious(g: Graph, samples: int = DEFAULT_SAMPLES, seed: int = 0) -> CopiousReport:
    """Decide matroidal copiousness with a three-valued verdict.

    Exact rejections come first (co-loop of the even-cycle matroid, a vertex of
    degree at most two, the strict edge-count inequality).  The remaining
    conditions are evaluated at ``samples`` random points; when one of them
    fails the sampling continues to at least 100 points and the failure is
    accepted as NotCopious only if the kernel sum stopped growing over the
    second half of the points.
    """
    if samples < 2:
        raise ScatteringError("certification needs at least two samples")
    report = CopiousReport(graph=g, kappa=None, scattering_rank=None, seed=seed)
    if g.edge_count == 0:
        report.verdict = Verdict.NOT_COPIOUS
        report.witness = {"reason": "edgeless"}
        return report
    ks = kinematics.build(g)
    report.kappa = ks.kappa
    report.kinematic_dim = g.edge_count - ks.kappa
    report.condition_strict = ks.kappa + g.n - 3 < g.edge_count

    ok, coloop = kinematics.is_compatible(g)
    if not ok:
        report.verdict = Verdict.NOT_COPIOUS
        report.witness = {"reason": "incompatible", "coloop": f"{coloop[0]}{coloop[1]}"}
        return report
    low = [v for v, d in enumerate(g.degrees, 1) if d < 3]
    if low:
        report.verdict = Verdict.NOT_COPIOUS
        report.witness = {"reason": "low_degree", "vertex": low[0], "degree": g.degrees[low[0] - 1]}
        return report

    points = sample_points(g.n, max(samples, CONFIRM_SAMPLES), seed)
    acc = _Accumulator(g)
    for u in points[:samples]:
        acc.add(u)
    used = samples

    def evaluate_conditions():
        report.scattering_rank = acc.max_rank
        report.condition_rank = acc.max_rank == report.target_rank
        report.condition_coloop_free = {
            e: acc.del_rank[k] == acc.max_rank for k, e in enumerate(g.edges)
        }
        report.kernel_sum_dim = acc.kernel_dim
        report.condition_kernel_sum = acc.kernel_dim == report.kinematic_dim
        return (
            report.condition_rank
            and report.condition_strict
            and all(report.condition_coloop_free.values())
            and report.condition_kernel_sum
        )

    passed = evaluate_conditions()
    if g.n > 8:
        report.notes.append("edge-count inequality checked beyond n = 8")
    if passed:
        report.verdict = Verdict.COPIOUS
        report.samples_used = used
        return report
    if acc.max_rank > report.target_rank:
        report.verdict = Verdict.NOT_COPIOUS
        report.samples_used = used
        report.witness = {"reason": "rank_exceeds", "rank": acc.max_rank, "target": report.target_rank}
        return report
    if not report.condition_strict:
        report.verdict = Verdict.NOT_COPIOUS
        report.samples_used = used
        report.witness = {"reason": "edge_count", "target": report.target_rank, "edges": g.edge_count}
        return report

    for u in points[used:]:
        acc.add(u)
    used = len(points)
    report.samples_used = used
    if evaluate_conditions():
        report.verdict = Verdict.COPIOUS
        return report
    half = acc.history[used // 2 - 1]
    if acc.history[-1] != half:
        report.verdict = Verdict.INCONCLUSIVE
        report.witness = {"reason": "kernel_sum_still_growing", "kernel_sum_dim": acc.kernel_dim}
        return report
    report.verdict = Verdict.NOT_COPIOUS
    witness = {"reason": "persistent_deficiency"}
    if not report.condition_rank:
        witness["rank"] = acc.max_rank
        witness["target"] = report.target_rank
    if not report.condition_kernel_sum:
        witness["kernel_sum_dim"] = acc.kernel_dim
        witness["kinematic_dim"] = report.kinematic_dim
        form = _extra_functional(ks, acc.kernel_span)
        if form is not None:
            witness["functional"] = _linear_form(form, g.edges)
    bad = [f"{i}{j}" for (i, j), fine in report.condition_coloop_free.items() if not fine]
    if bad:
        witness["scattering_coloops"] = bad
    report.witness = witness
    return report


def _extra_functional(ks: kinematics.KinematicSpace, kernel_span) -> list[int] | None:
    """A linear form vanishing on the sampled kernel sum but not on K_G."""
    m = ks.graph.edge_count
    if kernel_span:
        forms = int_kernel_vectors(kernel_span, m)
    else:
        forms = [[int(i == j) for j in range(m)] for i in range(m)]
    base = [list(r) for r in ks.momentum_matrix]
    base_rank = len(int_rref(base, m)[1])
    for f in forms:
        if len(int_rref(base + [f], m)[1]) > base_rank:
            return f
    return None


def rowspace_intersection_dim(g: Graph, samples: int, seed: int) -> int:
    """dim of the intersection of rowspace S_G(u) over sampled u."""
    mats = [evaluate(g, u).matrix for u in sample_points(g.n, samples, seed)]
    return intersect_rowspaces(mats).rows
