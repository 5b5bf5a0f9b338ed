"""Numerical critical points of the graphical scattering potential.

The potential L_G(x) = sum s_ij log(x_i - x_j) is invariant under Moebius
maps when s satisfies momentum conservation, so three coordinates can be
pinned.  Each Newton start pins some vertex triple and solves the remaining
n-3 equations; every limit is then moved to the common gauge on
(x_1, x_2, x_3), polished and deduplicated by cross-ratio fingerprints.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .graphs import Graph, components_of
from .kinematics import KinematicSpace, KinematicsError, momentum_matrix

DEFAULT_GAUGE = (0.0, 1.0, 2.0)
STEP_TOL = 1e-13
NEWTON_RESIDUAL = 1e-12
DEDUP_RADIUS = 1e-6
BOUNDARY_RADIUS = 1e-6
MAX_ITER = 80
ESCAPE_RADIUS = 1e8
COEFF_RANGE = 1000


class SolverError(ValueError):
    pass


@dataclass(frozen=True)
class MandelstamSample:
    s: tuple  # per edge of the graph, lexicographic order
    seed: int | None = None
    t: tuple = ()


def sample_mandelstam(ks: KinematicSpace, seed: int = 0) -> MandelstamSample:
    """Random integer point of K_G with every s_ij nonzero.

    Coefficients on the lattice basis are uniform integers in [-1000, 1000].
    """
    basis = ks.lattice.basis
    if not basis:
        raise KinematicsError("kinematic space is zero; graph is incompatible")
    rng = np.random.default_rng(seed)
    m = ks.graph.edge_count
    for _ in range(1000):
        t = [int(c) for c in rng.integers(-COEFF_RANGE, COEFF_RANGE + 1, size=len(basis))]
        s = [sum(tk * b[e] for tk, b in zip(t, basis)) for e in range(m)]
        if all(s):
            return MandelstamSample(tuple(s), seed, tuple(t))
    raise KinematicsError("could not draw a sample with all s_ij nonzero; graph is incompatible")


def mandelstam_from_values(g: Graph, values: Sequence) -> MandelstamSample:
    """Wrap explicit edge values after checking momentum conservation exactly."""
    vals = tuple(Fraction(v) for v in values)
    if len(vals) != g.edge_count:
        raise SolverError("need one value per edge")
    for row in momentum_matrix(g):
        if sum(r * v for r, v in zip(row, vals)) != 0:
            raise SolverError("values violate momentum conservation")
    return MandelstamSample(vals)


# The 6-cycle 1-5-4-2-6-3-1 determines the remaining six octahedron variables.
_CYCLE_EDGES = ((1, 3), (1, 5), (4, 5), (2, 4), (2, 6), (3, 6))
_FACET_EDGES = ((1, 4), (1, 6), (4, 6), (2, 3), (2, 5), (3, 5))
_FACET_MAP = (
    (-1, -1, -1, -1, 1, 1),
    (-1, -1, 1, 1, -1, -1),
    (1, 1, -1, -1, -1, -1),
    (-1, 1, 1, -1, -1, -1),
    (1, -1, -1, -1, -1, 1),
    (-1, -1, -1, 1, 1, -1),
)


def octahedron_from_cycle_basis(g: Graph, cycle_values: Sequence) -> MandelstamSample:
    """Full octahedron s-vector from (s13, s15, s45, s24, s26, s36)."""
    vals = [Fraction(v) for v in cycle_values]
    known = dict(zip(_CYCLE_EDGES, vals))
    for e, row in zip(_FACET_EDGES, _FACET_MAP):
        known[e] = Fraction(sum(c * v for c, v in zip(row, vals)), 2)
    return mandelstam_from_values(g, [known[e] for e in g.edges])


def _s_matrix(g: Graph, s: Sequence) -> np.ndarray:
    S = np.zeros((g.n, g.n), dtype=complex)
    for (i, j), v in zip(g.edges, s):
        S[i - 1, j - 1] = S[j - 1, i - 1] = complex(v)
    return S


def gradient(S: np.ndarray, x: np.ndarray) -> np.ndarray:
    """All n partial derivatives dL/dx_i = sum_j s_ij / (x_i - x_j)."""
    D = x[:, None] - x[None, :]
    np.fill_diagonal(D, 1.0)
    W = S / D
    return W.sum(axis=1)


def relative_residual(S: np.ndarray, x: np.ndarray) -> float:
    """max_i |dL/dx_i| / sum_j |s_ij / (x_i - x_j)|, a backward-error measure.

    Near-collisions make the absolute gradient unreliable in double precision
    (rounding in x_i - x_j is amplified by 1/|x_i - x_j|^2); the ratio stays
    at the level of machine epsilon for a correctly rounded critical point.
    """
    D = x[:, None] - x[None, :]
    np.fill_diagonal(D, 1.0)
    W = S / D
    np.fill_diagonal(W, 0.0)
    size = np.abs(W).sum(axis=1)
    size[size == 0] = 1.0
    return float((np.abs(W.sum(axis=1)) / size).max())


def _jacobian(S: np.ndarray, x: np.ndarray) -> np.ndarray:
    D = x[:, None] - x[None, :]
    np.fill_diagonal(D, 1.0)
    H = S / D**2
    np.fill_diagonal(H, 0.0)
    H[np.diag_indices_from(H)] = -H.sum(axis=1)
    return H


# -- batched Newton ------------------------------------------------------------
#
# Plain dL/dx_i decays like x_i^-2 at infinity, so damped Newton happily walks
# off there.  Equation i is therefore multiplied by (x_i - x_p) for every
# pinned neighbour p.  With two such factors the equation tends to a nonzero
# constant at infinity; because pinned points never coincide, the factors
# cannot create spurious roots on the collision locus either.

def _weighted_system(S, W, pinned, x):
    """Weighted equations and Jacobian for a batch of points x (shape (B, n)).

    ``W[b]`` marks the factors (x_i - x_p) of row b; ``pinned[b]`` marks the
    coordinates held fixed, whose equations are replaced by trivial ones.
    """
    n = x.shape[1]
    diag = np.arange(n)
    D = x[:, :, None] - x[:, None, :]
    D[:, diag, diag] = 1.0
    Q = S / D
    Q[:, diag, diag] = 0.0
    F = Q.sum(axis=2)
    H = S / D**2
    H[:, diag, diag] = 0.0
    H[:, diag, diag] = -H.sum(axis=2)
    Dw = np.where(W, D, 1.0)
    P = Dw.prod(axis=2)
    inv = np.where(W, 1.0 / Dw, 0.0)
    dP = -P[:, :, None] * inv
    dP[:, diag, diag] = P * inv.sum(axis=2)
    G = np.where(pinned, 0.0, P * F)
    JG = dP * F[:, :, None] + P[:, :, None] * H
    fixed = pinned[:, :, None] | pinned[:, None, :]
    JG = np.where(fixed, 0.0, JG)
    JG[:, diag, diag] = np.where(pinned, 1.0, JG[:, diag, diag])
    return G, JG


def _batched_solve(J, rhs):
    try:
        return np.linalg.solve(J, rhs[..., None])[..., 0]
    except np.linalg.LinAlgError:
        out = np.full_like(rhs, np.nan)
        for b in range(len(J)):
            try:
                out[b] = np.linalg.solve(J[b], rhs[b])
            except np.linalg.LinAlgError:
                pass
        return out


def _newton(S, W, pinned, x, max_iter=MAX_ITER):
    """Damped Newton on the weighted system, all starts at once."""
    x = x.copy()
    G, J = _weighted_system(S, W, pinned, x)
    gn = np.linalg.norm(G, axis=1)
    live = np.isfinite(gn)
    for _ in range(max_iter):
        idx = np.flatnonzero(live)
        if idx.size == 0:
            break
        Wi, Pi = W[idx], pinned[idx]
        step = _batched_solve(J[idx], -G[idx])
        base = x[idx]
        alpha = np.ones(idx.size)
        trial = base + step
        Gt, Jt = _weighted_system(S, Wi, Pi, trial)
        gt = np.linalg.norm(Gt, axis=1)
        for _ in range(10):
            worse = ~(gt < gn[idx])
            if not worse.any():
                break
            alpha[worse] /= 2
            redo = base[worse] + alpha[worse, None] * step[worse]
            trial[worse] = redo
            Gt[worse], Jt[worse] = _weighted_system(S, Wi[worse], Pi[worse], redo)
            gt[worse] = np.linalg.norm(Gt[worse], axis=1)
        x[idx], G[idx], J[idx], gn[idx] = trial, Gt, Jt, gt
        moved = alpha * np.linalg.norm(step, axis=1)
        size = np.abs(trial).max(axis=1)
        stop = (
            ~np.isfinite(gt)
            | (gt < NEWTON_RESIDUAL)
            | (moved < STEP_TOL * (1 + size))
            | (size > ESCAPE_RADIUS)
        )
        live[idx[stop]] = False
    return x


def _polish(S, x, free, steps=3):
    """A few plain Newton steps on dL/dx_i itself, one point."""
    for _ in range(steps):
        f = gradient(S, x)[free]
        if not np.all(np.isfinite(f)) or np.linalg.norm(f) < NEWTON_RESIDUAL:
            break
        try:
            step = np.linalg.solve(_jacobian(S, x)[np.ix_(free, free)], -f)
        except np.linalg.LinAlgError:
            break
        x = x.copy()
        x[free] += step
    return x


def fingerprint(x: np.ndarray) -> np.ndarray:
    """Cross-ratios [12|3i], i = 4..n: a Moebius-invariant coordinate vector."""
    return (x[0] - x[2]) * (x[1] - x[3:]) / ((x[0] - x[3:]) * (x[1] - x[2]))


@dataclass
class CriticalPointSet:
    gauge: tuple
    points: list = field(default_factory=list)
    residuals: list = field(default_factory=list)
    relative_residuals: list = field(default_factory=list)
    invariant_residuals: list = field(default_factory=list)
    fingerprints: list = field(default_factory=list)
    starts_used: int = 0
    converged: int = 0
    deduplicated: int = 0
    stabilized: bool = False
    scale: float = 1.0

    @property
    def count(self) -> int:
        return len(self.points)

    @property
    def status(self) -> str:
        if not self.points and not self.stabilized:
            return "undetermined"
        return "stable" if self.stabilized else "unstable"

    def full_points(self) -> list[np.ndarray]:
        return [np.concatenate([np.array(self.gauge, dtype=complex), p]) for p in self.points]


def _pin_order(g: Graph) -> list[tuple[int, int, int]]:
    """Vertex triples (0-indexed), best-connected first.

    A triple ranks higher when more free vertices get two pinned neighbours.
    Starts cycle through all triples: a critical point whose coordinates
    nearly collide has a tiny basin unless one of the clustered vertices is
    pinned.
    """
    adj = g.adjacency

    def key(t):
        mask = (1 << t[0]) | (1 << t[1]) | (1 << t[2])
        cover = [min(2, (adj[v] & mask).bit_count()) for v in range(g.n) if not mask >> v & 1]
        return (-sum(cover), -min(cover), t)

    return sorted(itertools.combinations(range(g.n), 3), key=key)


def _move_gauge(x: np.ndarray, gauge) -> np.ndarray | None:
    """Apply the Moebius map sending (x_1, x_2, x_3) to ``gauge``."""
    def to_std(a, b, c):
        # z -> (z - a)(b - c) / ((z - c)(b - a)) sends a, b, c to 0, 1, inf
        return np.array([[b - c, -a * (b - c)], [b - a, -c * (b - a)]], dtype=complex)

    M = np.linalg.solve(to_std(*gauge), to_std(*x[:3]))
    num = M[0, 0] * x + M[0, 1]
    den = M[1, 0] * x + M[1, 1]
    if np.any(np.abs(den) < 1e-12 * np.abs(num).max()):
        return None
    y = num / den
    y[:3] = gauge
    return y


def _chordal_gap(x: np.ndarray) -> float:
    """Smallest chordal distance between two coordinates on the Riemann sphere."""
    norm = np.sqrt(1 + np.abs(x) ** 2)
    D = np.abs(x[:, None] - x[None, :]) / (norm[:, None] * norm[None, :])
    np.fill_diagonal(D, np.inf)
    return float(D.min())


def _starts(n: int, triples, gauge, count: int, seed: int):
    """Initial points, weight masks and pin masks; start k pins triple k mod len."""
    x = np.zeros((count, n), dtype=complex)
    pinned = np.zeros((count, n), dtype=bool)
    for k in range(count):
        pins = list(triples[k % len(triples)])
        rng = np.random.default_rng([seed, k])
        y = rng.uniform(-3, 6, size=n - 3).astype(complex)
        if k % 2:
            y = y + 1j * rng.uniform(-2, 2, size=n - 3)
        pinned[k, pins] = True
        x[k, ~pinned[k]] = y
        x[k, pins] = gauge
    return x, pinned


def solve_critical_points(
    g: Graph,
    s: MandelstamSample | Sequence,
    starts: int = 200,
    tol: float = 1e-10,
    seed: int = 0,
    gauge: Sequence[float] = DEFAULT_GAUGE,
) -> CriticalPointSet:
    """Multistart damped Newton for the gauge-fixed scattering equations.

    ``s`` is rescaled to max |s_ij| = 1 (critical points are scale invariant);
    residuals are reported for the rescaled system.  Start k pins the k-th
    vertex triple (cycling, best-connected first) at the gauge values; every
    limit is then moved by a Moebius map to (x_1, x_2, x_3) = ``gauge`` and
    polished there.  Points are accepted on the relative residual.  Start k
    draws from its own stream seeded by ``(seed, k)``.
    """
    if g.n < 4:
        raise SolverError("need n >= 4")
    if starts < 1:
        raise SolverError("need at least one start")
    values = s.s if isinstance(s, MandelstamSample) else tuple(s)
    if len(values) != g.edge_count:
        raise SolverError("need one Mandelstam value per edge")
    S = _s_matrix(g, values)
    scale = float(np.abs(S).max())
    if scale == 0:
        raise SolverError("all Mandelstam values are zero")
    S = S / scale
    n = g.n
    gauge = tuple(float(c) for c in gauge)
    if len(set(gauge)) != 3:
        raise SolverError("gauge values must be distinct")
    triples = _pin_order(g)
    target_free = np.arange(3, n)
    result = CriticalPointSet(gauge=gauge, scale=scale)

    counts = []
    x0, pinned = _starts(n, triples, gauge, starts, seed)
    W = (S != 0)[None] & ~pinned[:, :, None] & pinned[:, None, :]
    with np.errstate(all="ignore"):
        for x in _newton(S, W, pinned, x0):
            if np.all(np.isfinite(x)):
                y = _move_gauge(x, gauge)
                if y is not None:
                    _accept(S, _polish(S, y, target_free), tol, result)
            counts.append(len(result.points))
    result.starts_used = starts
    half = counts[starts // 2 - 1] if starts >= 2 else 0
    result.stabilized = counts[-1] == half and counts[-1] > 0
    for p in result.full_points():
        th = theta_residuals(g, values, p, relative=True)
        result.invariant_residuals.append(max((abs(v) for v in th[1:]), default=0.0))
    return result


def _accept(S, x, tol, result: CriticalPointSet) -> None:
    if not np.all(np.isfinite(x)):
        return
    rel = relative_residual(S, x)
    if not rel < tol:
        return
    res = float(np.abs(gradient(S, x)).max())
    if _chordal_gap(x) < BOUNDARY_RADIUS:
        return
    result.converged += 1
    fp = fingerprint(x)
    for other in result.fingerprints:
        if np.all(np.abs(fp - other) <= DEDUP_RADIUS * np.maximum(1.0, np.abs(other))):
            result.deduplicated += 1
            return
    result.fingerprints.append(fp)
    result.points.append(x[3:].copy())
    result.residuals.append(res)
    result.relative_residuals.append(rel)


# -- vanishing identities ------------------------------------------------------

def theta_residuals(g: Graph, s: Sequence, x: Sequence[complex], relative: bool = False) -> list[complex]:
    """sum_ij s_ij sum_{l=0..k} x_i^(k-l) x_j^l for k = 1..n-2.

    With ``relative`` each value is divided by the same sum taken over
    absolute values, so it is dimensionless.
    """
    x = np.asarray(x, dtype=complex)
    out = []
    for k in range(1, g.n - 1):
        total = 0j
        size = 0.0
        for (i, j), v in zip(g.edges, s):
            a, b = x[i - 1], x[j - 1]
            h = sum(a ** (k - l) * b**l for l in range(k + 1))
            habs = sum(abs(a) ** (k - l) * abs(b) ** l for l in range(k + 1))
            total += complex(v) * h
            size += abs(complex(v)) * habs
        out.append(total / size if relative and size else total)
    return out


def separator_derivations(g: Graph) -> list[tuple[frozenset, frozenset]]:
    """All (C, T) with T a separator and C a component of G minus T."""
    base = len(g.components())
    full = (1 << g.n) - 1
    out = []
    for size in range(1, g.n - 1):
        for T in itertools.combinations(range(1, g.n + 1), size):
            tmask = sum(1 << (t - 1) for t in T)
            comps = components_of(g.adjacency, full & ~tmask)
            if len(comps) > base:
                out.extend((frozenset(c), frozenset(T)) for c in comps)
    return out


def derivation_residual(g: Graph, s: Sequence, x: Sequence[complex], C, T) -> complex:
    """sum_{i in C} prod_{t in T} (x_i - x_t) * dL/dx_i in rational-function form."""
    x = np.asarray(x, dtype=complex)
    S = _s_matrix(g, s)
    grad = gradient(S, x)
    total = 0j
    for i in C:
        f = 1 + 0j
        for t in T:
            f *= x[i - 1] - x[t - 1]
        total += f * grad[i - 1]
    return total


def derivation_polynomial(g: Graph, s: Sequence, x: Sequence[complex], C, T) -> complex:
    """Same quantity with every pole cancelled symbolically before evaluating."""
    x = np.asarray(x, dtype=complex)
    C = set(C)
    T = list(T)
    coeffs = np.poly([x[t - 1] for t in T])[::-1]  # increasing degree

    def divided_difference(a, b):
        return sum(c * sum(a ** (k - 1 - l) * b**l for l in range(k)) for k, c in enumerate(coeffs) if k)

    total = 0j
    for (i, j), v in zip(g.edges, s):
        v = complex(v)
        if i in C and j in C:
            total += v * divided_difference(x[i - 1], x[j - 1])
        elif i in C or j in C:
            a, b = (i, j) if i in C else (j, i)
            prod = 1 + 0j
            for t in T:
                if t != b:
                    prod *= x[a - 1] - x[t - 1]
            total += v * prod
    return total


def derivation_scale(g: Graph, s: Sequence, x: Sequence[complex], C, T) -> float:
    """Magnitude scale for relative derivation residuals: sum |s_ij| |x|^(|T|-1)."""
    x = np.asarray(x, dtype=complex)
    r = max(1.0, float(np.abs(x).max()))
    deg = max(len(T) - 1, 0)
    return float(sum(abs(complex(v)) for v in s)) * len(T) * r**deg
