"""Momentum conservation on a graph: the kinematic space and its lattice."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

from .graphs import Graph, GraphError, pair_index
from .linalg import IntegerLattice, int_kernel_vectors, int_rref, integer_kernel


class KinematicsError(ValueError):
    pass


def momentum_matrix(g: Graph) -> list[list[int]]:
    """n x |G| incidence matrix: row i has a 1 in every column ij."""
    return [[int(k in e) for e in g.edges] for k in range(1, g.n + 1)]


@dataclass(frozen=True)
class KinematicSpace:
    graph: Graph
    momentum_matrix: tuple
    kappa: int
    lattice: IntegerLattice

    @property
    def r(self) -> int:
        return self.lattice.rank

    @cached_property
    def kernel_vectors(self) -> list[list[int]]:
        return int_kernel_vectors(self.momentum_matrix, self.graph.edge_count)


def build(g: Graph) -> KinematicSpace:
    if g.edge_count == 0:
        raise KinematicsError("kinematic space of an edgeless graph is empty")
    mom = momentum_matrix(g)
    kappa = len(int_rref(mom, g.edge_count)[1])
    lattice = integer_kernel(mom)
    return KinematicSpace(g, tuple(tuple(r) for r in mom), kappa, lattice)


def kappa_from_components(g: Graph) -> int:
    return g.n - g.bipartite_components()


def is_compatible(g: Graph) -> tuple[bool, tuple[int, int] | None]:
    """Whether K_G meets the open torus; otherwise return a co-loop edge.

    An edge is a co-loop of the even-cycle matroid exactly when every kernel
    vector of the momentum matrix vanishes on it.
    """
    if g.edge_count == 0:
        return False, None
    kern = int_kernel_vectors(momentum_matrix(g), g.edge_count)
    for k, e in enumerate(g.edges):
        if all(v[k] == 0 for v in kern):
            return False, e
    return True, None


def is_compatible_graph_theoretic(g: Graph) -> bool:
    """No degree-one vertex and no edge lying on every odd cycle of its component."""
    if g.edge_count == 0:
        return False
    if any(d == 1 for d in g.degrees):
        return False
    comp_of = {}
    for comp in g.components():
        for v in comp:
            comp_of[v] = tuple(comp)
    for e in g.edges:
        comp = comp_of[e[0]]
        sub = Graph(g.n, g.bits & ~(1 << pair_index(g.n, *e)))
        # e lies on every odd cycle of its component iff the component is
        # non-bipartite but loses all odd cycles once e is removed
        if not _bipartite_on(g, comp) and _bipartite_on(sub, comp):
            return False
    return True


def _bipartite_on(g: Graph, verts: Sequence[int]) -> bool:
    vs = set(verts)
    side: dict[int, int] = {}
    for s in verts:
        if s in side:
            continue
        side[s] = 0
        stack = [s]
        while stack:
            v = stack.pop()
            for w in g.neighbors(v):
                if w not in vs:
                    continue
                if w not in side:
                    side[w] = 1 - side[v]
                    stack.append(w)
                elif side[w] == side[v]:
                    return False
    return True


# -- circuits of the even-cycle matroid -------------------------------------

def _is_linear_circuit(g: Graph, subset: Sequence[int]) -> bool:
    cols = [g.edges[k] for k in subset]
    mat = [[int(v in e) for e in cols] for v in range(1, g.n + 1)]
    kern = int_kernel_vectors(mat, len(cols))
    return len(kern) == 1 and all(kern[0])


def _combinatorial_circuit(edges: Sequence[tuple[int, int]]) -> bool:
    """Even cycle, tight handcuff, or loose handcuff with odd cycles."""
    adj: dict[int, list[int]] = {}
    for i, j in edges:
        adj.setdefault(i, []).append(j)
        adj.setdefault(j, []).append(i)
    nv, ne = len(adj), len(edges)
    if any(len(a) < 2 for a in adj.values()) or not _connected(adj):
        return False
    deg = sorted(len(a) for a in adj.values())
    if ne == nv:
        return deg[-1] == 2 and ne % 2 == 0
    if ne != nv + 1:
        return False
    if deg[-1] == 4 and deg[-2] == 2:
        center = next(v for v, a in adj.items() if len(a) == 4)
        length = _walk_to(adj, center, adj[center][0])
        return length is not None and length % 2 == 1 and (ne - length) % 2 == 1
    if deg[-1] == 3 and deg[-2] == 3 and (len(deg) < 3 or deg[-3] == 2):
        u, w = [v for v, a in adj.items() if len(a) == 3]
        loops = []
        for x in (u, w):
            returns = [_walk_to(adj, x, y) for y in adj[x]]
            loops.append([r for r in returns if r is not None])
        # a handcuff has a cycle returning to each branch vertex; a theta graph has none
        if not loops[0] or not loops[1]:
            return False
        return loops[0][0] % 2 == 1 and loops[1][0] % 2 == 1
    return False


def _walk_to(adj, start, first) -> int | None:
    """Follow a path of degree-2 vertices from ``start`` via ``first``.

    Returns the number of edges if the walk comes back to ``start``, None if
    it stops at a different branch vertex.
    """
    prev, cur, length = start, first, 1
    while cur != start:
        if len(adj[cur]) != 2:
            return None
        nxt = adj[cur][0] if adj[cur][0] != prev else adj[cur][1]
        prev, cur = cur, nxt
        length += 1
    return length


def _connected(adj) -> bool:
    start = next(iter(adj))
    seen = {start}
    stack = [start]
    while stack:
        v = stack.pop()
        for w in adj[v]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == len(adj)


def evencycle_circuit_check(g: Graph) -> bool:
    """Compare linear circuits of {e_i + e_j} with the combinatorial families.

    Brute force over edge subsets of size at most n + 1 whose support has
    minimum degree two; any circuit of either kind has such support.
    """
    if g.n > 7:
        raise GraphError("evencycle_circuit_check supports n <= 7")
    m = g.edge_count
    inc = [0] * (g.n + 1)
    for k, (i, j) in enumerate(g.edges):
        inc[i] |= 1 << k
        inc[j] |= 1 << k
    for size in range(2, min(m, g.n + 1) + 1):
        for subset in itertools.combinations(range(m), size):
            mask = 0
            for k in subset:
                mask |= 1 << k
            if any((mask & inc[v]).bit_count() == 1 for v in range(1, g.n + 1)):
                continue
            lin = _is_linear_circuit(g, subset)
            comb = _combinatorial_circuit([g.edges[k] for k in subset])
            if lin != comb:
                return False
    return True


# -- generalized cross-ratios -------------------------------------------------

@dataclass(frozen=True)
class CrossRatio:
    edges: tuple
    exponent: tuple

    def __post_init__(self):
        if len(self.edges) != len(self.exponent):
            raise KinematicsError("exponent length must match the edge list")


def lattice_cross_ratios(ks: KinematicSpace) -> list[CrossRatio]:
    return [CrossRatio(ks.graph.edges, tuple(v)) for v in ks.lattice.basis]


def cross_ratio_eval(cr: CrossRatio, x: Sequence[complex]) -> complex:
    """Laurent monomial prod (x_i - x_j)^a_ij; ``x[0]`` is the coordinate of vertex 1."""
    num = 1 + 0j
    den = 1 + 0j
    for (i, j), a in zip(cr.edges, cr.exponent):
        if not a:
            continue
        d = x[i - 1] - x[j - 1]
        if d == 0:
            raise KinematicsError(f"x_{i} = x_{j} on edge {i}{j} with nonzero exponent")
        if a > 0:
            num *= d ** a
        else:
            den *= d ** (-a)
    return num / den


def universal_vertex_basis(g: Graph, v: int) -> list[CrossRatio]:
    """Z-basis of the kinematic lattice from the gauge-fixed linear cross-ratios.

    Relabels so that ``v`` becomes n and the first edge avoiding ``v`` becomes
    12, takes the lattice vectors ``[1i][2n]/[12][in]``, ``[1n][2i]/[12][in]``
    and ``[1n][2n][ij]/[12][in][jn]`` whose label 1i, 2i or ij is an edge, and
    maps them back to the original labels.
    """
    n = g.n
    if g.degrees[v - 1] != n - 1:
        raise KinematicsError(f"vertex {v} is not universal")
    base = next(((a, b) for a, b in g.edges if v not in (a, b)), None)
    if base is None:
        raise KinematicsError("no edge avoids the universal vertex; cannot place 12")
    a, b = base
    rest = [w for w in range(1, n + 1) if w not in (a, b, v)]
    # new label -> old label
    old = {1: a, 2: b, n: v}
    for k, w in enumerate(rest, start=3):
        old[k] = w
    col = {e: k for k, e in enumerate(g.edges)}

    def e(i, j):
        p, q = sorted((old[i], old[j]))
        return col[(p, q)]

    def has(i, j):
        return g.has_edge(old[i], old[j])

    vecs = []

    def add(plus, minus):
        vec = [0] * g.edge_count
        for p in plus:
            vec[e(*p)] += 1
        for p in minus:
            vec[e(*p)] -= 1
        vecs.append(vec)

    for i in range(3, n):
        if has(1, i):
            add([(1, i), (2, n)], [(1, 2), (i, n)])
    for i in range(3, n):
        if has(2, i):
            add([(1, n), (2, i)], [(1, 2), (i, n)])
    for i in range(3, n):
        for j in range(i + 1, n):
            if has(i, j):
                add([(1, n), (2, n), (i, j)], [(1, 2), (i, n), (j, n)])
    return [CrossRatio(g.edges, tuple(vec)) for vec in vecs]
