"""Simple graphs on vertices 1..n stored as edge bitmasks.

Edges are indexed in lexicographic order 12, 13, ..., 1n, 23, ..., (n-1)n and
bit ``k`` of :attr:`Graph.bits` is set iff the k-th pair is an edge.  This
order is the column order used by every downstream matrix.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Sequence

MAX_VERTICES = 12
MAX_CANONICAL = 9
MAX_BUILTIN = 6


class GraphError(ValueError):
    pass


class Graph6Error(GraphError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (byte offset {offset})")
        self.offset = offset


def pair_list(n: int) -> list[tuple[int, int]]:
    """All pairs (i, j), 1 <= i < j <= n, in lexicographic order."""
    return list(itertools.combinations(range(1, n + 1), 2))


def pair_index(n: int, i: int, j: int) -> int:
    if i > j:
        i, j = j, i
    if not 1 <= i < j <= n:
        raise GraphError(f"invalid pair {i}{j} for n={n}")
    # pairs starting with 1..i-1 come first
    before = (i - 1) * n - (i - 1) * i // 2
    return before + (j - i - 1)


@dataclass(frozen=True)
class Graph:
    n: int
    bits: int

    def __post_init__(self):
        if not 1 <= self.n <= MAX_VERTICES:
            raise GraphError(f"vertex count must be in 1..{MAX_VERTICES}, got {self.n}")
        npairs = self.n * (self.n - 1) // 2
        if self.bits < 0 or self.bits >> npairs:
            raise GraphError("edge bitmask has bits outside the pair range")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> "Graph":
        bits = 0
        for i, j in edges:
            if i == j:
                raise GraphError(f"self-loop at vertex {i}")
            bits |= 1 << pair_index(n, i, j)
        return cls(n, bits)

    @cached_property
    def edges(self) -> tuple[tuple[int, int], ...]:
        return tuple(p for k, p in enumerate(pair_list(self.n)) if self.bits >> k & 1)

    @property
    def edge_count(self) -> int:
        return self.bits.bit_count()

    def __len__(self) -> int:
        return self.edge_count

    def has_edge(self, i: int, j: int) -> bool:
        if i == j:
            return False
        return bool(self.bits >> pair_index(self.n, i, j) & 1)

    @cached_property
    def adjacency(self) -> tuple[int, ...]:
        """Neighbour bitmask per vertex; index 0 is vertex 1, bit b is vertex b+1."""
        adj = [0] * self.n
        for i, j in self.edges:
            adj[i - 1] |= 1 << (j - 1)
            adj[j - 1] |= 1 << (i - 1)
        return tuple(adj)

    def neighbors(self, i: int) -> list[int]:
        a = self.adjacency[i - 1]
        return [j + 1 for j in range(self.n) if a >> j & 1]

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        return tuple(a.bit_count() for a in self.adjacency)

    @property
    def nonedges(self) -> list[tuple[int, int]]:
        return [p for p in pair_list(self.n) if not self.has_edge(*p)]

    def universal_vertices(self) -> list[int]:
        return [i + 1 for i, d in enumerate(self.degrees) if d == self.n - 1]

    def components(self) -> list[list[int]]:
        return components_of(self.adjacency, (1 << self.n) - 1)

    def bipartite_components(self) -> int:
        """Number of bipartite components; isolated vertices count."""
        count = 0
        for comp in self.components():
            side = {comp[0]: 0}
            stack = [comp[0]]
            ok = True
            while stack and ok:
                v = stack.pop()
                for w in self.neighbors(v):
                    if w not in side:
                        side[w] = 1 - side[v]
                        stack.append(w)
                    elif side[w] == side[v]:
                        ok = False
                        break
            count += ok
        return count

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Image under the map i -> perm[i-1] (perm is a permutation of 1..n)."""
        return Graph.from_edges(self.n, ((perm[i - 1], perm[j - 1]) for i, j in self.edges))

    def delete_vertex(self, v: int) -> "Graph":
        """Remove vertex v and shift the labels above it down by one."""
        def lab(i):
            return i if i < v else i - 1
        return Graph.from_edges(
            self.n - 1, ((lab(i), lab(j)) for i, j in self.edges if v not in (i, j))
        )

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={''.join(f' {i}{j}' for i, j in self.edges).strip()!r})"


def components_of(adj: Sequence[int], mask: int) -> list[list[int]]:
    """Connected components of the subgraph induced on the vertex bitmask ``mask``."""
    comps = []
    remaining = mask
    while remaining:
        low = remaining & -remaining
        seen = low
        frontier = low
        while frontier:
            b = frontier & -frontier
            frontier ^= b
            new = adj[b.bit_length() - 1] & mask & ~seen
            seen |= new
            frontier |= new
        remaining &= ~seen
        comps.append([k + 1 for k in range(seen.bit_length()) if seen >> k & 1])
    return comps


# -- named constructors -----------------------------------------------------

def complete_graph(n: int) -> Graph:
    return Graph(n, (1 << (n * (n - 1) // 2)) - 1)


def empty_graph(n: int) -> Graph:
    return Graph(n, 0)


def complement(g: Graph) -> Graph:
    return Graph(g.n, complete_graph(g.n).bits ^ g.bits)


def remove_edges(g: Graph, pairs: Iterable[Sequence[int]]) -> Graph:
    bits = g.bits
    for i, j in pairs:
        k = pair_index(g.n, i, j)
        if not bits >> k & 1:
            raise GraphError(f"{min(i, j)}{max(i, j)} is not an edge")
        bits &= ~(1 << k)
    return Graph(g.n, bits)


def from_nonedges(n: int, pairs: Iterable[Sequence[int]]) -> Graph:
    return remove_edges(complete_graph(n), pairs)


def cycle_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i % n + 1) for i in range(1, n + 1)])


def octahedron() -> Graph:
    return from_nonedges(6, [(1, 2), (3, 4), (5, 6)])


def bipyramid(n: int) -> Graph:
    """(n-2)-cycle on 3..n with apexes 1 and 2 joined to every cycle vertex."""
    if n < 5:
        raise GraphError("bipyramid needs n >= 5")
    edges = [(i, i + 1) for i in range(3, n)] + [(3, n)]
    edges += [(a, i) for a in (1, 2) for i in range(3, n + 1)]
    return Graph.from_edges(n, edges)


def parse_pairs(text: str) -> list[tuple[int, int]]:
    """Parse a list like ``"12,34,56"`` or ``"1-2 3-4"`` into vertex pairs.

    Two-character tokens are read digit by digit, so labels above 9 need the
    dashed form.
    """
    pairs = []
    for pos, tok in enumerate(t for t in text.replace(",", " ").split()):
        if "-" in tok:
            a, _, b = tok.partition("-")
        elif len(tok) == 2 and tok.isdigit():
            a, b = tok
        else:
            raise GraphError(f"cannot read pair {tok!r} (token {pos + 1})")
        pairs.append((int(a), int(b)))
    return pairs


# -- graph6 -------------------------------------------------------------------

def parse_graph6(text: str) -> Graph:
    data = text.strip().encode("ascii")
    if not data:
        raise Graph6Error("empty graph6 word", 0)
    for k, c in enumerate(data):
        if not 63 <= c <= 126:
            raise Graph6Error(f"byte {c!r} outside 63..126", k)
    if data[0] == 126:
        raise Graph6Error("multi-byte vertex counts are not supported", 0)
    n = data[0] - 63
    if n < 1:
        raise Graph6Error("graph6 word encodes zero vertices", 0)
    if n > MAX_VERTICES:
        raise Graph6Error(f"n={n} exceeds the supported maximum {MAX_VERTICES}", 0)
    nbits = n * (n - 1) // 2
    nbytes = -(-nbits // 6)
    if len(data) != 1 + nbytes:
        raise Graph6Error(f"expected {1 + nbytes} bytes for n={n}, got {len(data)}", min(len(data), 1 + nbytes))
    stream = 0
    for c in data[1:]:
        stream = stream << 6 | (c - 63)
    pad = 6 * nbytes - nbits
    if stream & ((1 << pad) - 1):
        raise Graph6Error("nonzero padding bits", len(data) - 1)
    stream >>= pad
    bits = 0
    k = nbits - 1
    for j in range(2, n + 1):
        for i in range(1, j):
            if stream >> k & 1:
                bits |= 1 << pair_index(n, i, j)
            k -= 1
    return Graph(n, bits)


def emit_graph6(g: Graph) -> str:
    if g.n > 62:
        raise GraphError("graph6 short form needs n <= 62")
    out = [chr(g.n + 63)]
    word = 0
    nbits = 0
    for j in range(2, g.n + 1):
        for i in range(1, j):
            word = word << 1 | g.has_edge(i, j)
            nbits += 1
    pad = -nbits % 6
    word <<= pad
    nbits += pad
    for shift in range(nbits - 6, -1, -6):
        out.append(chr((word >> shift & 63) + 63))
    return "".join(out)


def read_graph6_lines(lines: Iterable[str]) -> Iterator[tuple[int, Graph | None, str | None]]:
    """Yield ``(line_number, graph, error)`` for each non-comment line."""
    for lineno, raw in enumerate(lines, 1):
        line = raw.strip()
        if not line or line.startswith("#") or line.startswith(">>graph6<<"):
            continue
        try:
            yield lineno, parse_graph6(line), None
        except GraphError as exc:
            yield lineno, None, str(exc)


# -- canonical forms and enumeration ---------------------------------------

@dataclass(frozen=True)
class CanonicalForm:
    bits: int
    witness_perm: tuple[int, ...]


def _refined_classes(g: Graph) -> list[list[int]]:
    """Ordered colour classes from iterated degree refinement.

    The colouring is computed from label-free data only, so the ordered
    class list is an isomorphism invariant.
    """
    n = g.n
    colour = [0] * n
    nclasses = 1
    while True:
        sig = [
            (colour[v], tuple(sorted(colour[w - 1] for w in g.neighbors(v + 1))))
            for v in range(n)
        ]
        ranks = {s: r for r, s in enumerate(sorted(set(sig)))}
        colour = [ranks[s] for s in sig]
        if len(ranks) == nclasses:
            break
        nclasses = len(ranks)
    classes: list[list[int]] = [[] for _ in range(nclasses)]
    for v in range(n):
        classes[colour[v]].append(v + 1)
    return classes


def canonical_form(g: Graph) -> CanonicalForm:
    """Minimal edge bitmask over relabelings that respect the refined colouring.

    A relabeling is admissible when it sends the colour classes, in order,
    onto consecutive label blocks.  Both the class order and the set of
    admissible relabelings are isomorphism invariant, so the minimum is a
    canonical form.
    """
    if g.n > MAX_CANONICAL:
        raise GraphError(f"canonical_form supports n <= {MAX_CANONICAL}")
    classes = _refined_classes(g)
    n = g.n
    pidx = [[0] * (n + 1) for _ in range(n + 1)]
    for k, (i, j) in enumerate(pair_list(n)):
        pidx[i][j] = pidx[j][i] = k
    edges = g.edges
    best = None
    best_perm = None
    blocks = []
    start = 1
    for cls in classes:
        blocks.append(list(range(start, start + len(cls))))
        start += len(cls)
    for choice in itertools.product(*(itertools.permutations(b) for b in blocks)):
        perm = [0] * (n + 1)
        for cls, targets in zip(classes, choice):
            for v, t in zip(cls, targets):
                perm[v] = t
        bits = 0
        for i, j in edges:
            bits |= 1 << pidx[perm[i]][perm[j]]
        if best is None or bits < best:
            best = bits
            best_perm = tuple(perm[1:])
    return CanonicalForm(best, best_perm)


def _extend(g: Graph, nbrs: int) -> Graph:
    """Add vertex n+1 joined to the vertices in the bitmask ``nbrs``."""
    m = g.n + 1
    edges = list(g.edges) + [(i + 1, m) for i in range(g.n) if nbrs >> i & 1]
    return Graph.from_edges(m, edges)


def isomorphism_classes(graphs: Iterable[Graph]) -> list[Graph]:
    """One canonical representative per class, sorted by (edges, bits)."""
    seen = {}
    for h in graphs:
        cf = canonical_form(h)
        seen.setdefault(cf.bits, Graph(h.n, cf.bits))
    return sorted(seen.values(), key=lambda h: (h.edge_count, h.bits))


def _all_classes(n: int) -> list[Graph]:
    if n == 1:
        return [Graph(1, 0)]
    smaller = _all_classes(n - 1)
    return isomorphism_classes(_extend(h, s) for h in smaller for s in range(1 << (n - 1)))


def enumerate_graphs(n: int) -> Iterator[Graph]:
    """One canonical representative per isomorphism class on n <= 6 vertices.

    Every graph on n vertices arises from a graph on n-1 vertices by adding a
    vertex, so extending all (n-1)-classes in every way and reducing modulo
    isomorphism is exhaustive.
    """
    if n > MAX_BUILTIN:
        raise GraphError(
            f"built-in enumeration stops at n={MAX_BUILTIN}; supply a graph6 file for n={n}"
        )
    if n < 1:
        raise GraphError("n must be positive")
    yield from _all_classes(n)
