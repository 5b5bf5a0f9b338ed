"""Combinatorial ML degree: chromatic polynomials and independent-set partitions.

Polynomials are tuples of integer coefficients in increasing degree.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb, factorial
from typing import Iterator, Sequence

from .graphs import Graph, GraphError, canonical_form, pair_list

MEMO_CANONICAL_CAP = 7

Poly = tuple


class MLDegreeError(ValueError):
    pass


def poly_eval(p: Sequence[int], t: int) -> int:
    acc = 0
    for c in reversed(p):
        acc = acc * t + c
    return acc


def _trim(p: list[int]) -> tuple[int, ...]:
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    return tuple(p)


def poly_add(p, q, sign=1):
    out = [0] * max(len(p), len(q))
    for k, c in enumerate(p):
        out[k] += c
    for k, c in enumerate(q):
        out[k] += sign * c
    return _trim(out)


def poly_mul(p, q):
    out = [0] * (len(p) + len(q) - 1)
    for a, x in enumerate(p):
        if x:
            for b, y in enumerate(q):
                out[a + b] += x * y
    return _trim(out)


def falling_factorial(n: int) -> tuple[int, ...]:
    """t (t-1) ... (t-n+1)."""
    p: tuple[int, ...] = (1,)
    for k in range(n):
        p = poly_mul(p, (-k, 1))
    return p


def divide_by_t_minus_1(p: Sequence[int]) -> tuple[tuple[int, ...], int]:
    """Synthetic division by (t - 1); returns quotient and remainder."""
    deg = len(p) - 1
    if deg == 0:
        return (0,), p[0]
    q = [0] * deg
    carry = 0
    for k in range(deg, 0, -1):
        carry = p[k] + carry
        q[k - 1] = carry
    rem = p[0] + carry
    return _trim(q), rem


@dataclass(frozen=True)
class ChromaticPolynomial:
    coeffs: tuple

    def __call__(self, t: int) -> int:
        return poly_eval(self.coeffs, t)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1


def _contract(n: int, edges: frozenset, i: int, j: int) -> tuple[int, frozenset]:
    """Identify j with i (i < j) and drop j; parallel edges collapse."""
    def lab(v):
        v = i if v == j else v
        return v if v < j else v - 1
    out = set()
    for a, b in edges:
        a, b = lab(a), lab(b)
        if a != b:
            out.add((min(a, b), max(a, b)))
    return n - 1, frozenset(out)


def _key(n: int, edges: frozenset):
    if n <= MEMO_CANONICAL_CAP:
        return n, canonical_form(Graph.from_edges(n, edges)).bits
    return n, edges


_memo: dict = {}


def _chromatic(n: int, edges: frozenset) -> tuple[int, ...]:
    m = len(edges)
    if m == 0:
        return (0,) * n + (1,)
    full = n * (n - 1) // 2
    if m == full:
        return falling_factorial(n)
    key = _key(n, edges)
    hit = _memo.get(key)
    if hit is not None:
        return hit
    if 2 * m <= full:
        i, j = max(edges)
        # p(G) = p(G - e) - p(G / e)
        res = poly_add(_chromatic(n, edges - {(i, j)}), _chromatic(*_contract(n, edges, i, j)), -1)
    else:
        i, j = next(p for p in pair_list(n) if p not in edges)
        # p(G) = p(G + e) + p(G / e)
        res = poly_add(_chromatic(n, edges | {(i, j)}), _chromatic(*_contract(n, edges, i, j)))
    _memo[key] = res
    return res


def chromatic(g: Graph) -> ChromaticPolynomial:
    """Chromatic polynomial by deletion-contraction (addition-contraction when dense)."""
    return ChromaticPolynomial(_chromatic(g.n, frozenset(g.edges)))


def brute_force_colorings(g: Graph, k: int) -> int:
    """Number of proper k-colourings by exhaustive search."""
    colour = [0] * (g.n + 1)
    nbrs = [[] for _ in range(g.n + 1)]
    for i, j in g.edges:
        nbrs[j].append(i)

    def go(v):
        if v > g.n:
            return 1
        total = 0
        for c in range(k):
            if all(colour[w] != c for w in nbrs[v]):
                colour[v] = c
                total += go(v + 1)
        return total

    return go(1)


@dataclass(frozen=True)
class PartitionCounts:
    pi: tuple  # pi[s-1] = number of partitions into s independent blocks

    def __getitem__(self, s: int) -> int:
        if 1 <= s <= len(self.pi):
            return self.pi[s - 1]
        return 0


def partition_counts(g: Graph) -> PartitionCounts:
    """pi(s) = (1/s!) sum_i (-1)^(s-i) C(s,i) p_G(i), the surjective colourings up to relabeling."""
    p = chromatic(g)
    out = []
    for s in range(1, g.n + 1):
        total = sum((-1) ** (s - i) * comb(s, i) * p(i) for i in range(s + 1))
        q, r = divmod(total, factorial(s))
        if r:
            raise MLDegreeError("surjective colouring count not divisible by s!")
        out.append(q)
    return PartitionCounts(tuple(out))


def independent_partitions(g: Graph) -> Iterator[list[list[int]]]:
    """All set partitions of the vertices into independent blocks."""
    adj = g.adjacency

    def go(v, blocks, masks):
        if v == g.n:
            yield [list(b) for b in blocks]
            return
        bit = 1 << v
        for k, m in enumerate(masks):
            if not adj[v] & m:
                blocks[k].append(v + 1)
                masks[k] |= bit
                yield from go(v + 1, blocks, masks)
                masks[k] &= ~bit
                blocks[k].pop()
        blocks.append([v + 1])
        masks.append(bit)
        yield from go(v + 1, blocks, masks)
        blocks.pop()
        masks.pop()

    yield from go(0, [], [])


def partition_counts_brute(g: Graph) -> PartitionCounts:
    counts = [0] * g.n
    for part in independent_partitions(g):
        counts[len(part) - 1] += 1
    return PartitionCounts(tuple(counts))


def mu_formula(g: Graph) -> int:
    """Predicted ML degree |sum_{s>=3} (-1)^(s-3) (s-3)! pi_G(s)| (conjectural in general)."""
    pc = partition_counts(g)
    return abs(sum((-1) ** (s - 3) * factorial(s - 3) * pc[s] for s in range(3, g.n + 1)))


def mu_universal_vertex(g: Graph, v: int) -> int:
    """|p_{G-v}(t)/(t-1) at t = 1| for a universal vertex v."""
    if g.degrees[v - 1] != g.n - 1:
        raise MLDegreeError(f"vertex {v} is not universal")
    h = g.delete_vertex(v)
    q, rem = divide_by_t_minus_1(chromatic(h).coeffs)
    if rem:
        raise MLDegreeError("chromatic polynomial not divisible by t - 1")
    return abs(poly_eval(q, 1))


def reduced_chromatic(g: Graph, v: int) -> tuple[int, ...]:
    q, rem = divide_by_t_minus_1(chromatic(g.delete_vertex(v)).coeffs)
    if rem:
        raise MLDegreeError("chromatic polynomial not divisible by t - 1")
    return q


def mu_bipyramid(n: int) -> int:
    if n < 5:
        raise GraphError("bipyramid needs n >= 5")
    return n - 4


def gamma_kappa(g: Graph, mu: int) -> tuple[int, int]:
    """Leading and last multidegree coefficients (mu * (n-2), 1)."""
    return mu * (g.n - 2), 1
