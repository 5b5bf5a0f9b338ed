from __future__ import annotations

import random
from math import factorial

import pytest

from copious.graphs import (
    Graph,
    bipyramid,
    complete_graph,
    cycle_graph,
    empty_graph,
    enumerate_graphs,
    from_nonedges,
    octahedron,
    pair_list,
    parse_pairs,
)
from copious.mldegree import (
    MLDegreeError,
    brute_force_colorings,
    chromatic,
    divide_by_t_minus_1,
    falling_factorial,
    gamma_kappa,
    mu_bipyramid,
    mu_formula,
    mu_universal_vertex,
    partition_counts,
    partition_counts_brute,
    poly_add,
    poly_mul,
    reduced_chromatic,
)
from copious.scattering import Verdict, certify_copious


def _poly(*roots):
    p = (1,)
    for r in roots:
        p = poly_mul(p, (-r, 1))
    return p


@pytest.mark.parametrize("m", range(3, 9))
def test_cycle_chromatic(m):
    t_minus_1_pow = _poly(*([1] * m))
    expected = poly_add(t_minus_1_pow, tuple((-1) ** m * c for c in (-1, 1)))
    assert chromatic(cycle_graph(m)).coeffs == expected


@pytest.mark.parametrize("n", range(1, 8))
def test_complete_chromatic_is_falling_factorial(n):
    assert chromatic(complete_graph(n)).coeffs == falling_factorial(n)


def test_chromatic_against_brute_force():
    rng = random.Random(11)
    pairs = pair_list(6)
    for _ in range(30):
        g = Graph.from_edges(6, [p for p in pairs if rng.random() < 0.5])
        p = chromatic(g)
        for k in range(4):
            assert p(k) == brute_force_colorings(g, k)


def test_octahedron_partitions_and_mu():
    pc = partition_counts(octahedron())
    assert [pc[s] for s in range(1, 7)] == [0, 0, 1, 3, 3, 1]
    assert mu_formula(octahedron()) == 2


def test_k6_partitions():
    pc = partition_counts(complete_graph(6))
    assert [pc[s] for s in range(1, 7)] == [0, 0, 0, 0, 0, 1]


def test_empty_graph_gives_stirling_row():
    assert partition_counts(empty_graph(4)).pi == (1, 7, 6, 1)


@pytest.mark.parametrize("n", range(1, 7))
def test_partition_oracle_all_graphs(n):
    for g in enumerate_graphs(n):
        assert partition_counts(g) == partition_counts_brute(g), g


def test_falling_factorial_identity():
    for g in enumerate_graphs(6):
        pc = partition_counts(g)
        total = (0,)
        for s in range(1, g.n + 1):
            total = poly_add(total, tuple(pc[s] * c for c in falling_factorial(s)))
        assert total == chromatic(g).coeffs


@pytest.mark.parametrize("n", range(4, 10))
def test_complete_mu(n):
    assert mu_formula(complete_graph(n)) == factorial(n - 3)
    assert mu_universal_vertex(complete_graph(n), n) == factorial(n - 3)


@pytest.mark.parametrize("n", range(5, 13))
def test_bipyramid_mu(n):
    assert mu_formula(bipyramid(n)) == mu_bipyramid(n) == n - 4


@pytest.mark.parametrize("n", range(6, 10))
def test_two_disjoint_nonedges(n):
    g = from_nonedges(n, [(1, 2), (3, 4)])
    assert mu_formula(g) == factorial(n - 3) - 2 * factorial(n - 4) + factorial(n - 5)


@pytest.mark.parametrize("n", range(5, 10))
def test_two_adjacent_nonedges(n):
    g = from_nonedges(n, [(1, 2), (2, 3)])
    assert mu_formula(g) == factorial(n - 3) - 2 * factorial(n - 4)


@pytest.mark.parametrize("n", range(6, 10))
def test_triangle_removed(n):
    g = from_nonedges(n, [(1, 2), (1, 3), (2, 3)])
    assert mu_formula(g) == factorial(n - 3) - 3 * factorial(n - 4) + factorial(n - 5)


def test_reduced_chromatic_examples():
    g = from_nonedges(6, [(1, 2)])
    assert reduced_chromatic(g, 6) == _poly(0, 2, 3, 3)
    assert mu_universal_vertex(g, 6) == 4
    h = from_nonedges(6, parse_pairs("12,34,45"))
    assert reduced_chromatic(h, 6) == poly_mul(_poly(0, 2), (5, -4, 1))
    assert mu_universal_vertex(h, 6) == 2


def test_divide_by_t_minus_1():
    q, r = divide_by_t_minus_1(_poly(1, 2, 5))
    assert (q, r) == (_poly(2, 5), 0)
    assert divide_by_t_minus_1((1, 1))[1] == 2


def test_universal_vertex_required():
    with pytest.raises(MLDegreeError):
        mu_universal_vertex(octahedron(), 1)


def test_formula_matches_chromatic_route_n6():
    for g in enumerate_graphs(6):
        uv = g.universal_vertices()
        if uv and certify_copious(g).verdict == Verdict.COPIOUS:
            assert all(mu_universal_vertex(g, v) == mu_formula(g) for v in uv)


def test_gamma():
    assert gamma_kappa(complete_graph(5), 2) == (6, 1)
    assert gamma_kappa(from_nonedges(5, [(4, 5)]), 1) == (3, 1)
    assert gamma_kappa(octahedron(), 2) == (8, 1)


def test_mu_bipyramid_small():
    from copious.graphs import GraphError

    with pytest.raises(GraphError):
        mu_bipyramid(4)
