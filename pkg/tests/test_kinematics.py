from __future__ import annotations

import itertools
import math

import numpy as np
import pytest

from copious import kinematics as K
from copious.graphs import (
    Graph,
    complete_graph,
    cycle_graph,
    enumerate_graphs,
    from_nonedges,
    octahedron,
    parse_pairs,
)
from copious.solver import sample_mandelstam


def test_octahedron_space():
    ks = K.build(octahedron())
    assert (ks.kappa, ks.r) == (6, 6)


def test_k33_type_kappa():
    ks = K.build(from_nonedges(6, parse_pairs("12,13,23,45,46,56")))
    assert ks.kappa == 5


@pytest.mark.parametrize("n", range(3, 8))
def test_complete_kappa(n):
    assert K.build(complete_graph(n)).kappa == n


def test_compatibility_examples():
    assert K.is_compatible(complete_graph(3))[0] is False
    assert K.is_compatible(cycle_graph(4)) == (True, None)
    pendant = Graph.from_edges(5, [(1, 2), (2, 3), (3, 4), (4, 1), (4, 5)])
    ok, coloop = K.is_compatible(pendant)
    assert not ok and coloop == (4, 5)


def test_four_cycle_kernel():
    ks = K.build(cycle_graph(4))
    (v,) = ks.kernel_vectors
    s12, s14, s23, s34 = v
    assert s12 == s34 == -s23 == -s14


@pytest.mark.parametrize("n", range(2, 7))
def test_compatibility_criteria_agree(n):
    for g in enumerate_graphs(n):
        assert K.is_compatible(g)[0] == K.is_compatible_graph_theoretic(g), g


@pytest.mark.parametrize("n", range(2, 7))
def test_kappa_from_components(n):
    for g in enumerate_graphs(n):
        if g.edge_count:
            assert K.build(g).kappa == K.kappa_from_components(g), g


@pytest.mark.parametrize("g", [complete_graph(4), cycle_graph(4), octahedron(), from_nonedges(5, [(1, 2)])])
def test_evencycle_circuits(g):
    assert K.evencycle_circuit_check(g)


def test_cross_ratio_value():
    g = complete_graph(4)
    col = {e: k for k, e in enumerate(g.edges)}
    exp = [0] * 6
    exp[col[(1, 3)]] = exp[col[(2, 4)]] = 1
    exp[col[(1, 4)]] = exp[col[(2, 3)]] = -1
    cr = K.CrossRatio(g.edges, tuple(exp))
    assert K.cross_ratio_eval(cr, [0, 1, 2, 3]) == pytest.approx(4 / 3)


def _mobius(x, a, b, c, d):
    return (a * x + b) / (c * x + d)


@pytest.mark.parametrize("g", [complete_graph(5), octahedron(), from_nonedges(7, parse_pairs("12,34,56"))])
def test_cross_ratio_invariance(g):
    rng = np.random.default_rng(7)
    ks = K.build(g)
    for _ in range(5):
        x = rng.normal(size=g.n)
        a, b, c, d = rng.normal(size=4)
        y = _mobius(x, a, b, c, d)
        for cr in K.lattice_cross_ratios(ks):
            v, w = K.cross_ratio_eval(cr, x), K.cross_ratio_eval(cr, y)
            assert abs(v - w) < 1e-9 * abs(v)


@pytest.mark.parametrize("g", [complete_graph(6), octahedron(), from_nonedges(6, parse_pairs("12,23"))])
def test_potential_in_cross_ratio_coordinates(g):
    ks = K.build(g)
    sample = sample_mandelstam(ks, seed=2)
    rng = np.random.default_rng(1)
    x = rng.normal(size=g.n)
    lhs = sum(s * math.log(abs(x[i - 1] - x[j - 1])) for (i, j), s in zip(g.edges, sample.s))
    rhs = sum(t * math.log(abs(K.cross_ratio_eval(cr, x)))
              for t, cr in zip(sample.t, K.lattice_cross_ratios(ks)))
    assert lhs == pytest.approx(rhs, rel=1e-9)


@pytest.mark.parametrize("n", range(4, 8))
def test_universal_basis_complete(n):
    g = complete_graph(n)
    basis = K.universal_vertex_basis(g, n)
    assert len(basis) == math.comb(n - 1, 2) - 1 == K.build(g).r


def test_universal_basis_spans_lattice():
    g = from_nonedges(6, [(1, 2)])
    basis = K.universal_vertex_basis(g, 6)
    assert len(basis) == 8
    lat = K.build(g).lattice
    assert all(lat.contains(cr.exponent) for cr in basis)
    from copious.linalg import IntegerLattice

    assert IntegerLattice.from_basis([cr.exponent for cr in basis], g.edge_count) == lat


def test_universal_basis_rejects_non_universal():
    with pytest.raises(K.KinematicsError):
        K.universal_vertex_basis(octahedron(), 1)


def test_momentum_conservation_of_samples():
    g = complete_graph(4)
    s12, s13, s14, s23, s24, s34 = sample_mandelstam(K.build(g), seed=5).s
    assert (s12, s13, s14) == (s34, s24, s23)
    for n in (5, 6):
        g = complete_graph(n)
        s = sample_mandelstam(K.build(g), seed=n).s
        for row in K.momentum_matrix(g):
            assert sum(a * b for a, b in zip(row, s)) == 0
        assert all(s)


def test_edgeless_rejected():
    with pytest.raises(K.KinematicsError):
        K.build(Graph(3, 0))


def test_no_triangle_combinatorics_smoke():
    # every edge of K_{2,3} plus a chord: compatibility and criterion agree
    g = Graph.from_edges(5, [(1, 3), (1, 4), (1, 5), (2, 3), (2, 4), (2, 5), (3, 4)])
    assert K.is_compatible(g)[0] == K.is_compatible_graph_theoretic(g)
    assert list(itertools.islice(K.lattice_cross_ratios(K.build(g)), 1))
