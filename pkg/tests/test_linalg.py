from __future__ import annotations

from fractions import Fraction

import numpy as np
import pytest

from copious.graphs import complete_graph, octahedron
from copious.kinematics import momentum_matrix
from copious.linalg import (
    IntegerLattice,
    RationalMatrix,
    hnf,
    int_kernel_vectors,
    integer_kernel,
    intersect_rowspaces,
    kernel_basis,
    rank,
    saturate,
)


def test_k4_momentum_rank():
    assert rank(RationalMatrix.from_rows(momentum_matrix(complete_graph(4)))) == 4


def test_k4_kernel_relations():
    m = RationalMatrix.from_rows(momentum_matrix(complete_graph(4)))
    basis = kernel_basis(m)
    assert len(basis) == 2
    for v in basis:
        s12, s13, s14, s23, s24, s34 = v
        assert s12 == s34 and s13 == s24 and s14 == s23
        assert s12 + s13 + s14 == 0
        assert all(x == 0 for x in m @ v)


def test_rational_entries():
    m = RationalMatrix.from_rows([[Fraction(1, 2), Fraction(1, 3)], [3, 2]])
    assert rank(m) == 1
    (v,) = kernel_basis(m)
    assert all(x == 0 for x in m @ v)


def test_ragged_rows_rejected():
    with pytest.raises(ValueError):
        RationalMatrix.from_rows([[1, 2], [3]])


def test_octahedron_lattice_matches_hand_basis():
    g = octahedron()
    lat = integer_kernel(momentum_matrix(g))
    assert lat.rank == 6
    col = {e: k for k, e in enumerate(g.edges)}

    def vec(plus, minus):
        v = [0] * 12
        for e in plus:
            v[col[e]] += 1
        for e in minus:
            v[col[e]] -= 1
        return v

    # u1 = e13 + e24 - e14 - e23 and its analogues on the other 4-cycles
    hand = [
        vec([(1, 3), (2, 4)], [(1, 4), (2, 3)]),
        vec([(1, 5), (2, 6)], [(1, 6), (2, 5)]),
        vec([(3, 5), (4, 6)], [(3, 6), (4, 5)]),
        vec([(1, 3), (1, 5), (2, 4), (2, 6)], [(1, 4), (1, 6), (2, 3), (2, 5)]),
    ]
    for v in hand:
        assert lat.contains(v)
    assert IntegerLattice.from_basis(int_kernel_vectors(momentum_matrix(g), 12), 12).rank == 6


@pytest.mark.parametrize("n", [3, 4, 5, 6, 7])
def test_complete_graph_lattice_rank(n):
    lat = integer_kernel(momentum_matrix(complete_graph(n)))
    assert lat.rank == n * (n - 1) // 2 - n


def test_hnf_shape_and_idempotence():
    b = [[2, 4, 6], [1, 3, 5], [3, 7, 11]]
    h = hnf(b)
    assert hnf(h) == h
    assert len(h) == 2
    pivots = [next(k for k, x in enumerate(r) if x) for r in h]
    assert pivots == sorted(pivots)
    assert all(h[i][pivots[i]] > 0 for i in range(len(h)))


def test_saturation_recovers_lattice():
    lat = saturate([[2, 4, 0], [0, 0, 3]], 3)
    assert lat.basis == ((1, 2, 0), (0, 0, 1))
    assert lat.contains([1, 2, 0])
    assert not lat.contains([1, 1, 0])


def test_integer_kernel_is_saturated():
    # 2x - 4y = 0 has kernel generated by (2, 1), not (4, 2)
    lat = integer_kernel([[2, -4]])
    assert lat.basis == ((2, 1),)


def test_intersect_generic_dimension():
    rng = np.random.default_rng(3)
    k, m = 4, 6
    a = RationalMatrix.from_rows(rng.integers(-9, 10, size=(k, m)).tolist())
    b = RationalMatrix.from_rows(rng.integers(-9, 10, size=(k, m)).tolist())
    assert intersect_rowspaces([a, b]).rows == 2 * k - m


def test_intersect_disjoint_is_empty():
    a = RationalMatrix.from_rows([[1, 0, 0]])
    b = RationalMatrix.from_rows([[0, 1, 0]])
    assert intersect_rowspaces([a, b]).rows == 0
