"""Randomized properties across modules."""
from __future__ import annotations

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from copious import kinematics as K
from copious.graphs import Graph, canonical_form, emit_graph6, parse_graph6
from copious.linalg import IntegerLattice, RationalMatrix, hnf, integer_kernel, kernel_basis, rank, saturate
from copious.mldegree import chromatic, falling_factorial, partition_counts, partition_counts_brute, poly_add
from copious.solver import fingerprint


@st.composite
def graphs(draw, min_n=1, max_n=12):
    n = draw(st.integers(min_n, max_n))
    bits = draw(st.integers(0, (1 << (n * (n - 1) // 2)) - 1))
    return Graph(n, bits)


@st.composite
def int_matrices(draw, max_rows=5, max_cols=6):
    r = draw(st.integers(1, max_rows))
    c = draw(st.integers(1, max_cols))
    return [draw(st.lists(st.integers(-6, 6), min_size=c, max_size=c)) for _ in range(r)]


@given(graphs())
def test_graph6_round_trip(g):
    assert parse_graph6(emit_graph6(g)) == g


@settings(max_examples=60, deadline=None)
@given(graphs(min_n=2, max_n=7), st.randoms(use_true_random=False))
def test_canonical_form_is_invariant(g, rnd):
    perm = list(range(1, g.n + 1))
    rnd.shuffle(perm)
    assert canonical_form(g.relabel(perm)).bits == canonical_form(g).bits


@given(int_matrices())
def test_rank_nullity(rows):
    m = RationalMatrix.from_rows(rows)
    assert rank(m) + len(kernel_basis(m)) == m.cols


@given(int_matrices())
def test_hnf_idempotent(rows):
    h = hnf(rows, len(rows[0]))
    assert hnf(h, len(rows[0])) == h


@given(int_matrices(), st.integers(0, 4), st.integers(1, 3))
def test_integer_kernel_ignores_row_operations(rows, i, c):
    i %= len(rows)
    j = (i + 1) % len(rows)
    mixed = [list(r) for r in rows]
    mixed[j] = [a + c * b for a, b in zip(mixed[j], mixed[i])]
    assert integer_kernel(rows) == integer_kernel(mixed)


@given(int_matrices(), st.sampled_from([2, 3, 5, 7]))
def test_saturation_undoes_prime_scaling(rows, p):
    lat = integer_kernel(rows)
    if not lat.basis:
        return
    scaled = [[p * x for x in lat.basis[0]]] + [list(b) for b in lat.basis[1:]]
    assert saturate(scaled, len(rows[0])) == lat
    assert IntegerLattice.from_basis(scaled, len(rows[0])).rank == lat.rank


@settings(max_examples=40, deadline=None)
@given(graphs(min_n=1, max_n=8))
def test_falling_factorial_identity(g):
    pc = partition_counts(g)
    total = (0,)
    for s in range(1, g.n + 1):
        total = poly_add(total, tuple(pc[s] * c for c in falling_factorial(s)))
    assert total == chromatic(g).coeffs


@settings(max_examples=40, deadline=None)
@given(graphs(min_n=1, max_n=7))
def test_partition_oracle(g):
    assert partition_counts(g) == partition_counts_brute(g)


@settings(max_examples=40, deadline=None)
@given(graphs(min_n=2, max_n=7))
def test_kappa_is_component_count(g):
    if g.edge_count:
        assert K.build(g).kappa == K.kappa_from_components(g)
    assert K.is_compatible(g)[0] == K.is_compatible_graph_theoretic(g)


@given(
    st.lists(st.complex_numbers(max_magnitude=5, allow_nan=False, allow_infinity=False), min_size=6, max_size=6),
    st.tuples(*[st.floats(-3, 3) for _ in range(4)]),
)
def test_fingerprint_moebius_invariant(x, abcd):
    x = np.array(x)
    a, b, c, d = abcd
    det = a * d - b * c
    gaps = np.abs(x[:, None] - x[None, :]) + np.eye(6)
    if abs(det) < 0.5 or gaps.min() < 0.1 or np.abs(c * x + d).min() < 0.1:
        return
    y = (a * x + b) / (c * x + d)
    f, h = fingerprint(x), fingerprint(y)
    assert np.allclose(f, h, rtol=1e-7, atol=1e-9)


@settings(max_examples=30, deadline=None)
@given(graphs(min_n=4, max_n=7), st.integers(0, 10**6))
def test_log_potential_in_lattice_coordinates(g, seed):
    if not g.edge_count or not K.is_compatible(g)[0]:
        return
    from copious.solver import sample_mandelstam

    ks = K.build(g)
    s = sample_mandelstam(ks, seed)
    rng = np.random.default_rng(seed)
    x = rng.normal(size=g.n)
    lhs = sum(v * np.log(abs(x[i - 1] - x[j - 1])) for (i, j), v in zip(g.edges, s.s))
    rhs = sum(t * np.log(abs(K.cross_ratio_eval(cr, x))) for t, cr in zip(s.t, K.lattice_cross_ratios(ks)))
    assert abs(lhs - rhs) <= 1e-9 * max(1.0, sum(abs(v) for v in s.s))
