from __future__ import annotations

from fractions import Fraction

import pytest

from copious import kinematics
from copious.graphs import (
    complete_graph,
    cycle_graph,
    enumerate_graphs,
    from_nonedges,
    octahedron,
    parse_pairs,
)
from copious.linalg import RationalMatrix
from copious.scattering import (
    ScatteringError,
    Verdict,
    certify_copious,
    evaluate,
    rowspace_intersection_dim,
    sample_points,
    scattering_rank,
    scattering_rows,
)

EX44 = ["35,36,45,46", "16,24,25,34,35"]
PRISM = "12,23,34,45,56,16"


def test_rows_shape_and_entries():
    g = complete_graph(4)
    u = [1, 2, 4, 8]
    rows = scattering_rows(g, u)
    assert len(rows) == 8 and all(len(r) == 6 for r in rows)
    # scattering row of vertex 1 has 1/(u1 - uj) in column 1j
    assert rows[4][:3] == [Fraction(-1), Fraction(-1, 3), Fraction(-1, 7)]


def test_repeated_coordinates_rejected():
    with pytest.raises(ScatteringError):
        scattering_rows(complete_graph(4), [1, 1, 2, 3])


def test_sample_points_distinct_and_seeded():
    pts = sample_points(7, 5, seed=3)
    assert all(len(set(p)) == 7 for p in pts)
    assert pts == sample_points(7, 5, seed=3)
    assert all(1 <= x <= 10**6 for p in pts for x in p)


def test_k6_and_octahedron_ranks():
    for u in sample_points(6, 5, seed=1):
        assert evaluate(complete_graph(6), u).rank == 9
        assert evaluate(octahedron(), u).rank == 9


def test_triangle_removed_n7_rank():
    g = from_nonedges(7, parse_pairs("12,13,23"))
    assert scattering_rank(g, samples=5) == 11 < g.edge_count


@pytest.mark.parametrize("n", range(4, 9))
def test_complete_rank(n):
    assert scattering_rank(complete_graph(n), samples=3) == 2 * n - 3


def test_kernel_inside_kinematic_space():
    for g in (octahedron(), complete_graph(6), from_nonedges(6, parse_pairs(EX44[0]))):
        mom = RationalMatrix.from_rows(kinematics.momentum_matrix(g))
        for u in sample_points(g.n, 3, seed=4):
            for v in evaluate(g, u).kernel:
                assert all(x == 0 for x in mom @ v)


def test_octahedron_rowspace_intersection_is_kappa():
    assert rowspace_intersection_dim(octahedron(), 25, 0) == 6


def test_certify_octahedron():
    r = certify_copious(octahedron())
    assert r.verdict == Verdict.COPIOUS
    assert (r.kappa, r.scattering_rank, r.target_rank) == (6, 9, 9)
    assert r.condition_rank and r.condition_strict and r.condition_kernel_sum
    assert all(r.condition_coloop_free.values())


@pytest.mark.parametrize("ne", EX44)
def test_ex44_not_copious_by_kernel_sum(ne):
    r = certify_copious(from_nonedges(6, parse_pairs(ne)))
    assert r.verdict == Verdict.NOT_COPIOUS
    assert r.samples_used >= 100
    assert r.witness["reason"] == "persistent_deficiency"
    assert r.witness["kernel_sum_dim"] < r.witness["kinematic_dim"]
    assert "functional" in r.witness


def test_prism_not_copious():
    r = certify_copious(from_nonedges(6, parse_pairs(PRISM)))
    assert r.verdict == Verdict.NOT_COPIOUS
    assert r.witness["reason"] == "edge_count"


def test_incompatible_and_low_degree():
    assert certify_copious(complete_graph(3)).witness["reason"] == "incompatible"
    assert certify_copious(cycle_graph(4)).witness["reason"] == "low_degree"


def test_certification_is_deterministic():
    g = from_nonedges(7, parse_pairs("12,34"))
    assert certify_copious(g, seed=5).as_dict() == certify_copious(g, seed=5).as_dict()


def test_needs_two_samples():
    with pytest.raises(ScatteringError):
        certify_copious(octahedron(), samples=1)


@pytest.mark.parametrize("n, expected", [(4, 1), (5, 3), (6, 15)])
def test_census_counts(n, expected):
    verdicts = [certify_copious(g).verdict for g in enumerate_graphs(n)]
    assert verdicts.count(Verdict.COPIOUS) == expected
    assert Verdict.INCONCLUSIVE not in verdicts


def test_rank_law_n6():
    for g in enumerate_graphs(6):
        r = certify_copious(g)
        if r.verdict == Verdict.COPIOUS:
            assert r.scattering_rank == r.kappa + 3 < g.edge_count
        if r.scattering_rank is not None:
            assert r.scattering_rank <= 2 * g.n - 3


def test_more_samples_never_lower_rank():
    g = from_nonedges(6, parse_pairs(EX44[1]))
    ranks = [scattering_rank(g, samples=k, seed=2) for k in (1, 2, 5, 10)]
    assert ranks == sorted(ranks)
