"""Exact homology: ranks, reduced Betti numbers and the Hochster sum."""

import pytest
from hypothesis import given, strategies as st

from polyloop.complexes import (
    SimplicialComplex,
    cycle_graph,
    disjoint_points,
    from_facets,
    path_graph,
    planar_book,
    simplex,
)
from polyloop.errors import GhostVertexError, GroundSizeLimitError, InvalidParameters
from polyloop.homology import (
    BettiTable,
    bareiss_rank,
    hochster_zk_betti,
    reduced_betti,
    zk_sphere_multiset,
)

st_complex = st.integers(1, 5).flatmap(
    lambda m: st.lists(
        st.lists(st.integers(0, m - 1), min_size=1, max_size=3, unique=True),
        min_size=0,
        max_size=4,
    ).map(lambda facets: from_facets(m, facets))
)


def test_bareiss_rank_basics():
    assert bareiss_rank([]) == 0
    assert bareiss_rank([[0, 0], [0, 0]]) == 0
    assert bareiss_rank([[1, 2], [2, 4]]) == 1
    assert bareiss_rank([[1, 2], [3, 4]]) == 2
    assert bareiss_rank([[0, 1], [1, 0], [1, 1]]) == 2
    # rank over the rationals, not mod anything: 2x2 with determinant 2
    assert bareiss_rank([[1, 1], [1, -1]]) == 2


def test_bareiss_rank_rectangular():
    assert bareiss_rank([[1, 0, 1]]) == 1
    assert bareiss_rank([[1], [0], [2]]) == 1


def test_reduced_betti_empty_and_point():
    empty = from_facets(0, [])
    assert reduced_betti(empty) == (1,)
    assert reduced_betti(simplex(0)) == (0, 0)


def test_reduced_betti_spheres_and_graphs():
    assert reduced_betti(disjoint_points(2)) == (0, 1)  # S^0
    assert reduced_betti(cycle_graph(3)) == (0, 0, 1)  # a circle
    assert reduced_betti(cycle_graph(5)) == (0, 0, 1)
    assert reduced_betti(path_graph(4)) == (0, 0, 0)  # contractible
    assert reduced_betti(simplex(3)) == (0, 0, 0, 0, 0)


def test_reduced_betti_wedge_of_circles():
    # theta graph: two vertices joined by three parallel length-2 paths
    K = planar_book(2, 2)
    assert reduced_betti(K) == (0, 0, 2)


def test_reduced_betti_counts_ghosts_as_nothing():
    K = from_facets(3, [(0, 1)])
    # a ghost vertex contributes no cells at all
    assert reduced_betti(K) == (0, 0, 0)


@given(st_complex)
def test_euler_characteristic(K):
    """Alternating sums of Betti numbers and face counts agree."""
    betti = reduced_betti(K)
    chi_h = sum((-1) ** j * b for j, b in enumerate(betti))
    chi_f = sum((-1) ** i * f for i, f in enumerate(K.f_vector()))
    assert chi_h == chi_f


def test_hochster_frozen_tables():
    assert hochster_zk_betti(cycle_graph(4)).ranks == {0: 1, 3: 2, 6: 1}
    assert hochster_zk_betti(path_graph(2)).ranks == {0: 1, 3: 1}
    assert hochster_zk_betti(disjoint_points(2)).ranks == {0: 1, 3: 1}
    assert hochster_zk_betti(path_graph(3)).ranks == {0: 1, 3: 3, 4: 2}
    # 5-cycle: connected sum of five copies of a product of two spheres
    assert hochster_zk_betti(cycle_graph(5)).ranks == {0: 1, 3: 5, 4: 5, 7: 1}


def test_hochster_simplex_is_trivial():
    assert hochster_zk_betti(simplex(2)).ranks == {0: 1}


def test_hochster_rejects_ghosts():
    K = from_facets(3, [(0, 1)])
    with pytest.raises(GhostVertexError):
        hochster_zk_betti(K)


def test_hochster_ground_size_cap():
    with pytest.raises(GroundSizeLimitError):
        hochster_zk_betti(path_graph(5), ceiling=4)


def test_hochster_jobs_agree():
    K = path_graph(5)
    assert hochster_zk_betti(K, jobs=1).ranks == hochster_zk_betti(K, jobs=2).ranks


def test_hochster_relabel_invariance():
    K = cycle_graph(5)
    L = K.relabel((3, 0, 4, 1, 2))
    assert hochster_zk_betti(K).ranks == hochster_zk_betti(L).ranks


def test_betti_table_json():
    t = BettiTable(ranks={0: 1, 3: 2}, m=4)
    assert t.to_json_obj() == {"betti": {"0": 1, "3": 2}, "m": 4}


def test_zk_sphere_multiset_paths():
    assert zk_sphere_multiset(path_graph(2)).counts == {3: 1}
    assert zk_sphere_multiset(path_graph(3)).counts == {3: 3, 4: 2}
    assert zk_sphere_multiset(path_graph(4)).counts == {3: 6, 4: 8, 5: 3}
    ms = zk_sphere_multiset(path_graph(2))
    assert not ms.truncated and ms.max_dim is None


def test_zk_sphere_multiset_disjoint_points():
    # same wedge as the path case after the reduction step
    ms = zk_sphere_multiset(disjoint_points(3))
    assert ms.counts == {3: 3, 4: 2}
