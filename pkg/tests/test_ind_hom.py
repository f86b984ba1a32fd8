from __future__ import annotations

import pytest

from gcl.complex import SimplicialComplex
from gcl.errors import GroundMismatch, NoEdges, UnknownEdge
from gcl.graphs.core import Graph, complete_graph, cycle_graph, graphs_with_edges, path_graph, reversal
from gcl.graphs.hom import g_deleted_join, hom_ex_complex, hom_ex_poset, hom_k2, hom_poset, join_copies
from gcl.graphs.independence import (
    deletion_decomposition,
    generating_simplex_formula,
    ind_complex,
    independent_sets,
    is_independent,
)
from gcl.graphs.neighborhood import neighborhood_poset
from gcl.homology import join_betti, poset_betti, reduced_betti
from gcl.z2 import box_poset, fixed_betti

# -- independence complexes ---------------------------------------------------------


@pytest.mark.parametrize("G", [cycle_graph(5), cycle_graph(6), path_graph(5), complete_graph(3)])
def test_ind_complex_matches_oracle(G):
    K = ind_complex(G).complex
    assert K.label_faces() == {s for s in independent_sets(G) if s}


@pytest.mark.parametrize("n,betti,fixed", [
    (5, (0, 1), (1,)),
    (11, (0, 0, 0, 1), (0, 1)),
])
def test_cycles_with_reversal(n, betti, fixed):
    X = ind_complex(cycle_graph(n), reversal(n))
    assert reduced_betti(X.complex) == betti
    assert fixed_betti(X) == fixed


@pytest.mark.parametrize("n,betti", [(4, (0,)), (5, (0, 1)), (11, (0, 0, 0, 1))])
def test_paths(n, betti):
    assert reduced_betti(ind_complex(path_graph(n)).complex) == betti


def test_path_fixed_sets():
    assert fixed_betti(ind_complex(path_graph(5), reversal(5))) == (1,)
    assert fixed_betti(ind_complex(path_graph(11), reversal(11))) == (0, 1)


def test_generating_simplex_formula():
    assert sorted(generating_simplex_formula(1)) == [2, 4]
    assert sorted(generating_simplex_formula(2)) == [2, 5, 7, 10]
    assert sorted(generating_simplex_formula(3)) == [2, 5, 8, 10, 13, 16]
    for p in (1, 2, 3):
        assert is_independent(cycle_graph(6 * p - 1), generating_simplex_formula(p))
    with pytest.raises(ValueError):
        generating_simplex_formula(0)


def test_vertex_decomposition():
    d = deletion_decomposition(cycle_graph(5), v=1)
    assert d["union_ok"] and d["intersection_ok"]
    # C5 - N[1] is a single edge 3-4, whose independence complex is two points
    assert d["rest"] == {frozenset(), frozenset({3}), frozenset({4})}


@pytest.mark.parametrize("n,e", [(5, (1, 5)), (5, (1, 2)), (11, (1, 2))])
def test_edge_decomposition(n, e):
    d = deletion_decomposition(cycle_graph(n), e=e)
    assert d["union_ok"] and d["intersection_ok"]


def test_decomposition_errors():
    with pytest.raises(UnknownEdge):
        deletion_decomposition(cycle_graph(5), e=(1, 3))
    with pytest.raises(ValueError):
        deletion_decomposition(cycle_graph(5))


# -- Hom -----------------------------------------------------------------------------


def test_hom_k2_k3_is_a_circle():
    H = hom_poset(complete_graph(2), complete_graph(3))
    assert poset_betti(H.base) == (0, 1)
    assert H.is_free()


def test_hom_k3_k2_is_empty():
    assert len(hom_poset(complete_graph(3), complete_graph(2))) == 0


def test_hom_needs_edges():
    with pytest.raises(NoEdges):
        hom_poset(Graph([1], []), complete_graph(2))


def test_hom_k2_is_box_poset():
    for H in graphs_with_edges(4):
        hp = hom_k2(H)
        B = box_poset(neighborhood_poset(H))
        assert set(hp.base.elements) == set(B.base.elements)
        for a in hp.base.elements:
            for b in hp.base.elements:
                assert hp.base.le(a, b) == B.base.le(a, b)


@pytest.mark.parametrize("G,n,betti", [
    (cycle_graph(5), 2, (0, 0, 0, 1)),
    (complete_graph(2), 2, (0, 1)),
    (complete_graph(2), 3, (0, 0, 1)),
])
def test_extended_hom_into_complete_graphs(G, n, betti):
    D, info = hom_ex_complex(G, complete_graph(n))
    assert reduced_betti(D) == betti
    assert info["matches_join_of_ind"]
    ind = reduced_betti(ind_complex(G).complex)
    expected = ind
    for _ in range(n - 1):
        expected = join_betti(expected, ind)
    assert expected == betti


@pytest.mark.parametrize("G,n", [(complete_graph(2), 3), (cycle_graph(5), 2), (path_graph(3), 3)])
def test_extended_hom_poset_matches_deleted_join_model(G, n):
    # the poset is the face poset of the deleted join, so the homology agrees
    D, _ = hom_ex_complex(G, complete_graph(n))
    P = hom_ex_poset(G, complete_graph(n))
    assert len(P) == len(D.faces())
    assert poset_betti(P) == reduced_betti(D)


def test_deleted_join_of_a_point_is_the_independence_complex():
    point = SimplicialComplex.from_facets([[0]])
    D = g_deleted_join(point, cycle_graph(5))
    assert D.relabel(lambda v: v[0]) == ind_complex(cycle_graph(5)).complex


def test_deleted_join_ground_mismatch():
    with pytest.raises(GroundMismatch):
        g_deleted_join(SimplicialComplex.from_facets([[0]]), Graph(["a", "b"], [("a", "b")]))


def test_join_copies_counts():
    K = SimplicialComplex.from_facets([[1], [2]])
    J = join_copies(K, 3)
    assert len(J.facets) == 8
    assert reduced_betti(J) == (0, 0, 1)
