from __future__ import annotations

from itertools import combinations

import networkx as nx
import pytest

from gcl.errors import (
    EmptyFamily,
    NoEdges,
    NotAutomorphism,
    ParseError,
    TooSmall,
    UnknownEdge,
    UnknownVertex,
)
from gcl.graphs.core import (
    Graph,
    SetFamily,
    complete_graph,
    connected_corpus,
    cycle_graph,
    family_from_dict,
    graphs_up_to_iso,
    graphs_with_edges,
    parse_edge_list,
    path_graph,
    random_graphs,
)
from gcl.graphs.kneser import b_chain_kg, b_sark_kg, kneser_avatars, kneser_graph, phi_map, psi_map
from gcl.graphs.neighborhood import (
    avatars,
    b_edge,
    common_neighbors,
    lambda_map,
    lovasz_sets,
    neighborhood_poset,
)
from gcl.homology import poset_betti, reduced_betti
from gcl.verify.checks import quillen_check


# -- graphs and files --------------------------------------------------------------


def test_parse_edge_list():
    G = parse_edge_list("# a path\n1 2\n2 3\n\n7\n")
    assert G.vertices == (1, 2, 3, 7)
    assert G.adjacent(1, 2) and not G.adjacent(1, 3)
    assert G.neighbors(7) == frozenset()


def test_parse_header():
    G = parse_edge_list("p 4 1\n1 2\n")
    assert len(G) == 4
    with pytest.raises(ParseError):
        parse_edge_list("p 3 2\n1 2\n")
    with pytest.raises(ParseError):
        parse_edge_list("1 2 3\n")
    with pytest.raises(ParseError):
        parse_edge_list("1 1\n")


def test_graph_errors():
    G = path_graph(3)
    with pytest.raises(UnknownVertex):
        G.index(9)
    with pytest.raises(UnknownEdge):
        G.delete_edge((1, 3))
    with pytest.raises(NotAutomorphism):
        G.with_involution({1: 2, 2: 1, 3: 3})
    with pytest.raises(TooSmall):
        cycle_graph(2)


def test_standard_graphs():
    assert len(cycle_graph(5).edges) == 5
    assert len(complete_graph(4).edges) == 6
    assert path_graph(4).involution == {1: 4, 2: 3, 3: 2, 4: 1}


def test_set_family():
    F = SetFamily.k_subsets(4, 2)
    assert len(F.members) == 6
    with pytest.raises(EmptyFamily):
        SetFamily(3, [])
    with pytest.raises(UnknownVertex):
        family_from_dict({"ground": 2, "members": [[5]]})
    with pytest.raises(ParseError):
        family_from_dict({"members": [[1]]})


@pytest.mark.parametrize("n,count", [(3, 2), (4, 6), (5, 21)])
def test_connected_corpus_matches_atlas(n, count):
    ours = graphs_up_to_iso(n, connected=True)
    atlas = [g for g in nx.graph_atlas_g() if g.number_of_nodes() == n and nx.is_connected(g)]
    assert len(ours) == len(atlas) == count
    for a, b in combinations(ours, 2):
        assert not nx.is_isomorphic(a.to_networkx(), b.to_networkx())


def test_corpus_sizes():
    assert len(connected_corpus()) == 29
    # graphs on 2..5 vertices with an edge: 1 + 3 + 10 + 33
    assert len(graphs_with_edges(5)) == 47


def test_random_graphs_are_seeded():
    a, b = random_graphs(6, 5, seed=3), random_graphs(6, 5, seed=3)
    assert [g.edges for g in a] == [g.edges for g in b]
    assert all(g.edges for g in a)


# -- neighbourhood posets and avatars -------------------------------------------------


def test_common_neighbours():
    G = cycle_graph(5)
    assert common_neighbors(G, [1, 3]) == frozenset({2})
    assert common_neighbors(G, []) == frozenset(G.vertices)


def test_neighbourhood_poset_needs_edges():
    with pytest.raises(NoEdges):
        neighborhood_poset(Graph([1, 2], []))


def test_lovasz_sets_of_c5():
    sets = set(lovasz_sets(cycle_graph(5)))
    assert frozenset({1}) in sets and frozenset({2, 5}) in sets
    assert len(sets) == 10


@pytest.mark.parametrize("G,expected,suspended", [
    (complete_graph(2), (1,), (0, 1)),
    (path_graph(3), (1,), (0, 1)),
    (cycle_graph(5), (0, 1), (0, 0, 1)),
    (complete_graph(4), (0, 0, 1), (0, 0, 0, 1)),
    (cycle_graph(6), (1, 2), (0, 1, 2)),
])
def test_avatar_betti_numbers(G, expected, suspended):
    av = avatars(G)
    b = av.betti()
    for name in ("lovasz", "box", "extended", "edge"):
        assert b[name] == expected, name
    assert b["suspended"] == suspended
    assert all(av.freeness().values())


def test_edge_complex_facets():
    X = b_edge(complete_graph(2))
    assert X.complex.label_facets() == {frozenset({(1, 2)}), frozenset({(2, 1)})}
    assert X.omega_of((1, 2)) == (2, 1)


def test_edge_projection_fibres():
    for G in (cycle_graph(5), complete_graph(4), path_graph(4)):
        _, lam = lambda_map(G)
        assert lam.is_equivariant()
        assert quillen_check(lam.map, "down").passed


# -- Kneser ----------------------------------------------------------------------


def test_kneser_graph_of_petersen():
    G = kneser_graph(SetFamily.k_subsets(5, 2))
    assert len(G) == 10 and len(G.edges) == 15
    assert all(len(G.neighbors(v)) == 3 for v in G.vertices)


def test_kneser_edgeless():
    with pytest.raises(NoEdges):
        kneser_avatars(SetFamily.k_subsets(3, 2))


def test_kneser_three_matchings():
    F = SetFamily.k_subsets(4, 2)
    assert poset_betti(b_chain_kg(F).base) == (5,)
    assert poset_betti(kneser_avatars(F).box.base) == (5,)


def test_petersen_box_complex_is_a_wedge_of_circles():
    F = SetFamily.k_subsets(5, 2)
    C = b_chain_kg(F)
    b = poset_betti(C.base)
    # Euler characteristic of the order complex pins b1 once b0 = 0
    K = C.complex().complex
    chi = sum((-1) ** k * n for k, n in enumerate(K.f_vector()))
    assert b[0] == 0 and b == (0, 1 - chi)
    assert b == (0, 11)
    assert poset_betti(kneser_avatars(F).box.base) == b


def test_kneser_singletons():
    F = SetFamily.k_subsets(4, 1)
    assert poset_betti(b_chain_kg(F).base) == (0, 0, 1)
    assert poset_betti(b_sark_kg(F).base) == (0, 0, 0, 1)


@pytest.mark.parametrize("n,k", [(4, 1), (4, 2)])
def test_union_maps_are_equivalences(n, k):
    F = SetFamily.k_subsets(n, k)
    av = kneser_avatars(F)
    for z in (phi_map(F, av), psi_map(F, av)):
        assert z.is_equivariant()
        assert quillen_check(z.map, "down").passed


def test_edge_complex_matches_box_on_k4():
    assert reduced_betti(b_edge(complete_graph(4)).complex) == (0, 0, 1)
