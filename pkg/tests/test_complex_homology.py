from __future__ import annotations

import json
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gcl.complex import (
    SimplicialComplex,
    barycentric_subdivision,
    complex_from_dict,
    face_poset,
    load_complex,
    order_complex,
)
from gcl.errors import EmptyComplex, NotAFace, ParseError
from gcl.homology import (
    BettiVector,
    boundary_matrices,
    chromatic_bound_line,
    connectivity_estimate,
    euler_char,
    euler_matches_betti,
    join_betti,
    join_complexes,
    reduced_betti,
    suspension,
)
from gcl.poset import build_poset
from gcl.verify.corpus import random_complex
from oracles import dense_reduced_betti


def hollow_triangle():
    return SimplicialComplex.from_facets([[1, 2], [2, 3], [1, 3]])


def test_faces_and_f_vector():
    K = hollow_triangle()
    assert K.f_vector() == (3, 3)
    assert K.dim == 1
    assert K.has_face(K.face_of([1, 2]))
    assert not K.has_face(K.face_of([1, 2, 3]))


def test_non_maximal_facets_are_dropped():
    K = SimplicialComplex.from_facets([[1, 2, 3], [1, 2], [4]])
    assert K.label_facets() == {frozenset({1, 2, 3}), frozenset({4})}


def test_without_face_requires_a_facet():
    K = SimplicialComplex.simplex([1, 2, 3])
    with pytest.raises(NotAFace):
        K.without_face(K.face_of([1, 2]))
    assert reduced_betti(K.without_face(K.face_of([1, 2, 3]))) == (0, 1)


def test_basic_betti_numbers():
    assert reduced_betti(hollow_triangle()) == (0, 1)
    assert reduced_betti(SimplicialComplex.simplex([1, 2, 3, 4])) == (0,)
    tetra = SimplicialComplex.from_facets([[1, 2, 3], [1, 2, 4], [1, 3, 4], [2, 3, 4]])
    assert reduced_betti(tetra) == (0, 0, 1)
    assert reduced_betti(SimplicialComplex.from_facets([[1], [2], [3]])) == (2,)
    assert reduced_betti(None).empty
    assert str(reduced_betti(None)) == "empty"


def test_projective_plane_over_gf2():
    # six-vertex real projective plane: b1 = b2 = 1 over GF(2)
    rp2 = [[1, 2, 3], [1, 3, 4], [1, 4, 5], [1, 5, 6], [1, 2, 6], [2, 3, 5], [2, 4, 5],
           [2, 4, 6], [3, 4, 6], [3, 5, 6]]
    assert reduced_betti(SimplicialComplex.from_facets(rp2)) == (0, 1, 1)


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 10**6))
def test_engine_matches_dense_oracle(seed):
    K = random_complex(random.Random(seed), 7, 7)
    assert reduced_betti(K).trimmed() == dense_reduced_betti(K.facets)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_boundary_squares_to_zero_and_euler(seed):
    K = random_complex(random.Random(seed))
    assert boundary_matrices(K).dd_is_zero()
    assert euler_matches_betti(K)


def test_join_law_and_suspension():
    K = hollow_triangle()
    S0 = SimplicialComplex.from_facets([["a"], ["b"]])
    assert reduced_betti(join_complexes(K, S0)) == (0, 0, 1)
    assert reduced_betti(suspension(K)) == reduced_betti(K).shifted(1)
    assert join_betti(reduced_betti(K), reduced_betti(K)) == (0, 0, 0, 1)


def test_betti_vector_shift():
    b = BettiVector((0, 1))
    assert b.shifted(1) == (0, 0, 1)
    assert b.shifted(1).shifted(-1) == b
    with pytest.raises(ValueError):
        BettiVector((1,)).shifted(-1)
    with pytest.raises(EmptyComplex):
        BettiVector.of_empty().shifted(1)


def test_connectivity_estimate():
    assert connectivity_estimate(SimplicialComplex.from_facets([[1], [2]])).value == -1
    assert connectivity_estimate(hollow_triangle()).value == 0
    c = connectivity_estimate(SimplicialComplex.simplex([1, 2, 3]))
    assert c.acyclic and c.value == 2
    # a circle-like box complex gives chi >= 3, which is sharp for C5
    assert ">= 3 " in chromatic_bound_line("C5", BettiVector((0, 1)))
    assert "no chromatic bound" in chromatic_bound_line("P3", BettiVector((0,)))


def test_euler_char():
    assert euler_char(hollow_triangle()) == 0


def test_face_poset_and_subdivision():
    K = hollow_triangle()
    L = face_poset(K)
    assert len(L) == 6
    assert L.le(frozenset({1, 2}), frozenset({1}))
    sd = barycentric_subdivision(K)
    assert sd.f_vector() == (6, 6)
    assert reduced_betti(sd) == reduced_betti(K)


def test_order_complex_of_chain_is_a_simplex():
    P = build_poset([1, 2, 3], [(1, 2), (2, 3)])
    assert order_complex(P).label_facets() == {frozenset({1, 2, 3})}


def test_json_round_trip(tmp_path):
    doc = {"vertices": ["a", "b", "c"], "facets": [[0, 1], ["b", "c"]]}
    K = complex_from_dict(doc)
    assert K.label_facets() == {frozenset("ab"), frozenset("bc")}
    path = tmp_path / "k.json"
    path.write_text(json.dumps(K.to_dict()))
    assert load_complex(path)[0] == K


@pytest.mark.parametrize("doc", [
    {"facets": [[0]]},
    {"vertices": ["a"], "facets": [[3]]},
    {"vertices": ["a"], "facets": [["z"]]},
    {"vertices": ["a"], "facets": [[]]},
])
def test_json_errors(doc):
    with pytest.raises(ParseError):
        complex_from_dict(doc)


def test_unreadable_file(tmp_path):
    (tmp_path / "bad.json").write_text("{not json")
    with pytest.raises(ParseError):
        load_complex(tmp_path / "bad.json")
