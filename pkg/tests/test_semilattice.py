from __future__ import annotations

from itertools import combinations

import pytest

from gcl.complex import SimplicialComplex
from gcl.errors import NotFree, NotSemilattice
from gcl.graphs.semilattice import (
    FreeISemilattice,
    compatibility_graph,
    is_fat,
    nn_closure,
    omega_sharp,
)
from gcl.homology import poset_betti, reduced_betti
from gcl.poset import build_poset
from gcl.verify.checks import bredon_check
from gcl.verify.corpus import csorba_corpus, square_antipodal
from gcl.z2 import Z2Complex


def fs(*xs):
    return frozenset(xs)


def square_lattice() -> FreeISemilattice:
    return FreeISemilattice.from_z2complex(square_antipodal())


def test_compatibility_graph_of_square():
    G = compatibility_graph(square_lattice())
    assert len(G) == 8
    assert G.neighbors(fs(1)) == {fs(3), fs(2, 3), fs(3, 4)}


def test_closure_of_a_vertex():
    c = nn_closure(square_lattice(), [fs(1)])
    assert c.N == {fs(3), fs(2, 3), fs(3, 4)}
    assert c.NN == {fs(1)}
    assert c.matches and c.idempotent


def test_closure_of_empty_set_is_everything():
    L = square_lattice()
    c = nn_closure(L, [])
    assert c.N == set(L.base.elements) and c.NN == frozenset()


@pytest.mark.parametrize("name", sorted(csorba_corpus()))
def test_closures_on_corpus(name):
    L = FreeISemilattice.from_z2complex(csorba_corpus()[name])
    E = L.base.elements
    for r in (1, 2):
        for A in combinations(E, r):
            c = nn_closure(L, A)
            assert c.matches and c.idempotent, A


def test_fixed_vertex_is_not_free():
    K = SimplicialComplex.from_facets([[1, 2], [2, 3]])
    with pytest.raises(NotFree):
        FreeISemilattice.from_z2complex(Z2Complex(K, {1: 3, 3: 1, 2: 2}))


def test_missing_meet_is_rejected():
    # two minimal elements below two maximal ones: no join of a and b in the completion
    P = build_poset("abcd", [("a", "c"), ("a", "d"), ("b", "c"), ("b", "d")])
    with pytest.raises(NotSemilattice):
        FreeISemilattice(P, [1, 0, 3, 2])


def test_fatness():
    assert is_fat(square_lattice().base)[0]
    ok, witness = is_fat(build_poset([1, 2, 3], [(1, 2), (2, 3)]))
    assert not ok and witness == (1, 2, 3)
    diamond = build_poset("0ab1", [("0", "a"), ("0", "b"), ("a", "1"), ("b", "1")])
    assert is_fat(diamond)[0]


@pytest.mark.parametrize("name", ["square", "hexagon"])
def test_omega_sharp_is_an_equivalence(name):
    X = csorba_corpus()[name]
    L = FreeISemilattice.from_z2complex(X)
    z = omega_sharp(L)
    assert z.is_equivariant()
    r = bredon_check(z, "up")
    assert r.passed
    assert poset_betti(z.target.base) == reduced_betti(X.complex)
