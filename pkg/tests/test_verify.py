from __future__ import annotations

import pytest

from gcl.complex import SimplicialComplex
from gcl.errors import BudgetExceeded, GCLError, NotAFace, PointwiseOrderViolated
from gcl.graphs.core import cycle_graph, path_graph
from gcl.graphs.independence import ind_complex
from gcl.graphs.neighborhood import neighborhood_poset
from gcl.poset import MonotoneMap, build_poset, identity_map
from gcl.verify import (
    Report,
    csorba_round_trip,
    derive_seed,
    engine_pair_check,
    run_suite,
)
from gcl.verify.checks import (
    bredon_check,
    collapsibility,
    generating_simplex_check,
    order_homotopy_check,
    poset_contractibility,
    quillen_check,
)
from gcl.verify.corpus import square_antipodal
from gcl.verify.report import body_of
from gcl.verify.suites import resolve_params
from gcl.z2 import ANTITONE, Z2Map, Z2Poset, sigma_map, theta_map


def hollow_triangle():
    return SimplicialComplex.from_facets([[1, 2], [2, 3], [1, 3]])


# -- contractibility ------------------------------------------------------------------


def test_collapsibility_tiers():
    assert collapsibility(SimplicialComplex.simplex([1, 2, 3])).kind == "collapsible"
    v = collapsibility(hollow_triangle())
    assert v.kind == "nontrivial" and v.betti == (0, 1)
    assert collapsibility(ind_complex(path_graph(4)).complex).kind == "collapsible"
    assert collapsibility(None).kind == "empty"


def test_poset_contractibility_methods():
    P = build_poset([1, 2, 3], [(1, 2), (1, 3)])
    assert poset_contractibility(P).method == "cone"
    zigzag = build_poset("abcd", [("a", "c"), ("b", "c"), ("b", "d")])
    assert poset_contractibility(zigzag).method == "dismantlable"


# -- Quillen and Bredon -----------------------------------------------------------------


def test_quillen_on_theta():
    r = quillen_check(theta_map(neighborhood_poset(path_graph(3))).map, "up")
    assert r.passed and r.details["tiers"]["nontrivial"] == 0


def test_quillen_on_sigma():
    Q = Z2Poset(build_poset([1, 2], [(1, 2)]), {1: 2, 2: 1}, ANTITONE)
    assert quillen_check(sigma_map(Q).map, "up").passed


def test_quillen_fails_on_collapse_of_two_points():
    S0 = build_poset(["a", "b"], [])
    pt = build_poset(["*"], [])
    f = MonotoneMap.from_labels(S0, pt, lambda x: "*")
    r = quillen_check(f, "down", cross_check=False)
    assert not r.passed and r.details["tiers"]["nontrivial"] == 1


def test_bredon_identity():
    B = theta_map(neighborhood_poset(cycle_graph(5))).target
    r = bredon_check(Z2Map(B, B, identity_map(B.base)), "down")
    assert r.passed and r.details["branch"].startswith("free/free")


# -- order homotopy and generating simplices -------------------------------------------


def test_order_homotopy_of_c_squared():
    P = neighborhood_poset(path_graph(3))
    sq = MonotoneMap(P.base, P.base, P.C[P.C])
    r = order_homotopy_check(identity_map(P.base), sq)
    assert r.passed and r.details["image"] == ["{1,3}", "{2}"]
    with pytest.raises(PointwiseOrderViolated):
        order_homotopy_check(sq, identity_map(P.base))


def test_generating_simplex():
    r = generating_simplex_check(hollow_triangle(), [1, 2])
    assert r.passed and r.details["sphere_dim"] == 1
    assert not generating_simplex_check(hollow_triangle(), [1]).passed
    with pytest.raises(NotAFace):
        generating_simplex_check(hollow_triangle(), [1, 2, 3])


# -- reports and suites -----------------------------------------------------------------


def test_derive_seed_is_deterministic():
    assert derive_seed(42, 3) == derive_seed(42, 3)
    assert len({derive_seed(42, i) for i in range(100)}) == 100
    assert derive_seed(1, 0) != derive_seed(2, 0)


def test_report_checksum_ignores_wall_time():
    kw = dict(suite="x", params={}, seed=1, instances=[{"instance": "a", "passed": True}],
              corpus=["a"], notes=[])
    a, b = Report(**kw, wall_time=1.0), Report(**kw, wall_time=9.0)
    assert a.to_dict()["checksum"] == b.to_dict()["checksum"]
    assert body_of(a.to_dict()) == body_of(b.to_dict())
    assert a.passed


def test_budgets():
    with pytest.raises(BudgetExceeded):
        resolve_params("avatars", {"max_vertices": 7})
    assert resolve_params("avatars", {"max_vertices": 7}, large=True)["max_vertices"] == 7
    with pytest.raises(GCLError):
        resolve_params("nope", None)


def test_parallel_run_matches_serial():
    a = run_suite("omega", {"count": 6}, seed=7, jobs=1)
    b = run_suite("omega", {"count": 6}, seed=7, jobs=2)
    assert a.passed and a.body() == b.body()


def test_small_suites_pass():
    for name in ("ind", "hom", "fatlat"):
        assert run_suite(name).passed, name


def test_engine_pair_check():
    ok, checks = engine_pair_check(hollow_triangle(), SimplicialComplex.from_facets([[1], [2]]))
    assert ok and checks


def test_csorba_round_trip_on_square():
    ok, checks = csorba_round_trip(square_antipodal(), seed=0, restarts=8)
    assert ok and checks
