"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line."""

from __future__ import annotations

import json
import random
import shutil
import subprocess
import sys
import time
from contextlib import contextmanager

import pytest

from gcl.complex import barycentric_subdivision, order_complex
from gcl.graphs.core import complete_graph, cycle_graph, path_graph, reversal
from gcl.graphs.hom import hom_ex_complex, hom_poset, join_copies
from gcl.graphs.independence import generating_simplex_formula, ind_complex
from gcl.homology import join_betti, poset_betti, reduced_betti
from gcl.poset import chain_poset
from gcl.verify.checks import generating_simplex_check
from gcl.verify.corpus import random_complex, random_poset
from gcl.verify.report import body_of, canonical_json, derive_seed
from gcl.verify.suites import engine_pair_check, run_suite
from gcl.z2 import fixed_betti


@pytest.fixture
def criterion(capsys):
    @contextmanager
    def run(n: int, title: str, budget: float):
        start = time.perf_counter()
        status = "FAIL"
        try:
            yield
            elapsed = time.perf_counter() - start
            assert elapsed < budget, f"took {elapsed:.1f}s, budget {budget}s"
            status = "PASS"
        finally:
            elapsed = time.perf_counter() - start
            with capsys.disabled():
                print(f"\n[criterion {n:2d}] {status}  {title}  ({elapsed:.1f}s)")
    return run


def _failed(report) -> list:
    return [(i["instance"], i.get("error")) for i in report.instances if not i["passed"]]


def _fibre_tiers(obj, acc=None) -> dict:
    """Sum the tier counters of every fibre check nested in a report."""
    acc = {} if acc is None else acc
    if isinstance(obj, dict):
        if "tiers" in obj and "fibres" in obj:
            for k, v in obj["tiers"].items():
                acc[k] = acc.get(k, 0) + v
        for v in obj.values():
            _fibre_tiers(v, acc)
    elif isinstance(obj, list):
        for v in obj:
            _fibre_tiers(v, acc)
    return acc


def test_criterion_01_barycentric_law(criterion):
    with criterion(1, "chain poset order complex is the barycentric subdivision", 10):
        rng = random.Random(derive_seed(42, 1))
        for _ in range(200):
            P = random_poset(rng, 7)
            assert order_complex(chain_poset(P)) == barycentric_subdivision(order_complex(P))


def test_criterion_02_omega_isomorphism(criterion):
    with criterion(2, "omega is a Z2-isomorphism on 100 antitone posets", 10):
        r = run_suite("omega", {"size": 8, "count": 100}, seed=42)
        assert len(r.instances) == 100
        assert not _failed(r)
        for inst in r.instances:
            c = inst["checks"]
            assert c["bijective"] and c["order_embedding"] and c["equivariant"]


def test_criterion_03_avatar_equality(criterion):
    with criterion(3, "all avatars agree (graphs on 3-5 vertices, 50 sampled on 6, Kneser)", 300):
        r = run_suite("avatars", seed=42)
        names = [i["instance"] for i in r.instances]
        assert sum(n.startswith("n6:") for n in names) == 50
        assert sum(n.startswith(("n3:", "n4:", "n5:")) for n in names) == 2 + 6 + 21
        assert sum(n.startswith("kneser:") for n in names) >= 3
        assert not _failed(r)
        for inst in r.instances:
            c = inst["checks"]
            if "free" in c and isinstance(c["free"], dict):
                assert all(c["free"].values())
            if "betti" in c:
                b = c["betti"]
                assert b["lovasz"] == b["box"] == b["extended"] == b["edge"]
                assert c["suspended_desuspended"] == b["box"]


def test_criterion_04_extended_box(criterion):
    with criterion(4, "extended box has the Betti numbers of the box", 120):
        r = run_suite("extended", seed=42)
        assert len(r.instances) == 29 + 50
        assert not _failed(r)
        assert all(i["checks"]["box"] == i["checks"]["extended"] for i in r.instances)


def test_criterion_05_quillen_bredon(criterion):
    with criterion(5, "fibre and fixed-point certification of theta, sigma, phi, psi", 300):
        tiers: dict = {}
        for name in ("theta", "sigma", "kneser"):
            r = run_suite(name, seed=42)
            assert not _failed(r), name
            _fibre_tiers([i["checks"] for i in r.instances], tiers)
        total = sum(tiers.values())
        assert tiers.get("nontrivial", 0) == 0 and tiers.get("empty", 0) == 0
        assert total > 0 and tiers["collapsible"] / total >= 0.9, tiers


def test_criterion_06_independence_complexes(criterion):
    with criterion(6, "independence complexes of cycles and paths", 60):
        c5 = ind_complex(cycle_graph(5), reversal(5))
        assert reduced_betti(c5.complex) == (0, 1)
        assert fixed_betti(c5) == (1,)
        c11 = ind_complex(cycle_graph(11), reversal(11))
        assert reduced_betti(c11.complex) == (0, 0, 0, 1)
        assert fixed_betti(c11) == (0, 1)
        assert reduced_betti(ind_complex(path_graph(5)).complex) == (0, 1)
        assert reduced_betti(ind_complex(path_graph(11)).complex) == (0, 0, 0, 1)
        assert sorted(generating_simplex_formula(1)) == [2, 4]
        assert sorted(generating_simplex_formula(2)) == [2, 5, 7, 10]
        g1 = generating_simplex_check(c5.complex, [2, 4])
        g2 = generating_simplex_check(c11.complex, [2, 5, 7, 10])
        assert g1.passed and g1.details["sphere_dim"] == 1
        assert g2.passed and g2.details["sphere_dim"] == 3


def test_criterion_07_hom_factorisation(criterion):
    with criterion(7, "extended Hom factors as a join; Hom(K2,K3) and Hom(K3,K2)", 60):
        D, info = hom_ex_complex(cycle_graph(5), complete_graph(2))
        ind = ind_complex(cycle_graph(5)).complex
        b_ind = reduced_betti(ind)
        assert reduced_betti(D) == (0, 0, 0, 1)
        assert reduced_betti(join_copies(ind, 2)) == (0, 0, 0, 1)
        assert join_betti(b_ind, b_ind) == (0, 0, 0, 1)
        assert info["matches_join_of_ind"]
        assert poset_betti(hom_poset(complete_graph(2), complete_graph(3)).base) == (0, 1)
        assert len(hom_poset(complete_graph(3), complete_graph(2))) == 0


def test_criterion_08_csorba_round_trip(criterion):
    with criterion(8, "free complexes are recovered from their compatibility graphs", 120):
        r = run_suite("csorba", seed=42)
        assert {i["instance"] for i in r.instances} == {"two_points", "square", "hexagon"}
        assert not _failed(r)
        for inst in r.instances:
            c = inst["checks"]
            assert c["complex_free"] and all(c["avatars_free"].values())
            assert c["avatar_betti"]["box"] == c["complex_betti"]
            assert c["closures_ok"]


def test_criterion_09_engine_soundness(criterion):
    with criterion(9, "boundary squares to zero, Euler characteristic, join law", 30):
        rng = random.Random(derive_seed(42, 9))
        for _ in range(50):
            ok, checks = engine_pair_check(random_complex(rng), random_complex(rng))
            assert ok, checks


def _gcl_command() -> list[str]:
    exe = shutil.which("gcl")
    return [exe] if exe else [sys.executable, "-m", "gcl.cli"]


def test_criterion_10_determinism(criterion, tmp_path):
    with criterion(10, "two avatar-suite runs give identical report bodies", 600):
        bodies = []
        for k in range(2):
            out = tmp_path / f"run{k}.json"
            proc = subprocess.run(
                _gcl_command() + ["verify", "--suite", "avatars", "--seed", "42", "--out", str(out)],
                capture_output=True, text=True)
            assert proc.returncode == 0, proc.stderr
            doc = json.loads(out.read_text())
            assert doc["seed"] == 42 and doc["schema"] == 1
            bodies.append(canonical_json(body_of(doc)).encode())
        assert bodies[0] == bodies[1]
