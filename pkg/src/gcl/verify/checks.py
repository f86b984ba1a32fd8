"""Contractibility evidence and the fibre / fixed-point / retraction checks."""

from __future__ import annotations

import heapq
import logging
import random
from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from ..complex import SimplicialComplex, order_complex
from ..errors import NotAFace, NotEquivariant, NotMonotone, PointwiseOrderViolated
from ..homology import BettiVector, poset_betti, reduced_betti
from ..labels import label_str
from ..poset import MonotoneMap, Poset, beat_point_core
from ..z2 import Z2Map

COLLAPSIBLE = "collapsible"
HOMOLOGY_POINT = "homology_point"
NONTRIVIAL = "nontrivial"
EMPTY = "empty"

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class Verdict:
    """Evidence that a space is (or is not) contractible.

    ``kind`` is one of collapsible / homology_point / nontrivial / empty;
    ``method`` says how a collapsible verdict was reached.
    """

    kind: str
    betti: BettiVector | None = None
    method: str = ""
    steps: int = 0
    seed: int | None = None
    attempts: int = 0

    @property
    def contractible_evidence(self) -> bool:
        return self.kind in (COLLAPSIBLE, HOMOLOGY_POINT)

    def to_dict(self) -> dict:
        d = {"kind": self.kind, "method": self.method, "steps": self.steps,
             "attempts": self.attempts, "seed": self.seed}
        if self.betti is not None:
            d["betti"] = self.betti.to_list()
        return d


def _collapse_once(K: SimplicialComplex, rng: random.Random | None) -> tuple[int, int]:
    """Greedy elementary collapses; returns (pairs removed, faces left)."""
    faces = K.faces()
    present = set(faces)
    cof: dict[tuple, set] = {f: set() for f in faces}
    for f in faces:
        if len(f) > 1:
            for i in range(len(f)):
                cof[f[:i] + f[i + 1:]].add(f)

    def key(f):
        return (-len(f), rng.random() if rng else 0.0, f)

    heap = [key(f) for f in faces if len(cof[f]) == 1]
    heapq.heapify(heap)
    steps = 0
    while heap:
        *_, tau = heapq.heappop(heap)
        if tau not in present or len(cof[tau]) != 1:
            continue
        (sigma,) = cof[tau]
        if cof[sigma]:
            continue
        present.discard(tau)
        present.discard(sigma)
        steps += 1
        for face in (sigma, tau):
            if len(face) == 1:
                continue
            for i in range(len(face)):
                rho = face[:i] + face[i + 1:]
                if rho not in present:
                    continue
                cof[rho].discard(face)
                if len(cof[rho]) == 1:
                    heapq.heappush(heap, key(rho))
                elif not cof[rho] and len(rho) > 1:
                    # rho just became maximal, so its free faces may now collapse into it
                    for j in range(len(rho)):
                        mu = rho[:j] + rho[j + 1:]
                        if len(cof[mu]) == 1:
                            heapq.heappush(heap, key(mu))
        cof[tau] = set()
    return steps, len(present)


def collapsibility(K: SimplicialComplex | None, seed: int = 0, restarts: int = 32) -> Verdict:
    """Try to collapse ``K`` to a vertex: lexicographic greedy first, then
    ``restarts`` seeded random orders, then fall back to homology."""
    if K is None:
        return Verdict(EMPTY)
    if len(K.facets) == 1:
        return Verdict(COLLAPSIBLE, BettiVector((0,) * (K.dim + 1)), "simplex")
    rng = random.Random(seed)
    for attempt in range(restarts + 1):
        steps, left = _collapse_once(K, None if attempt == 0 else rng)
        if left == 1:
            return Verdict(COLLAPSIBLE, None, "collapse", steps, seed, attempt + 1)
    b = reduced_betti(K)
    kind = HOMOLOGY_POINT if b.is_acyclic else NONTRIVIAL
    return Verdict(kind, b, "homology", 0, seed, restarts + 1)


def poset_contractibility(P: Poset, seed: int = 0, restarts: int = 32) -> Verdict:
    """Cone test, then dismantling by beat points, then collapses of the order complex."""
    if len(P) == 0:
        return Verdict(EMPTY)
    if P.maximum() is not None or P.minimum() is not None:
        return Verdict(COLLAPSIBLE, None, "cone")
    core = beat_point_core(P)
    if len(core) == 1:
        return Verdict(COLLAPSIBLE, None, "dismantlable", len(P) - 1)
    return collapsibility(order_complex(core), seed, restarts)


# -- reports from individual checks ----------------------------------------------------


@dataclass
class CheckResult:
    name: str
    passed: bool
    details: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"name": self.name, "passed": self.passed, "details": self.details}


def quillen_check(f: MonotoneMap, direction: str = "down", seed: int = 0,
                  restarts: int = 32, cross_check: bool = True) -> CheckResult:
    """Every fibre ``f^-1(Q_{<=q})`` (or ``Q_{>=q}`` for ``direction='up'``) must
    be contractible, with collapse evidence preferred over homology.

    A pass also asserts that source and target have equal Betti numbers.
    """
    witness = f.monotonicity_witness()
    if witness is not None:
        a, b = witness
        raise NotMonotone(f"{label_str(a)} <= {label_str(b)} but images are not ordered")
    tiers = {COLLAPSIBLE: 0, HOMOLOGY_POINT: 0, NONTRIVIAL: 0, EMPTY: 0}
    methods: dict[str, int] = {}
    failures = []
    for q in range(len(f.target)):
        v = poset_contractibility(f.fiber(q, direction), seed + q, restarts)
        tiers[v.kind] += 1
        methods[v.method] = methods.get(v.method, 0) + 1
        if not v.contractible_evidence and len(failures) < 5:
            failures.append({"q": label_str(f.target.elements[q]), **v.to_dict()})
    total = len(f.target)
    passed = tiers[NONTRIVIAL] == 0 and tiers[EMPTY] == 0
    details = {
        "direction": direction, "fibres": total, "tiers": tiers, "methods": methods,
        "collapse_fraction": tiers[COLLAPSIBLE] / total if total else 1.0,
        "failures": failures,
    }
    if cross_check:
        bs, bt = poset_betti(f.source), poset_betti(f.target)
        details["betti_source"], details["betti_target"] = bs.to_list(), bt.to_list()
        if passed and bs != bt:
            raise AssertionError("fibres contractible but Betti numbers differ")
    return CheckResult("quillen", passed, details)


def bredon_check(z: Z2Map, direction: str = "down", seed: int = 0,
                 restarts: int = 32) -> CheckResult:
    """Ordinary level: equal Betti numbers and contractible fibres.  Fixed
    level: equal Betti numbers of the fixed sets, skipped when both actions
    are free (then an equivariant map is an equivalence iff it is one
    non-equivariantly)."""
    w = z.equivariance_witness()
    if w is not None:
        raise NotEquivariant(f"map does not commute with the actions at {label_str(w)}")
    q = quillen_check(z.map, direction, seed, restarts)
    bs, bt = q.details["betti_source"], q.details["betti_target"]
    level_a = q.passed and bs == bt
    free_s, free_t = z.source.is_free(), z.target.is_free()
    if free_s and free_t:
        branch = "free/free: fixed level vacuous"
        log.info("bredon: both actions free, fixed-point level skipped")
        level_b = True
        fixed = None
    else:
        branch = "fixed-point comparison"
        fs, ft = z.source.fixed_betti(), z.target.fixed_betti()
        level_b = fs == ft
        fixed = {"source": fs.to_list(), "target": ft.to_list()}
    return CheckResult("bredon", level_a and level_b, {
        "branch": branch, "level_ordinary": level_a, "level_fixed": level_b,
        "betti_source": bs, "betti_target": bt, "fixed_betti": fixed,
        "quillen": q.details, "free": [free_s, free_t],
    })


def order_homotopy_check(f: MonotoneMap, g: MonotoneMap) -> CheckResult:
    """For ``f <= g`` pointwise with one of them the identity, the other map's
    image (when the map is idempotent) is a deformation retract, so its order
    complex has the Betti numbers of the whole poset."""
    P = f.source
    if not bool(P.leq[f.assignment, g.assignment].all()):
        bad = int(np.flatnonzero(~P.leq[f.assignment, g.assignment])[0])
        raise PointwiseOrderViolated(f"f({label_str(P.elements[bad])}) is not below g of it")
    ident = np.arange(len(P))
    if np.array_equal(g.assignment, ident):
        h = f
    elif np.array_equal(f.assignment, ident):
        h = g
    else:
        return CheckResult("order_homotopy", True, {"note": "neither map is the identity"})
    idem = bool(np.array_equal(h.assignment[h.assignment], h.assignment))
    img = h.image()
    b_img, b_all = poset_betti(img), poset_betti(P)
    return CheckResult("order_homotopy", idem and b_img == b_all, {
        "idempotent": idem, "image": sorted(label_str(x) for x in img.elements),
        "betti_image": b_img.to_list(), "betti_whole": b_all.to_list(),
    })


def generating_simplex_check(K: SimplicialComplex, sigma: Iterable, seed: int = 0,
                             restarts: int = 32) -> CheckResult:
    """``sigma`` is a maximal face and deleting it leaves a contractible complex,
    so ``K`` is a sphere of dimension ``dim sigma``."""
    face = tuple(sorted(K.index(v) for v in sigma))
    if not K.has_face(face):
        raise NotAFace("sigma is not a face of K")
    maximal = K.is_facet(face)
    if not maximal:
        return CheckResult("generating_simplex", False, {"maximal": False})
    rest = K.without_face(face)
    v = collapsibility(rest, seed, restarts)
    dim = len(face) - 1
    passed = v.contractible_evidence
    if passed:
        expected = BettiVector((0,) * dim + (1,))
        if reduced_betti(K) != expected:
            raise AssertionError("generating simplex certified but K is not a homology sphere")
    return CheckResult("generating_simplex", passed, {
        "maximal": True, "sphere_dim": dim, "remainder": v.to_dict(),
    })

