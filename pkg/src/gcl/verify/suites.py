"""Named verification suites.

Each suite expands its parameters into a list of instances, runs them (in
worker processes when ``jobs > 1``) and collects the results in a
:class:`Report`.  Instance results never contain timings, so the report body
depends only on the parameters and the master seed.
"""

from __future__ import annotations

import logging
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import combinations
from typing import Callable

from ..complex import SimplicialComplex
from ..errors import BudgetExceeded, GCLError
from ..homology import (
    BettiVector,
    boundary_matrices,
    chromatic_bound_line,
    euler_matches_betti,
    join_betti,
    join_complexes,
    poset_betti,
    reduced_betti,
)
from ..poset import MonotoneMap, identity_map, inclusion_map
from ..z2 import (
    Z2Complex,
    Z2Map,
    box_poset,
    enriched_box,
    fixed_betti,
    lovasz_poset,
    omega_inverse,
    omega_iso,
    sigma_map,
    theta_map,
    two_point_extension,
)
from ..graphs.core import (
    Graph,
    SetFamily,
    complete_graph,
    connected_corpus,
    cycle_graph,
    graph_name,
    graphs_with_edges,
    path_graph,
    random_graphs,
    reversal,
)
from ..graphs.hom import (
    g_deleted_join,
    hom_ex_complex,
    hom_ex_poset,
    hom_k2,
    hom_poset,
    join_copies,
)
from ..graphs.independence import (
    deletion_decomposition,
    generating_simplex_formula,
    ind_complex,
)
from ..graphs.kneser import b_chain_kg, b_sark_kg, kneser_avatars, phi_map, psi_map
from ..graphs.neighborhood import all_subsets_poset, avatars, lambda_map, neighborhood_poset
from ..graphs.semilattice import (
    FreeISemilattice,
    compatibility_graph,
    is_fat,
    nn_closure,
    omega_sharp,
)
from ..labels import label_str
from .checks import bredon_check, generating_simplex_check, order_homotopy_check, quillen_check
from .corpus import csorba_corpus, random_antitone, random_complex
from .report import Report, derive_seed

log = logging.getLogger(__name__)

# Kneser families: (n, k) for the k-subsets of [n]
KNESER_FAMILIES = ((4, 1), (5, 1), (4, 2), (5, 2))
# edge complexes with more faces than this skip the face-projection fibre check
LAMBDA_FACE_LIMIT = 4000
# offset of the seed stream used to sample the 6-vertex graphs
_SAMPLE_STREAM = 1_000_003


@dataclass
class Task:
    name: str
    fn: Callable
    args: tuple = ()


def _betti(b: BettiVector) -> list[int] | None:
    return b.to_list()


def _run_task(task: Task, seed: int, restarts: int) -> dict:
    try:
        passed, checks = task.fn(*task.args, seed=seed, restarts=restarts)
        return {"instance": task.name, "seed": seed, "passed": bool(passed), "checks": checks}
    except (GCLError, AssertionError, ValueError) as exc:
        return {"instance": task.name, "seed": seed, "passed": False,
                "error": f"{type(exc).__name__}: {exc}"}


def _star(payload):
    return _run_task(*payload)


# -- budgets ----------------------------------------------------------------------

DEFAULTS: dict[str, dict] = {
    "omega": {"size": 8, "count": 100},
    "sigma": {"max_vertices": 5, "size": 6, "count": 30},
    "theta": {"max_vertices": 5},
    "extended": {"max_vertices": 5, "samples": 50},
    "enriched": {"max_vertices": 5},
    "avatars": {"max_vertices": 5, "samples": 50},
    "kneser": {},
    "csorba": {},
    "ind": {"p": 2},
    "hom": {"max_vertices": 4},
    "fatlat": {"count": 30},
}

LIMITS = {"max_vertices": 5, "samples": 100, "size": 10, "count": 1000, "p": 2}


def resolve_params(name: str, params: dict | None, large: bool = False) -> dict:
    if name not in DEFAULTS:
        raise GCLError(f"unknown suite {name!r}; choose from {', '.join(sorted(DEFAULTS))}")
    out = dict(DEFAULTS[name])
    for k, v in (params or {}).items():
        if v is not None and k in out:
            out[k] = v
    if not large:
        for k, v in out.items():
            if isinstance(v, int) and k in LIMITS and v > LIMITS[k]:
                raise BudgetExceeded(f"{k}={v} is above the default budget {LIMITS[k]}; "
                                     "pass --large to allow it")
    return out


def _graph_corpus(max_vertices: int, samples: int, seed: int) -> list[Graph]:
    """Connected graphs on 3..max_vertices vertices plus seeded 6-vertex samples."""
    gs = connected_corpus(range(3, max_vertices + 1))
    if samples:
        gs += random_graphs(6, samples, derive_seed(seed, _SAMPLE_STREAM))
    return gs


# -- omega -----------------------------------------------------------------------


def _omega_instance(index: int, size: int, *, seed: int, restarts: int):
    Q = random_antitone(random.Random(seed), size)
    z = omega_iso(Q)
    back = omega_inverse(Q)
    f = z.map
    round_trip = back.map.compose(f)
    checks = {
        "elements": len(Q),
        "bijective": f.is_bijective(),
        "order_embedding": f.is_order_embedding(),
        "equivariant": z.is_equivariant(),
        "inverse_equivariant": back.is_equivariant(),
        "round_trip": round_trip.assignment.tolist() == list(range(len(f.source))),
    }
    return all(checks[k] for k in checks if k != "elements"), checks


def _omega_tasks(p: dict, seed: int) -> list[Task]:
    return [Task(f"antitone#{i}", _omega_instance, (i, p["size"])) for i in range(p["count"])]


# -- sigma / theta -----------------------------------------------------------------


def _sigma_graph(G: Graph, *, seed: int, restarts: int):
    L = lovasz_poset(neighborhood_poset(G))
    r = bredon_check(sigma_map(L), "up", seed, restarts)
    return r.passed, {"bredon": r.details}


def _sigma_random(index: int, size: int, *, seed: int, restarts: int):
    Q = random_antitone(random.Random(seed), size)
    r = bredon_check(sigma_map(Q), "up", seed, restarts)
    return r.passed, {"elements": len(Q), "bredon": r.details}


def _sigma_tasks(p: dict, seed: int) -> list[Task]:
    tasks = [Task(f"lovasz:{graph_name(G)}", _sigma_graph, (G,))
             for G in graphs_with_edges(p["max_vertices"])]
    tasks += [Task(f"antitone#{i}", _sigma_random, (i, p["size"])) for i in range(p["count"])]
    return tasks


def _theta_graph(G: Graph, *, seed: int, restarts: int):
    P = neighborhood_poset(G)
    r = bredon_check(theta_map(P), "up", seed, restarts)
    sq = MonotoneMap(P.base, P.base, P.C[P.C])
    h = order_homotopy_check(identity_map(P.base), sq)
    return r.passed and h.passed, {"bredon": r.details, "c_squared_retraction": h.details}


def _theta_tasks(p: dict, seed: int) -> list[Task]:
    return [Task(graph_name(G), _theta_graph, (G,)) for G in graphs_with_edges(p["max_vertices"])]


# -- extended / enriched ----------------------------------------------------------


def _extended_graph(G: Graph, *, seed: int, restarts: int):
    av = avatars(G)
    b_box, b_ext = poset_betti(av.box.base), poset_betti(av.extended.base)
    inc = Z2Map(av.box, av.extended, inclusion_map(av.box.base, av.extended.base))
    r = bredon_check(inc, "up", seed, restarts)
    ok = b_box == b_ext and r.passed
    return ok, {"box": _betti(b_box), "extended": _betti(b_ext), "inclusion": r.details}


def _extended_tasks(p: dict, seed: int) -> list[Task]:
    return [Task(graph_name(G), _extended_graph, (G,))
            for G in _graph_corpus(p["max_vertices"], p["samples"], seed)]


def _enriched_graph(G: Graph, *, seed: int, restarts: int):
    P = neighborhood_poset(G)
    B = box_poset(P)
    b = poset_betti(B.base)
    S = enriched_box(P, all_subsets_poset(G))
    T = two_point_extension(B)
    b_s, b_t = poset_betti(S.base), poset_betti(T.base)
    suspended = b.shifted(1)
    checks = {
        "box": _betti(b), "enriched": _betti(b_s), "two_point": _betti(b_t),
        "enriched_is_suspension": b_s == suspended,
        "two_point_is_suspension": b_t == suspended,
        "free": [S.is_free(), T.is_free()],
    }
    return (checks["enriched_is_suspension"] and checks["two_point_is_suspension"]
            and all(checks["free"])), checks


def _enriched_tasks(p: dict, seed: int) -> list[Task]:
    return [Task(graph_name(G), _enriched_graph, (G,))
            for G in connected_corpus(range(3, p["max_vertices"] + 1))]


# -- avatars ----------------------------------------------------------------------


def _avatar_graph(G: Graph, *, seed: int, restarts: int):
    av = avatars(G)
    b = av.betti()
    base = b["box"]
    desuspended = b["suspended"].shifted(-1)
    equal = all(b[k] == base for k in ("lovasz", "extended", "edge")) and desuspended == base
    free = av.freeness()
    checks: dict = {
        "betti": {k: _betti(v) for k, v in sorted(b.items())},
        "suspended_desuspended": _betti(desuspended),
        "equal": equal,
        "free": free,
        "chromatic": chromatic_bound_line(graph_name(G), base),
    }
    ok = equal and all(free.values())
    faces = len(av.edge.complex.faces())
    if faces <= LAMBDA_FACE_LIMIT:
        _, lam = lambda_map(G, av.box)
        r = quillen_check(lam.map, "down", seed, restarts)
        checks["edge_projection"] = r.details
        ok = ok and r.passed
    else:
        checks["edge_projection"] = f"skipped: {faces} faces"
    return ok, checks


def _kneser_avatar(n: int, k: int, *, seed: int, restarts: int):
    F = SetFamily.k_subsets(n, k)
    av = kneser_avatars(F)
    b_box, b_susp = poset_betti(av.box.base), poset_betti(av.suspended.base)
    C, S = b_chain_kg(F), b_sark_kg(F)
    b_c, b_s = poset_betti(C.base), poset_betti(S.base)
    checks = {
        "box": _betti(b_box), "suspended": _betti(b_susp),
        "chain_kg": _betti(b_c), "sark_kg": _betti(b_s),
        "chain_matches_box": b_c == b_box, "sark_matches_suspended": b_s == b_susp,
        "free": [C.is_free(), S.is_free(), av.box.is_free(), av.suspended.is_free()],
    }
    ok = checks["chain_matches_box"] and checks["sark_matches_suspended"] and all(checks["free"])
    return ok, checks


def _kneser_label(n: int, k: int) -> str:
    return f"kneser:{k}-subsets of [{n}]"


def _avatar_tasks(p: dict, seed: int) -> list[Task]:
    tasks = [Task(graph_name(G), _avatar_graph, (G,))
             for G in _graph_corpus(p["max_vertices"], p["samples"], seed)]
    tasks += [Task(_kneser_label(n, k), _kneser_avatar, (n, k)) for n, k in KNESER_FAMILIES]
    return tasks


# -- kneser -----------------------------------------------------------------------


def _kneser_instance(n: int, k: int, *, seed: int, restarts: int):
    ok, checks = _kneser_avatar(n, k, seed=seed, restarts=restarts)
    F = SetFamily.k_subsets(n, k)
    av = kneser_avatars(F)
    phi = bredon_check(phi_map(F, av), "down", seed, restarts)
    psi = bredon_check(psi_map(F, av), "down", seed, restarts)
    checks["phi"], checks["psi"] = phi.details, psi.details
    return ok and phi.passed and psi.passed, checks


def _kneser_tasks(p: dict, seed: int) -> list[Task]:
    return [Task(_kneser_label(n, k), _kneser_instance, (n, k)) for n, k in KNESER_FAMILIES]


# -- csorba -----------------------------------------------------------------------


def csorba_round_trip(X: Z2Complex, *, seed: int = 0, restarts: int = 32):
    """Face semilattice of a free complex, its compatibility graph and the comparison
    of that graph's avatars with the complex."""
    K = X.complex
    L = FreeISemilattice.from_z2complex(X)
    fat, witness = is_fat(L.base)
    G = compatibility_graph(L)
    av = avatars(G)
    b_K = reduced_betti(K)
    b = av.betti()
    free = av.freeness()
    closures_ok, bad = True, []
    subsets = [()] + [(x,) for x in L.base.elements] + list(combinations(L.base.elements, 2))
    for A in subsets:
        c = nn_closure(L, A)
        if not (c.matches and c.idempotent):
            closures_ok = False
            if len(bad) < 5:
                bad.append(c.to_dict())
    equal = all(v == b_K for k, v in b.items() if k != "suspended") \
        and b["suspended"].shifted(-1) == b_K
    sharp = omega_sharp(L, G)
    r = bredon_check(sharp, "up", seed, restarts)
    b_L = poset_betti(L.base)
    checks = {
        "complex_betti": _betti(b_K), "complex_free": X.is_free(),
        "semilattice_size": len(L), "fat": fat,
        "fat_witness": None if witness is None else [label_str(x) for x in witness],
        "graph_vertices": len(G), "graph_edges": len(G.edges),
        "avatar_betti": {k: _betti(v) for k, v in sorted(b.items())},
        "avatars_free": free, "equal": equal,
        "closures_checked": len(subsets), "closures_ok": closures_ok, "closure_failures": bad,
        "omega_sharp": r.details,
        # diagnostic only: raw Betti of the Lovasz avatar of G_L against the face poset
        "lovasz_vs_face_poset": {"lovasz": _betti(b["lovasz"]), "face_poset": _betti(b_L),
                                 "diverge": b["lovasz"] != b_L},
    }
    ok = (X.is_free() and fat and equal and all(free.values()) and closures_ok and r.passed)
    return ok, checks


def _csorba_named(name: str, *, seed: int, restarts: int):
    return csorba_round_trip(csorba_corpus()[name], seed=seed, restarts=restarts)


def _csorba_tasks(p: dict, seed: int) -> list[Task]:
    return [Task(name, _csorba_named, (name,)) for name in csorba_corpus()]


# -- ind --------------------------------------------------------------------------


def _ind_cycle(p: int, *, seed: int, restarts: int):
    n = 6 * p - 1
    X = ind_complex(cycle_graph(n), reversal(n))
    b = reduced_betti(X.complex)
    fb = fixed_betti(X)
    sphere, fixed_sphere = (0,) * (2 * p - 1) + (1,), (0,) * (p - 1) + (1,)
    sigma = sorted(generating_simplex_formula(p))
    g = generating_simplex_check(X.complex, sigma, seed, restarts)
    checks = {
        "betti": _betti(b), "fixed_betti": _betti(fb),
        "sphere_dim": 2 * p - 1, "fixed_sphere_dim": p - 1,
        "generating_simplex": sigma, "certificate": g.details,
    }
    return b == sphere and fb == fixed_sphere and g.passed, checks


def _ind_path(n: int, *, seed: int, restarts: int):
    X = ind_complex(path_graph(n), reversal(n))
    b, fb = reduced_betti(X.complex), fixed_betti(X)
    checks = {"betti": _betti(b), "fixed_betti": _betti(fb)}
    if n % 6 == 5:
        p = (n + 1) // 6
        ok = b == (0,) * (2 * p - 1) + (1,) and fb == (0,) * (p - 1) + (1,)
    else:
        ok = True
    return ok, checks


def _ind_decompositions(n: int, *, seed: int, restarts: int):
    G = cycle_graph(n)
    out, ok = {}, True
    for key, kw in (("vertex 1", {"v": 1}), (f"edge 1-{n}", {"e": (1, n)}),
                    ("edge 1-2", {"e": (1, 2)})):
        d = deletion_decomposition(G, **kw)
        out[key] = {"union": d["union_ok"], "intersection": d["intersection_ok"]}
        ok = ok and d["union_ok"] and d["intersection_ok"]
    return ok, out


def _ind_tasks(p: dict, seed: int) -> list[Task]:
    tasks = []
    for q in range(1, p["p"] + 1):
        n = 6 * q - 1
        tasks += [Task(f"cycle {n}", _ind_cycle, (q,)), Task(f"path {n}", _ind_path, (n,)),
                  Task(f"decompositions cycle {n}", _ind_decompositions, (n,))]
    tasks.append(Task("path 4", _ind_path, (4,)))
    return tasks


# -- hom --------------------------------------------------------------------------


def _hom_factorization(gname: str, n: int, *, seed: int, restarts: int):
    G = {"C5": cycle_graph(5), "K2": complete_graph(2), "P3": path_graph(3)}[gname]
    D, info = hom_ex_complex(G, complete_graph(n))
    ind = ind_complex(G).complex
    b_D = reduced_betti(D)
    b_J = reduced_betti(join_copies(ind, n))
    expected = reduced_betti(ind)
    for _ in range(n - 1):
        expected = join_betti(expected, reduced_betti(ind))
    b_P = poset_betti(hom_ex_poset(G, complete_graph(n)))
    checks = {"betti": _betti(b_D), "join_betti": _betti(b_J), "join_law": _betti(expected),
              "poset_model": _betti(b_P), "faces_match": info.get("matches_join_of_ind")}
    return b_D == b_J == expected == b_P and bool(info.get("matches_join_of_ind")), checks


def _hom_small(*, seed: int, restarts: int):
    k2, k3 = complete_graph(2), complete_graph(3)
    h23 = hom_poset(k2, k3)
    b23 = poset_betti(h23.base)
    h32 = hom_poset(k3, k2)
    point = SimplicialComplex.from_facets([[1]])
    dj = g_deleted_join(point, path_graph(3))
    checks = {
        "hom_k2_k3": _betti(b23), "hom_k3_k2_size": len(h32),
        "deleted_join_of_point_is_ind": dj.relabel(lambda v: v[0]) == ind_complex(path_graph(3)).complex,
    }
    ok = b23 == (0, 1) and len(h32) == 0 and checks["deleted_join_of_point_is_ind"]
    return ok, checks


def _hom_k2_box(H: Graph, *, seed: int, restarts: int):
    hp = hom_k2(H)
    B = box_poset(neighborhood_poset(H))
    as_pairs = {tuple(t) for t in hp.base.elements}
    same = as_pairs == set(B.base.elements) and all(
        hp.base.le(a, b) == B.base.le(a, b) for a in hp.base.elements for b in hp.base.elements)
    return same, {"elements": len(hp), "matches_box": same}


def _hom_join_law(gname: str, *, seed: int, restarts: int):
    G = {"K2": complete_graph(2), "P3": path_graph(3)}[gname]
    K = SimplicialComplex.from_facets([["a"], ["b"]])
    L = SimplicialComplex.from_facets([["c", "d"], ["e"]])
    KL = join_complexes(K, L)
    lhs = reduced_betti(g_deleted_join(KL, G))
    rhs = reduced_betti(join_complexes(g_deleted_join(K, G), g_deleted_join(L, G)))
    return lhs == rhs, {"deleted_join_of_join": _betti(lhs), "join_of_deleted_joins": _betti(rhs)}


def _hom_tasks(p: dict, seed: int) -> list[Task]:
    tasks = [Task(f"extended hom {g} to K{n}", _hom_factorization, (g, n))
             for g, n in (("C5", 2), ("K2", 2), ("K2", 3), ("P3", 2))]
    tasks.append(Task("hom K2/K3 and K3/K2", _hom_small))
    tasks += [Task(f"join law over {g}", _hom_join_law, (g,)) for g in ("K2", "P3")]
    tasks += [Task(f"hom K2 to {graph_name(H)}", _hom_k2_box, (H,))
              for H in graphs_with_edges(p["max_vertices"])]
    return tasks


# -- fatlat -----------------------------------------------------------------------


def _fat_face_poset(index: int, *, seed: int, restarts: int):
    from ..complex import face_poset
    K = random_complex(random.Random(seed))
    fat, witness = is_fat(face_poset(K))
    return fat, {"faces": len(K.faces()), "fat": fat,
                 "witness": None if witness is None else [label_str(x) for x in witness]}


def _fat_controls(*, seed: int, restarts: int):
    from ..poset import build_poset
    chain3 = build_poset([1, 2, 3], [(1, 2), (2, 3)])
    diamond = build_poset(["0", "a", "b", "1"], [("0", "a"), ("0", "b"), ("a", "1"), ("b", "1")])
    c_fat, _ = is_fat(chain3)
    d_fat, _ = is_fat(diamond)
    return (not c_fat) and d_fat, {"three_chain_fat": c_fat, "diamond_fat": d_fat}


def _fat_semilattice(name: str, *, seed: int, restarts: int):
    L = FreeISemilattice.from_z2complex(csorba_corpus()[name])
    fat, _ = is_fat(L.base)
    fails = 0
    for A in [(x,) for x in L.base.elements] + list(combinations(L.base.elements, 2)):
        c = nn_closure(L, A)
        fails += not (c.matches and c.idempotent)
    return fat and not fails, {"size": len(L), "fat": fat, "closure_failures": fails}


def _fatlat_tasks(p: dict, seed: int) -> list[Task]:
    tasks = [Task(f"face poset #{i}", _fat_face_poset, (i,)) for i in range(p["count"])]
    tasks.append(Task("controls", _fat_controls))
    tasks += [Task(f"semilattice {name}", _fat_semilattice, (name,)) for name in csorba_corpus()]
    return tasks


# -- engine (used by the acceptance tests and `gcl betti`) ----------------------------


def engine_pair_check(K: SimplicialComplex, L: SimplicialComplex) -> tuple[bool, dict]:
    """Boundary squares to zero, Euler characteristic agrees with Betti numbers,
    and the Betti numbers of a join follow the shifted product law."""
    bK, bL = reduced_betti(K), reduced_betti(L)
    J = join_complexes(K, L)
    bJ = reduced_betti(J)
    checks = {
        "dd_zero": all(boundary_matrices(X).dd_is_zero() for X in (K, L, J)),
        "euler": all(euler_matches_betti(X) for X in (K, L, J)),
        "join_law": bJ == join_betti(bK, bL),
        "betti": [_betti(bK), _betti(bL), _betti(bJ)],
    }
    return checks["dd_zero"] and checks["euler"] and checks["join_law"], checks


SUITES: dict[str, Callable[[dict, int], list[Task]]] = {
    "omega": _omega_tasks,
    "sigma": _sigma_tasks,
    "theta": _theta_tasks,
    "extended": _extended_tasks,
    "enriched": _enriched_tasks,
    "avatars": _avatar_tasks,
    "kneser": _kneser_tasks,
    "csorba": _csorba_tasks,
    "ind": _ind_tasks,
    "hom": _hom_tasks,
    "fatlat": _fatlat_tasks,
}


def run_suite(name: str, params: dict | None = None, seed: int = 42, *, jobs: int = 1,
              restarts: int = 32, large: bool = False) -> Report:
    p = resolve_params(name, params, large)
    tasks = SUITES[name](p, seed)
    payloads = [(t, derive_seed(seed, i), restarts) for i, t in enumerate(tasks)]
    start = time.perf_counter()
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_star, payloads, chunksize=max(1, len(tasks) // (4 * jobs))))
    else:
        results = [_star(x) for x in payloads]
    log.info("suite %s: %d instances", name, len(results))
    return Report(suite=name, params={**p, "restarts": restarts, "large": large}, seed=seed,
                  instances=results, corpus=[t.name for t in tasks],
                  wall_time=time.perf_counter() - start)

