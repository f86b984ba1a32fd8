"""The ``gcl`` command line: build, inspect and verify.

Every command prints a JSON report (or writes it with ``--out``).  Exit
status is 0 when all checks pass, 1 when some check fails and 2 for usage,
parse and input errors.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
import time
from pathlib import Path

from .complex import load_complex
from .errors import BudgetExceeded, GCLError
from .graphs.core import SetFamily, cycle_graph, graph_name, load_graph, path_graph, reversal
from .graphs.hom import hom_ex_complex, hom_poset
from .graphs.independence import ind_complex
from .graphs.kneser import b_chain_kg, b_sark_kg, kneser_avatars
from .graphs.neighborhood import avatars, neighborhood_poset
from .homology import (
    chromatic_bound_line,
    connectivity_estimate,
    euler_matches_betti,
    poset_betti,
    reduced_betti,
)
from .verify.report import SCHEMA, digest
from .verify.suites import SUITES, csorba_round_trip, run_suite
from .z2 import Z2Poset, box_poset, fixed_betti, z2complex_from_dict

log = logging.getLogger("gcl")

# conservative input sizes; larger inputs need --large
MAX_GRAPH_VERTICES = 6
MAX_IND_VERTICES = 12
MAX_KNESER_N = 5
MAX_COMPLEX_VERTICES = 8


def _document(command: str, body: dict, wall: float) -> dict:
    body = {"schema": SCHEMA, "command": command, **body}
    return {**body, "checksum": digest(body), "wall_time": round(wall, 3)}


def _emit(doc: dict, out: str | None) -> None:
    text = json.dumps(doc, sort_keys=True, indent=2)
    if out:
        Path(out).write_text(text + "\n")
    else:
        print(text)


def _budget(value: int, limit: int, what: str, large: bool) -> None:
    if value > limit and not large:
        raise BudgetExceeded(f"{what} = {value} exceeds the default budget {limit}; pass --large")


# -- commands ---------------------------------------------------------------------


def cmd_verify(args) -> tuple[dict, bool]:
    params = {"max_vertices": args.max_vertices, "p": args.p, "size": args.size,
              "count": args.count, "samples": args.samples}
    report = run_suite(args.suite, params, args.seed, jobs=args.jobs,
                       restarts=args.restarts, large=args.large)
    return report.to_dict(), report.passed


def cmd_avatars(args) -> tuple[dict, bool]:
    G = load_graph(args.graph)
    _budget(len(G), MAX_GRAPH_VERTICES, "vertices", args.large)
    av = avatars(G)
    b = av.betti()
    base = b["box"]
    desuspended = b["suspended"].shifted(-1)
    equal = all(v == base for k, v in b.items() if k != "suspended") and desuspended == base
    free = av.freeness()
    body = {
        "graph": graph_name(G),
        "betti": {k: str(v) for k, v in sorted(b.items())},
        "suspended_desuspended": str(desuspended),
        "free": free, "equal": equal,
        "connectivity": connectivity_estimate(base).to_dict(),
        "chromatic": chromatic_bound_line(graph_name(G), base),
        "passed": equal and all(free.values()),
    }
    return body, body["passed"]


def cmd_ind(args) -> tuple[dict, bool]:
    n = args.cycle if args.cycle is not None else args.path
    _budget(n, MAX_IND_VERTICES, "n", args.large)
    G = cycle_graph(n) if args.cycle is not None else path_graph(n)
    X = ind_complex(G, reversal(n))
    K = X.complex
    b = reduced_betti(K)
    body = {"graph": f"{'cycle' if args.cycle is not None else 'path'} {n}",
            "betti": str(b), "f_vector": list(K.f_vector()), "passed": True}
    if args.fixed:
        body["fixed_betti"] = str(fixed_betti(X))
    return body, True


def cmd_kneser(args) -> tuple[dict, bool]:
    if not 1 <= args.k <= args.n:
        raise BudgetExceeded("need 1 <= k <= n")
    _budget(args.n, MAX_KNESER_N, "n", args.large)
    F = SetFamily.k_subsets(args.n, args.k)
    body: dict = {"family": f"{args.k}-subsets of [{args.n}]", "complex": args.complex}
    try:
        av = kneser_avatars(F)
    except GCLError as exc:
        # an edgeless Kneser graph is a legitimate answer, not an input error
        body.update({"note": f"{type(exc).__name__}: {exc}", "passed": True})
        return body, True
    b_box, b_susp = poset_betti(av.box.base), poset_betti(av.suspended.base)
    b_chain, b_sark = poset_betti(b_chain_kg(F).base), poset_betti(b_sark_kg(F).base)
    chosen = {"chain": b_chain, "sark": b_sark, "box": b_box}[args.complex]
    agree = b_chain == b_box and b_sark == b_susp
    body.update({
        "betti": str(chosen),
        "comparison": {"box": str(b_box), "suspended": str(b_susp),
                       "chain": str(b_chain), "sark": str(b_sark)},
        "agree": agree, "passed": agree,
    })
    return body, agree


def cmd_hom(args) -> tuple[dict, bool]:
    G, H = load_graph(args.g), load_graph(args.h)
    _budget(max(len(G), len(H)), MAX_GRAPH_VERTICES, "vertices", args.large)
    body: dict = {"g": graph_name(G), "h": graph_name(H), "extended": args.extended}
    ok = True
    if args.extended:
        D, info = hom_ex_complex(G, H)
        body.update({"betti": str(reduced_betti(D)), "model": info})
        ok = info.get("matches_join_of_ind", True)
    else:
        hp = hom_poset(G, H)
        base = hp.base if isinstance(hp, Z2Poset) else hp
        body["betti"] = str(poset_betti(base))
        body["elements"] = len(base)
        if isinstance(hp, Z2Poset) and len(base):
            B = box_poset(neighborhood_poset(H))
            same = {tuple(t) for t in base.elements} == set(B.base.elements)
            body["matches_box_poset"] = same
            ok = same
    body["passed"] = bool(ok)
    return body, bool(ok)


def _load_z2complex(path: str):
    K, raw = load_complex(path)
    return z2complex_from_dict(raw), K


def cmd_csorba(args) -> tuple[dict, bool]:
    X, K = _load_z2complex(args.complex)
    _budget(len(K.vertices), MAX_COMPLEX_VERTICES, "vertices", args.large)
    ok, checks = csorba_round_trip(X, seed=args.seed, restarts=args.restarts)
    return {"checks": checks, "passed": ok}, ok


def cmd_betti(args) -> tuple[dict, bool]:
    X, K = _load_z2complex(args.complex)
    b = reduced_betti(K)
    body = {"betti": str(b), "f_vector": list(K.f_vector()),
            "euler_consistent": euler_matches_betti(K, b), "free": X.is_free(),
            "fixed_betti": str(fixed_betti(X))}
    body["passed"] = body["euler_consistent"]
    return body, body["passed"]


# -- parser -----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="gcl", description=__doc__.splitlines()[0])
    p.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, seed=True):
        sp.add_argument("--out", help="write the JSON report here instead of stdout")
        sp.add_argument("--large", action="store_true", help="lift the default size budgets")
        if seed:
            sp.add_argument("--seed", type=int, default=42)
            sp.add_argument("--restarts", type=int, default=32,
                            help="randomised collapse restarts per complex")

    v = sub.add_parser("verify", help="run a named verification suite")
    v.add_argument("--suite", required=True, choices=sorted(SUITES))
    v.add_argument("--max-vertices", type=int)
    v.add_argument("--p", type=int)
    v.add_argument("--size", type=int)
    v.add_argument("--count", type=int)
    v.add_argument("--samples", type=int, help="number of sampled 6-vertex graphs")
    v.add_argument("--jobs", type=int, default=os.cpu_count() or 1)
    common(v)
    v.set_defaults(func=cmd_verify)

    a = sub.add_parser("avatars", help="Betti numbers of every avatar of a graph")
    a.add_argument("graph", help="edge-list file")
    common(a, seed=False)
    a.set_defaults(func=cmd_avatars)

    i = sub.add_parser("ind", help="independence complex of a cycle or path")
    g = i.add_mutually_exclusive_group(required=True)
    g.add_argument("--cycle", type=int)
    g.add_argument("--path", type=int)
    i.add_argument("--fixed", action="store_true", help="also the fixed set of the reversal")
    common(i, seed=False)
    i.set_defaults(func=cmd_ind)

    k = sub.add_parser("kneser", help="box complexes of a Kneser graph of k-subsets")
    k.add_argument("--n", type=int, required=True)
    k.add_argument("--k", type=int, required=True)
    k.add_argument("--complex", choices=("chain", "sark", "box"), default="chain")
    common(k, seed=False)
    k.set_defaults(func=cmd_kneser)

    h = sub.add_parser("hom", help="Hom or extended Hom complex")
    h.add_argument("--g", required=True, help="edge-list file")
    h.add_argument("--h", required=True, help="edge-list file")
    h.add_argument("--extended", action="store_true")
    common(h, seed=False)
    h.set_defaults(func=cmd_hom)

    c = sub.add_parser("csorba", help="graph whose box complex models a free Z2-complex")
    c.add_argument("--complex", required=True, help="complex JSON with an involution")
    common(c)
    c.set_defaults(func=cmd_csorba)

    b = sub.add_parser("betti", help="reduced Betti numbers of a complex file")
    b.add_argument("complex", help="complex JSON")
    common(b, seed=False)
    b.set_defaults(func=cmd_betti)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    start = time.perf_counter()
    try:
        body, passed = args.func(args)
    except GCLError as exc:
        print(f"gcl: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    if args.command == "verify":
        doc = {**body, "wall_time": round(time.perf_counter() - start, 3)}
    else:
        doc = _document(args.command, body, time.perf_counter() - start)
    _emit(doc, args.out)
    return 0 if passed else 1


if __name__ == "__main__":
    sys.exit(main())
