"""G-deleted joins and the Hom / extended Hom posets."""

from __future__ import annotations

from itertools import product

import numpy as np

from ..complex import SimplicialComplex, order_complex
from ..errors import GroundMismatch, NoEdges
from ..poset import Poset
from ..z2 import MONOTONE, Z2Poset
from .core import Graph, bits, complete_graph
from .independence import ind_complex
from .neighborhood import cn_mask, neighborhood_masks


def _faces_with_empty(K: SimplicialComplex) -> list[int]:
    """Faces of ``K`` as vertex bitmasks, the empty face first."""
    return [0] + [sum(1 << v for v in f) for f in K.faces()]


def g_deleted_join(K: SimplicialComplex, G: Graph, m: int | None = None) -> SimplicialComplex:
    """Faces ``theta_1 + ... + theta_m`` (one copy of ``K`` per index), with
    ``theta_i`` and ``theta_j`` disjoint whenever ``{i, j}`` is an edge of ``G``.

    The graph lives on ``1..m``; vertices of the result are ``(i, v)``.
    """
    m = len(G) if m is None else m
    ground = set(range(1, m + 1))
    if not set(G.vertices) <= ground:
        raise GroundMismatch(f"graph vertices must lie in 1..{m}")
    faces = _faces_with_empty(K)
    nbrs = {i: [j for j in range(1, i) if j in G._index and G.adjacent(i, j)]
            for i in range(1, m + 1)}
    nK = len(K.vertices)
    verts = [(i, v) for i in range(1, m + 1) for v in K.vertices]
    out: list[int] = []

    def extend(i: int, chosen: list[int], acc: int) -> None:
        if i > m:
            if acc:
                out.append(acc)
            return
        for f in faces:
            if all(not (f & chosen[j - 1]) for j in nbrs[i]):
                extend(i + 1, chosen + [f], acc | (f << ((i - 1) * nK)))

    extend(1, [], 0)
    full = {tuple(bits(a)) for a in out}
    return SimplicialComplex.from_faces(
        [[verts[x] for x in f] for f in full], vertices=verts)


def hom_poset(G: Graph, H: Graph) -> Poset | Z2Poset:
    """Tuples ``(x_i)`` of neighbourhood sets of ``H`` indexed by the vertices of
    ``G`` with ``x_i`` inside ``CN(x_j)`` along every edge, ordered componentwise.

    For ``G`` a single edge the swap action is attached.
    """
    if not G.edges:
        raise NoEdges("G must have an edge")
    if not H.edges:
        return Poset.empty()
    cells = neighborhood_masks(H)
    cn = {x: cn_mask(H, x) for x in cells}
    n = len(G)
    earlier = [[j for j in range(i) if G.mask[i] >> j & 1] for i in range(n)]
    tuples: list[tuple[int, ...]] = []

    def extend(i: int, chosen: tuple[int, ...]) -> None:
        if i == n:
            tuples.append(chosen)
            return
        for x in cells:
            if all(x & ~cn[chosen[j]] == 0 for j in earlier[i]):
                extend(i + 1, chosen + (x,))

    extend(0, ())
    if not tuples:
        return Poset.empty()
    arr = np.array(tuples, dtype=np.int64)
    leq = np.ones((len(tuples), len(tuples)), dtype=bool)
    for k in range(n):
        col = arr[:, k]
        leq &= (col[:, None] & ~col[None, :]) == 0
    labels = [tuple(H.from_mask(x) for x in t) for t in tuples]
    P = Poset(labels, leq)
    if n == 2 and len(G.edges) == 1:
        pos = {t: i for i, t in enumerate(tuples)}
        return Z2Poset(P, [pos[(t[1], t[0])] for t in tuples], MONOTONE, check=False)
    return P


def hom_ex_poset(G: Graph, H: Graph) -> Poset:
    """Maps ``phi`` from the vertices of ``G`` to vertex sets of ``H``, not all
    empty, with ``phi(i)`` and ``phi(j)`` completely joined in ``H`` along every
    edge ``{i, j}``; ordered by componentwise containment.

    Values need not have a common neighbour: a coordinate whose neighbours
    are all empty is unconstrained.
    """
    if not G.edges:
        raise NoEdges("G must have an edge")
    cells = list(range(1 << len(H)))
    cn = {x: cn_mask(H, x) for x in cells}
    n = len(G)
    earlier = [[j for j in range(i) if G.mask[i] >> j & 1] for i in range(n)]
    tuples: list[tuple[int, ...]] = []

    def extend(i: int, chosen: tuple[int, ...]) -> None:
        if i == n:
            if any(chosen):
                tuples.append(chosen)
            return
        for x in cells:
            if all(x & ~cn[chosen[j]] == 0 for j in earlier[i]):
                extend(i + 1, chosen + (x,))

    extend(0, ())
    arr = np.array(tuples, dtype=np.int64).reshape(len(tuples), n)
    leq = np.ones((len(tuples), len(tuples)), dtype=bool)
    for k in range(n):
        col = arr[:, k]
        leq &= (col[:, None] & ~col[None, :]) == 0
    return Poset([tuple(H.from_mask(x) for x in t) for t in tuples], leq)


def _is_complete(H: Graph) -> bool:
    n = len(H)
    return len(H.edges) == n * (n - 1) // 2


def hom_ex_complex(G: Graph, H: Graph) -> tuple[SimplicialComplex, dict]:
    """Extended Hom complex and a record of the cross-check that was run.

    For complete ``H = K_n`` this is the ``G``-deleted join of ``n - 1``
    simplices, compared face-for-face with the ``n``-fold join of
    ``Ind(G)`` (vertex ``(i, c)`` of the deleted join is vertex ``i`` of the
    ``c``-th copy of ``Ind(G)``).  Otherwise it is the order complex of
    :func:`hom_ex_poset`.
    """
    if not G.edges:
        raise NoEdges("G must have an edge")
    if not _is_complete(H):
        return order_complex(hom_ex_poset(G, H)), {"model": "order complex"}
    n = len(H)
    Gs = G.relabel({v: i + 1 for i, v in enumerate(G.vertices)})
    simplex = SimplicialComplex.simplex(list(range(1, n + 1)))
    D = g_deleted_join(simplex, Gs)
    ind = ind_complex(Gs).complex
    J = join_copies(ind, n)
    same = D == J
    return D, {"model": "deleted join", "matches_join_of_ind": same, "copies": n}


def join_copies(K: SimplicialComplex, n: int) -> SimplicialComplex:
    """Join of ``n`` copies of ``K`` with vertex ``v`` of copy ``c`` named ``(v, c)``."""
    verts = [(v, c) for c in range(1, n + 1) for v in K.vertices]
    pos = {x: i for i, x in enumerate(verts)}
    facets = [[pos[(K.vertices[v], c + 1)] for c, f in enumerate(choice) for v in f]
              for choice in product(K.facets, repeat=n)]
    return SimplicialComplex(verts, facets, maximal=True)


def hom_k2(H: Graph) -> Z2Poset:
    return hom_poset(complete_graph(2), H)

