"""Independence complexes, deletion decompositions and the generating simplex."""

from __future__ import annotations

from typing import Hashable, Iterable

import networkx as nx

from ..complex import SimplicialComplex
from ..errors import UnknownEdge
from ..z2 import Z2Complex
from .core import Graph, bits


def ind_complex(G: Graph, involution=None) -> Z2Complex:
    """Independent sets of ``G``; the action is ``involution``, the graph's own
    attached involution, or the identity.

    An involution passed in is checked to be a graph automorphism.
    """
    if involution is not None:
        G = G.with_involution(involution)
    facets = [sorted(G.index(v) for v in c) for c in nx.find_cliques(G.complement().to_networkx())]
    K = SimplicialComplex(G.vertices, facets, maximal=True)
    w = G.involution or {v: v for v in G.vertices}
    return Z2Complex(K, [G.index(w[v]) for v in G.vertices], check=False)


def independent_sets(G: Graph) -> set[frozenset]:
    """Every independent set, the empty one included (a direct oracle)."""
    out: set[frozenset] = set()
    n = len(G)

    def grow(start: int, chosen: int, blocked: int) -> None:
        out.add(G.from_mask(chosen))
        for i in range(start, n):
            if not (blocked >> i) & 1:
                grow(i + 1, chosen | 1 << i, blocked | G.mask[i] | 1 << i)

    grow(0, 0, 0)
    return out


def _cone(apex: Iterable[Hashable], faces: set[frozenset]) -> set[frozenset]:
    """Join of a full simplex on ``apex`` with a face family (all subsets of apex)."""
    apex = list(apex)
    subsets = [frozenset(apex[i] for i in bits(m)) for m in range(1 << len(apex))]
    return {f | s for f in faces for s in subsets}


def closed_neighborhood(G: Graph, v) -> set:
    return set(G.neighbors(v)) | {v}


def deletion_decomposition(G: Graph, v: Hashable | None = None,
                           e: Iterable[Hashable] | None = None) -> dict:
    """Split an independence complex along a vertex or an edge.

    Vertex form: ``Ind(G) = Ind(G - v)  u  {v} * Ind(G - N[v])`` meeting in
    ``Ind(G - N[v])``.

    Edge form, for ``e = {u, w}``: ``Ind(G - e) = Ind(G)  u  {u, w} * Ind(G - N[u] - N[w])``.
    The two pieces meet in the faces of the join missing ``u`` or ``w``, which is
    the boundary of the edge joined with ``Ind(G - N[u] - N[w])`` (a suspension).

    Face families include the empty face so that void pieces are representable.
    """
    if (v is None) == (e is None):
        raise ValueError("give exactly one of a vertex or an edge")
    if v is not None:
        G.index(v)
        whole = independent_sets(G)
        X = independent_sets(G.delete_vertices([v]))
        rest = independent_sets(G.delete_vertices(closed_neighborhood(G, v)))
        Y = _cone([v], rest)
        meet = rest
        kind = "vertex"
    else:
        u, w = tuple(e)
        if not G.adjacent(u, w):
            raise UnknownEdge(f"{u}-{w} is not an edge")
        whole = independent_sets(G.delete_edge((u, w)))
        X = independent_sets(G)
        star = closed_neighborhood(G, u) | closed_neighborhood(G, w)
        rest = independent_sets(G.delete_vertices(star))
        Y = _cone([u, w], rest)
        meet = {f for f in Y if not {u, w} <= f}
        kind = "edge"
    return {
        "kind": kind,
        "whole": whole,
        "X": X,
        "Y": Y,
        "intersection": meet,
        "rest": rest,
        "union_ok": X | Y == whole,
        "intersection_ok": X & Y == meet,
    }


def generating_simplex_formula(p: int) -> frozenset[int]:
    """``{3i - 1 : 1 <= i <= p}  u  {3p + 1 + 3j : 0 <= j < p}`` inside ``[6p - 1]``."""
    if p < 1:
        raise ValueError("p must be a positive integer")
    return frozenset([3 * i - 1 for i in range(1, p + 1)] +
                     [3 * p + 1 + 3 * j for j in range(p)])


def is_independent(G: Graph, S: Iterable[Hashable]) -> bool:
    m = G.to_mask(S)
    return all(not (G.mask[i] & m) for i in bits(m))
