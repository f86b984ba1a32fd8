"""Neighbourhood posets of graphs and the family of box-complex avatars."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Hashable, Iterable

import numpy as np

from ..complex import SimplicialComplex
from ..errors import NoEdges, NotEquivariant, NotMonotone
from ..homology import BettiVector, poset_betti, reduced_betti
from ..poset import MonotoneMap, Poset, _superset_matrix
from ..z2 import (
    WIPoset,
    Z2Complex,
    Z2Map,
    Z2Poset,
    box_poset,
    enriched_box,
    extended_box,
    lovasz_poset,
)
from .core import Graph, bits


def common_neighbors(G: Graph, A: Iterable[Hashable]) -> frozenset:
    """Vertices adjacent to every vertex of ``A``; all of V for empty ``A``."""
    return G.from_mask(cn_mask(G, G.to_mask(A)))


def cn_mask(G: Graph, m: int) -> int:
    out = (1 << len(G)) - 1
    for i in bits(m):
        out &= G.mask[i]
    return out


def _nonempty_submasks(m: int):
    sub = m
    while sub:
        yield sub
        sub = (sub - 1) & m


def neighborhood_masks(G: Graph) -> list[int]:
    """Nonempty vertex sets with a common neighbour, as sorted bitmasks."""
    found = set()
    for nb in set(G.mask):
        found.update(_nonempty_submasks(nb))
    return sorted(found, key=lambda m: (bin(m).count("1"), m))


def neighborhood_poset(G: Graph) -> WIPoset:
    """Vertex sets with a common neighbour, by inclusion, with ``C = CN``.

    The empty set is left out even though it has common neighbours: it
    would be a minimum and make every avatar contractible.
    """
    if not G.edges:
        raise NoEdges("the neighbourhood poset of an edgeless graph is empty")
    masks = neighborhood_masks(G)
    pos = {m: i for i, m in enumerate(masks)}
    sets = [list(bits(m)) for m in masks]
    leq = _superset_matrix(sets, len(G)).T
    P = Poset([G.from_mask(m) for m in masks], leq)
    return WIPoset(P, [pos[cn_mask(G, m)] for m in masks])


def all_subsets_poset(G: Graph) -> Poset:
    """Every nonempty vertex subset, by inclusion (a cone on the full set)."""
    n = len(G)
    masks = sorted(range(1, 1 << n), key=lambda m: (bin(m).count("1"), m))
    sets = [list(bits(m)) for m in masks]
    return Poset([G.from_mask(m) for m in masks], _superset_matrix(sets, n).T)


# -- the edge complex --------------------------------------------------------------


def b_edge(G: Graph) -> Z2Complex:
    """Ordered adjacent pairs; a set of pairs is a face when its first and
    second coordinates span a complete bipartite subgraph.

    The maximal faces are ``x * CN(x)`` for the sets ``x`` with
    ``CN(CN(x)) = x``, and the action swaps the two coordinates.
    """
    if not G.edges:
        raise NoEdges("edge complex of an edgeless graph")
    verts = []
    for u, v in G.edge_list():
        verts += [(u, v), (v, u)]
    verts.sort(key=lambda p: (G.index(p[0]), G.index(p[1])))
    pos = {p: i for i, p in enumerate(verts)}
    facets = []
    for m in neighborhood_masks(G):
        c = cn_mask(G, m)
        if cn_mask(G, c) == m:
            facets.append([pos[(G.vertices[i], G.vertices[j])] for i in bits(m) for j in bits(c)])
    K = SimplicialComplex(verts, facets, maximal=True)
    return Z2Complex(K, [pos[(v, u)] for u, v in verts], check=False)


def edge_face_pair(G: Graph, face: Iterable[tuple]) -> tuple[frozenset, frozenset]:
    face = list(face)
    return frozenset(p[0] for p in face), frozenset(p[1] for p in face)


def lambda_map(G: Graph, box: Z2Poset | None = None) -> tuple[Poset, Z2Map]:
    """``F -> (first coordinates, second coordinates)`` from the inclusion-ordered
    faces of the edge complex to the box poset.  Returns the face poset too."""
    X = b_edge(G)
    K = X.complex
    faces = K.faces()
    leq = _superset_matrix(faces, len(K.vertices)).T
    labels = [frozenset(K.vertices[v] for v in f) for f in faces]
    F = Poset(labels, leq)
    pos = {f: i for i, f in enumerate(faces)}
    omega = [pos[tuple(sorted(int(X.omega[v]) for v in f))] for f in faces]
    src = Z2Poset(F, omega, "monotone", check=False)
    box = box if box is not None else box_poset(neighborhood_poset(G))
    m = MonotoneMap.from_labels(F, box.base, lambda lab: edge_face_pair(G, lab), check=False)
    if m.monotonicity_witness() is not None:
        raise NotMonotone("projection of edge-complex faces is not monotone")
    z = Z2Map(src, box, m)
    if not z.is_equivariant():
        raise NotEquivariant("projection does not commute with the swap")
    return F, z


# -- avatars ---------------------------------------------------------------------


@dataclass
class Avatars:
    """The Z2-posets whose order complexes model the box complex of ``G``.

    ``lovasz``: fixed part of CN; ``box``: the chain box complex;
    ``extended``: the box complex with one empty side allowed;
    ``suspended``: legs over all nonempty vertex sets (a suspension).
    """

    graph: Graph
    P: WIPoset

    @cached_property
    def lovasz(self) -> Z2Poset:
        return lovasz_poset(self.P)

    @cached_property
    def box(self) -> Z2Poset:
        return box_poset(self.P)

    @cached_property
    def extended(self) -> Z2Poset:
        return extended_box(self.P)

    @cached_property
    def suspended(self) -> Z2Poset:
        return enriched_box(self.P, all_subsets_poset(self.graph))

    @cached_property
    def edge(self) -> Z2Complex:
        return b_edge(self.graph)

    def posets(self) -> dict[str, Z2Poset]:
        return {"lovasz": self.lovasz, "box": self.box, "extended": self.extended,
                "suspended": self.suspended}

    def complexes(self) -> dict[str, Z2Complex]:
        """Order complexes of the four avatars (may be large for dense graphs)."""
        return {k: Q.complex() for k, Q in self.posets().items()}

    def betti(self) -> dict[str, BettiVector]:
        out = {k: poset_betti(Q.base) for k, Q in self.posets().items()}
        out["edge"] = reduced_betti(self.edge.complex)
        return out

    def freeness(self) -> dict[str, bool]:
        out = {k: Q.is_free() for k, Q in self.posets().items()}
        out["edge"] = self.edge.is_free()
        return out


def avatars(G: Graph) -> Avatars:
    return Avatars(G, neighborhood_poset(G))


def bipartite_complete(G: Graph, A: Iterable, B: Iterable) -> bool:
    A, B = list(A), list(B)
    return all(G.adjacent(a, b) for a in A for b in B) and not set(A) & set(B)


def lovasz_sets(G: Graph) -> list[frozenset]:
    P = neighborhood_poset(G)
    c = P.C
    return [P.base.elements[i] for i in np.flatnonzero(c[c] == np.arange(len(c)))]

