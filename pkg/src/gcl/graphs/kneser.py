"""Kneser graphs of set families and their box complexes over the ground set."""

from __future__ import annotations

from itertools import product

import numpy as np

from ..errors import NoEdges
from ..labels import BOTTOM
from ..poset import MonotoneMap, Poset
from ..z2 import MONOTONE, Z2Map, Z2Poset
from .core import Graph, SetFamily
from .neighborhood import Avatars, avatars


def kneser_graph(F: SetFamily) -> Graph:
    """Members of ``F`` as vertices, adjacent when disjoint."""
    ms = F.members
    edges = [(a, b) for i, a in enumerate(ms) for b in ms[i + 1:] if not a & b]
    return Graph(ms, edges)


def _split_masks(n: int):
    """All pairs of disjoint subsets of ``1..n`` as bitmask pairs (bit i-1 is i)."""
    for sides in product((0, 1, 2), repeat=n):
        a = b = 0
        for i, s in enumerate(sides):
            if s == 1:
                a |= 1 << i
            elif s == 2:
                b |= 1 << i
        yield a, b


def _member_masks(F: SetFamily) -> list[int]:
    return [sum(1 << (x - 1) for x in m) for m in F.members]


def _contains_member(mask: int, members: list[int]) -> bool:
    return any(m & mask == m for m in members)


def _label(n: int, mask: int) -> frozenset:
    return frozenset(i + 1 for i in range(n) if mask >> i & 1)


def _split_poset(n: int, pairs: list[tuple[int, int]]) -> Z2Poset:
    """Pairs ``(A, B)`` ordered by componentwise inclusion, swapped by the action."""
    pairs = sorted(pairs, key=lambda p: (bin(p[0] | p[1]).count("1"), p))
    A = np.array([p[0] for p in pairs], dtype=np.int64)
    B = np.array([p[1] for p in pairs], dtype=np.int64)
    leq = ((A[:, None] & ~A[None, :]) == 0) & ((B[:, None] & ~B[None, :]) == 0)
    labels = [(_label(n, a), _label(n, b)) for a, b in pairs]
    pos = {p: i for i, p in enumerate(pairs)}
    omega = [pos[(b, a)] for a, b in pairs]
    return Z2Poset(Poset(labels, leq), omega, MONOTONE, check=False)


def b_chain_kg(F: SetFamily) -> Z2Poset:
    """Disjoint ``(A, B)`` over the ground set, each side containing a member."""
    ms = _member_masks(F)
    pairs = [(a, b) for a, b in _split_masks(F.n)
             if _contains_member(a, ms) and _contains_member(b, ms)]
    return _split_poset(F.n, pairs)


def b_sark_kg(F: SetFamily) -> Z2Poset:
    """Disjoint ``(A, B)``, not both empty, with a member inside ``A`` or inside ``B``."""
    ms = _member_masks(F)
    pairs = [(a, b) for a, b in _split_masks(F.n)
             if (a or b) and (_contains_member(a, ms) or _contains_member(b, ms))]
    return _split_poset(F.n, pairs)


def _union(side) -> frozenset:
    if side == BOTTOM:
        return frozenset()
    return frozenset().union(*side)


def _union_map(source: Z2Poset, target: Z2Poset) -> Z2Map:
    f = MonotoneMap.from_labels(source.base, target.base,
                                lambda p: (_union(p[0]), _union(p[1])))
    return Z2Map(source, target, f)


def phi_map(F: SetFamily, av: Avatars | None = None) -> Z2Map:
    """``(a, b) -> (union a, union b)`` from the box poset of KG(F)."""
    av = av or kneser_avatars(F)
    return _union_map(av.box, b_chain_kg(F))


def psi_map(F: SetFamily, av: Avatars | None = None) -> Z2Map:
    """The same union map on the suspended avatar; the added bottom goes to the empty set."""
    av = av or kneser_avatars(F)
    return _union_map(av.suspended, b_sark_kg(F))


def kneser_avatars(F: SetFamily) -> Avatars:
    G = kneser_graph(F)
    if not G.edges:
        raise NoEdges("the Kneser graph of this family has no edges")
    return avatars(G)
