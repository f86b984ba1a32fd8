"""Free I-semilattices, their compatibility graphs and the interval calculus
for iterated common neighbourhoods."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Hashable, Iterable

import numpy as np

from ..complex import face_poset
from ..errors import DecompositionFailed, NotFree, NotMonotone, NotSemilattice
from ..labels import BOTTOM, TOP, label_str
from ..poset import MonotoneMap, Poset, chain_poset
from ..z2 import MONOTONE, Z2Complex, Z2Map, Z2Poset, induced_action_chain, lovasz_poset
from .core import Graph
from .neighborhood import neighborhood_poset


class FreeISemilattice:
    """A poset whose bounded completion is a lattice, with a monotone
    fixed-point-free involution ``C``.

    Indices ``n`` and ``n + 1`` stand for the added bottom and top.
    """

    __slots__ = ("base", "C", "hat_leq", "_meet", "_join")

    def __init__(self, base: Poset, C):
        n = len(base)
        c = np.asarray(C, dtype=np.int64).reshape(n)
        if not np.array_equal(c[c], np.arange(n)):
            raise NotMonotone("C is not an involution")
        if (c == np.arange(n)).any():
            x = base.elements[int(np.flatnonzero(c == np.arange(n))[0])]
            raise NotFree(f"C fixes {label_str(x)}")
        if (base.leq & ~base.leq[np.ix_(c, c)]).any():
            raise NotMonotone("C is not order-preserving")
        hat = np.zeros((n + 2, n + 2), dtype=bool)
        hat[:n, :n] = base.leq
        hat[n, :] = True
        hat[:, n + 1] = True
        self.base, self.C, self.hat_leq = base, c, hat
        self._meet, self._join = self._lattice_tables()

    def _lattice_tables(self) -> tuple[np.ndarray, np.ndarray]:
        hat = self.hat_leq
        m = len(hat)
        meet = np.empty((m, m), dtype=np.int64)
        join = np.empty((m, m), dtype=np.int64)
        for i in range(m):
            for j in range(i, m):
                ub = hat[i] & hat[j]
                least = np.flatnonzero(hat[:, ub].all(axis=1) & ub)
                lb = hat[:, i] & hat[:, j]
                greatest = np.flatnonzero(hat[lb].all(axis=0) & lb)
                if len(least) != 1 or len(greatest) != 1:
                    a, b = (label_str(self.hat_label(k)) for k in (i, j))
                    raise NotSemilattice(f"{a} and {b} have no join or meet")
                join[i, j] = join[j, i] = least[0]
                meet[i, j] = meet[j, i] = greatest[0]
        return meet, join

    @classmethod
    def from_z2complex(cls, X: Z2Complex) -> "FreeISemilattice":
        """Face poset of a free Z2-complex with the induced action on faces."""
        L = face_poset(X.complex)
        K = X.complex
        c = [L.index(frozenset(K.vertices[X.omega[K.index(v)]] for v in face))
             for face in L.elements]
        return cls(L, c)

    def __len__(self) -> int:
        return len(self.base)

    @property
    def bottom(self) -> int:
        return len(self.base)

    @property
    def top(self) -> int:
        return len(self.base) + 1

    def hat_label(self, k: int) -> Hashable:
        if k == self.bottom:
            return BOTTOM
        if k == self.top:
            return TOP
        return self.base.elements[k]

    def hat_c(self, k: int) -> int:
        return k if k >= len(self.base) else int(self.C[k])

    def meet(self, i: int, j: int) -> int:
        return int(self._meet[i, j])

    def join(self, i: int, j: int) -> int:
        return int(self._join[i, j])

    def interval(self, lo: int, hi: int) -> np.ndarray:
        """Mask of the elements of ``L`` (not the added bounds) in ``[lo, hi]``."""
        n = len(self.base)
        return self.hat_leq[lo, :n] & self.hat_leq[:n, hi]


def compatibility_graph(L: FreeISemilattice) -> Graph:
    """``x ~ y`` iff ``y <= C x`` or ``x <= C y`` (equivalently ``y`` is
    comparable to ``C x``, since ``C`` is a monotone involution)."""
    leq, c = L.base.leq, L.C
    comp = leq[:, c] | leq[c, :].T  # comp[y, x]: y <= C x or C x <= y
    adj = comp | comp.T
    np.fill_diagonal(adj, False)
    E = L.base.elements
    edges = [(E[i], E[j]) for i, j in zip(*np.nonzero(np.triu(adj, 1)))]
    return Graph(E, edges)


def is_fat(P: Poset) -> tuple[bool, tuple | None]:
    """Every strict chain ``x < z < y`` has some ``z'`` in ``[x, y]`` incomparable to ``z``."""
    lt, leq = P.less, P.leq
    comp = leq | leq.T
    for x in range(len(P)):
        for y in np.flatnonzero(lt[x]):
            inside = leq[x] & leq[:, y]
            for z in np.flatnonzero(inside & lt[x] & lt[:, y]):
                if not (inside & ~comp[z]).any():
                    return False, tuple(P.elements[i] for i in (x, z, y))
    return True, None


@dataclass(frozen=True)
class Closure:
    """``N(A)``, its interval decomposition and both forms of ``N(N(A))``."""

    A: frozenset
    N: frozenset
    intervals: tuple[tuple[Hashable, Hashable], ...]
    NN: frozenset
    NN_formula: frozenset
    NNN: frozenset

    @property
    def matches(self) -> bool:
        return self.NN == self.NN_formula

    @property
    def idempotent(self) -> bool:
        return self.NNN == self.N

    def to_dict(self) -> dict:
        def show(s):
            return sorted(label_str(x) for x in s)
        return {
            "A": show(self.A), "N": show(self.N),
            "intervals": [[label_str(a), label_str(b)] for a, b in self.intervals],
            "NN": show(self.NN), "matches": self.matches, "idempotent": self.idempotent,
        }


def _n_mask(L: FreeISemilattice, A_mask: np.ndarray) -> np.ndarray:
    leq, c = L.base.leq, L.C
    out = np.ones(len(L), dtype=bool)
    for a in np.flatnonzero(A_mask):
        ca = c[a]
        out &= leq[:, ca] | leq[ca, :]
    return out


def decompose(L: FreeISemilattice, A_idx: Iterable[int]) -> list[tuple[int, int]]:
    """Intervals ``[a_1, b_1], ..., [a_k, b_k]`` of the completion, along a
    chain, whose elements in ``L`` make up ``N(A)``; built one element of
    ``A`` at a time by cutting each interval with the ideal and the filter of ``C a``."""
    pieces = [(L.bottom, L.top)]
    hat = L.hat_leq
    for a in A_idx:
        c = int(L.C[a])
        nxt = []
        for lo, hi in pieces:
            if hat[lo, c]:
                nxt.append((lo, L.meet(hi, c)))
            if hat[c, hi]:
                nxt.append((L.join(lo, c), hi))
        pieces = [(lo, hi) for lo, hi in nxt if L.interval(lo, hi).any()]
    return pieces


def _check_chain(L: FreeISemilattice, pieces: list[tuple[int, int]]) -> None:
    ends = [k for p in pieces for k in p]
    for u, v in zip(ends, ends[1:]):
        if not L.hat_leq[u, v]:
            raise DecompositionFailed("interval endpoints do not form a chain")


def nn_closure(L: FreeISemilattice, A: Iterable[Hashable]) -> Closure:
    idx = L.base.indices(A)
    A_mask = np.zeros(len(L), dtype=bool)
    A_mask[idx] = True
    N = _n_mask(L, A_mask)
    pieces = decompose(L, idx)
    _check_chain(L, pieces)
    union = np.zeros(len(L), dtype=bool)
    for lo, hi in pieces:
        union |= L.interval(lo, hi)
    if not np.array_equal(union, N):
        raise DecompositionFailed("intervals do not cover the common neighbourhood")
    NN = _n_mask(L, N)
    # complementary gaps [0, C a1], [C b1, C a2], ..., [C bk, 1]
    ends = [L.bottom] + [L.hat_c(k) for p in pieces for k in p] + [L.top]
    formula = np.zeros(len(L), dtype=bool)
    for lo, hi in zip(ends[0::2], ends[1::2]):
        if L.hat_leq[lo, hi]:
            formula |= L.interval(lo, hi)
    NNN = _n_mask(L, NN)
    E = L.base.elements

    def labels(mask):
        return frozenset(E[i] for i in np.flatnonzero(mask))

    return Closure(
        labels(A_mask), labels(N),
        tuple((L.hat_label(lo), L.hat_label(hi)) for lo, hi in pieces),
        labels(NN), labels(formula), labels(NNN),
    )


def canonical_endpoints(L: FreeISemilattice, S: Iterable[Hashable]) -> tuple[int, ...]:
    """Chain of interval endpoints of a closed set, each interval shrunk to the
    meet and join of its members; the added bounds are dropped.

    ``S`` must be of the form ``N(A)``; we recover ``A = N(S)``.
    """
    idx = L.base.indices(S)
    mask = np.zeros(len(L), dtype=bool)
    mask[idx] = True
    A = np.flatnonzero(_n_mask(L, mask)).tolist()
    pieces = decompose(L, A)
    ends: list[int] = []
    for lo, hi in pieces:
        members = np.flatnonzero(L.interval(lo, hi)).tolist()
        inf, sup = members[0], members[0]
        for x in members[1:]:
            inf, sup = L.meet(inf, x), L.join(sup, x)
        ends += [inf, sup]
    n = len(L)
    return tuple(sorted({k for k in ends if k < n}))


def omega_sharp(L: FreeISemilattice, G: Graph | None = None) -> Z2Map:
    """Chains of closed sets of ``G_L`` go to the union of their interval
    endpoint chains, a map ``Chain(Lovasz(G_L)) -> Chain(L)``.

    Raises :class:`DecompositionFailed` if some union is not a chain of ``L``.
    """
    G = compatibility_graph(L) if G is None else G
    src = induced_action_chain(lovasz_poset(neighborhood_poset(G)))
    Ch = chain_poset(L.base)
    E = L.base.elements
    tgt = Z2Poset(Ch, [Ch.index(frozenset(E[L.C[L.base.index(x)]] for x in c))
                       for c in Ch.elements], MONOTONE, check=False)
    ends = {}

    def image(chain):
        idx: set[int] = set()
        for S in chain:
            if S not in ends:
                ends[S] = canonical_endpoints(L, S)
            idx.update(ends[S])
        if not L.base.is_chain(idx):
            raise DecompositionFailed("endpoint union is not a chain of L")
        return frozenset(E[i] for i in idx)

    return Z2Map(src, tgt, MonotoneMap.from_labels(src.base, tgt.base, image, check=False))
