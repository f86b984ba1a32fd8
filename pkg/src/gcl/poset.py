"""Finite posets, monotone maps and the order-theoretic constructions."""

from __future__ import annotations

import graphlib
from typing import Callable, Hashable, Iterable, Sequence

import numpy as np

from .errors import (
    CycleDetected,
    DuplicateLabel,
    EmptyPoset,
    NotMonotone,
    ReservedLabel,
    UnknownLabel,
)
from .labels import BOTTOM, label_str


class Poset:
    """A finite poset stored as a closed boolean relation matrix.

    ``leq[i, j]`` is true iff ``elements[i] <= elements[j]``.  Instances are
    immutable; the matrix is flagged read-only.
    """

    __slots__ = ("elements", "leq", "_index", "_less")

    def __init__(self, elements: Sequence[Hashable], leq, *, check: bool = False):
        elements = tuple(elements)
        index = {}
        for i, x in enumerate(elements):
            if x in index:
                raise DuplicateLabel(f"duplicate label {label_str(x)}")
            index[x] = i
        n = len(elements)
        leq = np.array(leq, dtype=bool, copy=True).reshape(n, n)
        leq.setflags(write=False)
        self.elements = elements
        self.leq = leq
        self._index = index
        self._less = None
        if check:
            problem = self.axiom_violation()
            if problem is not None:
                raise CycleDetected(problem)

    # -- construction helpers -------------------------------------------------

    @classmethod
    def from_predicate(cls, elements: Sequence[Hashable], le: Callable) -> "Poset":
        elements = tuple(elements)
        n = len(elements)
        m = np.zeros((n, n), dtype=bool)
        for i, x in enumerate(elements):
            for j, y in enumerate(elements):
                m[i, j] = i == j or bool(le(x, y))
        return cls(elements, m)

    @classmethod
    def empty(cls) -> "Poset":
        return cls((), np.zeros((0, 0), dtype=bool))

    # -- basic queries --------------------------------------------------------

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, label) -> bool:
        return label in self._index

    def __repr__(self) -> str:
        return f"Poset({len(self)} elements, {int(self.less.sum())} strict relations)"

    def __eq__(self, other) -> bool:
        if not isinstance(other, Poset) or len(self) != len(other):
            return False
        if set(self.elements) != set(other.elements):
            return False
        perm = [other._index[x] for x in self.elements]
        return bool(np.array_equal(self.leq, other.leq[np.ix_(perm, perm)]))

    __hash__ = None

    def index(self, label) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise UnknownLabel(f"unknown element {label_str(label)}") from None

    def indices(self, labels: Iterable) -> list[int]:
        return [self.index(x) for x in labels]

    def le(self, a, b) -> bool:
        return bool(self.leq[self.index(a), self.index(b)])

    @property
    def less(self) -> np.ndarray:
        if self._less is None:
            lt = self.leq & ~np.eye(len(self), dtype=bool)
            lt.setflags(write=False)
            self._less = lt
        return self._less

    def comparable(self) -> np.ndarray:
        return self.leq | self.leq.T

    def minimal(self) -> list[int]:
        return np.flatnonzero(~self.less.any(axis=0)).tolist()

    def maximal(self) -> list[int]:
        return np.flatnonzero(~self.less.any(axis=1)).tolist()

    def maximum(self) -> int | None:
        hits = np.flatnonzero(self.leq.all(axis=0))
        return int(hits[0]) if len(hits) else None

    def minimum(self) -> int | None:
        hits = np.flatnonzero(self.leq.all(axis=1))
        return int(hits[0]) if len(hits) else None

    def cover_matrix(self) -> np.ndarray:
        lt = self.less.astype(np.float32)
        between = (lt @ lt) > 0
        return self.less & ~between

    def covers(self) -> list[tuple]:
        c = self.cover_matrix()
        return [(self.elements[i], self.elements[j]) for i, j in zip(*np.nonzero(c))]

    def linear_extension(self) -> list[int]:
        """Indices sorted so that every element precedes the ones above it."""
        below = self.less.sum(axis=0)
        return sorted(range(len(self)), key=lambda i: (int(below[i]), i))

    def is_chain(self, idx: Iterable[int]) -> bool:
        idx = list(idx)
        sub = self.leq[np.ix_(idx, idx)]
        return bool((sub | sub.T).all())

    def sort_chain(self, idx: Iterable[int]) -> list[int]:
        """Order the members of a chain from bottom to top."""
        idx = list(idx)
        below = self.leq[np.ix_(idx, idx)].sum(axis=0)
        return [i for _, i in sorted(zip(below.tolist(), idx))]

    def subposet(self, idx: Iterable[int]) -> "Poset":
        idx = list(idx)
        return Poset([self.elements[i] for i in idx], self.leq[np.ix_(idx, idx)])

    def induced(self, labels: Iterable) -> "Poset":
        return self.subposet(self.indices(labels))

    def dual(self) -> "Poset":
        return Poset(self.elements, self.leq.T)

    def axiom_violation(self) -> str | None:
        """Describe the first failed poset axiom, or None when all hold."""
        m = self.leq
        if len(self) == 0:
            return None
        if not m.diagonal().all():
            i = int(np.flatnonzero(~m.diagonal())[0])
            return f"not reflexive at {label_str(self.elements[i])}"
        both = m & m.T & ~np.eye(len(self), dtype=bool)
        if both.any():
            i, j = (int(v) for v in np.argwhere(both)[0])
            return (
                f"antisymmetry fails for {label_str(self.elements[i])}, "
                f"{label_str(self.elements[j])}"
            )
        f = m.astype(np.float32)
        bad = ((f @ f) > 0) & ~m
        if bad.any():
            i, j = (int(v) for v in np.argwhere(bad)[0])
            return (
                f"transitivity fails for {label_str(self.elements[i])}, "
                f"{label_str(self.elements[j])}"
            )
        return None

    def relation_pairs(self) -> list[tuple]:
        return [(self.elements[i], self.elements[j]) for i, j in zip(*np.nonzero(self.less))]

    def to_dict(self) -> dict:
        return {
            "elements": [label_str(x) for x in self.elements],
            "covers": sorted([label_str(a), label_str(b)] for a, b in self.covers()),
        }


def build_poset(labels: Sequence[Hashable], cover_pairs: Iterable[tuple]) -> Poset:
    """Close a list of cover pairs ``(a, b)`` meaning ``a < b`` into a poset."""
    labels = tuple(labels)
    index: dict = {}
    for i, x in enumerate(labels):
        if x in index:
            raise DuplicateLabel(f"duplicate label {label_str(x)}")
        index[x] = i
    n = len(labels)
    preds: dict[int, set[int]] = {i: set() for i in range(n)}
    for a, b in cover_pairs:
        if a not in index or b not in index:
            missing = a if a not in index else b
            raise UnknownLabel(f"cover pair references unknown label {label_str(missing)}")
        if a != b:
            preds[index[b]].add(index[a])
    try:
        order = list(graphlib.TopologicalSorter(preds).static_order())
    except graphlib.CycleError as exc:
        cycle = [label_str(labels[i]) for i in exc.args[1]]
        raise CycleDetected("order relation has a cycle: " + " -> ".join(cycle)) from None
    # down[i] is a bitset of everything <= i; predecessors come first in `order`.
    down = [0] * n
    for i in order:
        bits = 1 << i
        for p in preds[i]:
            bits |= down[p]
        down[i] = bits
    m = np.zeros((n, n), dtype=bool)
    for j in range(n):
        bits = down[j]
        while bits:
            low = bits & -bits
            m[low.bit_length() - 1, j] = True
            bits ^= low
    return Poset(labels, m)


class MonotoneMap:
    """An order-preserving map between two posets, stored by index."""

    __slots__ = ("source", "target", "assignment")

    def __init__(self, source: Poset, target: Poset, assignment, *, check: bool = True):
        assignment = np.asarray(assignment, dtype=np.int64).reshape(len(source))
        if len(source) and (assignment.min() < 0 or assignment.max() >= len(target)):
            raise NotMonotone("assignment leaves the target poset")
        assignment.setflags(write=False)
        self.source = source
        self.target = target
        self.assignment = assignment
        if check:
            witness = self.monotonicity_witness()
            if witness is not None:
                a, b = witness
                raise NotMonotone(
                    f"{label_str(a)} <= {label_str(b)} but images are not ordered"
                )

    @classmethod
    def from_labels(cls, source: Poset, target: Poset, func: Callable, *, check=True):
        return cls(source, target, [target.index(func(x)) for x in source.elements], check=check)

    def __call__(self, label):
        return self.target.elements[self.assignment[self.source.index(label)]]

    def __repr__(self) -> str:
        return f"MonotoneMap({len(self.source)} -> {len(self.target)})"

    def monotonicity_witness(self):
        f = self.assignment
        img = self.target.leq[np.ix_(f, f)]
        bad = self.source.leq & ~img
        if bad.any():
            i, j = np.argwhere(bad)[0]
            return self.source.elements[i], self.source.elements[j]
        return None

    def is_bijective(self) -> bool:
        return len(self.source) == len(self.target) and len(set(self.assignment.tolist())) == len(
            self.target
        )

    def is_order_embedding(self) -> bool:
        f = self.assignment
        return bool(np.array_equal(self.source.leq, self.target.leq[np.ix_(f, f)]))

    def inverse(self) -> "MonotoneMap":
        if not self.is_bijective():
            raise NotMonotone("map is not a bijection")
        inv = np.empty(len(self.target), dtype=np.int64)
        inv[self.assignment] = np.arange(len(self.source))
        return MonotoneMap(self.target, self.source, inv)

    def compose(self, other: "MonotoneMap") -> "MonotoneMap":
        """``self`` after ``other``."""
        return MonotoneMap(other.source, self.target, self.assignment[other.assignment])

    def image(self) -> Poset:
        return self.target.subposet(sorted(set(self.assignment.tolist())))

    def fiber(self, q: int, direction: str = "down") -> Poset:
        """Preimage of the principal ideal (``down``) or filter (``up``) at ``q``."""
        if direction == "down":
            mask = self.target.leq[self.assignment, q]
        elif direction == "up":
            mask = self.target.leq[q, self.assignment]
        else:
            raise ValueError(f"unknown fiber direction {direction!r}")
        return self.source.subposet(np.flatnonzero(mask).tolist())


def identity_map(P: Poset) -> MonotoneMap:
    return MonotoneMap(P, P, np.arange(len(P)), check=False)


def inclusion_map(sub: Poset, P: Poset) -> MonotoneMap:
    return MonotoneMap(sub, P, P.indices(sub.elements))


# -- chains ------------------------------------------------------------------


def iter_chains(P: Poset):
    """Yield every nonempty chain of ``P`` once, as index tuples bottom to top."""
    above = [np.flatnonzero(row).tolist() for row in P.less]
    stack = [(i,) for i in reversed(range(len(P)))]
    while stack:
        c = stack.pop()
        yield c
        for y in reversed(above[c[-1]]):
            stack.append(c + (y,))


def chain_poset(P: Poset) -> Poset:
    """Nonempty chains of ``P``; ``A <= B`` iff ``B`` is a subchain of ``A``.

    Chains are labelled by the frozenset of their members.
    """
    if len(P) == 0:
        raise EmptyPoset("chain poset of the empty poset")
    chains = sorted(iter_chains(P), key=lambda c: (len(c), sorted(c)))
    labels = [frozenset(P.elements[i] for i in c) for c in chains]
    return Poset(labels, _superset_matrix(chains, len(P)))


def _superset_matrix(sets: Sequence[Iterable[int]], universe: int) -> np.ndarray:
    """``m[i, j]`` iff ``sets[i]`` contains ``sets[j]``."""
    words = max(1, (universe + 63) // 64)
    masks = np.zeros((len(sets), words), dtype=np.uint64)
    for i, s in enumerate(sets):
        for e in s:
            masks[i, e >> 6] |= np.uint64(1 << (e & 63))
    m = np.ones((len(sets), len(sets)), dtype=bool)
    for w in range(words):
        col = masks[:, w]
        m &= (col[None, :] & ~col[:, None]) == 0
    return m


def interval_poset(Q: Poset) -> Poset:
    """Pairs ``(x, y)`` with ``x <= y`` ordered by reversed containment."""
    if len(Q) == 0:
        raise EmptyPoset("interval poset of the empty poset")
    I, J = np.nonzero(Q.leq)
    labels = [(Q.elements[i], Q.elements[j]) for i, j in zip(I, J)]
    m = Q.leq[np.ix_(I, I)] & Q.leq[np.ix_(J, J)].T
    return Poset(labels, m)


def add_bottom(P: Poset, label=BOTTOM) -> Poset:
    if label in P:
        raise ReservedLabel(f"label {label!r} is reserved for the added minimum")
    n = len(P)
    m = np.zeros((n + 1, n + 1), dtype=bool)
    m[:n, :n] = P.leq
    m[n, :] = True
    return Poset(P.elements + (label,), m)


# -- homotopy-preserving reduction ---------------------------------------------


def beat_point_core(P: Poset) -> Poset:
    """Remove beat points one at a time until none remain.

    An element with a unique upper cover (or unique lower cover) can be
    deleted without changing the homotopy type of the order complex, so the
    result has the same homology as ``P`` and is usually much smaller.
    """
    n = len(P)
    if n <= 1:
        return P
    leq = P.leq
    cover = P.cover_matrix()
    up = [set(np.flatnonzero(cover[i]).tolist()) for i in range(n)]
    down = [set(np.flatnonzero(cover[:, i]).tolist()) for i in range(n)]
    alive = np.ones(n, dtype=bool)
    remaining = n
    queue = list(range(n))
    queued = set(queue)
    while queue and remaining > 1:
        x = queue.pop()
        queued.discard(x)
        if not alive[x]:
            continue
        touched = set()
        if len(up[x]) == 1:
            (y,) = up[x]
            down[y].discard(x)
            for z in down[x]:
                up[z].discard(x)
                between = alive & leq[z] & leq[:, y]
                between[[x, y, z]] = False
                if not between.any():
                    up[z].add(y)
                    down[y].add(z)
                touched.add(z)
        elif len(down[x]) == 1:
            (y,) = down[x]
            up[y].discard(x)
            for z in up[x]:
                down[z].discard(x)
                between = alive & leq[y] & leq[:, z]
                between[[x, y, z]] = False
                if not between.any():
                    down[z].add(y)
                    up[y].add(z)
                touched.add(z)
        else:
            continue
        alive[x] = False
        remaining -= 1
        up[x] = set()
        down[x] = set()
        touched.add(y)
        for t in touched:
            if t not in queued and alive[t]:
                queue.append(t)
                queued.add(t)
    return P.subposet(np.flatnonzero(alive).tolist())
