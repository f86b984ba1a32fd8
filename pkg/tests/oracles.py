"""Small brute-force oracles used by the unit tests."""

from __future__ import annotations

from itertools import combinations

import numpy as np


def gf2_rank(m: np.ndarray) -> int:
    m = (np.array(m, dtype=np.uint8) & 1).copy()
    rank = 0
    rows, cols = m.shape
    for c in range(cols):
        pivot = next((r for r in range(rank, rows) if m[r, c]), None)
        if pivot is None:
            continue
        m[[rank, pivot]] = m[[pivot, rank]]
        for r in range(rows):
            if r != rank and m[r, c]:
                m[r] ^= m[rank]
        rank += 1
    return rank


def all_faces(facets) -> list[tuple]:
    out = set()
    for f in facets:
        f = tuple(sorted(f))
        for k in range(1, len(f) + 1):
            out.update(combinations(f, k))
    return sorted(out, key=lambda t: (len(t), t))


def dense_reduced_betti(facets) -> tuple[int, ...]:
    """Reduced GF(2) Betti numbers by dense elimination, augmentation included."""
    faces = all_faces(facets)
    top = max(len(f) for f in faces)
    by_dim = [[()]] + [[f for f in faces if len(f) == k] for k in range(1, top + 1)]
    ranks = [0]
    for k in range(1, len(by_dim)):
        lower = {f: i for i, f in enumerate(by_dim[k - 1])}
        m = np.zeros((len(by_dim[k - 1]), len(by_dim[k])), dtype=np.uint8)
        for j, f in enumerate(by_dim[k]):
            for i in range(len(f)):
                m[lower[f[:i] + f[i + 1:]], j] = 1
        ranks.append(gf2_rank(m))
    ranks.append(0)
    b = [len(by_dim[k]) - ranks[k] - ranks[k + 1] for k in range(1, len(by_dim))]
    while len(b) > 1 and b[-1] == 0:
        b.pop()
    return tuple(b)


def brute_chains(elements, le) -> set[frozenset]:
    """Every nonempty chain of a poset given by a predicate."""
    out = set()
    for k in range(1, len(elements) + 1):
        for c in combinations(elements, k):
            if all(le(a, b) or le(b, a) for a, b in combinations(c, 2)):
                out.add(frozenset(c))
    return out
