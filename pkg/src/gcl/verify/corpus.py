"""Seeded random posets, Z2-posets and complexes for property checks."""

from __future__ import annotations

import random

from ..complex import SimplicialComplex
from ..errors import CycleDetected
from ..poset import Poset, build_poset
from ..z2 import ANTITONE, Z2Complex, Z2Poset


def random_poset(rng: random.Random, max_size: int = 7, p: float | None = None) -> Poset:
    """Random order on ``0..n-1`` generated by relations ``i < j`` with ``i < j`` as integers."""
    n = rng.randint(1, max_size)
    p = rng.uniform(0.1, 0.6) if p is None else p
    covers = [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p]
    perm = list(range(n))
    rng.shuffle(perm)
    return build_poset(perm, [(perm[i], perm[j]) for i, j in covers])


def random_involution(rng: random.Random, n: int) -> list[int]:
    items = list(range(n))
    rng.shuffle(items)
    fixed = rng.randint(0, n) if n else 0
    w = list(range(n))
    rest = items[fixed:]
    for a, b in zip(rest[0::2], rest[1::2]):
        w[a], w[b] = b, a
    return w


def random_antitone(rng: random.Random, max_size: int = 8) -> Z2Poset:
    """Add random relations in antitone-symmetric pairs, keeping those that stay acyclic."""
    n = rng.randint(1, max_size)
    w = random_involution(rng, n)
    rel: set[tuple[int, int]] = set()
    for _ in range(rng.randint(0, 2 * n)):
        a, b = rng.sample(range(n), 2) if n > 1 else (0, 0)
        if a == b:
            continue
        trial = rel | {(a, b), (w[b], w[a])}
        try:
            build_poset(range(n), trial)
        except CycleDetected:
            continue
        rel = trial
    return Z2Poset(build_poset(range(n), rel), w, ANTITONE)


def random_complex(rng: random.Random, max_vertices: int = 6,
                   max_facets: int = 6) -> SimplicialComplex:
    n = rng.randint(1, max_vertices)
    facets = []
    for _ in range(rng.randint(1, max_facets)):
        k = rng.randint(1, n)
        facets.append(rng.sample(range(n), k))
    return SimplicialComplex(list(range(n)), facets)


def square_antipodal() -> Z2Complex:
    K = SimplicialComplex.from_facets([[1, 2], [2, 3], [3, 4], [4, 1]])
    return Z2Complex(K, {1: 3, 3: 1, 2: 4, 4: 2})


def hexagon_antipodal() -> Z2Complex:
    K = SimplicialComplex.from_facets([[i, i % 6 + 1] for i in range(1, 7)])
    return Z2Complex(K, {i: (i + 2) % 6 + 1 for i in range(1, 7)})


def swapped_points() -> Z2Complex:
    return Z2Complex(SimplicialComplex.from_facets([[1], [2]]), {1: 2, 2: 1})


def csorba_corpus() -> dict[str, Z2Complex]:
    return {"two_points": swapped_points(), "square": square_antipodal(),
            "hexagon": hexagon_antipodal()}
