"""Reduced simplicial homology with coefficients in the two-element field.

Boundary matrices are stored column-wise as Python integers used as bitsets,
which makes mod-2 column addition a single XOR.  Ranks come from the
standard column reduction with the "clearing" shortcut: a column of the
k-boundary whose face already appeared as a pivot of the (k+1)-boundary is
a cycle that will be a boundary, so it is skipped.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .complex import SimplicialComplex, order_complex
from .errors import EmptyComplex
from .labels import APEX_1, APEX_2
from .poset import Poset, beat_point_core


@dataclass(frozen=True)
class ChainComplexGF2:
    """Faces per dimension plus boundary columns (bitsets over the faces one dimension down).

    ``boundaries[0]`` is the augmentation: every vertex maps to the single
    generator in degree -1, so the homology computed from these matrices is
    reduced homology.
    """

    faces: tuple[tuple[tuple[int, ...], ...], ...]
    boundaries: tuple[tuple[int, ...], ...]

    def matrix(self, k: int) -> list[list[int]]:
        """Dense 0/1 rows of the k-th boundary (rows: (k-1)-faces, cols: k-faces)."""
        rows = 1 if k == 0 else len(self.faces[k - 1])
        cols = self.boundaries[k]
        return [[(c >> r) & 1 for c in cols] for r in range(rows)]

    def dd_is_zero(self) -> bool:
        """Check the composite of consecutive boundaries vanishes."""
        for k in range(1, len(self.boundaries)):
            lower = self.boundaries[k - 1]
            for col in self.boundaries[k]:
                acc = 0
                while col:
                    low = col & -col
                    acc ^= lower[low.bit_length() - 1]
                    col ^= low
                if acc:
                    return False
        return True


def boundary_matrices(K: SimplicialComplex) -> ChainComplexGF2:
    layers = K.faces_by_dim()
    index: list[dict[tuple[int, ...], int]] = [
        {f: i for i, f in enumerate(layer)} for layer in layers]
    bds: list[tuple[int, ...]] = [tuple(1 for _ in layers[0])]
    for k in range(1, len(layers)):
        lower = index[k - 1]
        cols = []
        for f in layers[k]:
            c = 0
            for i in range(len(f)):
                c |= 1 << lower[f[:i] + f[i + 1:]]
            cols.append(c)
        bds.append(tuple(cols))
    return ChainComplexGF2(tuple(tuple(layer) for layer in layers), tuple(bds))


def _rank_with_clearing(bds: Sequence[Sequence[int]]) -> list[int]:
    """Ranks of every boundary map, reducing from the top dimension down."""
    ranks = [0] * len(bds)
    cleared: set[int] = set()
    for k in range(len(bds) - 1, -1, -1):
        pivots: dict[int, int] = {}
        skip = cleared
        cleared = set()
        for j, col in enumerate(bds[k]):
            if j in skip:
                continue
            while col:
                low = col.bit_length() - 1
                other = pivots.get(low)
                if other is None:
                    pivots[low] = col
                    cleared.add(low)
                    break
                col ^= other
        ranks[k] = len(pivots)
    return ranks


@dataclass(frozen=True)
class BettiVector:
    """Reduced Betti numbers b~_0, b~_1, ... (full length, up to the dimension)."""

    values: tuple[int, ...] = ()
    empty: bool = False
    face_counts: tuple[int, ...] = field(default=(), compare=False)

    @classmethod
    def of_empty(cls) -> "BettiVector":
        return cls((), True)

    def trimmed(self) -> tuple[int, ...]:
        v = list(self.values)
        while len(v) > 1 and v[-1] == 0:
            v.pop()
        return tuple(v) if v else (0,)

    def __eq__(self, other) -> bool:
        if isinstance(other, BettiVector):
            return self.empty == other.empty and (self.empty or self.trimmed() == other.trimmed())
        if isinstance(other, (tuple, list)):
            return not self.empty and self.trimmed() == BettiVector(tuple(other)).trimmed()
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.empty, () if self.empty else self.trimmed()))

    def __getitem__(self, k: int) -> int:
        return self.values[k] if 0 <= k < len(self.values) else 0

    @property
    def is_acyclic(self) -> bool:
        return not self.empty and not any(self.values)

    def shifted(self, by: int = 1) -> "BettiVector":
        """Betti vector of a ``by``-fold suspension (``by`` may be negative)."""
        if self.empty:
            raise EmptyComplex("cannot shift the Betti vector of the empty complex")
        if by >= 0:
            return BettiVector((0,) * by + self.values)
        head, tail = self.values[:-by], self.values[-by:]
        if any(head):
            raise ValueError(f"cannot de-suspend {self.trimmed()} by {-by}")
        return BettiVector(tail or (0,))

    def to_list(self) -> list[int] | None:
        return None if self.empty else list(self.trimmed())

    def __str__(self) -> str:
        if self.empty:
            return "empty"
        return "(" + ",".join(map(str, self.trimmed())) + ")"

    __repr__ = __str__


def reduced_betti(K: SimplicialComplex | None) -> BettiVector:
    """Reduced GF(2) Betti numbers; ``None`` (the void complex) gives the empty marker."""
    if K is None:
        return BettiVector.of_empty()
    cc = boundary_matrices(K)
    ranks = _rank_with_clearing(cc.boundaries) + [0]
    counts = tuple(len(layer) for layer in cc.faces)
    values = tuple(counts[k] - ranks[k] - ranks[k + 1] for k in range(len(counts)))
    return BettiVector(values, False, counts)


def poset_betti(P: Poset) -> BettiVector:
    """Reduced Betti numbers of the order complex of ``P``.

    Beat points are removed first; this keeps the homotopy type (so the
    Betti numbers) and often shrinks large posets to a handful of elements.
    """
    if len(P) == 0:
        return BettiVector.of_empty()
    return reduced_betti(order_complex(beat_point_core(P)))


def euler_char(K: SimplicialComplex) -> int:
    return sum((-1) ** k * n for k, n in enumerate(K.f_vector()))


def euler_matches_betti(K: SimplicialComplex, b: BettiVector | None = None) -> bool:
    b = reduced_betti(K) if b is None else b
    return euler_char(K) == 1 + sum((-1) ** k * v for k, v in enumerate(b.values))


def join_complexes(K: SimplicialComplex, L: SimplicialComplex) -> SimplicialComplex:
    """Join with vertices relabelled ``(0, v)`` and ``(1, w)``."""
    n = len(K.vertices)
    verts = [(0, v) for v in K.vertices] + [(1, w) for w in L.vertices]
    facets = [f + tuple(n + j for j in g) for f in K.facets for g in L.facets]
    return SimplicialComplex(verts, facets, maximal=True)


def join_betti(a: BettiVector, b: BettiVector) -> BettiVector:
    """Predicted reduced Betti numbers of a join over a field."""
    if a.empty:
        return b
    if b.empty:
        return a
    out = [0] * (len(a.values) + len(b.values))
    for i, x in enumerate(a.values):
        for j, y in enumerate(b.values):
            out[i + j + 1] += x * y
    return BettiVector(tuple(out))


def sphere0() -> SimplicialComplex:
    return SimplicialComplex([APEX_1, APEX_2], [(0,), (1,)], maximal=True)


def suspension(K: SimplicialComplex) -> SimplicialComplex:
    """Join with two fresh apex points."""
    return join_complexes(K, sphere0())


@dataclass(frozen=True)
class Connectivity:
    value: int
    acyclic: bool
    caveat: str = "homology-only, not pi_1-certified"

    def to_dict(self) -> dict:
        return {"connectivity": self.value, "acyclic": self.acyclic, "caveat": self.caveat}


def connectivity_estimate(K: SimplicialComplex | BettiVector) -> Connectivity:
    """Largest c with b~_0 = ... = b~_c = 0.

    An acyclic complex reports its dimension with ``acyclic=True``: the
    homology gives no upper bound there.
    """
    b = K if isinstance(K, BettiVector) else reduced_betti(K)
    if b.empty:
        raise EmptyComplex("connectivity of the empty complex")
    for k, v in enumerate(b.values):
        if v:
            return Connectivity(k - 1, False)
    return Connectivity(len(b.values) - 1, True)


def chromatic_bound_line(name: str, box_betti: BettiVector) -> str:
    """Heuristic lower bound from the homological connectivity of B(G)."""
    c = connectivity_estimate(box_betti)
    if c.acyclic:
        return f"{name}: B(G) is acyclic; no chromatic bound [heuristic]"
    return f"{name}: chi(G) >= conn(B(G)) + 3 >= {c.value + 3} [heuristic, {c.caveat}]"
