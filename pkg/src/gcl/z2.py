"""Weak involutions, Z2-posets and Z2-complexes.

A weakly involutive poset carries an order-reversing map ``C`` with
``x <= C(C(x))``.  From it we build the Lovasz poset (where ``C`` is a true
antitone involution), the box poset and its extended/enriched variants, and
the induced actions on interval and chain posets together with the
comparison maps between them.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Hashable, Mapping, Sequence

import numpy as np

from .complex import SimplicialComplex, faces_as_poset_of_inclusion, order_complex
from .errors import (
    KindMismatch,
    NotAnInvolution,
    NotASubposet,
    NotEquivariant,
    NotMonotone,
    NotSimplicial,
    ReservedLabel,
    WIAxiomViolation,
)
from .homology import BettiVector, poset_betti, reduced_betti
from .labels import APEX_1, APEX_2, BOTTOM, RESERVED, label_str
from .poset import MonotoneMap, Poset, chain_poset, inclusion_map, interval_poset

MONOTONE = "monotone"
ANTITONE = "antitone"


def _as_index_map(P: Poset, C) -> np.ndarray:
    """Sequences are read as index arrays; dicts and callables act on labels."""
    if isinstance(C, Mapping):
        arr = np.array([P.index(C[x]) for x in P.elements], dtype=np.int64)
    elif callable(C):
        arr = np.array([P.index(C(x)) for x in P.elements], dtype=np.int64)
    else:
        arr = np.array(C, dtype=np.int64)
    arr = arr.reshape(len(P))
    if len(arr) and (arr.min() < 0 or arr.max() >= len(P)):
        raise ValueError("self-map leaves the poset")
    return arr


# -- weak involutions ------------------------------------------------------------


@dataclass(frozen=True)
class WIDiagnostics:
    reverses_order: bool
    reverse_witness: tuple | None
    expanding_square: bool
    square_witness: Hashable | None
    cube_identity: bool
    cube_witness: Hashable | None

    @property
    def passed(self) -> bool:
        return self.reverses_order and self.expanding_square and self.cube_identity

    def describe(self) -> str:
        if self.passed:
            return "weak involution axioms hold"
        parts = []
        if not self.reverses_order:
            a, b = self.reverse_witness
            parts.append(f"{label_str(a)} <= {label_str(b)} but C({label_str(b)}) "
                         f"is not below C({label_str(a)})")
        if not self.expanding_square:
            parts.append(f"{label_str(self.square_witness)} is not below its C-square")
        if not self.cube_identity:
            parts.append(f"C^3 differs from C at {label_str(self.cube_witness)}")
        return "; ".join(parts)

    def to_dict(self) -> dict:
        def show(w):
            if w is None:
                return None
            return [label_str(x) for x in w] if isinstance(w, tuple) else label_str(w)
        return {
            "reverses_order": self.reverses_order, "reverse_witness": show(self.reverse_witness),
            "expanding_square": self.expanding_square, "square_witness": show(self.square_witness),
            "cube_identity": self.cube_identity, "cube_witness": show(self.cube_witness),
        }


def check_wi(P: Poset, C) -> WIDiagnostics:
    """Test the weak involution axioms, reporting a witness for each failure."""
    c = _as_index_map(P, C)
    leq = P.leq
    rev = rev_w = None
    bad = leq & ~leq[np.ix_(c, c)].T
    if bad.any():
        i, j = np.argwhere(bad)[0]
        rev_w = (P.elements[i], P.elements[j])
    rev = rev_w is None
    idx = np.arange(len(P))
    sq_bad = np.flatnonzero(~leq[idx, c[c]])
    cube_bad = np.flatnonzero(c[c[c]] != c)
    return WIDiagnostics(
        rev, rev_w,
        len(sq_bad) == 0, P.elements[sq_bad[0]] if len(sq_bad) else None,
        len(cube_bad) == 0, P.elements[cube_bad[0]] if len(cube_bad) else None,
    )


class WIPoset:
    """A poset with a weak involution ``C``, stored as an index array."""

    __slots__ = ("base", "C")

    def __init__(self, base: Poset, C, *, check: bool = True):
        self.base = base
        c = _as_index_map(base, C)
        c.setflags(write=False)
        self.C = c
        if check:
            diag = check_wi(base, c)
            if not diag.passed:
                raise WIAxiomViolation(diag.describe())

    def __len__(self) -> int:
        return len(self.base)

    def __repr__(self) -> str:
        return f"WIPoset({len(self)} elements)"

    def c_of(self, label):
        return self.base.elements[self.C[self.base.index(label)]]

    def to_dict(self) -> dict:
        d = self.base.to_dict()
        d["C"] = {label_str(x): label_str(self.c_of(x)) for x in self.base.elements}
        return d


# -- Z2-posets -------------------------------------------------------------------


class Z2Poset:
    """A poset with an involution that is either monotone or antitone."""

    __slots__ = ("base", "omega", "kind")

    def __init__(self, base: Poset, omega, kind: str, *, check: bool = True):
        if kind not in (MONOTONE, ANTITONE):
            raise ValueError(f"kind must be {MONOTONE!r} or {ANTITONE!r}")
        w = _as_index_map(base, omega)
        w.setflags(write=False)
        self.base, self.omega, self.kind = base, w, kind
        if check:
            problem = self.violation()
            if problem is not None:
                raise (NotAnInvolution if "involution" in problem else NotMonotone)(problem)

    def violation(self) -> str | None:
        w = self.omega
        if len(w) == 0:
            return None
        moved = np.flatnonzero(w[w] != np.arange(len(w)))
        if len(moved):
            return f"not an involution at {label_str(self.base.elements[moved[0]])}"
        img = self.base.leq[np.ix_(w, w)]
        bad = self.base.leq & ~(img if self.kind == MONOTONE else img.T)
        if bad.any():
            i, j = np.argwhere(bad)[0]
            return (f"omega is not {self.kind}: {label_str(self.base.elements[i])} <= "
                    f"{label_str(self.base.elements[j])}")
        return None

    def __len__(self) -> int:
        return len(self.base)

    def __repr__(self) -> str:
        return f"Z2Poset({len(self)} elements, {self.kind})"

    def omega_of(self, label):
        return self.base.elements[self.omega[self.base.index(label)]]

    def fixed_indices(self) -> list[int]:
        return np.flatnonzero(self.omega == np.arange(len(self))).tolist()

    def as_wi(self) -> WIPoset:
        """An antitone involution is a weak involution."""
        if self.kind != ANTITONE:
            raise KindMismatch("only antitone involutions are weak involutions")
        return WIPoset(self.base, self.omega, check=False)

    def complex(self) -> "Z2Complex":
        """The order complex with the induced simplicial involution."""
        return Z2Complex(order_complex(self.base), self.omega, check=False)

    def is_free(self) -> bool:
        """Free on the order complex: no element is comparable to its image."""
        w = self.omega
        idx = np.arange(len(w))
        return not bool((self.base.leq[idx, w] | self.base.leq[w, idx]).any())

    def fixed_betti(self) -> BettiVector:
        """Betti numbers of the fixed set of the order complex.

        For a monotone action the invariant chains are the chains of fixed
        elements.  For an antitone action an invariant chain is determined
        by its lower half, so the fixed set is the order complex of
        ``{x : x <= omega(x)}``.
        """
        if self.kind == MONOTONE:
            return poset_betti(fixed_subposet(self))
        idx = np.arange(len(self))
        low = np.flatnonzero(self.base.leq[idx, self.omega]).tolist()
        return poset_betti(self.base.subposet(low))


def _as_antitone(Q) -> Z2Poset:
    if isinstance(Q, WIPoset):
        c = Q.C
        if not np.array_equal(c[c], np.arange(len(c))):
            raise KindMismatch("weak involution is not an involution; pass its Lovasz poset")
        return Z2Poset(Q.base, c, ANTITONE, check=False)
    if Q.kind != ANTITONE:
        raise KindMismatch("this construction needs an antitone involution")
    return Q


def _as_wi(P) -> WIPoset:
    if isinstance(P, WIPoset):
        return P
    if isinstance(P, Z2Poset):
        return P.as_wi()
    raise TypeError("expected a WIPoset or an antitone Z2Poset")


def _reject_reserved(P: Poset, *labels) -> None:
    for lab in labels:
        if lab in P:
            raise ReservedLabel(f"label {lab!r} is reserved")


# -- equivariant maps ------------------------------------------------------------


@dataclass(frozen=True)
class Z2Map:
    """A monotone map between Z2-posets, expected to commute with the actions."""

    source: Z2Poset
    target: Z2Poset
    map: MonotoneMap

    def equivariance_witness(self):
        f = self.map.assignment
        bad = np.flatnonzero(f[self.source.omega] != self.target.omega[f])
        return self.source.base.elements[bad[0]] if len(bad) else None

    def is_equivariant(self) -> bool:
        return self.equivariance_witness() is None

    def require_equivariant(self) -> "Z2Map":
        w = self.equivariance_witness()
        if w is not None:
            raise NotEquivariant(f"map does not commute with the actions at {label_str(w)}")
        return self


# -- constructions ---------------------------------------------------------------


def lovasz_poset(P) -> Z2Poset:
    """``{x : C(C(x)) = x}`` with the restricted, antitone involution."""
    if isinstance(P, Z2Poset):
        if P.kind == MONOTONE:
            raise KindMismatch("the Lovasz poset is only defined for weak (antitone) involutions")
        return P
    if not isinstance(P, WIPoset):
        raise TypeError("expected a WIPoset")
    diag = check_wi(P.base, P.C)
    if not diag.passed:
        raise WIAxiomViolation(diag.describe())
    c = P.C
    keep = np.flatnonzero(c[c] == np.arange(len(c))).tolist()
    pos = {old: new for new, old in enumerate(keep)}
    return Z2Poset(P.base.subposet(keep), [pos[int(c[i])] for i in keep], ANTITONE, check=False)


def _pair_poset(hat: Poset, I: np.ndarray, J: np.ndarray) -> Z2Poset:
    """Pairs ``(hat[I[k]], hat[J[k]])`` with componentwise order and swap action."""
    labels = [(hat.elements[i], hat.elements[j]) for i, j in zip(I.tolist(), J.tolist())]
    m = hat.leq[np.ix_(I, I)] & hat.leq[np.ix_(J, J)]
    pos = {(int(i), int(j)): k for k, (i, j) in enumerate(zip(I, J))}
    omega = [pos[(int(j), int(i))] for i, j in zip(I, J)]
    return Z2Poset(Poset(labels, m), np.array(omega, dtype=np.int64), MONOTONE, check=False)


def _box_pairs(P: WIPoset) -> tuple[np.ndarray, np.ndarray]:
    a = P.base.leq[:, P.C]  # a[x, y]: x <= C(y)
    return np.nonzero(a & a.T)


def box_poset(P) -> Z2Poset:
    """Pairs ``(x, y)`` with ``x <= C(y)`` and ``y <= C(x)``, swapped by the action."""
    P = _as_wi(P)
    I, J = _box_pairs(P)
    return _pair_poset(P.base, I, J)


def _with_legs(P: WIPoset, S: Poset) -> Z2Poset:
    """Box pairs of ``P`` plus ``(s, 0)`` and ``(0, s)`` for ``s`` in ``S``."""
    _reject_reserved(S, BOTTOM)
    n = len(S)
    hat = Poset(S.elements + (BOTTOM,), np.block([
        [S.leq, np.zeros((n, 1), dtype=bool)],
        [np.ones((1, n + 1), dtype=bool)],
    ]))
    I, J = _box_pairs(P)
    into = np.array(S.indices(P.base.elements), dtype=np.int64)
    I, J = into[I] if len(I) else I, into[J] if len(J) else J
    legs = np.arange(n, dtype=np.int64)
    bot = np.full(n, n, dtype=np.int64)
    return _pair_poset(hat, np.concatenate([I, legs, bot]), np.concatenate([J, bot, legs]))


def extended_box(P) -> Z2Poset:
    P = _as_wi(P)
    return _with_legs(P, P.base)


def is_induced_subposet(P: Poset, S: Poset) -> bool:
    if not all(x in S for x in P.elements):
        return False
    idx = S.indices(P.elements)
    return bool(np.array_equal(P.leq, S.leq[np.ix_(idx, idx)]))


def enriched_box(P, S: Poset) -> Z2Poset:
    P = _as_wi(P)
    if not is_induced_subposet(P.base, S):
        raise NotASubposet("the base of P must be an induced subposet of S")
    return _with_legs(P, S)


def induced_action_interval(Q) -> Z2Poset:
    """Intervals with ``(x, y) -> (omega y, omega x)``; a monotone action."""
    Q = _as_antitone(Q)
    Int = interval_poset(Q.base)
    omega = [Int.index((Q.omega_of(y), Q.omega_of(x))) for x, y in Int.elements]
    return Z2Poset(Int, omega, MONOTONE, check=False)


def induced_action_chain(Q) -> Z2Poset:
    """Chains with ``omega`` applied elementwise (this reverses each chain)."""
    Q = _as_antitone(Q)
    Ch = chain_poset(Q.base)
    omega = [Ch.index(frozenset(Q.omega_of(x) for x in c)) for c in Ch.elements]
    return Z2Poset(Ch, omega, MONOTONE, check=False)


def omega_iso(Q) -> Z2Map:
    """``(x, y) -> (x, C y)`` from the interval poset onto the box poset."""
    Q = _as_antitone(Q)
    Int = induced_action_interval(Q)
    B = box_poset(Q)
    f = MonotoneMap.from_labels(Int.base, B.base, lambda p: (p[0], Q.omega_of(p[1])))
    return Z2Map(Int, B, f)


def omega_inverse(Q) -> Z2Map:
    """``(a, b) -> (a, C b)`` from the box poset back to intervals."""
    Q = _as_antitone(Q)
    Int = induced_action_interval(Q)
    B = box_poset(Q)
    g = MonotoneMap.from_labels(B.base, Int.base, lambda p: (p[0], Q.omega_of(p[1])))
    return Z2Map(B, Int, g)


def sigma_map(Q) -> Z2Map:
    """A chain goes to the interval spanned by its minimum and maximum."""
    Q = _as_antitone(Q)
    Ch = induced_action_chain(Q)
    Int = induced_action_interval(Q)
    base = Q.base

    def ends(chain):
        idx = base.sort_chain(base.indices(chain))
        return base.elements[idx[0]], base.elements[idx[-1]]

    return Z2Map(Ch, Int, MonotoneMap.from_labels(Ch.base, Int.base, ends))


def theta_map(P) -> Z2Map:
    """Inclusion of the box poset of the Lovasz poset into the box poset."""
    P = _as_wi(P)
    small = box_poset(lovasz_poset(P))
    big = box_poset(P)
    return Z2Map(small, big, inclusion_map(small.base, big.base))


def fixed_subposet(Q: Z2Poset) -> Poset:
    return Q.base.subposet(Q.fixed_indices())


def two_point_extension(B: Z2Poset) -> Z2Poset:
    """Add two swapped, incomparable minima below everything."""
    _reject_reserved(B.base, APEX_1, APEX_2)
    n = len(B)
    m = np.zeros((n + 2, n + 2), dtype=bool)
    m[:n, :n] = B.base.leq
    m[n, :n] = m[n + 1, :n] = True
    m[n, n] = m[n + 1, n + 1] = True
    omega = np.concatenate([B.omega, [n + 1, n]]).astype(np.int64)
    return Z2Poset(Poset(B.base.elements + (APEX_1, APEX_2), m), omega, B.kind, check=False)


def box_diagonal_readings(P) -> dict:
    """Two readings of the fixed elements of the box poset.

    ``literal``: pairs ``(u, u)`` that satisfy the box condition ``u <= C u``.
    ``prose``: every diagonal pair ``(u, u)``, i.e. a copy of P itself.
    """
    P = _as_wi(P)
    idx = np.arange(len(P))
    literal = np.flatnonzero(P.base.leq[idx, P.C]).tolist()
    return {
        "literal_count": len(literal),
        "literal": [label_str(P.base.elements[i]) for i in literal],
        "prose_count": len(P),
        "agree": len(literal) == len(P),
    }


# -- Z2-complexes ----------------------------------------------------------------


class Z2Complex:
    """A simplicial complex with a simplicial involution on its vertices."""

    __slots__ = ("complex", "omega")

    def __init__(self, complex: SimplicialComplex, omega, *, check: bool = True):
        n = len(complex.vertices)
        if isinstance(omega, str) and omega == "identity":
            w = np.arange(n, dtype=np.int64)
        elif isinstance(omega, Mapping):
            w = np.array([complex.index(omega.get(v, v)) for v in complex.vertices],
                         dtype=np.int64)
        elif callable(omega):
            w = np.array([complex.index(omega(v)) for v in complex.vertices], dtype=np.int64)
        else:
            w = np.asarray(omega, dtype=np.int64).reshape(n)
        w.setflags(write=False)
        self.complex, self.omega = complex, w
        if check:
            if not np.array_equal(w[w], np.arange(n)):
                raise NotAnInvolution("vertex map is not an involution")
            for f in complex.facets:
                if not complex.has_face(w[list(f)].tolist()):
                    shown = "{" + ",".join(label_str(complex.vertices[v]) for v in f) + "}"
                    raise NotSimplicial(f"image of facet {shown} is not a face")

    def __repr__(self) -> str:
        return f"Z2Complex({self.complex!r})"

    def omega_of(self, label):
        return self.complex.vertices[self.omega[self.complex.index(label)]]

    def is_free(self) -> bool:
        return is_free(self)

    def to_dict(self) -> dict:
        d = self.complex.to_dict()
        V = self.complex.vertices
        d["involution"] = {label_str(V[i]): label_str(V[j]) for i, j in enumerate(self.omega)}
        return d


def is_free(X: Z2Complex) -> bool:
    """No invariant face; an invariant face exists iff some orbit ``{v, omega v}`` is a face."""
    K, w = X.complex, X.omega
    return not any(K.has_face((v, int(w[v]))) for v in range(len(w)))


def orbit_complex(X: Z2Complex) -> SimplicialComplex | None:
    """Orbits that are faces, with a simplex for each set of orbits whose union is a face.

    Its barycentric subdivision is the complex of invariant faces, so it
    has the homotopy type of the fixed set.  ``None`` when nothing is fixed.
    """
    K, w = X.complex, X.omega
    orbit_of = {v: frozenset((v, int(w[v]))) for v in range(len(w))}
    orbits = sorted({o for o in orbit_of.values() if K.has_face(o)}, key=lambda o: sorted(o))
    if not orbits:
        return None
    pos = {o: i for i, o in enumerate(orbits)}
    facets = []
    for f in K.facets:
        fs = set(f)
        inside = {pos[orbit_of[v]] for v in f if orbit_of[v] in pos and orbit_of[v] <= fs}
        if inside:
            facets.append(inside)
    labels = [frozenset(K.vertices[v] for v in o) for o in orbits]
    return SimplicialComplex(labels, facets)


def fixed_point_complex(X: Z2Complex) -> SimplicialComplex | None:
    """Order complex of the invariant faces under inclusion, or ``None`` if there are none."""
    O = orbit_complex(X)
    if O is None:
        return None
    P = faces_as_poset_of_inclusion(O)
    merged = [frozenset().union(*face) for face in P.elements]
    return order_complex(Poset(merged, P.leq))


def fixed_betti(X: Z2Complex) -> BettiVector:
    return reduced_betti(orbit_complex(X))


def is_wi_morphism(f: MonotoneMap, source: WIPoset, target: WIPoset) -> bool:
    return wi_morphism_witness(f, source, target) is None


def wi_morphism_witness(f: MonotoneMap, source: WIPoset, target: WIPoset):
    """First ``x`` with ``f(C x)`` not below ``C f(x)``; ``None`` if there is none.

    When the condition holds the pair map on box posets is also checked to
    land in the target box poset.
    """
    a = f.assignment
    lhs = a[source.C]
    rhs = target.C[a]
    bad = np.flatnonzero(~target.base.leq[lhs, rhs])
    if len(bad):
        return source.base.elements[bad[0]]
    I, J = _box_pairs(source)
    tl = target.base.leq[:, target.C]
    ok = tl[a[I], a[J]] & tl[a[J], a[I]]
    if not ok.all():
        raise AssertionError("WI-morphism does not map box pairs to box pairs")
    return None


def z2complex_from_dict(data: dict) -> Z2Complex:
    from .complex import complex_from_dict
    from .errors import ParseError

    K = complex_from_dict(data)
    inv = data.get("involution", "identity")
    if inv == "identity":
        return Z2Complex(K, "identity")
    if not isinstance(inv, Mapping):
        raise ParseError("involution must be 'identity' or a vertex map")
    lookup = {label_str(v): v for v in K.vertices}
    try:
        m = {lookup[str(a)]: lookup[str(b)] for a, b in inv.items()}
    except KeyError as exc:
        raise ParseError(f"involution mentions unknown vertex {exc.args[0]}") from None
    for a, b in list(m.items()):
        m.setdefault(b, a)
    return Z2Complex(K, m)


def wi_from_dict(data: dict) -> WIPoset:
    """Poset given by ``elements`` and ``covers`` plus a ``C`` association."""
    from .errors import ParseError
    from .poset import build_poset

    try:
        elements = [str(x) for x in data["elements"]]
        covers = [(str(a), str(b)) for a, b in data.get("covers", [])]
        C = {str(k): str(v) for k, v in data["C"].items()}
    except (KeyError, TypeError, ValueError, AttributeError) as exc:
        raise ParseError(f"WI-poset JSON needs elements, covers and C: {exc}") from None
    for x in elements:
        if x in RESERVED:
            raise ReservedLabel(f"label {x!r} is reserved")
    P = build_poset(elements, covers)
    if set(C) != set(elements):
        raise ParseError("C must be defined on every element")
    return WIPoset(P, C)


def antitone_from_permutation(P: Poset, perm: Sequence[int] | Callable) -> Z2Poset:
    return Z2Poset(P, perm, ANTITONE)
