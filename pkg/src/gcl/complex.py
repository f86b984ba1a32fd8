"""Finite abstract simplicial complexes and the poset <-> complex bridges."""

from __future__ import annotations

import json
from itertools import combinations
from pathlib import Path
from typing import Hashable, Iterable, Sequence


from .errors import EmptyComplex, EmptyPoset, NotAFace, ParseError, UnknownLabel
from .labels import label_str, sort_key
from .poset import Poset, _superset_matrix, iter_chains


class SimplicialComplex:
    """A complex given by its facets over an indexed vertex list.

    Faces are sorted tuples of vertex indices.  The empty face is implicit
    and never listed, so a complex always has at least one vertex.
    """

    __slots__ = ("vertices", "facets", "_index", "_faces", "_face_set", "_masks")

    def __init__(self, vertices: Sequence[Hashable], facets: Iterable[Iterable[int]], *,
                 faces: list[tuple[int, ...]] | None = None, maximal: bool = False):
        self.vertices = tuple(vertices)
        if not self.vertices:
            raise EmptyComplex("a complex needs at least one vertex")
        self._index = {v: i for i, v in enumerate(self.vertices)}
        if len(self._index) != len(self.vertices):
            raise ParseError("duplicate vertex labels")
        fs = {tuple(sorted(set(f))) for f in facets}
        if () in fs:
            fs.discard(())
        if not maximal:
            fs = _maximal_sets(fs)
        covered = {v for f in fs for v in f}
        for v in range(len(self.vertices)):
            if v not in covered:
                fs.add((v,))
        self.facets = tuple(sorted(fs, key=lambda f: (len(f), f)))
        self._faces = faces
        self._face_set = None
        self._masks = None

    # -- constructors -----------------------------------------------------------

    @classmethod
    def from_facets(cls, facets: Iterable[Iterable[Hashable]],
                    vertices: Sequence[Hashable] | None = None) -> "SimplicialComplex":
        facets = [list(f) for f in facets]
        if vertices is None:
            vertices = sorted({v for f in facets for v in f}, key=sort_key)
        index = {v: i for i, v in enumerate(vertices)}
        try:
            idx = [[index[v] for v in f] for f in facets]
        except KeyError as exc:
            raise UnknownLabel(f"facet uses unknown vertex {exc.args[0]!r}") from None
        if any(not f for f in idx) and not vertices:
            raise EmptyComplex("no vertices")
        return cls(vertices, idx)

    @classmethod
    def from_faces(cls, faces: Iterable[Iterable[Hashable]],
                   vertices: Sequence[Hashable] | None = None) -> "SimplicialComplex":
        """Build from a downward-closed family of faces (the empty face may be omitted)."""
        faces = [frozenset(f) for f in faces]
        faces = [f for f in faces if f]
        if vertices is None:
            vertices = sorted({v for f in faces for v in f}, key=sort_key)
        if not vertices:
            raise EmptyComplex("no nonempty faces")
        index = {v: i for i, v in enumerate(vertices)}
        idx = {tuple(sorted(index[v] for v in f)) for f in faces}
        return cls(vertices, _maximal_by_marking(idx), maximal=True)

    @classmethod
    def simplex(cls, vertices: Sequence[Hashable]) -> "SimplicialComplex":
        return cls(vertices, [range(len(vertices))], maximal=True)

    # -- queries ----------------------------------------------------------------

    def __repr__(self) -> str:
        return (f"SimplicialComplex({len(self.vertices)} vertices, {len(self.facets)} facets, "
                f"dim {self.dim})")

    def __eq__(self, other) -> bool:
        if not isinstance(other, SimplicialComplex):
            return False
        return (set(self.vertices) == set(other.vertices)
                and self.label_facets() == other.label_facets())

    __hash__ = None

    @property
    def dim(self) -> int:
        return max(len(f) for f in self.facets) - 1

    def index(self, label) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise UnknownLabel(f"unknown vertex {label_str(label)}") from None

    def face_of(self, labels: Iterable[Hashable]) -> tuple[int, ...]:
        return tuple(sorted(self.index(v) for v in labels))

    def label_facets(self) -> set[frozenset]:
        return {frozenset(self.vertices[i] for i in f) for f in self.facets}

    def label_faces(self) -> set[frozenset]:
        return {frozenset(self.vertices[i] for i in f) for f in self.faces()}

    def faces(self) -> list[tuple[int, ...]]:
        """All nonempty faces, sorted by dimension then lexicographically."""
        if self._faces is None:
            seen: set[tuple[int, ...]] = set()
            for f in self.facets:
                if f in seen:
                    continue
                for k in range(1, len(f) + 1):
                    seen.update(combinations(f, k))
            self._faces = sorted(seen, key=lambda f: (len(f), f))
        return self._faces

    def faces_by_dim(self) -> list[list[tuple[int, ...]]]:
        out: list[list[tuple[int, ...]]] = [[] for _ in range(self.dim + 1)]
        for f in self.faces():
            out[len(f) - 1].append(f)
        for layer in out:
            layer.sort()
        return out

    def f_vector(self) -> tuple[int, ...]:
        return tuple(len(layer) for layer in self.faces_by_dim())

    def has_face(self, face: Iterable[int]) -> bool:
        face = tuple(sorted(face))
        if not face:
            return True
        if self._face_set is None and self._faces is not None:
            self._face_set = set(self._faces)
        if self._face_set is not None:
            return face in self._face_set
        if self._masks is None:
            self._masks = [_mask(f) for f in self.facets]
        m = _mask(face)
        return any(m & fm == m for fm in self._masks)

    def is_facet(self, face: Iterable[int]) -> bool:
        return tuple(sorted(face)) in set(self.facets)

    def relabel(self, mapping) -> "SimplicialComplex":
        """Rename vertices through a dict or callable."""
        f = mapping if callable(mapping) else mapping.__getitem__
        return SimplicialComplex([f(v) for v in self.vertices], self.facets, maximal=True)

    def canonical(self) -> list[list[str]]:
        """Facets as sorted lists of rendered labels, in sorted order."""
        return sorted(sorted(label_str(v) for v in f) for f in self.label_facets())

    def without_face(self, face: Iterable[int]) -> "SimplicialComplex":
        """Delete one maximal face (keeping its boundary)."""
        face = tuple(sorted(face))
        if face not in set(self.facets):
            raise NotAFace("only a maximal face can be removed on its own")
        rest = [f for f in self.facets if f != face]
        rest.extend(face[:i] + face[i + 1:] for i in range(len(face)) if len(face) > 1)
        return SimplicialComplex(self.vertices, rest)

    def induced(self, vertex_labels: Iterable[Hashable]) -> "SimplicialComplex":
        keep = {self.index(v) for v in vertex_labels}
        facets = [tuple(v for v in f if v in keep) for f in self.facets]
        order = sorted(keep)
        pos = {v: i for i, v in enumerate(order)}
        return SimplicialComplex([self.vertices[v] for v in order],
                                 [[pos[v] for v in f] for f in facets if f])

    def to_dict(self) -> dict:
        return {
            "vertices": [label_str(v) for v in self.vertices],
            "facets": self.canonical(),
        }


def _mask(face: Iterable[int]) -> int:
    m = 0
    for v in face:
        m |= 1 << v
    return m


def _maximal_sets(sets: set[tuple[int, ...]]) -> set[tuple[int, ...]]:
    ordered = sorted(sets, key=len, reverse=True)
    kept: list[tuple[tuple[int, ...], int]] = []
    for s in ordered:
        m = _mask(s)
        if not any(m & km == m for _, km in kept):
            kept.append((s, m))
    return {s for s, _ in kept}


def _maximal_by_marking(faces: set[tuple[int, ...]]) -> list[tuple[int, ...]]:
    """Maximal members of a downward-closed family."""
    covered: set[tuple[int, ...]] = set()
    for f in faces:
        if len(f) > 1:
            covered.update(f[:i] + f[i + 1:] for i in range(len(f)))
    return [f for f in faces if f not in covered]


# -- poset <-> complex --------------------------------------------------------


def order_complex(P: Poset) -> SimplicialComplex:
    """Chains of ``P`` as faces; vertices are the elements of ``P``."""
    if len(P) == 0:
        raise EmptyPoset("order complex of the empty poset")
    chains = [tuple(sorted(c)) for c in iter_chains(P)]
    chains.sort(key=lambda c: (len(c), c))
    facets = _maximal_by_marking(set(chains))
    return SimplicialComplex(P.elements, facets, faces=chains, maximal=True)


def face_poset(K: SimplicialComplex) -> Poset:
    """Nonempty faces ordered by reversed inclusion (bigger faces are lower)."""
    faces = K.faces()
    labels = [frozenset(K.vertices[i] for i in f) for f in faces]
    return Poset(labels, _superset_matrix(faces, len(K.vertices)))


def barycentric_subdivision(K: SimplicialComplex) -> SimplicialComplex:
    return order_complex(face_poset(K))


# -- file format ----------------------------------------------------------------


def complex_from_dict(data: dict) -> SimplicialComplex:
    try:
        raw_vertices = [str(v) for v in data["vertices"]]
        raw_facets = data["facets"]
    except (KeyError, TypeError) as exc:
        raise ParseError(f"complex JSON needs 'vertices' and 'facets': {exc}") from None
    facets = []
    for f in raw_facets:
        facet = []
        for v in f:
            if isinstance(v, int) and not isinstance(v, bool):
                if not 0 <= v < len(raw_vertices):
                    raise ParseError(f"vertex index {v} out of range")
                facet.append(raw_vertices[v])
            else:
                facet.append(str(v))
        if not facet:
            raise ParseError("empty facet")
        facets.append(facet)
    unknown = {v for f in facets for v in f} - set(raw_vertices)
    if unknown:
        raise ParseError(f"facets use undeclared vertices {sorted(unknown)}")
    return SimplicialComplex.from_facets(facets, vertices=sorted(raw_vertices, key=sort_key))


def load_complex(path: str | Path) -> tuple[SimplicialComplex, dict]:
    """Read a complex JSON file; also returns the raw document for extra keys."""
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ParseError(f"cannot read {path}: {exc}") from None
    return complex_from_dict(data), data


def dump_complex(K: SimplicialComplex) -> str:
    return json.dumps(K.to_dict(), sort_keys=True)


def is_isomorphic_by_labels(K: SimplicialComplex, L: SimplicialComplex) -> bool:
    """Equality after canonical relabelling of both vertex sets."""
    return K.canonical() == L.canonical()


def faces_as_poset_of_inclusion(K: SimplicialComplex) -> Poset:
    """Nonempty faces ordered by inclusion (the dual of :func:`face_poset`)."""
    faces = K.faces()
    labels = [frozenset(K.vertices[i] for i in f) for f in faces]
    return Poset(labels, _superset_matrix(faces, len(K.vertices)).T)
