"""Simple graphs, set families, file formats and the small-graph corpus."""

from __future__ import annotations

import json
import random
from itertools import combinations, permutations
from pathlib import Path
from typing import Hashable, Iterable, Mapping, Sequence

from ..errors import (
    EmptyFamily,
    NotAutomorphism,
    ParseError,
    TooSmall,
    UnknownEdge,
    UnknownVertex,
)
from ..labels import label_str, sort_key


class Graph:
    """Undirected simple graph on labelled vertices.

    ``mask[i]`` is the neighbourhood of vertex ``i`` as a bitset over vertex
    indices; most constructions work on these masks.
    """

    __slots__ = ("vertices", "edges", "_index", "mask", "involution")

    def __init__(self, vertices: Sequence[Hashable], edges: Iterable[Iterable[Hashable]] = (),
                 involution: Mapping | None = None):
        self.vertices = tuple(vertices)
        self._index = {v: i for i, v in enumerate(self.vertices)}
        if len(self._index) != len(self.vertices):
            raise ParseError("duplicate vertex labels")
        es = set()
        mask = [0] * len(self.vertices)
        for e in edges:
            u, v = tuple(e)
            if u not in self._index or v not in self._index:
                raise UnknownVertex(f"edge {label_str(u)}-{label_str(v)} uses an unknown vertex")
            if u == v:
                raise ParseError(f"loop at {label_str(u)}")
            i, j = self._index[u], self._index[v]
            es.add(frozenset((u, v)))
            mask[i] |= 1 << j
            mask[j] |= 1 << i
        self.edges = frozenset(es)
        self.mask = tuple(mask)
        self.involution = None
        if involution is not None:
            self.involution = self._check_automorphism(involution)

    def _check_automorphism(self, w: Mapping) -> dict:
        w = {v: w.get(v, v) for v in self.vertices}
        if any(x not in self._index for x in w.values()) or len(set(w.values())) != len(w):
            raise NotAutomorphism("vertex map is not a permutation")
        if any(w[w[v]] != v for v in self.vertices):
            raise NotAutomorphism("vertex map is not an involution")
        for e in self.edges:
            u, v = tuple(e)
            if frozenset((w[u], w[v])) not in self.edges:
                raise NotAutomorphism(f"edge {label_str(u)}-{label_str(v)} is not preserved")
        return w

    def with_involution(self, w: Mapping) -> "Graph":
        return Graph(self.vertices, self.edges, w)

    def __repr__(self) -> str:
        return f"Graph({len(self.vertices)} vertices, {len(self.edges)} edges)"

    def __len__(self) -> int:
        return len(self.vertices)

    def __eq__(self, other) -> bool:
        return (isinstance(other, Graph) and set(self.vertices) == set(other.vertices)
                and self.edges == other.edges)

    __hash__ = None

    def index(self, v) -> int:
        try:
            return self._index[v]
        except KeyError:
            raise UnknownVertex(f"unknown vertex {label_str(v)}") from None

    def to_mask(self, vs: Iterable[Hashable]) -> int:
        m = 0
        for v in vs:
            m |= 1 << self.index(v)
        return m

    def from_mask(self, m: int) -> frozenset:
        return frozenset(self.vertices[i] for i in bits(m))

    def neighbors(self, v) -> frozenset:
        return self.from_mask(self.mask[self.index(v)])

    def adjacent(self, u, v) -> bool:
        return frozenset((u, v)) in self.edges

    def edge_list(self) -> list[tuple]:
        pairs = [tuple(sorted(e, key=sort_key)) for e in self.edges]
        return sorted(pairs, key=lambda p: (sort_key(p[0]), sort_key(p[1])))

    def delete_vertices(self, vs: Iterable[Hashable]) -> "Graph":
        drop = set(vs)
        for v in drop:
            self.index(v)
        keep = [v for v in self.vertices if v not in drop]
        return Graph(keep, [e for e in self.edges if not (e & drop)])

    def delete_edge(self, e: Iterable[Hashable]) -> "Graph":
        e = frozenset(e)
        if e not in self.edges:
            raise UnknownEdge(f"no edge {'-'.join(label_str(v) for v in e)}")
        return Graph(self.vertices, self.edges - {e})

    def complement(self) -> "Graph":
        return Graph(self.vertices, [(u, v) for u, v in combinations(self.vertices, 2)
                                     if not self.adjacent(u, v)])

    def relabel(self, f) -> "Graph":
        f = f if callable(f) else f.__getitem__
        return Graph([f(v) for v in self.vertices], [(f(u), f(v)) for u, v in self.edge_list()])

    def to_networkx(self):
        import networkx as nx

        g = nx.Graph()
        g.add_nodes_from(self.vertices)
        g.add_edges_from(self.edge_list())
        return g

    def to_edge_list_text(self) -> str:
        lines = [f"p {len(self.vertices)} {len(self.edges)}"]
        lines += [f"{label_str(u)} {label_str(v)}" for u, v in self.edge_list()]
        return "\n".join(lines) + "\n"


def bits(m: int):
    """Indices of the set bits of ``m`` in increasing order."""
    while m:
        low = m & -m
        yield low.bit_length() - 1
        m ^= low


def popcount(m: int) -> int:
    return bin(m).count("1")


# -- standard graphs -------------------------------------------------------------


def reversal(n: int) -> dict[int, int]:
    return {i: n + 1 - i for i in range(1, n + 1)}


def path_graph(n: int) -> Graph:
    """Path 1-2-...-n with the reversal i -> n+1-i attached."""
    if n < 1:
        raise TooSmall("a path needs at least one vertex")
    return Graph(range(1, n + 1), [(i, i + 1) for i in range(1, n)], reversal(n))


def cycle_graph(n: int) -> Graph:
    """Cycle on 1..n with the reversal i -> n+1-i attached."""
    if n < 3:
        raise TooSmall("a cycle needs at least three vertices")
    return Graph(range(1, n + 1), [(i, i % n + 1) for i in range(1, n + 1)], reversal(n))


def complete_graph(n: int) -> Graph:
    if n < 1:
        raise TooSmall("a complete graph needs at least one vertex")
    return Graph(range(1, n + 1), combinations(range(1, n + 1), 2))


# -- set families ----------------------------------------------------------------


class SetFamily:
    """Distinct nonempty subsets of the ground set ``1..n``."""

    __slots__ = ("n", "members")

    def __init__(self, n: int, members: Iterable[Iterable[int]]):
        self.n = int(n)
        seen: list[frozenset] = []
        for m in members:
            s = frozenset(m)
            if not s:
                raise ParseError("family members must be nonempty")
            if not s <= set(range(1, self.n + 1)):
                raise UnknownVertex(f"member {label_str(s)} leaves the ground set [{self.n}]")
            if s in seen:
                raise ParseError(f"duplicate member {label_str(s)}")
            seen.append(s)
        if not seen:
            raise EmptyFamily("set family has no members")
        self.members = tuple(sorted(seen, key=sort_key))

    @classmethod
    def k_subsets(cls, n: int, k: int) -> "SetFamily":
        if not 1 <= k <= n:
            raise TooSmall(f"need 1 <= k <= n, got n={n}, k={k}")
        return cls(n, combinations(range(1, n + 1), k))

    def __repr__(self) -> str:
        return f"SetFamily(n={self.n}, {len(self.members)} members)"

    def to_dict(self) -> dict:
        return {"ground": self.n, "members": [sorted(m) for m in self.members]}


def family_from_dict(data: Mapping) -> SetFamily:
    try:
        return SetFamily(int(data["ground"]), [list(map(int, m)) for m in data["members"]])
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"set family JSON needs 'ground' and 'members': {exc}") from None


def load_family(path: str | Path) -> SetFamily:
    try:
        return family_from_dict(json.loads(Path(path).read_text()))
    except (OSError, json.JSONDecodeError) as exc:
        raise ParseError(f"cannot read {path}: {exc}") from None


# -- edge-list files ---------------------------------------------------------------


def _token(t: str):
    try:
        return int(t)
    except ValueError:
        return t


def parse_edge_list(text: str) -> Graph:
    """Whitespace edge list, ``#`` comments, optional ``p <n> <m>`` header.

    With a header the vertices are ``1..n`` and exactly ``m`` edges must
    follow.  A line with a single token declares an isolated vertex.
    """
    header = None
    verts: list = []
    edges: list[tuple] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "p":
            if header is not None or verts or edges or len(parts) != 3:
                raise ParseError(f"line {lineno}: malformed or misplaced header")
            try:
                header = (int(parts[1]), int(parts[2]))
            except ValueError:
                raise ParseError(f"line {lineno}: header needs two integers") from None
            continue
        if len(parts) > 2:
            raise ParseError(f"line {lineno}: expected 'u v', got {raw!r}")
        toks = [_token(t) for t in parts]
        for t in toks:
            if t not in verts:
                verts.append(t)
        if len(toks) == 2:
            if toks[0] == toks[1]:
                raise ParseError(f"line {lineno}: loop at {toks[0]}")
            edges.append(tuple(toks))
    if header is not None:
        n, m = header
        allowed = set(range(1, n + 1))
        if not set(verts) <= allowed:
            raise ParseError(f"vertices must lie in 1..{n}")
        if len({frozenset(e) for e in edges}) != m:
            raise ParseError(f"header promises {m} edges, found {len(set(map(frozenset, edges)))}")
        verts = list(range(1, n + 1))
    else:
        verts.sort(key=sort_key)
    return Graph(verts, edges)


def load_graph(path: str | Path) -> Graph:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from None
    return parse_edge_list(text)


# -- corpus ----------------------------------------------------------------------


def canonical_form(n: int, edges: Iterable[tuple[int, int]]) -> tuple:
    """Lexicographically smallest sorted edge list over all vertex relabellings."""
    edges = list(edges)
    best = None
    for p in permutations(range(n)):
        form = tuple(sorted(tuple(sorted((p[u], p[v]))) for u, v in edges))
        if best is None or form < best:
            best = form
    return best


def _is_connected(n: int, edges: Sequence[tuple[int, int]]) -> bool:
    adj = [0] * n
    for u, v in edges:
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    seen, frontier = 1, 1
    while frontier:
        nxt = 0
        for i in bits(frontier):
            nxt |= adj[i]
        frontier = nxt & ~seen
        seen |= nxt
    return seen == (1 << n) - 1


def graphs_up_to_iso(n: int, connected: bool = True) -> list[Graph]:
    """All graphs on ``n`` vertices (labelled 1..n) up to isomorphism."""
    pairs = list(combinations(range(n), 2))
    forms = set()
    for m in range(1 << len(pairs)):
        es = [pairs[i] for i in bits(m)]
        if connected and not _is_connected(n, es):
            continue
        forms.add(canonical_form(n, es))
    out = []
    for form in sorted(forms, key=lambda f: (len(f), f)):
        out.append(Graph(range(1, n + 1), [(u + 1, v + 1) for u, v in form]))
    return out


def connected_corpus(sizes: Iterable[int] = (3, 4, 5)) -> list[Graph]:
    return [g for n in sizes for g in graphs_up_to_iso(n, connected=True)]


def graphs_with_edges(max_n: int = 5) -> list[Graph]:
    """Every graph with 2..max_n vertices and at least one edge, up to isomorphism."""
    return [g for n in range(2, max_n + 1) for g in graphs_up_to_iso(n, connected=False)
            if g.edges]


def random_graphs(n: int, count: int, seed: int, p: float = 0.5) -> list[Graph]:
    """``count`` seeded G(n, p) samples, redrawing any sample without edges."""
    rng = random.Random(seed)
    pairs = list(combinations(range(1, n + 1), 2))
    out = []
    while len(out) < count:
        es = [e for e in pairs if rng.random() < p]
        if es:
            out.append(Graph(range(1, n + 1), es))
    return out


def graph_name(G: Graph) -> str:
    return f"n{len(G)}:" + ",".join(f"{label_str(u)}-{label_str(v)}" for u, v in G.edge_list())
