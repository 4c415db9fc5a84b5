"""Multigraphs, signed graphs and a small library of cubic graphs."""

from __future__ import annotations

import json
import math
from collections import deque
from dataclasses import dataclass
from itertools import combinations

from .errors import CapacityError, InputError
from .field import FieldMatrix
from .matroid import DEFAULT_CAP, RepresentedMatroid

INF = math.inf


@dataclass(frozen=True)
class MultiGraph:
    vertices: tuple[str, ...]
    edges: tuple[tuple[str, str, str], ...]  # (u, v, label); loops and parallels allowed

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(str(v) for v in self.vertices))
        object.__setattr__(self, "edges", tuple((str(u), str(v), str(e)) for u, v, e in self.edges))
        if len(set(self.vertices)) != len(self.vertices):
            raise InputError("duplicate vertex labels")
        vs = set(self.vertices)
        labels = [e for _, _, e in self.edges]
        if len(set(labels)) != len(labels):
            raise InputError("duplicate edge labels")
        for u, v, e in self.edges:
            if u not in vs or v not in vs:
                raise InputError(f"edge {e} has an undeclared endpoint")

    @property
    def edge_labels(self) -> tuple[str, ...]:
        return tuple(e for _, _, e in self.edges)

    def edge(self, label: str) -> tuple[str, str]:
        for u, v, e in self.edges:
            if e == label:
                return u, v
        raise InputError(f"unknown edge {label!r}")

    def degree(self, v: str) -> int:
        return sum((u == v) + (w == v) for u, w, _ in self.edges)

    def is_cubic(self) -> bool:
        return all(self.degree(v) == 3 for v in self.vertices)

    def neighbors(self, v: str) -> list[tuple[str, str]]:
        """(neighbour, edge label) pairs, a loop listed once."""
        out = []
        for a, b, e in self.edges:
            if a == v:
                out.append((b, e))
            elif b == v:
                out.append((a, e))
        return out

    def incident_edges(self, v: str) -> list[str]:
        return [e for a, b, e in self.edges if v in (a, b)]

    def subgraph_edges(self, labels) -> "MultiGraph":
        keep = set(labels)
        return MultiGraph(self.vertices, tuple(x for x in self.edges if x[2] in keep))


@dataclass(frozen=True)
class SignedGraph:
    graph: MultiGraph
    signs: tuple[int, ...]  # aligned with graph.edges

    def __post_init__(self):
        signs = tuple(int(s) for s in self.signs)
        if len(signs) != len(self.graph.edges):
            raise InputError("every edge needs a sign")
        if any(s not in (1, -1) for s in signs):
            raise InputError("signs must be +1 or -1")
        object.__setattr__(self, "signs", signs)

    @classmethod
    def all_positive(cls, g: MultiGraph) -> "SignedGraph":
        return cls(g, (1,) * len(g.edges))

    def sign(self, label: str) -> int:
        return self.signs[self.graph.edge_labels.index(label)]

    def to_dict(self) -> dict:
        return {"vertices": list(self.graph.vertices),
                "edges": [[u, v, e, "+" if s > 0 else "-"] for (u, v, e), s in zip(self.graph.edges, self.signs)]}

    @classmethod
    def from_dict(cls, d: dict) -> "SignedGraph":
        edges, signs = [], []
        for item in d["edges"]:
            if len(item) not in (3, 4):
                raise InputError(f"malformed edge entry {item!r}")
            u, v, e = item[:3]
            s = item[3] if len(item) == 4 else "+"
            if s not in ("+", "-"):
                raise InputError(f"edge sign must be '+' or '-', got {s!r}")
            edges.append((u, v, e))
            signs.append(1 if s == "+" else -1)
        return cls(MultiGraph(tuple(d["vertices"]), tuple(edges)), tuple(signs))

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))

    @classmethod
    def from_json(cls, text: str) -> "SignedGraph":
        return cls.from_dict(json.loads(text))


def graph_from_dict(d: dict) -> MultiGraph:
    return SignedGraph.from_dict(d).graph


def signed_incidence(sg: SignedGraph | MultiGraph, p: int = 3) -> FieldMatrix:
    """One row per vertex, one column per edge.

    Positive edge uv: +1 at u, -1 at v. Negative edge: +1 at both ends.
    Positive loop: zero column. Negative loop: 2 at its vertex.
    """
    if isinstance(sg, MultiGraph):
        sg = SignedGraph.all_positive(sg)
    if p == 2:
        raise InputError("signed incidence needs odd characteristic")
    g = sg.graph
    row = {v: i for i, v in enumerate(g.vertices)}
    cols = []
    for (u, v, _), s in zip(g.edges, sg.signs):
        col = [0] * len(g.vertices)
        if u == v:
            if s < 0:
                col[row[u]] = 2 % p
        else:
            col[row[u]] = 1
            col[row[v]] = 1 if s < 0 else p - 1
        cols.append(col)
    return FieldMatrix.from_columns(p, cols, g.vertices, g.edge_labels)


def frame_matroid(sg: SignedGraph, p: int = 3) -> RepresentedMatroid:
    return RepresentedMatroid(signed_incidence(sg, p))


def cycle_matroid(g: MultiGraph, p: int = 3) -> RepresentedMatroid:
    if p == 2:
        cols = []
        idx = {v: i for i, v in enumerate(g.vertices)}
        for u, v, _ in g.edges:
            col = [0] * len(g.vertices)
            if u != v:
                col[idx[u]] = col[idx[v]] = 1
            cols.append(col)
        return RepresentedMatroid(FieldMatrix.from_columns(2, cols, g.vertices, g.edge_labels))
    return RepresentedMatroid(signed_incidence(SignedGraph.all_positive(g), p))


def girth(g: MultiGraph) -> float:
    """Length of a shortest cycle; infinity for forests."""
    best = INF
    seen_pairs = set()
    for u, v, _ in g.edges:
        if u == v:
            return 1
        key = frozenset((u, v))
        if key in seen_pairs:
            best = 2
        seen_pairs.add(key)
    if best == 2:
        return 2
    for s in g.vertices:
        dist = {s: 0}
        via = {s: None}
        q = deque([s])
        while q:
            x = q.popleft()
            for y, e in g.neighbors(x):
                if y not in dist:
                    dist[y] = dist[x] + 1
                    via[y] = e
                    q.append(y)
                elif via[x] != e:
                    best = min(best, dist[x] + dist[y] + 1)
    return best


def distance(g: MultiGraph, u: str, v: str) -> float:
    for x in (u, v):
        if x not in g.vertices:
            raise InputError(f"unknown vertex {x!r}")
    dist = {u: 0}
    q = deque([u])
    while q:
        x = q.popleft()
        if x == v:
            return dist[x]
        for y, _ in g.neighbors(x):
            if y not in dist:
                dist[y] = dist[x] + 1
                q.append(y)
    return INF


def _binary_subset_ranks(vecs: list[int]) -> list[int]:
    """Rank of every subset of GF(2) vectors given as ints (bitmask indexing)."""
    n = len(vecs)
    ranks = [0] * (1 << n)

    def walk(start, mask, basis, r):
        for j in range(start, n):
            v = vecs[j]
            while v:
                b = basis.get(v.bit_length())
                if b is None:
                    break
                v ^= b
            m = mask | 1 << j
            if v:
                ranks[m] = r + 1
                walk(j + 1, m, {**basis, v.bit_length(): v}, r + 1)
            else:
                ranks[m] = r
                walk(j + 1, m, basis, r)

    walk(0, 0, {}, 0)
    return ranks


def cycle_ranks(g: MultiGraph, cap: int = DEFAULT_CAP) -> list[int]:
    """Rank in M(g) of every edge subset, indexed by bitmask over g.edges."""
    n = len(g.edges)
    if n > cap:
        raise CapacityError(f"{n} edges exceeds the exhaustion cap of {cap}")
    idx = {v: i for i, v in enumerate(g.vertices)}
    vecs = [0 if u == v else (1 << idx[u]) | (1 << idx[v]) for u, v, _ in g.edges]
    return _binary_subset_ranks(vecs)


def cyclic_edge_connectivity(g: MultiGraph, cap: int = DEFAULT_CAP) -> int:
    """Least order of a cyclic separation of M(g).

    A cyclic separation is a partition of the edges with a circuit on each
    side; its order is r(A) + r(B) - r(E) + 1. A graph with no such partition
    (K4, K_{3,3}, ...) gets its cycle rank |E| - r(E).
    """
    ranks = cycle_ranks(g, cap)
    n = len(g.edges)
    full = (1 << n) - 1
    r = ranks[full]
    best = None
    for a in range(1, 1 << n, 2):
        b = full ^ a
        if not b:
            continue
        ra, rb = ranks[a], ranks[b]
        if ra < a.bit_count() and rb < b.bit_count():
            order = ra + rb - r + 1
            if best is None or order < best:
                best = order
    if best is None:
        return n - r
    return best


# --- library ------------------------------------------------------------

def _from_pairs(n: int, pairs) -> MultiGraph:
    vertices = tuple(f"v{i}" for i in range(n))
    edges = tuple((f"v{a}", f"v{b}", f"v{a}-v{b}") for a, b in pairs)
    return MultiGraph(vertices, edges)


def _petersen_pairs():
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return outer + spokes + inner


def _heawood_pairs():
    # LCF notation [5, -5]^7
    pairs = [(i, (i + 1) % 14) for i in range(14)]
    for i in range(0, 14, 2):
        pairs.append((i, (i + 5) % 14))
    return pairs


def _cube_pairs():
    return [(a, b) for a in range(8) for b in range(a + 1, 8) if bin(a ^ b).count("1") == 1]


LIBRARY = {
    "K4": lambda: _from_pairs(4, list(combinations(range(4), 2))),
    "K33": lambda: _from_pairs(6, [(a, b) for a in range(3) for b in range(3, 6)]),
    "Prism": lambda: _from_pairs(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 3), (1, 4), (2, 5)]),
    "Cube": lambda: _from_pairs(8, _cube_pairs()),
    "Petersen": lambda: _from_pairs(10, _petersen_pairs()),
    "Heawood": lambda: _from_pairs(14, _heawood_pairs()),
}


def library_graph(name: str) -> MultiGraph:
    try:
        return LIBRARY[name]()
    except KeyError:
        raise InputError(f"unknown library graph {name!r}; known: {sorted(LIBRARY)}") from None


def complete_graph(n: int, prefix: str = "v") -> MultiGraph:
    vertices = tuple(f"{prefix}{i}" for i in range(n))
    edges = tuple((f"{prefix}{a}", f"{prefix}{b}", f"{prefix}{a}-{prefix}{b}") for a, b in combinations(range(n), 2))
    return MultiGraph(vertices, edges)


def k4_signed_graph() -> SignedGraph:
    """Three vertices, each pair joined by one positive and one negative edge."""
    g = MultiGraph(("1", "2", "3"), (
        ("1", "2", "n12"), ("2", "1", "p12"),
        ("3", "2", "p23"), ("2", "3", "n23"),
        ("1", "3", "p13"), ("3", "1", "n13"),
    ))
    return SignedGraph(g, (-1, 1, 1, -1, 1, -1))


def balanced_components(sg: SignedGraph) -> int:
    """Connected components (vertices count as components) with no negative cycle."""
    g = sg.graph
    comp_of: dict[str, int] = {}
    comps = []
    for v in g.vertices:
        if v in comp_of:
            continue
        comp_of[v] = len(comps)
        members = [v]
        q = [v]
        while q:
            x = q.pop()
            for y, _ in g.neighbors(x):
                if y not in comp_of:
                    comp_of[y] = comp_of[v]
                    members.append(y)
                    q.append(y)
        comps.append(members)
    count = 0
    for members in comps:
        # try to 2-colour by switching so every edge becomes positive
        side = {members[0]: 1}
        ok = True
        q = [members[0]]
        while q and ok:
            x = q.pop()
            for (a, b, e), s in zip(g.edges, sg.signs):
                if x not in (a, b):
                    continue
                if a == b:
                    if s < 0:
                        ok = False
                    continue
                y = b if a == x else a
                want = side[x] * s
                if y not in side:
                    side[y] = want
                    q.append(y)
                elif side[y] != want:
                    ok = False
        count += ok
    return count
