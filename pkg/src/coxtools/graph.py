"""Coxeter graphs: data model, ``.cox`` text format, connectivity and
label-preserving isomorphism search.

A Coxeter graph is a simple edge-labelled graph with labels in
{3, 4, ...} or infinity; a missing edge means the two generators
commute (label 2), and a vertex paired with itself has label 1.  The
vertex order given at construction is the canonical index order used
everywhere downstream (root coordinates, element ids).
"""

from __future__ import annotations

import itertools
from typing import Iterable, Iterator, Optional, Sequence

from .errors import CapExceededError, GraphParseError

# Sentinel for the label m = infinity; serialized as the token "inf".
INF = float("inf")

ISO_VERTEX_CAP = 64


class CoxeterGraph:
    """Immutable edge-labelled graph defining a Coxeter system.

    ``vertices`` is an ordered tuple of distinct names; ``edges`` maps
    frozenset pairs to labels >= 3 (or INF).  Pairs that are absent
    have label 2.
    """

    __slots__ = ("vertices", "_index", "_labels", "_edge_order", "_adj", "_hash")

    def __init__(self, vertices: Sequence[str], edges: Iterable[tuple[str, str, object]] = ()):
        vertices = tuple(str(v) for v in vertices)
        if len(set(vertices)) != len(vertices):
            raise ValueError("duplicate vertex name")
        self.vertices = vertices
        self._index = {v: i for i, v in enumerate(vertices)}
        labels: dict[frozenset, object] = {}
        order: list[tuple[str, str]] = []
        adj: dict[str, list[str]] = {v: [] for v in vertices}
        for a, b, m in edges:
            if a not in self._index or b not in self._index:
                raise ValueError(f"unknown vertex in edge ({a}, {b})")
            if a == b:
                raise ValueError(f"self-edge at {a}")
            if m != INF:
                if not isinstance(m, int) or m < 3:
                    raise ValueError(f"edge label must be an integer >= 3 or inf, got {m!r}")
            key = frozenset((a, b))
            if key in labels:
                raise ValueError(f"duplicate edge ({a}, {b})")
            labels[key] = m
            order.append((a, b))
            adj[a].append(b)
            adj[b].append(a)
        self._labels = labels
        self._edge_order = tuple(order)
        self._adj = {v: tuple(ns) for v, ns in adj.items()}
        self._hash = hash((self.vertices, frozenset(labels.items())))

    # -- basic queries ----------------------------------------------------

    def m(self, s: str, t: str) -> object:
        """Coxeter matrix entry m(s, t): 1 on the diagonal, 2 off-graph."""
        if s == t:
            if s not in self._index:
                raise KeyError(s)
            return 1
        return self._labels.get(frozenset((s, t)), 2)

    def index(self, v: str) -> int:
        return self._index[v]

    def __contains__(self, v: str) -> bool:
        return v in self._index

    def __len__(self) -> int:
        return len(self.vertices)

    def neighbors(self, v: str) -> tuple[str, ...]:
        return self._adj[v]

    def edges(self) -> Iterator[tuple[str, str, object]]:
        for a, b in self._edge_order:
            yield a, b, self._labels[frozenset((a, b))]

    def degree(self, v: str) -> int:
        return len(self._adj[v])

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, CoxeterGraph)
            and self.vertices == other.vertices
            and self._labels == other._labels
        )

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        es = ", ".join(f"{a}-{b}:{m}" for a, b, m in self.edges())
        return f"CoxeterGraph({list(self.vertices)}, [{es}])"

    # -- derived graphs ---------------------------------------------------

    def subgraph(self, keep: Iterable[str]) -> "CoxeterGraph":
        """Full subgraph on ``keep``, in canonical vertex order."""
        keep = set(keep)
        verts = [v for v in self.vertices if v in keep]
        missing = keep - set(verts)
        if missing:
            raise ValueError(f"unknown vertices {sorted(missing)}")
        es = [(a, b, m) for a, b, m in self.edges() if a in keep and b in keep]
        return CoxeterGraph(verts, es)

    def relabel(self, mapping: dict[str, str]) -> "CoxeterGraph":
        verts = [mapping[v] for v in self.vertices]
        es = [(mapping[a], mapping[b], m) for a, b, m in self.edges()]
        return CoxeterGraph(verts, es)

    @staticmethod
    def disjoint_union(*graphs: "CoxeterGraph") -> "CoxeterGraph":
        """Concatenate graphs; vertex names must not collide."""
        verts: list[str] = []
        es: list[tuple[str, str, object]] = []
        for g in graphs:
            verts.extend(g.vertices)
            es.extend(g.edges())
        return CoxeterGraph(verts, es)


# -- text format -----------------------------------------------------------


def parse_graph(text: str) -> CoxeterGraph:
    """Parse the ``.cox`` line format.

    Grammar: optional ``#`` comment lines; exactly one
    ``vertices: name1 name2 ...`` line first; then ``edge a b label``
    lines with label an integer >= 3 or the token ``inf``.
    """
    vertices: Optional[list[str]] = None
    edges: list[tuple[str, str, object]] = []
    seen = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if vertices is None:
            if not line.startswith("vertices:"):
                raise GraphParseError(lineno, "expected 'vertices: ...' as first declaration")
            names = line[len("vertices:"):].split()
            if not names:
                raise GraphParseError(lineno, "empty vertex list")
            dupes = {n for n in names if names.count(n) > 1}
            if dupes:
                raise GraphParseError(lineno, f"duplicate vertex {sorted(dupes)[0]!r}")
            vertices = names
            continue
        parts = line.split()
        if parts[0] == "vertices:":
            raise GraphParseError(lineno, "second 'vertices:' line")
        if parts[0] != "edge" or len(parts) != 4:
            raise GraphParseError(lineno, f"malformed line {line!r}")
        _, a, b, lab = parts
        for name in (a, b):
            if name not in vertices:
                raise GraphParseError(lineno, f"unknown vertex {name!r} in edge")
        if a == b:
            raise GraphParseError(lineno, f"self-edge at {a!r}")
        if lab == "inf":
            m: object = INF
        else:
            try:
                m = int(lab)
            except ValueError:
                raise GraphParseError(lineno, f"bad label {lab!r}") from None
            if m < 3:
                raise GraphParseError(lineno, f"label {m} < 3 (labels 1 and 2 are implicit)")
        key = frozenset((a, b))
        if key in seen:
            raise GraphParseError(lineno, f"duplicate edge ({a}, {b})")
        seen.add(key)
        edges.append((a, b, m))
    if vertices is None:
        raise GraphParseError(1, "missing 'vertices:' line")
    return CoxeterGraph(vertices, edges)


def render_graph(g: CoxeterGraph) -> str:
    """Canonical serializer; ``parse_graph(render_graph(g)) == g``."""
    lines = ["vertices: " + " ".join(g.vertices)]
    for a, b, m in g.edges():
        lines.append(f"edge {a} {b} {'inf' if m == INF else m}")
    return "\n".join(lines) + "\n"


# -- connectivity -----------------------------------------------------------


def components(g: CoxeterGraph, odd_only: bool = False) -> list[tuple[str, ...]]:
    """Connected components, ordered by smallest vertex index; with
    ``odd_only`` the even- and inf-labelled edges are removed first."""

    def linked(a: str, b: str) -> bool:
        m = g.m(a, b)
        if m == 2:
            return False
        if not odd_only:
            return True
        return m != INF and m % 2 == 1

    out: list[tuple[str, ...]] = []
    seen: set[str] = set()
    for start in g.vertices:
        if start in seen:
            continue
        comp = {start}
        queue = [start]
        while queue:
            v = queue.pop()
            for w in g.neighbors(v):
                if w not in comp and linked(v, w):
                    comp.add(w)
                    queue.append(w)
        seen |= comp
        out.append(tuple(v for v in g.vertices if v in comp))
    return out


def is_connected(g: CoxeterGraph) -> bool:
    return len(g) > 0 and len(components(g)) == 1


# -- labelled isomorphism ----------------------------------------------------


def _vertex_signature(g: CoxeterGraph, v: str):
    return tuple(sorted((str(g.m(v, w)) for w in g.neighbors(v))))


def graph_isomorphisms(
    g1: CoxeterGraph, g2: CoxeterGraph, all_maps: bool = False
) -> list[dict[str, str]]:
    """Label-preserving bijections g1 -> g2 by backtracking.

    Returns all of them with ``all_maps`` (so ``g1 is g2`` yields
    Aut(g1)), otherwise at most one.  Pruning is on (degree, multiset
    of incident labels).
    """
    if len(g1) > ISO_VERTEX_CAP or len(g2) > ISO_VERTEX_CAP:
        raise CapExceededError(f"isomorphism search capped at {ISO_VERTEX_CAP} vertices")
    if len(g1) != len(g2):
        return []
    sig2: dict = {}
    for v in g2.vertices:
        sig2.setdefault((g2.degree(v), _vertex_signature(g2, v)), []).append(v)
    candidates = {}
    for v in g1.vertices:
        cands = sig2.get((g1.degree(v), _vertex_signature(g1, v)), [])
        if not cands:
            return []
        candidates[v] = cands
    # Assign scarce vertices first.
    order = sorted(g1.vertices, key=lambda v: (len(candidates[v]), g1.index(v)))
    found: list[dict[str, str]] = []
    mapping: dict[str, str] = {}
    used: set[str] = set()

    def extend(k: int) -> bool:
        if k == len(order):
            found.append(dict(mapping))
            return not all_maps
        v = order[k]
        for w in candidates[v]:
            if w in used:
                continue
            ok = all(g1.m(v, u) == g2.m(w, mapping[u]) for u in mapping)
            if not ok:
                continue
            mapping[v] = w
            used.add(w)
            if extend(k + 1):
                return True
            del mapping[v]
            used.discard(w)
        return False

    extend(0)
    return found


def graph_isomorphism(g1: CoxeterGraph, g2: CoxeterGraph) -> Optional[dict[str, str]]:
    """First label-preserving bijection, or None."""
    maps = graph_isomorphisms(g1, g2, all_maps=False)
    return maps[0] if maps else None


def automorphisms(g: CoxeterGraph) -> list[dict[str, str]]:
    return graph_isomorphisms(g, g, all_maps=True)


def perp(g: CoxeterGraph, subset: Iterable[str]) -> tuple[str, ...]:
    """Vertices outside ``subset`` adjacent (m >= 3) to none of it."""
    inside = set(subset)
    for v in inside:
        if v not in g:
            raise ValueError(f"unknown vertex {v!r}")
    return tuple(
        v for v in g.vertices
        if v not in inside and all(g.m(v, t) == 2 for t in inside)
    )


def distance(g: CoxeterGraph, s: str, targets: Iterable[str]) -> int:
    """Graph distance from s to the nearest vertex of ``targets``."""
    targets = set(targets)
    if s in targets:
        return 0
    seen = {s}
    frontier = [s]
    d = 0
    while frontier:
        d += 1
        nxt = []
        for v in frontier:
            for w in g.neighbors(v):
                if w in targets:
                    return d
                if w not in seen:
                    seen.add(w)
                    nxt.append(w)
        frontier = nxt
    return -1


def all_subsets(g: CoxeterGraph) -> Iterator[tuple[str, ...]]:
    """All vertex subsets in (size, canonical index) order."""
    for r in range(len(g.vertices) + 1):
        yield from itertools.combinations(g.vertices, r)
