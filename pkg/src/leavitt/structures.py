"""Graphs, ultragraphs, paths and cycles.

Vertices are integer indices with string labels; edges keep their declaration
order, which is the enumeration e_1, e_2, ... used by every construction.
Graph edges point at one vertex, ultragraph edges at a nonempty vertex set.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable

from .vertexsets import NAT, Universe, VertexSet


class TruncationExceeded(RuntimeError):
    """A computation would need an infinite part of a structure."""


ANON = re.compile(r"_(\d+)$")


@dataclass(frozen=True)
class GEdge:
    name: str
    source: int
    target: int


@dataclass(frozen=True)
class UEdge:
    name: str
    source: int
    range: VertexSet


@dataclass(frozen=True)
class Violation:
    location: str
    message: str

    def __str__(self):
        return f"{self.location}: {self.message}"


class Structure:
    """Shared plumbing for graphs and ultragraphs."""

    kind = ""

    def __init__(self, name, universe, labels, edges, declared=None, infinite=(), frontier=()):
        self.name = name
        self.universe = universe
        self.labels = dict(labels)  # index -> label
        self._by_label = {lab: i for i, lab in self.labels.items()}
        self.edges = tuple(edges)
        self.declared = frozenset(self.labels if declared is None else declared)
        self.infinite = frozenset(infinite)
        self.frontier = frozenset(frontier)
        self._edge_index = {e.name: i for i, e in enumerate(self.edges)}
        self._out = {}
        for i, e in enumerate(self.edges):
            self._out.setdefault(e.source, []).append(i)
        self._cache = {}

    # labels ---------------------------------------------------------------
    def label(self, v: int) -> str:
        lab = self.labels.get(v)
        return lab if lab is not None else f"_{v}"

    def index(self, label: str) -> int:
        if label in self._by_label:
            return self._by_label[label]
        m = ANON.match(label)
        if m and self.universe.size is None:
            return int(m.group(1))
        raise KeyError(f"unknown vertex {label!r}")

    def has_vertex(self, label: str) -> bool:
        try:
            self.index(label)
            return True
        except KeyError:
            return False

    def vertex_indices(self) -> list:
        """Explicit vertices: all of them for a finite universe, the labelled ones otherwise."""
        if self.universe.size is not None:
            return list(range(self.universe.size))
        return sorted(self.labels)

    # edges ----------------------------------------------------------------
    def edge_index(self, e) -> int:
        if isinstance(e, int):
            return e
        return self._edge_index[e]

    def edge(self, e):
        return self.edges[self.edge_index(e)]

    def source(self, e) -> int:
        return self.edge(e).source

    def out_edges(self, v: int) -> list:
        return list(self._out.get(v, ()))

    def sources(self) -> frozenset:
        return frozenset(self._out)

    @property
    def no_lp4(self) -> frozenset:
        """Vertices carrying no sum relation: declared infinite emitters and frontier vertices."""
        return self.infinite | self.frontier

    def is_regular(self, v: int) -> bool:
        return v in self._out and v not in self.no_lp4

    def is_sink(self, v: int) -> bool:
        return v not in self._out and v not in self.infinite

    # identity ---------------------------------------------------------------
    def key(self):
        return (
            self.kind,
            self.name,
            self.universe,
            tuple(sorted(self.labels.items())),
            self.edges,
            tuple(sorted(self.declared)),
            tuple(sorted(self.infinite)),
            tuple(sorted(self.frontier)),
        )

    def __eq__(self, other):
        return isinstance(other, Structure) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())


class Graph(Structure):
    kind = "graph"

    def __init__(self, name, labels, edges, declared=None, infinite=(), frontier=()):
        labels = list(labels)
        super().__init__(
            name,
            Universe(len(labels)),
            dict(enumerate(labels)),
            edges,
            declared=declared,
            infinite=infinite,
            frontier=frontier,
        )

    @classmethod
    def build(cls, name, vertices, edges, infinite=(), frontier=()):
        """Build from labels: ``edges`` is a list of ``(name, source, target)``."""
        vertices = list(vertices)
        idx = {v: i for i, v in enumerate(vertices)}
        out = [GEdge(n, idx[s], idx[t]) for n, s, t in edges]
        return cls(name, vertices, out, infinite=[idx[v] for v in infinite], frontier=[idx[v] for v in frontier])

    @property
    def vertex_count(self) -> int:
        return self.universe.size

    def target(self, e) -> int:
        return self.edge(e).target

    def to_ultragraph(self) -> "Ultragraph":
        """The graph seen as an ultragraph with singleton ranges."""
        u = self.universe
        edges = [UEdge(e.name, e.source, VertexSet.single(u, e.target)) for e in self.edges]
        return Ultragraph(
            self.name, u, self.labels, edges, declared=self.declared, infinite=self.infinite, frontier=self.frontier
        )

    def __repr__(self):
        return f"Graph({self.name!r}, {self.vertex_count} vertices, {len(self.edges)} edges)"


class Ultragraph(Structure):
    kind = "ultragraph"

    def __init__(self, name, universe, labels, edges, declared=None, infinite=(), frontier=(), sigma_table=None):
        super().__init__(name, universe, labels, edges, declared=declared, infinite=infinite, frontier=frontier)
        self.sigma_table = dict(sigma_table) if sigma_table else {}

    @classmethod
    def build(cls, name, vertices, edges, nat=False, infinite=(), frontier=(), sigma_table=None):
        """Build from labels.

        ``edges`` holds ``(name, source, target)`` where target is a label, an
        iterable of labels, or ``("cofinite", labels)``.  In nat mode vertices
        are indexed in order of first appearance.
        """
        vertices = list(vertices)
        idx = {v: i for i, v in enumerate(vertices)}

        def ref(v):
            if v not in idx:
                idx[v] = len(idx)
            return idx[v]

        raw = []
        for n, s, t in edges:
            si = ref(s)
            if isinstance(t, str):
                raw.append((n, si, "fin", [ref(t)]))
            elif isinstance(t, tuple) and len(t) == 2 and t[0] == "cofinite":
                raw.append((n, si, "cof", [ref(x) for x in t[1]]))
            else:
                raw.append((n, si, "fin", [ref(x) for x in t]))
        universe = NAT if nat else Universe(len(idx))
        out = []
        for n, si, mode, items in raw:
            vs = VertexSet.finite(universe, items) if mode == "fin" else VertexSet.cofinite_set(universe, items)
            out.append(UEdge(n, si, vs))
        labels = {i: v for v, i in idx.items()}
        return cls(
            name,
            universe,
            labels,
            out,
            declared=[idx[v] for v in vertices],
            infinite=[idx[v] for v in infinite],
            frontier=[idx[v] for v in frontier],
            sigma_table=sigma_table,
        )

    def range(self, e) -> VertexSet:
        return self.edge(e).range

    def all_vertices(self) -> VertexSet:
        return VertexSet.everything(self.universe)

    def vset(self, labels: Iterable[str]) -> VertexSet:
        return VertexSet.finite(self.universe, [self.index(v) for v in labels])

    def key(self):
        return super().key() + (tuple(sorted(self.sigma_table.items())),)

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"Ultragraph({self.name!r}, {self.universe}, {len(self.edges)} edges)"


def as_ultragraph(g) -> Ultragraph:
    return g.to_ultragraph() if isinstance(g, Graph) else g


def edge_range(g, e) -> VertexSet:
    """Range of an edge as a vertex set, for graphs and ultragraphs alike."""
    if isinstance(g, Graph):
        return VertexSet.single(g.universe, g.target(e))
    return g.range(e)


# paths ------------------------------------------------------------------------


@dataclass(frozen=True)
class Path:
    """A path: edge indices plus a base used when the path has length 0.

    For graphs the base of a length-0 path is a vertex; for ultragraphs it is a
    vertex set.  For longer paths ``base`` is the source vertex.
    """

    base: object
    edges: tuple = field(default=())

    def __len__(self):
        return len(self.edges)

    def names(self, g) -> list:
        return [g.edges[i].name for i in self.edges]


def composable(g, first: int, second: int) -> bool:
    """Whether edge ``second`` may follow edge ``first``."""
    if isinstance(g, Graph):
        return g.edges[second].source == g.edges[first].target
    return g.edges[second].source in g.edges[first].range


def is_path(g, edges) -> bool:
    return all(composable(g, a, b) for a, b in zip(edges, edges[1:]))


def path_source(g, edges, base=None):
    return g.edges[edges[0]].source if edges else base


def path_range(g, edges, base=None):
    """r(alpha): a vertex for graphs, a vertex set for ultragraphs."""
    if not edges:
        return base
    last = g.edges[edges[-1]]
    return last.target if isinstance(g, Graph) else last.range


def concatenate(g, p: Path, q: Path) -> Path:
    if not p.edges:
        return q
    if not q.edges:
        return p
    if not composable(g, p.edges[-1], q.edges[0]):
        raise ValueError("paths do not compose")
    return Path(p.base, p.edges + q.edges)


def is_cycle(g, edges) -> bool:
    if not edges or not is_path(g, edges):
        return False
    s = g.edges[edges[0]].source
    last = g.edges[edges[-1]]
    return s == last.target if isinstance(g, Graph) else s in last.range


def _has_cycle(g) -> bool:
    n = len(g.edges)
    # any cycle contains one visiting each source vertex once, so length <= #edges
    for start in range(n):
        stack = [(start,)]
        while stack:
            p = stack.pop()
            if is_cycle(g, p):
                return True
            if len(p) >= n:
                continue
            for j in range(n):
                if composable(g, p[-1], j):
                    stack.append(p + (j,))
    return False


def enumerate_paths(g, start, max_len=None) -> list:
    """All paths from vertex ``start`` of length at most ``max_len``, in DFS order by edge index."""
    if max_len is None:
        if _has_cycle(g):
            raise TruncationExceeded("path enumeration is infinite without a length bound")
        max_len = len(g.edges)
    out = [Path(start, ())]

    def grow(p):
        if len(p) >= max_len:
            return
        for j in range(len(g.edges)):
            if composable(g, p[-1], j):
                q = p + (j,)
                out.append(Path(start, q))
                grow(q)

    for i in g.out_edges(start):
        out.append(Path(start, (i,)))
        grow((i,))
    return out


def find_cycles(g, max_len: int) -> list:
    """All cycles of length at most ``max_len``, each based at its source vertex."""
    if max_len < 1:
        raise ValueError("max_len must be at least 1")
    found = []
    for v in sorted(g.sources()):
        for p in enumerate_paths(g, v, max_len):
            if p.edges and is_cycle(g, p.edges):
                found.append(p)
    return found


def singular_vertices(g) -> VertexSet:
    """Sinks together with infinite emitters."""
    u = g.universe
    if u.size is None:
        return VertexSet.cofinite_set(u, g.sources() - g.infinite)
    return VertexSet.finite(u, [v for v in range(u.size) if g.is_sink(v) or v in g.infinite])


def validate(g) -> list:
    """Every violated structural invariant, as a list of ``Violation`` records."""
    out = []
    names = {}
    for i, e in enumerate(g.edges):
        where = f"edge {e.name}"
        if e.name in names:
            out.append(Violation(where, f"duplicate edge name (also edge #{names[e.name] + 1})"))
        names.setdefault(e.name, i)
        ends = [e.source] + ([e.target] if isinstance(g, Graph) else [])
        if isinstance(g, Ultragraph):
            if e.range.universe != g.universe:
                out.append(Violation(where, "range lives in another universe"))
            if e.range.is_empty:
                out.append(Violation(where, "empty range"))
            if e.range.is_finite:
                ends += list(e.range.items)
            else:
                ends += list(e.range.items)
        for v in ends:
            if g.universe.size is not None and not 0 <= v < g.universe.size:
                out.append(Violation(where, f"vertex index {v} outside the universe"))
            elif v in g.labels and v not in g.declared:
                out.append(Violation(where, f"unknown vertex {g.label(v)}"))
            elif g.universe.size is not None and v not in g.labels:
                out.append(Violation(where, f"unknown vertex {g.label(v)}"))
    for v in sorted(g.infinite):
        if v not in g.declared:
            out.append(Violation(f"vertex {g.label(v)}", "infinite-emitter flag on an unknown vertex"))
    if isinstance(g, Ultragraph):
        for lab, bits in g.sigma_table.items():
            if not g.has_vertex(lab):
                out.append(Violation("sigma", f"unknown vertex {lab}"))
            if not bits or set(bits) - {"0", "1"}:
                out.append(Violation("sigma", f"bad word {bits!r} for {lab}"))
    # dedupe while keeping order
    seen = set()
    uniq = []
    for v in out:
        if (v.location, v.message) not in seen:
            seen.add((v.location, v.message))
            uniq.append(v)
    return uniq


def subgraph_F(eg) -> Graph:
    """The subgraph of E_G with every vertex but only the e_v and e_omega edges."""
    g = eg.graph
    keep = [e for e in g.edges if e.name in eg.f_edge_names]
    return Graph(g.name + "_F", [g.label(i) for i in range(g.vertex_count)], keep, frontier=g.frontier)
