"""Desingularization: tails at sinks and at (truncated) infinite emitters."""

from __future__ import annotations

from dataclasses import dataclass, field

from ..engine.ultra import unique_name
from ..structures import Graph, TruncationExceeded, UEdge, Ultragraph
from ..vertexsets import NAT, Universe, VertexSet


@dataclass
class Desingularization:
    structure: Ultragraph
    frontier: VertexSet
    original: Ultragraph
    shift: int  # old vertex i becomes i + shift
    tails: dict = field(default_factory=dict)  # old vertex -> new tail vertex indices v_1..v_D
    rerouted: dict = field(default_factory=dict)  # old edge index -> new edge indices (f_1..f_{i-1} g_i)
    kept: dict = field(default_factory=dict)  # old edge index -> new edge index
    warnings: list = field(default_factory=list)

    def __iter__(self):
        return iter((self.structure, self.frontier))

    def map_set(self, A: VertexSet) -> VertexSet:
        u = self.structure.universe
        if A.cofinite:
            return VertexSet.cofinite_set(u, [a + self.shift for a in A.items] + list(range(self.shift)))
        return VertexSet.finite(u, [a + self.shift for a in A.items])

    def map_vertex(self, v: int) -> int:
        return v + self.shift


def desingularize(g, depth: int = 3, allow_partial: bool = False) -> Desingularization:
    """Add tails of ``depth`` new vertices to every singular vertex.

    A sink v_0 gets f_1..f_D in a line.  An infinite emitter v_0 whose declared
    out-edges are e_1..e_k gets f_i: v_{i-1} -> v_i and g_i: v_{i-1} -> r(e_i),
    and loses its e_i.  Tail vertices that would need undeclared edges are
    marked frontier.
    """
    ug = g.to_ultragraph() if isinstance(g, Graph) else g
    if depth < 1:
        raise ValueError("depth must be at least 1")
    u = ug.universe
    warnings = []
    frontier_old = set(ug.frontier)
    if u.size is None:
        if not allow_partial:
            raise TruncationExceeded("the sink set of a nat-mode ultragraph is infinite")
        warnings.append("nat mode: tails added to named sinks only")
        candidates = sorted(ug.labels)
    else:
        candidates = list(range(u.size))
    sinks = [v for v in candidates if not ug.out_edges(v) and v not in ug.infinite and v not in frontier_old]
    emitters = sorted(ug.infinite)
    singular = sorted(set(sinks) | set(emitters))
    m = depth * len(singular)

    if u.size is None:
        shift, new_u = m, NAT
        new_index = {}
        nxt = 0
    else:
        shift, new_u = 0, Universe(u.size + m)
        nxt = u.size
    taken = set()
    labels = {}
    for v, lab in ug.labels.items():
        labels[v + shift] = unique_name(lab if not lab.startswith("_") or u.size is not None else f"_{v + shift}", taken)
    if u.size is not None:
        for v in range(u.size):
            if v not in ug.labels:
                labels[v] = unique_name(ug.label(v), taken)

    def mapped(A: VertexSet) -> VertexSet:
        if A.cofinite:
            return VertexSet.cofinite_set(new_u, [a + shift for a in A.items] + list(range(shift)))
        return VertexSet.finite(new_u, [a + shift for a in A.items])

    tails = {}
    for v in singular:
        tv = []
        for i in range(1, depth + 1):
            idx = nxt
            nxt += 1
            labels[idx] = unique_name(f"{ug.label(v)}_t{i}", taken)
            tv.append(idx)
        tails[v] = tv

    enames = set(e.name for e in ug.edges)
    new_edges, kept, rerouted = [], {}, {}
    for i, e in enumerate(ug.edges):
        if e.source in ug.infinite:
            continue
        kept[i] = len(new_edges)
        new_edges.append(UEdge(e.name, e.source + shift, mapped(e.range)))
    frontier_new = {v + shift for v in frontier_old}
    for v in singular:
        chain = [v + shift] + tails[v]
        if v in ug.infinite:
            declared = ug.out_edges(v)
            k = len(declared)
            if k > depth + 1:
                warnings.append(
                    f"{ug.label(v)}: edges beyond the first {depth + 1} of its {k} declared edges are dropped"
                )
            path = []
            for i in range(1, depth + 2):
                if i <= k:
                    ei = declared[i - 1]
                    gi = len(new_edges)
                    new_edges.append(
                        UEdge(unique_name(f"g{i}_{ug.label(v)}", enames), chain[i - 1], mapped(ug.edges[ei].range))
                    )
                    rerouted[ei] = tuple(path) + (gi,)
                if i <= depth:
                    fi = len(new_edges)
                    new_edges.append(
                        UEdge(unique_name(f"f{i}_{ug.label(v)}", enames), chain[i - 1], VertexSet.single(new_u, chain[i]))
                    )
                    path.append(fi)
            for i in range(min(k, depth), depth + 1):
                frontier_new.add(chain[i])
        else:
            for i in range(1, depth + 1):
                new_edges.append(
                    UEdge(unique_name(f"f{i}_{ug.label(v)}", enames), chain[i - 1], VertexSet.single(new_u, chain[i]))
                )
            frontier_new.add(chain[depth])

    declared = [v + shift for v in ug.declared] + [t for tv in tails.values() for t in tv]
    result = Ultragraph(
        ug.name + "_desing",
        new_u,
        labels,
        new_edges,
        declared=declared,
        infinite=(),
        frontier=frontier_new,
    )
    return Desingularization(
        structure=result,
        frontier=VertexSet.finite(new_u, frontier_new),
        original=ug,
        shift=shift,
        tails=tails,
        rerouted=rerouted,
        kept=kept,
        warnings=warnings,
    )
