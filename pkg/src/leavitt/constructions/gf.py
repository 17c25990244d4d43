"""The finite graph G_F attached to a finite edge set F of an ultragraph."""

from __future__ import annotations

from itertools import combinations

from ..engine.ultra import unique_name
from ..structures import GEdge, Graph, Ultragraph
from ..vertexsets import VertexSet


def r_of(ug: Ultragraph, inside, outside) -> VertexSet:
    """Common range of ``inside`` minus the ranges of ``outside``."""
    out = VertexSet.everything(ug.universe)
    for e in inside:
        out = out & ug.edges[e].range
    for f in outside:
        out = out - ug.edges[f].range
    return out


def gf_parts(ug: Ultragraph, F):
    """Vertices (``("e", i)`` or ``("X", subset)``) and edges (``(i, vertex)``) of G_F."""
    F = [ug.edge_index(e) for e in F]
    if len(set(F)) != len(F):
        raise ValueError("F has repeated edges")
    fset = set(F)
    vertices = [("e", e) for e in F]
    for k in range(1, len(F) + 1):
        for X in combinations(F, k):
            rest = [f for f in F if f not in X]
            where = r_of(ug, X, rest)
            emitters = {i for i, e in enumerate(ug.edges) if e.source in where}
            if not emitters <= fset:
                vertices.append(("X", X))
    edges = []
    for e in F:
        for f in F:
            if ug.edges[f].source in ug.edges[e].range:
                edges.append((e, ("e", f)))
    for vx in vertices:
        if vx[0] == "X":
            for e in vx[1]:
                edges.append((e, vx))
    return F, vertices, edges


def build_GF(ug: Ultragraph, F) -> Graph:
    F, vertices, edges = gf_parts(ug, F)
    taken = set()
    labels = []
    index = {}
    for vx in vertices:
        if vx[0] == "e":
            name = ug.edges[vx[1]].name
        else:
            name = "X_" + "_".join(ug.edges[e].name for e in vx[1])
        index[vx] = len(labels)
        labels.append(unique_name(name, taken))
    enames = set()
    out = []
    for e, vx in edges:
        src = index[("e", e)]
        out.append(GEdge(unique_name(f"{ug.edges[e].name}__{labels[index[vx]]}", enames), src, index[vx]))
    g = Graph(f"{ug.name}_GF", labels, out)
    g.gf_vertices = vertices
    g.gf_edges = edges
    return g
