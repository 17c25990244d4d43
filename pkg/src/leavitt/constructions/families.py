"""Named generator families, each packaged as a GeneratorMap."""

from __future__ import annotations

from ..engine import ELEngine, GeneratorMap, GraphEngine, MissingGeneratorAssignment, UltraEngine
from ..engine.ultra import identification_graph
from ..rings import Z
from ..structures import Graph, Ultragraph
from ..vertexsets import VertexSet, disjointify, generate_G0
from .desing import Desingularization, desingularize
from .eg import EGData, NotReachable, alpha_path
from .gf import build_GF, gf_parts


def _family(name, source, target, source_kind, **kw):
    m = GeneratorMap(name, source, target, **kw)
    m.source_kind = source_kind
    m.frontier_vertices = set()
    m.frontier_edges = set()
    m.notes = []
    return m


def generator_family(structure, ring=Z, kind=None):
    """The identity family of a structure inside its own algebra."""
    kind = kind or ("graph" if isinstance(structure, Graph) else "ultragraph")
    if kind == "graph":
        eng = GraphEngine(structure, ring)
    elif kind == "ultragraph":
        eng = UltraEngine(structure, ring)
    else:
        eng = ELEngine(structure, ring)
    src = eng.structure
    m = _family(
        f"generators({structure.name})",
        src,
        eng,
        kind,
        vertex={v: eng.vertex(v) for v in src.vertex_indices()},
        edge={i: eng.edge(i) for i in range(len(src.edges))},
        sets=(lambda A: eng.p(A)) if kind == "ultragraph" else None,
        unit=eng.one() if kind == "exel-laca" else None,
    )
    return m


def glugl(g: Graph, ring=Z):
    """A graph's algebra receives its ultragraph family: P_A = sum of q_v, S_e = t_e."""
    eng = GraphEngine(g, ring)
    return _family(
        f"glugl({g.name})",
        g.to_ultragraph(),
        eng,
        "ultragraph",
        vertex={v: eng.vertex(v) for v in range(g.vertex_count)},
        edge={i: eng.edge(i) for i in range(len(g.edges))},
    )


def gegiso(ug: Ultragraph, ring=Z):
    """Graph family of the identification graph inside L(ug): T_(e,v) = s_e p_v."""
    E, emap = identification_graph(ug)
    ue = UltraEngine(ug, ring)
    edge = {gi: ue.edge(e) * ue.vertex(v) for (e, v), gi in emap.items()}
    return _family(
        f"gegiso({ug.name})",
        E,
        ue,
        "graph",
        vertex={v: ue.vertex(v) for v in range(E.vertex_count)},
        edge=edge,
    )


def gegiso_inverse(ug: Ultragraph, ring=Z):
    """Ultragraph family inside the identification graph's algebra."""
    E, emap = identification_graph(ug)
    ge = GraphEngine(E, ring)
    edge = {}
    for (e, v), gi in emap.items():
        edge[e] = edge.get(e, ge.zero()) + ge.edge(gi)
    return _family(
        f"gegiso_inverse({ug.name})",
        ug,
        ge,
        "ultragraph",
        vertex={v: ge.vertex(v) for v in range(E.vertex_count)},
        edge=edge,
    )


def llgex2(ug: Ultragraph, ring=Z):
    """Exel-Laca family inside L(ug): p_v -> p_v, s_e -> s_e."""
    ue = UltraEngine(ug, ring)
    m = _family(
        f"llgex2({ug.name})",
        ug,
        ue,
        "exel-laca",
        vertex={v: ue.vertex(v) for v in ug.vertex_indices()},
        edge={i: ue.edge(i) for i in range(len(ug.edges))},
        unit=ue.unit() if ug.universe.size is not None else None,
    )
    return m


def _el_set_image(el: ELEngine, A: VertexSet):
    ug = el.structure
    if A.is_finite:
        out = el.zero()
        for v in A.items:
            out = out + el.vertex(v)
        return out
    for i, e in enumerate(ug.edges):
        if e.range.cofinite:
            out = el.range_projection(i)
            for v in (e.range - A).items:
                out = out - el.vertex(v)
            for v in (A - e.range).items:
                out = out + el.vertex(v)
            return out
    raise MissingGeneratorAssignment(f"cofinite set outside the set algebra of {ug.name}")


def llgex(ug: Ultragraph, ring=Z):
    """Ultragraph family inside the Exel-Laca algebra: P_A through Q_e and the p_v."""
    el = ELEngine(ug, ring)
    return _family(
        f"llgex({ug.name})",
        ug,
        el,
        "ultragraph",
        vertex={v: el.vertex(v) for v in ug.vertex_indices()},
        edge={i: el.edge(i) for i in range(len(ug.edges))},
        sets=lambda A: _el_set_image(el, A),
    )


def lfg(ug: Ultragraph, F, ring=Z):
    """Leavitt G_F-family in the Exel-Laca algebra of ``ug``."""
    el = ELEngine(ug, ring)
    gf = build_GF(ug, F)
    F, vertices, edges = gf_parts(ug, F)
    one = el.one()
    proj = {e: el.edge(e) * el.ghost(e) for e in F}
    leftover = one
    for e in F:
        leftover = leftover - proj[e]
    images = {}
    for i, vx in enumerate(vertices):
        if vx[0] == "e":
            images[i] = proj[vx[1]]
        else:
            x = one
            for e in F:
                q = el.range_projection(e)
                x = x * (q if e in vx[1] else one - q)
            images[i] = x * leftover
    index = {vx: i for i, vx in enumerate(vertices)}
    edge = {j: el.edge(e) * images[index[vx]] for j, (e, vx) in enumerate(edges)}
    return _family(f"lfg({ug.name})", gf, el, "graph", vertex=images, edge=edge)


pi_F = lfg


def lex3(eg: EGData, ring=Z):
    """Exel-Laca family of the ultragraph inside L(E_G).

    Generators whose alpha-paths leave the truncation window are left out;
    edges with an incomplete X-table are marked as frontier.
    """
    ge = GraphEngine(eg.graph, ring)
    ug = eg.ultragraph
    alphas = {}

    def alpha(x):
        if x not in alphas:
            try:
                p = alpha_path(eg, x)
                alphas[x] = ge.path(p.edges, p.base)
            except NotReachable:
                alphas[x] = None
        return alphas[x]

    vertex = {}
    for v in ug.vertex_indices():
        if v in eg.vertex_of:
            a = alpha(v)
            if a is not None:
                vertex[v] = a * a.star()
    edge = {}
    skipped = []
    for n, items in eg.x_table.items():
        s = ug.edges[n].source
        a = alpha(s) if s in eg.vertex_of else None
        if a is None:
            skipped.append(n)
            continue
        total = ge.zero()
        ok = True
        for x in items:
            ax = alpha(x)
            if ax is None:
                ok = False
                break
            total = total + a * ge.edge(eg.edge_of[("x", n, x)]) * ax.star()
        if ok:
            edge[n] = total
        else:
            skipped.append(n)
    m = _family(f"lex3({ug.name})", ug, ge, "exel-laca", vertex=vertex, edge=edge)
    m.frontier_edges = {n for n, ok in eg.x_complete.items() if not ok} | set(skipped)
    m.frontier_vertices = {ug.edges[n].source for n in m.frontier_edges}
    if skipped:
        m.notes.append(f"{len(skipped)} edges left unassigned: alpha-paths leave the window")
    return m


def desing_family(g, depth=3, ring=Z, allow_partial=False, data: Desingularization | None = None):
    """Ultragraph family of ``g`` inside L(F): S_{e_i} = t_{f_1..f_{i-1} g_i} at infinite emitters."""
    d = data or desingularize(g, depth, allow_partial=allow_partial)
    ug = d.original
    ue = UltraEngine(d.structure, ring)
    edge = {}
    for i in range(len(ug.edges)):
        if i in d.kept:
            edge[i] = ue.edge(d.kept[i])
        elif i in d.rerouted:
            edge[i] = ue.path(d.rerouted[i])
    m = _family(
        f"desing({ug.name})",
        ug,
        ue,
        "ultragraph",
        vertex={v: ue.vertex(d.map_vertex(v)) for v in ug.vertex_indices()},
        edge=edge,
        sets=lambda A: ue.p(d.map_set(A)),
    )
    m.desing = d
    m.frontier_vertices = set(ug.frontier) | set(ug.infinite)
    m.notes.extend(d.warnings)
    return m


def build_family(kind: str, context):
    """Dispatch by family name.  ``context`` is a dict of keyword arguments."""
    ctx = dict(context)
    table = {
        "generators": generator_family,
        "glugl": glugl,
        "gegiso": gegiso,
        "gegiso_inverse": gegiso_inverse,
        "llgex2": llgex2,
        "llgex": llgex,
        "lfg": lfg,
        "pi_F": pi_F,
        "lex3": lex3,
        "desing": desing_family,
    }
    try:
        fn = table[kind]
    except KeyError:
        raise ValueError(f"unknown family {kind!r}; expected one of {', '.join(table)}") from None
    return fn(**ctx)


FAMILY_AXIOMS = {
    "generators": None,
    "glugl": "uLP",
    "gegiso": "LP",
    "gegiso_inverse": "uLP",
    "llgex2": "ExL",
    "llgex": "uLP",
    "lfg": "LP",
    "pi_F": "LP",
    "lex3": "ExL",
    "desing": "uLP",
}


def sigma_unit(ug: Ultragraph, k: int, sets=None, ring=Z, engine=None):
    """t_k = p_{A_1} + ... + p_{A_k}, the A_i being the disjointified members of the set algebra."""
    ue = engine or UltraEngine(ug, ring)
    if sets is None:
        if ug.universe.size is None:
            raise ValueError("pass an explicit enumeration of the set algebra in nat mode")
        sets = [s for s in generate_G0(ug).members() if not s.is_empty]
    pieces = disjointify(list(sets))
    out = ue.zero()
    for A in pieces[:k]:
        if not A.is_empty:
            out = out + ue.p(A)
    return out
