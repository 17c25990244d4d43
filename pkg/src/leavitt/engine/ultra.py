"""Ultragraph Leavitt path algebra.

A monomial ``(alpha, A, beta)`` stands for s_alpha p_A s_beta*, stored with
A already cut down to r(alpha) & A & r(beta); an empty cut is zero.  Products
follow the prefix rules, so results live in the spanning set but are not
canonical.  Equality on a finite ultragraph is decided by pushing both sides
into the graph whose edges are the pairs (e, v) with v in r(e).  In the
natural-number universe the unnamed vertices are merged into one first.
"""

from __future__ import annotations

from ..rings import Z
from ..structures import GEdge, Graph, UEdge, Ultragraph
from ..vertexsets import Universe, VertexSet, atoms
from .core import Engine
from .graph import GraphEngine


def unique_name(wanted: str, taken: set) -> str:
    name = wanted
    while name in taken:
        name += "_"
    taken.add(name)
    return name


def identification_graph(ug: Ultragraph):
    """Graph with one edge (e, v) per edge e and vertex v in r(e).

    Returns the graph and a dict ``(edge index, vertex) -> graph edge index``.
    Only defined for a finite universe.
    """
    if ug.universe.size is None:
        raise ValueError("identification graph needs a finite universe")
    n = ug.universe.size
    labels = [ug.label(v) for v in range(n)]
    taken = set()
    edges = []
    emap = {}
    for i, e in enumerate(ug.edges):
        for v in e.range.items:
            emap[(i, v)] = len(edges)
            edges.append(GEdge(unique_name(f"{e.name}__{ug.label(v)}", taken), e.source, v))
    g = Graph(ug.name + "_EG", labels, edges, infinite=ug.infinite, frontier=ug.frontier)
    return g, emap


class UltraEngine(Engine):
    kind = "ultragraph"

    def __init__(self, ug: Ultragraph, ring=Z):
        if isinstance(ug, Graph):
            ug = ug.to_ultragraph()
        super().__init__(ug, ring)
        self.universe = ug.universe
        self._src = [e.source for e in ug.edges]
        self._rng = [e.range for e in ug.edges]
        self._everything = VertexSet.everything(ug.universe)
        self._graph_engine = None
        self._collapsed = {}

    # generators ----------------------------------------------------------------
    def _e(self, e):
        return self.structure.edge_index(e)

    def as_set(self, A) -> VertexSet:
        if isinstance(A, VertexSet):
            return A
        if isinstance(A, (int, str)):
            A = [A]
        g = self.structure
        return VertexSet.finite(self.universe, [a if isinstance(a, int) else g.index(a) for a in A])

    def p(self, A, coeff=1):
        return self.monomial(((), self.as_set(A), ()), coeff)

    def vertex(self, v, coeff=1):
        return self.p([v], coeff)

    def edge(self, e, coeff=1):
        e = self._e(e)
        return self.monomial(((e,), self._rng[e], ()), coeff)

    def ghost(self, e, coeff=1):
        e = self._e(e)
        return self.monomial(((), self._rng[e], (e,)), coeff)

    def path(self, edges, base=None):
        edges = tuple(self._e(e) for e in edges)
        if not edges:
            return self.p(base)
        return self.monomial((edges, self._everything, ()))

    def term(self, alpha, A, beta, coeff=1):
        alpha = tuple(self._e(e) for e in alpha)
        beta = tuple(self._e(e) for e in beta)
        A = self._everything if A is None else self.as_set(A)
        return self.monomial((alpha, A, beta), coeff)

    def unit(self):
        """p of the whole vertex set; a unit exactly when that set lies in the set algebra."""
        return self.p(self._everything)

    # hooks -----------------------------------------------------------------------
    def range_of(self, path):
        return self._rng[path[-1]] if path else self._everything

    def canon(self, mon):
        alpha, A, beta = mon
        if alpha:
            A = A & self._rng[alpha[-1]]
        if beta:
            A = A & self._rng[beta[-1]]
        if A.is_empty:
            return None
        return (alpha, A, beta)

    def mul_mon(self, m1, m2):
        alpha, A, beta = m1
        gamma, B, delta = m2
        lb, lg = len(beta), len(gamma)
        if lb == lg and beta == gamma:
            return (((alpha, A & B, delta), 1),)
        if lb < lg and gamma[:lb] == beta:
            rest = gamma[lb:]
            if self._src[rest[0]] not in A:
                return ()
            return (((alpha + rest, B, delta), 1),)
        if lg < lb and beta[:lg] == gamma:
            rest = beta[lg:]
            if self._src[rest[0]] not in B:
                return ()
            return (((alpha, A, delta + rest), 1),)
        return ()

    def star_mon(self, mon):
        alpha, A, beta = mon
        return (beta, A, alpha)

    def mon_key(self, mon):
        alpha, A, beta = mon
        return (len(alpha) + len(beta), alpha, beta, A.sort_key())

    def format_set(self, A: VertexSet) -> str:
        g = self.structure
        body = " ".join(g.label(v) for v in A.items)
        return f"cofinite{{{body}}}" if A.cofinite else f"{{{body}}}"

    def format_mon(self, mon) -> str:
        g = self.structure
        alpha, A, beta = mon
        default = self.range_of(alpha) & self.range_of(beta)
        parts = []
        if alpha:
            parts.append("s(" + " ".join(g.edges[e].name for e in alpha) + ")")
        if not (alpha or beta) or A != default:
            parts.append(f"p({self.format_set(A)})")
        if beta:
            parts.append("star(s(" + " ".join(g.edges[e].name for e in beta) + "))")
        return "*".join(parts)

    # canonical comparison --------------------------------------------------------
    def atomized(self, x) -> dict:
        """Terms with every set split over the atoms of all sets occurring in ``x``."""
        sets = {A for (_, A, _) in x.terms}
        ats = atoms(sets)
        ring = self.ring
        out = {}
        for (alpha, A, beta), c in x.terms.items():
            for a in ats:
                if a.issubset(A):
                    key = (alpha, a, beta)
                    v = ring.add(out.get(key, ring.zero()), c)
                    if ring.is_zero(v):
                        out.pop(key, None)
                    else:
                        out[key] = v
        return out

    def graph_engine(self) -> GraphEngine:
        if self._graph_engine is None:
            g, emap = identification_graph(self.structure)
            self._graph_engine = GraphEngine(g, self.ring)
            self._emap = emap
        return self._graph_engine

    def lift_path(self, alpha, v):
        emap = self._emap
        out = [emap[(a, self._src[b])] for a, b in zip(alpha, alpha[1:])]
        if alpha:
            out.append(emap[(alpha[-1], v)])
        return tuple(out)

    def to_graph(self, x):
        """Image of ``x`` under p_A -> sum of q_v, s_e -> sum of t_(e,v)."""
        ge = self.graph_engine()
        pairs = []
        for (alpha, A, beta), c in x.terms.items():
            for v in A.items:
                pairs.append(((self.lift_path(alpha, v), v, self.lift_path(beta, v)), c))
        return ge.from_terms(pairs)

    def equal(self, a, b):
        d = a - b
        if d.is_zero():
            return True
        if self.universe.size is not None:
            return self.to_graph(d).is_zero()
        small = self.collapse(d)
        return small.engine.equal(small, small.engine.zero())

    def collapse(self, x):
        """Image of a nat-mode element in a finite ultragraph.

        Every index that is labelled, emits an edge, or is named by a set in
        the structure or in ``x`` is kept; all remaining vertices are sinks
        lying in exactly the cofinite sets, so they are merged into one extra
        vertex.  The merge is injective on the span of such monomials: the
        normal-form components at two unnamed sinks are the same up to
        renaming, so one of them vanishes exactly when all of them do.
        """
        g = self.structure
        named = set(g.labels) | set(self._src)
        for A in self._rng:
            named.update(A.items)
        for (_, A, _) in x.terms:
            named.update(A.items)
        order = sorted(named)
        pos = {v: i for i, v in enumerate(order)}
        generic = len(order)
        u = Universe(generic + 1)

        def squash(A):
            if A.cofinite:
                return VertexSet.finite(u, [pos[v] for v in order if v in A] + [generic])
            return VertexSet.finite(u, [pos[v] for v in A.items])

        key = tuple(order)
        hit = self._collapsed.get(key)
        if hit is None:
            labels = {pos[v]: g.label(v) for v in order}
            labels[generic] = "_generic"
            edges = [UEdge(e.name, pos[e.source], squash(e.range)) for e in g.edges]
            fin = Ultragraph(
                g.name,
                u,
                labels,
                edges,
                infinite=[pos[v] for v in g.infinite],
                frontier=[pos[v] for v in g.frontier],
            )
            hit = UltraEngine(fin, self.ring)
            self._collapsed[key] = hit
        return hit.from_terms(((alpha, squash(A), beta), c) for (alpha, A, beta), c in x.terms.items())

    def is_zero_element(self, x):
        return self.equal(x, self.zero())
