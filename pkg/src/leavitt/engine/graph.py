"""Leavitt path algebra of a graph with a canonical normal form.

A monomial ``(alpha, v, beta)`` stands for t_alpha t_beta* where both paths
end at ``v`` (for a length-0 path, ``v`` is the path itself).  The normal form
forbids alpha and beta ending in the same special edge of a regular vertex;
the special edge is the lowest-indexed edge it emits.
"""

from __future__ import annotations

from ..rings import Z
from ..structures import Graph
from .core import Engine


class GraphEngine(Engine):
    kind = "graph"

    def __init__(self, graph: Graph, ring=Z):
        if not isinstance(graph, Graph):
            raise TypeError("GraphEngine needs a Graph")
        super().__init__(graph, ring)
        self._src = [e.source for e in graph.edges]
        self._tgt = [e.target for e in graph.edges]
        self.special = {}
        for v in range(graph.vertex_count):
            if graph.is_regular(v):
                self.special[v] = min(graph.out_edges(v))
        self._out = {v: graph.out_edges(v) for v in range(graph.vertex_count)}

    # generators -------------------------------------------------------------
    def _e(self, e):
        return self.structure.edge_index(e)

    def _v(self, v):
        return v if isinstance(v, int) else self.structure.index(v)

    def vertex(self, v, coeff=1):
        v = self._v(v)
        return self.monomial(((), v, ()), coeff)

    def edge(self, e, coeff=1):
        e = self._e(e)
        return self.monomial(((e,), self._tgt[e], ()), coeff)

    def ghost(self, e, coeff=1):
        e = self._e(e)
        return self.monomial(((), self._tgt[e], (e,)), coeff)

    def path(self, edges, base=None):
        """t_alpha for a path given as edge indices or names (a vertex if empty)."""
        edges = tuple(self._e(e) for e in edges)
        if not edges:
            return self.vertex(base)
        return self.monomial(self.mon(edges, ()))

    def path_star(self, edges, base=None):
        return self.path(edges, base).star()

    def mon(self, alpha, beta, vertex=None):
        alpha = tuple(self._e(e) for e in alpha)
        beta = tuple(self._e(e) for e in beta)
        ends = {self._tgt[p[-1]] for p in (alpha, beta) if p}
        if vertex is not None:
            ends.add(self._v(vertex))
        if len(ends) != 1:
            raise ValueError("alpha and beta must end at one common vertex")
        for p in (alpha, beta):
            for a, b in zip(p, p[1:]):
                if self._src[b] != self._tgt[a]:
                    raise ValueError("not a path")
        return (alpha, ends.pop(), beta)

    def term(self, alpha, beta, vertex=None, coeff=1):
        return self.monomial(self.mon(alpha, beta, vertex), coeff)

    def unit(self):
        """Sum of all vertex idempotents (the unit of a finite graph's algebra)."""
        return self.from_terms((((), v, ()), 1) for v in range(self.structure.vertex_count))

    # hooks ------------------------------------------------------------------------
    def source_of(self, mon):
        alpha, v, _ = mon
        return self._src[alpha[0]] if alpha else v

    def target_of(self, mon):
        _, v, beta = mon
        return self._src[beta[0]] if beta else v

    def expand(self, mon):
        special = self.special
        src, tgt, out = self._src, self._tgt, self._out
        acc = {}
        stack = [(mon, 1)]
        while stack:
            (alpha, v, beta), c = stack.pop()
            if alpha and beta and alpha[-1] == beta[-1]:
                g = alpha[-1]
                u = src[g]
                if special.get(u) == g:
                    a0, b0 = alpha[:-1], beta[:-1]
                    stack.append(((a0, u, b0), c))
                    for e in out[u]:
                        if e != g:
                            stack.append(((a0 + (e,), tgt[e], b0 + (e,)), -c))
                    continue
            m = (alpha, v, beta)
            acc[m] = acc.get(m, 0) + c
        return [(m, c) for m, c in acc.items() if c]

    def mul_mon(self, m1, m2):
        alpha, v, beta = m1
        gamma, w, delta = m2
        lb, lg = len(beta), len(gamma)
        if lb <= lg and gamma[:lb] == beta:
            rest = gamma[lb:]
            if not rest:
                return (((alpha, w, delta), 1),) if v == w else ()
            if self._src[rest[0]] != v:
                return ()
            return (((alpha + rest, w, delta), 1),)
        if lg < lb and beta[:lg] == gamma:
            rest = beta[lg:]
            if self._src[rest[0]] != w:
                return ()
            return (((alpha, v, delta + rest), 1),)
        return ()

    def star_mon(self, mon):
        alpha, v, beta = mon
        return (beta, v, alpha)

    def mon_key(self, mon):
        alpha, v, beta = mon
        return (len(alpha) + len(beta), alpha, beta, v)

    def format_mon(self, mon) -> str:
        g = self.structure
        alpha, v, beta = mon
        if not alpha and not beta:
            return f"q({g.label(v)})"
        parts = []
        if alpha:
            parts.append("s(" + " ".join(g.edges[e].name for e in alpha) + ")")
        if beta:
            parts.append("star(s(" + " ".join(g.edges[e].name for e in beta) + "))")
        return "*".join(parts)


def normalize(x):
    """Normal form of a graph element (elements are kept normalized, so this re-reduces defensively)."""
    return x.engine.from_terms(x.terms.items())
