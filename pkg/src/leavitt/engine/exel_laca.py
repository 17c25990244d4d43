"""Exel-Laca algebra of an ultragraph, inside its unitization.

A monomial is ``(alpha, middle, beta)`` with middle one of
``("v", v)`` for the vertex idempotent, ``("Q", edges)`` for the product of
the range idempotents s_e* s_e over a finite edge set, or ``("1",)`` for the
adjoined unit (only with empty paths).  Range products with a finite common
range are expanded into vertex sums, which is exactly the sum relation for
an empty exclusion set.
"""

from __future__ import annotations

from ..rings import Z
from ..structures import Graph, Ultragraph, singular_vertices
from ..vertexsets import VertexSet
from .core import UNKNOWN, Engine
from .ultra import UltraEngine

UNIT = ("1",)


class ELEngine(Engine):
    kind = "exel-laca"

    def __init__(self, ug: Ultragraph, ring=Z, auto_reduce: bool = True):
        if isinstance(ug, Graph):
            ug = ug.to_ultragraph()
        super().__init__(ug, ring)
        self.universe = ug.universe
        self.auto_reduce = auto_reduce
        self._src = [e.source for e in ug.edges]
        self._rng = [e.range for e in ug.edges]
        self._meet_cache = {}
        self._ultra = None

    # helpers -------------------------------------------------------------------
    def meet(self, S) -> VertexSet:
        """Intersection of the ranges of the edges in ``S``."""
        hit = self._meet_cache.get(S)
        if hit is None:
            hit = VertexSet.everything(self.universe)
            for e in S:
                hit = hit & self._rng[e]
            self._meet_cache[S] = hit
        return hit

    def middle_contains(self, M, v) -> bool:
        if M[0] == "v":
            return M[1] == v
        if M[0] == "Q":
            return v in self.meet(M[1])
        return True

    def _e(self, e):
        return self.structure.edge_index(e)

    def _vx(self, v):
        return v if isinstance(v, int) else self.structure.index(v)

    # generators ----------------------------------------------------------------
    def vertex(self, v, coeff=1):
        return self.monomial(((), ("v", self._vx(v)), ()), coeff)

    def edge(self, e, coeff=1):
        e = self._e(e)
        return self.monomial(((e,), ("Q", (e,)), ()), coeff)

    def ghost(self, e, coeff=1):
        e = self._e(e)
        return self.monomial(((), ("Q", (e,)), (e,)), coeff)

    def range_projection(self, e, coeff=1):
        """Q_e = s_e* s_e."""
        return self.range_product([e], coeff)

    def range_product(self, edges, coeff=1):
        S = tuple(sorted({self._e(e) for e in edges}))
        if not S:
            return self.one().scale(coeff)
        return self.monomial(((), ("Q", S), ()), coeff)

    def one(self):
        return self.monomial(((), UNIT, ()))

    def path(self, edges, base=None):
        edges = tuple(self._e(e) for e in edges)
        if not edges:
            return self.vertex(base)
        return self.monomial((edges, ("Q", (edges[-1],)), ()))

    # hooks -----------------------------------------------------------------------
    def canon(self, mon):
        alpha, M, beta = mon
        if M[0] == "1":
            if alpha or beta:
                raise ValueError("the adjoined unit carries no paths")
            return mon
        if M[0] == "v":
            v = M[1]
            if (alpha and v not in self._rng[alpha[-1]]) or (beta and v not in self._rng[beta[-1]]):
                return None
            return mon
        S = set(M[1])
        if alpha:
            S.add(alpha[-1])
        if beta:
            S.add(beta[-1])
        if not S:
            raise ValueError("empty range product")
        S = tuple(sorted(S))
        if self.meet(S).is_empty:
            return None
        return (alpha, ("Q", S), beta)

    def expand(self, mon):
        alpha, M, beta = mon
        if self.auto_reduce and M[0] == "Q":
            m = self.meet(M[1])
            if m.is_finite:
                return [((alpha, ("v", v), beta), 1) for v in m.items]
        return [(mon, 1)]

    def mid_mul(self, M, N):
        if M[0] == "1":
            return N
        if N[0] == "1":
            return M
        if M[0] == "v" and N[0] == "v":
            return M if M[1] == N[1] else None
        if M[0] == "v":
            return M if N[1] and M[1] in self.meet(N[1]) else None
        if N[0] == "v":
            return N if N[1] in self.meet(M[1]) else None
        return ("Q", tuple(sorted(set(M[1]) | set(N[1]))))

    def mul_mon(self, m1, m2):
        alpha, M, beta = m1
        gamma, N, delta = m2
        lb, lg = len(beta), len(gamma)
        if lb == lg and beta == gamma:
            mid = self.mid_mul(M, N)
            return () if mid is None else (((alpha, mid, delta), 1),)
        if lb < lg and gamma[:lb] == beta:
            rest = gamma[lb:]
            if not self.middle_contains(M, self._src[rest[0]]):
                return ()
            return (((alpha + rest, N, delta), 1),)
        if lg < lb and beta[:lg] == gamma:
            rest = beta[lg:]
            if not self.middle_contains(N, self._src[rest[0]]):
                return ()
            return (((alpha, M, delta + rest), 1),)
        return ()

    def star_mon(self, mon):
        alpha, M, beta = mon
        return (beta, M, alpha)

    def mon_key(self, mon):
        alpha, M, beta = mon
        return (len(alpha) + len(beta), alpha, beta, M)

    def format_mon(self, mon) -> str:
        g = self.structure
        alpha, M, beta = mon
        if M[0] == "1":
            return "1"
        parts = []
        if alpha:
            parts.append("s(" + " ".join(g.edges[e].name for e in alpha) + ")")
        if M[0] == "v":
            parts.append(f"p({g.label(M[1])})")
        else:
            implied = {p[-1] for p in (alpha, beta) if p}
            if set(M[1]) != implied:
                parts.append("Q(" + " ".join(g.edges[e].name for e in M[1]) + ")")
        if beta:
            parts.append("star(s(" + " ".join(g.edges[e].name for e in beta) + "))")
        return "*".join(parts)

    # equality -----------------------------------------------------------------------
    def unit_coefficient(self, x):
        return x.terms.get(((), UNIT, ()), self.ring.zero())

    def ultra_engine(self) -> UltraEngine:
        if self._ultra is None:
            self._ultra = UltraEngine(self.structure, self.ring)
        return self._ultra

    def to_ultra(self, x, drop_unit=True):
        """Image of the non-unit part under p_v -> p_v, s_e -> s_e."""
        ue = self.ultra_engine()
        pairs = []
        for (alpha, M, beta), c in x.terms.items():
            if M[0] == "1":
                if drop_unit:
                    continue
                pairs.append((((), VertexSet.everything(self.universe), ()), c))
            elif M[0] == "v":
                pairs.append(((alpha, VertexSet.single(self.universe, M[1]), beta), c))
            else:
                pairs.append(((alpha, self.meet(M[1]), beta), c))
        return ue.from_terms(pairs)

    def isomorphic_to_leavitt(self) -> bool:
        g = self.structure
        return g.universe.size is not None and singular_vertices(g).is_empty and not g.frontier

    def equal(self, a, b):
        d = self.el_reduce(a - b)
        if d.is_zero():
            return True
        if not self.ring.is_zero(self.unit_coefficient(d)):
            return False
        image = self.to_ultra(d)
        verdict = self.ultra_engine().equal(image, self.ultra_engine().zero())
        if verdict is False:
            return False
        if verdict is True and self.isomorphic_to_leavitt():
            return True
        return UNKNOWN

    def el_reduce(self, x):
        """Expand every range product with finite common range into vertex idempotents."""
        pairs = []
        for (alpha, M, beta), c in x.terms.items():
            if M[0] == "Q" and self.meet(M[1]).is_finite:
                pairs.extend(((alpha, ("v", v), beta), c) for v in self.meet(M[1]).items)
            else:
                pairs.append(((alpha, M, beta), c))
        return self.from_terms(pairs)


def el_reduce(x):
    return x.engine.el_reduce(x)
