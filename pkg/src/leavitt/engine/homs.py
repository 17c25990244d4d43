"""Generator assignments and their multiplicative-linear extension."""

from __future__ import annotations

from ..vertexsets import VertexSet
from .core import Element, MissingGeneratorAssignment


class GeneratorMap:
    """Images of the generators of one algebra inside a target engine.

    ``vertex``  vertex index -> Element (q_v for graphs, the vertex idempotent otherwise)
    ``sets``    callable VertexSet -> Element for ultragraph p_A; by default the
                sum of vertex images over a finite A
    ``edge``    edge index -> Element
    ``ghost``   edge index -> Element; defaults to the star of the edge image
    ``unit``    image of the adjoined unit (Exel-Laca sources only)
    """

    def __init__(self, name, source, target, vertex=None, sets=None, edge=None, ghost=None, unit=None):
        self.name = name
        self.source = source
        self.target = target
        self.vertex = dict(vertex or {})
        self._sets = sets
        self.edge = dict(edge or {})
        self.ghost = dict(ghost or {})
        self.unit = unit
        self._set_cache = {}

    def vertex_image(self, v) -> Element:
        try:
            return self.vertex[v]
        except KeyError:
            raise MissingGeneratorAssignment(f"{self.name}: no image for vertex {self.source.label(v)}") from None

    def edge_image(self, e) -> Element:
        try:
            return self.edge[e]
        except KeyError:
            raise MissingGeneratorAssignment(f"{self.name}: no image for edge {self.source.edges[e].name}") from None

    def ghost_image(self, e) -> Element:
        if e in self.ghost:
            return self.ghost[e]
        img = self.edge_image(e).star()
        self.ghost[e] = img
        return img

    def set_image(self, A: VertexSet) -> Element:
        hit = self._set_cache.get(A)
        if hit is not None:
            return hit
        if self._sets is not None:
            img = self._sets(A)
        elif A.is_finite:
            img = self.target.zero()
            for v in A.items:
                img = img + self.vertex_image(v)
        else:
            raise MissingGeneratorAssignment(f"{self.name}: no image for an infinite vertex set")
        self._set_cache[A] = img
        return img

    def unit_image(self) -> Element:
        if self.unit is None:
            raise MissingGeneratorAssignment(f"{self.name}: no image for the adjoined unit")
        return self.unit

    def generators(self):
        """(label, image) pairs for every explicitly assigned generator."""
        g = self.source
        out = [(f"v:{g.label(v)}", img) for v, img in sorted(self.vertex.items())]
        out += [(f"e:{g.edges[e].name}", img) for e, img in sorted(self.edge.items())]
        return out

    def __repr__(self):
        return f"GeneratorMap({self.name!r}, {len(self.vertex)} vertices, {len(self.edge)} edges)"


def _product(factors):
    out = None
    for f in factors:
        out = f if out is None else out * f
    return out


def image_of_monomial(kind, mon, m: GeneratorMap) -> Element:
    alpha, mid, beta = mon
    factors = [m.edge_image(e) for e in alpha]
    if kind == "graph":
        if not alpha and not beta:
            factors.append(m.vertex_image(mid))
    elif kind == "ultragraph":
        factors.append(m.set_image(mid))
    else:
        if mid[0] == "1":
            factors.append(m.unit_image())
        elif mid[0] == "v":
            factors.append(m.vertex_image(mid[1]))
        else:
            for e in mid[1]:
                factors.append(m.ghost_image(e) * m.edge_image(e))
    factors += [m.ghost_image(e) for e in reversed(beta)]
    return _product(factors)


def apply_hom(x: Element, m: GeneratorMap) -> Element:
    """Extend ``m`` multiplicatively and linearly to ``x``."""
    out = m.target.zero()
    kind = x.engine.kind
    for mon, c in x.sorted_terms():
        img = image_of_monomial(kind, mon, m)
        out = out + img.scale(c)
    return out
