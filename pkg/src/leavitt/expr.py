"""Element expressions: ``s(e f)``, ``star(...)``, ``p({v w})``, ``q(v)``, integers, ``*``, ``+``, ``-``."""

from __future__ import annotations

from .dsl import ParseError, tokenize
from .engine import Element, GraphEngine, MissingGeneratorAssignment, UltraEngine
from .rings import Z
from .structures import Graph
from .vertexsets import VertexSet


def engine_for(structure, ring=Z):
    return GraphEngine(structure, ring) if isinstance(structure, Graph) else UltraEngine(structure, ring)


class _Expr:
    def __init__(self, engine, text):
        self.engine = engine
        self.g = engine.structure
        self.toks = tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self, text=None, kind=None):
        t = self.toks[self.i]
        if (text is not None and (t.text != text or t.kind == "eof")) or (kind is not None and t.kind != kind):
            found = "end of input" if t.kind == "eof" else repr(t.text)
            want = repr(text) if text is not None else kind
            raise ParseError(t.line, t.col, want, f"expected {want}, found {found}")
        self.i += 1
        return t

    def at(self, text):
        t = self.peek()
        return t.kind != "eof" and t.text == text

    def run(self):
        value = self.sum()
        if self.peek().kind != "eof":
            self.take(kind="eof")
        return self.lift(value)

    def lift(self, v):
        if isinstance(v, Element):
            return v
        if v == 0:
            return self.engine.zero()
        unit = self.engine.unit()
        if unit is None:
            raise MissingGeneratorAssignment("no unit: a bare scalar has no meaning here")
        return unit.scale(v)

    def sum(self):
        total = self.product()
        while self.at("+") or self.at("-"):
            op = self.take().text
            rhs = self.product()
            if not isinstance(total, Element) and not isinstance(rhs, Element):
                total = total + rhs if op == "+" else total - rhs
            else:
                a, b = self.lift(total), self.lift(rhs)
                total = a + b if op == "+" else a - b
        return total

    def product(self):
        acc = self.factor()
        while self.at("*"):
            self.take()
            rhs = self.factor()
            if isinstance(acc, Element) and isinstance(rhs, Element):
                acc = acc * rhs
            elif isinstance(acc, Element):
                acc = acc.scale(rhs)
            elif isinstance(rhs, Element):
                acc = rhs.scale(acc)
            else:
                acc = acc * rhs
        return acc

    def factor(self):
        t = self.peek()
        if self.at("-"):
            self.take()
            v = self.factor()
            return -v
        if t.kind == "int":
            return int(self.take().text)
        if self.at("("):
            self.take()
            v = self.sum()
            self.take(")")
            return v
        word = self.take(kind="id").text
        self.take("(")
        if word == "s":
            v = self.edges()
        elif word == "star":
            v = self.lift(self.sum()).star()
        elif word == "p":
            v = self.projection()
        elif word == "q":
            v = self.vertex(self.take(kind="id").text)
        else:
            raise ParseError(t.line, t.col, "s, star, p or q", f"unknown generator {word!r}")
        self.take(")")
        return v

    def edges(self):
        names = []
        while self.peek().kind == "id":
            names.append(self.take().text)
        if not names:
            self.take(kind="id")
        out = None
        for n in names:
            if n not in self.g._edge_index:
                raise MissingGeneratorAssignment(f"no edge named {n!r}")
            x = self.engine.edge(self.g.edge_index(n))
            out = x if out is None else out * x
        return out

    def _index(self, label):
        try:
            return self.g.index(label)
        except KeyError:
            raise MissingGeneratorAssignment(f"no vertex named {label!r}") from None

    def vertex(self, label):
        v = self._index(label)
        if isinstance(self.g, Graph):
            return self.engine.vertex(v)
        return self.engine.p(VertexSet.single(self.g.universe, v))

    def projection(self):
        cof = False
        if self.at("cofinite"):
            self.take()
            cof = True
        if self.peek().kind == "id":
            if cof:
                self.take("{")
            return self.vertex(self.take().text)
        self.take("{")
        labels = []
        while self.peek().kind == "id":
            labels.append(self.take().text)
        self.take("}")
        idx = [self._index(x) for x in labels]
        u = self.g.universe
        A = VertexSet.cofinite_set(u, idx) if cof else VertexSet.finite(u, idx)
        if isinstance(self.g, Graph):
            if A.cofinite:
                raise MissingGeneratorAssignment("graphs have no cofinite projections")
            out = self.engine.zero()
            for v in A.items:
                out = out + self.engine.vertex(v)
            return out
        return self.engine.p(A)


def parse_expr(engine, text: str) -> Element:
    return _Expr(engine, text).run()


def eval_expr(doc, structure, ring, expr: str) -> str:
    """Evaluate ``expr`` over the named structure of ``doc`` and print its normal form."""
    g = doc.get(structure) if not hasattr(structure, "edges") else structure
    return str(parse_expr(engine_for(g, ring), expr))
