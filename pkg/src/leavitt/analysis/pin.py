"""Supporting vertices and the reduction of a nonzero element to a scalar vertex or a cycle polynomial."""

from __future__ import annotations

from dataclasses import dataclass

from ..engine import GraphEngine, UltraEngine, ZeroElement, apply_hom, equal
from ..structures import TruncationExceeded
from ..vertexsets import VertexSet


def _nonzero(x) -> bool:
    return equal(x, x.engine.zero()) is False


def find_supporting_vertex(x) -> int:
    """A vertex v with x * p_v != 0.

    Terms are s_alpha p_A s_beta*.  When every source set of a beta part is
    finite, one of those vertices works.  Otherwise the finitely many
    vertices V named by the beta parts are cut away from an infinite
    r(alpha) & A, and a vertex of what remains is tried.
    """
    if not _nonzero(x):
        raise ZeroElement("x is zero")
    eng = x.engine
    if eng.kind == "graph":
        return _graph_support(x)
    g = eng.structure
    V = set()
    infinite_parts = []
    for (alpha, A, beta), _ in x.sorted_terms():
        if beta:
            V.add(g.edges[beta[0]].source)
        elif A.is_finite:
            V.update(A.items)
        else:
            infinite_parts.append(A)
    candidates = sorted(V)
    for A in infinite_parts:
        rest = A - VertexSet.finite(A.universe, V)
        candidates.extend(rest.first(1))
    for v in candidates:
        if _nonzero(x * eng.vertex(v)):
            return v
    raise AssertionError("no supporting vertex among the case-analysis candidates")


def _graph_support(x) -> int:
    eng = x.engine
    for (alpha, w, beta), _ in x.sorted_terms():
        v = eng.structure.edges[beta[0]].source if beta else w
        if _nonzero(x * eng.vertex(v)):
            return v
    raise AssertionError("normal form without a supporting vertex")


@dataclass(frozen=True)
class ScalarVertex:
    r: object
    v: int

    def element(self, engine):
        return engine.vertex(self.v).scale(self.r)


@dataclass(frozen=True)
class CyclePolynomial:
    cycle: tuple  # edge indices of the structure the element lives in
    coeffs: tuple  # coeffs[i] multiplies the i-th power; the 0th power is p_v
    v: int

    def element(self, engine):
        base = engine.vertex(self.v)
        step = engine.path(self.cycle) * base
        out = engine.zero()
        power = base
        for i, c in enumerate(self.coeffs):
            if i:
                power = power * step
            out = out + power.scale(c)
        return out


@dataclass
class PinDown:
    a: object
    b: object
    form: object

    def check(self, x) -> bool:
        return equal(self.a * x * self.b, self.form.element(x.engine)) is True


def _path_terms(y):
    """(path, coefficient) pairs of an element with no ghost parts."""
    out = []
    for (alpha, w, beta), c in y.sorted_terms():
        if beta:
            raise AssertionError("unexpected ghost part")
        out.append((alpha, c))
    return out


def _max_ghost(y) -> int:
    return max((len(beta) for (_, _, beta) in y.terms), default=0)


def _graph_pin(y):
    """Run the reduction inside a graph algebra; returns (a, b, form)."""
    eng = y.engine
    g = eng.structure
    a = None
    b = None

    def right(z, m):
        nonlocal b
        b = m if b is None else b * m
        return z * m

    def left(z, m):
        nonlocal a
        a = m if a is None else m * a
        return m * z

    # 1. strip ghost edges
    while True:
        v = _graph_support(y)
        y = right(y, eng.vertex(v))
        if _max_ghost(y) == 0:
            break
        firsts = sorted({beta[0] for (_, _, beta) in y.terms if beta})
        for e in firsts:
            z = y * eng.edge(e)
            if _nonzero(z):
                y = right(y, eng.edge(e))
                break
        else:
            spare = [f for f in g.out_edges(v) if f not in firsts]
            if not spare:
                raise AssertionError("no edge left to kill the ghost parts")
            y = right(y, eng.edge(spare[0]))
    # 2. concentrate at one end vertex
    v = _graph_support(y)
    y = right(y, eng.vertex(v))
    # 3. strip the shortest path from the left: r q_v + sum r_k t_beta, beta closed at v
    terms = sorted(_path_terms(y), key=lambda t: (len(t[0]), t[0]))
    alpha1 = terms[0][0]
    first = eng.path(alpha1, v).star()
    y = left(y, first)
    while True:
        terms = _path_terms(y)
        r = dict(terms).get(())
        loops = [(p, c) for p, c in terms if p]
        v = _graph_support(y) if not loops else g.edges[loops[0][0][0]].source
        if not loops:
            return a, b, ScalarVertex(r, v)
        outs = g.out_edges(v)
        used = {p[0] for p, _ in loops}
        spare = [f for f in outs if f not in used]
        if spare:
            t = eng.edge(spare[0])
            y = right(left(y, t.star()), t)
            continue
        if len(used) > 1:
            t = eng.edge(min(used))
            y = right(left(y, t.star()), t)
            continue
        # a single edge leaves v and every loop uses it: walk round
        cycle = _exitless_cycle(g, v)
        if cycle is not None:
            powers = {}
            ok = True
            for p, c in loops:
                k, rem = divmod(len(p), len(cycle))
                if rem or p != cycle * k:
                    ok = False
                    break
                powers[k] = c
            if ok:
                top = max(powers)
                coeffs = [r if r is not None else eng.ring.zero()] + [powers.get(i, eng.ring.zero()) for i in range(1, top + 1)]
                return a, b, CyclePolynomial(cycle, tuple(coeffs), v)
        t = eng.edge(outs[0])
        y = right(left(y, t.star()), t)


def _exitless_cycle(g, v):
    """The cycle through v if every vertex on it emits exactly one edge."""
    path = []
    w = v
    while True:
        outs = g.out_edges(w)
        if len(outs) != 1:
            return None
        path.append(outs[0])
        w = g.edges[outs[0]].target
        if w == v:
            return tuple(path)
        if len(path) > len(g.edges):
            return None


def pin_down(x) -> PinDown:
    """Elements a, b with a*x*b = r p_v (r != 0) or a polynomial in a cycle.

    Ultragraph elements are carried to the graph of pairs (e, v), reduced
    there with exact normal forms, and carried back; the result is checked.
    """
    if not _nonzero(x):
        raise ZeroElement("x is zero")
    eng = x.engine
    if eng.kind == "graph":
        a, b, form = _graph_pin(x)
        out = PinDown(a if a is not None else eng.unit(), b if b is not None else eng.unit(), form)
    elif eng.kind == "ultragraph":
        if eng.structure.universe.size is None:
            raise TruncationExceeded("pin_down needs a finite universe")
        from ..constructions.families import gegiso

        back = gegiso(eng.structure, eng.ring)
        eng.graph_engine()
        a, b, form = _graph_pin(eng.to_graph(x))
        owner = {gi: e for (e, _), gi in eng._emap.items()}
        a = apply_hom(a, back) if a is not None else eng.unit()
        b = apply_hom(b, back) if b is not None else eng.unit()
        if isinstance(form, CyclePolynomial):
            form = CyclePolynomial(
                tuple(owner[i] for i in form.cycle), form.coeffs, form.v
            )
        out = PinDown(a, b, form)
    else:
        raise ValueError("pin_down works on graph and ultragraph elements")
    if not out.check(x):
        raise AssertionError("pin_down result failed verification")
    return out
