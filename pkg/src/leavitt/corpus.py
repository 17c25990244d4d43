"""Random and exhaustive structure generators used by the test and verification suites."""

from __future__ import annotations

import random
from itertools import combinations_with_replacement

from .structures import GEdge, Graph, UEdge, Ultragraph, _has_cycle
from .vertexsets import NAT, Universe, VertexSet


def _names(n):
    return [f"v{i}" for i in range(n)]


def all_graphs(max_vertices: int, max_edges: int, acyclic_only: bool = False):
    """Every graph on 1..max_vertices vertices with at most max_edges edges.

    Edges are multisets of (source, target) pairs, so parallel edges and loops
    appear.  With ``acyclic_only`` edges go from lower to higher index, which
    reaches every acyclic graph up to relabelling.
    """
    for n in range(1, max_vertices + 1):
        pairs = [(s, t) for s in range(n) for t in range(n) if not acyclic_only or s < t]
        for k in range(max_edges + 1):
            for chosen in combinations_with_replacement(pairs, k):
                edges = [GEdge(f"e{i + 1}", s, t) for i, (s, t) in enumerate(chosen)]
                yield Graph(f"g{n}_{'_'.join(f'{s}{t}' for s, t in chosen) or 'none'}", _names(n), edges)


def is_acyclic(g) -> bool:
    return not _has_cycle(g)


def random_graph(rng: random.Random, max_vertices: int = 5, max_edges: int = 6, acyclic: bool = False, name=None):
    n = rng.randint(1, max_vertices)
    k = rng.randint(0, max_edges)
    edges = []
    for i in range(k):
        if acyclic:
            if n < 2:
                break
            s = rng.randrange(n - 1)
            t = rng.randrange(s + 1, n)
        else:
            s, t = rng.randrange(n), rng.randrange(n)
        edges.append(GEdge(f"e{i + 1}", s, t))
    return Graph(name or f"rg{rng.randrange(10**6)}", _names(n), edges)


def random_ultragraph(
    rng: random.Random,
    max_vertices: int = 4,
    max_edges: int = 5,
    no_singular: bool = False,
    infinite_emitters: bool = False,
    name=None,
):
    """A finite-universe ultragraph with nonempty random ranges.

    ``no_singular`` gives every vertex at least one edge.  With
    ``infinite_emitters`` some vertex is flagged as emitting infinitely many
    edges, of which the generated ones are the declared prefix.
    """
    n = rng.randint(1, max_vertices)
    u = Universe(n)
    sources = []
    if no_singular:
        sources = list(range(n))
    k = max(len(sources), rng.randint(1, max(1, max_edges)))
    while len(sources) < k:
        sources.append(rng.randrange(n))
    rng.shuffle(sources)
    edges = []
    for i, s in enumerate(sources):
        size = rng.randint(1, n)
        rng_set = VertexSet.finite(u, rng.sample(range(n), size))
        edges.append(UEdge(f"e{i + 1}", s, rng_set))
    infinite = ()
    if infinite_emitters:
        infinite = (rng.choice(sources),)
    return Ultragraph(name or f"ru{rng.randrange(10**6)}", u, {v: f"v{v}" for v in range(n)}, edges, infinite=infinite)


def random_nat_ultragraph(rng: random.Random, labelled: int = 3, max_edges: int = 4, name=None):
    """A nat-mode ultragraph: a few labelled vertices, ranges finite or cofinite."""
    labels = {v: f"v{v}" for v in range(labelled)}
    edges = []
    for i in range(rng.randint(1, max_edges)):
        s = rng.randrange(labelled)
        picks = rng.sample(range(labelled + 2), rng.randint(0, 2))
        if rng.random() < 0.5:
            r = VertexSet.cofinite_set(NAT, picks)
        else:
            r = VertexSet.finite(NAT, picks or [rng.randrange(labelled)])
        edges.append(UEdge(f"e{i + 1}", s, r))
    return Ultragraph(name or f"rn{rng.randrange(10**6)}", NAT, labels, edges)


def random_structure(rng: random.Random, max_vertices: int = 4, max_edges: int = 5):
    """A finite graph or ultragraph, chosen evenly."""
    if rng.random() < 0.5:
        return random_graph(rng, max_vertices, max_edges)
    return random_ultragraph(rng, max_vertices, max_edges)


def corpus(seed: int, count: int, kind: str = "mixed", **kw) -> list:
    """Deterministic list of ``count`` structures."""
    rng = random.Random(seed)
    make = {
        "mixed": random_structure,
        "graph": random_graph,
        "ultragraph": random_ultragraph,
        "nat": random_nat_ultragraph,
    }[kind]
    out = []
    for i in range(count):
        out.append(make(rng, name=f"{kind}{seed}_{i}", **kw) if kind != "mixed" else make(rng, **kw))
    return out


# random elements ---------------------------------------------------------------------


def _walk(g, rng, start: VertexSet, length: int):
    """A random path of at most ``length`` edges whose first source lies in ``start``."""
    path = []
    here = start
    for _ in range(length):
        choices = [i for i, e in enumerate(g.edges) if e.source in here]
        if not choices:
            break
        i = rng.choice(choices)
        path.append(i)
        here = g.edges[i].range if g.kind == "ultragraph" else VertexSet.single(g.universe, g.edges[i].target)
    return tuple(path)


def _random_vertex(g, rng):
    return rng.choice(g.vertex_indices())


def random_monomial(engine, rng: random.Random, max_len: int = 3, tries: int = 50):
    """A nonzero spanning monomial of the engine's algebra."""
    g = engine.structure
    u = g.universe
    for _ in range(tries):
        a = _walk(g, rng, VertexSet.single(u, _random_vertex(g, rng)), rng.randint(0, max_len))
        b = _walk(g, rng, VertexSet.single(u, _random_vertex(g, rng)), rng.randint(0, max_len))
        if engine.kind == "graph":
            ends = {g.edges[p[-1]].target for p in (a, b) if p}
            if not ends:
                return ((), _random_vertex(g, rng), ())
            if len(ends) == 1:
                return (a, ends.pop(), b)
            continue
        here = VertexSet.everything(u)
        for p in (a, b):
            if p:
                here = here & g.edges[p[-1]].range
        if not a and not b:
            here = VertexSet.finite(u, [_random_vertex(g, rng)])
        if here.is_empty:
            continue
        if engine.kind == "ultragraph":
            if here.is_finite and len(here.items) > 1 and rng.random() < 0.5:
                here = VertexSet.finite(u, rng.sample(here.items, rng.randint(1, len(here.items))))
            return (a, here, b)
        # Exel-Laca middles: a vertex, a range product, or (with a path around it) the unit
        if not a and not b:
            choice = rng.random()
            if choice < 0.5 or not g.edges:
                return ((), ("v", here.items[0]), ())
            S = tuple(sorted(set(rng.sample(range(len(g.edges)), rng.randint(1, min(2, len(g.edges)))))))
            return ((), ("Q", S), ())
        S = tuple(sorted({p[-1] for p in (a, b) if p}))
        if here.is_finite and rng.random() < 0.5:
            return (a, ("v", rng.choice(here.items)), b)
        return (a, ("Q", S), b)
    v = _random_vertex(g, rng)
    if engine.kind == "graph":
        return ((), v, ())
    if engine.kind == "ultragraph":
        return ((), VertexSet.single(u, v), ())
    return ((), ("v", v), ())


def random_element(engine, rng: random.Random, terms: int = 3, max_len: int = 3):
    ring = engine.ring
    pairs = []
    for _ in range(terms):
        c = ring.random(rng)
        if ring.is_zero(ring.coerce(c)):
            c = 1
        pairs.append((random_monomial(engine, rng, max_len), c))
    return engine.from_terms(pairs)


# documents ---------------------------------------------------------------------------------

_ALPHA = "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ_"
_RESERVED = {"cofinite", "universe", "vertices", "edge", "infinite", "frontier", "sigma", "let", "finite", "nat"}


def _ident(rng, taken):
    while True:
        name = rng.choice(_ALPHA) + "".join(rng.choice(_ALPHA + "0123456789") for _ in range(rng.randint(0, 5)))
        if name not in taken and name not in _RESERVED and not (name[0] == "_" and name[1:].isdigit()):
            taken.add(name)
            return name


def _renamed(g, rng, name):
    """Copy of ``g`` with fresh random labels, edge names, flags and (for ultragraphs) a sigma table."""
    taken = set()
    labels = {v: _ident(rng, taken) for v in sorted(g.labels)}
    explicit = sorted(labels)
    flag = lambda: frozenset(v for v in explicit if rng.random() < 0.2)  # noqa: E731
    infinite, frontier = flag(), flag()
    if isinstance(g, Graph):
        edges = [GEdge(_ident(rng, taken), e.source, e.target) for e in g.edges]
        return Graph(name, [labels[v] for v in range(g.vertex_count)], edges, infinite=infinite, frontier=frontier)
    edges = [UEdge(_ident(rng, taken), e.source, e.range) for e in g.edges]
    sigma = {}
    for v in explicit:
        if rng.random() < 0.3:
            sigma[labels[v]] = "".join(rng.choice("01") for _ in range(rng.randint(1, 4)))
    return Ultragraph(name, g.universe, labels, edges, infinite=infinite, frontier=frontier, sigma_table=sigma)


def _random_expr(g, rng) -> str:
    def atom():
        k = rng.random()
        if g.edges and k < 0.35:
            return "s(" + " ".join(rng.choice(g.edges).name for _ in range(rng.randint(1, 2))) + ")"
        if g.edges and k < 0.55:
            return f"star(s({rng.choice(g.edges).name}))"
        if k < 0.8:
            return f"q({g.label(rng.choice(sorted(g.labels)))})"
        return str(rng.randint(1, 5))

    terms = []
    for _ in range(rng.randint(1, 3)):
        terms.append(" * ".join(atom() for _ in range(rng.randint(1, 3))))
    out = terms[0]
    for t in terms[1:]:
        out += rng.choice([" + ", " - "]) + t
    return out


def random_document(rng: random.Random, max_structures: int = 3):
    """A random, valid Document mixing graphs, finite and nat-mode ultragraphs."""
    from .dsl import Document

    doc = Document()
    taken = set()
    for _ in range(rng.randint(1, max_structures)):
        pick = rng.random()
        if pick < 0.35:
            base = random_graph(rng)
        elif pick < 0.7:
            base = random_ultragraph(rng)
        else:
            base = random_nat_ultragraph(rng, labelled=rng.randint(1, 4))
        g = _renamed(base, rng, _ident(rng, taken))
        doc.structures.append(g)
        if g.labels and rng.random() < 0.4:
            names = set()
            doc.bindings[g.name] = {_ident(rng, names): _random_expr(g, rng) for _ in range(rng.randint(1, 2))}
    return doc
