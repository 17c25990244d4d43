"""The graph E_G of an ultragraph, built from words over {0,1}.

A word w of length n selects the vertices lying in r(e_i) exactly when
w_i = 1 (for i <= n); the words whose vertex set is infinite form Delta.  Each
vertex of W+ is attached to one such word by a map sigma, and the graph has a
vertex per ultragraph vertex and per word.

Everything infinite is cut to a window: the first K vertices of W+ receive
sigma values, words are built up to a depth D, and every graph vertex whose
out-edges might be incomplete is marked as frontier (no sum relation).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..structures import GEdge, Graph, Path, Ultragraph
from ..vertexsets import VertexSet
from ..engine.ultra import unique_name


class SigmaStrategyFailed(ValueError):
    pass


class NotReachable(LookupError):
    pass


@dataclass
class EGData:
    ultragraph: Ultragraph
    graph: Graph
    delta: list  # words (bit strings), by length then value
    delta_range: dict  # word -> VertexSet
    gamma0: list
    gamma_plus: list
    w_plus: VertexSet
    w_zero: VertexSet
    sigma: dict  # vertex index -> word
    x_table: dict  # edge index -> list of items (int vertex or str word)
    x_complete: dict  # edge index -> bool
    window: list
    depth: int
    capacity: int
    full_levels: set
    vertex_of: dict  # item -> graph vertex index
    edge_of: dict  # ("v", v) | ("w", word) | ("x", edge, item) -> graph edge index
    f_edge_names: set
    warnings: list = field(default_factory=list)

    @property
    def truncation(self):
        return {"window": len(self.window), "edges": len(self.ultragraph.edges), "depth": self.depth}

    def item_label(self, item) -> str:
        return self.graph.label(self.vertex_of[item])

    def item_of(self, graph_vertex: int):
        return self._items[graph_vertex]

    def __post_init__(self):
        self._items = {gv: it for it, gv in self.vertex_of.items()}

    def delta_level(self, n: int) -> list:
        return [w for w in self.delta if len(w) == n]

    def accepted_sources(self) -> set:
        """Graph vertices in W0 together with the words of Gamma0."""
        out = {gv for it, gv in self.vertex_of.items() if isinstance(it, int) and it in self.w_zero}
        out |= {self.vertex_of[w] for w in self.gamma0}
        return out


def signature(ug: Ultragraph, v: int, n: int) -> str:
    """The length-n word recording which of r(e_1)..r(e_n) contain v."""
    return "".join("1" if v in ug.edges[i].range else "0" for i in range(n))


def word_ranges(ug: Ultragraph, depth: int):
    """Delta levels up to ``depth`` and the vertex set of each member."""
    u = ug.universe
    ranges = {}
    levels = []
    prev = []
    seen_union = VertexSet.empty(u)
    for n in range(1, depth + 1):
        rn = ug.edges[n - 1].range
        cands = {}
        for w in prev:
            cands[w + "1"] = ranges[w] & rn
            cands[w + "0"] = ranges[w] - rn
        cands["0" * (n - 1) + "1"] = rn - seen_union
        seen_union = seen_union | rn
        level = sorted(w for w, r in cands.items() if r.cofinite)
        for w in level:
            ranges[w] = cands[w]
        levels.append(level)
        prev = level
    return levels, ranges


def build_EG(ug: Ultragraph, window: int = 8, depth: int | None = None, sigma="greedy", capacity: int = 1) -> EGData:
    """Construct E_G within a vertex window and word depth.

    ``sigma`` is ``"greedy"`` (each window vertex, in index order, takes the
    shortest word of its signature with spare capacity) or a dict mapping
    vertex labels to bit strings.
    """
    if isinstance(ug, Graph):
        ug = ug.to_ultragraph()
    n_edges = len(ug.edges)
    depth = n_edges if depth is None else depth
    if depth > n_edges:
        raise ValueError(f"depth {depth} exceeds the edge count {n_edges}")
    u = ug.universe
    warnings = []

    levels, ranges = word_ranges(ug, depth)
    delta = [w for level in levels for w in level]
    delta_set = set(delta)
    gamma0 = [w for w in delta if w.index("1") == len(w) - 1]
    gamma_plus = [w for w in delta if w not in set(gamma0)]
    w_plus = VertexSet.empty(u)
    for w in gamma0:
        w_plus = w_plus | ranges[w]
    w_zero = VertexSet.everything(u) - w_plus

    labelled = sorted(ug.labels)
    if w_plus.is_empty:
        win = []
    else:
        win = sorted(set(w_plus.first(window)) | {v for v in labelled if v in w_plus})

    # sigma ------------------------------------------------------------------------
    sig = {}
    full_levels = set()
    load = {}
    if sigma == "greedy":
        for v in win:
            chosen = None
            for n in range(1, depth + 1):
                w = signature(ug, v, n)
                if w in delta_set and load.get(w, 0) < capacity:
                    chosen = w
                    break
            if chosen is None:
                warnings.append(f"no free sigma word for {ug.label(v)} within depth {depth}")
                continue
            sig[v] = chosen
            load[chosen] = load.get(chosen, 0) + 1
    elif isinstance(sigma, dict):
        for lab, bits in sigma.items():
            try:
                v = ug.index(lab)
            except KeyError:
                raise SigmaStrategyFailed(f"sigma names unknown vertex {lab}") from None
            if v not in w_plus:
                raise SigmaStrategyFailed(f"sigma assigns {lab}, which is not in W+")
            if bits not in delta_set:
                raise SigmaStrategyFailed(f"sigma word {bits} for {lab} is not in Delta (depth {depth})")
            if v not in ranges[bits]:
                raise SigmaStrategyFailed(f"{lab} is not in r({bits})")
            sig[v] = bits
            load[bits] = load.get(bits, 0) + 1
        missing = [ug.label(v) for v in win if v not in sig]
        if missing and not sig:
            raise SigmaStrategyFailed("sigma table is empty but W+ is not")
        win = sorted(set(sig) | {v for v in labelled if v in w_plus})
        for v in win:
            if v not in sig:
                warnings.append(f"sigma table has no word for {ug.label(v)}")
    else:
        raise ValueError(f"unknown sigma strategy {sigma!r}")
    for n, level in enumerate(levels, start=1):
        if level and all(load.get(w, 0) >= capacity for w in level):
            full_levels.add(n)

    if delta:
        warnings.append(
            f"finite-preimage contract unsatisfiable: Delta has {len(delta)} words but W+ is infinite; "
            f"sigma covers a window of {len(sig)} vertices"
        )

    # X(e_n) -----------------------------------------------------------------------
    if u.size is not None:
        g0 = list(range(u.size))
    elif delta:
        g0 = sorted(set(w_zero.items) | set(win))
    else:
        g0 = labelled
    g0_set = set(g0)
    x_table, x_complete = {}, {}
    for k, e in enumerate(ug.edges):
        n = k + 1
        items, complete = [], True
        cand = e.range.items if e.range.is_finite else [v for v in g0 if v in e.range]
        for v in cand:
            if v in w_zero:
                items.append(v)
            elif v in sig:
                if len(sig[v]) < n:
                    items.append(v)
            else:
                complete = False
        if e.range.cofinite and not all(m in full_levels for m in range(1, n)):
            complete = False
        if n <= depth:
            items.extend(w for w in levels[n - 1] if w[n - 1] == "1")
        elif e.range.cofinite:
            complete = False
        items = [x for x in items if not isinstance(x, int) or x in g0_set]
        x_table[k] = items
        x_complete[k] = complete
        if not items:
            warnings.append(f"X({e.name}) is empty within the truncation")
        if not complete:
            warnings.append(f"X({e.name}) may be incomplete beyond the window")

    # the graph ------------------------------------------------------------------------
    taken = set()
    labels, vertex_of = [], {}
    for v in g0:
        vertex_of[v] = len(labels)
        labels.append(unique_name(ug.label(v), taken))
    for w in delta:
        vertex_of[w] = len(labels)
        labels.append(unique_name("d_" + w, taken))
    ename = set()
    edges, edge_of, f_names = [], {}, set()
    for v in win:
        if v in sig:
            edge_of[("v", v)] = len(edges)
            name = unique_name("e_" + labels[vertex_of[v]], ename)
            f_names.add(name)
            edges.append(GEdge(name, vertex_of[sig[v]], vertex_of[v]))
    for w in gamma_plus:
        edge_of[("w", w)] = len(edges)
        name = unique_name("e_" + labels[vertex_of[w]], ename)
        f_names.add(name)
        edges.append(GEdge(name, vertex_of[w[:-1]], vertex_of[w]))
    for k, e in enumerate(ug.edges):
        if e.source not in vertex_of:
            warnings.append(f"source of {e.name} lies outside the window; its edges are omitted")
            continue
        for x in x_table[k]:
            edge_of[("x", k, x)] = len(edges)
            name = unique_name(f"{e.name}__{labels[vertex_of[x]]}", ename)
            edges.append(GEdge(name, vertex_of[e.source], vertex_of[x]))

    frontier = set()
    for w in delta:
        if (depth < n_edges and len(w) == depth) or load.get(w, 0) < capacity:
            frontier.add(vertex_of[w])
    for k, e in enumerate(ug.edges):
        if not x_complete[k] and e.source in vertex_of:
            frontier.add(vertex_of[e.source])
    for v in ug.infinite | ug.frontier:
        if v in vertex_of:
            frontier.add(vertex_of[v])
    infinite = [vertex_of[v] for v in ug.infinite if v in vertex_of]

    graph = Graph(ug.name + "_EG", labels, edges, infinite=infinite, frontier=frontier)
    return EGData(
        ultragraph=ug,
        graph=graph,
        delta=delta,
        delta_range={w: ranges[w] for w in delta},
        gamma0=gamma0,
        gamma_plus=gamma_plus,
        w_plus=w_plus,
        w_zero=w_zero,
        sigma=sig,
        x_table=x_table,
        x_complete=x_complete,
        window=win,
        depth=depth,
        capacity=capacity,
        full_levels=full_levels,
        vertex_of=vertex_of,
        edge_of=edge_of,
        f_edge_names=f_names,
        warnings=warnings,
    )


def _graph_vertex(eg: EGData, x) -> int:
    if isinstance(x, str) and x not in eg.vertex_of:
        # a label of the ultragraph or of the graph
        if eg.graph.has_vertex(x):
            return eg.graph.index(x)
        x = eg.ultragraph.index(x)
    if x not in eg.vertex_of:
        raise NotReachable(f"{x!r} lies outside the truncation window")
    return eg.vertex_of[x]


def alpha_path(eg: EGData, x) -> Path:
    """The unique path in F ending at ``x`` and starting in W0 or Gamma0."""
    g = eg.graph
    target = _graph_vertex(eg, x)
    f_in = {}
    for i, e in enumerate(g.edges):
        if e.name in eg.f_edge_names:
            if e.target in f_in:
                raise AssertionError(f"two F-edges enter {g.label(e.target)}")
            f_in[e.target] = i
    accepted = eg.accepted_sources()
    edges = []
    v = target
    seen = {v}
    while v in f_in:
        i = f_in[v]
        edges.append(i)
        v = g.edges[i].source
        if v in seen:
            raise AssertionError("F has a cycle")
        seen.add(v)
    if v not in accepted:
        raise NotReachable(f"the F-path into {g.label(target)} stops at {g.label(v)}, outside W0 and Gamma0")
    return Path(v, tuple(reversed(edges)))


def r_prime(eg: EGData, word: str) -> VertexSet:
    """Window vertices whose sigma word has ``word`` as a prefix (length at least |word|)."""
    n = len(word)
    hits = [v for v, w in eg.sigma.items() if len(w) >= n and w[:n] == word]
    return VertexSet.finite(eg.ultragraph.universe, hits)


class CornerQ:
    """The idempotent Q = sum of q_v over v in W0 and Gamma0, acting on monomials."""

    def __init__(self, eg: EGData):
        self.eg = eg
        self.accepted = frozenset(eg.accepted_sources())

    def element(self, engine):
        return engine.from_terms((((), v, ()), 1) for v in sorted(self.accepted))

    def project(self, x, side: str = "both"):
        if side not in ("left", "right", "both"):
            raise ValueError("side must be left, right or both")
        eng = x.engine
        keep = {}
        for m, c in x.terms.items():
            if side in ("left", "both") and eng.source_of(m) not in self.accepted:
                continue
            if side in ("right", "both") and eng.target_of(m) not in self.accepted:
                continue
            keep[m] = c
        return eng.from_terms(keep.items())

    def witness(self, engine, mon):
        """A path alpha' into s(alpha) starting in W0 or Gamma0, as a graph element t_alpha'."""
        start = engine.source_of(mon)
        p = alpha_path(self.eg, self.eg.item_of(start))
        return engine.path(p.edges, p.base)


def corner_project(q: CornerQ, x, side: str = "both"):
    return q.project(x, side)
