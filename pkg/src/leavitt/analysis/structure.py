"""Condition (L), hereditary and saturated vertex sets, breaking vertices, simplicity."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from ..engine import UNKNOWN
from ..structures import Graph, TruncationExceeded, singular_vertices
from ..vertexsets import VertexSet

MAX_LATTICE_VERTICES = 12


@dataclass
class Verdict:
    result: object  # True, False or UNKNOWN
    witnesses: list = field(default_factory=list)
    reason: str = ""

    def __post_init__(self):
        if self.result is False and not self.witnesses:
            raise ValueError("a negative verdict needs a witness")

    def __bool__(self):
        if self.result is UNKNOWN:
            raise TypeError("verdict is Unknown")
        return bool(self.result)

    def describe(self) -> str:
        word = {True: "yes", False: "no"}.get(self.result, "unknown") if self.result is not UNKNOWN else "unknown"
        return word if not self.witnesses else f"{word} ({'; '.join(self.witnesses)})"


@dataclass(frozen=True)
class AdmissiblePair:
    H: VertexSet  # union of the members of the hereditary saturated family
    S: frozenset  # breaking vertices chosen


def _as_ultra(g):
    return g.to_ultragraph() if isinstance(g, Graph) else g


def simple_cycles(g) -> list:
    """Cycles e_1..e_n with pairwise distinct sources, one per rotation class.

    A cycle here is a path whose first source lies in the range of its last
    edge.  Each cycle is listed starting from its least edge index.
    """
    ug = _as_ultra(g)
    out = []
    edges = ug.edges
    from_vertex = {}
    for i, e in enumerate(edges):
        from_vertex.setdefault(e.source, []).append(i)

    def grow(path, used):
        last = edges[path[-1]].range
        start = edges[path[0]].source
        if start in last:
            out.append(tuple(path))
        for v, outs in from_vertex.items():
            if v in used or v not in last:
                continue
            for j in outs:
                if j > path[0]:
                    grow(path + [j], used | {v})

    for i, e in enumerate(edges):
        grow([i], {e.source})
    return sorted(out, key=lambda c: (len(c), c))


def _sinks_in(ug, A: VertexSet) -> bool:
    blocked = set(ug.sources()) | set(ug.infinite) | set(ug.frontier)
    if A.cofinite:
        return True  # only finitely many vertices emit edges
    return any(v not in blocked for v in A.items)


def cycle_exit(ug, cycle):
    """``"exit"``, ``"sink"``, ``"frontier"`` or None for a simple cycle."""
    n = len(cycle)
    edges = ug.edges
    touches_frontier = False
    for k, i in enumerate(cycle):
        nxt = cycle[(k + 1) % n]
        r = edges[i].range
        if edges[i].source in ug.infinite:
            return "exit"
        for j, f in enumerate(edges):
            if f.source in r and j != nxt:
                return "exit"
        for v in ug.infinite:
            if v in r:
                return "exit"
        if _sinks_in(ug, r):
            return "sink"
        if any(v in r for v in ug.frontier) or edges[i].source in ug.frontier:
            touches_frontier = True
    return "frontier" if touches_frontier else None


def cycle_name(ug, cycle) -> str:
    return " ".join(ug.edges[i].name for i in cycle)


def condition_L(g) -> Verdict:
    """Every simple cycle has an exit, passes an infinite emitter, or has a sink in some range.

    An exit of e_1..e_n is any edge f != e_{i+1} whose source lies in r(e_i).
    Cycles that only fail near a truncation frontier make the verdict Unknown.
    """
    ug = _as_ultra(g)
    bad, unsure = [], []
    for c in simple_cycles(ug):
        how = cycle_exit(ug, c)
        if how is None:
            bad.append(cycle_name(ug, c))
        elif how == "frontier":
            unsure.append(cycle_name(ug, c))
    if bad:
        return Verdict(False, [f"cycle without exit: {c}" for c in bad])
    if unsure:
        return Verdict(UNKNOWN, [f"cycle at the truncation frontier: {c}" for c in unsure], "truncated")
    return Verdict(True)


def _lattice_vertices(ug) -> int:
    n = ug.universe.size
    if n is None:
        raise TruncationExceeded("hereditary subsets of a nat-mode set algebra are not enumerable")
    if n > MAX_LATTICE_VERTICES:
        raise ValueError(f"{n} vertices exceed the lattice cap of {MAX_LATTICE_VERTICES}")
    return n


def _subsets(n):
    for k in range(n + 1):
        for c in combinations(range(n), k):
            yield frozenset(c)


def _is_hereditary(ug, U) -> bool:
    return all(e.range.items and set(e.range.items) <= U for e in ug.edges if e.source in U)


def _is_saturated(ug, U) -> bool:
    for v in range(ug.universe.size):
        if v in U or v in ug.no_lp4:
            continue
        outs = ug.out_edges(v)
        if outs and all(set(ug.edges[i].range.items) <= U for i in outs):
            return False
    return True


def hereditary_subsets(g) -> list:
    """Hereditary families, each given by the union of its members.

    On a finite universe the set algebra is the whole power set, so a family
    closed under unions and subsets is exactly {A : A <= U} for one vertex set U.
    """
    ug = _as_ultra(g)
    n = _lattice_vertices(ug)
    u = ug.universe
    return [VertexSet.finite(u, U) for U in _subsets(n) if _is_hereditary(ug, U)]


def hereditary_saturated_subsets(g) -> list:
    """Hereditary saturated families (as their unions), smallest first.

    Saturation only quantifies over vertices that are neither singular nor on
    the truncation frontier.
    """
    ug = _as_ultra(g)
    n = _lattice_vertices(ug)
    u = ug.universe
    return [VertexSet.finite(u, U) for U in _subsets(n) if _is_hereditary(ug, U) and _is_saturated(ug, U)]


def breaking_vertices(g, H: VertexSet) -> VertexSet:
    """Declared infinite emitters with finitely many, but some, declared edges leaving H."""
    ug = _as_ultra(g)
    out = []
    for v in sorted(ug.infinite):
        leaving = [i for i in ug.out_edges(v) if not ug.edges[i].range.issubset(H)]
        if leaving:
            out.append(v)
    return VertexSet.finite(ug.universe, out)


def admissible_pairs(g) -> list:
    out = []
    for H in hereditary_saturated_subsets(g):
        B = sorted(breaking_vertices(g, H).items)
        for k in range(len(B) + 1):
            for S in combinations(B, k):
                out.append(AdmissiblePair(H, frozenset(S)))
    return out


def simplicity_verdict(g, field_hint=None) -> Verdict:
    """Simple over a field iff Condition (L) holds and the only hereditary saturated sets are trivial."""
    ug = _as_ultra(g)
    if field_hint is not None and not field_hint.is_field:
        return Verdict(UNKNOWN, [], f"{field_hint.descriptor()} is not a field")
    L = condition_L(ug)
    if L.result is False:
        return Verdict(False, L.witnesses)
    try:
        hs = hereditary_saturated_subsets(ug)
    except TruncationExceeded as exc:
        return Verdict(UNKNOWN, L.witnesses, str(exc))
    n = ug.universe.size
    proper = [H for H in hs if 0 < len(H) < n]
    if proper:
        return Verdict(False, ["hereditary saturated H = {" + ",".join(ug.label(v) for v in H.items) + "}" for H in proper])
    if L.result is UNKNOWN or ug.frontier:
        return Verdict(UNKNOWN, L.witnesses, "truncation frontier present")
    return Verdict(True)


def unital(g):
    """Whether the algebra has a unit: the vertex set must be finite (graphs) or lie in the set algebra."""
    ug = _as_ultra(g)
    if ug.universe.size is not None:
        return True
    return any(e.range.cofinite for e in ug.edges)


def singular(g) -> VertexSet:
    return singular_vertices(_as_ultra(g))
