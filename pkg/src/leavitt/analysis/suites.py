"""Bounded verification suites for the named identities, run instance by instance."""

from __future__ import annotations

import random
from itertools import combinations, product

from ..constructions import (
    CornerQ,
    NotReachable,
    alpha_path,
    build_EG,
    desingularize,
    lex3,
    llgex,
    llgex2,
)
from ..engine import UNKNOWN, ELEngine, GraphEngine, MissingGeneratorAssignment, UltraEngine, apply_hom, equal
from ..rings import Z
from ..structures import Graph, TruncationExceeded, singular_vertices
from ..vertexsets import VertexSet, r_lambda_mu
from .families import check_family
from .report import Report
from .structure import condition_L, hereditary_saturated_subsets

SUITES = ("lci", "corth", "lglg", "lglg2", "texlg", "tlgis_span", "transfer_L", "transfer_hs", "desing_L")


def _record(report, label, lhs, rhs):
    v = equal(lhs, rhs)
    if v is True:
        report.add(label, "pass")
    elif v is UNKNOWN:
        report.add(label, "unknown", f"{lhs} =? {rhs}")
    else:
        report.add(label, "fail", f"{lhs} != {rhs}")


def _signed_product(factors_in, factors_out, zero):
    """prod(f in factors_in) * prod(1 - g for g in factors_out), expanded without a unit."""
    total = zero
    for t in range(len(factors_out) + 1):
        for T in combinations(factors_out, t):
            prod = None
            for f in list(factors_in) + list(T):
                prod = f if prod is None else prod * f
            total = total + (prod if t % 2 == 0 else -prod)
    return total


# lci ------------------------------------------------------------------------------------


def suite_lci(ug, n_max: int = 4, ring=Z) -> Report:
    """sum over nonempty Y of prod_Y P_i prod_{not Y} (1 - P_i) = 1 - prod (1 - P_i), P_i = s_{e_i}* s_{e_i}."""
    report = Report("lci")
    el = ELEngine(_ultra(ug), ring)
    one = el.one()
    P = [el.ghost(i) * el.edge(i) for i in range(len(el.structure.edges))]
    for i, a in enumerate(P):
        _record(report, f"idempotent {i + 1}", a * a, a)
        for j in range(i + 1, len(P)):
            _record(report, f"commute {i + 1},{j + 1}", a * P[j], P[j] * a)
    for n in range(1, min(n_max, len(P)) + 1):
        ps = P[:n]
        lhs = el.zero()
        for mask in range(1, 2 ** n):
            term = one
            for i, p in enumerate(ps):
                term = term * (p if mask >> i & 1 else one - p)
            lhs = lhs + term
        rhs = one
        for p in ps:
            rhs = rhs * (one - p)
        _record(report, f"n={n}", lhs, one - rhs)
    return report


def _ultra(g):
    return g.to_ultragraph() if isinstance(g, Graph) else g


# E_G based suites ------------------------------------------------------------------------------


def _alpha_element(eg, ge, x, cache):
    if x not in cache:
        p = alpha_path(eg, x)
        cache[x] = ge.path(p.edges, p.base)
    return cache[x]


def suite_corth(eg, ring=Z) -> Report:
    """t_{alpha_x}* t_{alpha_y} = 0 for distinct x, y in X(e_n)."""
    report = Report("corth")
    ge = GraphEngine(eg.graph, ring)
    cache = {}
    ug = eg.ultragraph
    for n, items in sorted(eg.x_table.items()):
        for x, y in product(items, items):
            if x == y:
                continue
            label = f"{ug.edges[n].name}: {_item(eg, x)},{_item(eg, y)}"
            try:
                ax = _alpha_element(eg, ge, x, cache)
                ay = _alpha_element(eg, ge, y, cache)
            except NotReachable as exc:
                report.add(label, "skip", str(exc))
                continue
            _record(report, label, ax.star() * ay, ge.zero())
    return report


def _item(eg, x):
    return f"({x})" if isinstance(x, str) else eg.ultragraph.label(x)


def _short_sigma_vertices(eg, where: VertexSet, k: int):
    """Vertices of ``where`` in W0 or with |sigma| < k; None when the window cannot decide."""
    if not all(n in eg.full_levels for n in range(1, k)):
        return None
    zero_part = where & eg.w_zero
    if not zero_part.is_finite:
        return None
    out = set(zero_part.items)
    out |= {v for v, w in eg.sigma.items() if len(w) < k and v in where}
    return sorted(out)


def lglg_sides(eg, m, word: str):
    """Both sides of the lglg identity for one word, as E_G elements."""
    ge = m.target
    k = len(word)
    N = [i for i in range(k) if word[i] == "1"]
    M = [i for i in range(k) if word[i] == "0"]
    Q = {i: m.ghost_image(i) * m.edge_image(i) for i in N + M}
    lhs = _signed_product([Q[i] for i in N], [Q[i] for i in M], ge.zero())
    where = r_lambda_mu(eg.ultragraph, N, M)
    verts = _short_sigma_vertices(eg, where, k)
    if verts is None:
        raise NotReachable("r(N, M) reaches sigma levels outside the window")
    a = _alpha_element(eg, ge, word, {})
    rhs = a * a.star()
    for v in verts:
        rhs = rhs + m.vertex_image(v)
    return lhs, rhs


def suite_lglg(eg, k_max: int = 3, ring=Z, family=None) -> Report:
    report = Report("lglg")
    m = family or lex3(eg, ring)
    for word in eg.delta:
        if len(word) > k_max:
            continue
        try:
            lhs, rhs = lglg_sides(eg, m, word)
        except (NotReachable, MissingGeneratorAssignment) as exc:
            report.add(f"({word})", "skip", str(exc))
            continue
        _record(report, f"({word})", lhs, rhs)
    return report


def _x_edges(eg):
    return {gi: key[1] for key, gi in eg.edge_of.items() if key[0] == "x"}


def sample_paths(eg, count: int, seed: int = 0, max_len: int = 4) -> list:
    """Distinct paths of E_G starting in W0 or Gamma0, drawn by random walks."""
    rng = random.Random(seed)
    g = eg.graph
    starts = sorted(eg.accepted_sources())
    seen = []
    for _ in range(count * 20):
        if len(seen) >= count or not starts:
            break
        v = rng.choice(starts)
        path = []
        for _ in range(rng.randint(0, max_len)):
            outs = g.out_edges(v)
            if not outs:
                break
            e = rng.choice(outs)
            path.append(e)
            v = g.edges[e].target
        key = (g.edges[path[0]].source if path else v, tuple(path))
        if key not in seen:
            seen.append(key)
    return seen


def suite_lglg2(eg, samples: int = 20, seed: int = 0, ring=Z, family=None) -> Report:
    """t_gamma = S_{e_n1} ... S_{e_nk} t_{alpha_{r(gamma)}} on sampled paths."""
    report = Report("lglg2")
    m = family or lex3(eg, ring)
    ge = m.target
    g = eg.graph
    owner = _x_edges(eg)
    cache = {}
    for base, path in sample_paths(eg, samples, seed):
        label = " ".join(g.edges[e].name for e in path) or g.label(base)
        end = g.edges[path[-1]].target if path else base
        try:
            rhs = _alpha_element(eg, ge, eg.item_of(end), cache)
            for e in reversed(path):
                if e in owner:
                    rhs = m.edge_image(owner[e]) * rhs
        except (NotReachable, MissingGeneratorAssignment) as exc:
            report.add(label, "skip", str(exc))
            continue
        _record(report, label, ge.path(path, base), rhs)
    return report


def _el_preimage(eg, el, m, alpha, beta, base_a, base_b):
    """An Exel-Laca element whose lex3 image is t_alpha t_beta*, built via lglg2 and lglg."""
    g = eg.graph
    owner = _x_edges(eg)
    end = g.edges[alpha[-1]].target if alpha else base_a
    item = eg.item_of(end)
    if isinstance(item, int):
        mid = el.vertex(item)
    else:
        k = len(item)
        N = [i for i in range(k) if item[i] == "1"]
        M = [i for i in range(k) if item[i] == "0"]
        Q = {i: el.range_projection(i) for i in N + M}
        mid = _signed_product([Q[i] for i in N], [Q[i] for i in M], el.zero())
        where = r_lambda_mu(eg.ultragraph, N, M)
        verts = _short_sigma_vertices(eg, where, k)
        if verts is None:
            raise NotReachable("r(N, M) reaches sigma levels outside the window")
        for v in verts:
            mid = mid - el.vertex(v)
    left = [owner[e] for e in alpha if e in owner]
    right = [owner[e] for e in beta if e in owner]
    out = mid
    for n in reversed(left):
        out = el.edge(n) * out
    for n in reversed(right):
        out = out * el.ghost(n)
    return out


def _paths_from(g, v, max_len):
    out = [()]
    frontier = [((), v)]
    for _ in range(max_len):
        nxt = []
        for p, w in frontier:
            for e in g.out_edges(w):
                q = p + (e,)
                out.append(q)
                nxt.append((q, g.edges[e].target))
        frontier = nxt
    return out


def suite_tlgis_span(eg, degree: int = 3, ring=Z, cap: int = 400, family=None) -> Report:
    """Double inclusion between the lex3 image and the corner Q L(E_G) Q, up to a degree bound.

    Forward: images of spanning monomials of the Exel-Laca algebra are fixed by Q.
    Backward: every t_alpha t_beta* with s(alpha), s(beta) in W0 or Gamma0 has a
    preimage, assembled from the lglg2 and lglg identities.
    """
    report = Report("tlgis_span")
    m = family or lex3(eg, ring)
    ge = m.target
    ug = eg.ultragraph
    el = ELEngine(ug, ring)
    q = CornerQ(eg)
    # forward
    ue_paths = []
    for v in ug.vertex_indices():
        for p in _paths_from_ultra(ug, v, degree):
            ue_paths.append((v, p))
    count = 0
    for (va, a), (vb, b) in product(ue_paths, ue_paths):
        if count >= cap:
            break
        if len(a) + len(b) > degree:
            continue
        mids = []
        ra = ug.edges[a[-1]].range if a else VertexSet.single(ug.universe, va)
        rb = ug.edges[b[-1]].range if b else VertexSet.single(ug.universe, vb)
        common = ra & rb
        if common.is_empty:
            continue
        if a or b:
            S = tuple(sorted({p[-1] for p in (a, b) if p}))
            mids.append(("Q", S))
        else:
            mids.append(("v", va))
        for mid in mids:
            x = el.monomial((a, mid, b))
            if x.is_zero():
                continue
            count += 1
            label = f"forward {el.format_mon((a, mid, b))}"
            try:
                img = apply_hom(x, m)
            except MissingGeneratorAssignment as exc:
                report.add(label, "skip", str(exc))
                continue
            _record(report, label, q.project(img, "both"), img)
    # backward
    g = eg.graph
    starts = sorted(q.accepted)
    paths = [(v, p) for v in starts for p in _paths_from(g, v, degree)]
    count = 0
    for (va, a), (vb, b) in product(paths, paths):
        if count >= cap:
            break
        ea = g.edges[a[-1]].target if a else va
        eb = g.edges[b[-1]].target if b else vb
        if ea != eb or len(a) + len(b) > degree:
            continue
        count += 1
        target = ge.monomial((a, ea, b))
        label = f"backward {ge.format_mon((a, ea, b))}"
        try:
            pre = _el_preimage(eg, el, m, a, b, va, vb)
            img = apply_hom(pre, m)
        except (NotReachable, MissingGeneratorAssignment) as exc:
            report.add(label, "skip", str(exc))
            continue
        _record(report, label, img, target)
    return report


def _paths_from_ultra(ug, v, max_len):
    out = [()]
    frontier = [((), VertexSet.single(ug.universe, v))]
    for _ in range(max_len):
        nxt = []
        for p, here in frontier:
            for i, e in enumerate(ug.edges):
                if e.source in here:
                    q = p + (i,)
                    out.append(q)
                    nxt.append((q, e.range))
        frontier = nxt
    return out


# generator transport --------------------------------------------------------------------------


def suite_texlg(structures, ring=Z) -> Report:
    """Both generator maps between the Exel-Laca and Leavitt algebras respect the relations and invert each other."""
    report = Report("texlg")
    for g in structures:
        ug = _ultra(g)
        if not singular_vertices(ug).is_empty or ug.universe.size is None:
            report.add(ug.name, "skip", "singular vertices present")
            continue
        to_l = llgex2(ug, ring)
        to_el = llgex(ug, ring)
        for sub in (check_family(to_l, "ExL"), check_family(to_el, "uLP")):
            status = "pass" if sub.ok else "fail"
            report.add(f"{ug.name} {sub.name}", status, "" if sub.ok else str(sub.failures()[0]))
        ue, el = to_l.target, to_el.target
        for v in ug.vertex_indices():
            _record(report, f"{ug.name} round trip p_{ug.label(v)}", apply_hom(apply_hom(ue.vertex(v), to_el), to_l), ue.vertex(v))
            _record(report, f"{ug.name} round trip el p_{ug.label(v)}", apply_hom(apply_hom(el.vertex(v), to_l), to_el), el.vertex(v))
        for i, e in enumerate(ug.edges):
            for x in (ue.edge(i), ue.ghost(i)):
                _record(report, f"{ug.name} round trip {x}", apply_hom(apply_hom(x, to_el), to_l), x)
            for x in (el.edge(i), el.ghost(i), el.range_projection(i)):
                _record(report, f"{ug.name} round trip el {x}", apply_hom(apply_hom(x, to_l), to_el), x)
    return report


# transfer propositions ------------------------------------------------------------------------


def _decided(v):
    return v.result is not UNKNOWN


def suite_transfer_L(structures, window: int = 8) -> Report:
    report = Report("transfer_L")
    for g in structures:
        ug = _ultra(g)
        a = condition_L(ug)
        eg = build_EG(ug, window=window)
        b = condition_L(eg.graph)
        if not (_decided(a) and _decided(b)):
            report.add(ug.name, "skip", "undecided at the truncation frontier")
        elif a.result == b.result:
            report.add(ug.name, "pass")
        else:
            report.add(ug.name, "fail", f"G: {a.describe()}; E_G: {b.describe()}")
    return report


def _trivial_lattice(g):
    hs = hereditary_saturated_subsets(g)
    return len(hs) <= 2


def suite_transfer_hs(structures, window: int = 8) -> Report:
    report = Report("transfer_hs")
    for g in structures:
        ug = _ultra(g)
        if ug.universe.size is None or not singular_vertices(ug).is_empty:
            report.add(ug.name, "skip", "needs a finite ultragraph without singular vertices")
            continue
        eg = build_EG(ug, window=window)
        try:
            a, b = _trivial_lattice(ug), _trivial_lattice(eg.graph)
        except ValueError as exc:
            report.add(ug.name, "skip", str(exc))
            continue
        report.add(ug.name, "pass" if a == b else "fail", "" if a == b else f"G trivial: {a}; E_G trivial: {b}")
    return report


def suite_desing_L(structures, depth: int = 3) -> Report:
    report = Report("desing_L")
    for g in structures:
        ug = _ultra(g)
        try:
            d = desingularize(ug, depth, allow_partial=True)
        except TruncationExceeded as exc:
            report.add(ug.name, "skip", str(exc))
            continue
        a, b = condition_L(ug), condition_L(d.structure)
        if not (_decided(a) and _decided(b)):
            report.add(f"{ug.name} L", "skip", "undecided at the truncation frontier")
        elif a.result == b.result:
            report.add(f"{ug.name} L", "pass")
        else:
            report.add(f"{ug.name} L", "fail", f"G: {a.describe()}; F: {b.describe()}")
    return report


# dispatch -----------------------------------------------------------------------------------------


def verify_identity_suite(name: str, context: dict) -> Report:
    """Run one named suite.

    ``context`` keys: ``structures`` (list), ``ring``, ``window``, ``depth``
    (desingularization depth), ``degree``, ``samples``, ``seed``, ``k_max``,
    ``n_max``.  Suites built on E_G use the first structure.
    """
    ring = context.get("ring", Z)
    structures = list(context.get("structures", ()))
    if not structures:
        raise ValueError("no structures to verify against")
    first = _ultra(structures[0])
    window = context.get("window", 8)

    def eg():
        return build_EG(first, window=window)

    if name == "lci":
        return suite_lci(first, context.get("n_max", 4), ring)
    if name == "corth":
        return suite_corth(eg(), ring)
    if name == "lglg":
        return suite_lglg(eg(), context.get("k_max", 3), ring)
    if name == "lglg2":
        return suite_lglg2(eg(), context.get("samples", 20), context.get("seed", 0), ring)
    if name == "texlg":
        return suite_texlg(structures, ring)
    if name == "tlgis_span":
        return suite_tlgis_span(eg(), context.get("degree", 3), ring)
    if name == "transfer_L":
        return suite_transfer_L(structures, window)
    if name == "transfer_hs":
        return suite_transfer_hs(structures, window)
    if name == "desing_L":
        return suite_desing_L(structures, context.get("depth", 3))
    raise ValueError(f"unknown suite {name!r}; expected one of {', '.join(SUITES)}")
