"""Finite-dimensional representations used to check the symbolic engines.

For a finite acyclic graph the algebra is a direct sum of full matrix rings,
one per sink w, indexed by the paths ending at w.  Vertex idempotents and edges
act on the span of those paths by prefixing.  A single loop is checked against
Laurent polynomials instead.
"""

from __future__ import annotations

import random
from fractions import Fraction

import numpy as np

from .engine import GraphEngine
from .rings import Ring
from .structures import Graph, enumerate_paths, find_cycles


class NotAcyclic(ValueError):
    pass


class WrongShape(ValueError):
    pass


def _require_acyclic(g: Graph):
    if g.edges and find_cycles(g, len(g.edges)):
        raise NotAcyclic(f"{g.name} has a cycle")


def paths_to_sinks(g: Graph) -> list:
    """Basis labels ``(sink, path)`` with every path ending at its sink; blocks in sink order."""
    _require_acyclic(g)
    out = []
    sinks = [w for w in range(g.vertex_count) if not g.out_edges(w)]
    for w in sinks:
        for v in range(g.vertex_count):
            for p in enumerate_paths(g, v, len(g.edges)):
                end = g.edges[p.edges[-1]].target if p.edges else v
                if end == w:
                    out.append((w, p.base, p.edges))
    return out


class Matrices:
    """Exact square matrices over GF(p) (int arrays) or Q (object arrays of Fraction)."""

    def __init__(self, ring: Ring):
        if ring.kind == "GF":
            self.p = ring.modulus
        elif ring.kind == "Q":
            self.p = None
        else:
            raise ValueError("oracle fields are GF(p) and Q")
        self.ring = ring

    def zeros(self, n):
        if self.p is None:
            a = np.empty((n, n), dtype=object)
            a.fill(Fraction(0))
            return a
        return np.zeros((n, n), dtype=np.int64)

    def identity(self, n):
        a = self.zeros(n)
        for i in range(n):
            a[i, i] = 1 if self.p else Fraction(1)
        return a

    def reduce(self, a):
        return a % self.p if self.p else a

    def mul(self, a, b):
        return self.reduce(a.dot(b))

    def add(self, a, b):
        return self.reduce(a + b)

    def scale(self, c, a):
        c = self.ring.coerce(c)
        return self.reduce(a * c)

    def is_zero(self, a) -> bool:
        return not np.any(a != 0)

    def equal(self, a, b) -> bool:
        return self.is_zero(self.reduce(a - b))


def rank(rows, field: Ring) -> int:
    """Rank of a list of equal-length vectors over GF(p) or Q by Gaussian elimination."""
    if not rows:
        return 0
    if field.kind == "GF":
        return _rank_mod_p(np.array(rows, dtype=np.int64) % field.modulus, field.modulus)
    m = [[field.coerce(x) for x in r] for r in rows]
    ncols = len(m[0])
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = field.inverse(m[r][c])
        m[r] = [field.mul(inv, x) for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [field.sub(x, field.mul(f, y)) for x, y in zip(m[i], m[r])]
        r += 1
        if r == len(m):
            break
    return r


def _rank_mod_p(a, p: int) -> int:
    a = a.copy()
    nrows, ncols = a.shape
    r = 0
    for c in range(ncols):
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + nz[0]
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        a[r] = a[r] * pow(int(a[r, c]), p - 2, p) % p
        col = a[:, c].copy()
        col[r] = 0
        a = (a - np.outer(col, a[r])) % p
        r += 1
        if r == nrows:
            break
    return r


class MatrixRep:
    """Images of the generators of an acyclic graph's algebra."""

    def __init__(self, graph: Graph, ring: Ring):
        self.graph = graph
        self.ring = ring
        self.mats = Matrices(ring)
        self.basis = paths_to_sinks(graph)
        self.dim = len(self.basis)
        index = {(b[1], b[2]): i for i, b in enumerate(self.basis)}
        self.blocks = {}
        for i, (w, _, _) in enumerate(self.basis):
            self.blocks.setdefault(w, []).append(i)
        one = 1 if ring.kind == "GF" else Fraction(1)
        self.vertex = {}
        for v in range(graph.vertex_count):
            a = self.mats.zeros(self.dim)
            for i, (_, base, p) in enumerate(self.basis):
                if base == v:
                    a[i, i] = one
            self.vertex[v] = a
        self.edge = {}
        for k, e in enumerate(graph.edges):
            a = self.mats.zeros(self.dim)
            for j, (_, base, p) in enumerate(self.basis):
                if base == e.target:
                    a[index[(e.source, (k,) + p)], j] = one
            self.edge[k] = a
        self.ghost = {k: a.T.copy() for k, a in self.edge.items()}
        self._monomials = {}

    def block_sizes(self) -> list:
        return [len(ix) for _, ix in sorted(self.blocks.items())]

    def path_matrix(self, edges, base):
        if not edges:
            return self.vertex[base]
        out = self.edge[edges[0]]
        for e in edges[1:]:
            out = self.mats.mul(out, self.edge[e])
        return out

    def monomial_matrix(self, mon):
        m = self._monomials.get(mon)
        if m is None:
            alpha, v, beta = mon
            m = self.mats.mul(self.path_matrix(alpha, v), self.path_matrix(beta, v).T)
            self._monomials[mon] = m
        return m

    def image(self, x):
        """Matrix of a graph-engine element."""
        out = self.mats.zeros(self.dim)
        for mon, c in x.terms.items():
            out = out + self.monomial_matrix(mon) * self.ring.coerce(c)
        return self.mats.reduce(out)

    def check_relations(self) -> list:
        """Failures of the four graph relations on the generator matrices (empty when all hold)."""
        g, M = self.graph, self.mats
        bad = []
        for v in range(g.vertex_count):
            for w in range(g.vertex_count):
                want = self.vertex[v] if v == w else M.zeros(self.dim)
                if not M.equal(M.mul(self.vertex[v], self.vertex[w]), want):
                    bad.append(f"vertex orthogonality {v},{w}")
        for k, e in enumerate(g.edges):
            if not M.equal(M.mul(self.vertex[e.source], self.edge[k]), self.edge[k]):
                bad.append(f"source {e.name}")
            if not M.equal(M.mul(self.edge[k], self.vertex[e.target]), self.edge[k]):
                bad.append(f"range {e.name}")
            for j, f in enumerate(g.edges):
                want = self.vertex[e.target] if j == k else M.zeros(self.dim)
                if not M.equal(M.mul(self.ghost[k], self.edge[j]), want):
                    bad.append(f"ghost {e.name},{f.name}")
        for v in range(g.vertex_count):
            outs = g.out_edges(v)
            if outs and v not in g.no_lp4:
                s = M.zeros(self.dim)
                for k in outs:
                    s = M.add(s, M.mul(self.edge[k], self.ghost[k]))
                if not M.equal(s, self.vertex[v]):
                    bad.append(f"sum relation at {g.label(v)}")
        return bad


def acyclic_matrix_rep(g: Graph, ring: Ring) -> MatrixRep:
    rep = MatrixRep(g, ring)
    bad = rep.check_relations()
    if bad:
        raise AssertionError(f"generator matrices violate relations: {bad}")
    return rep


def dim_acyclic(g: Graph) -> int:
    """Sum over sinks of the squared number of paths ending there."""
    _require_acyclic(g)
    counts = {}
    for v in range(g.vertex_count):
        for p in enumerate_paths(g, v, len(g.edges)):
            end = g.edges[p.edges[-1]].target if p.edges else v
            if not g.out_edges(end):
                counts[end] = counts.get(end, 0) + 1
    return sum(c * c for c in counts.values())


def normal_form_basis(engine: GraphEngine) -> list:
    """All normal-form monomials of an acyclic graph: pairs of paths with a common end, reduced."""
    g = engine.structure
    _require_acyclic(g)
    paths = []
    for v in range(g.vertex_count):
        paths.extend(enumerate_paths(g, v, len(g.edges)))
    ends = {}
    for p in paths:
        end = g.edges[p.edges[-1]].target if p.edges else p.base
        ends.setdefault(end, []).append(p.edges)
    out = []
    for v, ps in ends.items():
        for a in ps:
            for b in ps:
                m = (a, v, b)
                if len(engine.expand(m)) == 1 and engine.expand(m)[0] == (m, 1):
                    out.append(m)
    return out


def _flat(a) -> list:
    return [x for row in a.tolist() for x in row]


def algebra_basis(rep) -> list:
    """Linearly independent matrices spanning the image algebra."""
    if hasattr(rep, "basis_matrices"):
        return list(rep.basis_matrices)
    g = rep.graph
    paths = []
    for v in range(g.vertex_count):
        paths.extend(enumerate_paths(g, v, len(g.edges)))
    out, rows = [], []
    for a in paths:
        for b in paths:
            if _end(g, a) != _end(g, b):
                continue
            m = rep.mats.mul(rep.path_matrix(a.edges, a.base), rep.path_matrix(b.edges, b.base).T)
            if rank(rows + [_flat(m)], rep.ring) > len(rows):
                rows.append(_flat(m))
                out.append(m)
    return out


def _end(g, p):
    return g.edges[p.edges[-1]].target if p.edges else p.base


def ideal_dimension(rep, basis, x) -> int:
    """Dimension of the two-sided ideal generated by ``x``."""
    M = rep.mats
    mult = basis + [M.identity(rep.dim)]
    rows = [_flat(M.mul(M.mul(u, x), w)) for u in mult for w in mult]
    return rank(rows, rep.ring)


def brute_force_simple(rep, exhaustive_limit: int = 512) -> bool:
    """Whether every nonzero element generates the whole algebra as a two-sided ideal.

    Runs over a basis of the image algebra, and over every nonzero element
    when the algebra has at most ``exhaustive_limit`` elements.
    """
    basis = algebra_basis(rep)
    dim = len(basis)
    if dim == 0:
        return False
    candidates = list(basis)
    q = rep.ring.modulus
    if q is not None and q**dim <= exhaustive_limit:
        from itertools import product

        for coeffs in product(range(q), repeat=dim):
            if any(coeffs):
                x = rep.mats.zeros(rep.dim)
                for c, b in zip(coeffs, basis):
                    if c:
                        x = rep.mats.add(x, rep.mats.scale(c, b))
                candidates.append(x)
    return all(ideal_dimension(rep, basis, x) == dim for x in candidates)


class BlockAlgebra:
    """A direct sum of full matrix algebras M_n(F), for oracle self-tests."""

    def __init__(self, sizes, ring: Ring):
        self.ring = ring
        self.mats = Matrices(ring)
        self.dim = sum(sizes)
        self.blocks = {}
        start = 0
        for b, n in enumerate(sizes):
            self.blocks[b] = list(range(start, start + n))
            start += n
        one = 1 if ring.kind == "GF" else Fraction(1)
        self.basis_matrices = []
        for ix in self.blocks.values():
            for i in ix:
                for j in ix:
                    a = self.mats.zeros(self.dim)
                    a[i, j] = one
                    self.basis_matrices.append(a)


def image_dimension(rep: MatrixRep) -> int:
    """Dimension of the span of the images of all path monomials."""
    return len(algebra_basis(rep))


# random elements ------------------------------------------------------------------


def _paths_by_end(engine, max_len: int):
    """Paths of length <= max_len, grouped by start vertex and by end vertex (cached on the engine)."""
    cache = engine.__dict__.setdefault("_oracle_paths", {})
    if max_len in cache:
        return cache[max_len]
    g = engine.structure
    by_start, by_end = [], {}
    for u in range(g.vertex_count):
        ps = list(enumerate_paths(g, u, max_len))
        by_start.append(ps)
        for p in ps:
            pe = g.edges[p.edges[-1]].target if p.edges else u
            by_end.setdefault(pe, []).append(p)
    cache[max_len] = by_start, by_end
    return by_start, by_end


def random_monomial(engine: GraphEngine, rng: random.Random, max_len: int = 3):
    g = engine.structure
    by_start, by_end = _paths_by_end(engine, max_len)
    v = rng.randrange(g.vertex_count)
    a = rng.choice(by_start[v])
    end = g.edges[a.edges[-1]].target if a.edges else v
    b = rng.choice(by_end[end])
    return (a.edges, end, b.edges)


def random_element(engine, rng: random.Random, terms: int = 3, max_len: int = 3):
    pairs = [(random_monomial(engine, rng, max_len), engine.ring.random(rng) or 1) for _ in range(terms)]
    return engine.from_terms(pairs)


def compare(engine: GraphEngine, rep: MatrixRep, sample_count: int, seed: int = 0) -> dict:
    """Check rep(a*b) = rep(a) rep(b) and zero-ness agreement on random pairs."""
    rng = random.Random(seed)
    M = rep.mats
    disagreements = []
    for i in range(sample_count):
        a = random_element(engine, rng)
        b = random_element(engine, rng)
        ab = a * b
        if not M.equal(rep.image(ab), M.mul(rep.image(a), rep.image(b))):
            disagreements.append(("product", str(a), str(b)))
        for x in (a, ab):
            if x.is_zero() != M.is_zero(rep.image(x)):
                disagreements.append(("zero", str(x)))
    return {"samples": sample_count, "disagreements": disagreements}


# the single loop --------------------------------------------------------------------


class Laurent:
    """Exact Laurent polynomial as a dict exponent -> coefficient."""

    def __init__(self, ring: Ring, coeffs=None):
        self.ring = ring
        self.coeffs = {k: c for k, c in (coeffs or {}).items() if not ring.is_zero(c)}

    def __add__(self, other):
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            out[k] = self.ring.add(out.get(k, self.ring.zero()), c)
        return Laurent(self.ring, out)

    def __mul__(self, other):
        out = {}
        for i, a in self.coeffs.items():
            for j, b in other.coeffs.items():
                out[i + j] = self.ring.add(out.get(i + j, self.ring.zero()), self.ring.mul(a, b))
        return Laurent(self.ring, out)

    def __eq__(self, other):
        return isinstance(other, Laurent) and self.coeffs == other.coeffs

    def __repr__(self):
        if not self.coeffs:
            return "0"
        return " + ".join(f"{self.ring.format(c)}*x^{k}" for k, c in sorted(self.coeffs.items()))


def laurent_rep(g: Graph, ring: Ring):
    """Evaluation map t_e -> x, t_e* -> 1/x, q_v -> 1 for a one-vertex one-loop graph."""
    if g.vertex_count != 1 or len(g.edges) != 1 or g.edges[0].target != 0:
        raise WrongShape("laurent_rep needs exactly one vertex with one loop")

    def evaluate(x) -> Laurent:
        out = Laurent(ring)
        for (alpha, _, beta), c in x.terms.items():
            out = out + Laurent(ring, {len(alpha) - len(beta): ring.coerce(c)})
        return out

    return evaluate
