"""Finite and cofinite vertex sets, and the set algebra they generate.

Vertices are addressed by non-negative integer index.  A universe is either
finite (indices ``0..size-1``) or the natural numbers.  In a finite universe
every set is stored as a finite set, so two sets are equal exactly when their
canonical forms are equal.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import count
from typing import Iterable, Iterator


class UniverseMismatch(ValueError):
    pass


@dataclass(frozen=True)
class Universe:
    size: int | None  # None means the natural numbers

    @property
    def is_finite(self) -> bool:
        return self.size is not None

    def __repr__(self):
        return "Nat" if self.size is None else f"Finite({self.size})"


NAT = Universe(None)


def finite_universe(n: int) -> Universe:
    return Universe(n)


@dataclass(frozen=True)
class VertexSet:
    universe: Universe
    items: tuple  # sorted indices: members (finite) or exclusions (cofinite)
    cofinite: bool = False

    # construction -------------------------------------------------------
    @staticmethod
    def finite(universe: Universe, members: Iterable[int]) -> "VertexSet":
        members = sorted(set(members))
        if universe.size is not None and members and (members[0] < 0 or members[-1] >= universe.size):
            raise ValueError("vertex index outside the universe")
        return VertexSet(universe, tuple(members), False)

    @staticmethod
    def cofinite_set(universe: Universe, excluded: Iterable[int]) -> "VertexSet":
        excluded = set(excluded)
        if universe.size is not None:
            return VertexSet(universe, tuple(i for i in range(universe.size) if i not in excluded), False)
        return VertexSet(universe, tuple(sorted(excluded)), True)

    @staticmethod
    def empty(universe: Universe) -> "VertexSet":
        return VertexSet(universe, (), False)

    @staticmethod
    def everything(universe: Universe) -> "VertexSet":
        return VertexSet.cofinite_set(universe, ())

    @staticmethod
    def single(universe: Universe, v: int) -> "VertexSet":
        return VertexSet.finite(universe, (v,))

    # queries ------------------------------------------------------------
    @property
    def is_finite(self) -> bool:
        return not self.cofinite

    @property
    def is_empty(self) -> bool:
        return not self.cofinite and not self.items

    def __contains__(self, v: int) -> bool:
        inside = v in self._lookup()
        return not inside if self.cofinite else inside

    def _lookup(self):
        cache = self.__dict__.get("_set")
        if cache is None:
            cache = frozenset(self.items)
            object.__setattr__(self, "_set", cache)
        return cache

    def __len__(self):
        if self.cofinite:
            raise OverflowError("cofinite set has no finite length")
        return len(self.items)

    def size_class(self):
        """``("finite", n)`` or ``("infinite", None)``."""
        return ("infinite", None) if self.cofinite else ("finite", len(self.items))

    def __iter__(self) -> Iterator[int]:
        if self.cofinite:
            excluded = self._lookup()
            return (i for i in count() if i not in excluded)
        return iter(self.items)

    def first(self, n: int) -> list:
        """The ``n`` smallest members (fewer if the set is smaller)."""
        out = []
        for v in self:
            if len(out) >= n:
                break
            out.append(v)
        return out

    def members(self) -> frozenset:
        if self.cofinite:
            raise OverflowError("cofinite set cannot be listed")
        return self._lookup()

    def _check(self, other: "VertexSet"):
        if self.universe != other.universe:
            raise UniverseMismatch(f"{self.universe} vs {other.universe}")

    # Boolean operations ---------------------------------------------------
    def union(self, other: "VertexSet") -> "VertexSet":
        self._check(other)
        a, b = self._lookup(), other._lookup()
        if not self.cofinite and not other.cofinite:
            return VertexSet.finite(self.universe, a | b)
        if self.cofinite and other.cofinite:
            return VertexSet.cofinite_set(self.universe, a & b)
        ex, fin = (a, b) if self.cofinite else (b, a)
        return VertexSet.cofinite_set(self.universe, ex - fin)

    def intersection(self, other: "VertexSet") -> "VertexSet":
        self._check(other)
        a, b = self._lookup(), other._lookup()
        if not self.cofinite and not other.cofinite:
            return VertexSet.finite(self.universe, a & b)
        if self.cofinite and other.cofinite:
            return VertexSet.cofinite_set(self.universe, a | b)
        ex, fin = (a, b) if self.cofinite else (b, a)
        return VertexSet.finite(self.universe, fin - ex)

    def difference(self, other: "VertexSet") -> "VertexSet":
        self._check(other)
        a, b = self._lookup(), other._lookup()
        if not self.cofinite and not other.cofinite:
            return VertexSet.finite(self.universe, a - b)
        if not self.cofinite:
            return VertexSet.finite(self.universe, a & b)
        if not other.cofinite:
            return VertexSet.cofinite_set(self.universe, a | b)
        return VertexSet.finite(self.universe, b - a)

    __or__ = union
    __and__ = intersection
    __sub__ = difference

    def issubset(self, other: "VertexSet") -> bool:
        return self.difference(other).is_empty

    def isdisjoint(self, other: "VertexSet") -> bool:
        return self.intersection(other).is_empty

    def sort_key(self):
        return (self.cofinite, len(self.items), self.items)


def set_op(op: str, a: VertexSet, b=None):
    """Dispatch one of ``union``, ``intersect``, ``difference``, ``member``, ``size_class``."""
    if op == "union":
        return a.union(b)
    if op == "intersect":
        return a.intersection(b)
    if op == "difference":
        return a.difference(b)
    if op == "member":
        return b in a
    if op == "size_class":
        return a.size_class()
    raise ValueError(f"unknown set operation {op!r}")


def atoms(sets: Iterable[VertexSet]) -> list:
    """The nonempty atoms of the Boolean ring generated by ``sets``.

    Each atom is the set of points with one fixed membership pattern among
    the generators (points in none of them are dropped).  Atoms are returned
    in a deterministic order.
    """
    sets = list(sets)
    if not sets:
        return []
    universe = sets[0].universe
    pieces = []
    for s in sets:
        new = []
        rest = s
        for p in pieces:
            inside = p.intersection(s)
            outside = p.difference(s)
            if not inside.is_empty:
                new.append(inside)
            if not outside.is_empty:
                new.append(outside)
            rest = rest.difference(p)
        if not rest.is_empty:
            new.append(rest)
        pieces = new
    for p in pieces:
        if p.universe != universe:
            raise UniverseMismatch("mixed universes")
    return sorted(pieces, key=VertexSet.sort_key)


def disjointify(sets: list) -> list:
    """Replace ``B_1, B_2, ...`` by ``B_k`` minus the union of the earlier ``B_i``."""
    out = []
    seen = None
    for b in sets:
        if seen is None:
            out.append(b)
            seen = b
        else:
            out.append(b.difference(seen))
            seen = seen.union(b)
    return out


class SetAlgebraDescription:
    """The smallest family containing the singletons and edge ranges, closed
    under union, intersection and relative complement.

    In a finite universe the closure is enumerated explicitly (as all unions of
    atoms of the generators); in the natural-number universe it is given by a
    membership rule.
    """

    def __init__(self, universe: Universe, generators: list, singletons_included: bool = True):
        self.universe = universe
        self.generators = list(generators)
        self._atoms = atoms(self.generators) if universe.is_finite else None
        self.allows_cofinite = any(g.cofinite for g in self.generators)

    @property
    def explicit(self) -> bool:
        return self.universe.is_finite

    def atoms(self) -> list:
        if self._atoms is None:
            raise OverflowError("the set algebra of an infinite universe has infinitely many atoms")
        return list(self._atoms)

    @property
    def size(self):
        if self._atoms is None:
            return None
        return 2 ** len(self._atoms)

    def contains(self, s: VertexSet) -> bool:
        if s.universe != self.universe:
            return False
        if self.universe.is_finite:
            return all(a.issubset(s) or a.isdisjoint(s) for a in self._atoms) and s.issubset(
                _union_all(self.universe, self._atoms)
            )
        return s.is_finite or self.allows_cofinite

    def members(self) -> Iterator[VertexSet]:
        """Every member, ordered by size then by elements; empty set first."""
        if self._atoms is None:
            raise OverflowError("cannot enumerate an infinite set algebra")
        ats = self._atoms
        out = []
        for mask in range(2 ** len(ats)):
            s = VertexSet.empty(self.universe)
            for i, a in enumerate(ats):
                if mask >> i & 1:
                    s = s.union(a)
            out.append(s)
        out.sort(key=VertexSet.sort_key)
        return iter(out)

    def rule(self) -> str:
        if self.universe.is_finite:
            return f"explicit closure with {self.size} members"
        if self.allows_cofinite:
            return "S is a member iff S is finite or cofinite"
        return "S is a member iff S is finite"


def _union_all(universe, sets):
    out = VertexSet.empty(universe)
    for s in sets:
        out = out.union(s)
    return out


def generate_G0(g) -> SetAlgebraDescription:
    """Set algebra of an ultragraph (anything with ``universe``, ``vertex_indices()`` and ``edges``)."""
    gens = []
    if g.universe.is_finite:
        gens.extend(VertexSet.single(g.universe, v) for v in range(g.universe.size))
    else:
        gens.extend(VertexSet.single(g.universe, v) for v in g.vertex_indices())
    gens.extend(e.range for e in g.edges)
    return SetAlgebraDescription(g.universe, gens)


def r_lambda_mu(g, lam, mu) -> VertexSet:
    """Intersection of the ranges in ``lam`` minus the union of the ranges in ``mu``."""
    lam = list(lam)
    if not lam:
        raise ValueError("lambda must be nonempty")
    out = g.range(lam[0])
    for e in lam[1:]:
        out = out.intersection(g.range(e))
    for f in mu:
        out = out.difference(g.range(f))
    return out
