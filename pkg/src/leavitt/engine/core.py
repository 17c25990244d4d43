"""Elements as finite linear combinations of monomials, shared by all engines."""

from __future__ import annotations


class EngineMismatch(ValueError):
    pass


class MissingGeneratorAssignment(KeyError):
    pass


class ZeroElement(ValueError):
    pass


class _Unknown:
    """Third truth value for equality tests that cannot be decided."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "Unknown"

    def __bool__(self):
        raise TypeError("Unknown has no truth value; compare with `is UNKNOWN`")


UNKNOWN = _Unknown()


class Engine:
    """Arithmetic of one algebra over one structure and one coefficient ring.

    Subclasses provide ``canon`` (monomial -> canonical monomial or None),
    ``mul_mon`` (product of two canonical monomials as (monomial, int) pairs),
    ``expand`` (rewrite one canonical monomial into reduced form) and the
    formatting hooks.
    """

    kind = ""

    def __init__(self, structure, ring):
        self.structure = structure
        self.ring = ring
        self._expand_cache = {}

    # hooks --------------------------------------------------------------------
    def canon(self, mon):
        return mon

    def expand(self, mon):
        return ((mon, 1),)

    def mul_mon(self, m1, m2):
        raise NotImplementedError

    def degree(self, mon) -> int:
        return len(mon[0]) - len(mon[-1])

    def star_mon(self, mon):
        raise NotImplementedError

    def mon_key(self, mon):
        return mon

    def format_mon(self, mon) -> str:
        return repr(mon)

    # construction ---------------------------------------------------------------
    def same(self, other) -> bool:
        return (
            self.kind == other.kind
            and self.ring == other.ring
            and (self.structure is other.structure or self.structure == other.structure)
        )

    def check(self, other: "Engine"):
        if self is other:
            return
        if self.ring != other.ring:
            from ..rings import RingMismatch

            raise RingMismatch(f"{self.ring.descriptor()} vs {other.ring.descriptor()}")
        if not self.same(other):
            raise EngineMismatch(f"{self.kind} over {self.structure!r} vs {other.kind} over {other.structure!r}")

    def zero(self) -> "Element":
        return Element(self, {})

    def from_terms(self, pairs) -> "Element":
        """Build a reduced element from ``(monomial, coefficient)`` pairs."""
        ring = self.ring
        acc = {}
        for mon, c in pairs:
            c = ring.coerce(c)
            if ring.is_zero(c):
                continue
            mon = self.canon(mon)
            if mon is None:
                continue
            for m, k in self._expanded(mon):
                v = ring.add(acc.get(m, ring.zero()), ring.mul(c, ring.coerce(k)))
                if ring.is_zero(v):
                    acc.pop(m, None)
                else:
                    acc[m] = v
        return Element(self, acc)

    def _expanded(self, mon):
        hit = self._expand_cache.get(mon)
        if hit is None:
            hit = tuple(self.expand(mon))
            self._expand_cache[mon] = hit
        return hit

    def monomial(self, mon, coeff=1) -> "Element":
        return self.from_terms([(mon, coeff)])

    def scalar_unit(self):
        """The unit of the algebra, when it has one as a monomial."""
        return None

    # arithmetic ---------------------------------------------------------------------
    def multiply(self, a: "Element", b: "Element") -> "Element":
        self.check(a.engine)
        self.check(b.engine)
        ring = self.ring
        pairs = []
        for m1, c1 in a.terms.items():
            for m2, c2 in b.terms.items():
                c = ring.mul(c1, c2)
                for m, k in self.mul_mon(m1, m2):
                    pairs.append((m, ring.mul(c, ring.coerce(k))))
        return self.from_terms(pairs)

    def equal(self, a: "Element", b: "Element"):
        d = a - b
        return d.is_zero()


class Element:
    """An immutable R-linear combination of canonical monomials."""

    __slots__ = ("engine", "terms")

    def __init__(self, engine: Engine, terms: dict):
        self.engine = engine
        self.terms = terms

    @property
    def ring(self):
        return self.engine.ring

    @property
    def structure(self):
        return self.engine.structure

    def is_zero(self) -> bool:
        return not self.terms

    def _lift(self, other):
        if isinstance(other, Element):
            self.engine.check(other.engine)
            return other
        return None

    def __add__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return self.engine.from_terms(list(self.terms.items()) + list(other.terms.items()))

    def __neg__(self):
        ring = self.ring
        return Element(self.engine, {m: ring.neg(c) for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def scale(self, r):
        ring = self.ring
        r = ring.coerce(r)
        out = {}
        for m, c in self.terms.items():
            v = ring.mul(r, c)
            if not ring.is_zero(v):
                out[m] = v
        return Element(self.engine, out)

    def __mul__(self, other):
        if isinstance(other, Element):
            return self.engine.multiply(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        if isinstance(other, Element):
            return other.engine.multiply(other, self)
        return self.scale(other)

    def __pow__(self, n: int):
        if n < 1:
            raise ValueError("only positive powers are defined")
        out = self
        for _ in range(n - 1):
            out = out * self
        return out

    def same_terms(self, other) -> bool:
        return self.engine.same(other.engine) and self.terms == other.terms

    def __eq__(self, other):
        return isinstance(other, Element) and self.same_terms(other)

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda mc: self.engine.mon_key(mc[0]))

    def degree_components(self) -> dict:
        """Split by degree |alpha| - |beta|."""
        parts = {}
        for m, c in self.terms.items():
            parts.setdefault(self.engine.degree(m), {})[m] = c
        return {d: Element(self.engine, t) for d, t in sorted(parts.items())}

    def star(self) -> "Element":
        return self.engine.from_terms((self.engine.star_mon(m), c) for m, c in self.terms.items())

    def __str__(self):
        return format_element(self)

    def __repr__(self):
        return f"<{self.engine.kind} element {format_element(self)}>"


def format_element(x: Element) -> str:
    if x.is_zero():
        return "0"
    ring = x.ring
    out = []
    for m, c in x.sorted_terms():
        body = x.engine.format_mon(m)
        neg = False
        if ring.kind in ("Z", "Q") and c < 0:
            neg, c = True, -c
        text = body if c == 1 and body != "1" else (ring.format(c) if body == "1" else f"{ring.format(c)}*{body}")
        if not out:
            out.append(("-" if neg else "") + text)
        else:
            out.append((" - " if neg else " + ") + text)
    return "".join(out)


def degree_components(x: Element) -> dict:
    return x.degree_components()


def star(x: Element) -> Element:
    return x.star()


def multiply(a: Element, b: Element) -> Element:
    return a.engine.multiply(a, b)


def equal(a: Element, b: Element):
    """True, False, or UNKNOWN when the engine cannot decide."""
    a.engine.check(b.engine)
    return a.engine.equal(a, b)
