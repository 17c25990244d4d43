"""Exact coefficient rings: the integers, integers mod n, the rationals and prime fields."""

from __future__ import annotations

from fractions import Fraction


class RingMismatch(ValueError):
    pass


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


class Ring:
    """A commutative unital ring with exact arithmetic.

    Coefficients are plain Python ints (reduced into ``0..n-1`` for the
    modular rings) or ``Fraction`` for the rationals.
    """

    kind: str = ""
    modulus: int | None = None

    def __init__(self, kind: str, modulus: int | None = None):
        if kind not in ("Z", "Zmod", "Q", "GF"):
            raise ValueError(f"unknown ring kind {kind!r}")
        if kind == "Zmod" and (modulus is None or modulus < 2):
            raise ValueError("Zmod needs a modulus >= 2")
        if kind == "GF" and (modulus is None or not _is_prime(modulus)):
            raise ValueError("GF needs a prime modulus")
        self.kind = kind
        self.modulus = modulus if kind in ("Zmod", "GF") else None

    # identity -----------------------------------------------------------
    def __eq__(self, other):
        return isinstance(other, Ring) and (self.kind, self.modulus) == (other.kind, other.modulus)

    def __hash__(self):
        return hash((self.kind, self.modulus))

    def __repr__(self):
        return f"Ring({self.descriptor()})"

    def descriptor(self) -> str:
        if self.kind in ("Zmod", "GF"):
            return f"{self.kind}:{self.modulus}"
        return self.kind

    @property
    def is_field(self) -> bool:
        return self.kind in ("Q", "GF")

    @property
    def characteristic(self) -> int:
        return self.modulus or 0

    # arithmetic ---------------------------------------------------------
    def coerce(self, x):
        if self.modulus is not None:
            if isinstance(x, Fraction):
                if x.denominator != 1:
                    return self.div(x.numerator, x.denominator)
                x = x.numerator
            return int(x) % self.modulus
        if self.kind == "Q":
            return Fraction(x)
        if isinstance(x, Fraction):
            if x.denominator != 1:
                raise RingMismatch(f"{x} is not an integer")
            return x.numerator
        return int(x)

    def zero(self):
        return self.coerce(0)

    def one(self):
        return self.coerce(1)

    def add(self, a, b):
        s = a + b
        return s % self.modulus if self.modulus is not None else s

    def sub(self, a, b):
        s = a - b
        return s % self.modulus if self.modulus is not None else s

    def mul(self, a, b):
        s = a * b
        return s % self.modulus if self.modulus is not None else s

    def neg(self, a):
        return (-a) % self.modulus if self.modulus is not None else -a

    def is_zero(self, a) -> bool:
        return a == 0

    def inverse(self, a):
        if self.kind == "Q":
            if a == 0:
                raise ZeroDivisionError("inverse of 0")
            return 1 / Fraction(a)
        if self.kind == "GF":
            if a % self.modulus == 0:
                raise ZeroDivisionError("inverse of 0")
            return pow(int(a), self.modulus - 2, self.modulus)
        if self.kind == "Zmod":
            return pow(int(a), -1, self.modulus)
        if a in (1, -1):
            return a
        raise ZeroDivisionError(f"{a} is not a unit in Z")

    def div(self, a, b):
        return self.mul(self.coerce(a), self.inverse(self.coerce(b)))

    def format(self, a) -> str:
        if isinstance(a, Fraction):
            return str(a.numerator) if a.denominator == 1 else f"{a.numerator}/{a.denominator}"
        return str(a)

    def elements(self):
        """All elements of a finite ring, in increasing order."""
        if self.modulus is None:
            raise ValueError(f"{self.descriptor()} is infinite")
        return list(range(self.modulus))

    def random(self, rng, bound: int = 3):
        """A random coefficient; nonzero-biased small values for infinite rings."""
        if self.modulus is not None:
            return rng.randrange(self.modulus)
        if self.kind == "Q":
            return Fraction(rng.randint(-bound, bound), rng.randint(1, 2))
        return rng.randint(-bound, bound)


Z = Ring("Z")
Q = Ring("Q")


def Zmod(n: int) -> Ring:
    return Ring("Zmod", n)


def GF(p: int) -> Ring:
    return Ring("GF", p)


def parse_ring(text: str) -> Ring:
    """Parse ``Z``, ``Zmod:N``, ``Q`` or ``GF:P``."""
    text = text.strip()
    if text in ("Z", "Q"):
        return Ring(text)
    head, sep, tail = text.partition(":")
    if sep and head in ("Zmod", "GF") and tail.isdigit():
        return Ring(head, int(tail))
    raise ValueError(f"bad ring descriptor {text!r}; expected Z, Zmod:N, Q or GF:P")
