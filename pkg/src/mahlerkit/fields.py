"""Exact coefficient fields: the rationals and prime fields.

Rationals are carried as ``gmpy2.mpq``; prime-field elements as :class:`Mod`,
a small immutable residue class that supports the usual operators so that
polynomial and series code can be written once for both fields.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from gmpy2 import mpq
from sympy import isprime

from .errors import FieldMismatch, ParseError

_MPQ = type(mpq(0))


class Mod:
    """Residue class ``v mod p`` (least nonnegative representative)."""

    __slots__ = ("v", "p")

    def __init__(self, v, p):
        self.v = v % p
        self.p = p

    def _coerce(self, other):
        if isinstance(other, Mod):
            if other.p != self.p:
                raise FieldMismatch(f"F{self.p} vs F{other.p}")
            return other.v
        if isinstance(other, int):
            return other
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Mod(self.v + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Mod(self.v - o, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Mod(o - self.v, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Mod(self.v * o, self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return Mod(-self.v, self.p)

    def __pos__(self):
        return self

    def inverse(self):
        if self.v == 0:
            raise ZeroDivisionError(f"0 has no inverse mod {self.p}")
        return Mod(pow(self.v, -1, self.p), self.p)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * Mod(o, self.p).inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self.inverse() * o

    def __pow__(self, e):
        if e < 0:
            return Mod(pow(self.v, -e, self.p), self.p).inverse()
        return Mod(pow(self.v, e, self.p), self.p)

    def __eq__(self, other):
        if isinstance(other, Mod):
            return self.p == other.p and self.v == other.v
        if isinstance(other, int):
            return self.v == other % self.p
        return NotImplemented

    def __hash__(self):
        return hash(self.v)

    def __bool__(self):
        return self.v != 0

    def __int__(self):
        return self.v

    def __index__(self):
        return self.v

    def __repr__(self):
        return f"Mod({self.v}, {self.p})"

    def __str__(self):
        return str(self.v)


class ExactField:
    """Either the rationals (``p is None``) or the prime field F_p."""

    __slots__ = ("p", "zero", "one")

    def __init__(self, p=None):
        if p is not None:
            p = int(p)
            if not isprime(p):
                raise ValueError(f"{p} is not prime")
        self.p = p
        self.zero = self(0)
        self.one = self(1)

    @property
    def is_prime_field(self):
        return self.p is not None

    @property
    def characteristic(self):
        return self.p or 0

    def __call__(self, x):
        p = self.p
        if p is None:
            if isinstance(x, Mod):
                raise FieldMismatch("cannot lift a residue to Q")
            if isinstance(x, str):
                return self.parse(x)
            if isinstance(x, Fraction):
                return mpq(x.numerator, x.denominator)
            return mpq(x)
        if isinstance(x, Mod):
            if x.p != p:
                raise FieldMismatch(f"F{x.p} element used in F{p}")
            return x
        if isinstance(x, str):
            return self.parse(x)
        if isinstance(x, int):
            return Mod(x, p)
        if isinstance(x, (_MPQ, Fraction)):
            num, den = int(x.numerator), int(x.denominator)
            if den % p == 0:
                raise ZeroDivisionError(f"denominator {den} vanishes mod {p}")
            return Mod(num * pow(den, -1, p), p)
        raise TypeError(f"cannot convert {x!r} into {self}")

    def parse(self, text):
        text = text.strip()
        try:
            if "/" in text:
                num, den = text.split("/")
                q = mpq(int(num), int(den))
                return q if self.p is None else self(q)
            return self(int(text))
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"bad coefficient {text!r} for field {self}: {exc}") from None

    def format(self, x):
        return str(x)

    def contains(self, x):
        if self.p is None:
            return isinstance(x, _MPQ)
        return isinstance(x, Mod) and x.p == self.p

    def to_int(self, x):
        """Least nonnegative residue (prime fields) or integer value (Q)."""
        if self.p is None:
            if x.denominator != 1:
                raise ValueError(f"{x} is not an integer")
            return int(x.numerator)
        return x.v

    def __eq__(self, other):
        return isinstance(other, ExactField) and self.p == other.p

    def __hash__(self):
        return hash(("ExactField", self.p))

    def __repr__(self):
        return "QQ" if self.p is None else f"GF({self.p})"

    def __str__(self):
        return "Q" if self.p is None else f"F {self.p}"

    def header(self):
        return f"field: {self}"


QQ = ExactField()


@lru_cache(maxsize=None)
def GF(p):
    return ExactField(p)


def parse_field(text):
    """Parse ``Q`` or ``F <p>`` (also accepts ``GF(p)`` and ``F_p``)."""
    t = text.strip()
    if t in ("Q", "QQ"):
        return QQ
    for prefix in ("GF(", "F_", "F ", "F"):
        if t.startswith(prefix):
            body = t[len(prefix):].rstrip(")").strip()
            try:
                return GF(int(body))
            except ValueError as exc:
                raise ParseError(f"bad field {text!r}: {exc}") from None
    raise ParseError(f"unknown field {text!r}")


def check_same_field(*fields):
    first = fields[0]
    for f in fields[1:]:
        if f != first:
            raise FieldMismatch(f"{first} vs {f}")
    return first
