"""Dense univariate polynomials over an :class:`~mahlerkit.fields.ExactField`.

Coefficients are stored low degree first in a tuple with trailing zeros
removed, so the zero polynomial has ``coeffs == ()`` and degree -1.
Long products go through Kronecker substitution on big integers, which is
far faster than schoolbook multiplication on ``mpq`` or residue objects.
"""
from __future__ import annotations

import gmpy2
from gmpy2 import mpq, mpz

from sympy.polys.domains import ZZ
from sympy.polys.euclidtools import dup_gcd

from .errors import FieldMismatch, ParseError
from .fields import Mod, QQ

_SCHOOLBOOK = 32


def _offset(half, nbytes, n):
    return int.from_bytes(half.to_bytes(nbytes, "little") * n, "little")


def _pack(values, w):
    nb = w // 8
    half = 1 << (w - 1)
    data = b"".join(int(c + half).to_bytes(nb, "little") for c in values)
    return mpz(int.from_bytes(data, "little") - _offset(half, nb, len(values)))


def _integer_dense(P):
    """Integer multiple of a polynomial over Q, high degree first."""
    den = 1
    for c in P.coeffs:
        den = gmpy2.lcm(den, c.denominator)
    return [ZZ(int(c * den)) for c in reversed(P.coeffs)]


def int_convolve(a, b):
    """Exact convolution of two lists of (signed) integers."""
    if not a or not b:
        return []
    if min(len(a), len(b)) <= _SCHOOLBOOK:
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return out
    ma = max(abs(int(x)) for x in a)
    mb = max(abs(int(x)) for x in b)
    if ma == 0 or mb == 0:
        return [0] * (len(a) + len(b) - 1)
    bits = (ma * mb * min(len(a), len(b))).bit_length() + 2
    w = (bits + 7) // 8 * 8
    n = len(a) + len(b) - 1
    nb = w // 8
    half = 1 << (w - 1)
    prod = int(_pack(a, w) * _pack(b, w)) + _offset(half, nb, n)
    data = prod.to_bytes(n * nb, "little")
    return [int.from_bytes(data[i * nb:(i + 1) * nb], "little") - half for i in range(n)]


def convolve(field, a, b):
    """Product of two coefficient sequences over ``field`` (no trimming)."""
    if not a or not b:
        return []
    if field.p is not None:
        p = field.p
        out = int_convolve([x.v for x in a], [y.v for y in b])
        return [Mod(c, p) for c in out]
    if min(len(a), len(b)) <= _SCHOOLBOOK:
        zero = field.zero
        out = [zero] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        out[i + j] += x * y
        return out
    da = _common_denominator(a)
    db = _common_denominator(b)
    ia = [int(x.numerator * (da // x.denominator)) for x in a]
    ib = [int(y.numerator * (db // y.denominator)) for y in b]
    d = da * db
    return [mpq(c, d) for c in int_convolve(ia, ib)]


def _common_denominator(values):
    d = mpz(1)
    for x in values:
        if x.denominator != 1:
            d = gmpy2.lcm(d, x.denominator)
    return d


def _trim(coeffs):
    n = len(coeffs)
    while n and not coeffs[n - 1]:
        n -= 1
    return tuple(coeffs[:n])


class Polynomial:
    """Immutable polynomial; ``coeffs[i]`` is the coefficient of ``x**i``."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs=()):
        self.field = field
        self.coeffs = _trim([field(c) for c in coeffs])

    @classmethod
    def _raw(cls, field, coeffs):
        obj = object.__new__(cls)
        obj.field = field
        obj.coeffs = _trim(coeffs)
        return obj

    @classmethod
    def zero(cls, field):
        return cls._raw(field, ())

    @classmethod
    def one(cls, field):
        return cls._raw(field, (field.one,))

    @classmethod
    def constant(cls, field, c):
        return cls._raw(field, (field(c),))

    @classmethod
    def monomial(cls, field, n, c=1):
        return cls._raw(field, [field.zero] * n + [field(c)])

    @classmethod
    def parse(cls, field, text):
        """Space- or comma-separated coefficients from degree 0."""
        parts = text.replace(",", " ").split()
        if not parts:
            raise ParseError("empty polynomial")
        return cls(field, [field.parse(t) for t in parts])

    # basic data

    def degree(self):
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    def valuation(self):
        """Order at x = 0 (``None`` for the zero polynomial)."""
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        return None

    def lead(self):
        return self.coeffs[-1] if self.coeffs else self.field.zero

    def __getitem__(self, i):
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return self.field.zero

    def __len__(self):
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.field == other.field and self.coeffs == other.coeffs
        if isinstance(other, int):
            return self.coeffs == (_trim((self.field(other),)))
        return NotImplemented

    def __hash__(self):
        return hash((self.field, self.coeffs))

    def __bool__(self):
        return bool(self.coeffs)

    def __repr__(self):
        return f"Polynomial({self.field!r}, [{', '.join(map(str, self.coeffs))}])"

    def __str__(self):
        return " ".join(map(str, self.coeffs)) if self.coeffs else "0"

    def pretty(self, var="x"):
        terms = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
            if not mono:
                terms.append(str(c))
            elif c == 1:
                terms.append(mono)
            elif c == -1 and self.field.p is None:
                terms.append("-" + mono)
            else:
                terms.append(f"{c}*{mono}")
        return " + ".join(terms).replace("+ -", "- ") if terms else "0"

    # arithmetic

    def _coerce(self, other):
        if isinstance(other, Polynomial):
            if other.field != self.field:
                raise FieldMismatch(f"{self.field} vs {other.field}")
            return other
        return Polynomial.constant(self.field, other)

    def __add__(self, other):
        other = self._coerce(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return Polynomial._raw(self.field, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(self.field, [-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            c = self.field(other)
            return Polynomial._raw(self.field, [x * c for x in self.coeffs])
        other = self._coerce(other)
        return Polynomial._raw(self.field, convolve(self.field, self.coeffs, other.coeffs))

    __rmul__ = __mul__

    def __pow__(self, e):
        if e < 0:
            raise ValueError("negative power of a polynomial")
        result = Polynomial.one(self.field)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def scale(self, c):
        return self * c

    def monic(self):
        if not self.coeffs:
            return self
        return self * (self.field.one / self.coeffs[-1])

    def normalize_constant(self):
        """Scale so the lowest nonzero coefficient equals 1."""
        v = self.valuation()
        if v is None:
            return self
        return self * (self.field.one / self.coeffs[v])

    def __divmod__(self, other):
        other = self._coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        field = self.field
        rem = list(self.coeffs)
        db = other.degree()
        if len(rem) - 1 < db:
            return Polynomial.zero(field), self
        inv = field.one / other.coeffs[-1]
        b = other.coeffs
        quot = [field.zero] * (len(rem) - db)
        for i in range(len(rem) - 1 - db, -1, -1):
            c = rem[i + db]
            if not c:
                continue
            c = c * inv
            quot[i] = c
            for j in range(db + 1):
                if b[j]:
                    rem[i + j] = rem[i + j] - c * b[j]
        return Polynomial._raw(field, quot), Polynomial._raw(field, rem[:db])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other):
        q, r = divmod(self, other)
        if r:
            raise ArithmeticError(f"{other.pretty()} does not divide {self.pretty()}")
        return q

    def divides(self, other):
        return not (other % self)

    def gcd(self, other):
        """Monic gcd (zero if both are zero).

        Over Q the Euclidean remainders swell quickly, so the primitive
        integer parts go to sympy's integer gcd instead.
        """
        a, b = self, self._coerce(other)
        if self.field.p is None and a and b:
            g = dup_gcd(_integer_dense(a), _integer_dense(b), ZZ)
            return Polynomial(self.field, [mpq(int(c)) for c in g[::-1]]).monic()
        while b:
            a, b = b, a % b
        return a.monic()

    def powmod(self, e, modulus):
        result = Polynomial.one(self.field) % modulus
        base = self % modulus
        while e:
            if e & 1:
                result = (result * base) % modulus
            e >>= 1
            if e:
                base = (base * base) % modulus
        return result

    # structural maps

    def __call__(self, x):
        acc = x * 0 if isinstance(x, Polynomial) else self.field.zero
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def compose_power(self, e):
        """P(x^e)."""
        if e == 1 or len(self.coeffs) <= 1:
            return self
        out = [self.field.zero] * ((len(self.coeffs) - 1) * e + 1)
        for i, c in enumerate(self.coeffs):
            out[i * e] = c
        return Polynomial._raw(self.field, out)

    def shift(self, m):
        """x^m P(x) for m >= 0, or the exact quotient by x^(-m) for m < 0."""
        if not self.coeffs:
            return self
        if m >= 0:
            return Polynomial._raw(self.field, [self.field.zero] * m + list(self.coeffs))
        v = self.valuation()
        if v < -m:
            raise ArithmeticError(f"x^{-m} does not divide {self.pretty()}")
        return Polynomial._raw(self.field, self.coeffs[-m:])

    def truncate(self, n):
        return Polynomial._raw(self.field, self.coeffs[:n])

    def cartier(self, k, b):
        """Cartier section: sum of c[k*i+b] x^i."""
        return Polynomial._raw(self.field, self.coeffs[b::k])

    def reverse(self, n=None):
        """x^n P(1/x), with n defaulting to the degree."""
        if n is None:
            n = self.degree()
        if n < self.degree():
            raise ValueError("reversal degree below polynomial degree")
        out = [self.field.zero] * (n + 1 - len(self.coeffs)) + list(self.coeffs)
        return Polynomial._raw(self.field, out[::-1])

    def derivative(self):
        return Polynomial._raw(self.field, [c * i for i, c in enumerate(self.coeffs)][1:])

    def map_field(self, field):
        return Polynomial(field, self.coeffs)


def content_gcd(polys):
    """Monic gcd of a list of polynomials (zero if all are zero)."""
    g = None
    for p in polys:
        if p.is_zero():
            continue
        g = p.monic() if g is None else g.gcd(p)
        if g.degree() == 0:
            break
    if g is None:
        return None
    return g


def x_poly(field=QQ):
    return Polynomial.monomial(field, 1)
