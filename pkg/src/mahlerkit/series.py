"""Truncated power series with explicit precision.

A :class:`TruncatedSeries` of precision ``N`` knows the coefficients
``f(0) .. f(N-1)`` and nothing beyond.  Every operation returns the largest
precision that is provable from its inputs, so a residual that vanishes
"to precision M" really says something about the untruncated series.
"""
from __future__ import annotations

from .errors import FieldMismatch, ParseError, ZeroConstantTerm
from .fields import parse_field
from .poly import Polynomial, convolve


class TruncatedSeries:
    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs):
        self.field = field
        self.coeffs = tuple(field(c) for c in coeffs)

    @classmethod
    def _raw(cls, field, coeffs):
        obj = object.__new__(cls)
        obj.field = field
        obj.coeffs = tuple(coeffs)
        return obj

    @classmethod
    def from_polynomial(cls, P, precision):
        coeffs = list(P.coeffs[:precision])
        coeffs += [P.field.zero] * (precision - len(coeffs))
        return cls._raw(P.field, coeffs)

    @classmethod
    def zero(cls, field, precision):
        return cls._raw(field, [field.zero] * precision)

    @classmethod
    def one(cls, field, precision):
        return cls.from_polynomial(Polynomial.one(field), precision)

    @property
    def precision(self):
        return len(self.coeffs)

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, i):
        return self.coeffs[i]

    def __iter__(self):
        return iter(self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.field == other.field and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.field, self.coeffs))

    def __repr__(self):
        head = ", ".join(map(str, self.coeffs[:8]))
        more = ", ..." if len(self.coeffs) > 8 else ""
        return f"TruncatedSeries({self.field!r}, N={self.precision}, [{head}{more}])"

    def agrees_with(self, other):
        """True when both series coincide on their common precision."""
        n = min(self.precision, other.precision)
        return self.coeffs[:n] == other.coeffs[:n]

    def first_difference(self, other):
        n = min(self.precision, other.precision)
        for i in range(n):
            if self.coeffs[i] != other.coeffs[i]:
                return i
        return None

    def valuation(self):
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        return None

    def is_zero(self):
        return not any(self.coeffs)

    def truncate(self, n):
        if n > self.precision:
            raise ValueError(f"cannot extend precision {self.precision} to {n}")
        return TruncatedSeries._raw(self.field, self.coeffs[:n])

    def to_polynomial(self):
        return Polynomial._raw(self.field, self.coeffs)

    def _check(self, other):
        if other.field != self.field:
            raise FieldMismatch(f"{self.field} vs {other.field}")

    def __add__(self, other):
        if isinstance(other, Polynomial):
            other = TruncatedSeries.from_polynomial(other, self.precision)
        self._check(other)
        n = min(self.precision, other.precision)
        return TruncatedSeries._raw(self.field, [a + b for a, b in zip(self.coeffs[:n], other.coeffs[:n])])

    def __neg__(self):
        return TruncatedSeries._raw(self.field, [-a for a in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, Polynomial):
            return self.mul_poly(other)
        if not isinstance(other, TruncatedSeries):
            c = self.field(other)
            return TruncatedSeries._raw(self.field, [a * c for a in self.coeffs])
        self._check(other)
        n = min(self.precision, other.precision)
        prod = convolve(self.field, self.coeffs[:n], other.coeffs[:n])
        return TruncatedSeries._raw(self.field, prod[:n])

    def __rmul__(self, other):
        return self * other

    def mul_poly(self, P):
        """P(x) F(x); exact to precision N + ord(P) (zero polynomial gives N)."""
        if P.field != self.field:
            raise FieldMismatch(f"{self.field} vs {P.field}")
        v = P.valuation()
        if v is None:
            return TruncatedSeries.zero(self.field, self.precision)
        n = self.precision + v
        prod = convolve(self.field, P.coeffs[:n], self.coeffs)
        prod = prod[:n] + [self.field.zero] * (n - len(prod))
        return TruncatedSeries._raw(self.field, prod)

    def shift(self, m):
        """x^m F(x), precision N + m."""
        return TruncatedSeries._raw(self.field, [self.field.zero] * m + list(self.coeffs))

    def drop(self, m):
        """(F - first m terms) / x^m, precision N - m."""
        return TruncatedSeries._raw(self.field, self.coeffs[m:])

    def substitute_power(self, e):
        return substitute_power(self, e)

    def cartier_section(self, k, b):
        return cartier_section(self, k, b)

    def invert(self):
        return series_invert(self)

    def map_field(self, field):
        return TruncatedSeries(field, self.coeffs)

    # text format

    def dumps(self):
        lines = ["SERIES", self.field.header(), f"precision: {self.precision}"]
        lines += [str(c) for c in self.coeffs]
        return "\n".join(lines) + "\n"

    @classmethod
    def loads(cls, text):
        lines = [ln.strip() for ln in text.splitlines()]
        lines = [ln for ln in lines if ln and not ln.startswith("#")]
        if len(lines) < 3 or lines[0] != "SERIES":
            raise ParseError("series file must start with SERIES, field and precision lines")
        field = parse_field(_value(lines[1], "field"))
        try:
            n = int(_value(lines[2], "precision"))
        except ValueError:
            raise ParseError(f"bad precision line {lines[2]!r}") from None
        body = lines[3:]
        if len(body) != n:
            raise ParseError(f"precision {n} but {len(body)} coefficient lines")
        return cls._raw(field, [field.parse(t) for t in body])


def _value(line, key):
    name, sep, rest = line.partition(":")
    if not sep or name.strip() != key:
        raise ParseError(f"expected '{key}: ...', got {line!r}")
    return rest.strip()


def substitute_power(F, e):
    """F(x^e), with precision e*N."""
    if e < 1:
        raise ValueError("exponent must be at least 1")
    if e == 1:
        return F
    zero = F.field.zero
    out = [zero] * (e * F.precision)
    out[::e] = F.coeffs
    return TruncatedSeries._raw(F.field, out)


def series_invert(F):
    """1/F to the same precision; requires f(0) != 0."""
    N = F.precision
    if N == 0:
        return F
    c0 = F.coeffs[0]
    if not c0:
        raise ZeroConstantTerm("series has zero constant term")
    field = F.field
    # Newton iteration g <- g (2 - F g), doubling the precision each round
    g = [field.one / c0]
    n = 1
    while n < N:
        n = min(2 * n, N)
        fg = convolve(field, F.coeffs[:n], g)[:n]
        fg = [-c for c in fg]
        fg[0] = fg[0] + 2
        g = convolve(field, g, fg)[:n]
    return TruncatedSeries._raw(field, g)


def cartier_section(F, k, b):
    """Sum of f(k i + b) x^i, precision ceil((N - b)/k) (0 when N <= b)."""
    if not 0 <= b < k:
        raise ValueError(f"digit {b} out of range for base {k}")
    return TruncatedSeries._raw(F.field, F.coeffs[b::k])


def series_from_function(field, f, N):
    return TruncatedSeries._raw(field, [field(f(n)) for n in range(N)])
