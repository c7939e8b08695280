"""Mahler equations A(x) + sum_i P_i(x) F(x^(k^i)) = 0.

This module holds the equation type, its text format, residual checks,
the coefficient recursion and the reduction to a homogeneous normal form.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .errors import (
    DegenerateEquation,
    FieldMismatch,
    InconsistentInitialSegment,
    ParseError,
    UnderdeterminedInput,
)
from .fields import parse_field
from .poly import Polynomial, content_gcd
from .series import TruncatedSeries


@dataclass(frozen=True)
class MahlerEquation:
    field: object
    base: int
    coeffs: tuple
    inhomogeneous: Polynomial = None
    # equations found from a truncated series are only known to hold this far
    certified_to: int = dc_field(default=None, compare=False)

    def __post_init__(self):
        if self.base < 2:
            raise ValueError("base must be at least 2")
        coeffs = [p if isinstance(p, Polynomial) else Polynomial(self.field, p) for p in self.coeffs]
        for p in coeffs:
            if p.field != self.field:
                raise FieldMismatch(f"coefficient over {p.field} in equation over {self.field}")
        while len(coeffs) > 1 and coeffs[-1].is_zero():
            coeffs.pop()
        if not coeffs:
            coeffs = [Polynomial.zero(self.field)]
        A = self.inhomogeneous
        if A is None:
            A = Polynomial.zero(self.field)
        elif not isinstance(A, Polynomial):
            A = Polynomial(self.field, A)
        object.__setattr__(self, "coeffs", tuple(coeffs))
        object.__setattr__(self, "inhomogeneous", A)

    @property
    def order(self):
        return len(self.coeffs) - 1

    @property
    def k(self):
        return self.base

    def is_homogeneous(self):
        return self.inhomogeneous.is_zero()

    def is_normalized(self):
        P = self.coeffs
        if not self.is_homogeneous() or P[0].is_zero() or P[-1].is_zero():
            return False
        g = content_gcd(P)
        return g.degree() == 0

    def max_degree(self):
        return max(p.degree() for p in self.coeffs)

    def is_becker_form(self):
        return self.is_homogeneous() and self.coeffs[0] == Polynomial.one(self.field)

    def with_certificate(self, n):
        return MahlerEquation(self.field, self.base, self.coeffs, self.inhomogeneous, certified_to=n)

    def pretty(self):
        k = self.base
        parts = []
        if not self.inhomogeneous.is_zero():
            parts.append(f"({self.inhomogeneous.pretty()})")
        for i, p in enumerate(self.coeffs):
            if p.is_zero():
                continue
            arg = "x" if i == 0 else f"x^{k ** i}"
            parts.append(f"({p.pretty()})*F({arg})")
        return " + ".join(parts) + " = 0"

    def dumps(self):
        lines = [
            "MAHLER",
            self.field.header(),
            f"base: {self.base}",
            f"order: {self.order}",
            f"A: {self.inhomogeneous}",
        ]
        lines += [f"P{i}: {p}" for i, p in enumerate(self.coeffs)]
        return "\n".join(lines) + "\n"

    @classmethod
    def loads(cls, text):
        lines = [ln.strip() for ln in text.splitlines()]
        lines = [ln for ln in lines if ln and not ln.startswith("#")]
        if not lines or lines[0] != "MAHLER":
            raise ParseError("equation file must start with MAHLER")
        items = {}
        for ln in lines[1:]:
            key, sep, value = ln.partition(":")
            if not sep:
                raise ParseError(f"bad equation line {ln!r}")
            items[key.strip()] = value.strip()
        try:
            fld = parse_field(items["field"])
            k = int(items["base"])
            n = int(items["order"])
        except KeyError as exc:
            raise ParseError(f"missing equation header {exc}") from None
        except ValueError as exc:
            raise ParseError(f"bad equation header: {exc}") from None
        if k < 2 or n < 0:
            raise ParseError("base must be >= 2 and order >= 0")
        A = Polynomial.parse(fld, items.get("A", "0"))
        coeffs = []
        for i in range(n + 1):
            if f"P{i}" not in items:
                raise ParseError(f"missing coefficient P{i}")
            coeffs.append(Polynomial.parse(fld, items[f"P{i}"]))
        if coeffs[-1].is_zero() and n > 0:
            raise ParseError(f"leading coefficient P{n} is zero")
        return cls(fld, k, tuple(coeffs), A)


@dataclass(frozen=True)
class VerifyResult:
    holds_to: int = None
    fails_at: int = None

    @property
    def holds(self):
        return self.fails_at is None


def residual(eq, F, M=None):
    """Coefficients 0..M-1 of A(x) + sum P_i(x) F(x^(k^i))."""
    if eq.field != F.field:
        raise FieldMismatch(f"equation over {eq.field}, series over {F.field}")
    if M is None:
        M = verified_precision(eq, F)
    zero = eq.field.zero
    out = list(eq.inhomogeneous.coeffs[:M]) + [zero] * max(0, M - len(eq.inhomogeneous))
    f = F.coeffs
    kp = 1
    for P in eq.coeffs:
        for j, c in enumerate(P.coeffs):
            if not c or j >= M:
                continue
            # x^j * F(x^kp) contributes c*f(t) at index j + kp*t
            for t, m in enumerate(range(j, M, kp)):
                ft = f[t]
                if ft:
                    out[m] += c * ft
        kp *= eq.base
    return out


def verified_precision(eq, F):
    """Common precision on which the residual is determined, capped at F.precision."""
    M = F.precision
    kp = 1
    for P in eq.coeffs:
        v = P.valuation()
        if v is not None:
            M = min(M, kp * F.precision + v)
        kp *= eq.base
    return M


def verify_equation(eq, F):
    M = verified_precision(eq, F)
    for i, c in enumerate(residual(eq, F, M)):
        if c:
            return VerifyResult(fails_at=i)
    return VerifyResult(holds_to=M)


def required_initial_terms(eq):
    """Least L such that every f(m) with m >= L is forced by earlier terms.

    The coefficient of x^(m+v) involves f(m) through P0 and otherwise only
    f((m+v-j)/k^i) for i >= 1, which is below m as soon as m(k-1) > v.
    """
    v = eq.coeffs[0].valuation()
    if v is None:
        raise ValueError("P0 is zero; normalize the equation first")
    return v // (eq.base - 1) + 1


def solve_series(eq, initial, precision):
    """Extend ``initial`` to ``precision`` terms using the equation's recursion.

    The coefficient of x^(m+v) in the equation (v = ord P0) is the first one
    containing f(m); it has the form P0[v] f(m) + (terms with smaller index).
    """
    fld = eq.field
    P0 = eq.coeffs[0]
    v = P0.valuation()
    if v is None:
        raise ValueError("P0 is zero; normalize the equation first")
    L = required_initial_terms(eq)
    initial = [fld(c) for c in initial]
    if len(initial) < L and len(initial) < precision:
        raise UnderdeterminedInput(f"need {L} initial terms, got {len(initial)}")
    c_inv = fld.one / P0[v]
    terms = []
    kp = 1
    for P in eq.coeffs:
        for j, c in enumerate(P.coeffs):
            if c and not (kp == 1 and j == v):
                terms.append((kp, j, c))
        kp *= eq.base
    A = eq.inhomogeneous
    f = []
    for t in range(precision + v):
        s = A[t]
        for kp, j, c in terms:
            u = t - j
            if u < 0:
                continue
            if kp == 1:
                idx = u
            else:
                if u % kp:
                    continue
                idx = u // kp
            if idx >= len(f):
                # early coefficients may look ahead into the supplied prefix
                idx_known = initial[idx] if idx < len(initial) else None
                if idx_known is None:
                    raise UnderdeterminedInput(f"recursion needs f({idx}) before it is known")
                s += c * idx_known
                continue
            s += c * f[idx]
        m = t - v
        if m < 0:
            if s:
                raise InconsistentInitialSegment(0, f"equation fails at x^{t} before any free term")
            continue
        value = -s * c_inv
        if m < len(initial):
            if value != initial[m]:
                raise InconsistentInitialSegment(m)
            value = initial[m]
        if m < precision:
            f.append(value)
    return TruncatedSeries._raw(fld, f)


def homogenize(eq):
    """Remove the inhomogeneous term by combining E(x) with E(x^k); order grows by one."""
    A = eq.inhomogeneous
    if A.is_zero():
        return eq
    k = eq.base
    Ak = A.compose_power(k)
    P = list(eq.coeffs)
    zero = Polynomial.zero(eq.field)
    new = []
    for i in range(len(P) + 1):
        cur = P[i] if i < len(P) else zero
        prev = P[i - 1].compose_power(k) if i >= 1 else zero
        new.append(cur * Ak - prev * A)
    return MahlerEquation(eq.field, k, tuple(new), zero)


def normalize(eq):
    """Homogeneous equation with P0 != 0, P_n != 0, coprime coefficients.

    The lowest nonzero coefficient of P0 is scaled to 1.
    """
    if eq.inhomogeneous.is_zero() and all(p.is_zero() for p in eq.coeffs):
        raise DegenerateEquation("equation is 0 = 0")
    eq = homogenize(eq)
    P = list(eq.coeffs)
    k = eq.base
    if all(p.is_zero() for p in P):
        raise DegenerateEquation("relation collapses to 0 = 0")
    while P[0].is_zero():
        j = next(i for i, p in enumerate(P) if not p.is_zero())
        b = P[j].valuation() % k
        P = [p.cartier(k, b) for p in P[1:]]
    while P[-1].is_zero():
        P.pop()
    g = content_gcd(P)
    if g.degree() > 0:
        P = [p.exact_div(g) for p in P]
    v = P[0].valuation()
    scale = eq.field.one / P[0][v]
    P = [p * scale for p in P]
    return MahlerEquation(eq.field, k, tuple(P), Polynomial.zero(eq.field), eq.certified_to)


def reduce_equation(eq, field):
    return MahlerEquation(
        field,
        eq.base,
        tuple(p.map_field(field) for p in eq.coeffs),
        eq.inhomogeneous.map_field(field),
        eq.certified_to,
    )
