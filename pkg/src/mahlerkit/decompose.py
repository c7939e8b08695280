"""Shift and Becker decompositions of Mahler series.

shift_decompose writes F = T_a + x^a F0 where F0 solves an equation whose
P0 has constant term 1. becker_decompose writes F = G / prod P0(x^(k^i))
with G satisfying an equation without an i = 0 term.
"""
from __future__ import annotations

from dataclasses import dataclass

from .equation import MahlerEquation, verify_equation
from .errors import ConstantTermNotOne, PolynomialInput, PrecisionExhausted, ValidationFailure
from .poly import Polynomial
from .series import TruncatedSeries, series_invert


@dataclass(frozen=True)
class ShiftDecomposition:
    a: int
    head: Polynomial
    tail_series: TruncatedSeries
    tail_equation: MahlerEquation


@dataclass(frozen=True)
class BeckerDecomposition:
    product_inverse: TruncatedSeries
    becker_part: TruncatedSeries
    becker_equation: MahlerEquation
    product: TruncatedSeries

    def becker_coefficients(self):
        """B_1..B_n with G(x) = sum B_i(x) G(x^(k^i))."""
        return [-p for p in self.becker_equation.coeffs[1:]]


def shift_index(eq, F, above=None):
    """Smallest a > max(ord P0, above) with f(a) != 0, or None."""
    lo = eq.coeffs[0].valuation()
    if above is not None:
        lo = max(lo, above)
    for i in range(lo + 1, F.precision):
        if F.coeffs[i]:
            return i
    return None


def shift_decompose(eq, F, a=None):
    """Split F = T_a + x^a F0 and build the equation for F0.

    With N = ord P0 and S = P0 / x^N, substituting F = T_a + x^a F0 gives
    S F0(x) + sum_{i>=1} P_i x^(a k^i - a - N) F0(x^(k^i)) = C0(x), where
    C0 = -sum P_i T_a(x^(k^i)) / x^(a+N). Eliminating C0 as in normalize and
    dividing by gcd(C0(x), C0(x^k)) gives Q_0..Q_{n+1}.
    """
    fld = eq.field
    k = eq.base
    P = eq.coeffs
    n = len(P) - 1
    N = P[0].valuation()
    if a is None:
        a = shift_index(eq, F)
        if a is None:
            raise PolynomialInput("series has no nonzero coefficient past ord P0 within precision")
    elif a <= N or a >= F.precision or not F.coeffs[a]:
        raise ValueError(f"shift index {a} must exceed ord P0 = {N} and carry a nonzero coefficient")
    if not verify_equation(eq, F).holds:
        raise ValidationFailure("equation does not hold on the series")
    head = Polynomial(fld, F.coeffs[:a])
    tail = F.drop(a)

    C = Polynomial.zero(fld)
    kp = 1
    for Pi in P:
        C = C - Pi * head.compose_power(kp)
        kp *= k
    C0 = C.shift(-(a + N))
    S = P[0].shift(-N)
    C0k = C0.compose_power(k)
    g = C0.gcd(C0k)
    R = [S] + [P[i].shift(a * k ** i - a - N) for i in range(1, n + 1)]
    zero = Polynomial.zero(fld)
    Q = []
    for i in range(n + 2):
        cur = R[i] if i <= n else zero
        prev = R[i - 1].compose_power(k) if i >= 1 else zero
        Q.append((cur * C0k - prev * C0).exact_div(g))
    scale = fld.one / Q[0][0]
    Q = [q * scale for q in Q]
    # the nonzero roots of P0 are roots of S, and S divides Q0
    Q[0].exact_div(S)
    tail_eq = MahlerEquation(fld, k, tuple(Q))
    max_deg = max(q.degree() for q in Q)
    if tail.precision <= max_deg:
        raise PrecisionExhausted(
            f"tail has {tail.precision} terms; the new equation has degree {max_deg}"
        )
    if not verify_equation(tail_eq, tail).holds:
        raise ValidationFailure("shifted equation fails on the tail series")
    return ShiftDecomposition(a, head, tail, tail_eq)


def infinite_product(P, k, precision):
    """prod_{i>=0} P(x^(k^i)) to the given precision (requires P(0) = 1)."""
    fld = P.field
    H = TruncatedSeries.one(fld, precision)
    kp = 1
    while kp < precision:
        H = H.mul_poly(P.compose_power(kp).truncate(precision)).truncate(precision)
        kp *= k
    return H


def becker_decompose(eq, F):
    """F = G / H with H = prod P0(x^(k^i)) and G(x) = sum B_i(x) G(x^(k^i)).

    From H(x) = P0(x) H(x^k): G = H(x^k) P0 F = -sum_i P_i H(x^k) F(x^(k^i)),
    and H(x^k) = H(x^(k^i)) prod_{j=1}^{i-1} P0(x^(k^j)), so
    B_i = -P_i prod_{j=1}^{i-1} P0(x^(k^j)).
    """
    fld = eq.field
    k = eq.base
    P = eq.coeffs
    if P[0][0] != fld.one:
        raise ConstantTermNotOne(f"P0(0) = {P[0][0]}, expected 1")
    N = F.precision
    H = infinite_product(P[0], k, N)
    G = H * F
    stored = [Polynomial.one(fld)]
    acc = Polynomial.one(fld)
    kp = k
    for i in range(1, len(P)):
        stored.append(P[i] * acc)
        acc = acc * P[0].compose_power(kp)
        kp *= k
    becker_eq = MahlerEquation(fld, k, tuple(stored))
    if not verify_equation(becker_eq, G).holds:
        raise ValidationFailure("Becker equation fails on H*F")
    return BeckerDecomposition(series_invert(H), G, becker_eq, H)
