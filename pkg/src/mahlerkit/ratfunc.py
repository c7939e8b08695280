"""Reduced rational functions A/B over an exact field."""
from __future__ import annotations

from dataclasses import dataclass

from .poly import Polynomial
from .series import TruncatedSeries, series_invert


@dataclass(frozen=True)
class RationalFunction:
    numerator: Polynomial
    denominator: Polynomial

    def __post_init__(self):
        A, B = self.numerator, self.denominator
        if B.is_zero():
            raise ZeroDivisionError("zero denominator")
        g = A.gcd(B) if not A.is_zero() else B.monic()
        if g.degree() > 0:
            A, B = A.exact_div(g), B.exact_div(g)
        c = B[0] if B[0] else B.lead()
        inv = B.field.one / c
        object.__setattr__(self, "numerator", A * inv)
        object.__setattr__(self, "denominator", B * inv)

    @property
    def field(self):
        return self.denominator.field

    def series(self, N):
        """Power-series expansion to N terms (denominator must not vanish at 0)."""
        inv = series_invert(TruncatedSeries.from_polynomial(self.denominator, N))
        return inv.mul_poly(self.numerator).truncate(N)

    def compose_power(self, e):
        return RationalFunction(self.numerator.compose_power(e), self.denominator.compose_power(e))

    def __str__(self):
        return f"({self.numerator.pretty()}) / ({self.denominator.pretty()})"

    def pair(self):
        return self.numerator, self.denominator
