"""Cyclotomic polynomials over Q, generated from x^n - 1 by exact division."""
from __future__ import annotations

from functools import lru_cache

from sympy import divisors

from .fields import QQ
from .poly import Polynomial


@lru_cache(maxsize=None)
def cyclotomic(n):
    """Phi_n = (x^n - 1) / prod_{d | n, d < n} Phi_d."""
    if n < 1:
        raise ValueError("cyclotomic index must be positive")
    P = Polynomial.monomial(QQ, n) - 1
    for d in divisors(n)[:-1]:
        P = P.exact_div(cyclotomic(d))
    return P


def reversed_cyclotomic(n):
    """prod (1 - w x) over primitive n-th roots w; constant term 1."""
    R = cyclotomic(n).reverse()
    return R * (QQ.one / R[0])
