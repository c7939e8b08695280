"""Infinite products prod_j (1 - a x^(k^j))^(-1) that are regular but not Becker.

Let b = a^(k^N) where N >= 1 is least with a^(k^N) = a^(k^(2N)), and put
Q(x) = prod_{j<N} (1 - b x^(k^j)). Then Q(x^k)/Q(x) = (1 - b x^(k^N))/(1 - b x)
is divisible by 1 - a x, and with S = Q(x^k) / ((1 - a x) Q(x)) the product
equals Q(x) G(x) where G(x) = S(x) G(x^k), G(0) = 1.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from sympy import totient

from ..equation import MahlerEquation
from ..errors import PurelyPeriodicOrbit
from ..fields import GF, Mod, QQ
from ..poly import Polynomial
from .becker import becker_automatize_mod_p
from ..cyclotomic import reversed_cyclotomic


@dataclass(frozen=True)
class UnitProduct:
    N: int
    Q: Polynomial
    S: Polynomial
    dfao: object = None

    def becker_equation(self, k):
        return MahlerEquation(self.S.field, k, (Polynomial.one(self.S.field), -self.S))


def orbit_index(a, k, limit=10 ** 6):
    """Least N >= 1 with a^(k^N) = a^(k^(2N)); raises if a^(k^j) = a for some j >= 1."""
    seen = {}
    x = a
    j = 0
    while j <= limit:
        if j >= 1 and x == a:
            raise PurelyPeriodicOrbit(f"{a} returns to itself after {j} steps of x -> x^{k}")
        key = int(x)
        if key in seen:
            break
        seen[key] = j
        x = x ** k
        j += 1
    # orbit enters its cycle at index mu with length lam
    mu = seen[int(x)]
    lam = j - mu
    N = 1
    while not (N >= mu and N % lam == 0):
        N += 1
    return N


def unit_product_automatize(a, k, validate=2048):
    """(Q, S, DFAO of prod (1 - a x^(k^j))^(-1)) for a nonzero a in F_p."""
    if not isinstance(a, Mod):
        raise TypeError("a must be a prime-field element; see unit_product_root_of_unity")
    if not a:
        raise PurelyPeriodicOrbit("a = 0 gives the trivial product")
    F = GF(a.p)
    N = orbit_index(a, k)
    b = a ** (k ** N)
    Q = Polynomial.one(F)
    for j in range(N):
        Q = Q * (1 - Polynomial.monomial(F, k ** j, b))
    denom = Polynomial(F, [1, -a]) * Q
    S = Q.compose_power(k).exact_div(denom)
    eq = MahlerEquation(F, k, (Polynomial.one(F), -S))
    A = becker_automatize_mod_p(eq, F.one, multiplier=Q, validate=validate)
    return UnitProduct(N, Q, S, A)


def unit_product_root_of_unity(n, k):
    """(Q, S) over Q for prod over primitive n-th roots w of prod_j (1 - w x^(k^j))^(-1).

    Each w^(k^N) is a primitive n' = n / gcd(n, k^N) root, hit phi(n)/phi(n')
    times, so prod_w (1 - w^(k^N) y) = Phi*_{n'}(y)^(phi(n)/phi(n')) with Phi*
    the reversed cyclotomic polynomial.
    """
    if gcd(n, k) == 1:
        raise PurelyPeriodicOrbit(f"primitive {n}-th roots are fixed by some x -> x^(k^j)")
    N = 1
    while pow(k, N, n) != pow(k, 2 * N, n):
        N += 1
    n2 = n // gcd(n, k ** N)
    R = reversed_cyclotomic(n2) ** (int(totient(n)) // int(totient(n2)))
    Q = Polynomial.one(QQ)
    for j in range(N):
        Q = Q * R.compose_power(k ** j)
    S = Q.compose_power(k).exact_div(reversed_cyclotomic(n) * Q)
    return UnitProduct(N, Q, S)
