"""Base-change arithmetic for pairs of multiplicatively independent integers.

Given k and l, find k', l' in the multiplicative group they generate, with a
prime p dividing k' but not l' and a prime q dividing l' but not k'.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from sympy import factorint

from .errors import MultiplicativelyDependent


@dataclass(frozen=True)
class BasePair:
    k: int
    l: int
    p: int
    q: int

    def check(self):
        return (
            self.k % self.p == 0
            and self.l % self.p != 0
            and self.l % self.q == 0
            and self.k % self.q != 0
            and not multiplicatively_dependent(self.k, self.l)
        )


def _exponents(k, l):
    fk, fl = factorint(k), factorint(l)
    primes = sorted(set(fk) | set(fl))
    return primes, [fk.get(p, 0) for p in primes], [fl.get(p, 0) for p in primes]


def multiplicatively_dependent(k, l):
    """True when k^m = l^n for some positive m, n (exponent vectors proportional)."""
    if k < 2 or l < 2:
        return True
    _, a, b = _exponents(k, l)
    return all(x * b[0] == y * a[0] for x, y in zip(a, b))


def base_pair(k, l):
    if k < 2 or l < 2:
        raise ValueError("bases must be at least 2")
    if multiplicatively_dependent(k, l):
        raise MultiplicativelyDependent(f"{k} and {l} are multiplicatively dependent")
    primes, a, b = _exponents(k, l)
    only_k = [i for i in range(len(primes)) if b[i] == 0]
    only_l = [i for i in range(len(primes)) if a[i] == 0]
    if only_k and only_l:
        return BasePair(k, l, primes[only_k[0]], primes[only_l[0]])
    if only_k:
        # every prime of l divides k; the construction needs the roles swapped
        s = base_pair(l, k)
        return BasePair(s.l, s.k, s.q, s.p)
    support = [i for i in range(len(primes))]
    i0 = min(support, key=lambda i: (Fraction(a[i], b[i]), i))
    kp = Fraction(k) ** b[i0] / Fraction(l) ** a[i0]
    c = [a[j] * b[i0] - b[j] * a[i0] for j in range(len(primes))]
    i1 = max(support, key=lambda j: (Fraction(c[j], b[j]), -j))
    lp = Fraction(l) ** c[i1] / kp ** b[i1]
    assert kp.denominator == 1 and lp.denominator == 1
    pair = BasePair(int(kp), int(lp), primes[i1], primes[i0])
    assert pair.check(), pair
    return pair
