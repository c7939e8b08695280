"""Reduction modulo primes and the search for primes where the proof's
root conditions can be checked directly."""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from math import gcd

from sympy import primerange

from .equation import MahlerEquation
from .errors import BadPrime
from .fields import GF, Mod
from .poly import Polynomial
from .series import TruncatedSeries


def _reduce_value(x, p):
    if isinstance(x, Mod):
        return x
    den = int(x.denominator)
    if den % p == 0:
        raise BadPrime(f"denominator {den} is divisible by {p}")
    return Mod(int(x.numerator) * pow(den, -1, p), p)


def reduce_mod_p(obj, p):
    """Coefficient-wise image over F_p of a polynomial, series or equation over Q."""
    F = GF(p)
    if isinstance(obj, Polynomial):
        return Polynomial._raw(F, [_reduce_value(c, p) for c in obj.coeffs])
    if isinstance(obj, TruncatedSeries):
        return TruncatedSeries._raw(F, [_reduce_value(c, p) for c in obj.coeffs])
    if isinstance(obj, MahlerEquation):
        coeffs = tuple(reduce_mod_p(c, p) for c in obj.coeffs)
        if coeffs[0].is_zero() and not obj.coeffs[0].is_zero():
            raise BadPrime(f"P0 vanishes modulo {p}")
        return MahlerEquation(F, obj.base, coeffs, reduce_mod_p(obj.inhomogeneous, p), obj.certified_to)
    raise TypeError(f"cannot reduce {type(obj).__name__}")


def roots_mod_p(P):
    """Roots in F_p with multiplicity, as a sorted list of (root, multiplicity)."""
    F = P.field
    p = F.p
    out = []
    R = P
    for r in range(p):
        if R.degree() < 1:
            break
        m = 0
        lin = Polynomial._raw(F, [Mod(-r, p), F.one])
        while R.degree() >= 1 and not R(Mod(r, p)):
            R = R.exact_div(lin)
            m += 1
        if m:
            out.append((r, m))
    return out


def linear_factors(P):
    """If P (with P(0) = 1) splits over F_p, the list of (a, mult) with P = prod (1 - a x)^mult."""
    roots = roots_mod_p(P)
    if sum(m for _, m in roots) != P.degree():
        return None
    p = P.field.p
    return [(pow(r, -1, p), m) for r, m in roots]


def power_witness(a, k, p, n_max):
    """Least n in 1..n_max such that 1 - a y^(k^n) has no root in F_p, i.e. a^-1 is
    not a k^n-th power; None if there is none."""
    inv = pow(a, -1, p)
    for n in range(1, n_max + 1):
        g = gcd(k ** n, p - 1)
        if pow(inv, (p - 1) // g, p) != 1:
            return n
    return None


@dataclass(frozen=True)
class PrimeReport:
    p: int
    splits: bool
    k_witnesses: dict = dc_field(default_factory=dict)
    l_witnesses: dict = dc_field(default_factory=dict)
    passed: bool = False

    def as_dict(self):
        return {
            "p": self.p,
            "splits": self.splits,
            "k_witnesses": {str(a): n for a, n in sorted(self.k_witnesses.items())},
            "l_witnesses": {str(a): n for a, n in sorted(self.l_witnesses.items())},
            "passed": self.passed,
        }


def _excluded(P, p):
    if P.is_zero():
        return False
    for c in P.coeffs:
        if int(c.denominator) % p == 0:
            return True
    return int(P.lead().numerator) % p == 0 or int(P[0].numerator) % p == 0


def prime_search(S1, T1, k, l, p_max=500, n_max=8):
    """Primes p <= p_max where S1*T1 splits into factors 1 - a x and every a
    admits a witness n <= n_max (k-witnesses for S1's roots, l for T1's)."""
    reports = []
    for p in primerange(2, p_max + 1):
        p = int(p)
        if _excluded(S1, p) or _excluded(T1, p):
            continue
        s = linear_factors(reduce_mod_p(S1, p))
        t = linear_factors(reduce_mod_p(T1, p))
        if s is None or t is None:
            reports.append(PrimeReport(p, False))
            continue
        kw = {a: power_witness(a, k, p, n_max) for a, _ in s}
        lw = {a: power_witness(a, l, p, n_max) for a, _ in t}
        passed = all(v is not None for v in kw.values()) and all(v is not None for v in lw.values())
        reports.append(PrimeReport(p, True, kw, lw, passed))
    return reports
