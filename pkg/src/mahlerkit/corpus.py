"""Concrete series used as examples and test inputs.

Includes the 3-adic valuation of partial sums of central binomial
coefficients together with its 3-Mahler relation, the Thue-Morse automaton,
power indicators and nu_p(C(2n, n)^2).
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import gmpy2

from .automatic.dfao import DFAO
from .equation import MahlerEquation, residual, verified_precision
from .errors import UnknownName
from .fields import QQ
from .poly import Polynomial
from .series import TruncatedSeries


class ZagierConvention(Enum):
    SUM_TO_N = "n"
    SUM_TO_N_MINUS_1 = "n-1"


def nu(x, p):
    """p-adic valuation of a nonzero integer."""
    if x == 0:
        raise ValueError("valuation of 0")
    return int(gmpy2.remove(gmpy2.mpz(x), p)[1])


def central_binomials(n_max):
    """C(2n, n) for n = 0..n_max, by the ratio (2n)(2n-1)/n^2."""
    out = [gmpy2.mpz(1)]
    for n in range(1, n_max + 1):
        out.append(out[-1] * (2 * n) * (2 * n - 1) // (n * n))
    return out


def zagier_sequence(n_max, convention=ZagierConvention.SUM_TO_N):
    """a(n) = nu_3(sum C(2k, k)) over k <= n (or k <= n-1; a(0) = 0 for the empty sum)."""
    c = central_binomials(n_max)
    out = []
    s = gmpy2.mpz(0)
    for n in range(n_max + 1):
        if convention is ZagierConvention.SUM_TO_N:
            s += c[n]
            out.append(nu(s, 3))
        else:
            out.append(nu(s, 3) if s else 0)
            s += c[n]
    return out


def zagier_rhs(n_max):
    """nu_3(n^2 C(2n, n)) for n = 1..n_max (index 0 unused, stored as None)."""
    c = central_binomials(n_max)
    return [None] + [2 * nu(n, 3) + nu(c[n], 3) for n in range(1, n_max + 1)]


@dataclass(frozen=True)
class IdentityCheck:
    convention: ZagierConvention
    n_max: int
    failures: tuple

    @property
    def holds(self):
        return not self.failures

    def __str__(self):
        if self.holds:
            return f"sum to {self.convention.value}: holds for 1 <= n <= {self.n_max}"
        shown = ", ".join(map(str, self.failures[:5]))
        return f"sum to {self.convention.value}: fails at n = {shown}{', ...' if len(self.failures) > 5 else ''}"


def zagier_identity_check(n_max, convention):
    a = zagier_sequence(n_max, convention)
    rhs = zagier_rhs(n_max)
    return IdentityCheck(convention, n_max, tuple(n for n in range(1, n_max + 1) if a[n] != rhs[n]))


def _poly(terms):
    deg = max(terms)
    c = [0] * (deg + 1)
    for e, v in terms.items():
        c[e] = v
    return Polynomial(QQ, c)


def zagier_relation_coefficients(corrupt=False):
    """a0..a4 with a0 + a1 f(z) + a2 f(z^3) + a3 f(z^9) + a4 f(z^27) = 0."""
    a0 = _poly({1: 1, 2: 2, 3: -1, 4: 1, 5: 3, 7: -1, 8: 3, 9: 1, 11: -1, 12: 3, 14: -2,
                15: -1, 16: 2, 17: -2, 18: -2, 21: 2})
    a1 = _poly({0: -1, 4: -1, 8: -1, 9: 1, 13: 1, 17: 1})
    a2 = _poly({**{e: 1 for e in range(9)}, **{e: -1 for e in range(13, 22)}})
    a3 = _poly({**{e: -1 for e in (3, 6, 7, 9, 10, 11, 13, 14, 17)},
                **{e: 1 for e in (16, 19, 20, 22, 23, 24, 26, 27, 30)}})
    a4 = _poly({21: 1, 47 if corrupt else 48: -1})
    return a0, a1, a2, a3, a4


def zagier_equation(corrupt=False):
    a0, a1, a2, a3, a4 = zagier_relation_coefficients(corrupt)
    return MahlerEquation(QQ, 3, (a1, a2, a3, a4), a0)


def zagier_series(N, convention=ZagierConvention.SUM_TO_N):
    return TruncatedSeries(QQ, zagier_sequence(N - 1, convention))


def _system_rows(a, N):
    """Residuals of the three rows of f(z^3) = A(z) f(z) + B(z), cleared of denominators.

    With f1 = sum a(n) z^n, f2 = sum a(3n) z^n, f3 = sum a(3n+1) z^n, each row is
    multiplied by z^3 (1 + z + z^2)(z - 1) = z^6 - z^3.
    """
    f1 = TruncatedSeries(QQ, a[:N])
    f2 = TruncatedSeries(QQ, a[0:3 * N:3][:N])
    f3 = TruncatedSeries(QQ, a[1:3 * N:3][:N])
    D = _poly({6: 1, 3: -1})
    zm1 = _poly({1: 1, 0: -1})
    rows = [
        ((f1, _poly({1: 1, 2: 1, 3: 1})), (f2, _poly({2: -1})), (f3, _poly({1: -1})), _poly({3: 2, 1: -1})),
        ((f2, _poly({2: 1, 3: 1})), (f3, _poly({4: -1})), None, _poly({4: -1})),
        ((f2, _poly({2: -1})), (f3, _poly({2: 1, 3: 1})), None, _poly({2: 1, 3: 1})),
    ]
    lhs_series = (f1, f2, f3)
    out = []
    for target, row in zip(lhs_series, rows):
        *terms, b = row
        lhs = target.substitute_power(3).truncate(N).mul_poly(D).truncate(N)
        rhs = TruncatedSeries.from_polynomial(b, N)
        for term in terms:
            if term is not None:
                s, P = term
                rhs = rhs + s.mul_poly(P * zm1).truncate(N)
        diff = lhs - rhs
        out.append(next((i for i, c in enumerate(diff.coeffs) if c), None))
    return out


@dataclass(frozen=True)
class SystemCheck:
    precision: int
    rows: dict
    scalar: dict
    validated: ZagierConvention

    def __str__(self):
        lines = []
        for conv in ZagierConvention:
            rows = ", ".join("ok" if r is None else f"fails at {r}" for r in self.rows[conv])
            s = self.scalar[conv]
            sc = f"zero to order {s[1]}" if s[0] is None else f"nonzero at {s[0]}"
            lines.append(f"sum to {conv.value}: system rows [{rows}]; scalar relation {sc}")
        lines.append(f"validated convention: {self.validated.value if self.validated else 'none'}")
        return "\n".join(lines)


def zagier_system_check(N=300, corrupt=False):
    """Which convention satisfies the 3x3 system and the scalar relation, to order N."""
    eq = zagier_equation(corrupt)
    rows, scalar = {}, {}
    validated = None
    for conv in ZagierConvention:
        a = zagier_sequence(3 * N + 2, conv)
        rows[conv] = _system_rows(a, N)
        F = TruncatedSeries(QQ, a[:N])
        M = verified_precision(eq, F)
        r = residual(eq, F, M)
        first = next((i for i, c in enumerate(r) if c), None)
        scalar[conv] = (first, M)
        if first is None and validated is None:
            validated = conv
    return SystemCheck(N, rows, scalar, validated)


def power_indicator(k, N):
    """Coefficients of sum_n x^(k^n)."""
    c = [0] * N
    e = 1
    while e < N:
        c[e] = 1
        e *= k
    return TruncatedSeries(QQ, c)


def standard_series(name, params, N):
    """Named corpus series to N terms: power-indicator(k), geometric(c), nu-p-central-binomial-squared(p)."""
    if name == "power-indicator":
        return power_indicator(int(params), N)
    if name == "geometric":
        c = QQ(params)
        out, x = [], QQ.one
        for _ in range(N):
            out.append(x)
            x = x * c
        return TruncatedSeries(QQ, out)
    if name == "nu-p-central-binomial-squared":
        p = int(params)
        c = central_binomials(N - 1)
        return TruncatedSeries(QQ, [2 * nu(x, p) for x in c])
    if name == "zagier":
        return zagier_series(N)
    raise UnknownName(f"unknown series {name!r}")


SERIES_NAMES = ("power-indicator", "geometric", "nu-p-central-binomial-squared", "zagier")


def thue_morse_dfao():
    """Two states; digit 0 loops, digit 1 swaps; outputs 0 and 1."""
    return DFAO(2, ((0, 1), (1, 0)), (0, 1), 0, "msb")


def corpus_equations(N=1024):
    """(name, series, equation) triples whose equations hold on the series."""
    from .equation import solve_series

    x = lambda *c: Polynomial(QQ, list(c))
    out = []
    geo = standard_series("geometric", 3, N)
    out.append(("geometric(3) base 2", geo, MahlerEquation(QQ, 2, (x(1, -3), x(-1, 0, 3)))))
    out.append(("geometric(3) base 3", geo, MahlerEquation(QQ, 3, (x(1, -3), x(-1, 0, 0, 3)))))
    pw = power_indicator(2, N)
    out.append(("power-indicator(2)", pw, MahlerEquation(QQ, 2, (x(-1), x(1)), x(0, 1))))
    pw3 = power_indicator(3, N)
    out.append(("power-indicator(3)", pw3, MahlerEquation(QQ, 3, (x(-1), x(1)), x(0, 1))))
    tm = MahlerEquation(QQ, 2, (x(1), x(-1, 1)))
    out.append(("Thue-Morse product", solve_series(tm, [1], N), tm))
    stern = MahlerEquation(QQ, 2, (x(1), x(-1, -1, -1)))
    out.append(("Stern product", solve_series(stern, [1], N), stern))
    up = MahlerEquation(QQ, 2, (x(1, -2), x(-1)))
    out.append(("prod (1 - 2x^(2^j))^-1", solve_series(up, [1], N), up))
    two = MahlerEquation(QQ, 2, (x(1, -1, 1), x(-1, 2), x(0, 0, 3)))
    out.append(("order 2 example", solve_series(two, [1], N), two))
    out.append(("zagier", zagier_series(N), zagier_equation()))
    return out
