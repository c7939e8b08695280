"""Rationality of power series: Hankel reconstruction and cyclotomic splitting."""
from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from sympy import totient

from .cyclotomic import cyclotomic, reversed_cyclotomic
from .errors import InsufficientPrecision, ValidationFailure
from .fields import QQ
from .linalg import bareiss_rank, integer_rows, rational_kernel_vector
from .poly import Polynomial
from .ratfunc import RationalFunction


@dataclass(frozen=True)
class HankelResult:
    fraction: RationalFunction
    rank: int
    window_columns: int
    certified_to: int


def hankel_window(F, d):
    """Rows i = 0..d of f(d + 1 + i + j), j over every available column."""
    N = F.precision
    W = N - 2 * d - 1
    return [[F.coeffs[d + 1 + i + j] for j in range(W)] for i in range(d + 1)]


def hankel_rank(F, d):
    return bareiss_rank(integer_rows(hankel_window(F, d)))


def hankel_rationality(F, d, details=False):
    """A/B with deg A, deg B <= d and B(0) = 1 matching F, or None.

    A kernel vector (c_0..c_d) of the window gives B = c_d + ... + c_0 x^d,
    which kills every coefficient of B*F from index 2d+1 on.
    """
    N = F.precision
    if N < 4 * d + 16:
        raise InsufficientPrecision(f"need at least {4 * d + 16} terms for degree {d}; have {N}")
    if F.field.p is not None:
        raise ValueError("Hankel reconstruction is implemented over Q")
    window = hankel_window(F, d)
    int_rows = integer_rows(window)
    rank = bareiss_rank(int_rows)
    if rank > d:
        return None
    columns = integer_rows([list(col) for col in zip(*window)])
    c = rational_kernel_vector(columns, d + 1)
    if c is None:
        return None
    B = Polynomial(QQ, c[::-1])
    prod = F.mul_poly(B)
    if any(prod.coeffs[2 * d + 1:N]):
        raise ValidationFailure("kernel vector does not annihilate the window")
    A = Polynomial(QQ, prod.coeffs[: 2 * d + 1])
    R = RationalFunction(A, B)
    if R.numerator.degree() > d or R.denominator.degree() > d:
        return None
    if R.series(N) != F:
        return None
    if details:
        return HankelResult(R, rank, len(window[0]), N)
    return R


@dataclass(frozen=True)
class CyclotomicSplit:
    unit_part: Polynomial
    free_part: Polynomial
    indices: tuple

    def __str__(self):
        idx = ", ".join(f"{n}^{m}" for n, m in self.indices) or "none"
        return f"S0 = {self.unit_part.pretty()} [indices {idx}]; S1 = {self.free_part.pretty()}"


def small_totient_indices(D):
    """All n with phi(n) <= D (phi(n) >= sqrt(n/2) bounds the search)."""
    return [n for n in range(1, 2 * D * D + 3) if totient(n) <= D]


def cyclotomic_split(P):
    """P = S0 * S1, all roots of S0 roots of unity, none of S1's; S0(0) = S1(0) = 1.

    Every n with phi(n) <= deg P divides L = lcm of such n, so gcd(P, x^L - 1)
    is the product of the Phi_n dividing P. Computing x^L mod P over Q is
    hopeless for large L, so the same gcd is taken factor by factor: strip
    each Phi_n as often as it divides.
    """
    if P[0] != 1:
        raise ValueError("polynomial must have constant term 1")
    D = P.degree()
    one = Polynomial.one(P.field)
    if D <= 0:
        return CyclotomicSplit(one, P, ())
    indices = []
    S0 = one
    rest = P
    for n in small_totient_indices(D):
        phi = cyclotomic(n)
        m = 0
        while rest.degree() >= phi.degree():
            q, r = divmod(rest, phi)
            if r:
                break
            rest = q
            m += 1
        if m:
            indices.append((n, m))
            S0 = S0 * phi ** m
    S0 = S0 * (P.field.one / S0[0])
    S1 = P.exact_div(S0)
    if S0 * S1 != P:
        raise ValidationFailure("split does not multiply back")
    return CyclotomicSplit(S0, S1, tuple(indices))


@dataclass(frozen=True)
class FixedRootVerdict:
    ok: bool
    index: int = None

    def __str__(self):
        return "ok" if self.ok else f"violation({self.index})"


def fixed_root_check(indices, k):
    """Roots of unity of order n satisfy w^(k^j) = w for some j >= 1 iff gcd(n, k) = 1."""
    orders = sorted(i[0] if isinstance(i, tuple) else i for i in indices)
    for n in orders:
        if gcd(n, k) == 1:
            return FixedRootVerdict(False, n)
    return FixedRootVerdict(True)


def unit_part_from_indices(indices):
    P = Polynomial.one(QQ)
    for n, m in indices:
        P = P * reversed_cyclotomic(n) ** m
    return P


def reexpands(R, F):
    """True when the expansion of R agrees with F on F's precision."""
    return R.series(F.precision) == F

