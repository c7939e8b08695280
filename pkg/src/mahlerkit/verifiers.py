"""Numeric spot checks of the growth estimates and a brute-force group searcher.

Floating point lives only here, always through mpmath at 100 bits.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import gcd, lcm

import mpmath
import numpy as np

from .errors import FactorVanishes, ValidationFailure

PREC = 100


def _alpha(alpha):
    if alpha is None:
        return mpmath.mpf(1)
    j, n = alpha
    return mpmath.expjpi(mpmath.mpf(2 * j) / n)


def _num(c):
    if isinstance(c, (complex, mpmath.mpc)):
        return mpmath.mpc(c)
    if isinstance(c, (float, mpmath.mpf)):
        return mpmath.mpf(c)
    q = Fraction(int(c.numerator), int(c.denominator))
    return mpmath.mpf(q.numerator) / q.denominator


def product_growth(P, k, t, alpha=None):
    """|prod_{j>=0} P((t alpha)^(k^j))|^(-1) for P(0) = 1.

    ``P`` is a list of coefficients or a Polynomial; ``alpha`` is a pair
    (j, n) meaning exp(2 pi i j / n). Factors are multiplied until one is
    within 1e-15 of 1; later factors are closer still.
    """
    with mpmath.workprec(PREC):
        coeffs = [_num(c) for c in getattr(P, "coeffs", P)]
        if not coeffs or coeffs[0] != 1:
            raise ValueError("P must have constant term 1")
        t = mpmath.mpf(t)
        if not 0 < t < 1:
            raise ValueError("t must lie in (0, 1)")
        z = t * _alpha(alpha)
        acc = mpmath.mpf(1)
        while True:
            f = mpmath.polyval(coeffs[::-1], z)
            if abs(f) < mpmath.mpf(10) ** -30:
                raise FactorVanishes(f"factor {mpmath.nstr(f, 5)} at x = {mpmath.nstr(z, 10)}")
            acc *= f
            if abs(f - 1) < mpmath.mpf(10) ** -15:
                break
            z = z ** k
        return 1 / abs(acc)


def divergence_probe(k=2, A=1, threshold=1000, max_j=60):
    """Least j such that t = 1 - 2^-j gives (1-t)^A prod (1 - t^(k^i))^(-1) > threshold."""
    with mpmath.workprec(PREC):
        for j in range(1, max_j + 1):
            t = 1 - mpmath.mpf(2) ** -j
            v = (1 - t) ** A * product_growth([1, -1], k, t)
            if v > threshold:
                return j, t, v
    return None


@dataclass(frozen=True)
class SumCheck:
    k: int
    rows: tuple
    holds: bool
    min_margin: object

    def __str__(self):
        status = "holds" if self.holds else "VIOLATED"
        return f"k={self.k}: {len(self.rows)} samples, {status}, min margin {mpmath.nstr(self.min_margin, 6)}"


def power_sum(t, k):
    """sum_{i>=0} t^(k^i), stopping once a term drops below 1e-18."""
    s = mpmath.mpf(0)
    term = t
    while term >= mpmath.mpf(10) ** -18:
        s += term
        term = term ** k
    return s


def check_sum_inequality(k, samples):
    """-log(1 - t) >= (1 - 1/k) sum_i t^(k^i) at each sample, with margins."""
    rows = []
    with mpmath.workprec(PREC):
        for t in samples:
            t = mpmath.mpf(t)
            if not 0 < t < 1:
                raise ValueError("samples must lie in (0, 1)")
            lhs = -mpmath.log(1 - t)
            rhs = (1 - mpmath.mpf(1) / k) * power_sum(t, k)
            rows.append((t, lhs, rhs, lhs - rhs))
    margin = min(r[3] for r in rows)
    return SumCheck(k, tuple(rows), margin > 0, margin)


def equispaced(n):
    return [mpmath.mpf(i) / (n + 1) for i in range(1, n + 1)]


def companion_nilpotent(first_row, d):
    """Nilpotency of the matrix with the given first row and ones below the diagonal.

    The characteristic polynomial is x^d - a_1 x^(d-1) - ... - a_d, so the
    matrix is nilpotent iff the first row vanishes; cross-checked by A^d = 0.
    """
    if d < 1 or len(first_row) != d:
        raise ValueError("first row must have d >= 1 entries")
    row = [Fraction(c) for c in first_row]
    A = [row] + [[Fraction(int(j == i - 1)) for j in range(d)] for i in range(1, d)]
    P = A
    for _ in range(d - 1):
        P = [[sum(P[i][m] * A[m][j] for m in range(d)) for j in range(d)] for i in range(d)]
    by_power = all(c == 0 for r in P for c in r)
    by_row = all(c == 0 for c in row)
    if by_power != by_row:
        raise ValidationFailure("first-row test and matrix power disagree")
    return by_row


class HypothesisUnmet(UserWarning):
    pass


def _order(x, d):
    return d // gcd(x % d, d)


@dataclass(frozen=True)
class GroupInstance:
    moduli: tuple
    generators: tuple

    @property
    def coordinate_orders(self):
        return tuple(_order(h[i], d) for i, (h, d) in enumerate(zip(self.generators, self.moduli)))

    def hypothesis(self):
        return sum(Fraction(1, r) for r in self.coordinate_orders) < 1


@dataclass(frozen=True)
class GroupWitness:
    coefficients: tuple
    element: tuple


def group_search(inst):
    """Lexicographically first coefficients x with sum x_i h_i having no zero coordinate.

    Coefficient x_i runs over 1..ord(h_i), which covers every residue of x_i
    modulo the order of h_i (x_i = ord(h_i) acts as 0).
    """
    d = inst.moduli
    if not inst.hypothesis():
        warnings.warn(f"sum of 1/r_i is at least 1 for orders {inst.coordinate_orders}", HypothesisUnmet)
    orders = [lcm(*[_order(c, m) for c, m in zip(h, d)]) for h in inst.generators]
    H = np.array(inst.generators, dtype=np.int64).reshape(len(orders), len(d))
    mod = np.array(d, dtype=np.int64)
    # the last coefficient is scanned as one vectorized block per prefix
    last = np.arange(1, orders[-1] + 1, dtype=np.int64)
    tail_sums = last[:, None] * H[-1][None, :]
    for head in product(*[range(1, o + 1) for o in orders[:-1]]):
        base = np.array(head, dtype=np.int64) @ H[:-1] if head else 0
        vals = (tail_sums + base) % mod
        hit = np.flatnonzero(np.all(vals != 0, axis=1))
        if hit.size:
            return GroupWitness(tuple(head) + (int(hit[0]) + 1,), tuple(int(v) for v in vals[hit[0]]))
    if inst.hypothesis():
        raise ValidationFailure("no witness although the hypothesis holds")
    return None


def random_group_instance(rng, max_m=4, max_modulus=30):
    """A random instance with sum 1/r_i < 1 (rejection sampling)."""
    while True:
        m = rng.randint(1, max_m)
        d = [rng.randint(2, max_modulus) for _ in range(m)]
        gens = []
        for i in range(m):
            h = [rng.randrange(di) for di in d]
            divs = [r for r in range(2, d[i] + 1) if d[i] % r == 0]
            r = rng.choice(divs)
            u = rng.choice([u for u in range(1, r) if gcd(u, r) == 1])
            h[i] = (d[i] // r) * u
            gens.append(tuple(h))
        inst = GroupInstance(tuple(d), tuple(gens))
        if inst.hypothesis():
            return inst
