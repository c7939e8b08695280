"""Guessing Mahler equations from truncated series by linear algebra."""
from __future__ import annotations

from fractions import Fraction

import numpy as np

from .equation import MahlerEquation, normalize, verify_equation
from .errors import InsufficientPrecision, InvalidExponents, ValidationFailure
from .linalg import integer_rows, nullspace_vector, rational_kernel_vector, rank_mod_p, MODULI
from .poly import Polynomial
from .series import substitute_power


def _columns(F, k, n, d, inhomogeneous):
    """Unknown columns: x^j F(x^(k^i)) for i <= n, j <= d (and x^j alone)."""
    N = F.precision
    cols = []
    if inhomogeneous:
        for j in range(d + 1):
            col = [F.field.zero] * N
            if j < N:
                col[j] = F.field.one
            cols.append(col)
    for i in range(n + 1):
        G = substitute_power(F, k ** i).coeffs[:N]
        G = list(G) + [F.field.zero] * (N - len(G))
        for j in range(d + 1):
            cols.append([F.field.zero] * j + G[: N - j])
    return cols


def _kernel(F, k, n, d, inhomogeneous):
    cols = _columns(F, k, n, d, inhomogeneous)
    rows = [list(r) for r in zip(*cols)]
    ncols = len(cols)
    if F.field.p is None:
        return rational_kernel_vector(integer_rows(rows), ncols)
    return nullspace_vector(rows, ncols, F.field)


def _has_kernel(F, k, n, d, inhomogeneous):
    """Cheap test; exact over F_p, and over Q a full rank mod p is a proof of 'no'."""
    cols = _columns(F, k, n, d, inhomogeneous)
    ncols = len(cols)
    if F.field.p is not None:
        return _kernel(F, k, n, d, inhomogeneous) is not None
    rows = integer_rows([list(r) for r in zip(*cols)])
    p = MODULI[0]
    M = np.array([[x % p for x in r] for r in rows], dtype=np.int64).reshape(len(rows), ncols)
    if rank_mod_p(M, p) == ncols:
        return False
    return _kernel(F, k, n, d, inhomogeneous) is not None


def find_equation(F, k, max_order, max_degree, inhomogeneous=False):
    """Smallest-order, then smallest-degree relation sum P_i F(x^(k^i)) = 0 (+A).

    Returns a normalized MahlerEquation tagged ``certified_to = F.precision``
    or None. The relation is only known to hold to the input precision.
    """
    N = F.precision
    unknowns = (max_order + 1 + (1 if inhomogeneous else 0)) * (max_degree + 1)
    if N < unknowns + max_degree:
        raise InsufficientPrecision(
            f"need at least {unknowns + max_degree} terms for order {max_order}, degree {max_degree}; have {N}"
        )
    d = max_degree
    for n in range(max_order + 1):
        if not _has_kernel(F, k, n, d, inhomogeneous):
            continue
        lo, hi = 0, d
        while lo < hi:
            mid = (lo + hi) // 2
            if _has_kernel(F, k, n, mid, inhomogeneous):
                hi = mid
            else:
                lo = mid + 1
        vec = _kernel(F, k, n, lo, inhomogeneous)
        eq = _vector_to_equation(F.field, k, n, lo, vec, inhomogeneous)
        eq = normalize(eq)
        if not verify_equation(eq, F).holds:
            raise ValidationFailure("normalized discovered equation fails on the input series")
        return eq.with_certificate(N)
    return None


def _vector_to_equation(field, k, n, d, vec, inhomogeneous):
    vec = [field(x) for x in vec]
    A = Polynomial.zero(field)
    if inhomogeneous:
        A = Polynomial(field, vec[: d + 1])
        vec = vec[d + 1:]
    coeffs = tuple(Polynomial(field, vec[i * (d + 1):(i + 1) * (d + 1)]) for i in range(n + 1))
    return MahlerEquation(field, k, coeffs, A)


def derive_m_mahler(F, eq_k, eq_l, a, b, max_order=None, max_degree=None):
    """Equation in base m = k^a l^b found by linear algebra on F.

    A series that is both k- and l-Mahler (orders <= N) is also m-Mahler with
    order at most N^2; this looks for such an equation within the bounds.
    """
    k, l = eq_k.base, eq_l.base
    m = Fraction(k) ** a * Fraction(l) ** b
    if m.denominator != 1 or m < 2:
        raise InvalidExponents(f"k^a l^b = {m} is not an integer >= 2")
    m = int(m)
    N = max(eq_k.order, eq_l.order)
    if max_order is None:
        max_order = N * N
    if max_degree is None:
        max_degree = m * max(eq_k.max_degree(), eq_l.max_degree(), 1)
    need = (max_order + 1) * (max_degree + 1) + max_degree
    if F.precision < need:
        raise InsufficientPrecision(f"need {need} terms for the requested bounds; have {F.precision}")
    return find_equation(F, m, max_order, max_degree)
