"""Automata for Becker series over prime fields.

If G(x) = sum_{i=1}^n B_i(x) G(x^(k^i)), every Cartier image of M(x) G(x)
has the shape sum_{i=1}^n Q_i(x) G(x^(k^(i-1))) with deg Q_i bounded. Using
the equation to rewrite the Q_1 G(x) term and the rule
Lambda_b(R(x) H(x^k)) = Lambda_b(R)(x) H(x), the action of Lambda_b is

    Q'_i = Lambda_b(Q_1 B_i + Q_{i+1}),    Q_{n+1} = 0.

Over F_p the bounded-degree module is finite, so the orbit of the starting
element closes up; its constant terms give the sequence.

Products prod_j (1 - a x^(k^j))^(-1) are handled by carrying a fixed
denominator E built from the forward orbit of a under y -> y^k, so that the
series stays inside a finite module (see cartier_orbit_dfao).
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..decompose import infinite_product
from ..equation import MahlerEquation, solve_series
from ..linalg import minimal_representation_mod_p
from ..errors import DegreeBoundOverflow, FieldMismatch, PurelyPeriodicOrbit, StateLimitExceeded, ValidationFailure
from ..poly import Polynomial
from ..series import series_invert
from .dfao import DFAO


@dataclass(frozen=True)
class CartierModuleElement:
    """sum_i Q_i(x) G(x^(k^(i-1))) with deg Q_i <= degree_bound."""

    equation: MahlerEquation
    degree_bound: int
    coeffs: tuple

    def constant_term_factor(self):
        """E(0) / G(0)."""
        fld = self.equation.field
        return sum((q[0] for q in self.coeffs), fld.zero)

    def cartier(self, b):
        eq = self.equation
        B = [-p for p in eq.coeffs[1:]]
        n = len(B)
        Q = list(self.coeffs)
        new = []
        for i in range(n):
            R = Q[0] * B[i] + (Q[i + 1] if i + 1 < n else Polynomial.zero(eq.field))
            new.append(R.cartier(eq.base, b))
        for q in new:
            if q.degree() > self.degree_bound:
                raise DegreeBoundOverflow(f"degree {q.degree()} exceeds bound {self.degree_bound}")
        return CartierModuleElement(eq, self.degree_bound, tuple(new))


def degree_bound(eq, multiplier=None):
    """Least D with (D + max deg B_i) / k <= D, raised to cover the multiplier."""
    m = max(p.degree() for p in eq.coeffs[1:]) if eq.order >= 1 else 0
    k = eq.base
    D = -(-max(m, 0) // (k - 1))
    if multiplier is not None:
        D = max(D, multiplier.degree())
    return D


def _check_becker(eq):
    if eq.field.p is None:
        raise FieldMismatch("Becker automatization works over a prime field")
    if not eq.is_becker_form():
        raise ValueError("equation must have P0 = 1 and no inhomogeneous term")


def becker_automatize_mod_p(eq, g0, multiplier=None, validate=2048, minimize=True, units=(), max_states=None):
    """Most-significant-digit-first DFAO for the coefficients of M(x) G(x) U(x) mod p.

    ``eq`` is stored as G(x) - sum B_i G(x^(k^i)) = 0 and ``g0`` is G(0) (a
    Becker series is determined by its constant term). ``units`` lists pairs
    (a, e) and contributes U = prod_a prod_j (1 - a x^(k^j))^(-e).
    """
    fld = eq.field
    g0 = fld(g0[0] if isinstance(g0, (list, tuple)) else g0)
    M = multiplier if multiplier is not None else Polynomial.one(fld)
    A = cartier_msb_dfao(eq, g0, M, units, max_states)
    if minimize:
        A = A.minimize()
    if validate:
        G = solve_series(eq, [g0], validate).mul_poly(M).truncate(validate)
        for a, e in units:
            inv = series_invert(infinite_product(Polynomial(fld, [1, -fld(a)]), eq.base, validate))
            for _ in range(e):
                G = G * inv
        if A.sequence(validate) != list(G.coeffs):
            raise ValidationFailure("automaton disagrees with the series expansion")
    return A


def unit_denominator(units, k, field):
    """E = prod (1 - b x)^(m_b) over b in the forward orbits a^k, a^(k^2), ...

    The exponents are the least ones with E(x) A(x) | E(x^k) where
    A = prod (1 - a x)^e, namely m_(g^k) >= m_g + e_g along the orbits.
    """
    p = field.p
    e = {}
    for a, mult in units:
        a = int(a) % p
        e[a] = e.get(a, 0) + mult
    orbit = set()
    for a in e:
        x = pow(a, k, p)
        while x not in orbit:
            orbit.add(x)
            x = pow(x, k, p)
    m = {b: 0 for b in orbit}
    nodes = sorted(orbit | set(e))
    for _ in range(len(nodes) + 2):
        changed = False
        for g in nodes:
            need = m.get(g, 0) + e.get(g, 0)
            t = pow(g, k, p)
            if m[t] < need:
                m[t] = need
                changed = True
        if not changed:
            break
    else:
        raise PurelyPeriodicOrbit("a unit factor lies on a cycle of x -> x^k")
    E = Polynomial.one(field)
    for b in sorted(m):
        if m[b]:
            E = E * Polynomial(field, [1, -b]) ** m[b]
    A = Polynomial.one(field)
    for a in sorted(e):
        A = A * Polynomial(field, [1, -a]) ** e[a]
    return E, A


def _cartier_setup(eq, M, units):
    """Shared data for the Cartier action on tuples (N_1..N_n) of degree <= D."""
    _check_becker(eq)
    fld = eq.field
    k = eq.base
    n = max(eq.order, 1)
    if units:
        E, A = unit_denominator(units, k, fld)
        T = E.compose_power(k).exact_div(E * A)
    else:
        E = T = Polynomial.one(fld)
    T = [c.v for c in T.coeffs]
    B = [[c.v for c in (-q).coeffs] for q in eq.coeffs[1:]] or [[]]
    while len(B) < n:
        B.append([])
    max_b = max(len(b) - 1 for b in B)
    D = max(-(-(max(max_b, 0) + len(T) - 1) // (k - 1)), (M * E).degree(), 0)
    start = tuple([tuple(_trim([c.v for c in (M * E).coeffs]))] + [() for _ in range(n - 1)])
    return n, B, T, D, start


def _cartier_step(Q, b, k, p, n, B, T, D):
    q1 = Q[0]
    out = []
    for i in range(n):
        R = _mul(q1, B[i], p)
        if i + 1 < n:
            R = _add(R, Q[i + 1], p)
        if len(T) > 1:
            R = _mul(R, T, p)
        L = _trim(R[b::k])
        if len(L) - 1 > D:
            raise DegreeBoundOverflow(f"degree {len(L) - 1} exceeds bound {D}")
        out.append(tuple(L))
    return tuple(out)


def cartier_orbit_dfao(eq, g0, M, units=(), max_states=None):
    """Least-significant-digit-first DFAO whose states are the orbit elements.

    A state (N_1..N_n) stands for U(x) sum_i N_i(x)/E(x) G(x^(k^(i-1))). With
    U(x) = U(x^k)/A(x) and 1/(E A) = T(x)/E(x^k), the Cartier step is
    N'_i = Lambda_b((N_1 B_i + N_(i+1)) T).
    """
    fld = eq.field
    p = fld.p
    k = eq.base
    n, B, T, D, start = _cartier_setup(eq, M, units)
    index = {start: 0}
    states = [start]
    trans = []
    i = 0
    while i < len(states):
        Q = states[i]
        row = []
        for b in range(k):
            new = _cartier_step(Q, b, k, p, n, B, T, D)
            j = index.get(new)
            if j is None:
                j = index[new] = len(states)
                states.append(new)
                if max_states is not None and len(states) > max_states:
                    raise StateLimitExceeded(f"orbit exceeds {max_states} states")
            row.append(j)
        trans.append(row)
        i += 1
    outs = [fld(sum(q[0] for q in Q if q)) * g0 for Q in states]
    return DFAO(k, trans, outs, 0, "lsb")


def cartier_matrices(eq, M, units=()):
    """Matrices of the Cartier operators on the degree-<= D module, with the start vector.

    Coordinate i*(D+1) + j holds the x^j coefficient of N_(i+1). Column c of
    the matrix for digit b is the image of the c-th basis vector.
    """
    p = eq.field.p
    k = eq.base
    n, B, T, D, start = _cartier_setup(eq, M, units)
    dim = n * (D + 1)
    dtype = np.int64 if dim * (p - 1) ** 2 < 2 ** 63 else object
    mats = [np.zeros((dim, dim), dtype=dtype) for _ in range(k)]
    for c in range(dim):
        i, j = divmod(c, D + 1)
        Q = tuple(tuple([0] * j + [1]) if t == i else () for t in range(n))
        for b in range(k):
            img = _cartier_step(Q, b, k, p, n, B, T, D)
            for t, poly in enumerate(img):
                for e, v in enumerate(poly):
                    mats[b][t * (D + 1) + e, c] = v
    s = np.zeros(dim, dtype=dtype)
    for e, v in enumerate(start[0]):
        s[e] = v
    return mats, s, D


def cartier_msb_dfao(eq, g0, M, units=(), max_states=None):
    """Most-significant-digit-first DFAO from the transposed Cartier action.

    With L_b the Cartier matrices, f(n) = l L_(d_r) ... L_(d_0) s for the
    base-k digits d_r..d_0 of n, where l reads off the constant terms. After
    reducing this representation to a minimal one, the states are the
    distinct row vectors l L_w, reached breadth first; since Lambda_0 keeps
    constant terms, l L_0 = l and leading zeros are harmless.
    """
    fld = eq.field
    p = fld.p
    k = eq.base
    mats, s, D = cartier_matrices(eq, M, units)
    first = np.zeros(len(s), dtype=s.dtype)
    first[:: D + 1] = 1
    row, mats, col = minimal_representation_mod_p(first, mats, s, p)
    index = {row.tobytes(): 0}
    rows = [row]
    trans = []
    frontier = [0]
    while frontier:
        R = np.stack([rows[i] for i in frontier])
        images = [(R @ mats[b]) % p for b in range(k)]
        nxt = []
        for pos, i in enumerate(frontier):
            out = []
            for b in range(k):
                v = images[b][pos]
                key = v.tobytes()
                j = index.get(key)
                if j is None:
                    j = index[key] = len(rows)
                    rows.append(v)
                    nxt.append(j)
                    if max_states is not None and len(rows) > max_states:
                        raise StateLimitExceeded(f"more than {max_states} states")
                out.append(j)
            trans.append((i, out))
        frontier = nxt
    trans.sort()
    outs = [fld(int(r @ col % p)) * g0 for r in rows]
    return DFAO(k, [t for _, t in trans], outs, 0, "msb")


def _trim(v):
    n = len(v)
    while n and not v[n - 1]:
        n -= 1
    return list(v[:n])


def _mul(a, b, p):
    if not a or not b:
        return []
    if len(a) * len(b) > 4096 and max(len(a), len(b)) * p * p < 2 ** 62:
        c = np.convolve(np.array(a, dtype=np.int64), np.array(b, dtype=np.int64)) % p
        return c.tolist()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return [c % p for c in out]


def _add(a, b, p):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] = (out[i] + c) % p
    return out
