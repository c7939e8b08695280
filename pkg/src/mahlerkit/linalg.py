"""Exact linear algebra used by equation discovery and Hankel tests.

Three engines:

* :func:`rref` - plain Gauss-Jordan over any exact field (small systems).
* :func:`rref_mod_p` - vectorised Gauss-Jordan over F_p with numpy int64,
  valid for p < 2**31 so that products fit in 63 bits.
* :func:`rational_kernel_vector` - multimodular nullspace over Q with
  rational reconstruction and an exact integer check of the answer.
"""
from __future__ import annotations

import gmpy2
import numpy as np
from gmpy2 import mpq, mpz

# primes just below 2**31, in descending order
MODULI = (
    2147483647, 2147483629, 2147483587, 2147483579, 2147483563, 2147483549,
    2147483543, 2147483497, 2147483489, 2147483477, 2147483423, 2147483399,
    2147483353, 2147483323, 2147483269, 2147483249, 2147483237, 2147483179,
    2147483171, 2147483137, 2147483123, 2147483077, 2147483069, 2147483059,
    2147483053, 2147483033, 2147483029, 2147482951, 2147482949, 2147482943,
    2147482937, 2147482921, 2147482877, 2147482873, 2147482867, 2147482859,
    2147482819, 2147482817, 2147482811, 2147482801, 2147482763, 2147482739,
)


def rref(rows, field):
    """Reduced row echelon form. Returns (rows, pivot_columns)."""
    A = [list(r) for r in rows]
    if not A:
        return A, []
    ncols = len(A[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(A)) if A[i][c]), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = field.one / A[r][c]
        A[r] = [x * inv for x in A[r]]
        pr = A[r]
        for i in range(len(A)):
            if i != r and A[i][c]:
                f = A[i][c]
                A[i] = [x - f * y for x, y in zip(A[i], pr)]
        pivots.append(c)
        r += 1
        if r == len(A):
            break
    return A[:r], pivots


def kernel_vector_from_rref(R, pivots, ncols, field, free=None):
    """Kernel vector with the chosen free column (default: the first) set to 1."""
    pivset = set(pivots)
    frees = [c for c in range(ncols) if c not in pivset]
    if not frees:
        return None
    j = frees[0] if free is None else free
    v = [field.zero] * ncols
    v[j] = field.one
    for row, c in zip(R, pivots):
        v[c] = -row[j]
    return v


def nullspace_vector(rows, ncols, field):
    """First rref kernel vector of a matrix over ``field`` or None."""
    if field.p is not None and field.p < 2 ** 31:
        M = np.array([[x.v for x in r] for r in rows], dtype=np.int64).reshape(len(rows), ncols)
        R, pivots = rref_mod_p(M, field.p)
        v = _modp_kernel(R, pivots, ncols, field.p)
        return None if v is None else [field(int(x)) for x in v]
    R, pivots = rref(rows, field)
    return kernel_vector_from_rref(R, pivots, ncols, field)


def rref_mod_p(M, p):
    """Gauss-Jordan over F_p on an int64 array. Returns (R, pivots)."""
    A = np.array(M, dtype=np.int64) % p
    nrows, ncols = A.shape
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.nonzero(A[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            A[[r, piv]] = A[[piv, r]]
        inv = pow(int(A[r, c]), -1, p)
        A[r] = (A[r] * inv) % p
        col = A[:, c].copy()
        col[r] = 0
        rows = np.nonzero(col)[0]
        if rows.size:
            A[rows] = (A[rows] - np.outer(col[rows], A[r]) % p) % p
        pivots.append(c)
        r += 1
    return A[:r], pivots


def rank_mod_p(M, p):
    return len(rref_mod_p(M, p)[1])


def independent_rows_mod_p(M, p):
    """Indices of a maximal set of rows of M independent over F_p (greedy, in order)."""
    _, pivots = rref_mod_p(np.asarray(M, dtype=np.int64).T, p)
    return pivots


def _modp_kernel(R, pivots, ncols, p):
    pivset = set(pivots)
    frees = [c for c in range(ncols) if c not in pivset]
    if not frees:
        return None
    j = frees[0]
    v = np.zeros(ncols, dtype=np.int64)
    v[j] = 1
    for i, c in enumerate(pivots):
        v[c] = (-R[i, j]) % p
    return v


def integer_rows(rows):
    """Scale each row of rationals by the lcm of its denominators."""
    out = []
    for r in rows:
        d = mpz(1)
        for x in r:
            if x.denominator != 1:
                d = gmpy2.lcm(d, x.denominator)
        out.append([int(x.numerator * (d // x.denominator)) for x in r])
    return out


def rational_reconstruct(u, m):
    """a/b with a = b*u mod m and |a|, b <= sqrt(m/2), or None."""
    u %= m
    bound = gmpy2.isqrt(m // 2)
    r0, r1 = mpz(m), mpz(u)
    s0, s1 = mpz(0), mpz(1)
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if s1 == 0 or abs(s1) > bound:
        return None
    if gmpy2.gcd(r1, s1) != 1:
        return None
    return mpq(r1, s1)


def _reduce_rows(int_rows, p):
    return np.array([[x % p for x in r] for r in int_rows], dtype=np.int64)


def rational_kernel_vector(int_rows, ncols, max_primes=len(MODULI)):
    """First rref kernel vector over Q of an integer matrix, or None if trivial.

    The answer is reconstructed from kernels modulo several primes and then
    checked exactly against every row, so a returned vector is always a true
    kernel vector. ``None`` is returned only when some prime already shows
    full column rank, which implies full rank over Q.
    """
    if not int_rows:
        return [mpq(1)] + [mpq(0)] * (ncols - 1) if ncols else None
    best = None
    residues = []
    modulus = mpz(1)
    for count, p in enumerate(MODULI[:max_primes]):
        M = _reduce_rows(int_rows, p)
        R, pivots = rref_mod_p(M, p)
        if len(pivots) == ncols:
            return None
        if best is None or len(pivots) > len(best):
            best = pivots
            residues, modulus = [], mpz(1)
        elif pivots != best:
            continue
        v = _modp_kernel(R, pivots, ncols, p)
        residues = _crt_append(residues, modulus, v, p)
        modulus *= p
        cand = [rational_reconstruct(u, modulus) for u in residues]
        if all(c is not None for c in cand) and _check_kernel(int_rows, cand):
            return cand
    return _exact_kernel(int_rows, ncols)


def _crt_append(residues, modulus, v, p):
    if not residues:
        return [mpz(int(x)) for x in v]
    inv = gmpy2.invert(modulus % p, p)
    out = []
    for r, x in zip(residues, v):
        t = ((int(x) - r) * inv) % p
        out.append(r + modulus * t)
    return out


def _check_kernel(int_rows, v):
    d = mpz(1)
    for x in v:
        d = gmpy2.lcm(d, x.denominator)
    w = [int(x.numerator * (d // x.denominator)) for x in v]
    nz = [(j, c) for j, c in enumerate(w) if c]
    return all(sum(r[j] * c for j, c in nz) == 0 for r in int_rows)


def _exact_kernel(int_rows, ncols):
    from .fields import QQ

    rows = [[mpq(x) for x in r] for r in int_rows]
    R, pivots = rref(rows, QQ)
    return kernel_vector_from_rref(R, pivots, ncols, QQ)


def bareiss_rank(int_rows):
    """Rank of an integer matrix by fraction-free elimination."""
    A = [[mpz(x) for x in r] for r in int_rows]
    if not A:
        return 0
    nrows, ncols = len(A), len(A[0])
    prev = mpz(1)
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if A[i][c]), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        prow = A[r]
        pc = prow[c]
        for i in range(r + 1, nrows):
            row = A[i]
            f = row[c]
            A[i] = [(pc * x - f * y) // prev for x, y in zip(row, prow)]
        prev = pc
        r += 1
        if r == nrows:
            break
    return r


def mat_mul(A, B, field):
    """Product of list-of-lists matrices."""
    zero = field.zero
    Bt = list(zip(*B))
    return [[sum((a * b for a, b in zip(row, col)), zero) for col in Bt] for row in A]


def mat_vec(v, M, field):
    """Row vector times matrix."""
    zero = field.zero
    cols = len(M[0]) if M else 0
    out = [zero] * cols
    for a, row in zip(v, M):
        if a:
            out = [o + a * x for o, x in zip(out, row)]
    return out


def krylov_basis_mod_p(start, maps, p):
    """Reduced echelon basis (rows, pivots) of the span of w(start), w over words in ``maps``.

    Each map sends a vector to a vector. Rows stay fully reduced, so the
    coordinates of a vector v of the span are v[pivots].
    """
    rows = np.zeros((0, len(start)), dtype=start.dtype)
    pivots = []
    queue = [start % p]
    while queue:
        v = queue.pop()
        if pivots:
            v = (v - v[pivots] @ rows) % p
        nz = np.nonzero(v)[0]
        if not nz.size:
            continue
        c = int(nz[0])
        v = v * pow(int(v[c]), -1, p) % p
        if len(pivots):
            rows = (rows - np.outer(rows[:, c], v)) % p
        rows = np.vstack([rows, v])
        pivots.append(c)
        queue.extend(f(v) % p for f in maps)
    return rows, pivots


def minimal_representation_mod_p(row, mats, col, p):
    """Reachable and observable reduction of f(w) = row M_(w_1) ... M_(w_r) col over F_p.

    Returns (row', mats', col') of least dimension computing the same f.
    """
    B, P = krylov_basis_mod_p(col, [lambda v, M=M: M @ v for M in mats], p)
    if not P:
        z = np.zeros((0, 0), dtype=col.dtype)
        return np.zeros(0, dtype=col.dtype), [z for _ in mats], np.zeros(0, dtype=col.dtype)
    C = [(M @ B.T % p)[P, :] for M in mats]
    e = col[P] % p
    r = row @ B.T % p
    U, Q = krylov_basis_mod_p(r, [lambda u, M=M: u @ M for M in C], p)
    if not Q:
        z = np.zeros((0, 0), dtype=col.dtype)
        return np.zeros(0, dtype=col.dtype), [z for _ in mats], np.zeros(0, dtype=col.dtype)
    D = [(U @ M % p)[:, Q] for M in C]
    return r[Q] % p, D, U @ e % p
