"""Linear representations of k-regular sequences.

f(n) = row * M[d_1] * ... * M[d_s] * column, where d_1 .. d_s are the base-k
digits of n, most significant first (n = 0 is the empty product).
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import BaseMismatch, FieldMismatch, ParseError
from ..fields import parse_field
from .dfao import DFAO, digits


@dataclass(frozen=True)
class LinearRepresentation:
    field: object
    base: int
    row: tuple
    matrices: tuple
    column: tuple

    def __post_init__(self):
        fld = self.field
        row = tuple(fld(x) for x in self.row)
        col = tuple(fld(x) for x in self.column)
        mats = tuple(tuple(tuple(fld(x) for x in r) for r in M) for M in self.matrices)
        r = len(row)
        if r < 1 or len(col) != r:
            raise ValueError("row and column must have the same positive length")
        if len(mats) != self.base or any(len(M) != r or any(len(x) != r for x in M) for M in mats):
            raise ValueError(f"need {self.base} matrices of size {r}x{r}")
        object.__setattr__(self, "row", row)
        object.__setattr__(self, "column", col)
        object.__setattr__(self, "matrices", mats)

    @property
    def dim(self):
        return len(self.row)

    def _step(self, v, b):
        M = self.matrices[b]
        zero = self.field.zero
        out = [zero] * self.dim
        for a, r in zip(v, M):
            if a:
                out = [o + a * x for o, x in zip(out, r)]
        return out

    def _dot(self, v):
        return sum((a * c for a, c in zip(v, self.column)), self.field.zero)

    def __call__(self, n):
        v = list(self.row)
        for d in digits(n, self.base):
            v = self._step(v, d)
        return self._dot(v)

    def eval(self, n):
        return self(n)

    def sequence(self, N):
        p = self.field.p
        if p is not None and p < 2 ** 31 and self.dim * p * p < 2 ** 62:
            return [self.field(int(x)) for x in self._sequence_mod_p(N)]
        k = self.base
        vecs = [list(self.row)]
        out = [self._dot(vecs[0])]
        for n in range(1, N):
            v = self._step(vecs[n // k], n % k)
            vecs.append(v)
            out.append(self._dot(v))
        return out

    def _sequence_mod_p(self, N):
        p = self.field.p
        k = self.base
        mats = [np.array([[x.v for x in r] for r in M], dtype=np.int64) for M in self.matrices]
        col = np.array([x.v for x in self.column], dtype=np.int64)
        V = np.zeros((N, self.dim), dtype=np.int64)
        if N:
            V[0] = [x.v for x in self.row]
        # vectors for n in [k^j, k^(j+1)) come from those in [k^(j-1), k^j)
        lo = 1
        while lo < N:
            hi = min(lo * k, N)
            for b in range(k):
                idx = np.arange(lo, hi)
                idx = idx[idx % k == b]
                if idx.size:
                    V[idx] = (V[idx // k] @ mats[b]) % p
            lo = hi
        return (V @ col) % p

    def zero_stable(self):
        """Equivalent representation with row * M[0] == row.

        Adds one coordinate that stays 1 while only leading zeros have been
        read and carries the correction row - row*M[0].
        """
        fld = self.field
        lm0 = self._step(list(self.row), 0)
        if lm0 == list(self.row):
            return self
        r = self.dim
        corr = [a - b for a, b in zip(self.row, lm0)]
        mats = []
        for b, M in enumerate(self.matrices):
            rows = [list(x) + [fld.zero] for x in M]
            last = (corr if b == 0 else [fld.zero] * r) + [fld.one if b == 0 else fld.zero]
            mats.append(rows + [last])
        return LinearRepresentation(fld, self.base, list(self.row) + [fld.one], mats, list(self.column) + [fld.zero])

    @classmethod
    def from_polynomial(cls, P, k):
        """Finite sequence f(n) = P[n]; the state is the prefix value while it stays <= deg P."""
        fld = P.field
        D = max(P.degree(), 0) + 1
        mats = []
        for b in range(k):
            M = [[fld.zero] * D for _ in range(D)]
            for v in range(D):
                w = k * v + b
                if w < D:
                    M[v][w] = fld.one
            mats.append(M)
        row = [fld.one] + [fld.zero] * (D - 1)
        col = [P[i] for i in range(D)]
        return cls(fld, k, row, mats, col)

    @classmethod
    def from_dfao(cls, A, field):
        """Indicator-vector representation of an msb automaton with field outputs."""
        if A.digit_order != "msb":
            A = A.reverse()
        m = A.states
        mats = []
        for b in range(A.base):
            M = [[field.zero] * m for _ in range(m)]
            for q in range(m):
                M[q][A.transitions[q][b]] = field.one
            mats.append(M)
        row = [field.zero] * m
        row[A.initial] = field.one
        return cls(field, A.base, row, mats, [field(o) for o in A.outputs])

    @classmethod
    def constant(cls, field, k, c):
        """f(0) = c and f(n) = 0 for n >= 1."""
        from ..poly import Polynomial

        return cls.from_polynomial(Polynomial(field, [c]), k)

    def dumps(self):
        lines = ["LINREP", self.field.header(), f"base: {self.base}", f"dim: {self.dim}"]
        lines.append("row: " + " ".join(map(str, self.row)))
        lines.append("column: " + " ".join(map(str, self.column)))
        for b, M in enumerate(self.matrices):
            lines.append(f"M{b}:")
            lines += [" ".join(map(str, r)) for r in M]
        return "\n".join(lines) + "\n"

    @classmethod
    def loads(cls, text):
        lines = [ln.strip() for ln in text.splitlines()]
        lines = [ln for ln in lines if ln and not ln.startswith("#")]
        if not lines or lines[0] != "LINREP":
            raise ParseError("representation file must start with LINREP")
        try:
            fld = parse_field(lines[1].partition(":")[2])
            k = int(lines[2].partition(":")[2])
            r = int(lines[3].partition(":")[2])
            row = [fld.parse(t) for t in lines[4].partition(":")[2].split()]
            col = [fld.parse(t) for t in lines[5].partition(":")[2].split()]
            mats = []
            pos = 6
            for b in range(k):
                if lines[pos] != f"M{b}:":
                    raise ParseError(f"expected 'M{b}:' got {lines[pos]!r}")
                mats.append([[fld.parse(t) for t in lines[pos + 1 + i].split()] for i in range(r)])
                pos += r + 1
        except (IndexError, ValueError) as exc:
            raise ParseError(f"bad representation file: {exc}") from None
        try:
            return cls(fld, k, row, mats, col)
        except ValueError as exc:
            raise ParseError(str(exc)) from None


def kernel_closure(rep):
    """DFAO whose states are the distinct row vectors row * M[w] over F_p."""
    fld = rep.field
    if fld.p is None:
        raise FieldMismatch("kernel closure needs a prime field")
    p = fld.p
    k = rep.base
    mats = [np.array([[x.v for x in r] for r in M], dtype=object if p >= 2 ** 31 else np.int64) for M in rep.matrices]
    col = [x.v for x in rep.column]
    start = np.array([x.v for x in rep.row], dtype=mats[0].dtype)
    index = {start.tobytes(): 0}
    vecs = [start]
    trans = []
    i = 0
    while i < len(vecs):
        v = vecs[i]
        row = []
        for b in range(k):
            w = (v @ mats[b]) % p
            key = w.tobytes()
            j = index.get(key)
            if j is None:
                j = index[key] = len(vecs)
                vecs.append(w)
            row.append(j)
        trans.append(row)
        i += 1
    outs = [fld(int(sum(int(a) * c for a, c in zip(v, col)))) for v in vecs]
    return DFAO(k, trans, outs, 0, "msb")


def _kron(A, B, fld):
    return [[a * b for a in ra for b in rb] for ra in A for rb in B]


def _add(A, B):
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(A, B)]


def representation_product(r1, r2):
    """Representation of the Cauchy product h(n) = sum_{j<=n} f(j) g(n-j).

    Reading n most significant digit first, track pairs (j, l) of prefixes
    with j + l + c = n-prefix, c in {0, 1} being the carry still owed by the
    unread low digits. With T(s) = sum_{x+y=s} M1[x] (x) M2[y], digit b maps
    the carry-c block to the carry-c' block by T(b + k c - c').
    """
    if r1.base != r2.base:
        raise BaseMismatch(f"bases {r1.base} and {r2.base}")
    if r1.field != r2.field:
        raise FieldMismatch(f"{r1.field} vs {r2.field}")
    fld = r1.field
    k = r1.base
    a, b = r1.zero_stable(), r2.zero_stable()
    s = a.dim * b.dim
    zero_block = [[fld.zero] * s for _ in range(s)]
    T = []
    for total in range(2 * k - 1):
        acc = zero_block
        for x in range(max(0, total - k + 1), min(total, k - 1) + 1):
            acc = _add(acc, _kron(a.matrices[x], b.matrices[total - x], fld))
        T.append(acc)

    def block(t):
        return T[t] if 0 <= t < len(T) else zero_block

    mats = []
    for d in range(k):
        top = [r0 + r1_ for r0, r1_ in zip(block(d), block(d - 1))]
        bottom = [r0 + r1_ for r0, r1_ in zip(block(d + k), block(d + k - 1))]
        mats.append(top + bottom)
    row = [x * y for x in a.row for y in b.row] + [fld.zero] * s
    col = [x * y for x in a.column for y in b.column] + [fld.zero] * s
    return LinearRepresentation(fld, k, row, mats, col)
