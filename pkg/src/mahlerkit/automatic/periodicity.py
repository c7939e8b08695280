"""Deciding eventual periodicity of an automatic sequence.

Candidate periods m come from a prefix of the sequence, filtered in
vectorized blocks past the largest allowed preperiod. A candidate is
accepted only after an exact check: the set {n >= t : f(n) != f(n + m)} is
recognised by a small nondeterministic product automaton (the DFAO run on n,
the DFAO run on n + m, an adder with carry for the constant m, and a
comparator against t), and we show that no accepting state is reachable.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass

import numpy as np

from .dfao import digits


@dataclass(frozen=True)
class PeriodicityVerdict:
    periodic: bool
    preperiod: int = None
    period: int = None
    max_period: int = None
    max_preperiod: int = None

    def __str__(self):
        if self.periodic:
            return f"periodic(t={self.preperiod}, m={self.period})"
        return f"aperiodic-up-to(m<={self.max_period}, t<={self.max_preperiod})"


def _labels(values):
    index = {}
    return np.array([index.setdefault((type(v).__name__, str(v)), len(index)) for v in values], dtype=np.int64)


def candidate_periods(seq, max_period, from_index):
    """Periods m <= max_period consistent with seq on every index >= from_index."""
    L = len(seq)
    cand = np.arange(1, max_period + 1)
    hi = L - max_period
    for lo in range(from_index, hi, 256):
        pos = np.arange(lo, min(lo + 256, hi))
        ok = np.all(seq[pos][None, :] == seq[pos[None, :] + cand[:, None]], axis=1)
        cand = cand[ok]
        if not cand.size:
            break
    return cand.tolist()


def eventual_periodicity(A, max_period=64, max_preperiod=1024):
    """Least period m <= max_period (with least preperiod t <= max_preperiod), proved exactly."""
    if A.digit_order != "msb":
        A = A.reverse()
    A = A.minimize()
    L = max_preperiod + 4 * max_period + 64
    seq = _labels(A.sequence(L))
    Z = A.zero_stable()
    for m in candidate_periods(seq, max_period, max_preperiod):
        diff = np.nonzero(seq[: L - m] != seq[m:])[0]
        t = int(diff[-1]) + 1 if diff.size else 0
        if periodic_from(Z, m, t):
            return PeriodicityVerdict(True, t, m, max_period, max_preperiod)
        if not periodic_from(Z, m, max_preperiod):
            continue
        lo, hi = t + 1, max_preperiod
        while lo < hi:
            mid = (lo + hi) // 2
            if periodic_from(Z, m, mid):
                hi = mid
            else:
                lo = mid + 1
        return PeriodicityVerdict(True, lo, m, max_period, max_preperiod)
    return PeriodicityVerdict(False, max_period=max_period, max_preperiod=max_preperiod)


def periodic_from(A, m, t):
    """Exact test of f(n) = f(n + m) for every n >= t.

    ``A`` must read most significant digit first and ignore leading zeros.
    Words for n and y = n + m are read in parallel, padded to equal length.
    The adder works top-down: ``c`` is the carry the unread low digits must
    deliver; in the low phase the state also tracks the position ``j`` inside
    the last ``width`` digits where the constants m and t live.
    """
    k = A.base
    md = digits(m, k)
    td = digits(t, k)
    width = max(len(md), len(td), 1)
    md = [0] * (width - len(md)) + md
    td = [0] * (width - len(td)) + td
    delta = A.transitions
    out = _labels(A.outputs).tolist()
    q0 = A.initial

    start = (q0, q0, 0, -1, 0)
    seen = {start}
    queue = deque([start])
    while queue:
        qn, qy, c, j, cmp = queue.popleft()
        if j == width:
            if c == 0 and cmp >= 0 and out[qn] != out[qy]:
                return False
            continue
        succ = []
        if j == -1:
            succ.append((qn, qy, c, 0, cmp))
            mi = ti = 0
            nj = -1
        else:
            mi, ti = md[j], td[j]
            nj = j + 1
        for x in range(k):
            ncmp = cmp if cmp else (x > ti) - (x < ti)
            for cin in (0, 1):
                y = x + mi + cin - k * c
                if 0 <= y < k:
                    succ.append((delta[qn][x], delta[qy][y], cin, nj, ncmp))
        for s in succ:
            if s not in seen:
                seen.add(s)
                queue.append(s)
    return True
