"""Deterministic finite automata with output over base-k digits.

By default digits are read most significant first and n = 0 is the empty
word. An automaton may also be marked ``digit_order="lsb"``; :meth:`DFAO.reverse`
converts between the two conventions.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from ..errors import ParseError


def digits(n, k, order="msb"):
    out = []
    while n:
        n, d = divmod(n, k)
        out.append(d)
    return out[::-1] if order == "msb" else out


@dataclass(frozen=True)
class DFAO:
    base: int
    transitions: tuple
    outputs: tuple
    initial: int = 0
    digit_order: str = "msb"

    def __post_init__(self):
        m = len(self.transitions)
        object.__setattr__(self, "transitions", tuple(tuple(row) for row in self.transitions))
        object.__setattr__(self, "outputs", tuple(self.outputs))
        if len(self.outputs) != m:
            raise ValueError(f"{m} states but {len(self.outputs)} outputs")
        if not 0 <= self.initial < m:
            raise ValueError("initial state out of range")
        for row in self.transitions:
            if len(row) != self.base or any(not 0 <= t < m for t in row):
                raise ValueError(f"bad transition row {row}")
        if self.digit_order not in ("msb", "lsb"):
            raise ValueError("digit_order must be 'msb' or 'lsb'")

    @property
    def states(self):
        return len(self.transitions)

    def run(self, word, state=None):
        q = self.initial if state is None else state
        for d in word:
            q = self.transitions[q][d]
        return q

    def state_of(self, n):
        return self.run(digits(n, self.base, self.digit_order))

    def __call__(self, n):
        return self.outputs[self.state_of(n)]

    def eval(self, n):
        return self(n)

    def sequence(self, N):
        """Outputs for n = 0..N-1."""
        if self.digit_order == "lsb":
            return [self(n) for n in range(N)]
        k = self.base
        st = [self.initial] * N
        delta = self.transitions
        for n in range(1, N):
            st[n] = delta[st[n // k]][n % k]
        out = self.outputs
        return [out[q] for q in st]

    def rerooted(self, state):
        return DFAO(self.base, self.transitions, self.outputs, state, self.digit_order)

    def reachable(self):
        seen = {self.initial}
        order = [self.initial]
        queue = deque(order)
        while queue:
            q = queue.popleft()
            for t in self.transitions[q]:
                if t not in seen:
                    seen.add(t)
                    order.append(t)
                    queue.append(t)
        return order

    def trim(self):
        """Drop unreachable states, renumbering in breadth-first order."""
        order = self.reachable()
        index = {q: i for i, q in enumerate(order)}
        trans = [[index[t] for t in self.transitions[q]] for q in order]
        outs = [self.outputs[q] for q in order]
        return DFAO(self.base, trans, outs, 0, self.digit_order)

    def minimize(self):
        """Moore partition refinement on the trimmed automaton."""
        A = self.trim()
        labels = {}
        cls = [labels.setdefault(_key(o), len(labels)) for o in A.outputs]
        while True:
            sigs = {}
            new = [sigs.setdefault((cls[q],) + tuple(cls[t] for t in A.transitions[q]), len(sigs)) for q in range(A.states)]
            if len(sigs) == len(set(cls)):
                break
            cls = new
        m = max(cls) + 1
        trans = [None] * m
        outs = [None] * m
        for q in range(A.states):
            c = cls[q]
            if trans[c] is None:
                trans[c] = [cls[t] for t in A.transitions[q]]
                outs[c] = A.outputs[q]
        return DFAO(A.base, trans, outs, cls[A.initial], A.digit_order).trim()

    def reverse(self):
        """Automaton reading the digits in the opposite order.

        States are maps sigma: Q -> outputs (stored as tuples), starting from
        the output map; digit d sends sigma to q -> sigma(delta(q, d)).
        """
        k = self.base
        start = self.outputs
        index = {start: 0}
        maps = [start]
        trans = []
        i = 0
        while i < len(maps):
            sigma = maps[i]
            row = []
            for d in range(k):
                new = tuple(sigma[self.transitions[q][d]] for q in range(self.states))
                j = index.get(new)
                if j is None:
                    j = index[new] = len(maps)
                    maps.append(new)
                row.append(j)
            trans.append(row)
            i += 1
        outs = [sigma[self.initial] for sigma in maps]
        order = "lsb" if self.digit_order == "msb" else "msb"
        return DFAO(k, trans, outs, 0, order)

    def zero_stable(self):
        """Equivalent automaton that ignores leading zeros (msb order)."""
        if self.transitions[self.initial][0] == self.initial:
            return self
        m = self.states
        trans = [list(r) for r in self.transitions]
        row = list(self.transitions[self.initial])
        row[0] = m
        trans.append(row)
        outs = list(self.outputs) + [self.outputs[self.initial]]
        return DFAO(self.base, trans, outs, m, self.digit_order)

    def map_outputs(self, f):
        return DFAO(self.base, self.transitions, [f(o) for o in self.outputs], self.initial, self.digit_order)

    def dumps(self):
        lines = [
            "DFAO",
            f"base: {self.base}",
            f"states: {self.states}",
            f"initial: {self.initial}",
            "outputs: " + " ".join(str(o) for o in self.outputs),
        ]
        if self.digit_order != "msb":
            lines.append(f"order: {self.digit_order}")
        lines += [" ".join(map(str, row)) for row in self.transitions]
        return "\n".join(lines) + "\n"

    @classmethod
    def loads(cls, text, parse_output=int):
        lines = [ln.strip() for ln in text.splitlines()]
        lines = [ln for ln in lines if ln and not ln.startswith("#")]
        if not lines or lines[0] != "DFAO":
            raise ParseError("automaton file must start with DFAO")
        head = {}
        body = []
        for ln in lines[1:]:
            key, sep, value = ln.partition(":")
            if sep:
                head[key.strip()] = value.strip()
            else:
                body.append(ln)
        try:
            k = int(head["base"])
            m = int(head["states"])
            q0 = int(head.get("initial", "0"))
            outs = [parse_output(t) for t in head["outputs"].split()]
            trans = [[int(t) for t in ln.split()] for ln in body]
        except KeyError as exc:
            raise ParseError(f"missing automaton header {exc}") from None
        except ValueError as exc:
            raise ParseError(f"bad automaton data: {exc}") from None
        if len(trans) != m:
            raise ParseError(f"{m} states declared but {len(trans)} transition lines")
        try:
            return cls(k, trans, outs, q0, head.get("order", "msb"))
        except ValueError as exc:
            raise ParseError(str(exc)) from None


def _key(o):
    return (type(o).__name__, str(o))
