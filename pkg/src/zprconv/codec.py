"""Encoding digit streams with a p-encoder and hard-decision Viterbi decoding."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .trellis import Trellis


@dataclass(frozen=True)
class DigitStream:
    """Digit vectors u(start), u(start+1), ...; zero outside the list."""

    symbols: tuple
    start_time: int = 0

    def __len__(self):
        return len(self.symbols)


@dataclass(frozen=True)
class CodewordStream:
    symbols: tuple
    start_time: int = 0

    def __len__(self):
        return len(self.symbols)


def hamming(a, b) -> int:
    """Number of differing coordinates."""
    return sum(1 for x, y in zip(a, b) if x != y)


def _max_delta(E) -> int:
    return max((max(0, int(v.degree)) for v in E.rows), default=0)


def encode(E, u: DigitStream) -> CodewordStream:
    """c(t) = sum_l u(t-l) E_l, flushed for max delta_i extra steps."""
    ctx = E.ctx
    kappa, n = len(E.rows), E.n
    for t, sym in enumerate(u.symbols):
        if len(sym) != kappa:
            raise ValueError(f"symbol {t} has length {len(sym)}, expected {kappa}")
        if any(not ctx.is_digit(x) for x in sym):
            raise ValueError(f"symbol {t} = {tuple(sym)} is not a digit vector")
    coeffs = [[v.coeff(l) for l in range(_max_delta(E) + 1)] for v in E.rows]
    length = len(u.symbols) + _max_delta(E)
    out = []
    for t in range(length):
        c = [0] * n
        for l in range(_max_delta(E) + 1):
            if 0 <= t - l < len(u.symbols):
                for i, x in enumerate(u.symbols[t - l]):
                    if x:
                        row = coeffs[i][l]
                        for j in range(n):
                            c[j] += x * row[j]
        out.append(tuple(x % ctx.modulus for x in c))
    return CodewordStream(tuple(out), u.start_time)


def viterbi_decode(T: Trellis, received: CodewordStream, metric: Callable = hamming) -> DigitStream:
    """Cheapest input path from state 0 back to state 0.

    The last max delta_i steps carry zero input (the encoder flush).  On equal
    cost the survivor with the smaller previous state, then the smaller input
    index, wins.
    """
    if not received.symbols:
        raise ValueError("empty received stream")
    deltas = T.realization.deltas
    tail = max(deltas, default=0)
    steps = len(received.symbols)
    if steps < tail:
        raise ValueError(f"received stream shorter than the flush length {tail}")
    cost = {0: 0}
    back = []
    for t, y in enumerate(received.symbols):
        free = t < steps - tail
        nxt, ptr = {}, {}
        for s in sorted(cost):
            for u in (range(T.num_inputs) if free else (0,)):
                label, s2 = T.branch(s, u)
                c = cost[s] + metric(label, y)
                if s2 not in nxt or c < nxt[s2]:
                    nxt[s2] = c
                    ptr[s2] = (s, u)
        back.append(ptr)
        cost = nxt
    s, inputs = 0, []
    for ptr in reversed(back):
        s, u = ptr[s]
        inputs.append(u)
    inputs.reverse()
    return DigitStream(tuple(T.input_vec(u) for u in inputs[:steps - tail]), received.start_time)


def path_cost(T: Trellis, inputs, received, metric: Callable = hamming) -> int:
    """Cost of driving T from state 0 with inputs padded by the zero flush."""
    s, total = 0, 0
    for t, y in enumerate(received):
        u = T.input_index(inputs[t]) if t < len(inputs) else 0
        label, s = T.branch(s, u)
        total += metric(label, y)
    return total
