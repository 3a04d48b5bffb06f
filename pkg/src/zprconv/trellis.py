"""Controller canonical realization, its trellis, and the minimality oracle.

A row e_i(z) = e_{i,0} + e_{i,1} z + ... + e_{i,d} z^d (d = delta_i) owns a
block of delta_i state digits holding u_i(t-1), ..., u_i(t-delta_i).  The
state vector concatenates the blocks in row order and is indexed as a
little-endian base-p number.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Optional

import networkx as nx

from .poly import PolyMatrix
from .ring import RingContext

DENSE_LIMIT = 2**22


@dataclass(frozen=True)
class ControllerRealization:
    ctx: RingContext
    n: int
    deltas: tuple
    A: tuple  # gamma x gamma
    B: tuple  # kappa x gamma
    C: tuple  # gamma x n
    D: tuple  # kappa x n

    @property
    def gamma(self) -> int:
        return sum(self.deltas)

    @property
    def kappa(self) -> int:
        return len(self.deltas)


def _matrix_of(E) -> PolyMatrix:
    return getattr(E, "matrix", E)


def realize(E) -> ControllerRealization:
    """(A, B, C, D) of the controller canonical form of E(z)."""
    M = _matrix_of(E)
    ctx, n = M.ctx, M.n
    deltas = tuple(0 if v.is_zero() else max(0, int(v.degree)) for v in M.rows)
    gamma = sum(deltas)
    A = [[0] * gamma for _ in range(gamma)]
    B = [[0] * gamma for _ in deltas]
    C, D = [], []
    off = 0
    for i, (v, d) in enumerate(zip(M.rows, deltas)):
        D.append(v.coeff(0))
        if d:
            B[i][off] = 1
            for l in range(d - 1):
                A[off + l][off + l + 1] = 1
            for l in range(1, d + 1):
                C.append(v.coeff(l))
        off += d
    return ControllerRealization(
        ctx, n, deltas, tuple(map(tuple, A)), tuple(map(tuple, B)), tuple(C), tuple(D)
    )


def _matmul(ctx, X, Y, inner: int, cols: int):
    return [[sum(x[t] * Y[t][j] for t in range(inner)) % ctx.modulus for j in range(cols)] for x in X]


def transfer_coefficients(R: ControllerRealization) -> list:
    """[D, BC, BAC, BA^2C, ...]: coefficient matrices of B(z^-1 I - A)^-1 C + D.

    The series stops because A is nilpotent.
    """
    ctx, g, n = R.ctx, R.gamma, R.n
    out = [[list(row) for row in R.D]]
    if g == 0:
        return out
    left = [list(row) for row in R.B]
    for _ in range(max(R.deltas)):
        out.append(_matmul(ctx, left, R.C, g, n))
        left = _matmul(ctx, left, R.A, g, g)
    return out


def is_nilpotent(R: ControllerRealization) -> bool:
    g = R.gamma
    if g == 0:
        return True
    P = [list(row) for row in R.A]
    for _ in range(max(R.deltas)):
        P = _matmul(R.ctx, P, R.A, g, g)
    return not any(any(row) for row in P)


class Trellis:
    """One time-invariant section of the controller canonical trellis.

    Branches are (state, input) -> (label, next state); inputs are indexed
    like states, as little-endian base-p digit vectors of length kappa.
    Tables are materialized when p^(gamma+kappa) <= DENSE_LIMIT and computed
    on demand otherwise.
    """

    def __init__(self, R: ControllerRealization, materialize: Optional[bool] = None):
        self.realization = R
        self.ctx = R.ctx
        self.p, self.r, self.n = R.ctx.p, R.ctx.r, R.n
        self.gamma, self.kappa = R.gamma, R.kappa
        self.num_states = self.p**self.gamma
        self.num_inputs = self.p**self.kappa
        self._offsets = []
        off = 0
        for d in R.deltas:
            self._offsets.append(off)
            off += d
        if materialize is None:
            materialize = self.num_states * self.num_inputs <= DENSE_LIMIT
        self.dense = materialize
        self._next = self._label = None
        if materialize:
            self._build()

    # -- digit vectors <-> indices -----------------------------------------
    def state_vec(self, s: int) -> tuple:
        return _digits(s, self.p, self.gamma)

    def input_vec(self, u: int) -> tuple:
        return _digits(u, self.p, self.kappa)

    def state_index(self, vec) -> int:
        return _index(vec, self.p)

    def input_index(self, vec) -> int:
        return _index(vec, self.p)

    # -- branch arithmetic -------------------------------------------------
    def _state_part(self, s: int) -> tuple:
        R, mod = self.realization, self.ctx.modulus
        out = [0] * self.n
        for j, x in enumerate(self.state_vec(s)):
            if x:
                for c in range(self.n):
                    out[c] += x * R.C[j][c]
        return tuple(x % mod for x in out)

    def _input_part(self, u: int) -> tuple:
        R, mod = self.realization, self.ctx.modulus
        out = [0] * self.n
        for i, x in enumerate(self.input_vec(u)):
            if x:
                for c in range(self.n):
                    out[c] += x * R.D[i][c]
        return tuple(x % mod for x in out)

    def _shifted(self, s: int) -> int:
        # s A: inside each block the digits move one place up, the top one drops
        out = 0
        for o, d in zip(self._offsets, self.realization.deltas):
            if d:
                block = (s // self.p**o) % self.p**d
                out += self.p**o * ((block * self.p) % self.p**d)
        return out

    def _injected(self, u: int) -> int:
        # u B: u_i lands in the first digit of block i
        uv = self.input_vec(u)
        return sum(self.p**o * uv[i] for i, (o, d) in enumerate(zip(self._offsets, self.realization.deltas)) if d)

    def _next_state(self, s: int, u: int) -> int:
        t = self._shifted(s) + self._injected(u)
        assert 0 <= t < self.num_states
        return t

    def _build(self):
        mod = self.ctx.modulus
        sp = [self._state_part(s) for s in range(self.num_states)]
        up = [self._input_part(u) for u in range(self.num_inputs)]
        sh = [self._shifted(s) for s in range(self.num_states)]
        inj = [self._injected(u) for u in range(self.num_inputs)]
        # shifted blocks have a zero first digit, so the sums never carry
        assert max(sh) + max(inj) < self.num_states
        self._label = [[tuple((a + b) % mod for a, b in zip(x, y)) for y in up] for x in sp]
        self._next = [[x + y for y in inj] for x in sh]

    def branch(self, s: int, u: int) -> tuple:
        """(label, next state) of the branch leaving s on input u."""
        if self.dense:
            return self._label[s][u], self._next[s][u]
        mod = self.ctx.modulus
        label = tuple((a + b) % mod for a, b in zip(self._state_part(s), self._input_part(u)))
        return label, self._next_state(s, u)

    def branches(self, s: int):
        if self.dense:
            return zip(range(self.num_inputs), self._label[s], self._next[s])
        return self._lazy_branches(s)

    def _lazy_branches(self, s: int):
        for u in range(self.num_inputs):
            label, t = self.branch(s, u)
            yield u, label, t

    def branch_count(self) -> int:
        return self.num_states * self.num_inputs


def _digits(x: int, p: int, length: int) -> tuple:
    out = []
    for _ in range(length):
        x, d = divmod(x, p)
        out.append(d)
    return tuple(out)


def _index(vec, p: int) -> int:
    return sum(int(d) * p**i for i, d in enumerate(vec))


def build_trellis(R: ControllerRealization, materialize: Optional[bool] = None) -> Trellis:
    return Trellis(R, materialize)


# -- reachability and determinization --------------------------------------

def reachable_states(T: Trellis, start: int = 0) -> set:
    seen = {start}
    queue = deque([start])
    while queue:
        s = queue.popleft()
        for t in (T._next[s] if T.dense else (t for _, _, t in T.branches(s))):
            if t not in seen:
                seen.add(t)
                queue.append(t)
    return seen


def _zero_closure(T: Trellis, states) -> frozenset:
    zero = (0,) * T.n
    seen = set(states)
    queue = deque(seen)
    while queue:
        s = queue.popleft()
        for _, label, t in T.branches(s):
            if label == zero and t not in seen:
                seen.add(t)
                queue.append(t)
    return frozenset(seen)


def _moves(T: Trellis, macro) -> dict:
    out = {}
    for s in macro:
        for _, label, t in T.branches(s):
            out.setdefault(label, set()).add(t)
    return {label: frozenset(ts) for label, ts in out.items()}


def determinize(T: Trellis):
    """Subset construction on labels.

    The start set is every state reachable from the zero state on all-zero
    labels, so code sequences are taken up to leading zeros.  Returns
    (start, macro-states in discovery order, transition dict).
    """
    start = _zero_closure(T, [0])
    order, delta = [start], {}
    seen = {start}
    queue = deque([start])
    while queue:
        m = queue.popleft()
        delta[m] = _moves(T, m)
        for t in delta[m].values():
            if t not in seen:
                seen.add(t)
                order.append(t)
                queue.append(t)
    return start, order, delta


@dataclass(frozen=True)
class PartitionOracle:
    blocks: tuple  # tuple of frozensets of macro-states
    reachable: frozenset
    macro_states: int

    @property
    def num_blocks(self) -> int:
        return len(self.blocks)


def _refine(order, delta) -> list:
    """Moore refinement; every macro-state accepts (prefix-closed language)."""
    index = {m: i for i, m in enumerate(order)}
    trans = [sorted((lab, index[t]) for lab, t in delta[m].items()) for m in order]
    labels = [tuple(lab for lab, _ in row) for row in trans]
    targets = [[t for _, t in row] for row in trans]
    block = [0] * len(order)
    count = 1
    while True:
        sigs = {}
        new = [sigs.setdefault((block[i], labels[i], tuple(block[t] for t in targets[i])), len(sigs)) for i in range(len(order))]
        block = new
        if len(sigs) == count:
            break
        count = len(sigs)
    groups = {}
    for m, b in zip(order, block):
        groups.setdefault(b, []).append(m)
    return [frozenset(g) for _, g in sorted(groups.items())]


def minimize_oracle(T: Trellis) -> PartitionOracle:
    """Number of states of the minimal deterministic label automaton of the code."""
    _, order, delta = determinize(T)
    blocks = _refine(order, delta)
    return PartitionOracle(tuple(blocks), frozenset(reachable_states(T)), len(order))


def verify_minimal(E) -> dict:
    T = build_trellis(realize(E))
    oracle = minimize_oracle(T)
    states = T.num_states
    return {
        "states": states,
        "oracle_blocks": oracle.num_blocks,
        "reachable": len(oracle.reachable),
        "minimal": oracle.num_blocks == states == len(oracle.reachable),
    }


def zero_output_cycle_search(T: Trellis):
    """A cycle of zero-label branches, reachable from 0, with a nonzero input.

    Returns the cycle as (state, input vector, next state) triples, or None.
    """
    zero = (0,) * T.n
    reach = reachable_states(T)
    G = nx.DiGraph()
    G.add_nodes_from(reach)
    nonzero = []
    for s in sorted(reach):
        for u, label, t in T.branches(s):
            if label != zero:
                continue
            G.add_edge(s, t)
            if u:
                nonzero.append((s, u, t))
    comp = {}
    for k, scc in enumerate(nx.strongly_connected_components(G)):
        for s in scc:
            comp[s] = k
    for s, u, t in nonzero:
        if comp[s] != comp[t]:
            continue
        back = nx.shortest_path(G, t, s)
        cycle = [(s, T.input_vec(u), t)]
        for a, b in zip(back, back[1:]):
            ub = next(x for x, lab, y in T.branches(a) if y == b and lab == zero)
            cycle.append((a, T.input_vec(ub), b))
        return cycle
    return None


def bisimilar(T1: Trellis, T2: Trellis) -> bool:
    """Same label sequences from the (zero-closed) start sets.

    Walks pairs of determinized macro-states; a label available on one side
    only is a witness of difference.
    """
    if (T1.n, T1.p, T1.r) != (T2.n, T2.p, T2.r):
        raise ValueError("trellises over different alphabets")
    start = (_zero_closure(T1, [0]), _zero_closure(T2, [0]))
    seen = {start}
    queue = deque([start])
    while queue:
        a, b = queue.popleft()
        ma, mb = _moves(T1, a), _moves(T2, b)
        if ma.keys() != mb.keys():
            return False
        for label in ma:
            pair = (ma[label], mb[label])
            if pair not in seen:
                seen.add(pair)
                queue.append(pair)
    return True


def _tuple_str(t) -> str:
    return "(" + ",".join(str(x) for x in t) + ")"


def to_dot(T: Trellis) -> str:
    """Graphviz text: nodes by state index, edges "u / c" by (state, input)."""
    lines = ["digraph trellis {", "  rankdir=LR;"]
    for s in range(T.num_states):
        lines.append(f'  s{s} [label="{_tuple_str(T.state_vec(s))}"];')
    for s in range(T.num_states):
        for u, label, t in T.branches(s):
            lines.append(f'  s{s} -> s{t} [label="{_tuple_str(T.input_vec(u))} / {_tuple_str(label)}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
