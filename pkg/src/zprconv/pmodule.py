"""p-generator sequences, p-bases and reduced p-bases of submodules of Z_{p^r}^n[z].

A reduced p-basis is read off the finite slice of the module made of the
elements of degree at most D, D being the largest generator degree.  Written
as constant vectors with the highest-degree block first, the slice has a
position-first Howell form; closing it under multiplication by z (within
degree D) makes its pivots describe the leading coefficients available at
every degree.  Each time the pivot valuation of a column drops from one degree
to the next, the Howell row at that position and its p-multiples become basis
rows.  Those rows have p-linearly independent leading coefficients and are
finally ordered so that every p v_i only uses later rows.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import product
from typing import Optional, Sequence

from .poly import PolyMatrix, PolyVec, normalize
from .ring import RingContext, digit_dependency, digit_solve, vec_scale, vec_sub, vec_valuation

_MAX_ROUNDS = 100_000


class NotAPGeneratorSequence(ValueError):
    pass


class NotReduced(ValueError):
    pass


@dataclass(frozen=True)
class PSequence:
    """Ordered polynomial rows plus tri-state flags (None means unchecked)."""

    ctx: RingContext
    n: int
    rows: tuple
    is_p_generator_sequence: Optional[bool] = None
    is_p_basis: Optional[bool] = None
    is_reduced: Optional[bool] = None

    def __len__(self):
        return len(self.rows)

    def degrees(self) -> list:
        return [int(v.degree) for v in self.rows]

    def as_matrix(self) -> PolyMatrix:
        return PolyMatrix(self.ctx, self.n, tuple(self.rows))


def _rows_of(obj):
    """(ctx, n, rows) from a PolyMatrix, PSequence or non-empty row list."""
    if isinstance(obj, (PolyMatrix, PSequence)):
        return obj.ctx, obj.n, list(obj.rows)
    rows = list(obj)
    if not rows:
        raise ValueError("cannot infer the ring from an empty row list")
    return rows[0].ctx, rows[0].n, rows


def _p_closure(ctx: RingContext, rows) -> list:
    out = []
    for g in rows:
        v = g
        for _ in range(ctx.r):
            if v.is_zero():
                break
            out.append(v)
            v = v.scale(ctx.p)
    return out


def expand_to_p_generators(G) -> PSequence:
    """(g_1, p g_1, ..., p^(r-1) g_1, g_2, ...) with zero rows dropped."""
    ctx, n, rows = _rows_of(G)
    return PSequence(ctx, n, tuple(_p_closure(ctx, rows)), is_p_generator_sequence=True)


# -- division ---------------------------------------------------------------

def _divide(w: PolyVec, rows: Sequence[PolyVec]):
    """Cancel leading terms of w with digit combinations of compatible rows.

    Returns (digits, remainder) where digits[j] is a digit polynomial and
    w = sum digits[j] rows[j] + remainder.  Each step lowers deg w, so every
    z-power of digits[j] is touched at most once and stays a digit.
    """
    ctx = w.ctx
    digits = [[] for _ in rows]
    degs = [r.degree for r in rows]
    lcs = [r.leading_coeff_vec() for r in rows]
    while not w.is_zero():
        d = int(w.degree)
        cand = [j for j, dj in enumerate(degs) if dj <= d]
        sol = digit_solve(ctx, w.leading_coeff_vec(), [lcs[j] for j in cand])
        if sol is None:
            break
        for j, a in zip(cand, sol):
            if a:
                s = d - int(degs[j])
                w = w - rows[j].shift(s).scale(a)
                buf = digits[j]
                if len(buf) <= s:
                    buf.extend([0] * (s + 1 - len(buf)))
                buf[s] = a
    return [normalize(ctx, c) for c in digits], w


def _howell(ctx: RingContext, vecs):
    """Position-first Howell form: list of (row, pivot column, pivot valuation).

    Pivot columns strictly increase; in each column the pivot has the least
    valuation available, and p^(r-e) * pivot row is pushed back into the pool
    so that the span of the rows from any pivot onward is exactly the part of
    the module vanishing before that pivot.
    """
    pool = [v for v in vecs if any(v)]
    out = []
    ncols = len(vecs[0]) if vecs else 0
    for col in range(ncols):
        cand = [i for i, v in enumerate(pool) if v[col]]
        if not cand:
            continue
        i = min(cand, key=lambda t: (ctx.valuation(pool[t][col]), t))
        w = pool.pop(i)
        e = ctx.valuation(w[col])
        inv = ctx.inverse(w[col] // ctx.p**e)
        rest = []
        for v in pool:
            if v[col]:
                v = vec_sub(ctx, v, vec_scale(ctx, w, (v[col] // ctx.p**e) * inv))
            if any(v):
                rest.append(v)
        closure = vec_scale(ctx, w, ctx.p ** (ctx.r - e))
        if any(closure):
            rest.append(closure)
        pool = rest
        out.append((w, col, e))
    return out


def _in_howell_span(ctx: RingContext, v, howell) -> bool:
    for w, col, e in howell:
        x = v[col]
        if x:
            if ctx.valuation(x) < e:
                return False
            v = vec_sub(ctx, v, vec_scale(ctx, w, (x // ctx.p**e) * ctx.inverse(w[col] // ctx.p**e)))
    return not any(v)


def _raw_basis(ctx: RingContext, rows) -> list:
    """Reduced p-basis rows of span(rows), grouped by (degree, pivot column).

    The elements of degree <= D (D the largest generator degree) are handled
    as constant vectors with the degree-D block first.  The Howell form of the
    z-shift-closed slice gives, for every degree d and column c, the least
    valuation e(d, c) of a leading coefficient pivoting at c.  Each drop
    e(d-1, c) - e(d, c) = m contributes the chain h, p h, ..., p^(m-1) h of
    degree-d rows, h being the Howell row pivoting at (d, c).
    """
    rows = [v for v in rows if not v.is_zero()]
    if not rows:
        return []
    n = rows[0].n
    top = max(int(v.degree) for v in rows)

    def flat(v):
        return tuple(v.coeff(d)[c] for d in range(top, -1, -1) for c in range(n))

    def unflat(x):
        return PolyVec.from_coeffs(ctx, [x[(top - d) * n:(top - d + 1) * n] for d in range(top + 1)])

    gens = [flat(v.shift(s)) for v in rows for s in range(top - int(v.degree) + 1)]
    for _ in range(_MAX_ROUNDS):
        howell = _howell(ctx, gens)
        shifted = [w[n:] + (0,) * n for w, col, _ in howell if col >= n]
        missing = [w for w in shifted if not _in_howell_span(ctx, w, howell)]
        if not missing:
            break
        gens = [w for w, _, _ in howell] + missing
    else:
        raise RuntimeError("shift closure did not stabilise")

    lead = {}
    for w, col, e in howell:
        lead[(top - col // n, col % n)] = (w, e)
    out = []
    for d in range(top, -1, -1):
        for c in range(n):
            if (d, c) not in lead:
                continue
            w, e = lead[(d, c)]
            below = lead[(d - 1, c)][1] if (d - 1, c) in lead else ctx.r
            assert below >= e
            h = unflat(w)
            for _ in range(below - e):
                out.append(h)
                h = h.scale(ctx.p)
    return out


def _order_as_generator_sequence(rows) -> list:
    """Order rows so that each p v_i is a digit combination of later rows.

    Kahn ordering on the "p v_i uses v_j" relation.  Among free rows the
    larger degree goes first, then the lower leading-coefficient valuation,
    then the construction order, so degrees come out nonincreasing.
    """
    if not rows:
        return []
    ctx = rows[0].ctx
    m = len(rows)
    uses = []
    for i, v in enumerate(rows):
        pv = v.scale(ctx.p)
        if pv.is_zero():
            uses.append(set())
            continue
        others = [rows[j] for j in range(m) if j != i]
        idx = [j for j in range(m) if j != i]
        digits, rem = _divide(pv, others)
        if not rem.is_zero():
            raise RuntimeError("p-multiple of a basis row left a remainder")
        uses.append({idx[t] for t, a in enumerate(digits) if a})
    # row j must come after every row i that uses it
    blockers = [sum(1 for i in range(m) if j in uses[i]) for j in range(m)]
    done, order = set(), []
    while len(order) < m:
        avail = [t for t in range(m) if t not in done and blockers[t] == 0]
        if not avail:
            raise RuntimeError("no p-generator ordering exists")
        j = min(avail, key=lambda t: (-rows[t].degree, vec_valuation(ctx, rows[t].leading_coeff_vec()), t))
        done.add(j)
        order.append(rows[j])
        for t in uses[j]:
            blockers[t] -= 1
    return order


def _basis_of_span(ctx: RingContext, rows) -> list:
    return _order_as_generator_sequence(_raw_basis(ctx, rows))


# -- public operations ------------------------------------------------------

def is_p_generator_sequence(S) -> bool:
    """p v_m = 0 and p v_i is a p-linear combination of v_{i+1}, ..., v_m."""
    if isinstance(S, (list, tuple)) and not S:
        return True
    ctx, _, rows = _rows_of(S)
    if not rows:
        return True
    if not rows[-1].scale(ctx.p).is_zero():
        return False
    tail = _basis_of_span(ctx, [rows[-1]])
    for i in range(len(rows) - 2, -1, -1):
        pv = rows[i].scale(ctx.p)
        if not pv.is_zero():
            _, rem = _divide(pv, tail)
            if not rem.is_zero():
                return False
        tail = _basis_of_span(ctx, tail + [rows[i]])
    return True


def reduced_p_basis(S) -> PSequence:
    """Reduced p-basis of the p-span of a p-generator sequence.

    Rows come out in nonincreasing degree order; the row count is the
    p-dimension of the module.
    """
    ctx, n, rows = _rows_of(S)
    checked = S.is_p_generator_sequence if isinstance(S, PSequence) else None
    if checked is None:
        checked = is_p_generator_sequence(rows)
    if not checked:
        raise NotAPGeneratorSequence("input rows are not a p-generator sequence")
    basis = _basis_of_span(ctx, rows)
    return PSequence(ctx, n, tuple(basis), True, True, True)


def p_dimension(M) -> int:
    """Number of rows in a p-basis of the module spanned by M's rows."""
    ctx, _, rows = _rows_of(M)
    return len(_basis_of_span(ctx, rows))


def reduce_against(w: PolyVec, B) -> tuple:
    """Divide w by a reduced p-basis B.

    Returns (digits, remainder) with w = sum digits[j](z) B_j + remainder and
    every digits[j] in A_p[z].  The remainder is zero exactly when w lies in
    the module, and then the digits are its unique representation.
    """
    if isinstance(B, PSequence):
        if B.is_reduced is False:
            raise NotReduced("B is not a reduced p-basis")
        if B.is_reduced is None and not is_reduced_p_basis(B):
            raise NotReduced("B is not a reduced p-basis")
        rows = list(B.rows)
    else:
        rows = list(B)
        if not is_reduced_p_basis(rows):
            raise NotReduced("B is not a reduced p-basis")
    return _divide(w, rows)


def is_reduced_p_basis(rows) -> bool:
    ctx, _, rows = _rows_of(rows)
    if any(v.is_zero() for v in rows):
        return False
    if digit_dependency(ctx, [v.leading_coeff_vec() for v in rows]) is not None:
        return False
    return is_p_generator_sequence(rows)


def zero_combination(rows: Sequence[PolyVec], max_states: int = 1 << 20):
    """Search for a nontrivial digit-polynomial combination equal to zero.

    Rows are driven as a shift register fed with digit vectors.  A finite
    digit input with identically zero output is a path that leaves the zero
    state on a nonzero input and comes back to it with all outputs zero.
    Returns the list of input digit vectors of such a path, or None.
    """
    rows = list(rows)
    if not rows:
        return None
    ctx = rows[0].ctx
    n = rows[0].n
    deltas = [max(0, int(v.degree)) if not v.is_zero() else 0 for v in rows]
    coeffs = [[v.coeff(l) for l in range(d + 1)] for v, d in zip(rows, deltas)]
    if ctx.p ** sum(deltas) > max_states:
        raise ValueError("state space too large for exhaustive search")
    zero_state = tuple(tuple([0] * d) for d in deltas)
    inputs = list(product(ctx.digits, repeat=len(rows)))

    def step(state, u):
        out = [0] * n
        for i, ui in enumerate(u):
            regs = (ui,) + state[i]
            for l, x in enumerate(regs):
                if x:
                    c = coeffs[i][l]
                    for j in range(n):
                        out[j] += x * c[j]
        nxt = tuple(((u[i],) + state[i])[:deltas[i]] for i in range(len(rows)))
        return any(o % ctx.modulus for o in out), nxt

    starts = []
    for u in inputs:
        if any(u):
            nonzero_out, nxt = step(zero_state, u)
            if not nonzero_out:
                if nxt == zero_state:
                    return [u]
                starts.append((nxt, u))
    for s0, u0 in starts:
        prev = {s0: None}
        queue = deque([s0])
        while queue:
            s = queue.popleft()
            for u in inputs:
                nonzero_out, t = step(s, u)
                if nonzero_out or t in prev:
                    continue
                prev[t] = (s, u)
                if t == zero_state:
                    path = []
                    cur = t
                    while prev[cur] is not None:
                        cur, uu = prev[cur]
                        path.append(uu)
                    return [u0] + path[::-1]
                queue.append(t)
    return None


def p_independent(rows) -> bool:
    """True iff the only p-linear combination of the rows equal to zero is trivial.

    For a p-generator sequence this compares the row count with the
    p-dimension of its span (all p-bases have the same size); other inputs
    fall back to the exhaustive zero-combination search.
    """
    ctx, _, rows = _rows_of(rows)
    if any(v.is_zero() for v in rows):
        return False
    if is_p_generator_sequence(rows):
        return len(rows) == len(_basis_of_span(ctx, rows))
    return zero_combination(rows) is None


def module_contains(basis: Sequence[PolyVec], w: PolyVec) -> bool:
    _, rem = _divide(w, list(basis))
    return rem.is_zero()


def same_module(rows_a, rows_b) -> bool:
    """Module equality by mutual reduction against reduced p-bases."""
    ctx, _, a = _rows_of(rows_a)
    _, _, b = _rows_of(rows_b)
    ba, bb = _basis_of_span(ctx, a), _basis_of_span(ctx, b)
    return all(module_contains(bb, v) for v in a) and all(module_contains(ba, v) for v in b)


def span_basis(rows) -> PSequence:
    """Reduced p-basis of the module spanned by arbitrary generator rows."""
    ctx, n, rows = _rows_of(rows)
    return PSequence(ctx, n, tuple(_basis_of_span(ctx, rows)), True, True, True)
