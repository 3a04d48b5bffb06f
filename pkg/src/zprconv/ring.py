"""Arithmetic in Z_{p^r}, p-adic digits and p-linear algebra over constant vectors.

Ring elements are plain ``int`` values kept reduced into ``[0, p**r)``;
constant vectors are tuples of such ints.  Every function takes the
:class:`RingContext` explicitly so that values stay cheap, hashable and
immutable.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Optional, Sequence

ConstVec = tuple  # tuple[int, ...]

MAX_MODULUS = 2**31


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class RingContext:
    """The chain ring Z_{p^r} together with its digit set {0, ..., p-1}."""

    p: int
    r: int
    modulus: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if not isinstance(self.p, int) or not _is_prime(self.p):
            raise ValueError(f"p must be a prime integer, got {self.p!r}")
        if not isinstance(self.r, int) or self.r < 1:
            raise ValueError(f"r must be an integer >= 1, got {self.r!r}")
        modulus = self.p**self.r
        if modulus > MAX_MODULUS:
            raise ValueError(f"p^r = {modulus} exceeds 2^31")
        object.__setattr__(self, "modulus", modulus)

    @property
    def digits(self) -> range:
        return range(self.p)

    def reduce(self, a: int) -> int:
        return a % self.modulus

    def is_digit(self, a: int) -> bool:
        return 0 <= a < self.p

    def valuation(self, a: int) -> int:
        """Largest e with p^e | a; the zero element has valuation r."""
        a %= self.modulus
        if a == 0:
            return self.r
        e = 0
        while a % self.p == 0:
            a //= self.p
            e += 1
        return e

    def inverse(self, a: int) -> int:
        return pow(a % self.modulus, -1, self.modulus)

    def vec(self, entries: Sequence[int]) -> ConstVec:
        return tuple(int(x) % self.modulus for x in entries)


def p_adic_expand(ctx: RingContext, a: int) -> tuple:
    """Digits (theta_0, ..., theta_{r-1}) with a = sum theta_l p^l."""
    a %= ctx.modulus
    out = []
    for _ in range(ctx.r):
        a, d = divmod(a, ctx.p)
        out.append(d)
    return tuple(out)


def p_adic_compose(ctx: RingContext, digits: Sequence[int]) -> int:
    return sum(d * ctx.p**i for i, d in enumerate(digits)) % ctx.modulus


# -- constant vector helpers ------------------------------------------------

def vec_add(ctx: RingContext, v: ConstVec, w: ConstVec) -> ConstVec:
    return tuple((a + b) % ctx.modulus for a, b in zip(v, w))


def vec_sub(ctx: RingContext, v: ConstVec, w: ConstVec) -> ConstVec:
    return tuple((a - b) % ctx.modulus for a, b in zip(v, w))


def vec_scale(ctx: RingContext, v: ConstVec, a: int) -> ConstVec:
    return tuple((a * x) % ctx.modulus for x in v)


def vec_valuation(ctx: RingContext, v: ConstVec) -> int:
    return min((ctx.valuation(x) for x in v), default=ctx.r)


def combine(ctx: RingContext, coeffs: Sequence[int], vs: Sequence[ConstVec], n: int) -> ConstVec:
    acc = [0] * n
    for a, v in zip(coeffs, vs):
        if a:
            for i, x in enumerate(v):
                acc[i] += a * x
    return tuple(x % ctx.modulus for x in acc)


# -- p-echelon form ---------------------------------------------------------

def p_echelonize(ctx: RingContext, vs: Sequence[ConstVec]):
    """Triangular generating family of span(vs).

    Pivots are picked globally: lowest valuation first, then leftmost column,
    then input order.  Each returned vector w has entry p^e * unit in its pivot
    column and every later vector is zero there.  Because the pivot valuation
    is minimal over the whole remaining pool, p^(r-e) w = 0, so listing each w
    as (w, p w, ..., p^(r-1-e) w) gives a p-generator sequence of the span.

    Returns ``(echelon, pivots)`` with ``pivots[i] = (column, valuation)``.
    """
    pool = [tuple(v) for v in vs if any(v)]
    echelon, pivots = [], []
    while pool:
        best = None
        for idx, v in enumerate(pool):
            for col, x in enumerate(v):
                if x:
                    key = (ctx.valuation(x), col, idx)
                    if best is None or key < best:
                        best = key
        e, col, idx = best
        w = pool.pop(idx)
        unit_inv = ctx.inverse(w[col] // ctx.p**e)
        rest = []
        for v in pool:
            if v[col]:
                c = (v[col] // ctx.p**e) * unit_inv
                v = vec_sub(ctx, v, vec_scale(ctx, w, c))
            if any(v):
                rest.append(v)
        pool = rest
        echelon.append(w)
        pivots.append((col, e))
    return echelon, pivots


def const_p_dimension(ctx: RingContext, vs: Sequence[ConstVec]) -> int:
    _, pivots = p_echelonize(ctx, vs)
    return sum(ctx.r - e for _, e in pivots)


def in_const_span(ctx: RingContext, v: ConstVec, echelon, pivots) -> bool:
    """Membership of v in the span of an echelon family from p_echelonize."""
    for w, (col, e) in zip(echelon, pivots):
        x = v[col]
        if x == 0:
            continue
        if ctx.valuation(x) < e:
            return False
        c = (x // ctx.p**e) * ctx.inverse(w[col] // ctx.p**e)
        v = vec_sub(ctx, v, vec_scale(ctx, w, c))
    return not any(v)


def is_const_p_generator_sequence(ctx: RingContext, vs: Sequence[ConstVec]) -> bool:
    """p v_m = 0 and p v_i in the span of v_{i+1}, ..., v_m for every i.

    The tail is checked first, so whenever the tail passes its span and
    p-span agree and span membership decides p-span membership.
    """
    vs = [tuple(v) for v in vs]
    if not vs:
        return True
    if any(vec_scale(ctx, vs[-1], ctx.p)):
        return False
    for i in range(len(vs) - 2, -1, -1):
        ech, piv = p_echelonize(ctx, vs[i + 1:])
        if not in_const_span(ctx, vec_scale(ctx, vs[i], ctx.p), ech, piv):
            return False
    return True


# -- digit combinations -----------------------------------------------------

def digit_solve(ctx: RingContext, target: ConstVec, vs: Sequence[ConstVec]) -> Optional[tuple]:
    """Lexicographically smallest digits a_j in A_p with sum a_j v_j = target, or None.

    Backward pass: the sets of sums reachable from the suffixes v_j, ..., v_m
    (never more than min(p^m, p^(r n)) entries each).  Forward pass: pick the
    smallest digit that keeps the remaining target reachable.
    """
    n = len(target)
    target = ctx.vec(target)
    vs = [tuple(v) for v in vs]
    zero = tuple([0] * n)
    suffix = [{zero}]
    for v in reversed(vs):
        prev = suffix[-1]
        suffix.append({tuple((x + a * y) % ctx.modulus for x, y in zip(s, v)) for s in prev for a in ctx.digits})
    suffix.reverse()
    if target not in suffix[0]:
        return None
    out = []
    for j, v in enumerate(vs):
        for a in ctx.digits:
            rest = tuple((x - a * y) % ctx.modulus for x, y in zip(target, v))
            if rest in suffix[j + 1]:
                out.append(a)
                target = rest
                break
    return tuple(out)


def digit_dependency(ctx: RingContext, vs: Sequence[ConstVec]) -> Optional[tuple]:
    """A nonzero digit vector a with sum a_j v_j = 0, or None."""
    if not vs:
        return None
    n = len(vs[0])
    zero = tuple([0] * n)
    reach = {zero: ()}
    for j, v in enumerate(vs):
        nxt = {}
        for s, coeffs in reach.items():
            for a in ctx.digits:
                t = tuple((x + a * y) % ctx.modulus for x, y in zip(s, v))
                c = coeffs + (a,)
                if t == zero and any(c):
                    return c + (0,) * (len(vs) - j - 1)
                if t not in nxt:
                    nxt[t] = c
        reach = nxt
    return None


def const_p_independent(ctx: RingContext, vs: Sequence[ConstVec]) -> bool:
    """True iff the only digit combination of vs equal to zero is trivial.

    For a p-generator sequence this is the count test (p-dimension of the
    span equals the number of vectors); otherwise the reachable-sum search
    decides it exactly.
    """
    vs = [tuple(v) for v in vs]
    if is_const_p_generator_sequence(ctx, vs):
        return const_p_dimension(ctx, vs) == len(vs)
    return digit_dependency(ctx, vs) is None


def brute_force_p_independent(ctx: RingContext, vs: Sequence[ConstVec]) -> bool:
    """Exhaustive check over all p^m digit vectors (desk scale only)."""
    if not vs:
        return True
    n = len(vs[0])
    for coeffs in product(ctx.digits, repeat=len(vs)):
        if any(coeffs) and not any(combine(ctx, coeffs, vs, n)):
            return False
    return True


def rank_mod_p(ctx: RingContext, vs: Sequence[ConstVec]) -> int:
    """Rank over the residue field Z_p of the vectors reduced mod p."""
    p = ctx.p
    rows = [[x % p for x in v] for v in vs]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for col in range(ncols):
        piv = next((i for i in range(rank, len(rows)) if rows[i][col]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = pow(rows[rank][col], -1, p)
        rows[rank] = [(x * inv) % p for x in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][col]:
                f = rows[i][col]
                rows[i] = [(a - f * b) % p for a, b in zip(rows[i], rows[rank])]
        rank += 1
    return rank
