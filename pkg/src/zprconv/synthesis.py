"""From a polynomial encoding matrix to a minimal p-encoder.

The pipeline reduces first (a reduced p-basis of the row module is a
p-encoder of the code) and then removes delay: while the rows of E(0) are
p-linearly dependent, a digit combination of constant terms is cancelled and
the resulting factor z is divided out.  Both steps keep the code.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Optional

from .pmodule import (
    PSequence,
    expand_to_p_generators,
    is_p_generator_sequence,
    p_independent,
    reduced_p_basis,
)
from .poly import PolyMatrix, PolyVec
from .ring import const_p_independent, digit_dependency, digit_solve, rank_mod_p


class ZeroCodeError(ValueError):
    pass


class NotAPEncoder(ValueError):
    pass


class NotCanonical(ValueError):
    pass


@dataclass(frozen=True)
class PEncoder:
    """Rows of a p-encoder plus verified flags.

    ``noncatastrophic`` is None until evaluated.  ``trace`` records
    (stage, sum of row degrees) pairs along the pipeline.
    """

    matrix: PolyMatrix
    reduced: bool
    delay_free: bool
    noncatastrophic: Optional[bool] = None
    trace: tuple = field(default=(), compare=False)

    @property
    def ctx(self):
        return self.matrix.ctx

    @property
    def n(self) -> int:
        return self.matrix.n

    @property
    def kappa(self) -> int:
        return self.matrix.k

    @property
    def rows(self) -> tuple:
        return self.matrix.rows

    @property
    def p_indices(self) -> list:
        return [max(0, int(d)) for d in self.matrix.row_degrees()]

    @property
    def p_degree(self) -> int:
        return sum(self.p_indices)

    @property
    def states(self) -> int:
        return self.ctx.p ** self.p_degree


def _degree_sum(rows) -> int:
    return sum(int(v.degree) for v in rows)


def _lrc_independent(rows) -> bool:
    ctx = rows[0].ctx
    return digit_dependency(ctx, [v.leading_coeff_vec() for v in rows]) is None


def _at_zero_independent(rows) -> bool:
    return const_p_independent(rows[0].ctx, [v.at_zero() for v in rows])


def is_delay_free(E) -> bool:
    """The rows of E(0) are p-linearly independent."""
    rows = list(getattr(E, "rows", E))
    return _at_zero_independent(rows)


def as_p_encoder(M: PolyMatrix) -> PEncoder:
    """Wrap M unchanged after checking that its rows form a p-basis."""
    rows = [v for v in M.rows]
    if not rows or any(v.is_zero() for v in rows):
        raise NotAPEncoder("a p-encoder has no zero rows")
    if not is_p_generator_sequence(rows):
        raise NotAPEncoder("rows are not a p-generator sequence")
    if not p_independent(rows):
        raise NotAPEncoder("rows are not p-linearly independent")
    return PEncoder(M, _lrc_independent(rows), _at_zero_independent(rows), None, (("input", _degree_sum(rows)),))


def p_encoder_from_matrix(G: PolyMatrix) -> PEncoder:
    """Reduced p-basis of the row module of G, as a p-encoder."""
    if G.is_zero():
        raise ZeroCodeError("zero code: every row of G is zero")
    B: PSequence = reduced_p_basis(expand_to_p_generators(G))
    rows = list(B.rows)
    trace = (("input", _degree_sum([v for v in G.rows if not v.is_zero()])), ("reduced", _degree_sum(rows)))
    return PEncoder(B.as_matrix(), True, _at_zero_independent(rows), None, trace)


def _sorted_rows(rows) -> list:
    return sorted(rows, key=lambda v: -v.degree)


def make_delay_free(E: PEncoder) -> PEncoder:
    """Delay-free reduced p-encoder of the same code.

    With rows sorted by nonincreasing degree, L is the smallest index whose
    tail e_L, ..., e_kappa has p-independent constant terms.  If only the
    last row fails, it is a z-multiple and the power of z is divided out.
    Otherwise the lexicographically smallest digits alpha with
    e_L(0) + sum alpha_j e_j(0) = 0 (j > L) give a row with zero constant
    term and the same degree, which is divided by its power of z.
    """
    if not E.reduced:
        raise NotAPEncoder("make_delay_free needs a reduced p-encoder")
    ctx = E.ctx
    rows = _sorted_rows(E.rows)
    trace = list(E.trace)
    total = _degree_sum(rows)
    while True:
        kappa = len(rows)
        L = kappa
        while L > 0 and _at_zero_independent(rows[L - 1:]):
            L -= 1
        if L == 0:
            break
        i = L - 1  # zero-based index of e_L
        if i == kappa - 1:
            _, bar = rows[i].z_factor()
        else:
            tail = [v.at_zero() for v in rows[i + 1:]]
            target = tuple((-x) % ctx.modulus for x in rows[i].at_zero())
            alpha = digit_solve(ctx, target, tail)
            if alpha is None:
                raise RuntimeError("no digit witness for the constant-term dependency")
            tilde = rows[i]
            for a, v in zip(alpha, rows[i + 1:]):
                if a:
                    tilde = tilde + v.scale(a)
            assert tilde.degree == rows[i].degree
            _, bar = tilde.z_factor()
        rows[i] = bar
        rows = _sorted_rows(rows)
        new_total = _degree_sum(rows)
        assert new_total < total, "row degree sum must drop at every delay-removal step"
        total = new_total
        trace.append(("delay-free step", total))
    M = PolyMatrix(ctx, E.n, tuple(rows))
    return PEncoder(M, _lrc_independent(rows), True, None, tuple(trace))


def trivial_p_encoder(G: PolyMatrix) -> PEncoder:
    """stack(G, pG, ..., p^(r-1)G) for a canonical G.

    Canonical here means G^lrc and G(0) have full row rank mod p.
    """
    ctx = G.ctx
    rows = list(G.rows)
    if not rows or any(v.is_zero() for v in rows):
        raise NotCanonical("G has a zero row")
    k = len(rows)
    if rank_mod_p(ctx, [v.leading_coeff_vec() for v in rows]) < k:
        raise NotCanonical("leading row coefficient matrix is rank deficient mod p")
    if rank_mod_p(ctx, [v.at_zero() for v in rows]) < k:
        raise NotCanonical("G(0) is rank deficient mod p")
    stack = [v.scale(ctx.p**j) for j in range(ctx.r) for v in rows]
    M = PolyMatrix(ctx, G.n, tuple(stack))
    return PEncoder(M, _lrc_independent(stack), _at_zero_independent(stack), None, (("stacked", _degree_sum(stack)),))


def is_noncatastrophic(E) -> bool:
    """No zero-output cycle with a nonzero input digit among reachable states."""
    from .trellis import build_trellis, realize, zero_output_cycle_search

    return zero_output_cycle_search(build_trellis(realize(E))) is None


def with_catastrophicity(E: PEncoder) -> PEncoder:
    return replace(E, noncatastrophic=is_noncatastrophic(E))


def minimal_p_encoder(G: PolyMatrix) -> PEncoder:
    """Reduce, then remove delay; the noncatastrophic flag is evaluated last."""
    E = make_delay_free(p_encoder_from_matrix(G))
    assert E.reduced and E.delay_free
    return with_catastrophicity(E)


def rows_to_matrix(ctx, n, rows) -> PolyMatrix:
    return PolyMatrix(ctx, n, tuple(PolyVec.from_lists(ctx, r) for r in rows))
