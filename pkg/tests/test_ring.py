import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from zprconv.ring import (
    RingContext,
    brute_force_p_independent,
    const_p_dimension,
    const_p_independent,
    digit_dependency,
    digit_solve,
    in_const_span,
    is_const_p_generator_sequence,
    p_adic_compose,
    p_adic_expand,
    p_echelonize,
    rank_mod_p,
)

Z4 = RingContext(2, 2)


def test_context_validation():
    with pytest.raises(ValueError):
        RingContext(4, 1)
    with pytest.raises(ValueError):
        RingContext(2, 0)
    with pytest.raises(ValueError):
        RingContext(2, 40)
    assert RingContext(3, 2).modulus == 9


def test_valuation():
    assert Z4.valuation(0) == 2
    assert Z4.valuation(2) == 1
    assert Z4.valuation(3) == 0
    assert RingContext(3, 3).valuation(18) == 2


def test_p_adic_examples():
    assert p_adic_expand(Z4, 3) == (1, 1)
    assert p_adic_expand(RingContext(2, 3), 6) == (0, 1, 1)
    assert p_adic_expand(RingContext(3, 2), 0) == (0, 0)


@pytest.mark.parametrize("p,r", [(2, 1), (2, 4), (3, 3), (5, 2), (7, 2), (97, 2)])
def test_p_adic_roundtrip_exhaustive(p, r):
    ctx = RingContext(p, r)
    for a in range(ctx.modulus):
        digits = p_adic_expand(ctx, a)
        assert all(0 <= d < p for d in digits)
        assert p_adic_compose(ctx, digits) == a


def test_echelon_examples():
    assert p_echelonize(Z4, [(1,)])[1] == [(0, 0)]
    assert const_p_dimension(Z4, [(1,)]) == 2
    assert p_echelonize(Z4, [(2, 2)])[1] == [(0, 1)]
    assert const_p_dimension(Z4, [(2, 2)]) == 1
    lrc = [(1, 0, 0), (2, 0, 0), (2, 0, 0), (0, 0, 2)]
    assert const_p_dimension(Z4, lrc) == 3
    assert not brute_force_p_independent(Z4, lrc)


def test_independence_examples():
    assert const_p_independent(Z4, [(1,), (2,)])
    assert not const_p_independent(Z4, [(2,), (2,)])
    assert const_p_independent(Z4, [(1, 0, 0), (0, 2, 1), (2, 0, 0), (0, 0, 2)])


def _all_vectors(ctx, n):
    return list(itertools.product(range(ctx.modulus), repeat=n))


def test_dimension_matches_span_size():
    rng = random.Random(3)
    for _ in range(60):
        ctx = RingContext(rng.choice([2, 3]), rng.choice([1, 2]))
        n = rng.randint(1, 2)
        vs = [tuple(rng.randrange(ctx.modulus) for _ in range(n)) for _ in range(rng.randint(0, 3))]
        ech, piv = p_echelonize(ctx, vs)
        span = {v for v in _all_vectors(ctx, n) if in_const_span(ctx, v, ech, piv)}
        # brute-force span: all ring combinations
        brute = {tuple([0] * n)}
        for coeffs in itertools.product(range(ctx.modulus), repeat=len(vs)):
            brute.add(tuple(sum(a * v[j] for a, v in zip(coeffs, vs)) % ctx.modulus for j in range(n)))
        assert span == brute
        assert ctx.p ** const_p_dimension(ctx, vs) == len(brute)


def test_echelon_closure_is_generator_sequence():
    rng = random.Random(5)
    for _ in range(100):
        ctx = RingContext(rng.choice([2, 3]), rng.choice([2, 3]))
        vs = [tuple(rng.randrange(ctx.modulus) for _ in range(3)) for _ in range(rng.randint(1, 4))]
        ech, piv = p_echelonize(ctx, vs)
        seq = []
        for w, (_, e) in zip(ech, piv):
            for j in range(ctx.r - e):
                seq.append(tuple((ctx.p**j * x) % ctx.modulus for x in w))
        assert is_const_p_generator_sequence(ctx, seq)
        assert len(seq) == const_p_dimension(ctx, vs)
        if ctx.p ** len(seq) <= 10**5:
            assert brute_force_p_independent(ctx, seq)


def test_independence_agrees_with_enumeration():
    rng = random.Random(11)
    for _ in range(200):
        m = rng.randint(1, 12)
        n = rng.randint(1, 3)
        vs = [tuple(rng.choice([0, 0, 1, 2, 3]) for _ in range(n)) for _ in range(m)]
        assert const_p_independent(Z4, vs) == brute_force_p_independent(Z4, vs)


def test_dimension_invariant_under_recombination():
    rng = random.Random(17)
    for _ in range(100):
        ctx = RingContext(rng.choice([2, 3, 5]), rng.choice([1, 2]))
        vs = [tuple(rng.randrange(ctx.modulus) for _ in range(3)) for _ in range(3)]
        # invertible recombination: add multiples of other vectors, scale by units, permute
        ws = list(vs)
        for _ in range(5):
            i, j = rng.sample(range(3), 2)
            c = rng.randrange(ctx.modulus)
            ws[i] = tuple((x + c * y) % ctx.modulus for x, y in zip(ws[i], ws[j]))
        unit = rng.choice([u for u in range(1, ctx.modulus) if u % ctx.p])
        ws[0] = tuple((unit * x) % ctx.modulus for x in ws[0])
        rng.shuffle(ws)
        assert const_p_dimension(ctx, ws) == const_p_dimension(ctx, vs)


def test_digit_solve_is_lexicographically_smallest():
    vs = [(1,), (1,), (2,)]
    assert digit_solve(Z4, (2,), vs) == (0, 0, 1)
    assert digit_solve(Z4, (3,), vs) == (0, 1, 1)
    assert digit_solve(Z4, (1,), [(2,)]) is None
    assert digit_dependency(Z4, vs) is not None


@settings(max_examples=100, deadline=None)
@given(st.lists(st.tuples(st.integers(0, 8), st.integers(0, 8)), min_size=1, max_size=5), st.data())
def test_digit_solve_finds_combination(vs, data):
    ctx = RingContext(3, 2)
    coeffs = data.draw(st.lists(st.integers(0, 2), min_size=len(vs), max_size=len(vs)))
    target = tuple(sum(a * v[j] for a, v in zip(coeffs, vs)) % 9 for j in range(2))
    sol = digit_solve(ctx, target, vs)
    assert sol is not None
    assert sol <= tuple(coeffs)
    assert tuple(sum(a * v[j] for a, v in zip(sol, vs)) % 9 for j in range(2)) == target


def test_rank_mod_p():
    assert rank_mod_p(Z4, [(2, 0), (0, 2)]) == 0
    assert rank_mod_p(Z4, [(1, 1), (3, 1)]) == 1
    assert rank_mod_p(RingContext(3, 1), [(1, 0, 2), (0, 1, 1)]) == 2
