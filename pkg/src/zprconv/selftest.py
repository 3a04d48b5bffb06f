"""Quick end-to-end checks runnable from the command line."""

from __future__ import annotations

import random

from . import examples as ex
from .codec import DigitStream, encode, viterbi_decode
from .pmodule import expand_to_p_generators
from .poly import PolyMatrix
from .ring import RingContext
from .synthesis import as_p_encoder, minimal_p_encoder
from .trellis import bisimilar, build_trellis, realize, verify_minimal, zero_output_cycle_search


def _random_matrix(rng, ctx, n, k, max_deg):
    rows = [[[rng.randrange(ctx.modulus) for _ in range(rng.randint(0, max_deg + 1))] for _ in range(n)] for _ in range(k)]
    return PolyMatrix.from_lists(ctx, rows, n)


def run(seed: int = 0, trials: int = 50) -> list:
    """List of (check name, passed) pairs."""
    out = []
    E = minimal_p_encoder(ex.G_SMALL)
    out.append(("two_state_example", E.matrix == ex.E_SMALL and verify_minimal(E)["minimal"]))
    E = minimal_p_encoder(ex.G_32)
    rep = verify_minimal(E)
    out.append(("sixteen_state_example", E.matrix == ex.E_32 and rep["oracle_blocks"] == 16 and rep["minimal"]))
    for name, M, states in (("e1_four_states", ex.E_1, 4), ("e2_two_states", ex.E_2, 2)):
        E = as_p_encoder(M)
        T = build_trellis(realize(E))
        ok = E.delay_free and zero_output_cycle_search(T) is None and verify_minimal(E) == {
            "states": states, "oracle_blocks": states, "reachable": states, "minimal": True}
        out.append((name, ok))
    T = build_trellis(realize(as_p_encoder(ex.STACK_2)))
    out.append(("stack_is_catastrophic", zero_output_cycle_search(T) is not None))

    rng = random.Random(seed)
    pipeline_ok = codec_ok = True
    done = 0
    while done < trials:
        ctx = RingContext(rng.choice([2, 3]), 2)
        G = _random_matrix(rng, ctx, rng.randint(1, 3), rng.randint(1, 2), 2)
        if G.is_zero():
            continue
        E = minimal_p_encoder(G)
        if not E.noncatastrophic or E.p_degree > 5:
            continue
        done += 1
        pipeline_ok &= verify_minimal(E)["minimal"]
        T = build_trellis(realize(E))
        u = DigitStream(tuple(tuple(rng.randrange(ctx.p) for _ in range(E.kappa)) for _ in range(6)))
        codec_ok &= viterbi_decode(T, encode(E, u)).symbols == u.symbols
        pipeline_ok &= bisimilar(T, build_trellis(realize(expand_to_p_generators(G).as_matrix())))
    out.append(("random_minimality", pipeline_ok))
    out.append(("random_noiseless_decoding", codec_ok))
    return out
