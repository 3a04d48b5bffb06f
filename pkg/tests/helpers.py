"""Random generators and independent oracles shared by the tests."""

import itertools

from zprconv.poly import PolyMatrix, PolyVec


def random_matrix(rng, ctx, n, k, max_deg):
    rows = [[[rng.randrange(ctx.modulus) for _ in range(rng.randint(0, max_deg + 1))] for _ in range(n)] for _ in range(k)]
    return PolyMatrix.from_lists(ctx, rows, n)


def random_poly(rng, ctx, max_deg, digits=False):
    top = ctx.p if digits else ctx.modulus
    return [rng.randrange(top) for _ in range(rng.randint(0, max_deg + 1))]


def combination(rows, coeffs):
    """sum coeffs[j](z) * rows[j](z)."""
    acc = PolyVec.zero(rows[0].ctx, rows[0].n)
    for v, a in zip(rows, coeffs):
        acc = acc + v.poly_mul(a)
    return acc


# -- field case (r = 1) oracles ---------------------------------------------

def _pmod(a, p):
    a = [x % p for x in a]
    while a and a[-1] == 0:
        a.pop()
    return a


def _psub(a, b, p):
    n = max(len(a), len(b))
    return _pmod([(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)], p)


def _pmul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return _pmod(out, p)


def poly_gcd_field(a, b, p):
    """Monic gcd over GF(p) by Euclid."""
    a, b = _pmod(a, p), _pmod(b, p)
    while b:
        inv = pow(b[-1], -1, p)
        while len(a) >= len(b) and a:
            shift = len(a) - len(b)
            f = (a[-1] * inv) % p
            a = _psub(a, [0] * shift + [f * x for x in b], p)
        a, b = b, a
    if not a:
        return []
    inv = pow(a[-1], -1, p)
    return [(x * inv) % p for x in a]


def minors_gcd_field(rows, p):
    """gcd of all k x k minors of a k x n polynomial matrix (k <= 2)."""
    k, n = len(rows), len(rows[0])
    g = []
    for cols in itertools.combinations(range(n), k):
        if k == 1:
            m = rows[0][cols[0]]
        else:
            (a, b), (c, d) = [[rows[i][j] for j in cols] for i in range(2)]
            m = _psub(_pmul(a, d, p), _pmul(b, c, p), p)
        g = poly_gcd_field(g, m, p)
    return g


def classical_row_reduce(rows, p):
    """Row-reduced form over GF(p): cancel lrc dependencies at the top degree.

    rows are lists of coefficient lists; returns the reduced rows.
    """
    rows = [[_pmod(e, p) for e in row] for row in rows]

    def deg(row):
        return max(len(e) for e in row) - 1

    def lc(row):
        d = deg(row)
        return [e[d] if len(e) > d else 0 for e in row]

    while True:
        k = len(rows)
        lcs = [lc(r) for r in rows]
        dep = None
        for coeffs in itertools.product(range(p), repeat=k):
            if any(coeffs) and all(sum(c * v[j] for c, v in zip(coeffs, lcs)) % p == 0 for j in range(len(lcs[0]))):
                dep = coeffs
                break
        if dep is None:
            return rows
        i = max((j for j in range(k) if dep[j]), key=lambda j: deg(rows[j]))
        inv = pow(dep[i], -1, p)
        new = rows[i]
        for j in range(k):
            if j != i and dep[j]:
                shift = deg(rows[i]) - deg(rows[j])
                f = (dep[j] * inv) % p
                new = [_psub(a, [0] * shift + [f * x for x in b], p) for a, b in zip(new, rows[j])]
        assert deg(new) < deg(rows[i])
        rows[i] = new
