"""Polynomials, polynomial row vectors and polynomial matrices over Z_{p^r}[z].

A polynomial is a tuple of coefficients, constant term first, with no
trailing zeros; the zero polynomial is ``()``.  Degrees of zero objects are
``MINUS_INFINITY`` (a float) so that constant rows keep degree 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .ring import ConstVec, RingContext

MINUS_INFINITY = float("-inf")

Poly = tuple  # tuple[int, ...]


def normalize(ctx: RingContext, coeffs: Iterable[int]) -> Poly:
    c = [int(x) % ctx.modulus for x in coeffs]
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def poly_degree(a: Poly):
    return len(a) - 1 if a else MINUS_INFINITY


def poly_add(ctx: RingContext, a: Poly, b: Poly) -> Poly:
    if len(a) < len(b):
        a, b = b, a
    return normalize(ctx, [x + (b[i] if i < len(b) else 0) for i, x in enumerate(a)])


def poly_mul(ctx: RingContext, a: Poly, b: Poly) -> Poly:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return normalize(ctx, out)


def poly_coeff(a: Poly, k: int) -> int:
    return a[k] if 0 <= k < len(a) else 0


def poly_str(a: Poly, var: str = "z") -> str:
    if not a:
        return "0"
    terms = []
    for k, c in enumerate(a):
        if not c:
            continue
        if k == 0:
            terms.append(str(c))
        else:
            mono = var if k == 1 else f"{var}^{k}"
            terms.append(mono if c == 1 else f"{c}{mono}")
    return " + ".join(terms)


@dataclass(frozen=True)
class PolyVec:
    ctx: RingContext
    entries: tuple  # tuple[Poly, ...]

    @classmethod
    def from_lists(cls, ctx: RingContext, entries) -> "PolyVec":
        return cls(ctx, tuple(normalize(ctx, e) for e in entries))

    @classmethod
    def from_coeffs(cls, ctx: RingContext, coeffs: Sequence[ConstVec]) -> "PolyVec":
        """Build v(z) = sum_k coeffs[k] z^k from constant coefficient vectors."""
        n = len(coeffs[0])
        return cls(ctx, tuple(normalize(ctx, [c[j] for c in coeffs]) for j in range(n)))

    @classmethod
    def zero(cls, ctx: RingContext, n: int) -> "PolyVec":
        return cls(ctx, ((),) * n)

    @property
    def n(self) -> int:
        return len(self.entries)

    @property
    def degree(self):
        return max((poly_degree(e) for e in self.entries), default=MINUS_INFINITY)

    def is_zero(self) -> bool:
        return not any(self.entries)

    def coeff(self, k: int) -> ConstVec:
        return tuple(poly_coeff(e, k) for e in self.entries)

    def coeffs(self) -> list:
        """Coefficient vectors v_0, ..., v_d (empty for the zero vector)."""
        if self.is_zero():
            return []
        return [self.coeff(k) for k in range(int(self.degree) + 1)]

    def leading_coeff_vec(self) -> ConstVec:
        if self.is_zero():
            raise ValueError("the zero vector has no leading coefficient vector")
        return self.coeff(int(self.degree))

    def at_zero(self) -> ConstVec:
        return self.coeff(0)

    def _check(self, other: "PolyVec"):
        if self.ctx != other.ctx:
            raise ValueError("ring context mismatch")
        if self.n != other.n:
            raise ValueError(f"length mismatch: {self.n} vs {other.n}")

    def __add__(self, other: "PolyVec") -> "PolyVec":
        self._check(other)
        return PolyVec(self.ctx, tuple(poly_add(self.ctx, a, b) for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: "PolyVec") -> "PolyVec":
        return self + other.scale(-1)

    def scale(self, a: int) -> "PolyVec":
        return PolyVec(self.ctx, tuple(normalize(self.ctx, [a * x for x in e]) for e in self.entries))

    def shift(self, ell: int) -> "PolyVec":
        """Multiply by z^ell (ell >= 0)."""
        if ell < 0:
            raise ValueError("negative shift")
        return PolyVec(self.ctx, tuple(((0,) * ell + e) if e else () for e in self.entries))

    def poly_mul(self, a) -> "PolyVec":
        a = normalize(self.ctx, a)
        return PolyVec(self.ctx, tuple(poly_mul(self.ctx, a, e) for e in self.entries))

    def digit_poly_mul(self, a) -> "PolyVec":
        """Multiply by a(z) whose coefficients must be digits in A_p."""
        if any(not self.ctx.is_digit(x) for x in a):
            raise ValueError(f"coefficients of {a!r} are not all digits")
        return self.poly_mul(a)

    def z_factor(self):
        """Write v = z^ell * w with w(0) != 0; returns (ell, w)."""
        if self.is_zero():
            raise ValueError("cannot factor the zero vector")
        ell = 0
        while not any(self.coeff(ell)):
            ell += 1
        return ell, PolyVec(self.ctx, tuple(normalize(self.ctx, e[ell:]) for e in self.entries))

    def to_lists(self) -> list:
        return [list(e) for e in self.entries]

    def __str__(self) -> str:
        return "[" + ", ".join(poly_str(e) for e in self.entries) + "]"


def add(v: PolyVec, w: PolyVec) -> PolyVec:
    return v + w


def scale(v: PolyVec, a: int) -> PolyVec:
    return v.scale(a)


def shift_mul(v: PolyVec, ell: int) -> PolyVec:
    return v.shift(ell)


def digit_poly_mul(v: PolyVec, a) -> PolyVec:
    return v.digit_poly_mul(a)


def degree(v: PolyVec):
    return v.degree


def leading_coeff_vec(v: PolyVec) -> ConstVec:
    return v.leading_coeff_vec()


@dataclass(frozen=True)
class PolyMatrix:
    ctx: RingContext
    n: int
    rows: tuple  # tuple[PolyVec, ...]

    def __post_init__(self):
        for row in self.rows:
            if row.ctx != self.ctx or row.n != self.n:
                raise ValueError("all rows must share the ring context and length n")

    @classmethod
    def from_lists(cls, ctx: RingContext, rows, n: int = None) -> "PolyMatrix":
        vecs = tuple(PolyVec.from_lists(ctx, row) for row in rows)
        if n is None:
            if not vecs:
                raise ValueError("cannot infer n from an empty matrix")
            n = vecs[0].n
        return cls(ctx, n, vecs)

    @classmethod
    def from_rows(cls, rows: Sequence[PolyVec], ctx: RingContext = None, n: int = None) -> "PolyMatrix":
        rows = tuple(rows)
        ctx = ctx or rows[0].ctx
        n = rows[0].n if n is None else n
        return cls(ctx, n, rows)

    @property
    def k(self) -> int:
        return len(self.rows)

    def row_degrees(self) -> list:
        return [row.degree for row in self.rows]

    def is_zero(self) -> bool:
        return all(row.is_zero() for row in self.rows)

    def at_zero(self) -> list:
        return [row.at_zero() for row in self.rows]

    def leading_row_coeff_matrix(self) -> list:
        return [row.leading_coeff_vec() if not row.is_zero() else (0,) * self.n for row in self.rows]

    def coefficient_matrices(self) -> list:
        """[E_0, E_1, ...] with E(z) = sum_l E_l z^l; each E_l a list of rows."""
        d = max((int(x) for x in self.row_degrees() if x != MINUS_INFINITY), default=-1)
        return [[row.coeff(k) for row in self.rows] for k in range(d + 1)]

    def to_lists(self) -> list:
        return [row.to_lists() for row in self.rows]

    def __str__(self) -> str:
        return "\n".join(str(row) for row in self.rows)


def leading_row_coeff_matrix(M: PolyMatrix) -> list:
    return M.leading_row_coeff_matrix()
