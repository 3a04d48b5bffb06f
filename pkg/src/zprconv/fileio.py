"""Encoder files (JSON) and frame files (one symbol tuple per line)."""

from __future__ import annotations

import json
import re

from .poly import PolyMatrix, PolyVec
from .ring import RingContext


class ParseError(ValueError):
    def __init__(self, msg: str, line: int = 1, column: int = 1):
        super().__init__(f"line {line}, column {column}: {msg}")
        self.line = line
        self.column = column


def _int(x, what):
    if isinstance(x, bool) or not isinstance(x, int):
        raise ParseError(f"{what} must be an integer, got {x!r}")
    return x


def parse_encoder(text: str) -> PolyMatrix:
    """Parse {"p", "r", "n", "rows"}; coefficients are reduced mod p^r."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno) from None
    if not isinstance(data, dict):
        raise ParseError("top level must be an object")
    for key in ("p", "r", "n", "rows"):
        if key not in data:
            raise ParseError(f"missing key {key!r}")
    p, r, n = _int(data["p"], "p"), _int(data["r"], "r"), _int(data["n"], "n")
    try:
        ctx = RingContext(p, r)
    except ValueError as exc:
        raise ParseError(str(exc)) from None
    if n < 1:
        raise ParseError("n must be at least 1")
    rows = data["rows"]
    if not isinstance(rows, list) or not rows:
        raise ParseError("rows must be a non-empty list")
    out = []
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != n:
            raise ParseError(f"row {i} must be a list of {n} polynomials")
        entries = []
        for j, poly in enumerate(row):
            if not isinstance(poly, list):
                raise ParseError(f"row {i}, entry {j} must be a coefficient list")
            entries.append([_int(c, f"coefficient in row {i}, entry {j}") for c in poly])
        out.append(PolyVec.from_lists(ctx, entries))
    return PolyMatrix(ctx, n, tuple(out))


def dump_encoder(M: PolyMatrix) -> str:
    data = {"p": M.ctx.p, "r": M.ctx.r, "n": M.n, "rows": M.to_lists()}
    return json.dumps(data) + "\n"


def load_encoder(path: str) -> PolyMatrix:
    with open(path) as fh:
        return parse_encoder(fh.read())


def save_encoder(M: PolyMatrix, path: str):
    with open(path, "w") as fh:
        fh.write(dump_encoder(M))


_TUPLE = re.compile(r"\s*\(\s*(-?\d+(?:\s*,\s*-?\d+)*)?\s*\)\s*$")
_PLAIN = re.compile(r"\s*(-?\d+(?:\s+-?\d+)*)\s*$")


def parse_frames(text: str) -> list:
    """One time step per line, written "a b ..." or "(a,b,...)".

    Blank lines and '#' comments are skipped.
    """
    out = []
    for lineno, line in enumerate(text.splitlines(), 1):
        body = line.split("#", 1)[0]
        if not body.strip():
            continue
        m = _PLAIN.match(body)
        if m:
            out.append(tuple(int(x) for x in m.group(1).split()))
            continue
        m = _TUPLE.match(body)
        if not m:
            col = len(body) - len(body.lstrip()) + 1
            raise ParseError(f"malformed frame {body.strip()!r}", lineno, col)
        inner = m.group(1)
        out.append(tuple(int(x) for x in inner.split(",")) if inner else ())
    return out


def format_frames(symbols) -> str:
    return "".join(" ".join(str(x) for x in s) + "\n" for s in symbols)
