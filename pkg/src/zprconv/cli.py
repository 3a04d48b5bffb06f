"""Command line: zprconv {analyze,synthesize,trellis,encode,decode,selftest}.

Exit codes: 0 success, 1 failed selftest, 2 unreadable or malformed input,
3 semantic error (for example a file whose rows are not a p-encoder).
"""

from __future__ import annotations

import argparse
import json
import sys

from .codec import DigitStream, CodewordStream, encode, viterbi_decode
from .fileio import ParseError, format_frames, load_encoder, parse_frames, save_encoder
from .pmodule import is_p_generator_sequence, p_dimension, p_independent
from .poly import PolyMatrix, poly_str
from .synthesis import (
    NotAPEncoder,
    ZeroCodeError,
    as_p_encoder,
    minimal_p_encoder,
    with_catastrophicity,
)
from .trellis import build_trellis, minimize_oracle, realize, to_dot, verify_minimal, zero_output_cycle_search

EXIT_OK, EXIT_PARSE, EXIT_SEMANTIC = 0, 2, 3


class SemanticError(Exception):
    pass


def _emit(report: dict, fmt: str, out=None):
    out = out or sys.stdout
    if fmt == "json":
        json.dump(report, out, indent=2)
        out.write("\n")
        return
    for key, value in report.items():
        if isinstance(value, bool):
            value = "yes" if value else "no"
        elif value is None:
            value = "n/a"
        out.write(f"{key.replace('_', ' ')}: {value}\n")


def _encoder_report(E) -> dict:
    E = with_catastrophicity(E) if E.noncatastrophic is None else E
    report = {
        "kappa": E.kappa,
        "p_indices": E.p_indices,
        "p_degree": E.p_degree,
        "states": E.states,
        "reduced": E.reduced,
        "delay_free": E.delay_free,
        "noncatastrophic": E.noncatastrophic,
    }
    report.update({k: v for k, v in verify_minimal(E).items() if k != "states"})
    return report


def _require_encoder(M: PolyMatrix):
    try:
        return as_p_encoder(M)
    except NotAPEncoder as exc:
        raise SemanticError(f"not a p-encoder: {exc}") from None


def cmd_analyze(args) -> dict:
    M = load_encoder(args.file)
    rows = [v for v in M.rows if not v.is_zero()]
    gen = bool(rows) and len(rows) == M.k and is_p_generator_sequence(rows)
    basis = gen and p_independent(rows)
    report = {
        "p_generator_sequence": gen,
        "p_basis": basis,
        "p_dimension": p_dimension(rows) if rows else 0,
    }
    if basis:
        report.update(_encoder_report(as_p_encoder(M)))
    else:
        report["reduced"] = False
    return report


def cmd_synthesize(args) -> dict:
    M = load_encoder(args.file)
    try:
        E = minimal_p_encoder(M)
    except ZeroCodeError as exc:
        raise SemanticError(str(exc)) from None
    if args.output:
        save_encoder(E.matrix, args.output)
    report = {"encoder": E.matrix.to_lists()}
    report.update(_encoder_report(E))
    report["trace"] = [f"{stage}={total}" for stage, total in E.trace]
    if args.format == "text":
        report["encoder"] = "; ".join("[" + ", ".join(poly_str(e) for e in row.entries) + "]" for row in E.rows)
    return report


def cmd_trellis(args) -> dict:
    E = _require_encoder(load_encoder(args.file))
    T = build_trellis(realize(E))
    if not T.dense and not args.lazy:
        raise SemanticError(f"{T.num_states * T.num_inputs} branches exceed the materialization bound; pass --lazy")
    report = {"states": T.num_states, "branches_per_state": T.num_inputs}
    if args.dot:
        with open(args.dot, "w") as fh:
            fh.write(to_dot(T))
        report["dot"] = args.dot
    if args.verify:
        oracle = minimize_oracle(T)
        report["oracle_blocks"] = oracle.num_blocks
        report["reachable"] = len(oracle.reachable)
        report["minimal"] = oracle.num_blocks == T.num_states == len(oracle.reachable)
        cycle = zero_output_cycle_search(T)
        report["noncatastrophic"] = cycle is None
        if cycle:
            report["witness_cycle"] = [f"{s} -{list(u)}-> {t}" for s, u, t in cycle]
    return report


def _read_frames(path):
    if path in (None, "-"):
        return parse_frames(sys.stdin.read())
    with open(path) as fh:
        return parse_frames(fh.read())


def _write_frames(path, symbols):
    text = format_frames(symbols)
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def cmd_encode(args):
    E = _require_encoder(load_encoder(args.file))
    frames = _read_frames(args.input)
    try:
        c = encode(E, DigitStream(tuple(frames)))
    except ValueError as exc:
        raise SemanticError(str(exc)) from None
    _write_frames(args.output, c.symbols)
    return None


def cmd_decode(args):
    E = _require_encoder(load_encoder(args.file))
    frames = _read_frames(args.input)
    if any(len(f) != E.n for f in frames):
        raise SemanticError(f"every received symbol needs {E.n} entries")
    frames = [tuple(x % E.ctx.modulus for x in f) for f in frames]
    try:
        u = viterbi_decode(build_trellis(realize(E)), CodewordStream(tuple(frames)))
    except ValueError as exc:
        raise SemanticError(str(exc)) from None
    _write_frames(args.output, u.symbols)
    return None


def cmd_selftest(args) -> dict:
    from .selftest import run

    results = run(seed=args.seed, trials=args.trials)
    report = {name: ok for name, ok in results}
    report["all_passed"] = all(ok for _, ok in results)
    return report


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--seed", type=int, default=0)

    parser = argparse.ArgumentParser(prog="zprconv", description="Convolutional codes over Z_{p^r}.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", parents=[common], help="structural report of an encoder file")
    p.add_argument("file")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("synthesize", parents=[common], help="minimal p-encoder of the code of G")
    p.add_argument("file")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_synthesize)

    p = sub.add_parser("trellis", parents=[common], help="controller canonical trellis")
    p.add_argument("file")
    p.add_argument("--dot")
    p.add_argument("--verify", action="store_true")
    p.add_argument("--lazy", action="store_true")
    p.set_defaults(func=cmd_trellis)

    for name, func, help_ in (("encode", cmd_encode, "encode digit frames"), ("decode", cmd_decode, "Viterbi-decode frames")):
        p = sub.add_parser(name, parents=[common], help=help_)
        p.add_argument("file")
        p.add_argument("-i", "--input", help="frame file (default stdin)")
        p.add_argument("-o", "--output", help="frame file (default stdout)")
        p.set_defaults(func=func)

    p = sub.add_parser("selftest", parents=[common], help="built-in examples and random pipeline checks")
    p.add_argument("--trials", type=int, default=50)
    p.set_defaults(func=cmd_selftest)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        report = args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except OSError as exc:
        print(f"cannot read input: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except SemanticError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SEMANTIC
    if report is not None:
        _emit(report, args.format)
    if args.command == "selftest" and not report["all_passed"]:
        return 1
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
