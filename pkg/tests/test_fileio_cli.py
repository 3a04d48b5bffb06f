import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from zprconv import examples as ex
from zprconv.cli import main
from zprconv.fileio import ParseError, dump_encoder, format_frames, parse_encoder, parse_frames, save_encoder


@st.composite
def encoder_files(draw):
    p = draw(st.sampled_from([2, 3, 5]))
    r = draw(st.integers(1, 3))
    n = draw(st.integers(1, 3))
    k = draw(st.integers(1, 3))
    coeff = st.integers(0, p**r - 1)
    rows = draw(st.lists(st.lists(st.lists(coeff, max_size=4), min_size=n, max_size=n), min_size=k, max_size=k))
    return json.dumps({"p": p, "r": r, "n": n, "rows": rows})


@settings(max_examples=100, deadline=None)
@given(encoder_files())
def test_roundtrip(text):
    M = parse_encoder(text)
    assert parse_encoder(dump_encoder(M)) == M


def test_reduces_on_load():
    M = parse_encoder('{"p": 2, "r": 2, "n": 2, "rows": [[[5, 4], [-1]]]}')
    assert M.to_lists() == [[[1], [3]]]


@pytest.mark.parametrize(
    "text,line",
    [
        ('{"p": 2,\n "r": }', 2),
        ('{"p": 4, "r": 1, "n": 1, "rows": [[[1]]]}', 1),
        ('{"p": 2, "r": 2, "n": 2, "rows": [[[1]]]}', 1),
        ('{"p": 2, "r": 2, "n": 1}', 1),
        ('[1, 2]', 1),
        ('{"p": 2, "r": 2, "n": 1, "rows": [[["a"]]]}', 1),
    ],
)
def test_parse_errors(text, line):
    with pytest.raises(ParseError) as info:
        parse_encoder(text)
    assert info.value.line == line


def test_frames():
    assert parse_frames("2 2\n\n# comment\n( 0 , 1 )\n 1 3  # tail\n") == [(2, 2), (0, 1), (1, 3)]
    assert format_frames([(2, 2), (0, 1)]) == "2 2\n0 1\n"
    assert parse_frames(format_frames([(1, 0, 3)])) == [(1, 0, 3)]
    with pytest.raises(ParseError) as info:
        parse_frames("1 0\n  1,0\n")
    assert (info.value.line, info.value.column) == (2, 3)


@pytest.fixture
def files(tmp_path):
    out = {}
    for name in ("E_SMALL", "G_SMALL", "G_32", "E_32", "E_1", "E_2", "STACK_2"):
        path = tmp_path / f"{name}.json"
        save_encoder(getattr(ex, name), str(path))
        out[name] = str(path)
    return out


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr()


def test_analyze(files, capsys):
    code, out = run(capsys, "analyze", files["E_SMALL"], "--format", "json")
    rep = json.loads(out.out)
    assert code == 0 and rep["delay_free"] and rep["p_degree"] == 1 and rep["states"] == 2 and rep["minimal"]
    code, out = run(capsys, "analyze", files["G_32"], "--format", "json")
    assert code == 0 and json.loads(out.out)["reduced"] is False
    code, out = run(capsys, "analyze", files["E_1"])
    assert "noncatastrophic: yes" in out.out and "states: 4" in out.out


def test_synthesize(files, capsys, tmp_path):
    target = tmp_path / "out.json"
    code, out = run(capsys, "synthesize", files["G_SMALL"], "-o", str(target), "--format", "json")
    assert code == 0 and json.loads(out.out)["encoder"] == ex.E_SMALL.to_lists()
    assert parse_encoder(target.read_text()) == ex.E_SMALL
    code, out = run(capsys, "synthesize", files["G_32"], "--format", "json")
    rep = json.loads(out.out)
    assert rep["encoder"] == ex.E_32.to_lists() and rep["trace"] == ["input=3", "reduced=4"]


def test_trellis_command(files, capsys, tmp_path):
    dot = tmp_path / "t.dot"
    code, out = run(capsys, "trellis", files["E_SMALL"], "--dot", str(dot), "--verify")
    assert code == 0 and "minimal: yes" in out.out
    assert dot.read_text().count("[label=\"(") == 2 + 8
    code, out = run(capsys, "trellis", files["E_32"], "--format", "json")
    assert json.loads(out.out)["states"] == 16
    code, out = run(capsys, "trellis", files["STACK_2"], "--verify", "--format", "json")
    assert json.loads(out.out)["witness_cycle"] == ["2 -[0, 1]-> 2"]


def test_encode_decode(files, capsys, tmp_path):
    frames = tmp_path / "in.txt"
    frames.write_text("1 0\n")
    code, out = run(capsys, "encode", files["E_SMALL"], "-i", str(frames))
    assert code == 0 and out.out == "2 2\n0 1\n"
    received = tmp_path / "rx.txt"
    received.write_text("(2,2)\n0 1\n")
    code, out = run(capsys, "decode", files["E_SMALL"], "-i", str(received))
    assert code == 0 and out.out == "1 0\n"


def test_exit_codes(files, capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"p": 2,')
    assert run(capsys, "analyze", str(bad))[0] == 2
    assert run(capsys, "analyze", str(tmp_path / "missing.json"))[0] == 2
    assert run(capsys, "trellis", files["G_32"])[0] == 3
    frames = tmp_path / "in.txt"
    frames.write_text("(3,0)\n")
    assert run(capsys, "encode", files["E_SMALL"], "-i", str(frames))[0] == 3
    frames.write_text("3,0\n")
    assert run(capsys, "encode", files["E_SMALL"], "-i", str(frames))[0] == 2
    zero = tmp_path / "zero.json"
    zero.write_text('{"p": 2, "r": 2, "n": 1, "rows": [[[]]]}')
    assert run(capsys, "synthesize", str(zero))[0] == 3


def test_selftest(capsys):
    code, out = run(capsys, "selftest", "--trials", "10", "--seed", "5")
    assert code == 0 and "all passed: yes" in out.out
