"""Rectangle covers, the pinned corpus, and the command line."""

import dataclasses

import pytest
from hypothesis import given, settings, strategies as st

from fssplab import cli, corpus
from fssplab.covering import (CoverError, cover_rect, piece_solutions,
                              verify_cover)
from fssplab.engine import Automaton, FiredAt
from fssplab.lower_bound import LowerBoundWitness
from fssplab.solutions import cover_composed


def test_cover_examples():
    for (a, b, w, h, n, ft) in ((5, 3, 10, 6, 11, 16), (1, 1, 2, 2, 3, 4),
                                (5, 3, 5, 3, 6, 8)):
        pieces = cover_rect(a, b, w, h)
        assert len(pieces) == n
        assert all(p.firing == ft for p in pieces)
        assert verify_cover(pieces, w, h)
        out = cover_composed(pieces, piece_solutions(pieces), w, h)
        assert out == FiredAt(ft)


def test_cover_rejects_non_member():
    with pytest.raises(CoverError):
        cover_rect(5, 3, 10, 7)


def test_verify_cover_negative_controls():
    pieces = cover_rect(5, 3, 10, 6)
    assert not verify_cover(pieces[1:], 10, 6)
    bad = [dataclasses.replace(pieces[0], activation=1)] + pieces[1:]
    assert not verify_cover(bad, 10, 6)


@given(st.integers(1, 3), st.integers(1, 3), st.integers(1, 4))
@settings(max_examples=20, deadline=None)
def test_cover_property(a, b, l):
    w, h = a * l, b * l
    pieces = cover_rect(a, b, w, h)
    assert verify_cover(pieces, w, h)
    assert all(p.activation == sum(p.general_at) for p in pieces)


def test_corpus_loads_and_pins():
    A = corpus.load("explicit-path-sync")
    assert isinstance(A, Automaton) and A.state_count() == 14
    w = corpus.load("bent-path-witness")
    assert isinstance(w, LowerBoundWitness) and w.verify()
    assert len(corpus.load("staircase-cover")) == 11
    C, v, t, ai = corpus.load("reachable-info-instance")
    assert t == 9 and len(ai.local_map) == 14
    results = corpus.pin_all()
    assert len(results) == 4 and all(r.ok for r in results)


def test_corpus_pin_detects_corruption(tmp_path, monkeypatch):
    src = corpus.CORPUS_DIR
    work = tmp_path / "corpus_data"
    work.mkdir()
    for f in src.iterdir():
        work.joinpath(f.name).write_text(f.read_text())
    payload = work / "staircase_cover.txt"
    payload.write_text(payload.read_text().replace(
        "piece 0 0 10 6 0 16", "piece 0 0 10 6 1 16", 1))
    monkeypatch.setattr(corpus, "CORPUS_DIR", work)
    with pytest.raises(corpus.CorpusError):
        corpus.load("staircase-cover")


def test_cli_exit_codes(tmp_path, capsys):
    assert cli.main(["mft", "--variation", "LSP",
                     "--params", "w=3,h=1"]) == 0
    assert capsys.readouterr().out.strip() == "8"
    assert cli.main(["simulate", "--variation", "LSP", "--params", "w=6,h=4",
                     "--automaton", "explicit-path-sync",
                     "--out", str(tmp_path / "a.txt")]) == 0
    assert cli.main(["simulate", "--variation", "LSP", "--params", "w=3,h=2",
                     "--automaton", "explicit-path-sync", "--horizon", "60",
                     "--out", str(tmp_path / "b.txt")]) == cli.EXIT_NOFIRE
    bad = tmp_path / "bad.txt"
    bad.write_text("garbage\n")
    assert cli.main(["simulate", "--variation", "LSP", "--params", "w=3,h=1",
                     "--automaton-file", str(bad)]) == cli.EXIT_PARSE
    assert cli.main(["mft", "--variation", "gRECT_ab:2,3",
                     "--params", "l=2,r=1,s=1"]) == cli.EXIT_OPEN
    capsys.readouterr()


def test_cli_cover_and_refute(capsys):
    assert cli.main(["cover", "5", "3", "10", "6"]) == 0
    out = capsys.readouterr().out
    assert "verify_cover True" in out and "FiredAt(t=16)" in out
    assert cli.main(["refute", "--variation", "RECT_WALL_ab:1,1",
                     "--scale", "6"]) == 0
    assert "not minimal-time" in capsys.readouterr().out


def test_cli_verify_reports_pass(capsys):
    assert cli.main(["verify", "--variation", "LSP_ab:2,3",
                     "--scale", "2"]) == 0
    out = capsys.readouterr().out
    assert "pass" in out and "FAIL" not in out


def test_cli_plan_dump(capsys):
    assert cli.main(["plan", "--variation", "LSP", "--params",
                     "w=3,h=2"]) == 0
    assert capsys.readouterr().out.strip()
