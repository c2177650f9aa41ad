"""On-disk corpus of pinned reference artifacts.

Plain-text payloads under ``corpus_data/`` hold the canonical instances
used for regression pinning: the explicit 14-state path synchronizer,
the reachability-equality lower-bound witness on the bent paths, the
11-piece rectangle cover, and a worked available-information instance.
``load`` parses and invariant-checks an entry; ``pin`` diffs a stored
payload against its recomputation and reports the first divergence;
``pin_all`` recomputes every entry.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from .covering import CoverPiece, cover_rect
from .engine import Automaton, firing_time, FiredAt
from .families import VariationSpec, l_path
from .grid import Configuration
from .lower_bound import (AvailableInformation, LowerBoundWitness,
                          available_info, find_witness)
from .solutions import explicit_lsp32

CORPUS_DIR = Path(__file__).with_name("corpus_data")


class CorpusError(Exception):
    pass


@dataclass(frozen=True)
class CorpusEntry:
    id: str
    kind: str  # configuration | automaton | witness | cover | expected-outcome
    path: Path
    expected: dict  # expected value -> (value, provenance tag)


@dataclass(frozen=True)
class PinResult:
    entry_id: str
    ok: bool
    divergence: str | None = None

    def render(self) -> str:
        if self.ok:
            return f"pin {self.entry_id}: pass"
        return f"pin {self.entry_id}: FAIL -- {self.divergence}"


def index() -> dict[str, CorpusEntry]:
    """Entries listed in ``corpus_data/index.txt``.

    Index lines: ``id | kind | payload filename | key=value[, ...]``;
    every expected value carries a provenance tag in parentheses,
    ``pinned`` (fixed reference value) or ``derived`` (recomputable).
    """
    entries = {}
    for ln in (CORPUS_DIR / "index.txt").read_text().splitlines():
        ln = ln.strip()
        if not ln or ln.startswith("#"):
            continue
        eid, kind, fname, exp = [p.strip() for p in ln.split("|")]
        expected = {}
        for item in exp.split(","):
            key, _, rest = item.strip().partition("=")
            value, _, tag = rest.partition("(")
            expected[key] = (value.strip(), tag.rstrip(")"))
        entries[eid] = CorpusEntry(eid, kind, CORPUS_DIR / fname, expected)
    return entries


def _split_blocks(text: str) -> dict[str, str]:
    """Payload sections delimited by ``-- name`` marker lines."""
    blocks: dict[str, str] = {}
    name = None
    for ln in text.splitlines():
        if ln.startswith("-- "):
            name = ln[3:].strip()
            blocks[name] = ""
        elif name is not None:
            blocks[name] += ln + "\n"
    return blocks


def load(entry_id: str):
    """Parsed, invariant-checked artifact for a corpus id."""
    entries = index()
    if entry_id not in entries:
        raise CorpusError(f"unknown corpus id {entry_id!r}")
    entry = entries[entry_id]
    if not entry.path.exists():
        raise CorpusError(f"missing payload {entry.path}")
    text = entry.path.read_text()
    if entry.kind == "automaton":
        A = Automaton.parse(text)
        want = int(entry.expected["states"][0])
        if A.state_count() != want:
            raise CorpusError(f"{entry_id}: state count "
                              f"{A.state_count()} != {want}")
        return A
    if entry.kind == "witness":
        b = _split_blocks(text)
        w = LowerBoundWitness(
            Configuration.parse(b["config"]), int(b["t"].strip()),
            Configuration.parse(b["config2"]),
            tuple(int(x) for x in b["v"].split()),
            tuple(int(x) for x in b["v2"].split()))
        if not w.verify():
            raise CorpusError(f"{entry_id}: stored witness fails "
                              "re-verification")
        return w
    if entry.kind == "cover":
        pieces = []
        for ln in text.splitlines():
            parts = ln.split()
            if not parts or parts[0] != "piece":
                continue
            i, j, p, q, act, fire, a, b, c, d, l = map(int, parts[1:])
            pieces.append(CoverPiece((i, j), (p, q), act, fire, (a, b),
                                     (c, d), l))
        if not all(p.invariants_ok() for p in pieces):
            raise CorpusError(f"{entry_id}: a stored piece violates its "
                              "invariants")
        return pieces
    if entry.kind == "expected-outcome":
        b = _split_blocks(text)
        C = Configuration.parse(b["config"])
        v = tuple(int(x) for x in b["v"].split())
        t = int(b["t"].strip())
        entries_set = frozenset(
            ((int(p[0]), int(p[1])), tuple(int(x) for x in p[2]))
            for p in (ln.split() for ln in b["local_map"].splitlines() if ln))
        gx, gy = C.general
        ai = AvailableInformation(False, t, (v[0] - gx, v[1] - gy),
                                  entries_set)
        return C, v, t, ai
    raise CorpusError(f"unhandled corpus kind {entry.kind!r}")


def _first_diff(a: str, b: str) -> str:
    for i, (la, lb) in enumerate(zip(a.splitlines(), b.splitlines())):
        if la != lb:
            return f"line {i + 1}: stored {la!r} != recomputed {lb!r}"
    return (f"length: stored {len(a.splitlines())} lines, "
            f"recomputed {len(b.splitlines())}")


def _canonical(artifact) -> str:
    if isinstance(artifact, Automaton):
        return artifact.serialize()
    if isinstance(artifact, LowerBoundWitness):
        return (f"-- t\n{artifact.t}\n-- v\n{artifact.v[0]} {artifact.v[1]}\n"
                f"-- v2\n{artifact.v2[0]} {artifact.v2[1]}\n"
                f"-- config\n{artifact.C.serialize()}"
                f"-- config2\n{artifact.C2.serialize()}")
    if isinstance(artifact, list):  # cover pieces
        lines = []
        for p in artifact:
            (i, j), (pp, q) = p.general_at, p.arms
            lines.append(f"piece {i} {j} {pp} {q} {p.activation} {p.firing} "
                         f"{p.ratio[0]} {p.ratio[1]} {p.offsets[0]} "
                         f"{p.offsets[1]} {p.scale}")
        return "\n".join(lines) + "\n"
    if isinstance(artifact, tuple):  # ai instance
        C, v, t, ai = artifact
        lm = "\n".join(f"{dx} {dy} {''.join(map(str, bc))}"
                       for (dx, dy), bc in sorted(ai.local_map))
        return (f"-- t\n{t}\n-- v\n{v[0]} {v[1]}\n"
                f"-- config\n{C.serialize()}-- local_map\n{lm}\n")
    raise CorpusError(f"no canonical form for {type(artifact).__name__}")


def pin(entry: CorpusEntry, recomputed) -> PinResult:
    """Structural diff of a loaded entry against its recomputation."""
    stored = _canonical(load(entry.id))
    fresh = _canonical(recomputed)
    if stored == fresh:
        return PinResult(entry.id, True)
    return PinResult(entry.id, False, _first_diff(stored, fresh))


def recompute(entry_id: str):
    """Independent recomputation of a corpus artifact."""
    if entry_id == "explicit-path-sync":
        sol = explicit_lsp32()
        out = firing_time(l_path(6, 4), sol.automaton, horizon=20)
        if not isinstance(out, FiredAt) or out.t != 12:
            raise CorpusError(f"explicit table no longer fires at 12: {out!r}")
        return sol.automaton
    if entry_id == "bent-path-witness":
        return find_witness(VariationSpec("gLSP_ab", a=2, b=3),
                            l_path(4, 6, 2), 9, 4)
    if entry_id == "staircase-cover":
        return cover_rect(5, 3, 10, 6)
    if entry_id == "reachable-info-instance":
        C, v, t, _ = load(entry_id)
        return C, v, t, available_info(C, v, t)
    raise CorpusError(f"no recomputation rule for {entry_id!r}")


def pin_all() -> list[PinResult]:
    """Recompute and re-pin every corpus entry."""
    return [pin(e, recompute(eid)) for eid, e in sorted(index().items())]
