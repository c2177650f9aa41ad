"""Covering a filled rectangle with staircase-anchored L-path pieces.

A filled rectangle whose side lengths share the ratio a : b can be
covered by east/north L-path pieces whose generals sit on an
anti-diagonal staircase: the piece anchored at (i, j) owns the row
segment east of it and the column segment north of it, is activated at
time i + j, and its arm pair (w-i, h-j) is a member of the
corner-anchored offset family, so its own synchronizer fires it exactly
(w-i) + (h-j) steps after activation.  Every piece therefore fires at
the same absolute time w + h, and running the pieces jointly fires the
whole rectangle.
"""

from __future__ import annotations

from dataclasses import dataclass

from .engine import Automaton, transform_automaton
from .families import VariationSpec, build, member, rect
from .grid import Cell, Configuration
from .solutions import PartialSolution, generate_cab


class CoverError(Exception):
    pass


def _arm_offsets(a: int, b: int, p: int, q: int):
    """(l, c, d) with p = a*l + c, q = b*l + d, 0 <= c < a, 0 <= d < b,
    l >= 0 -- or None if the arm pair is not expressible."""
    l = p // a
    c = p - a * l
    d = q - b * l
    if l >= 0 and 0 <= d < b:
        return l, c, d
    return None


@dataclass(frozen=True)
class CoverPiece:
    """One L-shaped piece of a rectangle cover.

    The piece anchored at ``general_at`` = (i, j) consists of the row
    cells (i..w, j) and the column cells (i, j..h); its arms (w-i, h-j)
    may degenerate to zero.
    """

    general_at: Cell
    arms: tuple[int, int]
    activation: int
    firing: int
    ratio: tuple[int, int]
    offsets: tuple[int, int]
    scale: int

    def invariants_ok(self) -> bool:
        i, j = self.general_at
        p, q = self.arms
        a, b = self.ratio
        c, d = self.offsets
        return (self.activation == i + j
                and self.firing == i + j + p + q
                and 0 <= c < a and 0 <= d < b and self.scale >= 0
                and p == a * self.scale + c and q == b * self.scale + d)

    def cells(self) -> frozenset[Cell]:
        i, j = self.general_at
        p, q = self.arms
        row = {(i + x, j) for x in range(p + 1)}
        col = {(i, j + y) for y in range(q + 1)}
        return frozenset(row | col)

    def configuration(self) -> Configuration:
        i, j = self.general_at
        p, q = self.arms
        labels = {x: (i + x, j) for x in range(p + 1)}
        for y in range(1, q + 1):
            labels[p + y] = (i, j + y)
        return Configuration(self.cells(), (i, j), variation="cover_piece",
                             params={"w": p, "h": q}, labels=labels)


def cover_rect(a: int, b: int, w: int, h: int) -> list[CoverPiece]:
    """Staircase cover of the filled (w+1) x (h+1) rectangle.

    The generals walk the anti-diagonal: at each column i the row j
    rises by at most one, taking the step whenever the residual arm
    pair (w-i, h-j) stays expressible as (a*l+c, b*l+d).  Rising by at
    most one keeps every row of the rectangle owned by some piece.
    """
    spec = VariationSpec("RECT_ab", a=a, b=b)
    if not member(spec, rect(w, h)):
        raise CoverError(f"({w}, {h}) is not a ratio-({a}, {b}) rectangle")
    pieces = []
    # walk the longer-ratio axis so the other coordinate only ever has
    # to rise by one step, which keeps every row (resp. column) owned
    across, along = (w, h) if a >= b else (h, w)
    j = 0
    for i in range(across + 1):
        chosen = None
        for jj in (j + 1, j):
            if jj > along:
                continue
            p, q = (w - i, h - jj) if a >= b else (w - jj, h - i)
            fit = _arm_offsets(a, b, p, q)
            if fit is not None:
                chosen = (jj, (p, q), fit)
                break
        if chosen is None:
            raise CoverError(f"no admissible arm pair at step {i}")
        j, (p, q), (l, c, d) = chosen
        anchor = (i, j) if a >= b else (j, i)
        pieces.append(CoverPiece(anchor, (p, q), anchor[0] + anchor[1],
                                 w + h, (a, b), (c, d), l))
    return pieces


def verify_cover(pieces: list[CoverPiece], w: int, h: int) -> bool:
    """Union equals the rectangle, all invariants hold, and every piece
    fires at the common absolute time w + h."""
    target = {(x, y) for x in range(w + 1) for y in range(h + 1)}
    covered: set[Cell] = set()
    for p in pieces:
        if not p.invariants_ok() or p.firing != w + h:
            return False
        covered |= p.cells()
    return covered == target


def _countdown_automaton(span: int, model: str) -> Automaton:
    """Fires any path of eccentricity ``span`` from its general at
    exactly ``span``: a wave copies the remaining-step counter outward
    and every active cell counts down in lockstep."""
    fire = ("f",)
    def delta(s, *ins):
        if s == fire:
            return fire
        if isinstance(s, tuple) and s[0] == "c":
            return fire if s[1] <= 1 else ("c", s[1] - 1)
        for x in ins:
            if isinstance(x, tuple) and x[0] == "c":
                return fire if x[1] <= 1 else ("c", x[1] - 1)
        return "Q"
    start = fire if span == 0 else ("c", span)
    kwargs = dict(general=start) if model == "tr" else \
        dict(eta=lambda bc: start)
    return Automaton(f"countdown-{span}", model, "Q", {fire}, delta,
                     state_count=span + 2, **kwargs)


def piece_solutions(pieces: list[CoverPiece],
                    model: str = "bs") -> list[PartialSolution]:
    """One partial solution per piece, firing it (w-i)+(h-j) steps after
    its own start.

    Pieces with two positive arms reuse the corner-anchored family's
    check-and-broadcast construction, mirrored east-west onto the
    piece's orientation; degenerate pieces (an arm of length zero) fall
    back to a counter wave with the same firing time.
    """
    out = []
    for piece in pieces:
        p, q = piece.arms
        Cp = piece.configuration()
        if p >= 1 and q >= 1:
            a, b = piece.ratio
            c, d = piece.offsets
            spec = VariationSpec("LSP_C", a=a, b=b, c=c, d=d)
            inner = generate_cab(spec, build(spec, l=piece.scale), model)
            A = transform_automaton(inner.automaton, "flip_y")
        else:
            A = _countdown_automaton(p + q, model)
        out.append(PartialSolution(A, (Cp,), {Cp: p + q}))
    return out
