"""Full (non-partial) synchronizers built from a token-passing line scheme.

The core automaton synchronizes any simple path or simple cycle of cells,
with no chord edges, whose designated start cell begins as a *wall*:

* A wall ages; at age 2^j - 2 (j = 1..8) its neighbors spawn a grade-j
  token moving away from the wall.  Grade 1 is the fast token (one cell
  per step); grade j occupies each cell for 2^j - 1 steps.
* Tokens route themselves along the path: a token accepted from one
  neighbor continues toward the other.
* New walls are born where a fast token reaches a dead end (or an
  existing wall), and wherever a fast token meets an opposing token --
  in the same cell, head-on across an edge, or by swapping cells.
* A wall whose every existing neighbor is a wall fires.

Walls split the path into halves recursively; every cell becomes a wall
simultaneously at time 2n - 2 (wall present from time 0, n cells), so a
straight line fires at 2n - 2 (n >= 2; a single cell fires at 1) and an
even cycle of length m fires at m.  Routing is by neighbor presence, not
by axis, so bent paths synchronize exactly like straight lines.

On top of the core scheme:

* an ignition wrapper lets the general sit mid-path: an ignite token
  walks to one end of the path and converts it into the starting wall
  (synchronous but not minimal-time);
* a diagonal construction synchronizes the waffle square family at
  exactly 2w by launching row and column lines from the diagonal with
  staggered start times.
"""

from __future__ import annotations

from .engine import Automaton
from .families import VariationSpec

K = 8
AGE_CAP = 2 ** K - 1
EMIT_GRADE = {2 ** j - 2: j for j in range(1, K + 1)}
PHASE_MAX = {j: 2 ** j - 2 for j in range(1, K + 1)}

LETTERS = ("E", "N", "W", "S")
OPPOSITE = {"E": "W", "N": "S", "W": "E", "S": "N"}

QUIESCENT = "Q"
FIRE = ("F",)


class LineError(Exception):
    pass


class UnsupportedFamily(LineError):
    """No generic full solution is bundled for this family."""


def _is_wall(s) -> bool:
    return isinstance(s, tuple) and len(s) == 2 and s[0] == "W"


def _is_holder(s) -> bool:
    return isinstance(s, tuple) and len(s) == 2 and s[0] == "T"


def psync_delta(own, *ins):
    """Transition of the path synchronizer (inputs in E, N, W, S order)."""
    if own == FIRE:
        return FIRE
    inp = dict(zip(LETTERS, ins))
    present = [d for d in LETTERS if inp[d] != "#"]

    if _is_wall(own):
        if all(_is_wall(inp[d]) or inp[d] == FIRE for d in present):
            return FIRE
        return ("W", min(own[1] + 1, AGE_CAP))

    if own == ("GI",):
        return ("GB", tuple(1 if x != "#" else 0 for x in ins))
    if isinstance(own, tuple) and own and own[0] == "GB":
        return QUIESCENT

    def other_dir(d):
        for d2 in LETTERS:
            if d2 != d and inp[d2] != "#":
                return d2
        return None

    # Token arrivals: (grade, from-direction) pairs, from neighbor
    # transfers and from wall emissions; ignite arrivals separately.
    arrivals = []
    ignites = []
    for d in present:
        x = inp[d]
        if _is_wall(x):
            j = EMIT_GRADE.get(x[1])
            if j is not None:
                arrivals.append((j, d))
        elif _is_holder(x):
            for tok in x[1]:
                if (tok[0] == "t" and tok[3] == OPPOSITE[d]
                        and tok[2] == PHASE_MAX[tok[1]]):
                    arrivals.append((tok[1], d))
                elif tok[0] == "i" and tok[1] == OPPOSITE[d]:
                    ignites.append(d)
        elif isinstance(x, tuple) and x and x[0] == "GB":
            first = next(k for k in range(4) if x[1][k])
            if LETTERS.index(OPPOSITE[d]) == first:
                ignites.append(d)

    own_tokens = own[1] if _is_holder(own) else frozenset()
    sitting = [t for t in own_tokens
               if t[0] == "t" and t[2] < PHASE_MAX[t[1]]]
    leaving = [t for t in own_tokens
               if t[0] == "t" and t[2] == PHASE_MAX[t[1]]]

    birth = False
    fasts = [(j, d) for j, d in arrivals if j == 1]
    for _, d in fasts:
        ahead = other_dir(d)
        # dead end or wall ahead
        if ahead is None or _is_wall(inp[ahead]) or inp[ahead] == FIRE:
            birth = True
        # head-on meeting in this cell with a sitting or just-leaving slow
        if any(t[3] == d for t in sitting):
            birth = True
        if any(t[1] >= 2 and t[3] == d for t in leaving):
            birth = True
    if fasts and len({d for _, d in arrivals}) >= 2:
        birth = True
    for t in leaving:
        if t[1] == 1:
            d = t[3]
            x = inp.get(d, "#")
            # own fast entered a cell holding an opposing slow past the
            # midpoint of its residence: the crossing lies at the cell
            # boundary, so both cells become walls; an opposing slow in
            # the near half means a cell-centered crossing and only the
            # slow's cell becomes a wall
            if _is_holder(x) and any(
                    u[0] == "t" and u[1] >= 2 and u[3] == OPPOSITE[d]
                    and PHASE_MAX[u[1]] // 2 <= u[2] < PHASE_MAX[u[1]]
                    for u in x[1]):
                birth = True
            # own fast swapped cells with an opposing slow
            if any(j >= 2 and dd == d for j, dd in arrivals):
                birth = True
    if birth:
        return ("W", 0)

    toks = {("t", j, p + 1, h) for _, j, p, h in sitting}
    for j, d in arrivals:
        ahead = other_dir(d)
        if ahead is None:
            continue
        toks.add(("t", j, 0, ahead))
    for d in ignites:
        ahead = other_dir(d)
        if ahead is None:
            return ("W", 0)
        toks.add(("i", ahead))
    return ("T", frozenset(toks)) if toks else QUIESCENT


def _automaton(name: str, model: str, general, bc_general=None) -> Automaton:
    if model == "tr":
        return Automaton(name, "tr", QUIESCENT, {FIRE}, psync_delta,
                         general=general)
    return Automaton(name, "bs", QUIESCENT, {FIRE}, psync_delta,
                     eta=lambda bc: general)


def minimal_line(model: str = "tr") -> Automaton:
    """Synchronizer firing an n-cell line at 2n - 2 (at 1 for n = 1).

    The general's end cell starts as a wall; routing follows neighbor
    presence, so the same automaton handles bent paths and cycles.
    """
    return _automaton("path-sync", model, ("W", 0))


def bend_line(A: Automaton) -> Automaton:
    """Adapt a line synchronizer to bent (L-shaped) paths.

    The bundled synchronizer routes tokens by neighbor presence instead
    of by axis, so it already handles corners; this adapter only accepts
    such automata.
    """
    if A.delta is psync_delta:
        return A
    raise UnsupportedFamily(
        "only the bundled neighbor-routing line synchronizer can be bent")


def ignition_line(model: str = "tr") -> Automaton:
    """Path synchronizer whose general may sit anywhere on the path.

    The general records its boundary condition, hands an ignite token to
    its first existing neighbor (east, north, west, south order), and
    fades out; the token walks to a path end, which becomes the starting
    wall.  Firing is synchronous but later than minimal time.
    """
    return _automaton("path-sync-ignite", model, ("GI",))


# ---------------------------------------------------------------------------
# Waffle squares at exactly 2w


def _unwrap(tag: str, x):
    if isinstance(x, tuple) and x and x[0] == tag:
        return x[1]
    if x == QUIESCENT:
        return QUIESCENT
    return "#"


def ex2d_delta(own, *ins):
    inp = dict(zip(LETTERS, ins))
    if own == FIRE:
        return FIRE
    if own == ("FP",):
        return FIRE
    if isinstance(own, tuple) and own and own[0] == "H":
        inner = psync_delta(own[1], _unwrap("H", inp["E"]), "#",
                            _unwrap("H", inp["W"]), "#")
        if inner == FIRE:
            return ("FP",)
        return ("H", inner, own[2])
    if isinstance(own, tuple) and own and own[0] == "V":
        inner = psync_delta(own[1], "#", _unwrap("V", inp["N"]),
                            "#", _unwrap("V", inp["S"]))
        if inner == FIRE:
            return ("FP",)
        return ("V", inner)
    if own == ("Da",):
        return ("Dx",)
    fp_near = any(inp[d] == ("FP",) for d in LETTERS)
    if own == ("Dn",):
        return FIRE if fp_near else ("Dx",)
    if own == ("Dx",):
        return FIRE if fp_near else ("Dx",)
    # own is quiescent
    if fp_near:
        return FIRE
    if inp["W"] == ("Da",):
        return ("H", ("W", 0), "e1")
    if inp["S"] == ("Da",):
        return ("V", ("W", 0))
    s_in = inp["S"]
    if isinstance(s_in, tuple) and len(s_in) == 3 and s_in[0] == "H" \
            and s_in[2] == "e2":
        return ("Dn",)
    if s_in == ("Dn",):
        bc = tuple(1 if inp[d] != "#" else 0 for d in LETTERS)
        if bc == (0, 0, 1, 1):  # the far corner: no east, no north
            return FIRE
        return ("Da",)
    inner_h = psync_delta(QUIESCENT, _unwrap("H", inp["E"]), "#",
                          _unwrap("H", inp["W"]), "#")
    if inner_h != QUIESCENT:
        dtag = None
        wv = inp["W"]
        if isinstance(wv, tuple) and len(wv) == 3 and wv[0] == "H" \
                and wv[2] == "e1":
            dtag = "e2"
        return ("H", inner_h, dtag)
    inner_v = psync_delta(QUIESCENT, "#", _unwrap("V", inp["N"]),
                          "#", _unwrap("V", inp["S"]))
    if inner_v != QUIESCENT:
        return ("V", inner_v)
    return QUIESCENT


def ex2d_minimal(model: str = "tr") -> Automaton:
    """Synchronizer firing every waffle square C(w) at exactly 2w.

    A diagonal signal reaches (2i, 2i) at time 4i and launches a row
    line eastward and a column line northward, each started as a wall
    one step later; a line of w - 2i cells started at 4i + 1 reaches its
    internal firing state at (4i + 1) + 2(w - 2i) - 2 = 2w - 1.  Every
    remaining cell is adjacent to some line cell and fires one step
    later, together with the lines, at 2w.
    """
    if model == "tr":
        return Automaton("ex2d-sync", "tr", QUIESCENT, {FIRE}, ex2d_delta,
                         general=("Da",))
    return Automaton("ex2d-sync", "bs", QUIESCENT, {FIRE}, ex2d_delta,
                     eta=lambda bc: ("Da",))


# ---------------------------------------------------------------------------
# Per-family dispatch


_END_GENERAL = ("LSP", "LSP_ab", "EX1")
_MID_GENERAL = ("gLSP", "gLSP_ab", "LSP_C")
_WALLS = ("RECT_WALL", "gRECT_WALL", "RECT_WALL_ab", "gRECT_WALL_ab",
          "SQ_WALL", "gSQ_WALL")


def generic_solution(spec: VariationSpec, model: str = "tr") -> Automaton:
    """A full (possibly non-minimal) solution of the whole family.

    Path families with an end general and wall families run the line
    synchronizer directly; path families whose general may sit mid-path
    use the ignition wrapper; waffle squares use the diagonal
    construction.  Filled rectangles and the comb/staircase/parity
    square families are not supported.

    Wall coverage assumes chordless rings: walls with an arm of length
    one and a longer other arm place grid-adjacent cells that are not
    ring-consecutive, which misroutes the token walk.  Equal-ratio wall
    families contain no such member.
    """
    f = spec.family
    if f in _END_GENERAL or f in _WALLS:
        return minimal_line(model)
    if f in _MID_GENERAL:
        return ignition_line(model)
    if f == "EX2D":
        return ex2d_minimal(model)
    raise UnsupportedFamily(
        f"no generic full solution bundled for {spec.descriptor()}")
