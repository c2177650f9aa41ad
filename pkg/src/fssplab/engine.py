"""Deterministic lockstep simulation of finite automata on configurations.

Two models are supported:

* ``tr`` (traditional): a single general state, a single firing state; the
  general cannot see its own boundary condition at time 0.
* ``bs`` (boundary sensitive): the general's initial state is selected from
  its boundary condition; a set of firing states; firing at time 0 is
  possible.

Transition functions take the cell's own state plus the four neighbor
inputs in east, north, west, south order; the boundary symbol ``#`` stands
for a missing neighbor.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Iterable

from .grid import (BoundaryCondition, Cell, Configuration, DIRECTIONS,
                   canonical_order, neighbors)

BOUNDARY = "#"

State = object  # states are hashable values (strings or tuples)


class EngineError(Exception):
    pass


class ModelMismatch(EngineError):
    pass


class Automaton:
    """A finite automaton replicated over every cell of a configuration.

    delta is a total function (state, in_e, in_n, in_w, in_s) -> state; it
    may be given as a callable or via an explicit rule table with a
    default-to-quiescent fallback.
    """

    def __init__(
        self,
        name: str,
        model: str,
        quiescent: State,
        firing: Iterable[State],
        delta: Callable[..., State] | None = None,
        general: State | None = None,
        eta: "Callable[[BoundaryCondition], State] | dict | None" = None,
        states: Iterable[State] | None = None,
        state_count: int | None = None,
        table: dict | None = None,
    ):
        if model not in ("tr", "bs"):
            raise EngineError(f"unknown model {model!r}")
        self.name = name
        self.model = model
        self.quiescent = quiescent
        self.firing = frozenset(firing)
        self.table = dict(table) if table is not None else None
        if delta is None:
            if self.table is None:
                raise EngineError("need delta callable or rule table")
            delta = self._table_delta
        self.delta = delta
        self.general = general
        if isinstance(eta, dict):
            eta_map = dict(eta)
            eta = lambda bc: eta_map.get(bc, ("G",) + tuple(bc))  # noqa: E731
            self.eta_map: dict | None = eta_map
        else:
            self.eta_map = None
        self.eta = eta
        if model == "tr" and general is None:
            raise EngineError("traditional model needs a general state")
        if model == "bs" and eta is None:
            raise EngineError("boundary-sensitive model needs a general map")
        self.states = frozenset(states) if states is not None else None
        self._state_count = state_count
        self._memo: dict = {}
        self._quiescent_ok: bool | None = None

    def _table_delta(self, s, e, n, w, s_) -> State:
        return self.table.get((s, e, n, w, s_), self.quiescent)

    def state_count(self) -> int | None:
        if self.states is not None:
            return len(self.states)
        return self._state_count

    def init_state(self, bc: BoundaryCondition) -> State:
        if self.model == "tr":
            return self.general
        return self.eta(bc)

    def is_firing(self, s: State) -> bool:
        return s in self.firing

    def respects_quiescent(self) -> bool:
        """True iff a quiescent cell with only quiescent/# inputs stays so."""
        if self._quiescent_ok is None:
            q = self.quiescent
            self._quiescent_ok = all(
                self.delta(q, *ins) == q
                for ins in itertools.product((q, BOUNDARY), repeat=4)
            )
        return self._quiescent_ok

    def step_cell(self, s, e, n, w, s_) -> State:
        key = (s, e, n, w, s_)
        out = self._memo.get(key)
        if out is None:
            out = self.delta(s, e, n, w, s_)
            self._memo[key] = out
        return out

    def serialize(self) -> str:
        """Text form; only available for explicit-table automata."""
        if self.table is None:
            raise EngineError(f"automaton {self.name!r} has no explicit table")
        lines = [f"automaton {self.name}", f"model {self.model}",
                 f"quiescent {_fmt(self.quiescent)}"]
        if self.model == "tr":
            lines.append(f"general {_fmt(self.general)}")
        else:
            for bc in sorted(self.eta_map or {}):
                lines.append(f"eta {''.join(map(str, bc))} {_fmt(self.eta_map[bc])}")
        lines.append("firing " + " ".join(sorted(_fmt(f) for f in self.firing)))
        if self.states is not None:
            lines.append("states " + " ".join(sorted(_fmt(s) for s in self.states)))
        for key in sorted(self.table, key=lambda k: tuple(map(_fmt, k))):
            parts = " ".join(_fmt(x) for x in key)
            lines.append(f"rule {parts} {_fmt(self.table[key])}")
        lines.append(f"default {_fmt(self.quiescent)}")
        return "\n".join(lines) + "\n"

    @classmethod
    def parse(cls, text: str) -> "Automaton":
        name = "parsed"
        model = "tr"
        quiescent = None
        general = None
        eta: dict = {}
        firing: list = []
        states: list | None = None
        table: dict = {}
        for ln in text.splitlines():
            ln = ln.strip()
            if not ln or ln.startswith("#!"):
                continue
            parts = ln.split()
            kind = parts[0]
            if kind == "automaton":
                name = parts[1]
            elif kind == "model":
                model = parts[1]
            elif kind == "quiescent":
                quiescent = parts[1]
            elif kind == "general":
                general = parts[1]
            elif kind == "eta":
                bc = tuple(int(ch) for ch in parts[1])
                eta[bc] = parts[2]
            elif kind == "firing":
                firing = parts[1:]
            elif kind == "states":
                states = parts[1:]
            elif kind == "rule":
                if len(parts) != 7:
                    raise EngineError(f"malformed rule line: {ln!r}")
                table[tuple(parts[1:6])] = parts[6]
            elif kind == "default":
                if quiescent is not None and parts[1] != quiescent:
                    raise EngineError("default state must be the quiescent state")
            else:
                raise EngineError(f"unknown automaton record {kind!r}")
        if quiescent is None or not firing:
            raise EngineError("automaton file missing quiescent or firing states")
        if states is None:
            census = set([quiescent] + firing)
            if general is not None:
                census.add(general)
            census.update(eta.values())
            for key, out in table.items():
                census.add(key[0])
                census.add(out)
                census.update(x for x in key[1:] if x != BOUNDARY)
            states = sorted(census)
        return cls(name, model, quiescent, firing, general=general,
                   eta=eta if model == "bs" else None, states=states, table=table)


def _fmt(x) -> str:
    return x if isinstance(x, str) else repr(x)


# ---------------------------------------------------------------------------
# Simulation


class Trace:
    """Full map (cell, time) -> state; rows stored sparsely (non-quiescent)."""

    def __init__(self, config: Configuration, automaton: Automaton,
                 rows: list[dict]):
        self.config = config
        self.automaton = automaton
        self.rows = rows

    @property
    def horizon(self) -> int:
        return len(self.rows) - 1

    def state(self, v: Cell, t: int) -> State:
        if v not in self.config.cells:
            raise EngineError(f"cell {v} not in configuration")
        return self.rows[t].get(v, self.automaton.quiescent)

    def row(self, t: int) -> dict:
        q = self.automaton.quiescent
        return {v: self.rows[t].get(v, q) for v in self.config.cells}

    def dump(self) -> str:
        cells = canonical_order(self.config.cells)
        out = []
        for t in range(len(self.rows)):
            out.append(" ".join(_fmt(self.state(v, t)) for v in cells))
        return "\n".join(out) + "\n"

    def diagram(self) -> str:
        """ASCII space-time diagram, one character per state, legend header."""
        symbols: dict = {self.automaton.quiescent: "."}
        glyphs = ("ABCDEFGHIJKLMNOPRSTUVWXYZabcdefghijklmnopqrstuvwxyz"
                  "0123456789*+@%&=?!")
        pool = iter(glyphs)
        cells = canonical_order(self.config.cells)
        xs = [c[0] for c in self.config.cells]
        ys = [c[1] for c in self.config.cells]
        x0, x1 = min(xs), max(xs)
        y0, y1 = min(ys), max(ys)
        body = []
        for t in range(len(self.rows)):
            grid_lines = []
            for y in range(y1, y0 - 1, -1):
                line = []
                for x in range(x0, x1 + 1):
                    if (x, y) not in self.config.cells:
                        line.append(" ")
                        continue
                    s = self.state((x, y), t)
                    if s not in symbols:
                        try:
                            symbols[s] = next(pool)
                        except StopIteration:
                            symbols[s] = "?"
                    line.append(symbols[s])
                grid_lines.append("".join(line))
            body.append(f"t={t}\n" + "\n".join(grid_lines))
        legend = ["legend:"] + [f"  {ch} = {_fmt(s)}" for s, ch in symbols.items()]
        _ = cells
        return "\n".join(legend) + "\n\n" + "\n\n".join(body) + "\n"


@dataclass(frozen=True)
class FiredAt:
    t: int


@dataclass(frozen=True)
class PrematureOrPartial:
    cell: Cell
    t: int


@dataclass(frozen=True)
class NoFireWithinHorizon:
    horizon: int


FiringOutcome = FiredAt | PrematureOrPartial | NoFireWithinHorizon


def default_horizon(C: Configuration) -> int:
    return 4 * (C.radius() + 1)


def _initial_row(C: Configuration, A: Automaton) -> dict:
    g = C.general
    s0 = A.init_state(C.boundary_condition(g))
    return {g: s0} if s0 != A.quiescent else {}


def _step_row(C: Configuration, A: Automaton, row: dict, dense: bool) -> dict:
    q = A.quiescent
    if dense:
        active = C.cells
    else:
        active = set()
        for v in row:
            active.add(v)
            for n in neighbors(v):
                if n in C.cells:
                    active.add(n)
    new = {}
    cells = C.cells
    for v in active:
        e, n, w, s_ = neighbors(v)
        out = A.step_cell(
            row.get(v, q),
            row.get(e, q) if e in cells else BOUNDARY,
            row.get(n, q) if n in cells else BOUNDARY,
            row.get(w, q) if w in cells else BOUNDARY,
            row.get(s_, q) if s_ in cells else BOUNDARY,
        )
        if out != q:
            new[v] = out
    return new


def simulate(C: Configuration, A: Automaton, horizon: int | None = None,
             stop_on_fire: bool = False) -> Trace:
    """Run A on C for the given horizon (default 4*(radius+1))."""
    if horizon is None:
        horizon = default_horizon(C)
    if horizon < 0:
        raise EngineError("horizon must be >= 0")
    dense = not A.respects_quiescent()
    rows = [_initial_row(C, A)]
    for _ in range(horizon):
        if stop_on_fire and any(A.is_firing(s) for s in rows[-1].values()):
            break
        rows.append(_step_row(C, A, rows[-1], dense))
    return Trace(C, A, rows)


def firing_time(C: Configuration, A: Automaton,
                horizon: int | None = None) -> FiringOutcome:
    """Outcome of running A on C: global simultaneous first firing or not."""
    if horizon is None:
        horizon = default_horizon(C)
    dense = not A.respects_quiescent()
    row = _initial_row(C, A)
    n_cells = len(C.cells)
    for t in range(horizon + 1):
        fired = [v for v, s in row.items() if A.is_firing(s)]
        if fired:
            if len(fired) == n_cells:
                return FiredAt(t)
            return PrematureOrPartial(canonical_order(fired)[0], t)
        if t < horizon:
            row = _step_row(C, A, row, dense)
    return NoFireWithinHorizon(horizon)


# ---------------------------------------------------------------------------
# Validation


def validate(A: Automaton) -> list[str]:
    """Return a list of invariant violations (empty iff A is well formed)."""
    issues = []
    q = A.quiescent
    for ins in itertools.product((q, BOUNDARY), repeat=4):
        out = A.delta(q, *ins)
        if out != q:
            issues.append(f"quiescent rule violated: delta(Q, {ins}) = {out!r}")
    if q in A.firing:
        issues.append("quiescent state is a firing state")
    if not A.firing:
        issues.append("empty firing set")
    if A.model == "tr":
        if len(A.firing) != 1:
            issues.append("traditional model requires exactly one firing state")
        if A.general is None:
            issues.append("traditional model requires a general state")
        elif A.general == q:
            issues.append("general state equals the quiescent state")
    return issues


# ---------------------------------------------------------------------------
# Product construction

FIRE = ("FIRE",)


def product(A1: Automaton, A2: Automaton, fire_rule: str = "either") -> Automaton:
    """Run two automata in lockstep; fire when either/both components fire.

    Pair states that satisfy the fire rule collapse into a single firing
    state (runs stop at first firing, so its successors are never needed).
    The declared state count is the product of the factors' counts.
    """
    if A1.model != A2.model:
        raise ModelMismatch(f"{A1.name} is {A1.model}, {A2.name} is {A2.model}")
    if fire_rule not in ("either", "both"):
        raise EngineError(f"unknown fire rule {fire_rule!r}")
    q = (A1.quiescent, A2.quiescent)

    def fires(s1, s2) -> bool:
        if fire_rule == "either":
            return A1.is_firing(s1) or A2.is_firing(s2)
        return A1.is_firing(s1) and A2.is_firing(s2)

    def proj(x, k):
        if x == BOUNDARY:
            return BOUNDARY
        if x == FIRE:
            return BOUNDARY  # unreachable before the stop-at-fire instant
        return x[k]

    def delta(s, e, n, w, s_):
        if s == FIRE:
            return FIRE
        s1 = A1.step_cell(s[0], proj(e, 0), proj(n, 0), proj(w, 0), proj(s_, 0))
        s2 = A2.step_cell(s[1], proj(e, 1), proj(n, 1), proj(w, 1), proj(s_, 1))
        if fires(s1, s2):
            return FIRE
        return (s1, s2)

    n1, n2 = A1.state_count(), A2.state_count()
    count = n1 * n2 if (n1 is not None and n2 is not None) else None
    if A1.model == "tr":
        return Automaton(f"({A1.name}x{A2.name})", "tr", q, [FIRE], delta,
                         general=(A1.general, A2.general), state_count=count)

    def eta(bc):
        s1, s2 = A1.eta(bc), A2.eta(bc)
        if fires(s1, s2):
            return FIRE
        return (s1, s2)

    return Automaton(f"({A1.name}x{A2.name})", "bs", q, [FIRE], delta,
                     eta=eta, state_count=count)


# ---------------------------------------------------------------------------
# Dihedral transforms

# The eight symmetries of the square as integer 2x2 matrices (x, y) ->
# (a*x + b*y, c*x + d*y), keyed by name.
SYMMETRIES: dict[str, tuple[int, int, int, int]] = {
    "id": (1, 0, 0, 1),
    "rot90": (0, -1, 1, 0),
    "rot180": (-1, 0, 0, -1),
    "rot270": (0, 1, -1, 0),
    "flip_x": (1, 0, 0, -1),     # reflection across the horizontal axis
    "flip_y": (-1, 0, 0, 1),     # reflection across the vertical axis
    "flip_diag": (0, 1, 1, 0),   # swap x and y
    "flip_anti": (0, -1, -1, 0),
}


def apply_matrix(m: tuple[int, int, int, int], v: Cell) -> Cell:
    a, b, c, d = m
    return (a * v[0] + b * v[1], c * v[0] + d * v[1])


def direction_permutation(m: tuple[int, int, int, int]) -> tuple[int, ...]:
    """perm[k] = direction index of the image of direction k under m."""
    return tuple(DIRECTIONS.index(apply_matrix(m, e)) for e in DIRECTIONS)


def transform_configuration(C: Configuration, name: str) -> Configuration:
    """Apply a square symmetry to the cells, renormalized to (0,0) corner."""
    m = SYMMETRIES[name]
    moved = {apply_matrix(m, v) for v in C.cells}
    x0 = min(v[0] for v in moved)
    y0 = min(v[1] for v in moved)

    def shift(v: Cell) -> Cell:
        im = apply_matrix(m, v)
        return (im[0] - x0, im[1] - y0)

    labels = {i: shift(c) for i, c in C.labels.items()}
    return Configuration({shift(v) for v in C.cells}, shift(C.general),
                         variation=C.variation, params=C.params, labels=labels)


def transform_automaton(A: Automaton, name: str) -> Automaton:
    """Automaton that behaves on transform_configuration(C) as A does on C."""
    m = SYMMETRIES[name]
    perm = direction_permutation(m)

    def delta(s, *ins):
        return A.step_cell(s, *(ins[perm[k]] for k in range(4)))

    eta = None
    if A.eta is not None:
        def eta(bc):  # noqa: F811
            return A.eta(tuple(bc[perm[k]] for k in range(4)))

    return Automaton(f"{A.name}~{name}", A.model, A.quiescent, A.firing,
                     delta, general=A.general, eta=eta,
                     states=A.states, state_count=A.state_count())
