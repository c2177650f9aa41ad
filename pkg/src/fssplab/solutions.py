"""Synchronizers: explicit tables, compiled check-and-broadcast plans.

Two kinds of automata are produced here:

* an explicit 14-state rule table that fires exactly one L-path, and
* compiled "check and broadcast" automata: a declarative ``SignalPlan``
  (signal routes with per-step boundary-condition checks, message
  emissions, and firing conditions) is compiled into a transition
  function.  ``generate_cab`` builds the plan for any member of a
  supported family and the resulting partial solution fires that member
  at its minimum firing time while never firing any other member.

Plans are rooted at the general.  A signal advances one cell per step
along a fixed direction word; it survives step t only if the receiving
cell's boundary condition equals the expected one recorded from the
target.  Surviving signals may emit named messages at checkpoints;
messages spread at speed one and persist.  A cell fires at the plan
deadline when one of the firing message sets has fully arrived (or, for
collision plans, when the two designated signals arrive simultaneously).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .engine import (Automaton, BOUNDARY, FiredAt, FiringOutcome,
                     NoFireWithinHorizon, PrematureOrPartial, SYMMETRIES,
                     direction_permutation, firing_time, transform_automaton,
                     transform_configuration)
from .families import FamilyError, VariationSpec, build, l_path, member
from .grid import (BoundaryCondition, Cell, Configuration, canonical_order,
                   neighbors)
from .mft import mft

DIR_STEP: dict[str, Cell] = {"E": (1, 0), "N": (0, 1), "W": (-1, 0), "S": (0, -1)}
DIR_INDEX = {"E": 0, "N": 1, "W": 2, "S": 3}
OPPOSITE = {"E": "W", "N": "S", "W": "E", "S": "N"}

GEN = ("G",)
FIRE_STATE = ("F",)
QUIESCENT = "Q"


class SolutionError(Exception):
    pass


class UnsupportedVariation(SolutionError):
    """No synchronizer construction is bundled for this variation."""


class DomainError(SolutionError):
    """The requested target is not in the variation's domain."""


# ---------------------------------------------------------------------------
# Plan data model


@dataclass(frozen=True)
class Signal:
    """A speed-one signal: direction word, per-step expected boundary
    conditions, and (step, message) emissions at checkpoints."""

    sid: str
    dirs: tuple[str, ...]
    checks: tuple[BoundaryCondition, ...]
    emissions: tuple[tuple[int, str], ...] = ()

    def __post_init__(self):
        if len(self.dirs) != len(self.checks):
            raise SolutionError(f"signal {self.sid}: dirs/checks length mismatch")
        for step, _ in self.emissions:
            if not 1 <= step <= len(self.dirs):
                raise SolutionError(f"signal {self.sid}: emission step {step} "
                                    "outside the route")


@dataclass(frozen=True)
class SignalPlan:
    """Declarative synchronizer: signals, firing sets, deadline.

    * ``fire_sets``: a cell fires at ``deadline`` iff one set is a subset
      of its accumulated messages.
    * ``general_msgs``: messages present at the general from the start.
    * ``general_bc``: boundary-sensitive guard; a general whose boundary
      condition differs stays quiescent (ignored in the traditional model).
    * ``guard``: (message, boundary condition) born at the general at time
      1 iff its own boundary condition matches (traditional-model guard).
    * ``collision``: pair of signal ids; a cell also fires at the deadline
      if both signals arrive at it simultaneously at that step.
    """

    name: str
    signals: tuple[Signal, ...]
    fire_sets: tuple[frozenset[str], ...]
    deadline: int
    general_msgs: frozenset[str] = frozenset()
    general_bc: BoundaryCondition | None = None
    guard: tuple[str, BoundaryCondition] | None = None
    collision: frozenset[str] | None = None

    def __post_init__(self):
        if self.deadline < 1:
            raise SolutionError("plan deadline must be >= 1")
        sids = [s.sid for s in self.signals]
        if len(set(sids)) != len(sids):
            raise SolutionError("duplicate signal ids")
        for s in self.signals:
            if len(s.dirs) > self.deadline:
                raise SolutionError(f"signal {s.sid} outlives the deadline")
        if not self.fire_sets and self.collision is None:
            raise SolutionError("plan has no firing condition")

    def serialize(self) -> str:
        out = [f"plan {self.name}", f"deadline {self.deadline}"]
        if self.general_msgs:
            out.append("general-msgs " + " ".join(sorted(self.general_msgs)))
        if self.general_bc is not None:
            out.append("general-bc " + "".join(map(str, self.general_bc)))
        if self.guard is not None:
            out.append(f"guard {self.guard[0]} " + "".join(map(str, self.guard[1])))
        for s in self.signals:
            out.append(f"signal {s.sid} " + "".join(s.dirs))
            out.append(f"  checks {s.sid} " +
                       " ".join("".join(map(str, bc)) for bc in s.checks))
            for step, msg in s.emissions:
                out.append(f"  emit {s.sid} {step} {msg}")
        for fs in self.fire_sets:
            out.append("fire " + " ".join(sorted(fs)))
        if self.collision is not None:
            out.append("collision " + " ".join(sorted(self.collision)))
        return "\n".join(out) + "\n"


@dataclass
class PartialSolution:
    """An automaton plus the domain it promises to fire and when."""

    automaton: Automaton
    declared_domain: tuple[Configuration, ...]
    declared_ft: dict
    plan: SignalPlan | None = None

    def ft(self, C: Configuration) -> int:
        for D, t in self.declared_ft.items():
            if D == C:
                return t
        raise DomainError(f"{C!r} is not in the declared domain")


# ---------------------------------------------------------------------------
# Plan compilation


def _is_active(x) -> bool:
    return isinstance(x, tuple) and len(x) == 4 and x[0] == "A"


def compile_plan(plan: SignalPlan, model: str) -> Automaton:
    """Compile a signal plan into a running automaton.

    Cell states: quiescent "Q"; general ("G",); firing ("F",); and active
    states ("A", t, signals, messages) that carry the global time since
    the general woke, the signals currently sitting on the cell, and the
    accumulated messages.
    """
    signals = plan.signals
    deadline = plan.deadline
    general_msgs = plan.general_msgs
    fire_sets = plan.fire_sets
    collision = plan.collision
    guard = plan.guard if model == "tr" else None

    def delta(s, e, n, w, s_):
        if s == FIRE_STATE:
            return FIRE_STATE
        ins = (e, n, w, s_)
        # Time since the general woke: any adjacent/own active state
        # carries it; the general state means time 0.
        t = None
        for x in (s,) + ins:
            if _is_active(x):
                t = x[1] + 1 if t is None else max(t, x[1] + 1)
            elif x == GEN:
                t = 1 if t is None else max(t, 1)
        if t is None or t > deadline:
            return QUIESCENT
        bc = tuple(0 if x == BOUNDARY else 1 for x in ins)

        new_sigs = set()
        for sig in signals:
            if t > len(sig.dirs):
                continue
            d = sig.dirs[t - 1]
            pred = ins[DIR_INDEX[OPPOSITE[d]]]
            came = (pred == GEN and t == 1) or \
                   (_is_active(pred) and sig.sid in pred[2])
            if came and bc == sig.checks[t - 1]:
                new_sigs.add(sig.sid)

        msgs = set()
        if _is_active(s):
            msgs |= s[3]
        elif s == GEN:
            msgs |= general_msgs
            if guard is not None and bc == guard[1]:
                msgs.add(guard[0])
        for x in ins:
            if _is_active(x):
                msgs |= x[3]
            elif x == GEN:
                msgs |= general_msgs
        for sig in signals:
            if sig.sid in new_sigs:
                for step, msg in sig.emissions:
                    if step == t:
                        msgs.add(msg)

        if t == deadline:
            if collision is not None and collision <= new_sigs:
                return FIRE_STATE
            for fs in fire_sets:
                if fs <= msgs:
                    return FIRE_STATE
            return QUIESCENT
        if not new_sigs and not msgs:
            return QUIESCENT
        return ("A", t, frozenset(new_sigs), frozenset(msgs))

    name = f"cab[{plan.name}]"
    if model == "tr":
        return Automaton(name, "tr", QUIESCENT, [FIRE_STATE], delta, general=GEN)
    gbc = plan.general_bc

    def eta(bc):
        if gbc is None or tuple(bc) == gbc:
            return GEN
        return QUIESCENT

    return Automaton(name, "bs", QUIESCENT, [FIRE_STATE], delta, eta=eta)


def evaluate_plan(plan: SignalPlan, C: Configuration,
                  model: str) -> FiringOutcome:
    """Predict the compiled automaton's outcome on C without simulating.

    Signals occupy a unique walk from the general; messages spread at
    speed one (graph distance).  This mirrors the compiled transition
    function exactly and is used for large membership sweeps.
    """
    g = C.general
    if model == "bs" and plan.general_bc is not None and \
            C.boundary_condition(g) != plan.general_bc:
        return NoFireWithinHorizon(plan.deadline)
    births: list[tuple[str, Cell, int]] = [(m, g, 0) for m in plan.general_msgs]
    if model == "tr" and plan.guard is not None and \
            C.boundary_condition(g) == plan.guard[1]:
        births.append((plan.guard[0], g, 1))
    survived: dict[str, bool] = {}
    ends: dict[str, Cell] = {}
    for sig in plan.signals:
        cell = g
        alive_steps = 0
        for k, d in enumerate(sig.dirs, start=1):
            dx, dy = DIR_STEP[d]
            cell = (cell[0] + dx, cell[1] + dy)
            if cell not in C.cells or \
                    C.boundary_condition(cell) != sig.checks[k - 1]:
                break
            alive_steps = k
            for step, msg in sig.emissions:
                if step == k:
                    births.append((msg, cell, k))
        survived[sig.sid] = alive_steps == len(sig.dirs)
        ends[sig.sid] = cell if survived[sig.sid] else None
    collide_at = None
    if plan.collision is not None and all(survived[s] for s in plan.collision):
        endpoints = {ends[s] for s in plan.collision}
        if len(endpoints) == 1:
            collide_at = endpoints.pop()
    arrival: dict[str, dict[Cell, int]] = {}
    for msg, cell, t in births:
        dist = C.distances_from(cell)
        best = arrival.setdefault(msg, {})
        for v, d in dist.items():
            at = t + d
            if v not in best or at < best[v]:
                best[v] = at
    fired = set()
    for v in C.cells:
        ok = v == collide_at
        for fs in plan.fire_sets:
            if all(m in arrival and v in arrival[m] and
                   arrival[m][v] <= plan.deadline for m in fs):
                ok = True
                break
        if ok:
            fired.add(v)
    if fired == C.cells:
        return FiredAt(plan.deadline)
    if fired:
        return PrematureOrPartial(canonical_order(fired)[0], plan.deadline)
    return NoFireWithinHorizon(plan.deadline)


# ---------------------------------------------------------------------------
# Route helpers


def _dirs_of(cells: list[Cell]) -> tuple[str, ...]:
    out = []
    rev = {v: k for k, v in DIR_STEP.items()}
    for a, b in zip(cells, cells[1:]):
        out.append(rev[(b[0] - a[0], b[1] - a[1])])
    return tuple(out)


def _signal(C: Configuration, sid: str, dirs: tuple[str, ...],
            emissions: tuple[tuple[int, str], ...] = ()) -> Signal:
    cell = C.general
    checks = []
    for d in dirs:
        dx, dy = DIR_STEP[d]
        cell = (cell[0] + dx, cell[1] + dy)
        if cell not in C.cells:
            raise SolutionError(f"signal {sid} leaves the target at {cell}")
        checks.append(C.boundary_condition(cell))
    return Signal(sid, tuple(dirs), tuple(checks), tuple(emissions))


def _path_route(C: Configuration, i0: int, i1: int) -> tuple[str, ...]:
    step = 1 if i1 >= i0 else -1
    cells = [C.label(j) for j in range(i0, i1 + step, step)]
    return _dirs_of(cells)


def _ring_route(C: Configuration, i0: int, steps: int,
                direction: int) -> tuple[str, ...]:
    n = len(C.cells)
    cells = [C.label((i0 + direction * k) % n) for k in range(steps + 1)]
    return _dirs_of(cells)


def _path_params(C: Configuration) -> tuple[int, int, int]:
    w = max(v[0] for v in C.cells)
    h = max(v[1] for v in C.cells)
    gx, gy = C.general
    return w, h, (gx if gy == 0 else w + gy)


def _wall_params(C: Configuration) -> tuple[int, int, int]:
    w = max(v[0] for v in C.cells)
    h = max(v[1] for v in C.cells)
    n = 2 * w + 2 * h
    for j in range(n):
        if C.labels.get(j) == C.general:
            return w, h, j
    raise SolutionError(f"general {C.general} has no ring label")


def transform_plan(plan: SignalPlan, name: str) -> SignalPlan:
    """Plan that describes on transform_configuration(C) what ``plan``
    describes on C: direction letters and boundary-condition tuples are
    permuted by the symmetry; messages and deadlines are unchanged."""
    m = SYMMETRIES[name]
    perm = direction_permutation(m)
    letters = "ENWS"

    def tdir(d: str) -> str:
        return letters[perm[DIR_INDEX[d]]]

    def tbc(bc: BoundaryCondition) -> BoundaryCondition:
        out = [0, 0, 0, 0]
        for k in range(4):
            out[perm[k]] = bc[k]
        return tuple(out)

    signals = tuple(
        Signal(s.sid, tuple(tdir(d) for d in s.dirs),
               tuple(tbc(bc) for bc in s.checks), s.emissions)
        for s in plan.signals)
    return SignalPlan(
        f"{plan.name}~{name}", signals, plan.fire_sets, plan.deadline,
        general_msgs=plan.general_msgs,
        general_bc=None if plan.general_bc is None else tbc(plan.general_bc),
        guard=None if plan.guard is None else (plan.guard[0],
                                               tbc(plan.guard[1])),
        collision=plan.collision)


def _oriented(target: Configuration, normalized: Configuration,
              A: Automaton, plan: SignalPlan,
              names=None) -> tuple[Automaton, SignalPlan]:
    """Transform a build for a normalized copy onto the target."""
    tx0 = min(v[0] for v in target.cells)
    ty0 = min(v[1] for v in target.cells)
    tcells = frozenset((x - tx0, y - ty0) for x, y in target.cells)
    tgen = (target.general[0] - tx0, target.general[1] - ty0)
    for name in (names or SYMMETRIES):
        moved = transform_configuration(normalized, name)
        if moved.cells == tcells and moved.general == tgen:
            return transform_automaton(A, name), transform_plan(plan, name)
    raise SolutionError("no symmetry maps the normalized build onto the target")


# ---------------------------------------------------------------------------
# Family plan builders (each returns a SignalPlan for the given target)


def _with_guard(plan: SignalPlan, C: Configuration) -> SignalPlan:
    """Add a traditional-model general-identity guard to every fire set."""
    bc = C.boundary_condition(C.general)
    return SignalPlan(
        plan.name, plan.signals,
        tuple(fs | {"bcok"} for fs in plan.fire_sets),
        plan.deadline, plan.general_msgs, plan.general_bc,
        guard=("bcok", bc), collision=plan.collision)


def _plan_lsp(spec, C, model) -> SignalPlan:
    w, h, _ = _path_params(C)
    sig = _signal(C, "R", _path_route(C, 0, w + h), ((w + h, "end"),))
    return SignalPlan(f"{spec.descriptor()}:w{w}h{h}", (sig,),
                      (frozenset({"end"}),), 2 * (w + h),
                      general_bc=C.boundary_condition(C.general))


def _plan_glsp(spec, C, model) -> SignalPlan:
    w, h, i = _path_params(C)
    sigs = []
    gm = set()
    if i > 0:
        sigs.append(_signal(C, "A", _path_route(C, i, 0), ((i, "A"),)))
    else:
        gm.add("A")
    if i < w + h:
        sigs.append(_signal(C, "B", _path_route(C, i, w + h),
                            ((w + h - i, "B"),)))
    else:
        gm.add("B")
    plan = SignalPlan(f"{spec.descriptor()}:w{w}h{h}i{i}", tuple(sigs),
                      (frozenset({"A", "B"}),),
                      max(w + h + i, 2 * (w + h) - i),
                      general_msgs=frozenset(gm),
                      general_bc=C.boundary_condition(C.general))
    return _with_guard(plan, C) if model == "tr" else plan


def _plan_lsp_ab(spec, C, model) -> SignalPlan:
    w, h, _ = _path_params(C)
    deadline = 2 * w if spec.a > spec.b else w + h
    sig = _signal(C, "R", _path_route(C, 0, w), ((w, "w"),))
    return SignalPlan(f"{spec.descriptor()}:w{w}h{h}", (sig,),
                      (frozenset({"w"}),), deadline,
                      general_bc=C.boundary_condition(C.general))


def _plan_glsp_ab_yes(spec, C) -> SignalPlan:
    """Traditional-model plan for a ratio path whose general is p_0."""
    w, h, i = _path_params(C)
    assert i == 0
    sig = _signal(C, "R", _path_route(C, 0, w + h),
                  ((w, "yes1"), (w + h, "yes2")))
    return SignalPlan(f"{spec.descriptor()}:w{w}h{h}i0", (sig,),
                      (frozenset({"yes0", "yes1"}), frozenset({"yes2"})),
                      w + h, guard=("yes0", C.boundary_condition(C.general)))


def _plan_glsp_ab(spec, C, model) -> SignalPlan:
    w, h, i = _path_params(C)
    name = f"{spec.descriptor()}:w{w}h{h}i{i}"
    gbc = C.boundary_condition(C.general)
    deadline = w + h if i < 2 * w else i - w + h
    sigs: list[Signal] = []
    gm: set[str] = set()
    if i < w:
        x0, y0 = i, w - i
        if x0 > 0:
            sigs.append(_signal(C, "Rx", _path_route(C, i, 0), ((x0, "x"),)))
        else:
            gm.add("x")
        sigs.append(_signal(C, "R1", _path_route(C, i, w + h),
                            ((y0, "y"), (y0 + h, "h"))))
        fire = ({"x", "y"}, {"x", "h"}, {"y", "h"})
    else:
        x0, y0 = i - w, w + h - i
        emits = [(x0 + w, "w")]
        if x0 > 0:
            emits.insert(0, (x0, "x"))
        else:
            gm.add("x")
        sigs.append(_signal(C, "R0", _path_route(C, i, 0), tuple(emits)))
        if y0 > 0:
            sigs.append(_signal(C, "Ry", _path_route(C, i, w + h),
                                ((y0, "y"),)))
        else:
            gm.add("y")
        fire = ({"x", "y"}, {"x", "w"}, {"y", "w"})
    plan = SignalPlan(name, tuple(sigs), tuple(frozenset(f) for f in fire),
                      deadline, general_msgs=frozenset(gm), general_bc=gbc)
    return _with_guard(plan, C) if model == "tr" else plan


def _plan_rect_wall(spec, C, model, ratio: bool) -> SignalPlan:
    w, h, i = _wall_params(C)
    assert i == 0
    r0 = _signal(C, "R0", _ring_route(C, 0, h + w, -1),
                 ((h, "h"), (h + w, "w")))
    r1 = _signal(C, "R1", _ring_route(C, 0, w + h, +1),
                 ((w, "w"), (w + h, "h")))
    if ratio:
        fire = (frozenset({"w"}), frozenset({"h"}))
        deadline = w + h
    else:
        fire = (frozenset({"w", "h"}),)
        deadline = w + h + max(w, h)
    return SignalPlan(f"{spec.descriptor()}:w{w}h{h}", (r0, r1), fire,
                      deadline, general_bc=C.boundary_condition(C.general))


def _gwall_signals(C, w, h, i) -> tuple[list[Signal], set[str], tuple]:
    """Shared signal layout for generalized walls, normalized general.

    Requires 0 <= i <= w + h.  Returns (signals, free general messages,
    fire triples) for the two general positions (south wall / east wall).
    """
    sigs: list[Signal] = []
    gm: set[str] = set()
    if i <= w:
        x0, y0 = i, w - i
        if x0 > 0:
            sigs.append(_signal(C, "R0", _ring_route(C, i, x0 + h, -1),
                                ((x0, "x"), (x0 + h, "h"))))
        else:
            gm.add("x")
            sigs.append(_signal(C, "R0", _ring_route(C, i, h, -1),
                                ((h, "h"),)))
        if y0 > 0:
            sigs.append(_signal(C, "R1", _ring_route(C, i, y0 + h, +1),
                                ((y0, "y"), (y0 + h, "h"))))
        else:
            gm.add("y")
            sigs.append(_signal(C, "R1", _ring_route(C, i, h, +1),
                                ((h, "h"),)))
        triple = ("x", "y", "h")
    else:
        x0, y0 = i - w, w + h - i
        if x0 > 0:
            sigs.append(_signal(C, "R0", _ring_route(C, i, x0 + w, -1),
                                ((x0, "x"), (x0 + w, "w"))))
        else:
            gm.add("x")
            sigs.append(_signal(C, "R0", _ring_route(C, i, w, -1),
                                ((w, "w"),)))
        if y0 > 0:
            sigs.append(_signal(C, "R1", _ring_route(C, i, y0 + w, +1),
                                ((y0, "y"), (y0 + w, "w"))))
        else:
            gm.add("y")
            sigs.append(_signal(C, "R1", _ring_route(C, i, w, +1),
                                ((w, "w"),)))
        triple = ("x", "y", "w")
    return sigs, gm, triple


def _plan_grect_wall(spec, C, model) -> SignalPlan:
    w, h, i = _wall_params(C)
    assert w <= h and 0 <= i <= w + h
    if i <= w:
        deadline = w + 2 * h
    else:
        x0, y0 = i - w, w + h - i
        deadline = max(x0, y0, w) + w + h
    sigs, gm, triple = _gwall_signals(C, w, h, i)
    plan = SignalPlan(f"{spec.descriptor()}:w{w}h{h}i{i}", tuple(sigs),
                      (frozenset(triple),), deadline,
                      general_msgs=frozenset(gm),
                      general_bc=C.boundary_condition(C.general))
    return _with_guard(plan, C) if model == "tr" else plan


def _plan_gwall_ab(spec, C, model) -> SignalPlan:
    w, h, i = _wall_params(C)
    assert 0 <= i <= w + h
    sigs, gm, triple = _gwall_signals(C, w, h, i)
    pairs = tuple(frozenset(p) for p in itertools.combinations(triple, 2))
    collision = None
    if model == "tr":
        # Second firing rule: two fully checked half-ring signals meet at
        # the node diametrically opposite the general at exactly w + h.
        sigs.append(_signal(C, "R2", _ring_route(C, i, w + h, -1)))
        sigs.append(_signal(C, "R3", _ring_route(C, i, w + h, +1)))
        collision = frozenset({"R2", "R3"})
    plan = SignalPlan(f"{spec.descriptor()}:w{w}h{h}i{i}", tuple(sigs),
                      pairs, w + h, general_msgs=frozenset(gm),
                      general_bc=C.boundary_condition(C.general),
                      collision=collision)
    return _with_guard(plan, C) if model == "tr" else plan


def _plan_rect(spec, C, model, ratio: bool) -> SignalPlan:
    w = max(v[0] for v in C.cells)
    h = max(v[1] for v in C.cells)
    assert C.general == (0, 0)
    rw = _signal(C, "Rw", ("E",) * w, ((w, "w"),))
    rh = _signal(C, "Rh", ("N",) * h, ((h, "h"),))
    if ratio:
        fire = (frozenset({"w"}), frozenset({"h"}))
        deadline = w + h
    else:
        fire = (frozenset({"w", "h"}),)
        deadline = w + h + max(w, h)
    return SignalPlan(f"{spec.descriptor()}:w{w}h{h}", (rw, rh), fire,
                      deadline, general_bc=C.boundary_condition(C.general))


def _plan_lsp_c(spec, C, model) -> SignalPlan:
    w, h, i = _path_params(C)
    assert i == w
    rw = _signal(C, "Rw", _path_route(C, w, 0), ((w, "w"),))
    rh = _signal(C, "Rh", _path_route(C, w, w + h), ((h, "h"),))
    return SignalPlan(f"{spec.descriptor()}:w{w}h{h}", (rw, rh),
                      (frozenset({"w"}), frozenset({"h"})), w + h,
                      general_bc=C.boundary_condition(C.general))


def _plan_ex1(spec, C, model) -> SignalPlan:
    w, h, _ = _path_params(C)
    sig = _signal(C, "R", _path_route(C, 0, w), ((w, "w"),))
    return SignalPlan(f"{spec.descriptor()}:w{w}h{h}", (sig,),
                      (frozenset({"w"}),), 2 * w,
                      general_bc=C.boundary_condition(C.general))


def _plan_ex2(spec, C, model) -> SignalPlan:
    w = max(v[0] for v in C.cells)
    sigs = [
        _signal(C, "Re", ("E",) * w, ((w, "ok"),)),
        _signal(C, "Rn", ("N",) * w, ((w, "ok"),)),
    ]
    if spec.family == "EX2B":
        # One extra route per interior corridor, emitting at its tip.
        for k in range(1, w // 2):
            dirs = ("E",) * (w - 2 * k) + ("N",) * (2 * k)
            sigs.append(_signal(C, f"T{k}", dirs, ((w, "ok"),)))
    return SignalPlan(f"{spec.descriptor()}:w{w}", tuple(sigs),
                      (frozenset({"ok"}),), 2 * w,
                      general_bc=C.boundary_condition(C.general))


# ---------------------------------------------------------------------------
# generate_cab dispatch


def _cab_direct(spec, C, model, builder, **kw) -> tuple[SignalPlan, Automaton]:
    plan = builder(spec, C, model, **kw)
    return plan, compile_plan(plan, model)


def generate_cab(spec: VariationSpec, C: Configuration,
                 model: str = "tr") -> PartialSolution:
    """Check-and-broadcast partial solution with domain {C}.

    The returned automaton fires C at its minimum firing time within the
    variation and never fires any other member of the variation.
    """
    if model not in ("tr", "bs"):
        raise SolutionError(f"unknown model {model!r}")
    if not member(spec, C):
        raise DomainError(f"{C!r} is not a member of {spec.descriptor()}")
    f = spec.family
    plan: SignalPlan | None = None
    A: Automaton
    if f == "LSP":
        plan, A = _cab_direct(spec, C, model, _plan_lsp)
    elif f == "gLSP":
        plan, A = _cab_direct(spec, C, model, _plan_glsp)
    elif f == "LSP_ab":
        plan, A = _cab_direct(spec, C, model, _plan_lsp_ab)
    elif f == "gLSP_ab":
        w, h, i = _path_params(C)
        if spec.a > spec.b or (model == "tr" and spec.a == spec.b
                               and i == w + h):
            # Mirror across the anti-diagonal: arms and the general index
            # swap ends, reducing a > b to a <= b (and, for square ratios,
            # the terminal-general case to the start-general case).
            flipped = VariationSpec("gLSP_ab", spec.b, spec.a)
            Cn = l_path(h, w, w + h - i, variation=flipped.descriptor(),
                        params={"l": C.params.get("l")})
            inner = generate_cab(flipped, Cn, model)
            A, plan = _oriented(C, Cn, inner.automaton, inner.plan)
        elif model == "tr" and i == 0:
            plan, A = _cab_direct(spec, C, "tr",
                                  lambda s, c, m: _plan_glsp_ab_yes(s, c))
        else:
            plan, A = _cab_direct(spec, C, model, _plan_glsp_ab)
    elif f in ("RECT_WALL", "RECT_WALL_ab", "SQ_WALL"):
        plan, A = _cab_direct(spec, C, model, _plan_rect_wall,
                              ratio=f != "RECT_WALL")
    elif f == "gRECT_WALL":
        from .mft import normalize_wall_index
        w, h, i = _wall_params(C)
        w0, h0, i0 = normalize_wall_index(w, h, i)
        Cn = build(spec, w=w0, h=h0, i=i0)
        plan0 = _plan_grect_wall(spec, Cn, model)
        A, plan = _oriented(C, Cn, compile_plan(plan0, model), plan0)
    elif f in ("gRECT_WALL_ab", "gSQ_WALL"):
        w, h, i = _wall_params(C)
        a = spec.a if spec.a is not None else 1
        b = spec.b if spec.b is not None else 1
        if a > b:
            flipped = VariationSpec("gRECT_WALL_ab", b, a)
            from .families import rect_wall
            Cn = rect_wall(h, w, (-i) % (2 * w + 2 * h),
                           variation=flipped.descriptor(),
                           params={"l": C.params.get("l")})
            inner = generate_cab(flipped, Cn, model)
            A, plan = _oriented(C, Cn, inner.automaton, inner.plan)
        else:
            n = 2 * w + 2 * h
            for j in (i, (w - i) % n, (-h - i) % n, (w + h + i) % n):
                if j <= w + h:
                    i0 = j
                    break
            else:  # pragma: no cover - the orbit always meets [0, w+h]
                raise SolutionError("wall index normalization failed")
            from .families import rect_wall
            Cn = rect_wall(w, h, i0, variation=C.variation,
                           params={"l": C.params.get("l")})
            plan0 = _plan_gwall_ab(spec, Cn, model)
            A, plan = _oriented(C, Cn, compile_plan(plan0, model), plan0,
                                names=("id", "flip_x", "flip_y", "rot180"))
    elif f in ("RECT", "SQ", "RECT_ab"):
        plan, A = _cab_direct(spec, C, model, _plan_rect, ratio=f == "RECT_ab")
    elif f == "LSP_C":
        plan, A = _cab_direct(spec, C, model, _plan_lsp_c)
    elif f == "EX1":
        plan, A = _cab_direct(spec, C, model, _plan_ex1)
    elif f in ("EX2A", "EX2B", "EX2C", "EX2D"):
        plan, A = _cab_direct(spec, C, model, _plan_ex2)
    else:
        raise UnsupportedVariation(
            f"no check-and-broadcast construction for {spec.descriptor()}")
    t0 = mft(spec, C, model).value
    return PartialSolution(A, (C,), {C: t0}, plan=plan)


# ---------------------------------------------------------------------------
# Explicit 14-state table


def explicit_lsp32() -> PartialSolution:
    """A 14-state explicit rule table that fires the L-path with arms
    (6, 4) at time 12 and no other ratio-(3, 2) path.

    A pulse R0..R5 runs east from the general; reaching the corner after
    exactly six steps converts it into a wave S6..S12 that floods the
    whole path, reaching every cell by time 12 because no cell is farther
    than six steps from the corner.
    """
    R = [f"R{k}" for k in range(6)]
    S = [f"S{k}" for k in range(6, 13)]
    Q = "Q"
    table: dict = {}
    for k in range(5):
        table[(Q, Q, BOUNDARY, R[k], BOUNDARY)] = R[k + 1]
    table[(Q, BOUNDARY, Q, R[5], BOUNDARY)] = S[0]
    for j in range(6):
        si, sj = S[j], S[j + 1]
        for own in (si, Q):
            for ins in itertools.product((si, Q, BOUNDARY), repeat=4):
                if own == si or si in ins:
                    table[(own,) + ins] = sj
    states = [Q] + R + S
    A = Automaton("explicit-lsp32", "tr", Q, ["S12"], general="R0",
                  table=table, states=states)
    target = l_path(6, 4, 0, variation="LSP_ab:3,2")
    return PartialSolution(A, (target,), {target: 12})


# ---------------------------------------------------------------------------
# Model bridges


def singleton_partials() -> tuple[PartialSolution, PartialSolution]:
    """Minimal synchronizers for the one-cell configuration: the
    boundary-sensitive model fires at time 0, the traditional at time 1."""
    single = Configuration([(0, 0)], (0, 0))
    A_bs = Automaton("single-bs", "bs", "Q", ["F"],
                     lambda s, e, n, w, s_: "F" if s == "F" else "Q",
                     eta={(0, 0, 0, 0): "F"})
    table = {("G", BOUNDARY, BOUNDARY, BOUNDARY, BOUNDARY): "F",
             ("F", BOUNDARY, BOUNDARY, BOUNDARY, BOUNDARY): "F"}
    A_tr = Automaton("single-tr", "tr", "Q", ["F"], general="G", table=table,
                     states=["Q", "G", "F"])
    return (PartialSolution(A_bs, (single,), {single: 0}),
            PartialSolution(A_tr, (single,), {single: 1}))


_ALL_BCS = tuple(itertools.product((0, 1), repeat=4))


def to_traditional(P: PartialSolution) -> PartialSolution:
    """Convert a boundary-sensitive partial solution into a traditional
    one with the same domain and the same firing times.

    Each cell runs sixteen copies of the source automaton, one per
    possible general boundary condition; the general learns its own
    boundary condition at time 1 and broadcasts it, and a cell fires as
    soon as the copy selected by the broadcast value fires.  This
    requires every declared firing time to exceed the radius.
    """
    A = P.automaton
    if A.model != "bs":
        raise SolutionError("to_traditional needs a boundary-sensitive input")
    for C in P.declared_domain:
        if len(C.cells) > 1 and P.ft(C) < C.radius() + 1:
            raise DomainError(
                f"firing time {P.ft(C)} of {C!r} is below radius + 1; the "
                "general-broadcast conversion cannot keep the firing time")
    q = A.quiescent
    GT = ("GT",)
    FT = ("FT",)
    idx = {bc: k for k, bc in enumerate(_ALL_BCS)}

    def copy_input(x, b):
        if x == BOUNDARY:
            return BOUNDARY
        if x == QT:
            return q
        if x == GT:
            return A.eta(b)
        if x == FT:
            return BOUNDARY  # unreachable: runs stop at the first firing
        return x[2][idx[b]]

    QT = "Q"

    def delta(s, *ins):
        if s == FT:
            return FT
        bc = tuple(0 if x == BOUNDARY else 1 for x in ins)
        if s == GT:
            copies = tuple(A.step_cell(A.eta(b), *(copy_input(x, b) for x in ins))
                           for b in _ALL_BCS)
            bstar = bc
        else:
            own = ((q,) * 16 if s == QT else s[2])
            copies = tuple(A.step_cell(own[idx[b]],
                                       *(copy_input(x, b) for x in ins))
                           for b in _ALL_BCS)
            bstar = None if s == QT else s[1]
            if bstar is None:
                for x in ins:
                    if isinstance(x, tuple) and len(x) == 3 and x[0] == "T" \
                            and x[1] is not None:
                        bstar = x[1]
                        break
        if bstar is not None and A.is_firing(copies[idx[bstar]]):
            return FT
        if bstar is None and all(c == q for c in copies):
            return QT
        return ("T", bstar, copies)

    counts = A.state_count()
    A2 = Automaton(f"tr[{A.name}]", "tr", QT, [FT], delta, general=GT,
                   state_count=None if counts is None else counts ** 16 * 17)
    return PartialSolution(A2, P.declared_domain, dict(P.declared_ft))


# ---------------------------------------------------------------------------
# Composition of covering pieces


def cover_composed(pieces, piece_solutions, w: int, h: int) -> FiringOutcome:
    """Run one partial solution per covering piece, each started with its
    activation delay, and merge: the composition fires the filled w x h
    rectangle iff every piece fires at its declared time and the absolute
    times (activation + piece firing time) all coincide.
    """
    rect_cells = {(x, y) for x in range(w + 1) for y in range(h + 1)}
    covered: set[Cell] = set()
    absolute: dict[Cell, int] = {}
    for piece, sol in zip(pieces, piece_solutions):
        Cp = piece.configuration()
        out = firing_time(Cp, sol.automaton, horizon=2 * sol.ft(Cp) + 2)
        if not isinstance(out, FiredAt):
            if isinstance(out, PrematureOrPartial):
                return out
            return NoFireWithinHorizon(out.horizon + piece.activation)
        for v in Cp.cells:
            t_abs = piece.activation + out.t
            if v in absolute and absolute[v] != t_abs:
                return PrematureOrPartial(v, min(absolute[v], t_abs))
            absolute[v] = t_abs
        covered |= Cp.cells
    if covered != rect_cells:
        missing = canonical_order(rect_cells - covered)[0]
        return PrematureOrPartial(missing, -1)
    times = set(absolute.values())
    if len(times) != 1:
        worst = min(times)
        cell = canonical_order([v for v, t in absolute.items() if t == worst])[0]
        return PrematureOrPartial(cell, worst)
    return FiredAt(times.pop())
