"""Constructed partial solutions and the line-based generic solutions."""

import pytest

from fssplab.engine import (FiredAt, NoFireWithinHorizon, default_horizon,
                            firing_time)
from fssplab.families import VariationSpec, build, enumerate_members, l_path
from fssplab.grid import Configuration
from fssplab.line import (UnsupportedFamily, bend_line, ex2d_minimal,
                          generic_solution, ignition_line, minimal_line)
from fssplab.mft import mft
from fssplab.solutions import (evaluate_plan, generate_cab, explicit_lsp32,
                               singleton_partials, to_traditional)


def _kind(out):
    if isinstance(out, FiredAt):
        return ("fired", out.t)
    if isinstance(out, NoFireWithinHorizon):
        return ("nofire",)
    return ("partial", out.cell, out.t)


def test_cab_fires_target_and_only_target():
    spec = VariationSpec("gLSP_ab", a=2, b=3)
    members = list(enumerate_members(spec, 3))
    C = members[len(members) // 2]
    sol = generate_cab(spec, C)
    want = mft(spec, C, "tr").value
    assert firing_time(C, sol.automaton,
                       horizon=want + 4) == FiredAt(want)
    for D in members:
        if D != C:
            assert _kind(evaluate_plan(sol.plan, D, "tr")) == ("nofire",)


def test_evaluate_plan_agrees_with_simulation():
    spec = VariationSpec("RECT_WALL")
    for C in enumerate_members(spec, 3):
        sol = generate_cab(spec, C)
        predicted = _kind(evaluate_plan(sol.plan, C, "tr"))
        simulated = _kind(firing_time(C, sol.automaton,
                                      horizon=default_horizon(C)))
        assert predicted == simulated


def test_explicit_table_is_14_states():
    sol = explicit_lsp32()
    assert sol.automaton.state_count() == 14
    assert firing_time(l_path(6, 4), sol.automaton, horizon=16) == FiredAt(12)


def test_singletons_and_bridge():
    bs, tr = singleton_partials()
    single = Configuration([(0, 0)], (0, 0))
    assert firing_time(single, bs.automaton, horizon=4) == FiredAt(0)
    assert firing_time(single, tr.automaton, horizon=4) == FiredAt(1)


def test_to_traditional_preserves_firing_time():
    spec = VariationSpec("LSP")
    C = l_path(3, 2)
    sol = generate_cab(spec, C, "bs")
    conv = to_traditional(sol)
    want = mft(spec, C, "bs").value
    assert firing_time(C, sol.automaton, horizon=want + 4) == FiredAt(want)
    assert firing_time(C, conv.automaton, horizon=want + 4) == FiredAt(want)


def test_minimal_line_small_sizes():
    A = minimal_line()
    for n in range(1, 12):
        C = Configuration({(x, 0) for x in range(n)}, (0, 0))
        want = 1 if n == 1 else 2 * n - 2
        assert firing_time(C, A, horizon=want + 4) == FiredAt(want), n


def test_bend_line_rejects_foreign_automata():
    with pytest.raises(UnsupportedFamily):
        bend_line(explicit_lsp32().automaton)
    A = minimal_line()
    assert firing_time(l_path(3, 2), bend_line(A), horizon=24) == FiredAt(10)


def test_ignition_line_mid_general():
    A = ignition_line()
    for (w, h, i) in ((3, 2, 1), (4, 4, 4), (2, 5, 6)):
        C = l_path(w, h, i)
        lower = mft(VariationSpec("gLSP"), C).value
        out = firing_time(C, A, horizon=6 * (C.radius() + 2))
        assert isinstance(out, FiredAt) and out.t >= lower, (w, h, i, out)


def test_generic_solution_fires_members_synchronously():
    for spec in (VariationSpec("LSP"), VariationSpec("RECT_WALL_ab", a=2, b=2),
                 VariationSpec("gLSP")):
        A = generic_solution(spec)
        for C in enumerate_members(spec, 3):
            lower = mft(spec, C, "tr").value
            out = firing_time(C, A, horizon=6 * (C.radius() + 2))
            assert isinstance(out, FiredAt) and out.t >= lower, \
                (spec.descriptor(), C.params, out)


def test_generic_solution_unsupported():
    with pytest.raises(UnsupportedFamily):
        generic_solution(VariationSpec("RECT_ab", a=1, b=1))


def test_ex2d_minimal_small():
    A = ex2d_minimal()
    C = build(VariationSpec("EX2D"), w=4)
    assert firing_time(C, A, horizon=12) == FiredAt(8)
