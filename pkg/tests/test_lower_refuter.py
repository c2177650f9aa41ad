"""Available-information lower bounds and the pumping refuter."""

import pytest
from hypothesis import given, settings, strategies as st

from fssplab.engine import Automaton, simulate
from fssplab.families import VariationSpec, build, l_path
from fssplab.lower_bound import (ai_equal, available_info, find_witness,
                                 render_local_map, verify_mft_lower)
from fssplab.line import generic_solution
from fssplab.refuter import (NotASolution, NotMinimal, RefuterError,
                             RepetitionCertificate, diagonal_cells,
                             find_repetition, pump_chain_check,
                             refute_minimality, sss_bounds)


def test_available_info_quiescent_outside_light_cone():
    C = l_path(5, 3)
    ai = available_info(C, (5, 3), 5)
    assert ai.quiescent


@given(st.integers(1, 5), st.integers(1, 5), st.integers(0, 10))
@settings(max_examples=30, deadline=None)
def test_ai_equal_is_reflexive(w, h, t):
    C = l_path(w, h)
    for v in list(C.cells)[:3]:
        assert ai_equal(available_info(C, v, t), available_info(C, v, t))


def test_named_witnesses():
    w1 = find_witness(VariationSpec("LSP"), l_path(3, 1), 7)
    assert w1 is not None and w1.verify()
    assert w1.C2.params["w"] == 3 and w1.C2.params["h"] == 5
    w2 = find_witness(VariationSpec("gLSP_ab", a=2, b=3), l_path(4, 6, 2),
                      9, 4)
    assert w2 is not None and w2.verify()
    assert (w2.C2.params["w"], w2.C2.params["h"], w2.C2.params["i"]) \
        == (6, 9, 4)
    assert (w2.v, w2.v2) == (l_path(4, 6, 2).label(8),
                             l_path(6, 9, 4).label(10))


def test_render_local_map_marks_general_and_cell():
    ai = available_info(l_path(3, 2), (1, 0), 4)
    art = render_local_map(ai)
    assert "G" in art and "*" in art and "time 4" in art


def test_verify_mft_lower_samples():
    for spec, C in ((VariationSpec("LSP"), l_path(2, 3)),
                    (VariationSpec("gLSP"), l_path(3, 3, 4))):
        w = verify_mft_lower(spec, C)
        assert w is not None and w.verify()


def test_certificate_requires_order():
    with pytest.raises(RefuterError):
        RepetitionCertificate(5, 5, 2, 1, ())


def test_diagonal_cells_paths_and_walls():
    C = l_path(3, 2)
    assert diagonal_cells(C) == [(0, 0), (1, 0), (2, 0), (3, 0), (3, 1),
                                 (3, 2)]
    D = build(VariationSpec("EX2C"), w=2)
    cells = diagonal_cells(D, "EX2C")
    assert cells[0] == D.label(0) and len(cells) == 5


def test_find_repetition_pigeonhole():
    # two states on the diagonal guarantee a window repeat within 5 samples
    A = Automaton("flip", "tr", 0, {1}, lambda s, *ins: 1 - s
                  if any(x == 1 for x in ins) or s == 1 else 0,
                  general=1, state_count=2)
    C = l_path(8, 4)
    tr = simulate(C, A, horizon=13)
    cert = find_repetition(tr, 1, range(0, 12))
    assert cert is not None and cert.t0 < cert.t1


def test_pump_chain_clean_on_generic_solution():
    spec = VariationSpec("LSP_ab", a=1, b=1)
    C = build(spec, l=10)
    tr = simulate(C, generic_solution(spec), horizon=2 * (C.radius() + 2))
    cert = find_repetition(tr, 2, range(11, 20))
    assert cert is not None
    chain = pump_chain_check(tr, cert)
    assert chain.ok and not chain.forces_premature


def test_refute_minimality_verdicts():
    spec = VariationSpec("LSP_ab", a=1, b=2)
    rep = refute_minimality(generic_solution(spec), spec, 8)
    assert isinstance(rep.verdict, NotMinimal)
    assert "not minimal-time" in rep.render()


def test_refute_detects_nonsolution():
    spec = VariationSpec("LSP_ab", a=1, b=1)
    A = Automaton("dead", "tr", "Q", {"F"},
                  lambda s, *ins: s, general="G", state_count=3)
    rep = refute_minimality(A, spec, 4)
    assert isinstance(rep.verdict, NotASolution)


def test_sss_bounds_examples():
    s11 = VariationSpec("LSP_ab", a=1, b=1)
    assert sss_bounds(s11, build(s11, l=2)) == (1, 36)
    s12 = VariationSpec("LSP_ab", a=1, b=2)
    assert sss_bounds(s12, build(s12, l=5)) == (3, 102)
    with pytest.raises(RefuterError):
        sss_bounds(VariationSpec("LSP_ab", a=2, b=1), l_path(4, 2))
