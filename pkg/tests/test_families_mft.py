"""Configuration families and minimum-firing-time formulas."""

import pytest
from hypothesis import given, settings, strategies as st

from fssplab.families import (VariationSpec, build, enumerate_members,
                              ex2_census, l_path, member, rect, rect_wall)
from fssplab.mft import OpenProblem, mft


def test_l_path_structure():
    C = l_path(3, 2, 1)
    assert C.general == (1, 0)
    assert C.label(0) == (0, 0) and C.label(3) == (3, 0)
    assert C.label(5) == (3, 2)
    assert len(C.cells) == 6


def test_membership_is_translation_invariant():
    spec = VariationSpec("LSP_ab", a=2, b=3)
    C = l_path(4, 6)
    assert member(spec, C)
    moved = type(C)({(x + 7, y - 2) for (x, y) in C.cells}, (7, -2))
    assert member(spec, moved)
    assert not member(spec, l_path(4, 5))


@given(st.integers(1, 8), st.integers(1, 8))
@settings(max_examples=30, deadline=None)
def test_mft_lsp_and_wall_values(w, h):
    assert mft(VariationSpec("LSP"), l_path(w, h)).value == 2 * (w + h)
    assert mft(VariationSpec("RECT_WALL"),
               rect_wall(w, h)).value == w + h + max(w, h)


@given(st.integers(1, 6), st.integers(1, 6), st.data())
@settings(max_examples=40, deadline=None)
def test_mft_glsp_general_position(w, h, data):
    i = data.draw(st.integers(0, w + h))
    value = mft(VariationSpec("gLSP"), l_path(w, h, i)).value
    assert value == max(w + h + i, 2 * (w + h) - i)
    # at least the eccentricity from the general
    assert value >= max(i, w + h - i)


def test_mft_ratio_paths():
    assert mft(VariationSpec("LSP_ab", a=3, b=2), l_path(6, 4)).value == 12
    assert mft(VariationSpec("LSP_ab", a=2, b=3), l_path(4, 6)).value == 10


def test_grect_ab_is_open():
    spec = VariationSpec("gRECT_ab", a=2, b=3)
    with pytest.raises(OpenProblem):
        mft(spec, rect(4, 6, (1, 1)))


def test_enumerate_members_are_members():
    for spec in (VariationSpec("gLSP_ab", a=2, b=3),
                 VariationSpec("gRECT_WALL"), VariationSpec("EX2C")):
        members = list(enumerate_members(spec, 4))
        assert members
        for C in members:
            assert member(spec, C)


def test_ex2_census_matches_configuration():
    for kind in ("EX2A", "EX2B", "EX2C", "EX2D"):
        C = build(VariationSpec(kind), w=4)
        assert len(C.cells) == ex2_census(kind, 4)
