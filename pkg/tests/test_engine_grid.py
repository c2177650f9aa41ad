"""Engine and grid basics: serialization round-trips, simulation
semantics, symmetry transport, and the product construction."""

import pytest
from hypothesis import given, settings, strategies as st

from fssplab.engine import (Automaton, FiredAt, SYMMETRIES, firing_time,
                            product, simulate, transform_automaton,
                            transform_configuration, validate)
from fssplab.families import l_path, rect_wall
from fssplab.grid import Configuration
from fssplab.solutions import explicit_lsp32


def test_configuration_roundtrip():
    C = l_path(4, 3, 2)
    D = Configuration.parse(C.serialize())
    assert D == C and D.labels == C.labels and D.params == C.params


def test_configuration_requires_connectivity():
    with pytest.raises(Exception):
        Configuration([(0, 0), (2, 0)], (0, 0))


def test_automaton_table_roundtrip():
    A = explicit_lsp32().automaton
    B = Automaton.parse(A.serialize())
    assert B.state_count() == A.state_count()
    assert firing_time(l_path(6, 4), B, horizon=20) == FiredAt(12)


def test_validate_explicit_table():
    assert validate(explicit_lsp32().automaton) == []


def test_trace_rows_and_state_access():
    C = l_path(6, 4)
    tr = simulate(C, explicit_lsp32().automaton, horizon=12)
    assert tr.state((0, 0), 0) != explicit_lsp32().automaton.quiescent
    assert all(s == ("F",) or s == "F" or s in
               explicit_lsp32().automaton.firing
               for s in tr.row(12).values())


@given(st.sampled_from(sorted(SYMMETRIES)), st.integers(1, 5),
       st.integers(1, 5))
@settings(max_examples=25, deadline=None)
def test_symmetry_transport_preserves_firing(name, w, h):
    # the transformed automaton fires the transformed configuration at
    # the same time the original fires the original
    A = explicit_lsp32().automaton
    C = l_path(6, 4)
    out = firing_time(transform_configuration(C, name),
                      transform_automaton(A, name), horizon=16)
    assert out == FiredAt(12), (name, out)


def test_product_either_fires_at_min():
    A = explicit_lsp32().automaton
    P = product(A, A, fire_rule="either")
    assert firing_time(l_path(6, 4), P, horizon=16) == FiredAt(12)


def test_wall_labels_wrap_both_ways():
    C = rect_wall(3, 2)
    n = 2 * (3 + 2)
    for j in range(n):
        assert C.label(j) == C.label(j - n)
