"""Named bundled automata, for the CLI and for blanket property sweeps."""

from __future__ import annotations

from .engine import Automaton
from .families import VariationSpec, build, l_path, rect_wall
from .line import ex2d_minimal, ignition_line, minimal_line
from .solutions import explicit_lsp32, generate_cab


def bundled_automata(model: str = "tr") -> dict[str, Automaton]:
    """Every automaton shipped with the package, keyed by a stable name."""
    sq = VariationSpec("LSP_ab", a=1, b=1)
    wall = VariationSpec("RECT_WALL")
    out = {
        "explicit-path-sync": explicit_lsp32().automaton,
        "line": minimal_line(model),
        "line-ignite": ignition_line(model),
        "ex2d": ex2d_minimal(model),
        "cab-path-6-4": generate_cab(VariationSpec("LSP"), l_path(6, 4),
                                     model).automaton,
        "cab-square-path-5": generate_cab(sq, build(sq, l=5),
                                          model).automaton,
        "cab-wall-3-2": generate_cab(wall, rect_wall(3, 2),
                                     model).automaton,
    }
    return out
