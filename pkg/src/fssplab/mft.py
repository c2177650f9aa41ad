"""Closed-form minimum firing times for every supported variation.

Values come out of the case analyses for the respective families; for all
nonsingleton members of the supported families the two models (traditional
and boundary-sensitive) agree, because either the general's boundary
condition is constant across the family or the value exceeds radius + 1,
so a single number is returned with model tag "both".
"""

from __future__ import annotations

from dataclasses import dataclass

from .families import FamilyError, VariationSpec, member, rect_wall
from .grid import Configuration


class OpenProblem(Exception):
    """The minimum firing time for this variation is not known."""


@dataclass(frozen=True)
class MftResult:
    value: int
    case_label: str
    model: str = "both"


def _path_params(C: Configuration) -> tuple[int, int, int]:
    """(w, h, general index) for an L-path configuration."""
    w = max(v[0] for v in C.cells)
    h = max(v[1] for v in C.cells)
    gx, gy = C.general
    i = gx if gy == 0 else w + gy
    return w, h, i


def _wall_params(C: Configuration) -> tuple[int, int, int]:
    """(w, h, general ring index) for a rectangular-wall configuration."""
    w = max(v[0] for v in C.cells)
    h = max(v[1] for v in C.cells)
    ring = rect_wall(w, h)
    n = 2 * w + 2 * h
    for j in range(n):
        if ring.labels[j] == C.general:
            return w, h, j
    raise FamilyError(f"general {C.general} not on the ({w},{h}) wall")


def _rect_params(C: Configuration) -> tuple[int, int, int, int]:
    w = max(v[0] for v in C.cells)
    h = max(v[1] for v in C.cells)
    return w, h, C.general[0], C.general[1]


# -- family formulas --------------------------------------------------------


def mft_lsp(w: int, h: int) -> int:
    return 2 * (w + h)


def mft_glsp(w: int, h: int, i: int) -> int:
    return max(w + h + i, 2 * (w + h) - i)


def mft_lsp_ab(a: int, b: int, w: int, h: int) -> int:
    return 2 * w if a > b else w + h


def mft_glsp_ab(a: int, b: int, w: int, h: int, i: int) -> int:
    if a > b:
        # East-west / north-south exchange maps the family onto its mirror.
        return mft_glsp_ab(b, a, h, w, w + h - i)
    if i < 2 * w:
        return w + h
    return i - w + h


def mft_rect_wall(w: int, h: int) -> int:
    return w + h + max(w, h)


def mft_grect_wall(w: int, h: int, i: int) -> int:
    w, h, i = normalize_wall_index(w, h, i)
    if i <= w:
        return w + 2 * h
    if h <= 2 * w:
        if i <= h:
            return -i + 2 * w + 2 * h
        if i <= 2 * w:
            return 2 * w + h
        return i + h
    # 2w < h; branch on 2i vs 2w + h (exact integer comparison, the case
    # boundary sits at the half-integer w + h/2 when h is odd).
    if 2 * i <= 2 * w + h:
        return -i + 2 * w + 2 * h
    return i + h


def normalize_wall_index(w: int, h: int, i: int) -> tuple[int, int, int]:
    """Map (w, h, i) into the fundamental domain w <= h, 0 <= i <= w + h.

    The rectangle's symmetries act on the general's ring index (indices
    counterclockwise from the southwest corner): flipping east-west sends
    i to w - i, flipping north-south sends i to -h - i, and transposing
    the rectangle sends i to -i on the (h, w) ring.
    """
    n = 2 * w + 2 * h
    i %= n
    candidates = []
    for j in (i, w - i, -h - i, w + h + i):
        j %= n
        if j <= w + h:
            candidates.append((w, h, j))
    for j in (-i, h + i, i - w, w + h - i):
        j %= n
        if j <= w + h:
            candidates.append((h, w, j))
    best = [c for c in candidates if c[0] <= c[1]]
    if not best:
        raise FamilyError(f"cannot normalize wall index ({w}, {h}, {i})")
    return min(best)


def mft_grect(w: int, h: int, r: int, s: int) -> int:
    r = min(r, w - r)
    s = min(s, h - s)
    return w + h + max(w, h) - r - s


def mft_gsq(w: int, r: int, s: int) -> int:
    r = min(r, w - r)
    s = min(s, w - s)
    r, s = sorted((r, s))
    return 2 * w - min(r, s - r)


# -- dispatch ----------------------------------------------------------------


def mft(spec: VariationSpec, C: Configuration, model: str = "both") -> MftResult:
    """Minimum firing time of C within its variation.

    Raises OpenProblem for gRECT_ab with a != b and FamilyError when C is
    not a member of spec.
    """
    if model not in ("tr", "bs", "both"):
        raise FamilyError(f"unknown model {model!r}")
    if not member(spec, C):
        raise FamilyError(f"{C!r} is not a member of {spec.descriptor()}")
    f = spec.family
    if f == "LSP":
        w, h, _ = _path_params(C)
        return MftResult(mft_lsp(w, h), "2(w+h)")
    if f == "gLSP":
        w, h, i = _path_params(C)
        return MftResult(mft_glsp(w, h, i), "max{w+h+i, 2w+2h-i}")
    if f == "LSP_ab":
        w, h, _ = _path_params(C)
        label = "2w (a>b)" if spec.a > spec.b else "w+h (a<=b)"
        return MftResult(mft_lsp_ab(spec.a, spec.b, w, h), label)
    if f == "gLSP_ab":
        w, h, i = _path_params(C)
        return MftResult(mft_glsp_ab(spec.a, spec.b, w, h, i), "piecewise-arm")
    if f == "RECT_WALL":
        w, h, _ = _wall_params(C)
        return MftResult(mft_rect_wall(w, h), "w+h+max{w,h}")
    if f == "gRECT_WALL":
        w, h, i = _wall_params(C)
        return MftResult(mft_grect_wall(w, h, i), "piecewise-wall")
    if f in ("RECT_WALL_ab", "SQ_WALL", "gRECT_WALL_ab", "gSQ_WALL"):
        w, h, _ = _wall_params(C)
        return MftResult(w + h, "w+h")
    if f in ("RECT", "SQ"):
        w, h, _, _ = _rect_params(C)
        return MftResult(w + h + max(w, h), "w+h+max{w,h}")
    if f == "gRECT":
        w, h, r, s = _rect_params(C)
        return MftResult(mft_grect(w, h, r, s), "w+h+max{w,h}-r-s")
    if f == "gSQ":
        w, _, r, s = _rect_params(C)
        return MftResult(mft_gsq(w, r, s), "2w-min{r,s-r}")
    if f == "RECT_ab":
        w, h, _, _ = _rect_params(C)
        return MftResult(w + h, "w+h")
    if f == "gRECT_ab":
        if spec.a != spec.b:
            raise OpenProblem(
                "minimum firing time for ratio-restricted rectangles with "
                "unequal ratios and free general placement is unknown")
        w, _, r, s = _rect_params(C)
        return MftResult(mft_gsq(w, r, s), "2w-min{r,s-r}")
    if f == "LSP_C":
        w, h, _ = _path_params(C)
        return MftResult(w + h, "w+h")
    if f == "EX1":
        w = max(v[0] for v in C.cells)
        return MftResult(2 * w, "2w")
    if f in ("EX2A", "EX2B", "EX2C", "EX2D"):
        w = max(v[0] for v in C.cells)
        return MftResult(2 * w, "2w = rad")
    raise FamilyError(f"no formula for family {f!r}")


def lemma1_consistent(bs_value: int, tr_value: int) -> bool:
    """The model-bridge inequalities bs <= tr <= bs + 1."""
    return bs_value <= tr_value <= bs_value + 1


def mft_bounds_consistency(spec: VariationSpec, C: Configuration) -> bool:
    """Check the model-bridge inequalities for the formula pair on C."""
    if len(C.cells) == 1:
        return lemma1_consistent(0, 1)
    bs = mft(spec, C, "bs").value
    tr = mft(spec, C, "tr").value
    return lemma1_consistent(bs, tr)
