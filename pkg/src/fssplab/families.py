"""Configuration families: constructors, membership predicates, enumeration.

Families of configurations over which synchronization problems are posed:

* L-shaped paths (``LSP`` and friends): a horizontal arm of length w from
  p_0=(0,0) east to the corner p_w=(w,0), then a vertical arm of length h
  north to p_{w+h}=(w,h).  The general sits at node p_i.
* Rectangular walls (``RECT_WALL`` and friends): the perimeter ring of a
  (w+1) x (h+1) rectangle, 2w+2h cells, node indices understood modulo
  2w+2h, walking counterclockwise from p_0=(0,0) (so p_w is the southeast
  corner, p_{w+h} the northeast corner and p_{-h} the northwest corner).
* Filled rectangles (``RECT`` and friends): all cells (x,y), 0<=x<=w,
  0<=y<=h.
* Corner-anchored L-paths ``LSP_C`` with arms a*l+c und b*l+d and the
  general at the corner.
* Example families ``EX1`` (very wide thin L-paths) and ``EX2A..EX2D``
  (even-width squares with period-2 slit/hole patterns; the perimeter wall
  is always intact and the general is the southwest corner).

Ratio-parametrized families (``*_ab``) restrict (w, h) to (a*l, b*l).
Generalized families (``g*``) allow every general placement.
"""

from __future__ import annotations

from typing import Iterator

from .grid import Cell, Configuration, canonical_order

FAMILIES = (
    "LSP", "gLSP", "LSP_ab", "gLSP_ab",
    "RECT_WALL", "gRECT_WALL", "RECT_WALL_ab", "gRECT_WALL_ab",
    "SQ_WALL", "gSQ_WALL",
    "RECT", "gRECT", "RECT_ab", "gRECT_ab", "SQ", "gSQ",
    "LSP_C", "EX1", "EX2A", "EX2B", "EX2C", "EX2D",
)

RATIO_FAMILIES = {"LSP_ab", "gLSP_ab", "RECT_WALL_ab", "gRECT_WALL_ab",
                  "RECT_ab", "gRECT_ab", "LSP_C"}
OFFSET_FAMILIES = {"LSP_C"}


class FamilyError(Exception):
    """Parameter or membership violation for a configuration family."""


class VariationSpec:
    """A family identifier plus its ratio/offset parameters."""

    def __init__(self, family: str, a: int | None = None, b: int | None = None,
                 c: int | None = None, d: int | None = None):
        if family not in FAMILIES:
            raise FamilyError(f"unknown family {family!r}")
        self.family = family
        self.a, self.b, self.c, self.d = a, b, c, d
        if family in RATIO_FAMILIES:
            if a is None or b is None or a < 1 or b < 1:
                raise FamilyError(f"{family} needs ratio parameters a, b >= 1")
        elif a is not None or b is not None:
            raise FamilyError(f"{family} takes no ratio parameters")
        if family in OFFSET_FAMILIES:
            if c is None or d is None or c < 0 or d < 0:
                raise FamilyError(f"{family} needs offsets c, d >= 0")
        elif c is not None or d is not None:
            raise FamilyError(f"{family} takes no offset parameters")

    def __repr__(self) -> str:
        return f"VariationSpec({self.descriptor()!r})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, VariationSpec):
            return NotImplemented
        return (self.family, self.a, self.b, self.c, self.d) == \
               (other.family, other.a, other.b, other.c, other.d)

    def __hash__(self) -> int:
        return hash((self.family, self.a, self.b, self.c, self.d))

    def descriptor(self) -> str:
        """Compact one-line form, e.g. ``LSP_ab:3,2`` or ``LSP_C:3,2;1,2``."""
        if self.family in OFFSET_FAMILIES:
            return f"{self.family}:{self.a},{self.b};{self.c},{self.d}"
        if self.family in RATIO_FAMILIES:
            return f"{self.family}:{self.a},{self.b}"
        return self.family

    @classmethod
    def parse(cls, text: str) -> "VariationSpec":
        text = text.strip()
        if ":" not in text:
            return cls(text)
        name, rest = text.split(":", 1)
        if ";" in rest:
            ab, cd = rest.split(";", 1)
            a, b = (int(x) for x in ab.split(","))
            c, d = (int(x) for x in cd.split(","))
            return cls(name, a, b, c, d)
        a, b = (int(x) for x in rest.split(","))
        return cls(name, a, b)

    # Delegates, so specs read naturally at call sites.
    def build(self, **params) -> Configuration:
        return build(self, **params)

    def member(self, C: Configuration) -> bool:
        return member(self, C)

    def enumerate_members(self, max_scale: int) -> Iterator[Configuration]:
        return enumerate_members(self, max_scale)


# ---------------------------------------------------------------------------
# Base geometry constructors


def l_path(w: int, h: int, i: int = 0, variation: str | None = None,
           params: dict | None = None) -> Configuration:
    """L-shaped path with arm lengths w (east) and h (north), general p_i."""
    if w < 1 or h < 1:
        raise FamilyError(f"L-path needs w, h >= 1, got ({w}, {h})")
    if not 0 <= i <= w + h:
        raise FamilyError(f"general index {i} outside 0..{w + h}")
    labels: dict[int, Cell] = {}
    for j in range(w + 1):
        labels[j] = (j, 0)
    for j in range(1, h + 1):
        labels[w + j] = (w, j)
    p = dict(params or {})
    p.update(w=w, h=h, i=i)
    return Configuration(labels.values(), labels[i],
                         variation=variation or "l_path", params=p, labels=labels)


def rect_wall(w: int, h: int, i: int = 0, variation: str | None = None,
              params: dict | None = None) -> Configuration:
    """Perimeter ring of a (w+1) x (h+1) rectangle; indices modulo 2w+2h."""
    if w < 1 or h < 1:
        raise FamilyError(f"wall needs w, h >= 1, got ({w}, {h})")
    n = 2 * w + 2 * h
    ring: list[Cell] = []
    for j in range(w):
        ring.append((j, 0))
    for j in range(h):
        ring.append((w, j))
    for j in range(w):
        ring.append((w - j, h))
    for j in range(h):
        ring.append((0, h - j))
    labels: dict[int, Cell] = {}
    for j, cell in enumerate(ring):
        labels[j] = cell
        labels[j - n] = cell
    i = i % n
    p = dict(params or {})
    p.update(w=w, h=h, i=i)
    return Configuration(ring, ring[i], variation=variation or "rect_wall",
                         params=p, labels=labels)


def rect(w: int, h: int, general: Cell = (0, 0), variation: str | None = None,
         params: dict | None = None) -> Configuration:
    """Filled rectangle of all (x, y) with 0 <= x <= w, 0 <= y <= h."""
    if w < 0 or h < 0 or (w == 0 and h == 0 and general != (0, 0)):
        raise FamilyError(f"bad rectangle ({w}, {h})")
    cells = [(x, y) for x in range(w + 1) for y in range(h + 1)]
    r, s = general
    if not (0 <= r <= w and 0 <= s <= h):
        raise FamilyError(f"general {general} outside rectangle ({w}, {h})")
    p = dict(params or {})
    p.update(w=w, h=h, r=r, s=s)
    return Configuration(cells, general, variation=variation or "rect", params=p)


def _ex2_cells(kind: str, w: int) -> set[Cell]:
    """Interior-plus-wall cell set for the EX2 square families.

    All four variants keep the full perimeter of the w x w square and
    delete interior cells in a period-2 pattern:

    * ``EX2A``: a triangular comb -- even columns x carry a corridor of
      height x rising from the south wall.
    * ``EX2B``: staircase corridors -- column w-2k carries a corridor of
      height 2k rising from the south wall, for k = 1 .. w/2-1.
    * ``EX2C``: nested L-shaped slits around the main diagonal; the kept
      interior forms even rows attached to the east wall below the
      diagonal and even columns attached to the north wall above it.
    * ``EX2D``: a waffle -- every cell with both coordinates odd is a hole.
    """
    cells: set[Cell] = set()
    for j in range(w + 1):
        cells.update({(j, 0), (j, w), (0, j), (w, j)})
    if kind == "EX2A":
        for x in range(2, w - 1, 2):
            for y in range(1, x + 1):
                cells.add((x, y))
    elif kind == "EX2B":
        for k in range(1, w // 2):
            x = w - 2 * k
            for y in range(1, 2 * k + 1):
                cells.add((x, y))
    elif kind == "EX2C":
        for x in range(1, w):
            for y in range(1, w):
                deleted = (x % 2 == 1 and y >= x) or (y % 2 == 1 and x >= y)
                if not deleted:
                    cells.add((x, y))
    elif kind == "EX2D":
        for x in range(1, w):
            for y in range(1, w):
                if not (x % 2 == 1 and y % 2 == 1):
                    cells.add((x, y))
    else:
        raise FamilyError(f"unknown example family {kind!r}")
    return cells


def ex2(kind: str, w: int) -> Configuration:
    if w < 2 or w % 2 != 0:
        raise FamilyError(f"{kind} needs even w >= 2, got {w}")
    cells = _ex2_cells(kind, w)
    # Wall labels as in rect_wall(w, w), so wall-relative node indices resolve.
    wall = rect_wall(w, w)
    return Configuration(cells, (0, 0), variation=kind, params={"w": w},
                         labels=wall.labels)


# ---------------------------------------------------------------------------
# Family laws


def _require(cond: bool, msg: str) -> None:
    if not cond:
        raise FamilyError(msg)


def build(spec: VariationSpec, **params) -> Configuration:
    """Construct the family member with the given parameters.

    Accepted parameters by family: ``w, h`` (free-size families), ``l``
    (ratio families), ``r`` (EX1), ``w`` (EX2*); generalized families
    additionally take ``i`` (path/wall node index) or ``r, s`` (rectangle
    coordinates).
    """
    f = spec.family
    tag = spec.descriptor()
    if f == "LSP":
        return l_path(params["w"], params["h"], 0, variation=tag)
    if f == "gLSP":
        return l_path(params["w"], params["h"], params["i"], variation=tag)
    if f == "LSP_ab" or f == "gLSP_ab":
        l = params["l"]
        _require(l >= 1, f"{tag} needs l >= 1")
        i = params["i"] if f == "gLSP_ab" else 0
        return l_path(spec.a * l, spec.b * l, i, variation=tag, params={"l": l})
    if f == "RECT_WALL":
        return rect_wall(params["w"], params["h"], 0, variation=tag)
    if f == "gRECT_WALL":
        return rect_wall(params["w"], params["h"], params["i"], variation=tag)
    if f in ("RECT_WALL_ab", "gRECT_WALL_ab", "SQ_WALL", "gSQ_WALL"):
        l = params["l"]
        _require(l >= 2, f"{tag} needs l >= 2")
        a = spec.a if spec.a is not None else 1
        b = spec.b if spec.b is not None else 1
        i = params.get("i", 0) if f.startswith("g") else 0
        return rect_wall(a * l, b * l, i, variation=tag, params={"l": l})
    if f == "RECT":
        return rect(params["w"], params["h"], (0, 0), variation=tag)
    if f == "gRECT":
        return rect(params["w"], params["h"], (params["r"], params["s"]),
                    variation=tag)
    if f in ("RECT_ab", "gRECT_ab"):
        l = params["l"]
        _require(l >= 1, f"{tag} needs l >= 1")
        g = (params.get("r", 0), params.get("s", 0)) if f == "gRECT_ab" else (0, 0)
        return rect(spec.a * l, spec.b * l, g, variation=tag, params={"l": l})
    if f == "SQ":
        return rect(params["w"], params["w"], (0, 0), variation=tag)
    if f == "gSQ":
        return rect(params["w"], params["w"], (params["r"], params["s"]),
                    variation=tag)
    if f == "LSP_C":
        l = params["l"]
        _require(l >= 0, f"{tag} needs l >= 0")
        w = spec.a * l + spec.c
        h = spec.b * l + spec.d
        _require(w >= 1 and h >= 1, f"{tag} member at l={l} has empty arm")
        return l_path(w, h, w, variation=tag, params={"l": l})
    if f == "EX1":
        r = params["r"]
        _require(r >= 1, f"{tag} needs r >= 1")
        w = 2 ** (r * r)
        _require(w - r >= 1, "degenerate example member")
        return l_path(w, w - r, 0, variation=tag, params={"r": r})
    if f in ("EX2A", "EX2B", "EX2C", "EX2D"):
        cfg = ex2(f, params["w"])
        return cfg
    raise FamilyError(f"unhandled family {f!r}")


def _normalize(C: Configuration) -> tuple[frozenset[Cell], Cell]:
    """Translate so the bounding box's southwest corner is at (0, 0)."""
    x0 = min(c[0] for c in C.cells)
    y0 = min(c[1] for c in C.cells)
    cells = frozenset((x - x0, y - y0) for x, y in C.cells)
    return cells, (C.general[0] - x0, C.general[1] - y0)


def member(spec: VariationSpec, C: Configuration) -> bool:
    """True iff C belongs to the variation (shape, ratios, general place)."""
    cells, general = _normalize(C)
    for candidate in _candidates(spec, cells):
        built = None
        try:
            built = build(spec, **candidate)
        except FamilyError:
            continue
        if built.cells == cells and built.general == general:
            return True
    return False


def _candidates(spec: VariationSpec, cells: frozenset[Cell]) -> list[dict]:
    """Parameter candidates consistent with the normalized cell set."""
    w = max(c[0] for c in cells)
    h = max(c[1] for c in cells)
    f = spec.family
    out: list[dict] = []
    if f in ("LSP", "gLSP", "RECT_WALL", "gRECT_WALL", "RECT", "gRECT",
             "SQ", "gSQ"):
        base: dict = {"w": w} if f in ("SQ", "gSQ") else {"w": w, "h": h}
        if f in ("gLSP", "gRECT_WALL"):
            n = (w + h + 1) if f == "gLSP" else (2 * w + 2 * h)
            out = [dict(base, i=i) for i in range(n)]
        elif f in ("gRECT", "gSQ"):
            out = [dict(base, r=r, s=s) for r in range(w + 1) for s in range(h + 1)]
        else:
            out = [base]
    elif f in ("LSP_ab", "gLSP_ab", "RECT_WALL_ab", "gRECT_WALL_ab",
               "RECT_ab", "gRECT_ab", "SQ_WALL", "gSQ_WALL"):
        a = spec.a if spec.a is not None else 1
        b = spec.b if spec.b is not None else 1
        if w % a != 0 or h % b != 0 or w // a != h // b:
            return []
        l = w // a
        if f == "gLSP_ab":
            out = [{"l": l, "i": i} for i in range(w + h + 1)]
        elif f in ("gRECT_WALL_ab", "gSQ_WALL"):
            out = [{"l": l, "i": i} for i in range(2 * w + 2 * h)]
        elif f == "gRECT_ab":
            out = [{"l": l, "r": r, "s": s}
                   for r in range(w + 1) for s in range(h + 1)]
        else:
            out = [{"l": l}]
    elif f == "LSP_C":
        if w < spec.c or (w - spec.c) % spec.a != 0:
            return []
        l = (w - spec.c) // spec.a
        if h != spec.b * l + spec.d:
            return []
        out = [{"l": l}]
    elif f == "EX1":
        r = w - h
        out = [{"r": r}] if r >= 1 else []
    elif f in ("EX2A", "EX2B", "EX2C", "EX2D"):
        out = [{"w": w}] if w == h else []
    return out


def enumerate_members(spec: VariationSpec, max_scale: int) -> Iterator[Configuration]:
    """Yield every member with scale <= max_scale, in increasing scale.

    Scale means: max(w, h) for free-size families, l for ratio families,
    r for EX1, w/2 for the EX2 squares.  Generalized families yield all
    general placements at each size, smallest index first.  The order is
    total and deterministic.
    """
    if max_scale < 1:
        return
    f = spec.family
    for scale in range(0 if f == "LSP_C" else 1, max_scale + 1):
        if f in ("LSP", "gLSP", "RECT_WALL", "gRECT_WALL", "RECT", "gRECT"):
            for w in range(1, max_scale + 1):
                for h in range(1, max_scale + 1):
                    if max(w, h) != scale:
                        continue
                    yield from _placements(spec, w, h)
        elif f in ("SQ", "gSQ"):
            yield from _placements(spec, scale, scale)
        elif f in ("LSP_ab", "gLSP_ab", "RECT_WALL_ab", "gRECT_WALL_ab",
                   "SQ_WALL", "gSQ_WALL", "RECT_ab", "gRECT_ab", "LSP_C"):
            a = spec.a if spec.a is not None else 1
            b = spec.b if spec.b is not None else 1
            l = scale
            try:
                if f == "gLSP_ab":
                    for i in range(a * l + b * l + 1):
                        yield build(spec, l=l, i=i)
                elif f in ("gRECT_WALL_ab", "gSQ_WALL"):
                    for i in range(2 * a * l + 2 * b * l):
                        yield build(spec, l=l, i=i)
                elif f == "gRECT_ab":
                    for r in range(a * l + 1):
                        for s in range(b * l + 1):
                            yield build(spec, l=l, r=r, s=s)
                else:
                    yield build(spec, l=l)
            except FamilyError:
                continue
        elif f == "EX1":
            yield build(spec, r=scale)
        elif f in ("EX2A", "EX2B", "EX2C", "EX2D"):
            yield build(spec, w=2 * scale)
        else:
            raise FamilyError(f"unhandled family {f!r}")


def _placements(spec: VariationSpec, w: int, h: int) -> Iterator[Configuration]:
    f = spec.family
    if f in ("LSP", "RECT_WALL"):
        yield build(spec, w=w, h=h)
    elif f == "gLSP":
        for i in range(w + h + 1):
            yield build(spec, w=w, h=h, i=i)
    elif f == "gRECT_WALL":
        for i in range(2 * w + 2 * h):
            yield build(spec, w=w, h=h, i=i)
    elif f == "RECT":
        yield build(spec, w=w, h=h)
    elif f == "SQ":
        yield build(spec, w=w)
    elif f == "gRECT":
        for r in range(w + 1):
            for s in range(h + 1):
                yield build(spec, w=w, h=h, r=r, s=s)
    elif f == "gSQ":
        for r in range(w + 1):
            for s in range(w + 1):
                yield build(spec, w=w, r=r, s=s)


def ex2_census(kind: str, w: int) -> int:
    """Closed-form cell count for the EX2 families (checked against builds)."""
    wall = 4 * w
    if kind == "EX2A":
        return wall + (w - 2) * w // 4
    if kind == "EX2B":
        return wall + (w * w - 2 * w) // 4
    if kind == "EX2C":
        interior = (w - 1) ** 2
        slits = 0
        for x in range(1, w):
            for y in range(1, w):
                if (x % 2 == 1 and y >= x) or (y % 2 == 1 and x >= y):
                    slits += 1
        return wall + interior - slits
    if kind == "EX2D":
        return wall + (w - 1) ** 2 - (w // 2) ** 2
    raise FamilyError(f"unknown example family {kind!r}")
