"""Grid geometry: cells, adjacency, BFS distances, radius, boundary conditions.

Cells are (x, y) integer pairs.  Direction index order is fixed repo-wide as
east, north, west, south.
"""

from __future__ import annotations

from collections import deque
from typing import Iterable, Iterator

Cell = tuple[int, int]
BoundaryCondition = tuple[int, int, int, int]

# Direction offsets, index order: east, north, west, south.
DIRECTIONS: tuple[Cell, ...] = ((1, 0), (0, 1), (-1, 0), (0, -1))


class GridError(Exception):
    """Base error for grid geometry problems."""


class CellNotInConfiguration(GridError):
    def __init__(self, cell: Cell):
        super().__init__(f"cell {cell} is not in the configuration")
        self.cell = cell


class InvalidConfiguration(GridError):
    pass


def neighbors(cell: Cell) -> tuple[Cell, Cell, Cell, Cell]:
    x, y = cell
    return ((x + 1, y), (x, y + 1), (x - 1, y), (x, y - 1))


def canonical_order(cells: Iterable[Cell]) -> list[Cell]:
    """Lexicographic (y, then x) ordering used for all serialization."""
    return sorted(cells, key=lambda c: (c[1], c[0]))


class Configuration:
    """A finite connected set of grid cells with a designated general cell.

    Optionally tagged with a variation name and parameters, and with node
    labels (index -> cell) for path/wall families.
    """

    def __init__(
        self,
        cells: Iterable[Cell],
        general: Cell,
        variation: str | None = None,
        params: dict | None = None,
        labels: dict[int, Cell] | None = None,
    ):
        self.cells: frozenset[Cell] = frozenset(cells)
        self.general: Cell = general
        self.variation = variation
        self.params = dict(params) if params else {}
        self.labels = dict(labels) if labels else {}
        self._dist_cache: dict[Cell, dict[Cell, int]] = {}
        if not self.cells:
            raise InvalidConfiguration("configuration must be nonempty")
        if general not in self.cells:
            raise InvalidConfiguration(f"general {general} not among cells")
        if not self.is_connected():
            raise InvalidConfiguration("cells are not 4-connected")

    # -- basic structure ---------------------------------------------------

    def __len__(self) -> int:
        return len(self.cells)

    def __contains__(self, cell: Cell) -> bool:
        return cell in self.cells

    def __iter__(self) -> Iterator[Cell]:
        return iter(canonical_order(self.cells))

    def __eq__(self, other) -> bool:
        if not isinstance(other, Configuration):
            return NotImplemented
        return self.cells == other.cells and self.general == other.general

    def __hash__(self) -> int:
        return hash((self.cells, self.general))

    def __repr__(self) -> str:
        tag = self.variation or "config"
        return f"<{tag} |C|={len(self.cells)} general={self.general}>"

    def is_connected(self) -> bool:
        seen = {self.general}
        queue = deque([self.general])
        while queue:
            v = queue.popleft()
            for n in neighbors(v):
                if n in self.cells and n not in seen:
                    seen.add(n)
                    queue.append(n)
        return len(seen) == len(self.cells)

    def label(self, i: int) -> Cell:
        """Resolve a node label index to its cell."""
        if i not in self.labels:
            raise GridError(f"no node label {i} in this configuration")
        return self.labels[i]

    # -- metric ------------------------------------------------------------

    def distances_from(self, source: Cell) -> dict[Cell, int]:
        """All-destinations BFS from source, memoized per source."""
        if source not in self.cells:
            raise CellNotInConfiguration(source)
        cached = self._dist_cache.get(source)
        if cached is not None:
            return cached
        dist = {source: 0}
        queue = deque([source])
        while queue:
            v = queue.popleft()
            dv = dist[v]
            for n in neighbors(v):
                if n in self.cells and n not in dist:
                    dist[n] = dv + 1
                    queue.append(n)
        self._dist_cache[source] = dist
        return dist

    def distance(self, v: Cell, v2: Cell) -> int:
        if v2 not in self.cells:
            raise CellNotInConfiguration(v2)
        return self.distances_from(v)[v2]

    def distance_via(self, v: Cell, v2: Cell, v3: Cell) -> int:
        """distance(v, v3) + distance(v3, v2)."""
        return self.distance(v, v3) + self.distance(v3, v2)

    def radius(self) -> int:
        return max(self.distances_from(self.general).values())

    def boundary_condition(self, v: Cell) -> BoundaryCondition:
        if v not in self.cells:
            raise CellNotInConfiguration(v)
        e, n, w, s = neighbors(v)
        return (
            1 if e in self.cells else 0,
            1 if n in self.cells else 0,
            1 if w in self.cells else 0,
            1 if s in self.cells else 0,
        )

    # -- serialization -----------------------------------------------------

    def serialize(self) -> str:
        lines = ["configuration"]
        if self.variation:
            lines.append(f"variation {self.variation}")
        for key in sorted(self.params):
            lines.append(f"param {key} {self.params[key]}")
        lines.append(f"general {self.general[0]} {self.general[1]}")
        for c in canonical_order(self.cells):
            lines.append(f"cell {c[0]} {c[1]}")
        for i in sorted(self.labels):
            c = self.labels[i]
            lines.append(f"label {i} {c[0]} {c[1]}")
        return "\n".join(lines) + "\n"

    @classmethod
    def parse(cls, text: str) -> "Configuration":
        cells: list[Cell] = []
        general: Cell | None = None
        variation = None
        params: dict = {}
        labels: dict[int, Cell] = {}
        lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
        if not lines or lines[0] != "configuration":
            raise InvalidConfiguration("missing 'configuration' header")
        for ln in lines[1:]:
            parts = ln.split()
            kind = parts[0]
            if kind == "variation":
                variation = parts[1]
            elif kind == "param":
                try:
                    params[parts[1]] = int(parts[2])
                except ValueError:
                    params[parts[1]] = parts[2]
            elif kind == "general":
                general = (int(parts[1]), int(parts[2]))
            elif kind == "cell":
                cells.append((int(parts[1]), int(parts[2])))
            elif kind == "label":
                labels[int(parts[1])] = (int(parts[2]), int(parts[3]))
            else:
                raise InvalidConfiguration(f"unknown record {kind!r}")
        if general is None:
            raise InvalidConfiguration("missing general record")
        return cls(cells, general, variation=variation, params=params, labels=labels)
