"""Triangular-lattice geometry: cells, regions with free boundary, tilings.

Coordinates
-----------
Lattice lines are horizontal.  A lattice point is ``(X, row)`` where ``X`` is
twice the horizontal coordinate, so that points on line ``row`` satisfy
``X % 2 == row % 2``.  The unit triangle in the strip between lines ``row``
and ``row + 1`` whose centroid sits at doubled abscissa ``col`` is the cell
``TriCell(col, row)``.  It points up exactly when ``col + row`` is odd.

Each up cell has a horizontal base below it and each down cell a horizontal
top above it, so the three neighbours of a cell are the two cells beside it in
its row plus ``(col, row - 1)`` (up) or ``(col, row + 1)`` (down).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import chain
from math import sqrt
from typing import Iterable, Iterator, NamedTuple

Point = tuple[int, int]
Edge = tuple[Point, Point]

UP = "U"
DOWN = "D"


class RegionError(ValueError):
    """Raised for malformed regions (duplicate cells, misplaced free edges)."""


class TriCell(NamedTuple):
    col: int
    row: int

    @property
    def orient(self) -> str:
        return UP if (self.col + self.row) % 2 else DOWN

    @property
    def is_up(self) -> bool:
        return (self.col + self.row) % 2 == 1

    def vertices(self) -> tuple[Point, Point, Point]:
        c, r = self
        if self.is_up:
            return (c - 1, r), (c + 1, r), (c, r + 1)
        return (c - 1, r + 1), (c + 1, r + 1), (c, r)

    def edges(self) -> dict[str, Edge]:
        """The three sides keyed by ``H`` (horizontal), ``L`` and ``R``."""
        c, r = self
        if self.is_up:
            return {
                "H": make_edge((c - 1, r), (c + 1, r)),
                "L": make_edge((c - 1, r), (c, r + 1)),
                "R": make_edge((c + 1, r), (c, r + 1)),
            }
        return {
            "H": make_edge((c - 1, r + 1), (c + 1, r + 1)),
            "L": make_edge((c - 1, r + 1), (c, r)),
            "R": make_edge((c + 1, r + 1), (c, r)),
        }

    def neighbor(self, side: str) -> "TriCell":
        c, r = self
        if side == "L":
            return TriCell(c - 1, r)
        if side == "R":
            return TriCell(c + 1, r)
        if side == "H":
            return TriCell(c, r - 1) if self.is_up else TriCell(c, r + 1)
        raise ValueError(f"unknown side {side!r}")

    def neighbors(self) -> tuple["TriCell", "TriCell", "TriCell"]:
        return self.neighbor("L"), self.neighbor("R"), self.neighbor("H")

    def centroid(self) -> tuple[float, float]:
        """Euclidean centroid (unit side length)."""
        y = self.row + (1 / 3 if self.is_up else 2 / 3)
        return self.col / 2, y * sqrt(3) / 2


def cell(col: int, row: int, orient: str | None = None) -> TriCell:
    """Build a cell, checking ``orient`` against the parity rule when given."""
    t = TriCell(col, row)
    if orient is not None and orient.upper() != t.orient:
        raise RegionError(f"cell ({col}, {row}) points {t.orient}, not {orient}")
    return t


def make_edge(p: Point, q: Point) -> Edge:
    return (p, q) if p <= q else (q, p)


def shared_edge(s: TriCell, t: TriCell) -> Edge | None:
    common = set(s.vertices()) & set(t.vertices())
    if len(common) != 2:
        return None
    p, q = sorted(common)
    return p, q


@dataclass(frozen=True)
class Region:
    """A finite set of cells plus boundary edges where lozenges may protrude.

    ``walls`` are interior edges no lozenge may cross; they model removed
    pieces of zero area such as a degenerate slit.
    """

    cells: frozenset[TriCell]
    free_edges: frozenset[Edge] = frozenset()
    walls: frozenset[Edge] = frozenset()
    _order: tuple[TriCell, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "_order", tuple(sorted(self.cells, key=lambda t: (t.row, t.col))))

    def __len__(self) -> int:
        return len(self.cells)

    def __contains__(self, item: object) -> bool:
        return item in self.cells

    @property
    def ordered(self) -> tuple[TriCell, ...]:
        """Cells in row-major order (bottom row first, left to right)."""
        return self._order

    def adjacent(self, s: TriCell, t: TriCell) -> bool:
        if s not in self.cells or t not in self.cells:
            return False
        e = shared_edge(s, t)
        return e is not None and e not in self.walls

    def region_neighbors(self, t: TriCell) -> list[TriCell]:
        return [u for u in t.neighbors() if self.adjacent(t, u)]

    def free_cells(self) -> frozenset[TriCell]:
        out = set()
        for t in self.cells:
            if any(e in self.free_edges for e in t.edges().values()):
                out.add(t)
        return frozenset(out)

    def cell_free_edges(self, t: TriCell) -> list[Edge]:
        return [e for e in t.edges().values() if e in self.free_edges]

    def up_down_balance(self) -> int:
        """Number of up cells minus number of down cells."""
        return sum(1 if t.is_up else -1 for t in self.cells)

    def translate(self, dcol: int, drow: int) -> "Region":
        if (dcol + drow) % 2:
            raise RegionError("translation must preserve cell orientation")
        mv = lambda p: (p[0] + dcol, p[1] + drow)  # noqa: E731
        return Region(
            frozenset(TriCell(t.col + dcol, t.row + drow) for t in self.cells),
            frozenset(make_edge(mv(p), mv(q)) for p, q in self.free_edges),
            frozenset(make_edge(mv(p), mv(q)) for p, q in self.walls),
        )

    def without(self, removed: Iterable[TriCell]) -> "Region":
        """Drop cells; free edges and walls that no longer qualify go with them."""
        gone = set(removed)
        cells = self.cells - gone
        owners: dict[Edge, int] = {}
        for t in gone & self.cells:
            for e in t.edges().values():
                owners[e] = owners.get(e, 0) + 1
        # a free edge has one owner, a wall two; any removed owner disqualifies it
        free = frozenset(e for e in self.free_edges if e not in owners)
        walls = frozenset(w for w in self.walls if w not in owners)
        return Region(frozenset(cells), free, walls)


def make_region(
    cells: Iterable[TriCell],
    free_edges: Iterable[Edge] = (),
    walls: Iterable[Edge] = (),
) -> Region:
    """Validate and build a :class:`Region`."""
    cell_list = [TriCell(*t) for t in cells]
    cell_set = frozenset(cell_list)
    if len(cell_set) != len(cell_list):
        raise RegionError("duplicate cells")
    edge_owners: dict[Edge, int] = {}
    for t in cell_set:
        for e in t.edges().values():
            edge_owners[e] = edge_owners.get(e, 0) + 1
    free = frozenset(make_edge(*e) for e in free_edges)
    for e in free:
        if edge_owners.get(e, 0) != 1:
            raise RegionError(f"free edge {e} is not on the region boundary")
    wall_set = frozenset(make_edge(*e) for e in walls)
    for e in wall_set:
        if edge_owners.get(e, 0) != 2:
            raise RegionError(f"wall {e} is not an interior edge")
    return Region(cell_set, free, wall_set)


@dataclass(frozen=True)
class Tiling:
    """Lozenges (adjacent cell pairs) plus protruding half-lozenges.

    A protrusion ``(cell, edge)`` is a free cell left unmatched inside the
    region; its lozenge sticks out across the free ``edge``.
    """

    lozenges: frozenset[frozenset[TriCell]]
    protrusions: frozenset[tuple[TriCell, Edge]] = frozenset()

    def covered(self) -> set[TriCell]:
        return set(chain.from_iterable(self.lozenges)) | {t for t, _ in self.protrusions}


def check_tiling(region: Region, tiling: Tiling) -> None:
    """Raise :class:`RegionError` unless ``tiling`` is a valid tiling of ``region``."""
    seen: set[TriCell] = set()
    for lz in tiling.lozenges:
        s, t = tuple(lz)
        if not region.adjacent(s, t):
            raise RegionError(f"lozenge {sorted(lz)} is not an adjacent pair of the region")
        if s in seen or t in seen:
            raise RegionError("overlapping lozenges")
        seen |= {s, t}
    for t, e in tiling.protrusions:
        if t in seen or e not in region.cell_free_edges(t):
            raise RegionError(f"bad protrusion at {t}")
        seen.add(t)
    if seen != set(region.cells):
        raise RegionError("tiling does not cover the region")


def iter_tilings(region: Region) -> Iterator[Tiling]:
    """Enumerate every tiling, in a fixed deterministic order.

    Each free cell left unmatched protrudes across its first free edge in
    ``H, L, R`` order; a cell with two free edges therefore still yields one
    tiling per matching, keeping tilings and matchings in bijection.
    """
    order = region.ordered
    free = region.free_cells()

    def rec(i: int, used: frozenset, loz: tuple, prot: tuple) -> Iterator[Tiling]:
        while i < len(order) and order[i] in used:
            i += 1
        if i == len(order):
            yield Tiling(frozenset(loz), frozenset(prot))
            return
        t = order[i]
        for u in region.region_neighbors(t):
            if u not in used:
                yield from rec(i + 1, used | {t, u}, loz + (frozenset((t, u)),), prot)
        if t in free:
            yield from rec(i + 1, used | {t}, loz, prot + ((t, region.cell_free_edges(t)[0]),))

    yield from rec(0, frozenset(), (), ())


# --- text format -----------------------------------------------------------

def parse_region(text: str) -> Region:
    """Parse ``col row U|D`` lines plus ``FREE col row side`` lines.

    ``side`` is one of ``H``, ``L``, ``R`` and names a side of the given cell.
    ``WALL col row side`` lines are accepted as well.  ``#`` starts a comment.
    """
    cells: list[TriCell] = []
    free: list[Edge] = []
    walls: list[Edge] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        try:
            if parts[0].upper() in ("FREE", "WALL"):
                _, c, r, side = parts
                e = TriCell(int(c), int(r)).edges()[side.upper()]
                (free if parts[0].upper() == "FREE" else walls).append(e)
            else:
                c, r, o = parts
                cells.append(cell(int(c), int(r), o))
        except (ValueError, KeyError) as exc:
            raise RegionError(f"line {lineno}: cannot parse {raw!r}") from exc
    return make_region(cells, free, walls)


def format_region(region: Region) -> str:
    lines = [f"{t.col} {t.row} {t.orient}" for t in region.ordered]
    for kind, edges in (("FREE", region.free_edges), ("WALL", region.walls)):
        for e in sorted(edges):
            owner = min(t for t in region.cells if e in t.edges().values())
            side = next(s for s, f in owner.edges().items() if f == e)
            lines.append(f"{kind} {owner.col} {owner.row} {side}")
    return "\n".join(lines) + "\n"
