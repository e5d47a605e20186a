"""Region families: hexagons, carpenter's-butterfly hexagons, flashlights.

All constructors return :class:`~freekuo.lattice.Region` objects in the
coordinates described in :mod:`freekuo.lattice`.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .lattice import Region, RegionError, TriCell, make_edge, make_region


def _cells_between(rows: range, left: Callable[[int], float], right: Callable[[int], float]) -> set[TriCell]:
    """Cells in ``rows`` whose three vertices satisfy ``left(y) <= X <= right(y)``."""
    out = set()
    for r in rows:
        lo = int(min(left(r), left(r + 1))) - 2
        hi = int(max(right(r), right(r + 1))) + 2
        for c in range(lo, hi + 1):
            t = TriCell(c, r)
            if all(left(y) <= x <= right(y) for x, y in t.vertices()):
                out.add(t)
    return out


def _hexagon_bounds(a: int, b: int, c: int):
    """Boundary functions of the hexagon with sides a (bottom), b (lower left), c (lower right)."""
    def left(y: int) -> int:
        return max(-y, y - 2 * b)

    def right(y: int) -> int:
        return min(2 * a + y, 2 * a + 2 * c - y)

    return left, right


def hexagon(a: int, b: int, c: int) -> Region:
    """Hexagon with sides a, b, c, a, b, c; cell count ``2(ab + bc + ca)``."""
    if min(a, b, c) < 0:
        raise RegionError("side lengths must be non-negative")
    left, right = _hexagon_bounds(a, b, c)
    return make_region(_cells_between(range(b + c), left, right))


def butterfly_hexagon(x: int, y: int, k: int, p: int) -> Region:
    """Hexagon with sides x, y, y, x, y, y minus a centred carpenter's butterfly.

    The butterfly is the vertical bowtie of two side-``k`` triangles meeting
    at the centre, with its left boundary pushed ``p`` units left and its
    right boundary ``p`` units right.  For ``k == 0`` and ``p > 0`` only a
    horizontal slit of length ``2p`` remains; it is kept as a wall.
    """
    if min(x, y, k, p) < 0:
        raise RegionError("parameters must be non-negative")
    left, right = _hexagon_bounds(x, y, y)
    cells = _cells_between(range(2 * y), left, right)
    if k == 0 and p == 0:
        return make_region(cells)
    if (x + y) % 2:
        raise RegionError("centre of the hexagon is not a lattice point (x + y odd)")
    cx, cy = x, y
    corners = [(cx - k - 2 * p, cy + k), (cx + k + 2 * p, cy + k), (cx + 2 * p, cy),
               (cx + k + 2 * p, cy - k), (cx - k - 2 * p, cy - k), (cx - 2 * p, cy)]
    if k > y or any(not (left(Y) <= X <= right(Y)) for X, Y in corners):
        raise RegionError(f"butterfly (k={k}, p={p}) does not fit inside the hexagon")

    def inside(X: int, Y: int) -> bool:
        if not cy - k <= Y <= cy + k:
            return False
        half = 2 * p + abs(Y - cy)
        return cx - half <= X <= cx + half

    removed = {t for t in cells if all(inside(*v) for v in t.vertices())}
    walls = []
    if k == 0:
        for X in range(cx - 2 * p, cx + 2 * p, 2):
            walls.append(make_edge((X, cy), (X + 2, cy)))
    kept = cells - removed
    interior = [w for w in walls if sum(w in t.edges().values() for t in kept) == 2]
    return make_region(kept, walls=interior)


def _centre(region: Region) -> tuple[int, int]:
    pts = [v for t in region.cells for v in t.vertices()]
    xs = [p[0] for p in pts]
    ys = [p[1] for p in pts]
    return (min(xs) + max(xs)) // 2, (min(ys) + max(ys)) // 2


def symmetric_reduction(region: Region) -> Region:
    """Quarter of a doubly symmetric butterfly hexagon, with free base.

    Keeps the cells above the horizontal axis and strictly right of the
    column of vertical lozenges on the vertical axis, translated so that the
    axes meet at the origin.  The base edges that crossed the horizontal axis
    become free.
    """
    if not region.cells:
        return region
    pts = [v for t in region.cells for v in t.vertices()]
    xs = [p[0] for p in pts]
    ys = [p[1] for p in pts]
    if (min(xs) + max(xs)) % 4 or (min(ys) + max(ys)) % 4:
        raise RegionError("symmetric reduction needs even side lengths")
    x0, y0 = _centre(region)
    if (x0 + y0) % 2:
        raise RegionError("centre is not a lattice point")
    axis = {t for t in region.cells if t.row >= y0 and t.col == x0}
    for t in axis:
        mate = TriCell(x0, t.row - 1) if t.is_up else TriCell(x0, t.row + 1)
        if mate not in axis or not region.adjacent(t, mate):
            raise RegionError("axis cells do not pair into vertical lozenges")
    quarter = {t for t in region.cells if t.row >= y0 and t.col > x0}
    free = []
    for t in quarter:
        if t.row == y0 and t.is_up and region.adjacent(t, TriCell(t.col, y0 - 1)):
            free.append(t.edges()["H"])
    walls = [w for w in region.walls if sum(w in t.edges().values() for t in quarter) == 2]
    return make_region(quarter, free, walls).translate(-x0, -y0)


def flashlight(x: int, z: int, k: int, p: int) -> Region:
    """Flashlight region: the reduction of ``butterfly_hexagon(2x, 2(z+k), 2k, p)``."""
    if min(x, z, k, p) < 0:
        raise RegionError("parameters must be non-negative")
    if x + z < k + p:
        raise RegionError(f"flashlight needs x + z >= k + p, got x={x}, z={z}, k={k}, p={p}")
    return symmetric_reduction(butterfly_hexagon(2 * x, 2 * (z + k), 2 * k, p))


def flashlight_forced(x: int, z: int, k: int, p: int) -> list[frozenset[TriCell]]:
    """Lozenges forced when ``z > 0``: ``x`` along the top, ``k + p`` on the notch."""
    top = 2 * (z + k) - 1
    out = [frozenset((TriCell(c, top), TriCell(c + 1, top))) for c in range(1, 2 * x, 2)]
    out += [frozenset((TriCell(c, 2 * k), TriCell(c + 1, 2 * k))) for c in range(1, 2 * (k + p), 2)]
    return out


def reduced_flashlight(x: int, z: int, k: int, p: int) -> Region:
    """Flashlight with its forced top and notch lozenges removed (needs ``z > 0``)."""
    if z <= 0:
        raise RegionError("the reduced flashlight needs z > 0")
    full = flashlight(x, z, k, p)
    forced = flashlight_forced(x, z, k, p)
    gone = {t for lz in forced for t in lz}
    if not gone <= full.cells:
        raise RegionError("forced lozenges are not inside the flashlight")
    return full.without(gone)


def free_trapezoid(a: int, b: int) -> Region:
    """Trapezoid with legs ``a``, top ``b``, base ``a + b``; the whole base is free."""
    if min(a, b) < 0:
        raise RegionError("side lengths must be non-negative")
    cells = _cells_between(range(a), lambda y: y, lambda y: 2 * (a + b) - y)
    free = [t.edges()["H"] for t in cells if t.row == 0 and t.is_up]
    return make_region(cells, free)


@dataclass(frozen=True)
class RegionParams:
    kind: str
    x: int = 0
    y: int = 0
    z: int = 0
    k: int = 0
    p: int = 0
    a: int = 0
    b: int = 0
    c: int = 0

    def build(self) -> Region:
        if self.kind == "hexagon":
            return hexagon(self.a, self.b, self.c)
        if self.kind == "butterfly":
            return butterfly_hexagon(self.x, self.y, self.k, self.p)
        if self.kind == "flashlight":
            return flashlight(self.x, self.z, self.k, self.p)
        if self.kind == "reduced-flashlight":
            return reduced_flashlight(self.x, self.z, self.k, self.p)
        if self.kind == "trapezoid":
            return free_trapezoid(self.a, self.b)
        raise RegionError(f"unknown region kind {self.kind!r}")

    def as_dict(self) -> dict:
        keys = {
            "hexagon": ("a", "b", "c"),
            "butterfly": ("x", "y", "k", "p"),
            "flashlight": ("x", "z", "k", "p"),
            "reduced-flashlight": ("x", "z", "k", "p"),
            "trapezoid": ("a", "b"),
        }[self.kind]
        return {"kind": self.kind, **{key: getattr(self, key) for key in keys}}
