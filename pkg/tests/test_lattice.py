from __future__ import annotations

import pytest

from freekuo.lattice import (
    Region,
    RegionError,
    Tiling,
    TriCell,
    cell,
    check_tiling,
    format_region,
    iter_tilings,
    make_edge,
    make_region,
    parse_region,
    shared_edge,
)
from freekuo.regions import free_trapezoid, hexagon

UNIT_HEXAGON = """\
# the six triangles around the origin
0 0 D
1 0 U
2 0 D
0 -1 U
1 -1 D
2 -1 U
"""


def test_orientation_parity():
    assert TriCell(1, 0).is_up
    assert not TriCell(0, 0).is_up
    assert TriCell(0, 1).is_up
    with pytest.raises(RegionError):
        cell(0, 0, "U")


def test_vertices_and_edges():
    up = TriCell(1, 0)
    assert sorted(up.vertices()) == [(0, 0), (1, 1), (2, 0)]
    assert up.edges()["H"] == make_edge((0, 0), (2, 0))
    down = TriCell(2, 0)
    assert sorted(down.vertices()) == [(1, 1), (2, 0), (3, 1)]
    assert shared_edge(up, down) == make_edge((1, 1), (2, 0))
    assert shared_edge(up, TriCell(5, 0)) is None


def test_neighbors_share_edges():
    for t in (TriCell(1, 0), TriCell(2, 0), TriCell(-3, 4)):
        for u in t.neighbors():
            assert shared_edge(t, u) is not None
            assert u.is_up != t.is_up


def test_parse_format_roundtrip():
    reg = parse_region(UNIT_HEXAGON)
    assert len(reg) == 6 and reg.up_down_balance() == 0
    again = parse_region(format_region(reg))
    assert again == reg
    trap = free_trapezoid(2, 1)
    assert parse_region(format_region(trap)) == trap


def test_parse_errors():
    with pytest.raises(RegionError):
        parse_region("0 0 U\n")
    with pytest.raises(RegionError):
        parse_region("1 0 U\n1 0 U\n")
    with pytest.raises(RegionError):
        # a shared edge cannot be free
        parse_region("1 0 U\n2 0 D\nFREE 1 0 R\n")
    with pytest.raises(RegionError):
        parse_region("1 0 U\nbogus\n")


def test_walls_block_adjacency():
    reg = make_region([TriCell(1, 0), TriCell(2, 0)], walls=[make_edge((1, 1), (2, 0))])
    assert not reg.adjacent(TriCell(1, 0), TriCell(2, 0))
    assert list(iter_tilings(reg)) == []


def test_unit_hexagon_has_two_tilings():
    tilings = list(iter_tilings(hexagon(1, 1, 1)))
    assert len(tilings) == 2
    for t in tilings:
        check_tiling(hexagon(1, 1, 1), t)


def test_free_trapezoid_protrusions():
    # three cells in a row over a free base: the down cell pairs left or right
    reg = free_trapezoid(1, 1)
    assert len(reg) == 3 and len(reg.free_edges) == 2
    tilings = list(iter_tilings(reg))
    assert len(tilings) == 2
    assert all(len(t.protrusions) == 1 for t in tilings)


def test_check_tiling_rejects_bad():
    reg = hexagon(1, 1, 1)
    with pytest.raises(RegionError):
        check_tiling(reg, Tiling(frozenset()))
    bad = Tiling(frozenset({frozenset((TriCell(1, 0), TriCell(3, 0)))}))
    with pytest.raises(RegionError):
        check_tiling(reg, bad)


def test_translate_and_without():
    reg = hexagon(2, 1, 1)
    moved = reg.translate(4, 2)
    assert len(moved) == len(reg)
    with pytest.raises(RegionError):
        reg.translate(1, 0)
    trap = free_trapezoid(2, 2)
    first = min(trap.free_cells())
    smaller = trap.without([first])
    assert len(smaller.free_edges) == len(trap.free_edges) - 1
    assert isinstance(smaller, Region)
