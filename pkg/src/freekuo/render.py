"""Deterministic SVG pictures of regions and (optionally) one tiling."""
from __future__ import annotations

from dataclasses import dataclass
from math import sqrt

from .counting import first_tiling
from .lattice import Region, TriCell

ROW_HEIGHT = sqrt(3) / 2
LOZENGE_FILL = {"H": "#e8b04a", "L": "#5b8fd6", "R": "#7cc47c"}


class RenderError(ValueError):
    pass


@dataclass(frozen=True)
class RenderSpec:
    region: Region
    overlay: bool = False
    scale: float = 20.0
    margin: float = 10.0

    def __post_init__(self) -> None:
        if not self.scale > 0:
            raise RenderError("scale must be positive")


def _fmt(v: float) -> str:
    s = f"{v:.3f}".rstrip("0").rstrip(".")
    return "0" if s == "-0" else s


class _Frame:
    def __init__(self, region: Region, scale: float, margin: float) -> None:
        pts = [p for t in region.cells for p in t.vertices()]
        # leave room for protrusions below the lowest row
        self.xmin = min(p[0] for p in pts) if pts else 0
        self.xmax = max(p[0] for p in pts) if pts else 0
        self.ymin = (min(p[1] for p in pts) if pts else 0) - 1
        self.ymax = max(p[1] for p in pts) if pts else 0
        self.scale = scale
        self.margin = margin

    def xy(self, p: tuple[int, int]) -> tuple[float, float]:
        X, Y = p
        return (
            self.margin + (X - self.xmin) / 2 * self.scale,
            self.margin + (self.ymax - Y) * ROW_HEIGHT * self.scale,
        )

    def size(self) -> tuple[float, float]:
        w = (self.xmax - self.xmin) / 2 * self.scale + 2 * self.margin
        h = (self.ymax - self.ymin) * ROW_HEIGHT * self.scale + 2 * self.margin
        return w, h

    def path(self, pts) -> str:
        coords = [self.xy(p) for p in pts]
        head = f"M{_fmt(coords[0][0])},{_fmt(coords[0][1])}"
        return head + "".join(f" L{_fmt(x)},{_fmt(y)}" for x, y in coords[1:]) + " Z"

    def line(self, e, **attrs) -> str:
        (x1, y1), (x2, y2) = self.xy(e[0]), self.xy(e[1])
        extra = "".join(f' {k.replace("_", "-")}="{v}"' for k, v in attrs.items())
        return f'<line x1="{_fmt(x1)}" y1="{_fmt(y1)}" x2="{_fmt(x2)}" y2="{_fmt(y2)}"{extra}/>'


def _lozenge_outline(s: TriCell, t: TriCell) -> list[tuple[int, int]]:
    shared = set(s.vertices()) & set(t.vertices())
    (ps,) = set(s.vertices()) - shared
    (pt,) = set(t.vertices()) - shared
    a, b = sorted(shared)
    return [ps, a, pt, b]


def _lozenge_kind(s: TriCell, t: TriCell) -> str:
    if s.col == t.col:
        return "H"
    up = s if s.is_up else t
    down = t if up is s else s
    return "L" if down.col < up.col else "R"


def render(spec: RenderSpec) -> str:
    """SVG 1.1 document for ``spec``; identical specs give identical bytes."""
    region = spec.region
    frame = _Frame(region, spec.scale, spec.margin)
    w, h = frame.size()
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{_fmt(w)}" height="{_fmt(h)}" '
        f'viewBox="0 0 {_fmt(w)} {_fmt(h)}">',
        '<g id="cells" stroke="#999999" stroke-width="0.5">',
    ]
    for t in region.ordered:
        fill = "#f4f4f4" if t.is_up else "#dddddd"
        kind = "up" if t.is_up else "down"
        out.append(f'<path class="{kind}" d="{frame.path(t.vertices())}" fill="{fill}"/>')
    out.append("</g>")

    if spec.overlay:
        tiling = first_tiling(region)
        if tiling is None:
            raise RenderError("region has no tiling to overlay")
        out.append('<g id="tiling" stroke="#333333" stroke-width="1">')
        for lz in sorted(tiling.lozenges, key=lambda z: sorted(z)):
            s, t = sorted(lz)
            fill = LOZENGE_FILL[_lozenge_kind(s, t)]
            out.append(f'<path class="lozenge" d="{frame.path(_lozenge_outline(s, t))}" fill="{fill}"/>')
        for t, e in sorted(tiling.protrusions):
            (apex,) = set(t.vertices()) - set(e)
            # reflect the cell's apex across the free edge
            mirror = (e[0][0] + e[1][0] - apex[0], e[0][1] + e[1][1] - apex[1])
            d = frame.path([apex, e[0], mirror, e[1]])
            out.append(f'<path class="protrusion" d="{d}" fill="{LOZENGE_FILL["H"]}" fill-opacity="0.6"/>')
        out.append("</g>")

    out.append('<g id="boundary">')
    for e in sorted(region.free_edges):
        out.append(frame.line(e, stroke="#c0392b", stroke_width="2", stroke_dasharray="4,3", **{"class": "free"}))
    for e in sorted(region.walls):
        out.append(frame.line(e, stroke="#000000", stroke_width="3", **{"class": "wall"}))
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"
