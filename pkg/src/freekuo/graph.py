"""Weighted planar graphs with a free vertex set, and region duals."""
from __future__ import annotations

import math
from itertools import product
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Hashable, Iterable, Mapping, Sequence

from .lattice import Region

Vertex = Hashable
Weight = int | Fraction


class GraphError(ValueError):
    pass


def _key(u: Vertex, v: Vertex) -> frozenset:
    return frozenset((u, v))


@dataclass(frozen=True)
class FreeMatchGraph:
    """Planar graph with edge weights, a straight-line embedding and free set.

    ``vertices`` fixes the processing order used by the counting engines.
    ``positions`` gives the embedding; the designated face is the outer face.
    """

    vertices: tuple
    weights: Mapping[frozenset, Weight]
    free: frozenset = frozenset()
    positions: Mapping[Vertex, tuple[float, float]] | None = None
    _adj: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        vset = set(self.vertices)
        if len(vset) != len(self.vertices):
            raise GraphError("duplicate vertices")
        adj: dict = {v: {} for v in self.vertices}
        for e, w in self.weights.items():
            if len(e) != 2 or not e <= vset:
                raise GraphError(f"bad edge {set(e)}")
            if w == 0:
                raise GraphError("edge weights must be nonzero")
            u, v = tuple(e)
            adj[u][v] = w
            adj[v][u] = w
        if not self.free <= vset:
            raise GraphError("free vertices must belong to the graph")
        object.__setattr__(self, "_adj", adj)

    def __len__(self) -> int:
        return len(self.vertices)

    def neighbors(self, v: Vertex) -> dict:
        return self._adj[v]

    def weight(self, u: Vertex, v: Vertex) -> Weight:
        return self._adj[u][v]

    @property
    def edges(self) -> list[tuple[Vertex, Vertex]]:
        idx = {v: i for i, v in enumerate(self.vertices)}
        out = []
        for e in self.weights:
            u, v = sorted(e, key=idx.__getitem__)
            out.append((u, v))
        return sorted(out, key=lambda p: (idx[p[0]], idx[p[1]]))

    def delete(self, removed: Iterable[Vertex]) -> "FreeMatchGraph":
        gone = set(removed)
        verts = tuple(v for v in self.vertices if v not in gone)
        weights = {e: w for e, w in self.weights.items() if not e & gone}
        pos = None if self.positions is None else {v: self.positions[v] for v in verts}
        return FreeMatchGraph(verts, weights, self.free - gone, pos)

    def with_free(self, free: Iterable[Vertex]) -> "FreeMatchGraph":
        return FreeMatchGraph(self.vertices, self.weights, frozenset(free), self.positions)

    def reweight(self, u: Vertex, v: Vertex, w: Weight) -> "FreeMatchGraph":
        weights = dict(self.weights)
        weights[_key(u, v)] = w
        return FreeMatchGraph(self.vertices, weights, self.free, self.positions)

    def components(self) -> list[list[Vertex]]:
        seen: set = set()
        comps = []
        for s in self.vertices:
            if s in seen:
                continue
            comp, stack = [], [s]
            seen.add(s)
            while stack:
                v = stack.pop()
                comp.append(v)
                for u in self._adj[v]:
                    if u not in seen:
                        seen.add(u)
                        stack.append(u)
            comps.append(comp)
        return comps

    def is_bipartite(self) -> bool:
        color: dict = {}
        for s in self.vertices:
            if s in color:
                continue
            color[s] = 0
            stack = [s]
            while stack:
                v = stack.pop()
                for u in self._adj[v]:
                    if u not in color:
                        color[u] = 1 - color[v]
                        stack.append(u)
                    elif color[u] == color[v]:
                        return False
        return True


def make_graph(
    edges: Iterable[tuple] | Mapping[tuple, Weight],
    vertices: Sequence[Vertex] | None = None,
    free: Iterable[Vertex] = (),
    positions: Mapping[Vertex, tuple[float, float]] | None = None,
) -> FreeMatchGraph:
    """Convenience constructor; edges are pairs (unit weight) or a pair->weight map."""
    if isinstance(edges, Mapping):
        items = list(edges.items())
    else:
        items = [(e, 1) for e in edges]
    verts = list(vertices) if vertices is not None else []
    for (u, v), _ in items:
        for x in (u, v):
            if x not in verts:
                verts.append(x)
    weights = {_key(u, v): w for (u, v), w in items}
    return FreeMatchGraph(tuple(verts), weights, frozenset(free), positions)


def dual_graph(region: Region) -> FreeMatchGraph:
    """Planar dual of a region: cells become vertices, shared edges unit edges."""
    verts = region.ordered
    weights = {}
    for t in verts:
        for u in region.region_neighbors(t):
            weights[_key(t, u)] = 1
    pos = {t: t.centroid() for t in verts}
    return FreeMatchGraph(tuple(verts), weights, region.free_cells(), pos)


# --- embedding -------------------------------------------------------------

def _rotation(graph: FreeMatchGraph) -> dict:
    if graph.positions is None:
        raise GraphError("graph has no embedding")
    pos = graph.positions
    rot = {}
    for v in graph.vertices:
        x0, y0 = pos[v]
        nb = sorted(graph.neighbors(v), key=lambda u: math.atan2(pos[u][1] - y0, pos[u][0] - x0))
        rot[v] = nb
    return rot


def _outer_walk(graph: FreeMatchGraph, comp: list, rot: dict) -> list:
    pos = graph.positions
    start = min(comp, key=lambda v: (pos[v][0], pos[v][1]))
    if not rot[start]:
        return [start]
    # rot lists neighbours counter-clockwise; leaving the leftmost vertex on
    # its steepest edge and always taking the clockwise-next edge keeps the
    # outer face on the left.
    first = rot[start][-1]
    walk = [start]
    prev, cur = start, first
    while True:
        nb = rot[cur]
        nxt = nb[(nb.index(prev) - 1) % len(nb)]
        if (cur, nxt) == (start, first):
            break
        walk.append(cur)
        prev, cur = cur, nxt
    return walk


def outer_face_order(graph: FreeMatchGraph) -> list:
    """Vertex sequence of the outer face walk (clockwise).

    Vertices may repeat when the boundary is not a simple cycle.  For a
    disconnected graph the walks of the components are concatenated, ordered
    by each component's leftmost vertex.
    """
    rot = _rotation(graph)
    comps = graph.components()
    pos = graph.positions
    comps.sort(key=lambda c: min((pos[v][0], pos[v][1]) for v in c))
    out: list = []
    for comp in comps:
        out.extend(_outer_walk(graph, comp, rot))
    return out


def in_cyclic_order(walk: Sequence[Vertex], marks: Sequence[Vertex]) -> bool:
    """True iff some choice of occurrences puts ``marks`` in cyclic order along ``walk``.

    Either direction of travel is accepted.  A vertex may occur more than
    once on a walk (cut vertices); any of its occurrences can be used.
    """
    occ = []
    for m in marks:
        idx = [i for i, v in enumerate(walk) if v == m]
        if not idx:
            return False
        occ.append(idx)
    for pos in product(*occ):
        pos = list(pos)
        if len(set(pos)) != len(pos):
            continue
        for seq in (pos, pos[::-1]):
            k = seq.index(min(seq))
            rotated = seq[k:] + seq[:k]
            if rotated == sorted(rotated):
                return True
    return False
