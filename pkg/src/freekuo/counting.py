"""Exact counting of matchings that cover every non-free vertex.

Three engines share one contract:

* :func:`mf_enumerate` - memoised branching search with forced moves.
* :func:`mf_profile_dp` - broken-profile transfer over the cells of a region.
* :func:`mf_subset_oracle` - sum of perfect-matching counts of ``G - T`` over
  all subsets ``T`` of the free set.
"""
from __future__ import annotations

import sys
from itertools import combinations
from typing import Iterable, Iterator

from .graph import FreeMatchGraph, dual_graph
from .lattice import Region, Tiling, TriCell

DEFAULT_SUBSET_CAP = 20

sys.setrecursionlimit(max(sys.getrecursionlimit(), 20000))


class CountError(ValueError):
    pass


def _indexed(graph: FreeMatchGraph):
    idx = {v: i for i, v in enumerate(graph.vertices)}
    nbr = [0] * len(idx)
    wt: list[dict[int, object]] = [dict() for _ in idx]
    for v, i in idx.items():
        for u, w in graph.neighbors(v).items():
            j = idx[u]
            nbr[i] |= 1 << j
            wt[i][j] = w
    free = 0
    for v in graph.free:
        free |= 1 << idx[v]
    return idx, nbr, wt, free


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mf_enumerate(graph: FreeMatchGraph):
    """Total weight of matchings covering all vertices outside ``graph.free``."""
    n = len(graph)
    if n == 0:
        return 1
    _, nbr, wt, free = _indexed(graph)
    memo: dict[int, object] = {}

    def settle(mask: int, touched: int):
        # Forced moves: a non-free vertex with one option takes it, one with
        # none kills the branch, an isolated free vertex stays unmatched.
        factor = 1
        work = touched & mask
        while work:
            low = work & -work
            work ^= low
            if not mask & low:
                continue
            t = low.bit_length() - 1
            avail = nbr[t] & mask
            if avail == 0:
                mask ^= low
                if not free & low:
                    return 0
                continue
            if free & low or avail & (avail - 1):
                continue
            u = avail.bit_length() - 1
            factor = factor * wt[t][u]
            mask ^= low | (1 << u)
            work |= (nbr[t] | nbr[u]) & mask
        if factor == 0:
            return 0
        return factor * count(mask)

    def count(mask: int):
        if mask == 0:
            return 1
        hit = memo.get(mask)
        if hit is not None:
            return hit
        low = mask & -mask
        v = low.bit_length() - 1
        rest = mask ^ low
        total = 0
        if free & low:
            total += settle(rest, nbr[v])
        for u in _bits(nbr[v] & rest):
            total += wt[v][u] * settle(rest ^ (1 << u), nbr[v] | nbr[u])
        memo[mask] = total
        return total

    full = (1 << n) - 1
    return settle(full, full)


def perfect_count(graph: FreeMatchGraph):
    """Total weight of perfect matchings (the free set is ignored)."""
    return mf_enumerate(graph.with_free(()))


def _perfect_counter(graph: FreeMatchGraph):
    """Return ``pm(mask)``: perfect-matching weight of the induced subgraph.

    Plain lowest-vertex recursion with one memo shared between calls, so
    subgraphs differing only in already-processed vertices reuse work.
    """
    _, nbr, wt, _ = _indexed(graph)
    memo: dict[int, object] = {0: 1}

    def pm(mask: int):
        hit = memo.get(mask)
        if hit is not None:
            return hit
        low = mask & -mask
        v = low.bit_length() - 1
        rest = mask ^ low
        total = 0
        for u in _bits(nbr[v] & rest):
            total += wt[v][u] * pm(rest ^ (1 << u))
        memo[mask] = total
        return total

    return pm


def mf_subset_oracle(graph: FreeMatchGraph, cap: int = DEFAULT_SUBSET_CAP):
    """Sum over subsets ``T`` of the free set of the perfect-matching weight of ``G - T``."""
    if len(graph.free) > cap:
        raise CountError(f"free set has {len(graph.free)} vertices, cap is {cap}")
    idx = {v: i for i, v in enumerate(graph.vertices)}
    pm = _perfect_counter(graph)
    full = (1 << len(graph)) - 1
    free_bits = sorted(idx[v] for v in graph.free)
    # Vertices left over must pair up, so only subsets of matching parity count.
    total = 0
    for size in range(len(free_bits) + 1):
        if (len(graph) - size) % 2:
            continue
        for tee in combinations(free_bits, size):
            mask = full
            for b in tee:
                mask ^= 1 << b
            total += pm(mask)
    return total


def list_matchings(graph: FreeMatchGraph) -> list[frozenset]:
    """Every admissible matching as a frozenset of ``frozenset({u, v})`` edges.

    Only for small graphs; used to sample superpositions and check bijections.
    """
    verts = graph.vertices
    out: list[frozenset] = []

    def rec(i: int, used: frozenset, acc: tuple) -> None:
        while i < len(verts) and verts[i] in used:
            i += 1
        if i == len(verts):
            out.append(frozenset(acc))
            return
        v = verts[i]
        for u in graph.neighbors(v):
            if u not in used:
                rec(i + 1, used | {v, u}, acc + (frozenset((v, u)),))
        if v in graph.free:
            rec(i + 1, used | {v}, acc)

    rec(0, frozenset(), ())
    return out


def matching_weight(graph: FreeMatchGraph, matching: Iterable[frozenset]):
    w = 1
    for e in matching:
        u, v = tuple(e)
        w = w * graph.weight(u, v)
    return w


# --- broken-profile transfer on lattice regions ----------------------------

def mf_profile_dp(region: Region) -> int:
    """Count free-boundary tilings of ``region`` row by row.

    Cells are scanned bottom row first, left to right.  The profile carried
    between cells is the set of columns whose down cell in the previous row
    is waiting for the up cell above it, the set of columns of the current
    row already promised upward, and whether the previous cell reached right.
    """
    if not region.cells:
        return 1
    free = region.free_cells()
    rows: dict[int, list[TriCell]] = {}
    for t in region.ordered:
        rows.setdefault(t.row, []).append(t)

    states: dict[int, int] = {0: 1}  # pending-from-below column set -> count
    prev_row = None
    for r in sorted(rows):
        if prev_row is not None and r != prev_row + 1 and any(states):
            states = {0: states.get(0, 0)}
        prev_row = r
        cells = rows[r]
        lo = min(t.col for t in cells)
        # within-row state: (pending below, promised above, reaching right)
        cur: dict[tuple[int, int, bool], int] = {}
        for pend, cnt in states.items():
            cur[(pend, 0, False)] = cnt
        for i, t in enumerate(cells):
            c = t.col
            bit = 1 << (c - lo + 1)
            right = TriCell(c + 1, r)
            can_right = i + 1 < len(cells) and cells[i + 1] == right and region.adjacent(t, right)
            above = TriCell(c, r + 1)
            can_up = (not t.is_up) and region.adjacent(t, above)
            is_free = t in free
            nxt: dict[tuple[int, int, bool], int] = {}

            def put(key, cnt):
                nxt[key] = nxt.get(key, 0) + cnt

            for (pend, promised, reach), cnt in cur.items():
                waiting = bool(pend & bit)
                if waiting and reach:
                    continue
                if waiting:
                    put((pend ^ bit, promised, False), cnt)
                    continue
                if reach:
                    put((pend, promised, False), cnt)
                    continue
                if can_right:
                    put((pend, promised, True), cnt)
                if can_up:
                    put((pend, promised | bit, False), cnt)
                if is_free:
                    put((pend, promised, False), cnt)
            cur = nxt
        states = {}
        for (pend, promised, reach), cnt in cur.items():
            if pend or reach:
                continue
            # re-base promised columns on the next row's leftmost column
            key = promised
            states[key] = states.get(key, 0) + cnt
        if r + 1 in rows:
            nlo = min(t.col for t in rows[r + 1])
            shift = nlo - lo
            states = {(k >> shift if shift >= 0 else k << -shift): v for k, v in states.items()}
    return states.get(0, 0)


def _repair(x, mate: dict, nbrs: dict, blocked: set, free: frozenset) -> bool:
    """Re-cover the exposed vertex ``x`` along an alternating path.

    The path may end at an exposed vertex or push the exposure onto a free
    vertex.  ``mate`` is updated in place on success.
    """
    parent = {x: None}
    queue = [x]
    for v in queue:
        for w in nbrs[v]:
            if w in blocked or w in parent or mate.get(v) == w:
                continue
            parent[w] = v
            m = mate.get(w)
            if m is None or m in free:
                # flip x .. v, w
                if m is not None:
                    del mate[m]
                while w is not None:
                    v = parent[w]
                    nxt = mate.get(v)
                    mate[v], mate[w] = w, v
                    w = parent[v] if nxt is None else nxt
                    if v == x:
                        break
                return True
            if m in parent:
                continue
            parent[m] = w
            queue.append(m)
    return False


def first_tiling(region: Region) -> Tiling | None:
    """The first tiling in :func:`~freekuo.lattice.iter_tilings` order, or None.

    Same branching order as the enumerator, but a branch is only entered when
    the leftover cells can still be covered, which is decided by repairing a
    maintained matching along alternating paths.
    """
    order = region.ordered
    free = region.free_cells()
    nbrs = {t: region.region_neighbors(t) for t in order}
    mate: dict = {}
    for t in order:
        if t not in free and t not in mate and not _repair(t, mate, nbrs, set(), free):
            return None
    used: set[TriCell] = set()
    loz, prot = [], []

    def attempt(t, u) -> dict | None:
        trial = dict(mate)
        exposed = []
        for v in (t, u) if u is not None else (t,):
            m = trial.pop(v, None)
            if m is not None and m not in (t, u):
                del trial[m]
                exposed.append(m)
        if u is not None:
            trial[t], trial[u] = u, t
        blocked = used | {t} | ({u} if u is not None else set())
        for m in exposed:
            if m not in free and not _repair(m, trial, nbrs, blocked, free):
                return None
        return trial

    for t in order:
        if t in used:
            continue
        chosen = None
        for u in nbrs[t]:
            if u in used:
                continue
            trial = attempt(t, u)
            if trial is not None:
                chosen = u
                mate = trial
                break
        if chosen is not None:
            used |= {t, chosen}
            loz.append(frozenset((t, chosen)))
            continue
        trial = attempt(t, None)
        if trial is None or t not in free:
            raise CountError("matching repair failed; region state is inconsistent")
        mate = trial
        used.add(t)
        prot.append((t, region.cell_free_edges(t)[0]))
    return Tiling(frozenset(loz), frozenset(prot))


def count_region(region: Region, engine: str = "dp", cap: int = DEFAULT_SUBSET_CAP):
    """Dispatch helper: ``engine`` is ``enum``, ``dp`` or ``oracle``."""
    if engine == "dp":
        return mf_profile_dp(region)
    if engine == "enum":
        return mf_enumerate(dual_graph(region))
    if engine == "oracle":
        return mf_subset_oracle(dual_graph(region), cap)
    raise CountError(f"unknown engine {engine!r}")


# --- symmetry-constrained tilings ------------------------------------------

H_REFLECT = "h"
V_REFLECT = "v"
ROTATE = "r"


def _axes(region: Region) -> tuple[int, int]:
    pts = [p for t in region.cells for p in t.vertices()]
    xs = [p[0] for p in pts]
    ys = [p[1] for p in pts]
    x2 = min(xs) + max(xs)
    y2 = min(ys) + max(ys)
    if x2 % 2 or y2 % 2:
        raise CountError("region centre is not a lattice point or edge midpoint row")
    return x2 // 2, y2 // 2


def symmetry_map(region: Region, gen: str):
    """Cell map for a generator about the region's bounding-box centre."""
    x0, y0 = _axes(region)

    def h(t: TriCell) -> TriCell:
        return TriCell(t.col, 2 * y0 - 1 - t.row)

    def v(t: TriCell) -> TriCell:
        return TriCell(2 * x0 - t.col, t.row)

    return {H_REFLECT: h, V_REFLECT: v, ROTATE: lambda t: h(v(t))}[gen]


def symmetric_count(region: Region, sym: Iterable[str]) -> int:
    """Number of tilings fixed by every generator in ``sym``.

    Backtracking places whole orbits of lozenges at once; states are memoised
    on the covered cell set.
    """
    if region.free_edges:
        raise CountError("symmetric counting needs a region without free edges")
    gens = sorted(set(sym))
    if not region.cells:
        return 1
    order = region.ordered
    idx = {t: i for i, t in enumerate(order)}
    perms: list[list[int]] = []
    for g in gens:
        f = symmetry_map(region, g)
        perm = []
        for t in order:
            img = f(t)
            if img not in idx:
                raise CountError(f"region is not invariant under {g!r}")
            perm.append(idx[img])
        for t in order:
            for u in region.region_neighbors(t):
                if not region.adjacent(order[perm[idx[t]]], order[perm[idx[u]]]):
                    raise CountError(f"walls are not invariant under {g!r}")
        perms.append(perm)
    group = {tuple(range(len(order)))}
    frontier = list(group)
    while frontier:
        p = frontier.pop()
        for g in perms:
            q = tuple(g[i] for i in p)
            if q not in group:
                group.add(q)
                frontier.append(q)
    group_l = sorted(group)
    nbr = [[idx[u] for u in region.region_neighbors(t)] for t in order]
    full = (1 << len(order)) - 1
    memo: dict[int, int] = {full: 1}

    def rec(covered: int) -> int:
        hit = memo.get(covered)
        if hit is not None:
            return hit
        free_bits = ~covered & full
        v = (free_bits & -free_bits).bit_length() - 1
        total = 0
        for u in nbr[v]:
            if covered >> u & 1:
                continue
            orbit = {frozenset((g[v], g[u])) for g in group_l}
            cells = [c for lz in orbit for c in lz]
            if len(cells) != len(set(cells)):
                continue
            add = 0
            for c in cells:
                add |= 1 << c
            if add & covered:
                continue
            total += rec(covered | add)
        memo[covered] = total
        return total

    return rec(0)
