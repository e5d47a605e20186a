"""Free-boundary graphical condensation: separation, path shifting, identities.

A :class:`FaceQuad` marks four vertices ``a, b, c, d`` in cyclic order on the
outer face of a :class:`~freekuo.graph.FreeMatchGraph` whose free set also
lies on that face.  The residual functions return LHS minus RHS of each
identity, computed from exact counts; they refuse to run when the identity's
separation hypothesis fails.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable

from .counting import list_matchings, matching_weight, mf_enumerate, mf_profile_dp
from .graph import FreeMatchGraph, dual_graph, in_cyclic_order, make_graph, outer_face_order
from .lattice import TriCell
from .regions import flashlight, reduced_flashlight

AC = ("a", "c")
BD = ("b", "d")


class QuadError(ValueError):
    """Malformed quad (marks not on the outer face, overlap with the free set)."""


class SeparationError(ValueError):
    """The separation hypothesis of an identity does not hold."""


@dataclass(frozen=True)
class FaceQuad:
    graph: FreeMatchGraph
    a: object
    b: object
    c: object
    d: object

    @property
    def marks(self) -> tuple:
        return self.a, self.b, self.c, self.d

    def validate(self) -> None:
        marks = self.marks
        if len(set(marks)) != 4:
            raise QuadError("a, b, c, d must be distinct")
        if set(marks) & self.graph.free:
            raise QuadError("marked vertices must not be free")
        walk = outer_face_order(self.graph)
        if not in_cyclic_order(walk, marks):
            raise QuadError("a, b, c, d are not in cyclic order on the outer face")
        if not self.graph.free <= set(walk):
            raise QuadError("free vertices must lie on the outer face")


# --- separation ----------------------------------------------------------------

def _disjoint_to_free(adj: dict, blocked: set, sources: tuple, targets: frozenset) -> int:
    """Max number (0-2) of vertex-disjoint paths from ``sources`` to distinct targets."""
    # node splitting: v_in -> v_out with capacity 1
    cap: dict = {}

    def add(u, v):
        cap.setdefault(u, {})
        cap.setdefault(v, {})
        cap[u][v] = cap[u].get(v, 0) + 1
        cap[v].setdefault(u, 0)

    src, snk = ("src",), ("snk",)
    for v in adj:
        if v in blocked:
            continue
        add((v, 0), (v, 1))
        for u in adj[v]:
            if u not in blocked:
                add((v, 1), (u, 0))
        if v in targets:
            add((v, 1), snk)
    for s in sources:
        if s in blocked:
            return 0
        add(src, (s, 0))
    flow = 0
    while flow < len(sources):
        parent = {src: None}
        queue = [src]
        while queue and snk not in parent:
            nxt = []
            for u in queue:
                for v, c in cap.get(u, {}).items():
                    if c > 0 and v not in parent:
                        parent[v] = u
                        nxt.append(v)
            queue = nxt
        if snk not in parent:
            break
        v = snk
        while parent[v] is not None:
            u = parent[v]
            cap[u][v] -= 1
            cap[v][u] += 1
            v = u
        flow += 1
    return flow


def is_separated(quad: FaceQuad, anchor: tuple[str, str] = AC) -> bool:
    """True iff no vertex-disjoint paths join the anchor pair and the other two marks to distinct free vertices.

    For ``anchor == ("a", "c")`` the forbidden triple is ``a -> c``,
    ``b -> s``, ``d -> s'`` with ``s != s'`` free.  The search walks chordless
    paths between the anchors (any witness path can be shortcut to one) and
    prunes as soon as the remaining graph cannot carry the other two paths.
    """
    g = quad.graph
    names = {"a": quad.a, "b": quad.b, "c": quad.c, "d": quad.d}
    if tuple(anchor) == AC:
        src, dst, others = quad.a, quad.c, (quad.b, quad.d)
    elif tuple(anchor) == BD:
        src, dst, others = quad.b, quad.d, (quad.c, quad.a)
    else:
        raise ValueError(f"anchor must be ('a','c') or ('b','d'), got {anchor}")
    free = g.free
    if len(free) < 2:
        return True
    adj = {v: set(g.neighbors(v)) for v in g.vertices}
    del names
    if _disjoint_to_free(adj, {src, dst}, others, free) < 2:
        return True

    path = [src]
    on_path = {src}

    def reaches(start) -> bool:
        seen = {start}
        stack = [start]
        while stack:
            v = stack.pop()
            if v == dst:
                return True
            for u in adj[v]:
                if u not in seen and (u not in on_path or u == dst) and u not in others:
                    seen.add(u)
                    stack.append(u)
        return False

    def dfs(v) -> bool:
        if dst in adj[v]:
            # a chordless path must finish here
            return _disjoint_to_free(adj, on_path | {dst}, others, free) >= 2
        for u in sorted(adj[v], key=repr):
            if u in on_path or u in others:
                continue
            if any(w in on_path and w != v for w in adj[u]):
                continue
            path.append(u)
            on_path.add(u)
            ok = (
                _disjoint_to_free(adj, on_path | {dst}, others, free) >= 2
                and reaches(u)
                and dfs(u)
            )
            path.pop()
            on_path.discard(u)
            if ok:
                return True
        return False

    return not dfs(src)


# --- superpositions --------------------------------------------------------

@dataclass(frozen=True)
class Superposition:
    """Two matchings drawn on one graph: ``mu`` solid, ``nu`` dotted."""

    mu: frozenset
    nu: frozenset

    def degree(self, v) -> int:
        return sum(v in e for e in self.mu) + sum(v in e for e in self.nu)

    def path_from(self, v) -> list[tuple[frozenset, str]]:
        """Edges (with their type) of the path starting at the degree-1 vertex ``v``."""
        if self.degree(v) != 1:
            raise ValueError(f"{v!r} is not a path endpoint (degree {self.degree(v)})")
        solid = {u: e for e in self.mu for u in e}
        dotted = {u: e for e in self.nu for u in e}
        kind = "solid" if v in solid else "dotted"
        out = []
        cur = v
        while True:
            table = solid if kind == "solid" else dotted
            e = table.get(cur)
            if e is None:
                break
            out.append((e, kind))
            (cur,) = e - {cur}
            kind = "dotted" if kind == "solid" else "solid"
        return out

    def endpoint(self, v):
        path = self.path_from(v)
        cur = v
        for e, _ in path:
            (cur,) = e - {cur}
        return cur


def shift_along_path(sup: Superposition, v) -> Superposition:
    """Swap solid and dotted on every edge of the path that starts at ``v``."""
    path = sup.path_from(v)
    solid = {e for e, k in path if k == "solid"}
    dotted = {e for e, k in path if k == "dotted"}
    return Superposition((sup.mu - solid) | dotted, (sup.nu - dotted) | solid)


def superposition_weight(graph: FreeMatchGraph, sup: Superposition):
    return matching_weight(graph, sup.mu) * matching_weight(graph, sup.nu)


# Deletion sets of the factor pairs on each side of the eight-term identity.
LHS_TERMS = {"A": ("", "abcd"), "B": ("bd", "ac"), "C": ("b", "acd"), "D": ("d", "abc")}
RHS_TERMS = {"A'": ("ad", "bc"), "B'": ("ab", "cd"), "C'": ("a", "bcd"), "D'": ("abd", "c")}
# Connection type of a: 1 = to b, 2 = to d, 3 = to a free vertex.
PARTNER = {
    ("A", 1): ("B'", 1), ("A", 2): ("A'", 2), ("A", 3): ("C'", 3),
    ("B", 1): ("A'", 1), ("B", 2): ("B'", 2), ("B", 3): ("D'", 3),
    ("C", 1): ("C'", 1), ("C", 2): ("D'", 2), ("C", 3): ("B'", 3),
    ("D", 1): ("D'", 1), ("D", 2): ("C'", 2), ("D", 3): ("A'", 3),
}


def classify(quad: FaceQuad, sup: Superposition) -> tuple[str, int]:
    """Return (term label, connection type of ``a``) for a superposition."""
    names = {"a": quad.a, "b": quad.b, "c": quad.c, "d": quad.d}

    def missing(m: frozenset) -> str:
        covered = {u for e in m for u in e}
        return "".join(k for k in "abcd" if names[k] not in covered)

    key = (missing(sup.mu), missing(sup.nu))
    label = None
    for table in (LHS_TERMS, RHS_TERMS):
        for lab, sets in table.items():
            if sets == key:
                label = lab
    if label is None:
        raise ValueError(f"superposition matches no term (missing {key})")
    end = sup.endpoint(quad.a)
    if end == quad.b:
        kind = 1
    elif end == quad.d:
        kind = 2
    elif end in quad.graph.free:
        kind = 3
    elif end == quad.c:
        raise SeparationError("a is joined to c; the quad is not a,c-separated")
    else:
        raise ValueError(f"path from a ends at unexpected vertex {end!r}")
    return label, kind


def random_superposition(quad: FaceQuad, rng: random.Random, term: str | None = None) -> tuple[str, Superposition]:
    """Uniform superposition from one left-hand term (chosen at random if not given)."""
    names = {"a": quad.a, "b": quad.b, "c": quad.c, "d": quad.d}
    labels = sorted(LHS_TERMS)
    for _ in range(64):
        lab = term or rng.choice(labels)
        xm, xn = LHS_TERMS[lab]
        gm = quad.graph.delete(names[ch] for ch in xm)
        gn = quad.graph.delete(names[ch] for ch in xn)
        mus, nus = list_matchings(gm), list_matchings(gn)
        if mus and nus:
            return lab, Superposition(rng.choice(mus), rng.choice(nus))
        if term is not None:
            break
    raise ValueError("no superposition available for this quad")


# --- residuals -----------------------------------------------------------------

def _counts(quad: FaceQuad, perfect: bool = False) -> dict[str, object]:
    names = {"a": quad.a, "b": quad.b, "c": quad.c, "d": quad.d}
    g = quad.graph.with_free(()) if perfect else quad.graph
    out = {}
    for r in range(5):
        for sub in combinations("abcd", r):
            key = "".join(sub)
            out[key] = mf_enumerate(g.delete(names[ch] for ch in sub))
    return out


def eight_term(m: dict) -> object:
    lhs = m[""] * m["abcd"] + m["bd"] * m["ac"] + m["b"] * m["acd"] + m["d"] * m["abc"]
    rhs = m["ad"] * m["bc"] + m["ab"] * m["cd"] + m["a"] * m["bcd"] + m["abd"] * m["c"]
    return lhs - rhs


def eight_term_bd(m: dict) -> object:
    lhs = m[""] * m["abcd"] + m["ac"] * m["bd"] + m["a"] * m["bcd"] + m["c"] * m["abd"]
    rhs = m["ab"] * m["cd"] + m["bc"] * m["ad"] + m["b"] * m["acd"] + m["abc"] * m["d"]
    return lhs - rhs


def four_term_even(m: dict) -> object:
    return m[""] * m["abcd"] + m["bd"] * m["ac"] - m["ad"] * m["bc"] - m["ab"] * m["cd"]


def four_term_odd(m: dict) -> object:
    return m["b"] * m["acd"] + m["d"] * m["abc"] - m["a"] * m["bcd"] - m["abd"] * m["c"]


def _require(quad: FaceQuad, anchors: Iterable[tuple[str, str]]) -> None:
    quad.validate()
    for anc in anchors:
        if not is_separated(quad, anc):
            raise SeparationError(f"free set is not {anc[0]},{anc[1]}-separated")


def _require_no_free(quad: FaceQuad) -> None:
    quad.validate()
    if quad.graph.free:
        raise SeparationError("this identity is stated for an empty free set")


def residual_eight(quad: FaceQuad):
    _require(quad, [AC])
    return eight_term(_counts(quad))


def residual_eight_bd(quad: FaceQuad):
    """Eight-term identity with the roles of ``a, c`` and ``b, d`` exchanged."""
    _require(quad, [BD])
    return eight_term_bd(_counts(quad))


def residual_four_even(quad: FaceQuad):
    _require(quad, [AC, BD])
    return four_term_even(_counts(quad))


def residual_four_odd(quad: FaceQuad):
    _require(quad, [AC, BD])
    return four_term_odd(_counts(quad))


def residual_kuo_classical(quad: FaceQuad):
    _require_no_free(quad)
    return four_term_even(_counts(quad, perfect=True))


def residual_ebh(quad: FaceQuad):
    """Odd-deletion four-term identity for perfect matchings of any planar graph."""
    _require_no_free(quad)
    return four_term_odd(_counts(quad, perfect=True))


RESIDUALS = {
    "eight": residual_eight,
    "eight-bd": residual_eight_bd,
    "four-even": residual_four_even,
    "four-odd": residual_four_odd,
    "kuo": residual_kuo_classical,
    "ebh": residual_ebh,
}


# --- random quads --------------------------------------------------------------

def _random_weight(rng: random.Random, mode: str):
    if mode == "unit":
        return 1
    num = rng.choice([n for n in range(-5, 6) if n])
    return Fraction(num, rng.randint(1, 5))


def random_separated_quad(
    seed: int,
    size: int = 20,
    weight_mode: str = "rational",
    anchors: Iterable[tuple[str, str]] = (AC, BD),
    empty_free: bool = False,
    diagonals: float = 0.3,
    max_tries: int = 2000,
) -> FaceQuad:
    """Deterministic random quad on a subgraph of a small grid.

    Vertices are grown as a connected patch of at most ``size`` grid points;
    each unit square may receive one diagonal (probability ``diagonals``),
    which keeps the drawing planar and makes odd cycles possible.  Free
    vertices and marks are drawn from the outer face; candidates are rejected
    until every requested separation holds.
    """
    if size < 4:
        raise ValueError("vertex budget must be at least 4")
    rng = random.Random(seed)
    anchors = [tuple(a) for a in anchors]
    side = int(size ** 0.5) + 2
    for _ in range(max_tries):
        n = rng.randint(max(4, size // 2), size)
        start = (rng.randrange(side), rng.randrange(side))
        verts = [start]
        chosen = {start}
        while len(verts) < n:
            x, y = rng.choice(verts)
            dx, dy = rng.choice(((1, 0), (-1, 0), (0, 1), (0, -1)))
            q = (x + dx, y + dy)
            if 0 <= q[0] < side and 0 <= q[1] < side and q not in chosen:
                chosen.add(q)
                verts.append(q)
        verts.sort(key=lambda p: (p[1], p[0]))
        edges = {}
        for x, y in verts:
            for q in ((x + 1, y), (x, y + 1)):
                if q in chosen and rng.random() > 0.1:
                    edges[((x, y), q)] = _random_weight(rng, weight_mode)
            if rng.random() < diagonals:
                diag = [((x, y), (x + 1, y + 1)), ((x + 1, y), (x, y + 1))][rng.randrange(2)]
                if diag[0] in chosen and diag[1] in chosen:
                    edges[diag] = _random_weight(rng, weight_mode)
        g = make_graph(edges, vertices=verts, positions={v: (float(v[0]), float(v[1])) for v in verts})
        if len(g.components()) != 1:
            continue
        walk = outer_face_order(g)
        once = [v for v in walk if walk.count(v) == 1]
        if len(once) < 4:
            continue
        n_free = 0 if empty_free else rng.randint(0, min(4, len(once) - 4))
        pick = rng.sample(range(len(once)), 4 + n_free)
        mark_pos = sorted(pick[:4])
        rot = rng.randrange(4)
        mark_pos = mark_pos[rot:] + mark_pos[:rot]
        a, b, c, d = (once[i] for i in mark_pos)
        free = frozenset(once[i] for i in pick[4:])
        quad = FaceQuad(g.with_free(free), a, b, c, d)
        if all(is_separated(quad, anc) for anc in anchors):
            return quad
    raise ValueError(f"no separated quad found within {max_tries} tries (budget {size})")


# --- flashlight recurrence -----------------------------------------------------

def flashlight_count(x: int, z: int, k: int, p: int) -> int:
    """DP count of the flashlight; 0 when the dent cannot fit (``x < k + p``)."""
    if x < k + p and x + z < k + p:
        return 0
    return mf_profile_dp(flashlight(x, z, k, p))


def recurrence_terms(x: int, z: int, k: int, p: int) -> tuple[tuple[tuple[int, int, int, int], ...], ...]:
    """Parameters of the eight regions, as (lhs1, lhs2, rhs1, rhs2) factor pairs."""
    return (
        ((x, z, k, p), (x, z - 2, k + 1, p + 1)),
        ((x - 1, z - 1, k + 1, p), (x + 1, z - 1, k, p + 1)),
        ((x + 1, z - 2, k + 1, p), (x - 1, z, k, p + 1)),
        ((x, z - 1, k, p), (x, z - 1, k + 1, p + 1)),
    )


def verify_flashlight_recurrence(x: int, z: int, k: int, p: int, count=flashlight_count) -> bool:
    """Check the bilinear flashlight recurrence with exact counts (``x >= 1``, ``z >= 2``)."""
    if x < 1 or z < 2 or k < 0 or p < 0:
        raise ValueError("the recurrence needs x >= 1, z >= 2, k, p >= 0")
    (l1, l2), (l3, l4), (r1, r2), (r3, r4) = recurrence_terms(x, z, k, p)
    lhs = count(*l1) * count(*l2) + count(*l3) * count(*l4)
    rhs = count(*r1) * count(*r2) + count(*r3) * count(*r4)
    return lhs == rhs


def quad_marks(x: int, z: int, k: int, p: int) -> FaceQuad:
    """Dual graph of the reduced flashlight with the four condensation marks.

    ``a`` sits on the axis side just above the notch, ``b`` at the top of the
    axis side, ``c`` at the right end of the top row and ``d`` on the notch
    just right of its forced lozenges.  Deleting the even subsets of the
    marks and clearing forced lozenges leaves the eight flashlights of the
    recurrence.
    """
    if x < 1 or z < 2 or k < 0 or p < 0:
        raise ValueError("quad marks need x >= 1, z >= 2, k, p >= 0")
    if x < k + p:
        # the dent reaches the right side; every flashlight in the recurrence
        # has x < k + p somewhere and the identity degenerates to 0 = 0
        raise ValueError("quad marks need x >= k + p")
    g = dual_graph(reduced_flashlight(x, z, k, p))
    top = 2 * (z + k) - 2
    a = TriCell(1, 2 * k + 1)
    b = TriCell(1, top)
    c = TriCell(2 * x, top)
    d = TriCell(2 * (k + p) + 2, 2 * k)
    quad = FaceQuad(g, a, b, c, d)
    quad.validate()
    return quad


def quad_deletion_params(x: int, z: int, k: int, p: int) -> dict[str, tuple[int, int, int, int]]:
    """Flashlight parameters left after deleting each even subset of the quad_marks."""
    return {
        "": (x, z, k, p),
        "abcd": (x, z - 2, k + 1, p + 1),
        "ac": (x - 1, z - 1, k + 1, p),
        "bd": (x + 1, z - 1, k, p + 1),
        "ab": (x + 1, z - 2, k + 1, p),
        "cd": (x - 1, z, k, p + 1),
        "ad": (x, z - 1, k + 1, p + 1),
        "bc": (x, z - 1, k, p),
    }
