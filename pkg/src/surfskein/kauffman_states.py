"""Kauffman states, state circles, state graphs and adequacy.

At crossing ``x`` the A-smoothing joins positions 0-1 and 2-3 (its arcs cut
off corners 0 and 2, and a band through the crossing merges corners 1 and 3);
the B-smoothing joins 1-2 and 3-0.  A smoothing arc is named by the corner it
cuts off: the arc cutting corner ``p`` joins positions ``p`` and ``p + 1``.

Circles are classified by region bookkeeping on the faces of the projection:
cutting along the other circles is undone by gluing their two sides back.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

from .link_diagram import LinkDiagram
from .surface_map import (
    CircleArrangement,
    CombinatorialMap,
    EmbeddedCycle,
    cut_arrangement,
    is_contractible,
)

A, B = "A", "B"


class LoopEdgePresent(ValueError):
    """The state graph has a loop edge; the reduced graph is not defined."""


# ---------------------------------------------------------------------------
# states
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class KauffmanState:
    """Resolution per crossing index; ``True`` means the A-smoothing."""

    resolutions: tuple[bool, ...]

    @classmethod
    def all_a(cls, c: int) -> "KauffmanState":
        return cls((True,) * c)

    @classmethod
    def all_b(cls, c: int) -> "KauffmanState":
        return cls((False,) * c)

    @classmethod
    def from_bits(cls, bits: int, c: int) -> "KauffmanState":
        """Bit ``x`` set means A at crossing ``x``."""
        return cls(tuple(bool(bits >> x & 1) for x in range(c)))

    @classmethod
    def from_letters(cls, letters: str) -> "KauffmanState":
        return cls(tuple(ch == A for ch in letters))

    @property
    def bits(self) -> int:
        return sum(1 << x for x, r in enumerate(self.resolutions) if r)

    @property
    def a(self) -> int:
        return sum(self.resolutions)

    @property
    def b(self) -> int:
        return len(self.resolutions) - self.a

    def flipped(self, x: int) -> "KauffmanState":
        r = list(self.resolutions)
        r[x] = not r[x]
        return KauffmanState(tuple(r))

    def __str__(self) -> str:
        return "".join(A if r else B for r in self.resolutions)


def side_state(diagram: LinkDiagram, side: str) -> KauffmanState:
    if side not in (A, B):
        raise ValueError(f"side must be 'A' or 'B', not {side!r}")
    c = diagram.num_crossings
    return KauffmanState.all_a(c) if side == A else KauffmanState.all_b(c)


def smoothing_partner(pos: int, is_a: bool) -> int:
    return pos ^ 1 if is_a else 3 - pos


def cut_corners(is_a: bool) -> tuple[int, int]:
    return (0, 2) if is_a else (1, 3)


def _arc_corner(pos: int, is_a: bool) -> int:
    # the arc through positions {p, p+1} cuts corner p
    q = smoothing_partner(pos, is_a)
    return q if (q - pos) % 4 == 3 else pos


# ---------------------------------------------------------------------------
# state circles
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class StateCircle:
    arcs: tuple[tuple[int, int], ...]  # (crossing, cut corner) in traversal order
    half_edges: tuple[int, ...]  # sorted
    sides: tuple[int, int]  # a face on each side
    contractible: bool
    walk: tuple[int, ...]  # half-edges left along, in traversal order


@dataclass(frozen=True)
class StateCircles:
    state: KauffmanState
    circles: tuple[StateCircle, ...]
    arrangement: CircleArrangement

    @property
    def count(self) -> int:
        return len(self.circles)

    @property
    def contractible_count(self) -> int:
        return sum(1 for c in self.circles if c.contractible)

    @property
    def noncontractible_count(self) -> int:
        return self.count - self.contractible_count

    def circle_of_arc(self, x: int, corner: int) -> int:
        return self._arc_index[(x, corner)]

    @cached_property
    def _arc_index(self) -> dict[tuple[int, int], int]:
        return {arc: i for i, circ in enumerate(self.circles) for arc in circ.arcs}


def trace_circles(diagram: LinkDiagram, state: KauffmanState) -> list[tuple[list[tuple[int, int]], list[int]]]:
    """Circles as (arcs, outgoing half-edges), ordered by least half-edge."""
    if len(state.resolutions) != diagram.num_crossings:
        raise ValueError("state does not assign every crossing")
    alpha = diagram.map.alpha
    res = state.resolutions
    n = 4 * diagram.num_crossings
    seen = [False] * n
    out = []
    for start in range(n):
        if seen[start]:
            continue
        arcs = []
        walk = []
        h = start
        while not seen[h]:
            x, p = divmod(h, 4)
            q = smoothing_partner(p, res[x])
            k = 4 * x + q
            seen[h] = seen[k] = True
            arcs.append((x, _arc_corner(p, res[x])))
            walk.append(k)
            h = alpha[k]
        out.append((arcs, walk))
    return out


def arrangement(diagram: LinkDiagram, state: KauffmanState, traced=None) -> CircleArrangement:
    traced = traced if traced is not None else trace_circles(diagram, state)
    face_of = diagram.map.face_of
    strips = []
    for x, is_a in enumerate(state.resolutions):
        p = 1 if is_a else 0
        strips.append((face_of[4 * x + p], face_of[4 * x + p + 2]))
    sides = []
    for arcs, _ in traced:
        x, p = arcs[0]
        sides.append((face_of[4 * x + p], face_of[4 * x + (p + 1) % 4]))
    return CircleArrangement(diagram.map.num_faces, tuple(strips), tuple(sides))


def apply_state(diagram: LinkDiagram, state: KauffmanState) -> StateCircles:
    """Smooth every crossing and classify the resulting circles."""
    traced = trace_circles(diagram, state)
    arr = arrangement(diagram, state, traced)
    genus0 = diagram.genus == 0
    circles = []
    for j, (arcs, walk) in enumerate(traced):
        hs = tuple(sorted({4 * x + p for x, p in arcs} | {4 * x + (p + 1) % 4 for x, p in arcs}))
        contractible = genus0 or is_contractible(diagram.map, j, arr)
        circles.append(StateCircle(tuple(arcs), hs, arr.sides[j], contractible, tuple(walk)))
    return StateCircles(state, tuple(circles), arr)


# ---------------------------------------------------------------------------
# the state complex: circles plus one segment per crossing
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class StateComplex:
    """A cellular map on the same surface: one vertex per smoothing arc,
    edges along the circles, and one segment edge per crossing joining its
    two arcs.  Its faces correspond to the faces of the projection."""

    map: CombinatorialMap
    arc_vertex: dict  # (crossing, corner) -> vertex
    circle_cycles: tuple[EmbeddedCycle, ...]
    circles: StateCircles

    def segment_dart(self, x: int, corner: int) -> int:
        return self.map.half_edge(self.arc_vertex[(x, corner)], 2)

    def path_along(self, start: int, end: int, slot: int) -> list[int]:
        """Darts along the circle from arc vertex ``start`` to ``end``."""
        cmap = self.map
        darts = []
        cur = cmap.half_edge(start, slot)
        while True:
            darts.append(cur)
            a = cmap.alpha[cur]
            w = cmap.vertex_of[a]
            if w == end:
                return darts
            if w == start:
                raise ValueError("end vertex is not on the circle")
            cur = cmap.half_edge(w, 1 - cmap.position[a])


def state_complex(diagram: LinkDiagram, state: KauffmanState, circles: StateCircles | None = None) -> StateComplex:
    circles = circles if circles is not None else apply_state(diagram, state)
    base = diagram.map
    c = diagram.num_crossings
    edge_id = {}
    for k, (h, a) in enumerate(base.edges()):
        edge_id[h] = edge_id[a] = k
    seg0 = base.num_edges
    rots = []
    arc_vertex = {}
    for x, is_a in enumerate(state.resolutions):
        for p in cut_corners(is_a):
            arc_vertex[(x, p)] = len(rots)
            rots.append([edge_id[4 * x + p], edge_id[4 * x + (p + 1) % 4], seg0 + x])
    cmap = CombinatorialMap(rots)
    cycles = []
    for circ in circles.circles:
        darts = []
        for k in circ.walk:
            x, q = divmod(k, 4)
            is_a = state.resolutions[x]
            corner = _arc_corner(q, is_a)
            slot = 0 if q == corner else 1
            darts.append(cmap.half_edge(arc_vertex[(x, corner)], slot))
        cycles.append(EmbeddedCycle(tuple(darts)))
    return StateComplex(cmap, arc_vertex, tuple(cycles), circles)


# ---------------------------------------------------------------------------
# state graphs
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class StateGraph:
    state: KauffmanState
    circles: StateCircles
    edges: tuple[tuple[int, int], ...]  # per crossing: the circles of its two arcs

    @property
    def num_vertices(self) -> int:
        return self.circles.count

    @property
    def loops(self) -> tuple[int, ...]:
        return tuple(x for x, (u, v) in enumerate(self.edges) if u == v)


def state_graph(diagram: LinkDiagram, state: KauffmanState, circles: StateCircles | None = None) -> StateGraph:
    circles = circles if circles is not None else apply_state(diagram, state)
    edges = []
    for x, is_a in enumerate(state.resolutions):
        p, q = cut_corners(is_a)
        edges.append((circles.circle_of_arc(x, p), circles.circle_of_arc(x, q)))
    return StateGraph(state, circles, tuple(edges))


@dataclass(frozen=True)
class ReducedStateGraph:
    graph: StateGraph
    classes: tuple[tuple[int, ...], ...]  # crossings per disk-parallel class

    @property
    def e_prime(self) -> int:
        return len(self.classes)


def parallel_cycles(cx: StateComplex, graph: StateGraph, x: int, y: int) -> list[EmbeddedCycle]:
    """The up-to-four cycles formed by the segments of x and y and arcs of
    the two circles they join."""
    state = graph.state
    c1, c2 = graph.edges[x]
    px, qx = cut_corners(state.resolutions[x])
    py, qy = cut_corners(state.resolutions[y])
    circ = graph.circles
    # orient so that the first corner of each crossing lies on circle c1
    ax1, ax2 = (px, qx) if circ.circle_of_arc(x, px) == c1 else (qx, px)
    ay1, ay2 = (py, qy) if circ.circle_of_arc(y, py) == c1 else (qy, py)
    u1x, u2x = cx.arc_vertex[(x, ax1)], cx.arc_vertex[(x, ax2)]
    u1y, u2y = cx.arc_vertex[(y, ay1)], cx.arc_vertex[(y, ay2)]
    out = []
    for s2 in (0, 1):
        path2 = cx.path_along(u2x, u2y, s2)
        for s1 in (0, 1):
            path1 = cx.path_along(u1y, u1x, s1)
            darts = [cx.segment_dart(x, ax1)] + path2 + [cx.segment_dart(y, ay2)] + path1
            out.append(EmbeddedCycle(tuple(darts)))
    return out


def reduce_state_graph(diagram: LinkDiagram, graph: StateGraph) -> ReducedStateGraph:
    """Merge edges with the same ends whose union with circle arcs bounds a disk."""
    if graph.loops:
        raise LoopEdgePresent(f"loop edges at crossings {list(graph.loops)}")
    c = diagram.num_crossings
    parent = list(range(c))

    def find(u: int) -> int:
        while parent[u] != u:
            parent[u] = parent[parent[u]]
            u = parent[u]
        return u

    by_ends: dict[frozenset, list[int]] = {}
    for x, ends in enumerate(graph.edges):
        by_ends.setdefault(frozenset(ends), []).append(x)
    cx = None
    for group in by_ends.values():
        for i, x in enumerate(group):
            for y in group[i + 1 :]:
                if find(x) == find(y):
                    continue
                if diagram.genus == 0:
                    parallel = True
                else:
                    if cx is None:
                        cx = state_complex(diagram, graph.state, graph.circles)
                    parallel = any(is_contractible(cx.map, cyc) for cyc in parallel_cycles(cx, graph, x, y))
                if parallel:
                    rx, ry = find(x), find(y)
                    parent[max(rx, ry)] = min(rx, ry)
    classes: dict[int, list[int]] = {}
    for x in range(c):
        classes.setdefault(find(x), []).append(x)
    return ReducedStateGraph(graph, tuple(sorted(tuple(v) for v in classes.values())))


# ---------------------------------------------------------------------------
# adequacy
# ---------------------------------------------------------------------------


def is_geometrically_adequate(diagram: LinkDiagram, side: str) -> bool:
    """No loop in the side's state graph and all its circles contractible."""
    graph = state_graph(diagram, side_state(diagram, side))
    return not graph.loops and graph.circles.noncontractible_count == 0


def is_bks_adequate(diagram: LinkDiagram, side: str) -> bool:
    """Every state one change away has at most as many contractible circles
    as the side state has circles, or a different number of essential ones."""
    s0 = side_state(diagram, side)
    base = apply_state(diagram, s0)
    for x in range(diagram.num_crossings):
        s = apply_state(diagram, s0.flipped(x))
        if s.contractible_count > base.count and s.noncontractible_count == base.noncontractible_count:
            return False
    return True
