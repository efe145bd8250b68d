"""Combinatorial maps of graphs cellularly embedded in closed orientable surfaces.

A map is given by a rotation system: for every vertex, the counterclockwise
cyclic list of edge labels leaving it.  Each label occurs exactly twice (the
two ends of an edge, possibly at the same vertex).  Half-edges are numbered by
their position in the flattened list of rotations.

Faces are traced with ``phi = sigma^-1 o alpha``; the face of half-edge ``h``
is the face incident to the corner ``(h, sigma h)``, i.e. the face on the left
when walking out along ``h``.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from typing import Union


class MapError(ValueError):
    """Base class for invalid maps and curves."""


class DanglingDart(MapError):
    """An edge label does not occur exactly twice."""


class NotFourValent(MapError):
    """A vertex does not have exactly four half-edges."""


class Disconnected(MapError):
    """The underlying graph is not connected."""


class NonSimpleCycle(MapError):
    """A cycle or curve revisits a cell, does not close up, or crosses itself."""


# ---------------------------------------------------------------------------
# the map
# ---------------------------------------------------------------------------


class CombinatorialMap:
    """Immutable rotation-system map of arbitrary vertex valence."""

    __slots__ = (
        "rotations",
        "offsets",
        "vertex_of",
        "position",
        "sigma",
        "sigma_inv",
        "alpha",
        "label",
        "faces",
        "face_of",
        "_hash",
    )

    def __init__(self, rotations: Iterable[Sequence[int]]):
        self.rotations: tuple[tuple[int, ...], ...] = tuple(tuple(r) for r in rotations)
        offsets = []
        vertex_of: list[int] = []
        position: list[int] = []
        label: list[int] = []
        for v, rot in enumerate(self.rotations):
            offsets.append(len(label))
            for i, lab in enumerate(rot):
                vertex_of.append(v)
                position.append(i)
                label.append(lab)
        n = len(label)
        sigma = [0] * n
        sigma_inv = [0] * n
        for v, rot in enumerate(self.rotations):
            base, deg = offsets[v], len(rot)
            for i in range(deg):
                sigma[base + i] = base + (i + 1) % deg
                sigma_inv[base + i] = base + (i - 1) % deg
        where: dict[int, list[int]] = {}
        for h, lab in enumerate(label):
            where.setdefault(lab, []).append(h)
        alpha = [0] * n
        for lab, hs in where.items():
            if len(hs) != 2:
                raise DanglingDart(f"edge label {lab} occurs {len(hs)} time(s), expected 2")
            alpha[hs[0]], alpha[hs[1]] = hs[1], hs[0]
        self.offsets = tuple(offsets)
        self.vertex_of = tuple(vertex_of)
        self.position = tuple(position)
        self.sigma = tuple(sigma)
        self.sigma_inv = tuple(sigma_inv)
        self.alpha = tuple(alpha)
        self.label = tuple(label)
        self.faces, self.face_of = _trace(self.sigma_inv, self.alpha)
        self._hash = None

    # basic counts -----------------------------------------------------------

    @property
    def num_half_edges(self) -> int:
        return len(self.label)

    @property
    def num_vertices(self) -> int:
        return len(self.rotations)

    @property
    def num_edges(self) -> int:
        return len(self.label) // 2

    @property
    def num_faces(self) -> int:
        return len(self.faces)

    @property
    def euler_characteristic(self) -> int:
        return self.num_vertices - self.num_edges + self.num_faces

    @property
    def genus(self) -> int:
        chi = self.euler_characteristic
        if chi > 2 or chi % 2:
            raise MapError(f"Euler characteristic {chi} is not that of a connected orientable surface")
        return (2 - chi) // 2

    def half_edge(self, vertex: int, pos: int) -> int:
        """Index of the half-edge at ``pos`` (mod valence) of ``vertex``."""
        deg = len(self.rotations[vertex])
        return self.offsets[vertex] + pos % deg

    def degree(self, vertex: int) -> int:
        return len(self.rotations[vertex])

    def edges(self) -> list[tuple[int, int]]:
        """Edges as ``(h, alpha h)`` with ``h < alpha h``, sorted."""
        return [(h, a) for h, a in enumerate(self.alpha) if h < a]

    def is_connected(self) -> bool:
        if not self.rotations:
            return False
        seen = {0}
        stack = [0]
        while stack:
            v = stack.pop()
            base = self.offsets[v]
            for h in range(base, base + len(self.rotations[v])):
                w = self.vertex_of[self.alpha[h]]
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == len(self.rotations)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, CombinatorialMap) and self.rotations == other.rotations

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.rotations)
        return self._hash

    def __repr__(self) -> str:
        return (
            f"CombinatorialMap(V={self.num_vertices}, E={self.num_edges}, "
            f"F={self.num_faces}, chi={self.euler_characteristic})"
        )


def _trace(sigma_inv: Sequence[int], alpha: Sequence[int]):
    n = len(alpha)
    face_of = [-1] * n
    walks: list[tuple[int, ...]] = []
    for start in range(n):
        if face_of[start] >= 0:
            continue
        walk = []
        h = start
        while face_of[h] < 0:
            face_of[h] = len(walks)
            walk.append(h)
            h = sigma_inv[alpha[h]]
        walks.append(tuple(walk))
    # walks are discovered in order of least half-edge already
    return tuple(walks), tuple(face_of)


def build_map(
    vertex_records: Sequence[Sequence[int]],
    pairing: Union[dict[int, int], Iterable[tuple[int, int]], None] = None,
) -> CombinatorialMap:
    """Validated 4-valent connected map.

    Without ``pairing`` the records hold edge labels (each occurring twice).
    With ``pairing`` the records hold distinct dart ids, and ``pairing`` lists
    which darts are the two ends of an edge.
    """
    records = [tuple(r) for r in vertex_records]
    for i, rec in enumerate(records):
        if len(rec) != 4:
            raise NotFourValent(f"vertex {i} has {len(rec)} darts, expected 4")
    if pairing is not None:
        pairs = pairing.items() if isinstance(pairing, dict) else pairing
        edge_of: dict[int, int] = {}
        for k, (d1, d2) in enumerate(pairs):
            for d in (d1, d2):
                if d in edge_of and edge_of[d] != k:
                    raise DanglingDart(f"dart {d} is paired twice")
                edge_of[d] = k
        darts = [d for rec in records for d in rec]
        if len(set(darts)) != len(darts):
            raise DanglingDart("dart ids in records are not distinct")
        for d in darts:
            if d not in edge_of:
                raise DanglingDart(f"dart {d} is unpaired")
        used = set(darts)
        for d in edge_of:
            if d not in used:
                raise DanglingDart(f"paired dart {d} does not occur in any record")
        records = [tuple(edge_of[d] for d in rec) for rec in records]
    cmap = CombinatorialMap(records)
    if not cmap.is_connected():
        raise Disconnected("the graph has more than one connected component")
    cmap.genus  # validates chi
    return cmap


def trace_faces(cmap: CombinatorialMap) -> list[tuple[int, ...]]:
    """Face walks as tuples of half-edges, sorted by least half-edge."""
    return list(cmap.faces)


# ---------------------------------------------------------------------------
# cycles and cutting
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class EmbeddedCycle:
    """Closed edge path given by its outgoing half-edges in traversal order."""

    darts: tuple[int, ...]

    def reversed(self, cmap: CombinatorialMap) -> "EmbeddedCycle":
        return EmbeddedCycle(tuple(cmap.alpha[d] for d in reversed(self.darts)))

    def rotated(self, k: int) -> "EmbeddedCycle":
        k %= len(self.darts)
        return EmbeddedCycle(self.darts[k:] + self.darts[:k])


@dataclass(frozen=True)
class CircleArrangement:
    """Disjoint circles described by region bookkeeping over the faces of a map.

    ``strips[i]`` is a pair of faces joined by a band through a smoothed vertex;
    ``sides[j]`` gives, for circle ``j``, one face on each of its two sides.
    Every face is a disk and every strip attaches a band, so a region made of
    ``n`` faces and ``m`` strips has Euler characteristic ``n - m``.
    """

    num_faces: int
    strips: tuple[tuple[int, int], ...]
    sides: tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class CutComponent:
    euler_characteristic: int
    boundary_count: int
    faces: tuple[int, ...]
    vertices: tuple[int, ...] = ()

    @property
    def is_disk(self) -> bool:
        return self.euler_characteristic == 1 and self.boundary_count == 1


@dataclass(frozen=True)
class CutResult:
    """Pieces of the surface cut along one or more disjoint simple cycles.

    ``sides[j]`` holds the component indices on the left and right of cycle j.
    """

    components: tuple[CutComponent, ...]
    sides: tuple[tuple[int, int], ...]

    @property
    def total_euler_characteristic(self) -> int:
        return sum(c.euler_characteristic for c in self.components)

    def signature(self) -> tuple[tuple[int, int], ...]:
        return tuple(sorted((c.euler_characteristic, c.boundary_count) for c in self.components))


class _UnionFind:
    __slots__ = ("parent",)

    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        parent = self.parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if ra < rb:
            self.parent[rb] = ra
        else:
            self.parent[ra] = rb
        return True


def validate_cycle(cmap: CombinatorialMap, cycle: EmbeddedCycle) -> None:
    darts = cycle.darts
    if not darts:
        raise NonSimpleCycle("empty cycle")
    verts = [cmap.vertex_of[d] for d in darts]
    if len(set(verts)) != len(verts):
        raise NonSimpleCycle("cycle visits a vertex twice")
    edges = [min(d, cmap.alpha[d]) for d in darts]
    if len(set(edges)) != len(edges):
        raise NonSimpleCycle("cycle uses an edge twice")
    for k, d in enumerate(darts):
        nxt = darts[(k + 1) % len(darts)]
        if cmap.vertex_of[cmap.alpha[d]] != cmap.vertex_of[nxt]:
            raise NonSimpleCycle("cycle does not close up")


def cut_along_cycles(cmap: CombinatorialMap, cycles: Sequence[EmbeddedCycle]) -> CutResult:
    """Cut along pairwise vertex-disjoint simple cycles of the 1-skeleton."""
    on_cycle_vertex: set[int] = set()
    on_cycle_edge: set[int] = set()
    for cyc in cycles:
        validate_cycle(cmap, cyc)
        verts = {cmap.vertex_of[d] for d in cyc.darts}
        if verts & on_cycle_vertex:
            raise NonSimpleCycle("cycles are not disjoint")
        on_cycle_vertex |= verts
        for d in cyc.darts:
            on_cycle_edge.add(d)
            on_cycle_edge.add(cmap.alpha[d])
    uf = _UnionFind(cmap.num_faces)
    face_of, alpha = cmap.face_of, cmap.alpha
    off_edges = []
    for h, a in cmap.edges():
        if h not in on_cycle_edge:
            uf.union(face_of[h], face_of[a])
            off_edges.append(h)
    return _collect(cmap, uf, cycles, off_edges, on_cycle_vertex, face_of, alpha)


def _collect(cmap, uf, cycles, off_edges, on_cycle_vertex, face_of, alpha) -> CutResult:
    roots: dict[int, int] = {}
    comp_faces: list[list[int]] = []
    for f in range(cmap.num_faces):
        r = uf.find(f)
        if r not in roots:
            roots[r] = len(comp_faces)
            comp_faces.append([])
        comp_faces[roots[r]].append(f)
    k = len(comp_faces)
    chi = [len(fs) for fs in comp_faces]
    boundary = [0] * k
    verts: list[list[int]] = [[] for _ in range(k)]
    for h in off_edges:
        chi[roots[uf.find(face_of[h])]] -= 1
    for v in range(cmap.num_vertices):
        if v not in on_cycle_vertex:
            idx = roots[uf.find(face_of[cmap.offsets[v]])]
            chi[idx] += 1
            verts[idx].append(v)
    sides = []
    for cyc in cycles:
        d = cyc.darts[0]
        left = roots[uf.find(face_of[d])]
        right = roots[uf.find(face_of[alpha[d]])]
        boundary[left] += 1
        boundary[right] += 1
        sides.append((left, right))
    comps = tuple(
        CutComponent(chi[i], boundary[i], tuple(comp_faces[i]), tuple(verts[i])) for i in range(k)
    )
    return CutResult(comps, tuple(sides))


def cut_arrangement(arrangement: CircleArrangement, cut: Iterable[int]) -> CutResult:
    """Cut along the circles in ``cut``, leaving the other circles glued back."""
    cut = set(cut)
    uf = _UnionFind(arrangement.num_faces)
    for fa, fb in arrangement.strips:
        uf.union(fa, fb)
    for j, (fa, fb) in enumerate(arrangement.sides):
        if j not in cut:
            uf.union(fa, fb)
    roots: dict[int, int] = {}
    comp_faces: list[list[int]] = []
    for f in range(arrangement.num_faces):
        r = uf.find(f)
        if r not in roots:
            roots[r] = len(comp_faces)
            comp_faces.append([])
        comp_faces[roots[r]].append(f)
    chi = [len(fs) for fs in comp_faces]
    for fa, _ in arrangement.strips:
        chi[roots[uf.find(fa)]] -= 1
    boundary = [0] * len(comp_faces)
    sides = []
    for j in sorted(cut):
        fa, fb = arrangement.sides[j]
        a, b = roots[uf.find(fa)], roots[uf.find(fb)]
        boundary[a] += 1
        boundary[b] += 1
        sides.append((a, b))
    comps = tuple(CutComponent(chi[i], boundary[i], tuple(comp_faces[i])) for i in range(len(comp_faces)))
    return CutResult(comps, tuple(sides))


def cut_along_cycle(
    cmap: CombinatorialMap,
    cycle: Union[EmbeddedCycle, int],
    circles: CircleArrangement | None = None,
) -> CutResult:
    """Cut the surface along one simple closed curve.

    With ``circles`` given, ``cycle`` is the index of a circle of the
    arrangement and the cut uses region bookkeeping; otherwise ``cycle`` is a
    simple cycle in the 1-skeleton of ``cmap``.
    """
    if circles is not None:
        if not isinstance(cycle, int) or not 0 <= cycle < len(circles.sides):
            raise NonSimpleCycle("cycle must index a circle of the arrangement")
        if circles.num_faces != cmap.num_faces:
            raise MapError("arrangement does not belong to this map")
        return cut_arrangement(circles, [cycle])
    if not isinstance(cycle, EmbeddedCycle):
        raise TypeError("expected an EmbeddedCycle")
    return cut_along_cycles(cmap, [cycle])


def is_contractible(
    cmap: CombinatorialMap,
    cycle: Union[EmbeddedCycle, int],
    circles: CircleArrangement | None = None,
) -> bool:
    """True iff the curve bounds a disk in the surface."""
    cut = cut_along_cycle(cmap, cycle, circles)
    return any(c.is_disk for c in cut.components)


def face_cycle(cmap: CombinatorialMap, face: int) -> EmbeddedCycle:
    """Boundary of a face as a cycle (valid when the walk is simple)."""
    # walking out along h, then along phi(h), keeps the face on the left
    return EmbeddedCycle(tuple(cmap.faces[face]))


# ---------------------------------------------------------------------------
# homology
# ---------------------------------------------------------------------------


def homology_basis(cmap: CombinatorialMap) -> tuple[tuple[int, ...], ...]:
    """Per-half-edge first homology coordinates from a tree-cotree split.

    Returns a tuple ``coords`` with ``coords[h]`` a vector of ``2g`` integers:
    the intersection numbers of the oriented edge ``h`` with a fixed basis of
    dual cycles.  Summing over a closed walk gives its homology class in a
    basis-independent-of-walk way; ``coords[alpha h] = -coords[h]``.
    """
    n, nv, nf = cmap.num_half_edges, cmap.num_vertices, cmap.num_faces
    alpha, vertex_of, face_of = cmap.alpha, cmap.vertex_of, cmap.face_of
    in_tree = [False] * n
    seen = [False] * nv
    seen[0] = True
    queue = [0]
    for v in queue:
        base = cmap.offsets[v]
        for h in range(base, base + cmap.degree(v)):
            w = vertex_of[alpha[h]]
            if not seen[w]:
                seen[w] = True
                in_tree[h] = in_tree[alpha[h]] = True
                queue.append(w)
    # dual spanning tree over non-tree edges, oriented towards face 0
    in_cotree = [False] * n
    parent_dart = [-1] * nf  # dart h with face_of[h] == f whose other side is the parent
    fseen = [False] * nf
    fseen[0] = True
    fqueue = [0]
    face_darts: list[list[int]] = [[] for _ in range(nf)]
    for h in range(n):
        face_darts[face_of[h]].append(h)
    for f in fqueue:
        for h in face_darts[f]:
            if in_tree[h]:
                continue
            g = face_of[alpha[h]]
            if not fseen[g]:
                fseen[g] = True
                in_cotree[h] = in_cotree[alpha[h]] = True
                parent_dart[g] = alpha[h]
                fqueue.append(g)
    leftover = [h for h in range(n) if h < alpha[h] and not in_tree[h] and not in_cotree[h]]
    dim = len(leftover)
    coords = [[0] * dim for _ in range(n)]
    for k, x in enumerate(leftover):
        # dual cycle: cross x from left(x) to right(x), then walk back up the
        # cotree from right(x) to face 0 and down to left(x)
        crossings: dict[int, int] = {x: 1}

        def path_to_root(f: int) -> list[int]:
            path = []
            while f != 0:
                d = parent_dart[f]
                path.append(d)
                f = face_of[alpha[d]]
            return path

        # moving from f to parent crosses d (with face_of[d] == f) from left(d) to right(d)
        for d in path_to_root(face_of[alpha[x]]):
            crossings[d] = crossings.get(d, 0) + 1
        for d in path_to_root(face_of[x]):
            # traversed from parent to f: crosses alpha(d) from its left to right
            e = alpha[d]
            crossings[e] = crossings.get(e, 0) + 1
        for d, mult in crossings.items():
            coords[d][k] += mult
            coords[alpha[d]][k] -= mult
    return tuple(tuple(c) for c in coords)


def walk_homology(coords: Sequence[Sequence[int]], darts: Iterable[int]) -> tuple[int, ...]:
    total: list[int] | None = None
    for d in darts:
        if total is None:
            total = list(coords[d])
        else:
            for i, x in enumerate(coords[d]):
                total[i] += x
    return tuple(total) if total is not None else ()


# ---------------------------------------------------------------------------
# refining a map along a transverse curve
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class EdgeCrossing:
    """The curve crosses edge(``dart``) from the right of ``dart`` to its left.

    ``rank`` orders several crossings of the same edge along the direction of
    the smaller half-edge of that edge.
    """

    dart: int
    rank: int = 0


@dataclass(frozen=True)
class VertexPass:
    """The curve passes through ``vertex`` from one corner to another.

    Corner ``i`` sits between positions ``i`` and ``i + 1`` of the rotation.
    """

    vertex: int
    corner_in: int
    corner_out: int


CurveEvent = Union[EdgeCrossing, VertexPass]


@dataclass(frozen=True)
class EmbeddedCurve:
    """A curve realised as a cycle of a refined map.

    Vertices ``0 .. base_vertices - 1`` of ``refined`` are the original
    vertices; ``half_edge_map[h]`` is the refined half-edge for original ``h``.
    """

    refined: CombinatorialMap
    cycle: EmbeddedCycle
    base_vertices: int
    half_edge_map: tuple[int, ...]
    traversed_faces: frozenset[int]

    def cut(self) -> CutResult:
        return cut_along_cycles(self.refined, [self.cycle])

    def intact_face(self, base: CombinatorialMap, face: int) -> int:
        """Refined face corresponding to an original face not met by the curve."""
        return self.refined.face_of[self.half_edge_map[base.faces[face][0]]]


def _entry_exit(cmap: CombinatorialMap, ev: CurveEvent) -> tuple[int, int]:
    if isinstance(ev, EdgeCrossing):
        return cmap.face_of[cmap.alpha[ev.dart]], cmap.face_of[ev.dart]
    return (
        cmap.face_of[cmap.half_edge(ev.vertex, ev.corner_in)],
        cmap.face_of[cmap.half_edge(ev.vertex, ev.corner_out)],
    )


def embed_curve(cmap: CombinatorialMap, events: Sequence[CurveEvent]) -> EmbeddedCurve:
    """Insert a closed curve, as a cyclic sequence of events, into the map.

    Consecutive events are joined by an arc inside a single face.  The curve is
    simple iff the refined map still has the Euler characteristic of the
    surface; otherwise ``NonSimpleCycle`` is raised.
    """
    m = len(events)
    if m == 0:
        raise NonSimpleCycle("empty curve")
    for j in range(m):
        _, out_face = _entry_exit(cmap, events[j])
        in_face, _ = _entry_exit(cmap, events[(j + 1) % m])
        if out_face != in_face:
            raise NonSimpleCycle(f"arc {j} would leave face {out_face} into face {in_face}")
    passes = [ev.vertex for ev in events if isinstance(ev, VertexPass)]
    if len(set(passes)) != len(passes):
        raise NonSimpleCycle("curve passes a vertex twice")
    for ev in events:
        if isinstance(ev, VertexPass) and (ev.corner_in - ev.corner_out) % cmap.degree(ev.vertex) == 0:
            raise NonSimpleCycle("a vertex pass must use two different corners")

    alpha = cmap.alpha
    nv = cmap.num_vertices
    next_label = [0]

    def fresh() -> int:
        next_label[0] += 1
        return next_label[0] - 1

    # points on edges, grouped by canonical half-edge
    by_edge: dict[int, list[tuple[int, int]]] = {}
    for j, ev in enumerate(events):
        if isinstance(ev, EdgeCrossing):
            h0 = min(ev.dart, alpha[ev.dart])
            by_edge.setdefault(h0, []).append((ev.rank, j))
    for pts in by_edge.values():
        ranks = [r for r, _ in pts]
        if len(set(ranks)) != len(ranks):
            raise NonSimpleCycle("two crossings of one edge share a rank")
        pts.sort()

    # labels for edge pieces at the original half-edges
    end_label = [-1] * cmap.num_half_edges
    point_vertex: dict[int, int] = {}  # event index -> refined vertex
    new_rot: list[list[int]] = [list() for _ in range(nv)]
    point_rots: list[list[int]] = []
    # chord labels: chord j joins event j (exit) to event j+1 (entry)
    chord = [fresh() for _ in range(m)]
    for h, a in cmap.edges():
        pts = by_edge.get(h)
        if not pts:
            lab = fresh()
            end_label[h] = end_label[a] = lab
            continue
        pieces = [fresh() for _ in range(len(pts) + 1)]
        end_label[h] = pieces[0]
        end_label[a] = pieces[-1]
        for i, (_, j) in enumerate(pts):
            ev = events[j]
            exit_lab = chord[j]
            entry_lab = chord[(j - 1) % m]
            if ev.dart == h:
                left, right = exit_lab, entry_lab
            else:
                left, right = entry_lab, exit_lab
            point_vertex[j] = nv + len(point_rots)
            point_rots.append([pieces[i + 1], left, pieces[i], right])
    inserted = {ev.vertex: ev for ev in events if isinstance(ev, VertexPass)}
    pass_index = {ev.vertex: j for j, ev in enumerate(events) if isinstance(ev, VertexPass)}
    half_edge_map = [0] * cmap.num_half_edges
    out_slot: dict[int, tuple[int, int]] = {}
    offset = 0
    for v in range(nv):
        rot = []
        ev = inserted.get(v)
        for i in range(cmap.degree(v)):
            h = cmap.offsets[v] + i
            half_edge_map[h] = offset + len(rot)
            rot.append(end_label[h])
            if ev is not None:
                j = pass_index[v]
                deg = cmap.degree(v)
                if i == ev.corner_in % deg:
                    rot.append(chord[(j - 1) % m])
                if i == ev.corner_out % deg:
                    out_slot[j] = (v, len(rot))
                    rot.append(chord[j])
        new_rot[v] = rot
        offset += len(rot)
    refined = CombinatorialMap(new_rot + point_rots)
    if refined.euler_characteristic != cmap.euler_characteristic:
        raise NonSimpleCycle("curve is not embedded (arcs cross)")
    darts = []
    for j, ev in enumerate(events):
        if isinstance(ev, VertexPass):
            v, slot = out_slot[j]
            darts.append(refined.half_edge(v, slot))
        else:
            v = point_vertex[j]
            slot = 1 if ev.dart == min(ev.dart, alpha[ev.dart]) else 3
            darts.append(refined.half_edge(v, slot))
    traversed = frozenset(_entry_exit(cmap, ev)[1] for ev in events)
    return EmbeddedCurve(refined, EmbeddedCycle(tuple(darts)), nv, tuple(half_edge_map), traversed)
