"""Link diagrams on surfaces: SPD parsing and diagram-level hypothesis checks.

A crossing lists its four edge labels counterclockwise.  Position 0 is the
incoming under-strand, position 2 the outgoing under-strand, and ``over_in``
(1 or 3) names the incoming over-strand.  Corners 1 and 3 (the corners
counterclockwise after the over-strand positions) are the A-corners; corner
``p`` lies between positions ``p`` and ``p + 1``.  Half-edge ``4 x + p`` is
position ``p`` of crossing ``x``, where crossings are indexed in id order.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable

from .surface_map import (
    CombinatorialMap,
    EdgeCrossing,
    EmbeddedCurve,
    NonSimpleCycle,
    VertexPass,
    build_map,
    embed_curve,
)


class DiagramError(ValueError):
    """Base class for invalid diagram input."""


class SPDSyntaxError(DiagramError):
    """Malformed SPD text; carries the offending line or field."""

    def __init__(self, message: str, line: int | None = None, field: str | None = None):
        where = []
        if line is not None:
            where.append(f"line {line}")
        if field is not None:
            where.append(f"field {field}")
        super().__init__(f"{message} ({', '.join(where)})" if where else message)
        self.line = line
        self.field = field


class OrientationInconsistent(DiagramError):
    """An edge does not join an outgoing end to an incoming end."""


class NotAlternating(DiagramError):
    """The operation needs an alternating diagram."""


class NotColorable(DiagramError):
    """Some face meets both A- and B-corners."""


class HypothesesNotMet(ValueError):
    """Preconditions of a check or formula are not satisfied."""

    def __init__(self, failed: Iterable[str], context: str = ""):
        self.failed = tuple(failed)
        msg = "hypotheses not met: " + ", ".join(self.failed)
        super().__init__(f"{context}: {msg}" if context else msg)


# ---------------------------------------------------------------------------
# diagrams
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Crossing:
    id: int
    darts: tuple[int, int, int, int]
    over_in: int

    @property
    def sign(self) -> int:
        return 1 if self.over_in == 3 else -1

    def switched(self) -> "Crossing":
        d0, d1, d2, d3 = self.darts
        if self.over_in == 1:
            return Crossing(self.id, (d1, d2, d3, d0), 3)
        return Crossing(self.id, (d3, d0, d1, d2), 1)


class LinkDiagram:
    """Immutable oriented link diagram cellularly embedded in a closed surface."""

    def __init__(self, crossings: Iterable[Crossing], name: str = ""):
        xs = tuple(sorted(crossings, key=lambda x: x.id))
        if not xs:
            raise DiagramError("a diagram needs at least one crossing")
        ids = [x.id for x in xs]
        if len(set(ids)) != len(ids):
            raise DiagramError("duplicate crossing id")
        for x in xs:
            if x.over_in not in (1, 3):
                raise DiagramError(f"crossing {x.id}: over_in must be 1 or 3")
        self.name = name
        self.crossings = xs
        self.map: CombinatorialMap = build_map([x.darts for x in xs])
        self._check_orientation()

    def _check_orientation(self) -> None:
        cmap = self.map
        for h, a in cmap.edges():
            if self.is_outgoing(h) == self.is_outgoing(a):
                kind = "outgoing" if self.is_outgoing(h) else "incoming"
                raise OrientationInconsistent(
                    f"edge {cmap.label[h]} joins two {kind} ends "
                    f"(crossings {self.crossings[h // 4].id} and {self.crossings[a // 4].id})"
                )

    # basic data ---------------------------------------------------------------

    @property
    def num_crossings(self) -> int:
        return len(self.crossings)

    @property
    def genus(self) -> int:
        return self.map.genus

    @property
    def euler_characteristic(self) -> int:
        return self.map.euler_characteristic

    def is_outgoing(self, h: int) -> bool:
        p = h % 4
        return p == 2 or p == (self.crossings[h // 4].over_in + 2) % 4

    @staticmethod
    def is_over(h: int) -> bool:
        return h % 2 == 1

    def corner_face(self, x: int, corner: int) -> int:
        return self.map.face_of[4 * x + corner % 4]

    @cached_property
    def writhe(self) -> int:
        return sum(x.sign for x in self.crossings)

    @cached_property
    def components(self) -> tuple[tuple[int, ...], ...]:
        """Link components as edge-label sequences in traversal order."""
        cmap = self.map
        seen: set[int] = set()
        comps = []
        for start in range(cmap.num_half_edges):
            if not self.is_outgoing(start) or start in seen:
                continue
            labels = []
            h = start
            while h not in seen:
                seen.add(h)
                labels.append(cmap.label[h])
                a = cmap.alpha[h]
                h = 4 * (a // 4) + (a % 4 + 2) % 4
            comps.append(tuple(labels))
        return tuple(comps)

    def mirror(self) -> "LinkDiagram":
        return LinkDiagram((x.switched() for x in self.crossings), name=f"mirror({self.name})" if self.name else "")

    def switch(self, ids: Iterable[int]) -> "LinkDiagram":
        ids = set(ids)
        return LinkDiagram((x.switched() if x.id in ids else x for x in self.crossings), name=self.name)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, LinkDiagram) and self.crossings == other.crossings

    def __hash__(self) -> int:
        return hash(self.crossings)

    def __repr__(self) -> str:
        return f"LinkDiagram({self.name!r}, c={self.num_crossings}, genus={self.genus})"


def writhe(diagram: LinkDiagram) -> int:
    return diagram.writhe


def mirror(diagram: LinkDiagram) -> LinkDiagram:
    return diagram.mirror()


# ---------------------------------------------------------------------------
# SPD text format
# ---------------------------------------------------------------------------


def _expect_int(value, field: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise SPDSyntaxError("expected an integer", field=field)
    return value


def diagram_from_dict(doc) -> LinkDiagram:
    if not isinstance(doc, dict):
        raise SPDSyntaxError("top level must be an object")
    unknown = set(doc) - {"name", "crossings"}
    if unknown:
        raise SPDSyntaxError(f"unknown keys {sorted(unknown)}")
    name = doc.get("name", "")
    if not isinstance(name, str):
        raise SPDSyntaxError("expected a string", field="name")
    raw = doc.get("crossings")
    if not isinstance(raw, list) or not raw:
        raise SPDSyntaxError("expected a non-empty list", field="crossings")
    xs = []
    for i, rec in enumerate(raw):
        where = f"crossings[{i}]"
        if not isinstance(rec, dict):
            raise SPDSyntaxError("expected an object", field=where)
        unknown = set(rec) - {"id", "darts", "over_in"}
        if unknown:
            raise SPDSyntaxError(f"unknown keys {sorted(unknown)}", field=where)
        for key in ("id", "darts", "over_in"):
            if key not in rec:
                raise SPDSyntaxError("missing key", field=f"{where}.{key}")
        cid = _expect_int(rec["id"], f"{where}.id")
        if cid < 0:
            raise SPDSyntaxError("ids are nonnegative", field=f"{where}.id")
        darts = rec["darts"]
        if not isinstance(darts, list) or len(darts) != 4:
            raise SPDSyntaxError("expected a list of 4 dart labels", field=f"{where}.darts")
        darts = tuple(_expect_int(d, f"{where}.darts[{k}]") for k, d in enumerate(darts))
        if any(d < 0 for d in darts):
            raise SPDSyntaxError("dart labels are nonnegative", field=f"{where}.darts")
        over_in = _expect_int(rec["over_in"], f"{where}.over_in")
        if over_in not in (1, 3):
            raise SPDSyntaxError("over_in must be 1 or 3", field=f"{where}.over_in")
        xs.append(Crossing(cid, darts, over_in))
    return LinkDiagram(xs, name=name)


def parse_spd(text: str) -> LinkDiagram:
    """Parse an SPD document into a validated diagram."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SPDSyntaxError(exc.msg, line=exc.lineno) from None
    return diagram_from_dict(doc)


def diagram_to_dict(diagram: LinkDiagram) -> dict:
    return {
        "name": diagram.name,
        "crossings": [
            {"id": x.id, "darts": list(x.darts), "over_in": x.over_in} for x in diagram.crossings
        ],
    }


def to_spd(diagram: LinkDiagram) -> str:
    """Serialise with one crossing per line, sorted by id."""
    lines = [
        f'    {{"id": {x.id}, "darts": [{", ".join(map(str, x.darts))}], "over_in": {x.over_in}}}'
        for x in diagram.crossings
    ]
    return '{\n  "name": ' + json.dumps(diagram.name) + ',\n  "crossings": [\n' + ",\n".join(lines) + "\n  ]\n}\n"


# ---------------------------------------------------------------------------
# alternating and checkerboard colouring
# ---------------------------------------------------------------------------


def is_alternating(diagram: LinkDiagram) -> bool:
    return all((h + a) % 2 == 1 for h, a in diagram.map.edges())


@dataclass(frozen=True)
class CheckerboardColoring:
    colors: tuple[str, ...]  # per face, "A" or "B"

    def faces(self, color: str) -> tuple[int, ...]:
        return tuple(f for f, c in enumerate(self.colors) if c == color)


def corner_label(corner: int) -> str:
    return "A" if corner % 2 == 1 else "B"


def checkerboard_coloring(diagram: LinkDiagram) -> CheckerboardColoring:
    """Face labelling by the common letter of each face's corners."""
    if not is_alternating(diagram):
        raise NotAlternating("checkerboard colouring is defined for alternating diagrams")
    colors: list[str | None] = [None] * diagram.map.num_faces
    for h in range(diagram.map.num_half_edges):
        f = diagram.map.face_of[h]
        lab = corner_label(h % 4)
        if colors[f] is None:
            colors[f] = lab
        elif colors[f] != lab:
            raise NotColorable(f"face {f} meets both A- and B-corners")
    return CheckerboardColoring(tuple(colors))  # type: ignore[arg-type]


def is_checkerboard_colorable(diagram: LinkDiagram) -> bool:
    try:
        checkerboard_coloring(diagram)
    except (NotAlternating, NotColorable):
        return False
    return True


# ---------------------------------------------------------------------------
# curves meeting the diagram in few points
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SmallCurve:
    """A simple closed curve meeting the diagram transversely in edge points."""

    events: tuple[EdgeCrossing, ...]
    contractible: bool
    crossings_per_side: tuple[int, ...]  # crossings inside each cut component
    disk_sides: tuple[int, ...]  # indices of components that are disks


def _classify(diagram: LinkDiagram, curve: EmbeddedCurve, events) -> SmallCurve:
    cut = curve.cut()
    counts = tuple(sum(1 for v in comp.vertices if v < curve.base_vertices) for comp in cut.components)
    disks = tuple(i for i, comp in enumerate(cut.components) if comp.is_disk)
    return SmallCurve(tuple(events), bool(disks), counts, disks)


def small_curves(diagram: LinkDiagram, max_points: int = 2) -> list[SmallCurve]:
    """All simple closed curves meeting the diagram in 1 or 2 edge points.

    Arcs between consecutive points lie in single faces, so a candidate is a
    choice of crossing directions on one or two edges compatible with the
    faces on either side.  The trivial curve around a piece of one edge is
    omitted.
    """
    cmap = diagram.map
    alpha, face_of = cmap.alpha, cmap.face_of
    out = []
    seen: set[tuple] = set()
    for s in range(cmap.num_half_edges):
        if face_of[s] == face_of[alpha[s]] and s < alpha[s]:
            events = [EdgeCrossing(s)]
            try:
                curve = embed_curve(cmap, events)
            except NonSimpleCycle:
                continue
            out.append(_classify(diagram, curve, events))
    if max_points < 2:
        return out
    face_darts: list[list[int]] = [[] for _ in range(cmap.num_faces)]
    for h in range(cmap.num_half_edges):
        face_darts[face_of[h]].append(h)
    for s1 in range(cmap.num_half_edges):
        target = face_of[alpha[s1]]
        for k in face_darts[face_of[s1]]:
            s2 = alpha[k]  # face_of[alpha[s2]] == face_of[s1]
            if face_of[s2] != target or s2 == alpha[s1]:
                continue
            key = min((s1, s2), (s2, s1), (alpha[s2], alpha[s1]), (alpha[s1], alpha[s2]))
            if key in seen:
                continue
            seen.add(key)
            if s2 == s1:
                events = [EdgeCrossing(s1, 0), EdgeCrossing(s1, 1)]
            else:
                events = [EdgeCrossing(s1), EdgeCrossing(s2)]
            try:
                curve = embed_curve(cmap, events)
            except NonSimpleCycle:
                continue
            out.append(_classify(diagram, curve, events))
    return out


def _prime_from_curves(diagram: LinkDiagram, curves: list[SmallCurve]) -> bool:
    genus0 = diagram.genus == 0
    for cur in curves:
        if len(cur.events) != 2 or not cur.contractible:
            continue
        if genus0:
            if all(n > 0 for n in cur.crossings_per_side):
                return False
        elif all(cur.crossings_per_side[i] > 0 for i in cur.disk_sides):
            return False
    return True


def is_prime(diagram: LinkDiagram) -> bool:
    """No disk meets the diagram in two points unless it holds a plain arc."""
    return _prime_from_curves(diagram, small_curves(diagram))


class Representativity(enum.Enum):
    """Edge representativity class: least intersection with an essential curve."""

    ONE = "1"
    TWO = "2"
    AT_LEAST_THREE = ">=3"
    AT_LEAST_FOUR = ">=4"

    def __str__(self) -> str:
        return self.value


def _representativity_from_curves(diagram: LinkDiagram, curves: list[SmallCurve]) -> Representativity:
    essential = [len(c.events) for c in curves if not c.contractible]
    if essential:
        return Representativity.ONE if min(essential) == 1 else Representativity.TWO
    # every essential curve meets a colourable diagram an even number of times
    if is_checkerboard_colorable(diagram):
        return Representativity.AT_LEAST_FOUR
    return Representativity.AT_LEAST_THREE


def edge_representativity_class(diagram: LinkDiagram) -> Representativity:
    return _representativity_from_curves(diagram, small_curves(diagram))


def _require_alternating_colorable(diagram: LinkDiagram, context: str) -> None:
    failed = []
    if not is_alternating(diagram):
        failed.append("alternating")
    elif not is_checkerboard_colorable(diagram):
        failed.append("checkerboard colorable")
    if failed:
        raise HypothesesNotMet(failed, context)


def is_reduced(diagram: LinkDiagram) -> bool:
    """Reducedness via primeness plus edge representativity at least 4."""
    _require_alternating_colorable(diagram, "is_reduced")
    curves = small_curves(diagram)
    if not all(diagram.components):
        return False
    return _prime_from_curves(diagram, curves) and (
        _representativity_from_curves(diagram, curves) is Representativity.AT_LEAST_FOUR
    )


# ---------------------------------------------------------------------------
# twist regions
# ---------------------------------------------------------------------------


def bigon_faces(diagram: LinkDiagram) -> list[tuple[int, int, int]]:
    """Faces with two corners at distinct crossings, as (face, x, y)."""
    out = []
    for f, walk in enumerate(diagram.map.faces):
        if len(walk) == 2:
            x, y = walk[0] // 4, walk[1] // 4
            if x != y:
                out.append((f, min(x, y), max(x, y)))
    return out


@dataclass(frozen=True)
class TwistDecomposition:
    regions: tuple[tuple[int, ...], ...]  # crossing indices per region
    region_of: tuple[int, ...]

    @property
    def count(self) -> int:
        return len(self.regions)


def twist_regions(diagram: LinkDiagram) -> TwistDecomposition:
    """Maximal chains of crossings joined by bigon faces; lone crossings otherwise."""
    c = diagram.num_crossings
    parent = list(range(c))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for _, x, y in bigon_faces(diagram):
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[max(rx, ry)] = min(rx, ry)
    groups: dict[int, list[int]] = {}
    for x in range(c):
        groups.setdefault(find(x), []).append(x)
    regions = tuple(sorted(tuple(g) for g in groups.values()))
    region_of = [0] * c
    for i, reg in enumerate(regions):
        for x in reg:
            region_of[x] = i
    return TwistDecomposition(regions, tuple(region_of))


@dataclass(frozen=True)
class FourPointCurve:
    """A curve through crossings x and y along opposite corners of each."""

    x: int
    y: int
    corners_x: tuple[int, int]
    corners_y: tuple[int, int]
    contractible: bool
    satisfied: bool


def four_point_curves(diagram: LinkDiagram) -> list[FourPointCurve]:
    """Simple curves meeting the diagram only at two crossings, passing each
    between opposite corners; pushing the curve off either crossing gives the
    curves meeting the diagram in four points adjacent to two crossings.

    Each curve is judged against the twist-reduced condition: some disk it
    bounds holds only bigons of the twist region of both crossings, or the
    complement of its disk side holds a bigon chain joining them.
    """
    cmap = diagram.map
    twist = twist_regions(diagram)
    bigons = bigon_faces(diagram)
    genus0 = diagram.genus == 0
    c = diagram.num_crossings
    out = []
    for x in range(c):
        for y in range(x + 1, c):
            for a in (0, 1):
                for b in range(4):
                    if diagram.corner_face(x, a + 2) != diagram.corner_face(y, b):
                        continue
                    if diagram.corner_face(y, b + 2) != diagram.corner_face(x, a):
                        continue
                    events = [VertexPass(x, a, a + 2), VertexPass(y, b, (b + 2) % 4)]
                    try:
                        curve = embed_curve(cmap, events)
                    except NonSimpleCycle:
                        continue
                    cut = curve.cut()
                    disks = [i for i, comp in enumerate(cut.components) if comp.is_disk]
                    if not disks:
                        out.append(FourPointCurve(x, y, (a, a + 2), (b, (b + 2) % 4), False, True))
                        continue
                    same_region = twist.region_of[x] == twist.region_of[y]
                    ok = False
                    if same_region:
                        for i in disks if genus0 else disks[:1]:
                            if _side_is_chain(diagram, curve, cut.components[i], twist, x):
                                ok = True
                        if not ok and not genus0:
                            inside = cut.components[disks[0]]
                            ok = _chain_outside(diagram, curve, inside, bigons, x, y)
                    out.append(FourPointCurve(x, y, (a, a + 2), (b, (b + 2) % 4), True, ok))
    return out


def _intact_faces_in(diagram, curve: EmbeddedCurve, comp) -> list[int]:
    faces = set(comp.faces)
    return [
        f
        for f in range(diagram.map.num_faces)
        if f not in curve.traversed_faces and curve.intact_face(diagram.map, f) in faces
    ]


def _side_is_chain(diagram, curve, comp, twist, x) -> bool:
    region = twist.region_of[x]
    for v in comp.vertices:
        if v < curve.base_vertices and twist.region_of[v] != region:
            return False
    return all(len(diagram.map.faces[f]) == 2 for f in _intact_faces_in(diagram, curve, comp))


def _chain_outside(diagram, curve, inside, bigons, x, y) -> bool:
    inner = set(inside.vertices)
    # bigons cut by the curve join x and y directly and may belong to the chain
    blocked = set(_intact_faces_in(diagram, curve, inside))
    adj: dict[int, set[int]] = {}
    for f, u, v in bigons:
        if f in blocked or u in inner or v in inner:
            continue
        adj.setdefault(u, set()).add(v)
        adj.setdefault(v, set()).add(u)
    seen = {x}
    stack = [x]
    while stack:
        u = stack.pop()
        if u == y:
            return True
        for w in adj.get(u, ()):
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return False


def is_twist_reduced(diagram: LinkDiagram) -> bool:
    _require_alternating_colorable(diagram, "is_twist_reduced")
    return all(cur.satisfied for cur in four_point_curves(diagram))
