"""Random link diagrams on surfaces of prescribed genus.

Alternating diagrams are built as medial graphs of random cellular maps: the
medial graph of any map is 4-valent, lives on the same surface, and its faces
are split into vertex-faces and face-faces, giving a checkerboard colouring
and hence an alternating over/under choice.  Non-alternating diagrams come
from switching crossings, and non-colourable projections from growing a
4-valent map by crossing insertions inside faces.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Sequence

from ..link_diagram import (
    Crossing,
    LinkDiagram,
    is_checkerboard_colorable,
    is_reduced,
    is_twist_reduced,
)
from ..surface_map import CombinatorialMap


class ConstraintExhausted(RuntimeError):
    """Rejection sampling did not meet the constraints within its budget."""


@dataclass(frozen=True)
class GeneratorSpec:
    genus: int
    crossings: int
    seed: int = 0
    require_alternating: bool = True
    require_colorable: bool = False
    require_reduced: bool = False
    require_twist_reduced: bool = False
    max_attempts: int = 2000

    def __post_init__(self):
        if self.crossings < 1:
            raise ValueError("crossing count must be at least 1")
        if self.genus < 0:
            raise ValueError("genus must be nonnegative")


# ---------------------------------------------------------------------------
# random cellular maps
# ---------------------------------------------------------------------------


def bouquet(genus: int) -> list[list[int]]:
    """One vertex with interleaved loop pairs a b a b ...; a single face."""
    if genus == 0:
        return [[0], [0]]
    rot: list[int] = []
    for k in range(genus):
        a, b = 2 * k, 2 * k + 1
        rot += [a, b, a, b]
    return [rot]


def _fresh(rotations: Sequence[Sequence[int]]) -> int:
    return 1 + max((lab for rot in rotations for lab in rot), default=-1)


def grow_map(rotations: list[list[int]], rng: random.Random, weights=(1.0, 4.0, 2.0)) -> list[list[int]]:
    """One genus-preserving move: pendant edge, chord in a face, or subdivision."""
    cmap = CombinatorialMap(rotations)
    lab = _fresh(rotations)
    move = rng.choices(("pendant", "chord", "subdivide"), weights=weights)[0]
    rots = [list(r) for r in rotations]
    if move == "pendant":
        h = rng.randrange(cmap.num_half_edges)
        v, i = cmap.vertex_of[h], cmap.position[h]
        rots[v].insert(i + 1, lab)
        rots.append([lab])
    elif move == "chord":
        f = rng.randrange(cmap.num_faces)
        walk = cmap.faces[f]
        h1, h2 = rng.choice(walk), rng.choice(walk)
        if h1 == h2:
            return rots
        v1, i1 = cmap.vertex_of[h1], cmap.position[h1]
        v2, i2 = cmap.vertex_of[h2], cmap.position[h2]
        if v1 == v2:
            for i in sorted((i1, i2), reverse=True):
                rots[v1].insert(i + 1, lab)
        else:
            rots[v1].insert(i1 + 1, lab)
            rots[v2].insert(i2 + 1, lab)
    else:
        h = rng.randrange(cmap.num_half_edges)
        a = cmap.alpha[h]
        v, i = cmap.vertex_of[h], cmap.position[h]
        w, j = cmap.vertex_of[a], cmap.position[a]
        rots[v][i] = lab
        rots[w][j] = lab + 1
        rots.append([lab, lab + 1])
    return rots


# Maps whose faces are simple cycles and whose essential curves all meet the
# graph at least twice; their medial diagrams are reduced.
REDUCED_BASES: dict[int, list[list[int]]] = {
    0: [[0, 1], [1, 0]],
    1: [[0, 1, 4, 3], [2, 3, 6, 1], [4, 5, 0, 7], [6, 7, 2, 5]],
    2: [
        [0, 12, 9, 5], [1, 11, 8, 6, 0], [2, 6, 7, 1],
        [7, 3, 2, 10], [3, 9, 11, 4], [10, 5, 8, 12, 4],
    ],
}


def grow_reduced(rotations: list[list[int]], rng: random.Random) -> list[list[int]]:
    """Chord between distinct vertices of a face, or edge subdivision.

    Both moves keep faces simple and cannot lower the number of times an
    essential curve must meet the graph.
    """
    cmap = CombinatorialMap(rotations)
    lab = _fresh(rotations)
    rots = [list(r) for r in rotations]
    if rng.random() < 0.7:
        f = rng.randrange(cmap.num_faces)
        walk = cmap.faces[f]
        h1, h2 = rng.sample(walk, 2) if len(walk) > 1 else (walk[0], walk[0])
        v1, i1 = cmap.vertex_of[h1], cmap.position[h1]
        v2, i2 = cmap.vertex_of[h2], cmap.position[h2]
        if v1 != v2:
            rots[v1].insert(i1 + 1, lab)
            rots[v2].insert(i2 + 1, lab)
            return rots
    h = rng.randrange(cmap.num_half_edges)
    a = cmap.alpha[h]
    v, i = cmap.vertex_of[h], cmap.position[h]
    w, j = cmap.vertex_of[a], cmap.position[a]
    rots[v][i] = lab
    rots[w][j] = lab + 1
    rots.append([lab, lab + 1])
    return rots


def reduced_map(genus: int, edges: int, rng: random.Random) -> CombinatorialMap | None:
    """Random map grown from a reduced base, or None if there is no base that small."""
    base = REDUCED_BASES.get(genus)
    if base is None or CombinatorialMap(base).num_edges > edges:
        return None
    rots = [list(r) for r in base]
    while CombinatorialMap(rots).num_edges < edges:
        rots = grow_reduced(rots, rng)
    return CombinatorialMap(rots)


def random_map(genus: int, edges: int, rng: random.Random) -> CombinatorialMap:
    """Random connected cellular map with the given genus and edge count."""
    rots = bouquet(genus)
    start = max(1, 2 * genus)
    if edges < start:
        raise ConstraintExhausted(f"genus {genus} needs at least {start} edges")
    while CombinatorialMap(rots).num_edges < edges:
        rots = grow_map(rots, rng)
    cmap = CombinatorialMap(rots)
    assert cmap.genus == genus
    return cmap


# ---------------------------------------------------------------------------
# medial graphs and orientation
# ---------------------------------------------------------------------------


def medial_rotations(cmap: CombinatorialMap, vertex_faces_a: bool = True) -> list[list[int]]:
    """Rotations of the medial map; edge labels are corners of ``cmap``.

    With ``vertex_faces_a`` the corners 1 and 3 of every medial vertex lie in
    faces around vertices of ``cmap``; otherwise in faces of ``cmap``.
    """
    si = cmap.sigma_inv
    rots = []
    for h, a in cmap.edges():
        rot = [si[a], h, si[h], a]
        if not vertex_faces_a:
            rot = rot[1:] + rot[:1]
        rots.append(rot)
    return rots


def orient_projection(
    rotations: Sequence[Sequence[int]],
    under_pairs: Sequence[int],
    flips: Sequence[bool] | None = None,
    name: str = "",
) -> LinkDiagram:
    """Turn a 4-valent rotation system into an oriented diagram.

    ``under_pairs[x]`` is 0 if positions 0/2 of vertex ``x`` carry the
    under-strand, 1 if positions 1/3 do.  Components are oriented along the
    trace from their least half-edge, reversed where ``flips`` says so.
    """
    cmap = CombinatorialMap(rotations)
    n = cmap.num_half_edges
    incoming = [False] * n
    seen = [False] * n
    comp = 0
    for start in range(n):
        if seen[start]:
            continue
        flip = bool(flips[comp]) if flips is not None and comp < len(flips) else False
        comp += 1
        h = start  # leaving along h
        while not seen[h]:
            a = cmap.alpha[h]
            seen[h] = seen[a] = True
            incoming[a] = not flip
            incoming[h] = flip
            v = cmap.vertex_of[a]
            h = cmap.half_edge(v, cmap.position[a] + 2)
    crossings = []
    for x, rot in enumerate(rotations):
        u = under_pairs[x]
        base = cmap.offsets[x]
        i_in = u if incoming[base + u] else u + 2
        j_in = (u + 1) if incoming[base + (u + 1) % 4] else (u + 3) % 4
        darts = tuple(rot[(i_in + k) % 4] for k in range(4))
        over_in = (j_in - i_in) % 4
        crossings.append(Crossing(x, darts, over_in))
    return relabel(LinkDiagram(crossings, name=name))


def relabel(diagram: LinkDiagram) -> LinkDiagram:
    """Renumber edge labels 0, 1, ... in order of first appearance."""
    mapping: dict[int, int] = {}
    xs = []
    for x in diagram.crossings:
        for d in x.darts:
            mapping.setdefault(d, len(mapping))
        xs.append(Crossing(x.id, tuple(mapping[d] for d in x.darts), x.over_in))
    return LinkDiagram(xs, name=diagram.name)


def medial_diagram(
    cmap: CombinatorialMap,
    vertex_faces_a: bool = True,
    flips: Sequence[bool] | None = None,
    name: str = "",
) -> LinkDiagram:
    """Alternating diagram projecting to the medial graph of ``cmap``."""
    rots = medial_rotations(cmap, vertex_faces_a)
    return orient_projection(rots, [0] * len(rots), flips, name)


# ---------------------------------------------------------------------------
# general 4-valent projections
# ---------------------------------------------------------------------------


def _seed_projection(genus: int, rng: random.Random) -> list[list[int]]:
    if genus == 0:
        return [[0, 0, 1, 1]]
    if genus == 1:
        return [[0, 1, 0, 1]]
    c = 2 * genus - 1
    for _ in range(100000):
        labels = [k for k in range(2 * c) for _ in range(2)]
        rng.shuffle(labels)
        rots = [labels[4 * i : 4 * i + 4] for i in range(c)]
        cmap = CombinatorialMap(rots)
        if cmap.is_connected() and cmap.genus == genus:
            return rots
    raise ConstraintExhausted(f"no seed projection of genus {genus}")


def insert_crossing(rotations: list[list[int]], rng: random.Random) -> list[list[int]]:
    """Join two edge sides of one face by a new crossing (genus preserving)."""
    cmap = CombinatorialMap(rotations)
    for _ in range(50):
        f = rng.randrange(cmap.num_faces)
        walk = cmap.faces[f]
        s1, s2 = rng.choice(walk), rng.choice(walk)
        e1 = min(s1, cmap.alpha[s1])
        e2 = min(s2, cmap.alpha[s2])
        if e1 != e2:
            break
    else:
        return [list(r) for r in rotations]
    lab = _fresh(rotations)
    p1, q1, p2, q2 = lab, lab + 1, lab + 2, lab + 3
    rots = [list(r) for r in rotations]
    for s, p, q in ((s1, p1, q1), (s2, p2, q2)):
        a = cmap.alpha[s]
        rots[cmap.vertex_of[s]][cmap.position[s]] = p
        rots[cmap.vertex_of[a]][cmap.position[a]] = q
    rots.append([p1, q1, p2, q2])
    return rots


def random_projection(genus: int, crossings: int, rng: random.Random) -> list[list[int]]:
    """Random 4-valent cellular map of the given genus (often not colourable)."""
    rots = _seed_projection(genus, rng)
    if len(rots) > crossings:
        raise ConstraintExhausted(f"genus {genus} needs at least {len(rots)} crossings")
    while len(rots) < crossings:
        rots = insert_crossing(rots, rng)
    assert CombinatorialMap(rots).genus == genus
    return rots


# ---------------------------------------------------------------------------
# the generator
# ---------------------------------------------------------------------------


def _candidate(spec: GeneratorSpec, rng: random.Random) -> LinkDiagram:
    cmap = None
    if spec.require_reduced or spec.require_twist_reduced:
        cmap = reduced_map(spec.genus, spec.crossings, rng)
    if cmap is not None or spec.require_alternating or spec.require_colorable or rng.random() < 0.6:
        cmap = cmap if cmap is not None else random_map(spec.genus, spec.crossings, rng)
        rots = medial_rotations(cmap, rng.random() < 0.5)
        under = [0] * len(rots)
        alternating = True
    else:
        rots = random_projection(spec.genus, spec.crossings, rng)
        under = [rng.randrange(2) for _ in rots]
        alternating = False
    flips = [rng.random() < 0.5 for _ in range(len(rots) + 1)]
    diagram = orient_projection(rots, under, flips)
    if not spec.require_alternating and alternating:
        switched = [x.id for x in diagram.crossings if rng.random() < 0.5]
        diagram = diagram.switch(switched)
    return diagram


def generate(spec: GeneratorSpec) -> LinkDiagram:
    """Deterministic random diagram meeting ``spec`` (rejection sampling)."""
    rng = random.Random(f"{spec.genus}/{spec.crossings}/{spec.seed}")
    for _ in range(spec.max_attempts):
        d = _candidate(spec, rng)
        if spec.require_colorable and not is_checkerboard_colorable(d):
            continue
        if spec.require_reduced or spec.require_twist_reduced:
            if not is_checkerboard_colorable(d):
                continue
            if spec.require_reduced and not is_reduced(d):
                continue
            if spec.require_twist_reduced and not is_twist_reduced(d):
                continue
        name = f"g{spec.genus}-c{spec.crossings}-s{spec.seed}"
        return LinkDiagram(d.crossings, name=name)
    raise ConstraintExhausted(f"no diagram met {spec} in {spec.max_attempts} attempts")


def generate_alternating(spec: GeneratorSpec) -> LinkDiagram:
    if not spec.require_alternating:
        raise ValueError("generate_alternating needs require_alternating")
    return generate(spec)
