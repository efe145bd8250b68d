"""Skein-tree evaluation of the bracket, independent of the state-sum kernel.

Crossings are resolved one at a time, lowest id first, carrying the
accumulated monomial down the tree.  At a leaf the crossingless multicurve
is traced afresh and each circle is classified by homology and, on higher
genus, by cutting a separately built 2-complex along it.  There is no
memoization and no region bookkeeping.
"""

from __future__ import annotations

from ..laurent import DELTA, LaurentPolynomial
from ..link_diagram import LinkDiagram
from ..skein_poly import BracketZero, Decomposition, MulticurveKey, TooManyCrossings, make_key
from ..surface_map import CombinatorialMap, EmbeddedCycle, cut_along_cycles, homology_basis, walk_homology

MAX_CROSSINGS = 20

# position -> connected position, for each smoothing
_JOIN = {
    "A": {0: 1, 1: 0, 2: 3, 3: 2},
    "B": {0: 3, 3: 0, 1: 2, 2: 1},
}


def _corner(p: int, q: int) -> int:
    """The corner between positions p and q (which differ by one)."""
    return p if q == (p + 1) % 4 else q


class _Leaf:
    """A fully resolved diagram."""

    def __init__(self, diagram: LinkDiagram, letters: tuple[str, ...], coords):
        self.diagram = diagram
        self.letters = letters
        base = diagram.map
        circles = []
        seen = set()
        for start in range(base.num_half_edges):
            if start in seen:
                continue
            arcs = []
            h = start
            while h not in seen:
                x, p = divmod(h, 4)
                q = _JOIN[letters[x]][p]
                seen.add(h)
                seen.add(4 * x + q)
                arcs.append((x, p, q))
                h = base.alpha[4 * x + q]
            circles.append(arcs)
        self.circles = circles
        self.classes = [walk_homology(coords, [4 * x + q for x, _, q in arcs]) for arcs in circles] if coords else None
        self._complex = None

    def complex(self):
        """Map with a vertex per smoothing arc, edges along circles and a
        segment across each crossing; returns (map, cycles)."""
        if self._complex is None:
            base = self.diagram.map
            edge_of = {}
            for k, (h, a) in enumerate(base.edges()):
                edge_of[h] = edge_of[a] = k
            nseg = base.num_edges
            vertex = {}
            rots = []
            for x, letter in enumerate(self.letters):
                done = set()
                for p in range(4):
                    q = _JOIN[letter][p]
                    c = _corner(p, q)
                    if c in done:
                        continue
                    done.add(c)
                    vertex[(x, c)] = len(rots)
                    rots.append([edge_of[4 * x + c], edge_of[4 * x + (c + 1) % 4], nseg + x])
            cmap = CombinatorialMap(rots)
            cycles = []
            for arcs in self.circles:
                darts = []
                for x, p, q in arcs:
                    c = _corner(p, q)
                    darts.append(cmap.half_edge(vertex[(x, c)], 0 if q == c else 1))
                cycles.append(EmbeddedCycle(tuple(darts)))
            self._complex = (cmap, cycles)
        return self._complex

    def contractible(self) -> list[bool]:
        g = self.diagram.genus
        if g == 0:
            return [True] * len(self.circles)
        out = []
        for j, cls in enumerate(self.classes):
            if any(cls):
                out.append(False)
            elif g == 1:
                out.append(True)
            else:
                cmap, cycles = self.complex()
                cut = cut_along_cycles(cmap, [cycles[j]])
                out.append(any(comp.is_disk for comp in cut.components))
        return out

    def key(self, contractible: list[bool]) -> MulticurveKey:
        g = self.diagram.genus
        essential = [j for j, ok in enumerate(contractible) if not ok]
        classes = [self.classes[j] for j in essential]
        pieces = ()
        if g >= 2:
            cmap, cycles = self.complex()
            cut = cut_along_cycles(cmap, [cycles[j] for j in essential])
            pieces = tuple((comp.euler_characteristic, comp.boundary_count) for comp in cut.components)
        return make_key(g, classes, pieces)


def bracket_recursive(diagram: LinkDiagram, max_crossings: int = MAX_CROSSINGS) -> tuple[BracketZero | None, Decomposition]:
    """Bracket by the skein relation, split into contractible and keyed parts."""
    c = diagram.num_crossings
    if c > max_crossings:
        raise TooManyCrossings(c, max_crossings)
    if c == 0:
        raise ValueError("diagram has no crossings")
    coords = homology_basis(diagram.map) if diagram.genus else None
    zero = [LaurentPolynomial.zero()]
    keyed: dict[MulticurveKey, LaurentPolynomial] = {}
    counts = {"zero": 0}
    key_counts: dict[MulticurveKey, int] = {}

    def descend(letters: tuple[str, ...], exponent: int) -> None:
        if len(letters) == c:
            leaf = _Leaf(diagram, letters, coords)
            flags = leaf.contractible()
            t = sum(flags)
            if t == len(flags):
                zero[0] = zero[0] + LaurentPolynomial.monomial(exponent) * DELTA ** (t - 1)
                counts["zero"] += 1
            else:
                key = leaf.key(flags)
                term = LaurentPolynomial.monomial(exponent) * DELTA**t
                keyed[key] = keyed.get(key, LaurentPolynomial.zero()) + term
                key_counts[key] = key_counts.get(key, 0) + 1
            return
        descend(letters + ("A",), exponent + 1)
        descend(letters + ("B",), exponent - 1)

    descend((), 0)
    z = BracketZero(zero[0]) if counts["zero"] else None
    terms = dict(sorted(keyed.items()))
    dec = Decomposition(z, terms, counts["zero"], dict(sorted(key_counts.items())))
    return z, dec
