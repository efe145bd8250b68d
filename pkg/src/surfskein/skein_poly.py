"""State sums for the bracket of a diagram on a surface.

Every state contributes ``A^(a-b) (-A^2 - A^-2)^(|s_t| - 1)``.  States whose
circles are all contractible make up the polynomial part; the others are
grouped by the multicurve formed by their essential circles.  Only the
histogram of ``(a - b, |s_t|)`` is accumulated per group, and expanded into a
polynomial at the end.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Iterable

from .kauffman_states import A, B, reduce_state_graph, side_state, state_graph
from .laurent import DELTA, LaurentPolynomial, quarter_terms
from .link_diagram import LinkDiagram
from .surface_map import homology_basis

DEFAULT_MAX_CROSSINGS = 26


class TooManyCrossings(ValueError):
    def __init__(self, c: int, limit: int):
        super().__init__(f"{c} crossings exceeds the state-sum limit of {limit}")
        self.crossings = c
        self.limit = limit


class NotAdequate(ValueError):
    def __init__(self, side: str):
        super().__init__(f"diagram is not geometrically {side}-adequate")
        self.side = side


# ---------------------------------------------------------------------------
# results
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BracketZero:
    """The contractible-state part of the bracket and its extreme coefficients."""

    polynomial: LaurentPolynomial

    @property
    def max_degree(self) -> int:
        return self.polynomial.max_degree

    @property
    def min_degree(self) -> int:
        return self.polynomial.min_degree

    @property
    def a_top(self) -> int:
        return self.polynomial.coefficient(self.max_degree)

    @property
    def a_second(self) -> int:
        return self.polynomial.coefficient(self.max_degree - 4)

    @property
    def b_bottom(self) -> int:
        return self.polynomial.coefficient(self.min_degree)

    @property
    def b_second(self) -> int:
        return self.polynomial.coefficient(self.min_degree + 4)

    def degree_residues(self) -> set[int]:
        return {e % 4 for e, _ in self.polynomial.items()}


@dataclass(frozen=True, order=True)
class MulticurveKey:
    """Isotopy data of the essential circles of a state.

    On the torus the slope and multiplicity determine the multicurve.  On
    higher genus the key is a signature: the multiset of homology classes and
    the (Euler characteristic, boundary count) list of the pieces of the
    surface cut along the multicurve; distinct multicurves may share it.
    """

    genus: int
    classes: tuple[tuple[int, ...], ...]
    components: tuple[tuple[int, int], ...] = ()

    @property
    def multiplicity(self) -> int:
        return len(self.classes)

    @property
    def slope(self) -> tuple[int, ...] | None:
        return self.classes[0] if self.genus == 1 else None

    @property
    def signature_only(self) -> bool:
        return self.genus >= 2

    def to_json(self) -> dict:
        if self.genus == 1:
            return {"genus": 1, "slope": list(self.classes[0]), "multiplicity": self.multiplicity}
        return {
            "genus": self.genus,
            "classes": [list(c) for c in self.classes],
            "components": [list(c) for c in self.components],
            "signature_only": True,
        }

    def __str__(self) -> str:
        if self.genus == 1:
            return f"{self.multiplicity}x{self.classes[0]}"
        return f"classes={self.classes} pieces={self.components}"


def normalize_class(vec: Iterable[int]) -> tuple[int, ...]:
    v = tuple(vec)
    for x in v:
        if x:
            return v if x > 0 else tuple(-y for y in v)
    return v


def make_key(genus: int, classes: Iterable[tuple[int, ...]], components=()) -> MulticurveKey:
    cls = tuple(sorted(normalize_class(c) for c in classes))
    if genus == 1:
        if len(set(cls)) != 1:
            raise AssertionError(f"disjoint essential torus curves with different classes {cls}")
        p, q = cls[0]
        if gcd(p, q) != 1:
            raise AssertionError(f"essential simple torus curve with class {cls[0]}")
        return MulticurveKey(1, cls)
    return MulticurveKey(genus, cls, tuple(sorted(components)))


@dataclass(frozen=True)
class Decomposition:
    """Cleared numerators ``(-A^2 - A^-2) <D>_X`` per multicurve key."""

    zero: BracketZero | None
    terms: dict
    states_zero: int
    states_by_key: dict

    def value(self, key: MulticurveKey) -> LaurentPolynomial | None:
        """``<D>_X`` itself when it is a Laurent polynomial, else None."""
        return self.terms[key].divmod_exact(DELTA)

    @property
    def total_states(self) -> int:
        return self.states_zero + sum(self.states_by_key.values())


# ---------------------------------------------------------------------------
# the state sum
# ---------------------------------------------------------------------------


class _Plan:
    """Flat arrays describing a diagram for the state-sum loop."""

    def __init__(self, diagram: LinkDiagram):
        cmap = diagram.map
        self.c = diagram.num_crossings
        self.genus = diagram.genus
        self.chi = diagram.euler_characteristic
        self.nf = cmap.num_faces
        self.alpha = cmap.alpha
        self.face = cmap.face_of
        self.coords = homology_basis(cmap) if self.genus else None
        # partner[is_a][h], arc corner per is_a
        self.partner = (
            tuple(4 * (h // 4) + 3 - h % 4 for h in range(4 * self.c)),
            tuple(h ^ 1 for h in range(4 * self.c)),
        )
        self.cut_side = (
            tuple(self._sides(h, False) for h in range(4 * self.c)),
            tuple(self._sides(h, True) for h in range(4 * self.c)),
        )

    def _sides(self, h: int, is_a: bool) -> tuple[int, int]:
        x, p = divmod(h, 4)
        q = p ^ 1 if is_a else 3 - p
        corner = q if (q - p) % 4 == 3 else p
        return self.face[4 * x + corner], self.face[4 * x + (corner + 1) % 4]


def _run(plan: _Plan, lo: int, hi: int, want_keys: bool):
    """Histograms over states ``lo <= bits < hi``.

    Returns ``(zero_hist, key_hists)`` with histograms keyed by
    ``(a - b, number of contractible circles)``.
    """
    c, nf, genus, chi = plan.c, plan.nf, plan.genus, plan.chi
    alpha, face, coords = plan.alpha, plan.face, plan.coords
    partner, cut_side = plan.partner, plan.cut_side
    n = 4 * c
    zero: dict[tuple[int, int], int] = {}
    keyed: dict[MulticurveKey, dict[tuple[int, int], int]] = {}
    strip_a = [(face[4 * x + 1], face[4 * x + 3]) for x in range(c)]
    strip_b = [(face[4 * x], face[4 * x + 2]) for x in range(c)]
    for bits in range(lo, hi):
        a = bin(bits).count("1")
        ab = 2 * a - c
        res = [bits >> x & 1 for x in range(c)]
        # circles
        seen = [False] * n
        sides = []
        walks = []
        for start in range(n):
            if seen[start]:
                continue
            h = start
            is_a = res[h >> 2]
            sides.append(cut_side[is_a][h])
            walk = []
            while not seen[h]:
                k = partner[res[h >> 2]][h]
                seen[h] = seen[k] = True
                walk.append(k)
                h = alpha[k]
            walks.append(walk)
        m = len(sides)
        if genus == 0:
            key_hist = zero
            nt = 0
            t = m
        else:
            # regions of F minus all circles
            parent = list(range(nf))

            def find(u: int) -> int:
                while parent[u] != u:
                    parent[u] = parent[parent[u]]
                    u = parent[u]
                return u

            for x in range(c):
                f1, f2 = strip_a[x] if res[x] else strip_b[x]
                r1, r2 = find(f1), find(f2)
                if r1 != r2:
                    parent[r1] = r2
            rchi: dict[int, int] = {}
            for f in range(nf):
                r = find(f)
                rchi[r] = rchi.get(r, 0) + 1
            for x in range(c):
                r = find(strip_a[x][0] if res[x] else strip_b[x][0])
                rchi[r] -= 1
            ends = [(find(s1), find(s2)) for s1, s2 in sides]
            contractible = _disk_circles(rchi, ends, chi)
            nt = m - sum(contractible)
            t = m - nt
            if nt == 0:
                key_hist = zero
            else:
                if not want_keys:
                    continue
                essential = [j for j in range(m) if not contractible[j]]
                classes = []
                for j in essential:
                    vec = [0] * len(coords[0])
                    for k in walks[j]:
                        ck = coords[k]
                        for i in range(len(vec)):
                            vec[i] += ck[i]
                    classes.append(tuple(vec))
                comps = ()
                if genus >= 2:
                    comps = _pieces(rchi, ends, contractible, essential)
                key = make_key(genus, classes, comps)
                key_hist = keyed.setdefault(key, {})
        sig = (ab, t)
        key_hist[sig] = key_hist.get(sig, 0) + 1
    return zero, keyed


def _disk_circles(rchi: dict[int, int], ends: list[tuple[int, int]], chi: int) -> list[bool]:
    """Which circles bound a disk, given the region graph with circles as edges."""
    adj: dict[int, list[tuple[int, int]]] = {r: [] for r in rchi}
    for j, (u, v) in enumerate(ends):
        adj[u].append((v, j))
        adj[v].append((u, j))
    result = [False] * len(ends)
    # iterative bridge search with subtree Euler characteristics
    root = next(iter(rchi))
    order = {root: 0}
    low = {root: 0}
    sub = {root: rchi[root]}
    stack = [(root, -1, iter(adj[root]))]
    counter = 1
    while stack:
        u, via, it = stack[-1]
        advanced = False
        for w, j in it:
            if j == via:
                continue
            if w in order:
                if order[w] < low[u]:
                    low[u] = order[w]
                continue
            order[w] = low[w] = counter
            counter += 1
            sub[w] = rchi[w]
            stack.append((w, j, iter(adj[w])))
            advanced = True
            break
        if advanced:
            continue
        stack.pop()
        if stack:
            p = stack[-1][0]
            sub[p] += sub[u]
            if low[u] < low[p]:
                low[p] = low[u]
            if low[u] > order[p]:
                s = sub[u]
                result[via] = s == 1 or chi - s == 1
    return result


def _pieces(rchi, ends, contractible, essential) -> tuple[tuple[int, int], ...]:
    """(chi, boundary count) of the surface cut along the essential circles."""
    parent = {r: r for r in rchi}

    def find(u):
        while parent[u] != u:
            parent[u] = parent[parent[u]]
            u = parent[u]
        return u

    for j, (u, v) in enumerate(ends):
        if contractible[j]:
            ru, rv = find(u), find(v)
            if ru != rv:
                parent[ru] = rv
    chi: dict = {}
    bnd: dict = {}
    for r, x in rchi.items():
        root = find(r)
        chi[root] = chi.get(root, 0) + x
        bnd.setdefault(root, 0)
    for j in essential:
        for r in ends[j]:
            bnd[find(r)] += 1
    return tuple(sorted((chi[r], bnd[r]) for r in chi))


def expand(hist: dict[tuple[int, int], int], offset: int = -1) -> LaurentPolynomial:
    """``sum count * A^e * delta^(t + offset)`` over histogram entries."""
    acc: dict[int, int] = {}
    powers: dict[int, LaurentPolynomial] = {}
    for (e, t), count in hist.items():
        k = t + offset
        if k < 0:
            raise ValueError("negative power of the loop value")
        if k not in powers:
            powers[k] = DELTA**k
        for de, dc in powers[k].items():
            acc[e + de] = acc.get(e + de, 0) + count * dc
    return LaurentPolynomial(acc)


def _check_size(diagram: LinkDiagram, max_crossings: int) -> None:
    if diagram.num_crossings > max_crossings:
        raise TooManyCrossings(diagram.num_crossings, max_crossings)


def state_sum_histograms(diagram: LinkDiagram, want_keys: bool, shards: int = 1):
    plan = _Plan(diagram)
    total = 1 << plan.c
    bounds = [total * i // shards for i in range(shards + 1)]
    zero: dict = {}
    keyed: dict = {}
    for lo, hi in zip(bounds, bounds[1:]):
        z, k = _run(plan, lo, hi, want_keys)
        _merge(zero, z)
        for key, hist in k.items():
            _merge(keyed.setdefault(key, {}), hist)
    return zero, keyed


def _merge(into: dict, other: dict) -> None:
    for sig, n in other.items():
        into[sig] = into.get(sig, 0) + n


def compiled_histogram(diagram: LinkDiagram, shards: int = 1) -> dict[tuple[int, int], int]:
    """Contractible-state histogram from the compiled loop."""
    import numpy as np

    from ._kernel import zero_histogram

    plan = _Plan(diagram)
    c = plan.c
    alpha = np.asarray(plan.alpha, dtype=np.int64)
    partner = np.asarray(plan.partner, dtype=np.int64)
    sides = np.asarray(plan.cut_side, dtype=np.int64)
    face = plan.face
    strips = np.array(
        [
            [(face[4 * x], face[4 * x + 2]) for x in range(c)],
            [(face[4 * x + 1], face[4 * x + 3]) for x in range(c)],
        ],
        dtype=np.int64,
    )
    total = 1 << c
    bounds = [total * i // shards for i in range(shards + 1)]
    hist = None
    for lo, hi in zip(bounds, bounds[1:]):
        part = zero_histogram(c, plan.nf, plan.chi, plan.genus, alpha, partner, sides, strips, lo, hi)
        hist = part if hist is None else hist + part
    out = {}
    for a in range(c + 1):
        for t in range(hist.shape[1]):
            if hist[a, t]:
                out[(2 * a - c, t)] = int(hist[a, t])
    return out


ENGINES = ("auto", "compiled", "python")


def bracket_zero(
    diagram: LinkDiagram, max_crossings: int = DEFAULT_MAX_CROSSINGS, engine: str = "auto"
) -> BracketZero:
    """Sum over states with only contractible circles."""
    _check_size(diagram, max_crossings)
    if engine not in ENGINES:
        raise ValueError(f"unknown engine {engine!r}")
    if engine == "compiled" or (engine == "auto" and diagram.num_crossings >= 10):
        zero = compiled_histogram(diagram)
    else:
        zero, _ = state_sum_histograms(diagram, want_keys=False)
    return BracketZero(expand(zero))


def bracket_decomposition(diagram: LinkDiagram, max_crossings: int = DEFAULT_MAX_CROSSINGS) -> Decomposition:
    """Polynomial part plus cleared coefficients of every essential multicurve."""
    _check_size(diagram, max_crossings)
    zero, keyed = state_sum_histograms(diagram, want_keys=True)
    terms = {key: expand(hist, offset=0) for key, hist in sorted(keyed.items())}
    counts = {key: sum(h.values()) for key, h in sorted(keyed.items())}
    z = BracketZero(expand(zero)) if zero else None
    return Decomposition(z, terms, sum(zero.values()), counts)


# ---------------------------------------------------------------------------
# normalisation and coefficient predictions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class JonesJ0:
    """``(-1)^w A^(-3w) <D>_0`` stored in ``A``; read with ``t = A^4``."""

    polynomial: LaurentPolynomial
    writhe: int

    def terms(self) -> list[tuple[Fraction, int]]:
        return quarter_terms(self.polynomial)

    @property
    def m(self) -> Fraction:
        return Fraction(self.polynomial.max_degree, 4)

    @property
    def n(self) -> Fraction:
        return Fraction(self.polynomial.min_degree, 4)

    @property
    def a_m(self) -> int:
        return self.polynomial.coefficient(self.polynomial.max_degree)

    @property
    def a_m1(self) -> int:
        return self.polynomial.coefficient(self.polynomial.max_degree - 4)

    @property
    def b_n1(self) -> int:
        return self.polynomial.coefficient(self.polynomial.min_degree + 4)

    @property
    def b_n(self) -> int:
        return self.polynomial.coefficient(self.polynomial.min_degree)

    def to_json(self) -> list[list]:
        return [[str(e), c] for e, c in self.terms()]

    def __str__(self) -> str:
        return format_t_terms(self.terms())


def format_t_terms(terms: Iterable[tuple[Fraction, int]]) -> str:
    parts = []
    for e, c in sorted(terms, reverse=True):
        mag = abs(c)
        mono = "1" if e == 0 else ("t" if e == 1 else f"t^({e})" if e.denominator != 1 else f"t^{e}")
        body = (str(mag) if e == 0 else mono if mag == 1 else f"{mag}{mono}")
        parts.append(("-" if c < 0 else "+", body))
    if not parts:
        return "0"
    out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for s, b in parts[1:]:
        out += f" {s} {b}"
    return out


def normalize(poly: LaurentPolynomial, writhe: int) -> LaurentPolynomial:
    sign = -1 if writhe % 2 else 1
    return LaurentPolynomial({e - 3 * writhe: sign * c for e, c in poly.items()})


def jones_j0(diagram: LinkDiagram, zero: BracketZero | None = None, max_crossings: int = DEFAULT_MAX_CROSSINGS) -> JonesJ0:
    zero = zero if zero is not None else bracket_zero(diagram, max_crossings)
    return JonesJ0(normalize(zero.polynomial, diagram.writhe), diagram.writhe)


@dataclass(frozen=True)
class SidePrediction:
    side: str
    circles: int
    e_prime: int

    @property
    def top(self) -> int:
        return 1

    @property
    def second(self) -> int:
        return self.e_prime - self.circles + 1


def coefficient_formula(diagram: LinkDiagram, side: str) -> SidePrediction:
    """Predicted |extreme| and |second| coefficient for one adequate side."""
    graph = state_graph(diagram, side_state(diagram, side))
    if graph.loops or graph.circles.noncontractible_count:
        raise NotAdequate(side)
    reduced = reduce_state_graph(diagram, graph)
    return SidePrediction(side, graph.num_vertices, reduced.e_prime)


def coefficient_formulas(diagram: LinkDiagram, sides: Iterable[str] = (A, B)) -> dict[str, SidePrediction]:
    return {side: coefficient_formula(diagram, side) for side in sides}
