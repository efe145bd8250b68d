"""Deterministic generated corpora shared by the property and acceptance tests."""

from __future__ import annotations

from functools import lru_cache

from surfskein.fixtures import fixture_names, load_fixture
from surfskein.link_diagram import LinkDiagram
from surfskein.oracle.generator import ConstraintExhausted, GeneratorSpec, generate

# diagrams per crossing count; small diagrams are cheap for the recursive oracle
DUAL_PATH_PLAN = {
    1: 6, 2: 10, 3: 14, 4: 22, 5: 22, 6: 22, 7: 22, 8: 22, 9: 14,
    10: 10, 11: 8, 12: 6, 13: 3, 14: 2,
}


def _key(d: LinkDiagram) -> tuple:
    return tuple((x.darts, x.over_in) for x in d.crossings)


def _make(genus: int, crossings: int, seed: int, **kw) -> LinkDiagram | None:
    try:
        return generate(GeneratorSpec(genus, crossings, seed, **kw))
    except (ConstraintExhausted, ValueError):
        return None


def _fill(out: list, genus: int, c: int, count: int, seed0: int = 0, **kw) -> None:
    """Append up to ``count`` distinct diagrams, trying a bounded number of seeds."""
    seen = {_key(d) for d in out}
    got = 0
    for seed in range(seed0, seed0 + 4 * count):
        if got == count:
            break
        d = _make(genus, c, seed, max_attempts=50, **{k: v(seed) if callable(v) else v for k, v in kw.items()})
        if d is not None and _key(d) not in seen:
            seen.add(_key(d))
            out.append(d)
            got += 1


@lru_cache(maxsize=None)
def dual_path_corpus() -> tuple[LinkDiagram, ...]:
    """Genus 0-2, at most 14 crossings, alternating and not."""
    out: list[LinkDiagram] = []
    for genus in (0, 1, 2):
        for c, count in DUAL_PATH_PLAN.items():
            _fill(out, genus, c, count, require_alternating=lambda seed: seed % 3 != 2)
    return tuple(out)


@lru_cache(maxsize=None)
def alternating_corpus() -> tuple[LinkDiagram, ...]:
    """Alternating diagrams on genus 0-3 with up to 18 crossings."""
    out: list[LinkDiagram] = []
    for genus in (0, 1, 2, 3):
        for c in range(1, 19):
            _fill(out, genus, c, 6 if c <= 12 else 3, seed0=100)
    return tuple(out)


@lru_cache(maxsize=None)
def reduced_corpus() -> tuple[LinkDiagram, ...]:
    """Reduced, twist-reduced alternating diagrams on genus 1 and 2."""
    out = []
    plan = [(1, c, 4) for c in range(8, 17)] + [(2, c, 3) for c in range(13, 17)]
    for genus, c, count in plan:
        _fill(out, genus, c, count, require_reduced=True, require_twist_reduced=True)
    return tuple(out)


@lru_cache(maxsize=None)
def fixtures() -> dict[str, LinkDiagram]:
    return {name: load_fixture(name) for name in fixture_names()}


@lru_cache(maxsize=None)
def full_corpus() -> tuple[LinkDiagram, ...]:
    """Union of the generated corpora without repeats."""
    seen, out = set(), []
    for d in dual_path_corpus() + alternating_corpus() + reduced_corpus():
        if _key(d) not in seen:
            seen.add(_key(d))
            out.append(d)
    return tuple(out)
