"""Twist number, guts Euler characteristics and volume bounds from bracket coefficients.

Every formula sits behind a checklist.  Facts that the diagram determines are
computed; facts about the ambient manifold are taken from the user (or are
implied by the chosen setting) and are echoed back marked as such.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple

from .kauffman_states import A, B, is_geometrically_adequate
from .link_diagram import (
    HypothesesNotMet,
    LinkDiagram,
    is_alternating,
    is_checkerboard_colorable,
    is_reduced,
    is_twist_reduced,
)

V8 = 3.66386  # regular ideal octahedron
V4 = 1.01494  # regular ideal tetrahedron

CONSTANTS = {"v8": V8, "v4": V4}

COMPUTED = "computed"
ASSERTED = "asserted"
IMPLIED = "implied-by-setting"


class Setting(enum.Enum):
    THICKENED = "thickened"
    HEEGAARD = "heegaard"
    GENERAL = "general"


class AmbientError(ValueError):
    """Inconsistent ambient-manifold data."""


@dataclass(frozen=True)
class AmbientContext:
    """What the user tells us about the 3-manifold around the surface."""

    setting: Setting = Setting.GENERAL
    chi_boundary: int | None = None
    surface_incompressible: bool = False
    boundary_incompressible: bool = False
    atoroidal_anannular: bool = False
    r_gt_4: bool = False

    def resolve(self, genus: int) -> "ResolvedAmbient":
        chi_f = 2 - 2 * genus
        implied: set[str] = set()
        chi_b = self.chi_boundary
        surface_inc = self.surface_incompressible
        boundary_inc = self.boundary_incompressible
        r_gt_4 = self.r_gt_4
        if self.setting is Setting.THICKENED:
            if chi_b is not None and chi_b != 2 * chi_f:
                raise AmbientError(f"a thickened surface has boundary Euler characteristic {2 * chi_f}, not {chi_b}")
            chi_b = 2 * chi_f
            implied.add("chi_boundary")
            if genus >= 1:
                surface_inc = boundary_inc = r_gt_4 = True
                implied |= {"surface_incompressible", "boundary_incompressible", "r_gt_4"}
        elif self.setting is Setting.HEEGAARD:
            if genus != 1:
                raise AmbientError(f"a Heegaard torus has genus 1, the diagram has genus {genus}")
            if chi_b not in (None, 0):
                raise AmbientError("S^3 and lens spaces are closed; boundary Euler characteristic is 0")
            chi_b = 0
            boundary_inc = True
            implied |= {"chi_boundary", "boundary_incompressible"}
        elif chi_b is None:
            raise AmbientError("the general setting needs the boundary Euler characteristic")
        if chi_b % 2:
            raise AmbientError("the boundary of a compact 3-manifold has even Euler characteristic")
        if surface_inc and not r_gt_4:
            r_gt_4 = True
            implied.add("r_gt_4")
        return ResolvedAmbient(
            self.setting, chi_b, surface_inc, boundary_inc, self.atoroidal_anannular, r_gt_4, frozenset(implied)
        )


@dataclass(frozen=True)
class ResolvedAmbient:
    setting: Setting
    chi_boundary: int
    surface_incompressible: bool
    boundary_incompressible: bool
    atoroidal_anannular: bool
    r_gt_4: bool
    implied: frozenset

    def flag(self, name: str) -> "Flag":
        return Flag(name, bool(getattr(self, name)), IMPLIED if name in self.implied else ASSERTED)


# ---------------------------------------------------------------------------
# checklists
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Flag:
    name: str
    value: bool
    source: str

    def to_json(self) -> dict:
        return {"name": self.name, "value": self.value, "source": self.source}


@dataclass(frozen=True)
class Checklist:
    tag: str
    flags: tuple[Flag, ...]

    @property
    def ok(self) -> bool:
        return all(f.value for f in self.flags)

    @property
    def failed(self) -> list[str]:
        return [f.name for f in self.flags if not f.value]

    def require(self) -> None:
        if not self.ok:
            raise HypothesesNotMet(self.failed, self.tag)

    def to_json(self) -> dict:
        return {"ok": self.ok, "failed": self.failed, "flags": [f.to_json() for f in self.flags]}


@dataclass(frozen=True)
class DiagramFacts:
    """Hypotheses certified from the diagram itself."""

    genus: int
    alternating: bool
    colorable: bool
    reduced: bool
    twist_reduced: bool
    adequate_a: bool
    adequate_b: bool
    cellular: bool = True  # forced by the rotation-system encoding

    def flags(self, *names: str) -> tuple[Flag, ...]:
        out = []
        for name in names:
            if name == "genus_at_least_1":
                out.append(Flag(name, self.genus >= 1, COMPUTED))
            else:
                out.append(Flag(name, bool(getattr(self, name)), COMPUTED))
        return tuple(out)

    def to_json(self) -> dict:
        return {
            "genus": self.genus,
            "alternating": self.alternating,
            "colorable": self.colorable,
            "reduced": self.reduced,
            "twist_reduced": self.twist_reduced,
            "adequate_a": self.adequate_a,
            "adequate_b": self.adequate_b,
            "cellular": self.cellular,
        }


def diagram_facts(diagram: LinkDiagram) -> DiagramFacts:
    alt = is_alternating(diagram)
    col = alt and is_checkerboard_colorable(diagram)
    reduced = col and is_reduced(diagram)
    twist = col and is_twist_reduced(diagram)
    return DiagramFacts(
        genus=diagram.genus,
        alternating=alt,
        colorable=col,
        reduced=reduced,
        twist_reduced=twist,
        adequate_a=is_geometrically_adequate(diagram, A),
        adequate_b=is_geometrically_adequate(diagram, B),
    )


_DIAGRAM_CORE = ("alternating", "colorable", "reduced", "twist_reduced", "cellular")

TWIST_NUMBER = "twist-number-identity"
GUTS = "guts-euler-characteristic"
LOWER_MAX = "volume-lower-bound:max-form"
LOWER_SHIFTED = "volume-lower-bound:shifted-max-form"
LOWER_GUTS = "volume-lower-bound:guts-form"
THICKENED = "thickened-surface-bounds"
HEEGAARD = "heegaard-torus-bounds"


def twist_number_checklist(facts: DiagramFacts) -> Checklist:
    return Checklist(TWIST_NUMBER, facts.flags(*_DIAGRAM_CORE, "genus_at_least_1"))


def guts_checklist(facts: DiagramFacts, ambient: ResolvedAmbient) -> Checklist:
    flags = facts.flags(*_DIAGRAM_CORE, "genus_at_least_1") + (
        ambient.flag("boundary_incompressible"),
        ambient.flag("atoroidal_anannular"),
        ambient.flag("r_gt_4"),
    )
    return Checklist(GUTS, flags)


def max_form_checklist(facts: DiagramFacts, ambient: ResolvedAmbient) -> Checklist:
    flags = facts.flags(*_DIAGRAM_CORE) + (
        ambient.flag("boundary_incompressible"),
        ambient.flag("surface_incompressible"),
        ambient.flag("atoroidal_anannular"),
    )
    return Checklist(LOWER_MAX, flags)


def shifted_form_checklist(facts: DiagramFacts, ambient: ResolvedAmbient, tag: str = LOWER_SHIFTED) -> Checklist:
    flags = facts.flags(*_DIAGRAM_CORE, "genus_at_least_1") + (
        ambient.flag("boundary_incompressible"),
        ambient.flag("atoroidal_anannular"),
        ambient.flag("r_gt_4"),
    )
    return Checklist(tag, flags)


def thickened_checklist(facts: DiagramFacts, ambient: ResolvedAmbient) -> Checklist:
    setting = Flag("setting_thickened", ambient.setting is Setting.THICKENED, ASSERTED)
    return Checklist(THICKENED, facts.flags(*_DIAGRAM_CORE, "genus_at_least_1") + (setting,))


def heegaard_checklist(facts: DiagramFacts, ambient: ResolvedAmbient) -> Checklist:
    setting = Flag("setting_heegaard", ambient.setting is Setting.HEEGAARD, ASSERTED)
    torus = Flag("genus_1", facts.genus == 1, COMPUTED)
    return Checklist(HEEGAARD, facts.flags(*_DIAGRAM_CORE) + (torus, setting, ambient.flag("r_gt_4")))


# ---------------------------------------------------------------------------
# formulas
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Coefficients:
    """Absolute values of the two first and two last coefficients."""

    a_m: int
    a_m1: int
    b_n1: int
    b_n: int

    def __post_init__(self):
        for name in ("a_m", "a_m1", "b_n1", "b_n"):
            object.__setattr__(self, name, abs(int(getattr(self, name))))

    @property
    def beta(self) -> int:
        return self.a_m1 + self.b_n1 - self.a_m - self.b_n

    def to_json(self) -> dict:
        return {"a_m": self.a_m, "a_m1": self.a_m1, "b_n1": self.b_n1, "b_n": self.b_n}


class BoundPair(NamedTuple):
    lower: float
    upper: float

    @property
    def vacuous(self) -> bool:
        return self.upper == 0


def _check(checklist: Checklist | None) -> None:
    if checklist is not None:
        checklist.require()


def twist_number_from_coefficients(a_m1: int, b_n1: int, chi_f: int, checklist: Checklist | None = None) -> int:
    """``|a_{m-1}| + |b_{n+1}| - 2 + chi(F)``."""
    if chi_f > 0:
        raise HypothesesNotMet(["genus_at_least_1"], TWIST_NUMBER)
    _check(checklist)
    return abs(a_m1) + abs(b_n1) - 2 + chi_f


def guts_euler(a_m1: int, b_n1: int, chi_boundary: int, checklist: Checklist | None = None) -> tuple[Fraction, Fraction]:
    """Euler characteristics of the guts on the A and B sides."""
    _check(checklist)
    half = Fraction(chi_boundary, 2)
    return 1 - abs(a_m1) + half, 1 - abs(b_n1) + half


def volume_lower_bound(coeffs: Coefficients, chi_boundary: int, checklist: Checklist | None = None) -> float:
    """``v8 max{|a_{m-1}| - |a_m|, |b_{n+1}| - |b_n|} - chi(dM)/2``."""
    _check(checklist)
    return V8 * max(coeffs.a_m1 - coeffs.a_m, coeffs.b_n1 - coeffs.b_n) - chi_boundary / 2


def volume_lower_bound_shifted(coeffs: Coefficients, chi_boundary: int, checklist: Checklist | None = None) -> float:
    """``v8 max{|a_{m-1}|, |b_{n+1}|} - 1 - chi(dM)/2``."""
    _check(checklist)
    return V8 * max(coeffs.a_m1, coeffs.b_n1) - 1 - chi_boundary / 2


def volume_lower_bound_guts(coeffs: Coefficients, chi_boundary: int, checklist: Checklist | None = None) -> float:
    """``v8 max(-chi(guts))``, i.e. ``v8 (max{|a_{m-1}|, |b_{n+1}|} - 1 - chi(dM)/2)``."""
    _check(checklist)
    ga, gb = guts_euler(coeffs.a_m1, coeffs.b_n1, chi_boundary)
    return V8 * float(-min(ga, gb))


def volume_bounds_thickened(coeffs: Coefficients, genus: int, checklist: Checklist | None = None) -> BoundPair:
    if genus < 1:
        raise HypothesesNotMet(["genus_at_least_1"], THICKENED)
    _check(checklist)
    beta = coeffs.beta
    if genus == 1:
        return BoundPair(V8 / 2 * beta, 10 * V4 * beta)
    chi_f = 2 - 2 * genus
    return BoundPair(V8 / 2 * (beta - 2 * chi_f), 6 * V8 * (beta + chi_f))


def volume_bounds_heegaard_torus(
    a_m1: int, b_n1: int, assert_r_gt_4: bool = False, checklist: Checklist | None = None
) -> BoundPair:
    if not assert_r_gt_4:
        raise HypothesesNotMet(["r_gt_4"], HEEGAARD)
    _check(checklist)
    s = abs(a_m1) + abs(b_n1) - 2
    return BoundPair(V8 / 2 * s, 10 * V4 * s)


# ---------------------------------------------------------------------------
# aggregate
# ---------------------------------------------------------------------------


@dataclass
class BoundsReport:
    facts: DiagramFacts
    ambient: ResolvedAmbient
    coefficients: Coefficients
    checklists: dict = field(default_factory=dict)
    values: dict = field(default_factory=dict)

    @property
    def headline_lower(self) -> float | None:
        forms = [self.values[k] for k in (LOWER_MAX, LOWER_SHIFTED, LOWER_GUTS) if k in self.values]
        return min(forms) if forms else None

    @property
    def emitted_any_bound(self) -> bool:
        return any(k in self.values for k in (LOWER_MAX, LOWER_SHIFTED, LOWER_GUTS, THICKENED, HEEGAARD))

    def to_json(self) -> dict:
        bounds: dict = {}
        for tag, value in self.values.items():
            if isinstance(value, BoundPair):
                entry = {"lower": round(value.lower, 5), "upper": round(value.upper, 5), "vacuous": value.vacuous}
            elif isinstance(value, tuple):
                entry = {"A": str(value[0]), "B": str(value[1])}
            elif isinstance(value, float):
                entry = {"value": round(value, 5)}
            else:
                entry = {"value": value}
            entry["source"] = tag
            bounds[tag] = entry
        headline = self.headline_lower
        if headline is not None:
            bounds["headline_lower"] = {"value": round(headline, 5), "source": "minimum-of-lower-bound-forms"}
        return {
            "bounds": bounds,
            "hypothesis_report": {
                "diagram": self.facts.to_json(),
                "ambient": {
                    "setting": self.ambient.setting.value,
                    "chi_boundary": self.ambient.chi_boundary,
                    "flags": [
                        self.ambient.flag(n).to_json()
                        for n in ("surface_incompressible", "boundary_incompressible", "atoroidal_anannular", "r_gt_4")
                    ],
                },
                "checklists": {tag: cl.to_json() for tag, cl in self.checklists.items()},
            },
            "constants": dict(CONSTANTS),
        }


def analyze_bounds(facts: DiagramFacts, coeffs: Coefficients, context: AmbientContext) -> BoundsReport:
    """Evaluate every formula whose checklist passes."""
    ambient = context.resolve(facts.genus)
    report = BoundsReport(facts, ambient, coeffs)
    chi_f = 2 - 2 * facts.genus
    chi_b = ambient.chi_boundary
    checks = {
        TWIST_NUMBER: twist_number_checklist(facts),
        GUTS: guts_checklist(facts, ambient),
        LOWER_MAX: max_form_checklist(facts, ambient),
        LOWER_SHIFTED: shifted_form_checklist(facts, ambient),
        LOWER_GUTS: shifted_form_checklist(facts, ambient, LOWER_GUTS),
    }
    if ambient.setting is Setting.THICKENED:
        checks[THICKENED] = thickened_checklist(facts, ambient)
    if ambient.setting is Setting.HEEGAARD:
        checks[HEEGAARD] = heegaard_checklist(facts, ambient)
    report.checklists = checks
    compute = {
        TWIST_NUMBER: lambda: twist_number_from_coefficients(coeffs.a_m1, coeffs.b_n1, chi_f),
        GUTS: lambda: guts_euler(coeffs.a_m1, coeffs.b_n1, chi_b),
        LOWER_MAX: lambda: volume_lower_bound(coeffs, chi_b),
        LOWER_SHIFTED: lambda: volume_lower_bound_shifted(coeffs, chi_b),
        LOWER_GUTS: lambda: volume_lower_bound_guts(coeffs, chi_b),
        THICKENED: lambda: volume_bounds_thickened(coeffs, facts.genus),
        HEEGAARD: lambda: volume_bounds_heegaard_torus(coeffs.a_m1, coeffs.b_n1, assert_r_gt_4=ambient.r_gt_4),
    }
    for tag, checklist in checks.items():
        if checklist.ok:
            report.values[tag] = compute[tag]()
    return report
