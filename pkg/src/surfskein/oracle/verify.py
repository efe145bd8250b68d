"""Identity-by-identity comparison of computed quantities on one diagram.

Each identity yields a record that passes, fails, or is not applicable
because its hypotheses are not met; nothing is skipped silently.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable

from ..kauffman_states import A, B, apply_state, is_bks_adequate, is_geometrically_adequate, side_state
from ..link_diagram import (
    LinkDiagram,
    diagram_from_dict,
    diagram_to_dict,
    is_alternating,
    is_checkerboard_colorable,
    is_reduced,
    is_twist_reduced,
    mirror,
    twist_regions,
)
from ..skein_poly import bracket_decomposition, bracket_zero, coefficient_formula
from .recursive import MAX_CROSSINGS, bracket_recursive

PASS = "pass"
FAIL = "fail"
NOT_APPLICABLE = "not-applicable"


@dataclass(frozen=True)
class CheckRecord:
    name: str
    status: str
    detail: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"name": self.name, "status": self.status, "detail": self.detail}


@dataclass(frozen=True)
class VerifyReport:
    name: str
    records: tuple[CheckRecord, ...]

    @property
    def ok(self) -> bool:
        return all(r.status != FAIL for r in self.records)

    def record(self, name: str) -> CheckRecord:
        for r in self.records:
            if r.name == name:
                return r
        raise KeyError(name)

    def counts(self) -> dict[str, int]:
        out = {PASS: 0, FAIL: 0, NOT_APPLICABLE: 0}
        for r in self.records:
            out[r.status] += 1
        return out

    def to_json(self) -> dict:
        return {"name": self.name, "ok": self.ok, "records": [r.to_json() for r in self.records]}


def _status(ok: bool) -> str:
    return PASS if ok else FAIL


def _extreme_check(diagram: LinkDiagram, zero, side: str) -> CheckRecord:
    name = f"extreme-coefficients-{side}"
    if not is_geometrically_adequate(diagram, side):
        return CheckRecord(name, NOT_APPLICABLE, {"reason": f"not geometrically {side}-adequate"})
    pred = coefficient_formula(diagram, side)
    c = diagram.num_crossings
    poly = zero.polynomial
    if poly.is_zero():
        return CheckRecord(name, FAIL, {"reason": "contractible part vanishes"})
    if side == A:
        degree, expected_degree = poly.max_degree, c + 2 * pred.circles - 2
        top, second = abs(zero.a_top), abs(zero.a_second)
    else:
        degree, expected_degree = poly.min_degree, -(c + 2 * pred.circles - 2)
        top, second = abs(zero.b_bottom), abs(zero.b_second)
    detail = {
        "degree": degree,
        "predicted_degree": expected_degree,
        "top": top,
        "second": second,
        "predicted_second": pred.second,
        "circles": pred.circles,
        "e_prime": pred.e_prime,
        "degree_residues": sorted(zero.degree_residues()),
    }
    ok = degree == expected_degree and top == 1 and second == pred.second and len(detail["degree_residues"]) == 1
    return CheckRecord(name, _status(ok), detail)


def verify_report(diagram: LinkDiagram, max_crossings: int = MAX_CROSSINGS, dual_path: bool = True) -> VerifyReport:
    c = diagram.num_crossings
    records: list[CheckRecord] = []
    dec = bracket_decomposition(diagram, max_crossings)
    zero = dec.zero if dec.zero is not None else bracket_zero(diagram, max_crossings)

    records.append(
        CheckRecord(
            "state-partition",
            _status(dec.total_states == 1 << c),
            {"states": dec.total_states, "expected": 1 << c},
        )
    )
    records.append(_extreme_check(diagram, zero, A))
    records.append(_extreme_check(diagram, zero, B))

    colorable = is_alternating(diagram) and is_checkerboard_colorable(diagram)
    sa = apply_state(diagram, side_state(diagram, A)).count
    sb = apply_state(diagram, side_state(diagram, B)).count
    if colorable:
        val = sa - c + sb
        records.append(
            CheckRecord(
                "euler-identity",
                _status(val == diagram.euler_characteristic),
                {"s_A": sa, "s_B": sb, "crossings": c, "chi": diagram.euler_characteristic},
            )
        )
    else:
        records.append(CheckRecord("euler-identity", NOT_APPLICABLE, {"reason": "not alternating and colorable"}))

    for side in (A, B):
        name = f"adequacy-implication-{side}"
        if is_geometrically_adequate(diagram, side):
            bks = is_bks_adequate(diagram, side)
            records.append(CheckRecord(name, _status(bks), {"bks_adequate": bks}))
        else:
            records.append(CheckRecord(name, NOT_APPLICABLE, {"reason": f"not geometrically {side}-adequate"}))

    reasons = []
    if not colorable:
        reasons.append("not alternating and colorable")
    elif not is_reduced(diagram):
        reasons.append("not reduced")
    elif not is_twist_reduced(diagram):
        reasons.append("not twist-reduced")
    if diagram.genus < 1:
        reasons.append("genus 0")
    if reasons:
        records.append(CheckRecord("twist-number-identity", NOT_APPLICABLE, {"reason": "; ".join(reasons)}))
    else:
        coeff = abs(zero.a_second) + abs(zero.b_second) - 2 + diagram.euler_characteristic
        regions = twist_regions(diagram).count
        records.append(
            CheckRecord("twist-number-identity", _status(coeff == regions), {"from_coefficients": coeff, "regions": regions})
        )

    mirrored = bracket_zero(mirror(diagram), max_crossings).polynomial
    records.append(CheckRecord("mirror", _status(mirrored == zero.polynomial.bar()), {}))

    if dual_path and c <= max_crossings:
        _, rec = bracket_recursive(diagram, max_crossings)
        same_zero = rec.zero == dec.zero
        same_keys = rec.terms == dec.terms
        records.append(
            CheckRecord(
                "dual-path",
                _status(same_zero and same_keys),
                {"zero_equal": same_zero, "decomposition_equal": same_keys, "keys": len(dec.terms)},
            )
        )
    else:
        records.append(CheckRecord("dual-path", NOT_APPLICABLE, {"reason": f"more than {max_crossings} crossings"}))
    return VerifyReport(diagram.name, tuple(records))


# ---------------------------------------------------------------------------
# corpus manifests
# ---------------------------------------------------------------------------


def write_corpus(path: str | Path, diagrams: Iterable[LinkDiagram], with_reports: bool = False) -> int:
    n = 0
    with open(path, "w", encoding="utf-8") as fh:
        for d in diagrams:
            line = {"spd": diagram_to_dict(d)}
            if with_reports:
                line["verify"] = verify_report(d).to_json()
            fh.write(json.dumps(line, sort_keys=True) + "\n")
            n += 1
    return n


def read_corpus(path: str | Path) -> list[LinkDiagram]:
    out = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.strip()
            if not line:
                continue
            doc = json.loads(line)
            out.append(diagram_from_dict(doc["spd"] if "spd" in doc else doc))
    return out
