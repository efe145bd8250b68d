from fractions import Fraction

import pytest

from corpus import fixtures
from surfskein.geometry_bounds import (
    GUTS,
    HEEGAARD,
    LOWER_GUTS,
    LOWER_MAX,
    LOWER_SHIFTED,
    THICKENED,
    TWIST_NUMBER,
    V4,
    V8,
    AmbientContext,
    AmbientError,
    Coefficients,
    Setting,
    analyze_bounds,
    diagram_facts,
    guts_euler,
    twist_number_from_coefficients,
    volume_bounds_heegaard_torus,
    volume_bounds_thickened,
    volume_lower_bound,
    volume_lower_bound_guts,
    volume_lower_bound_shifted,
)
from surfskein.link_diagram import HypothesesNotMet
from surfskein.skein_poly import bracket_zero


def coeffs_of(name):
    z = bracket_zero(fixtures()[name])
    return Coefficients(z.a_top, z.a_second, z.b_second, z.b_bottom)


def test_constants():
    assert (V8, V4) == (3.66386, 1.01494)


def test_coefficients_store_absolute_values():
    c = Coefficients(-1, 5, -5, 1)
    assert (c.a_m, c.a_m1, c.b_n1, c.b_n, c.beta) == (1, 5, 5, 1, 8)


def test_thickened_spot_value_genus_one():
    pair = volume_bounds_thickened(Coefficients(1, 3, 2, 1), 1)
    assert (round(pair.lower, 5), round(pair.upper, 5)) == (5.49579, 30.4482)


def test_thickened_genus_two_formula():
    pair = volume_bounds_thickened(Coefficients(1, 4, 4, 1), 2)
    assert pair.lower == pytest.approx(V8 / 2 * (6 + 4))
    assert pair.upper == pytest.approx(6 * V8 * (6 - 2))


def test_thickened_needs_positive_genus():
    with pytest.raises(HypothesesNotMet):
        volume_bounds_thickened(Coefficients(1, 2, 2, 1), 0)


def test_heegaard_requires_r_gt_4():
    with pytest.raises(HypothesesNotMet) as err:
        volume_bounds_heegaard_torus(5, 5)
    assert list(err.value.failed) == ["r_gt_4"]
    pair = volume_bounds_heegaard_torus(5, 5, assert_r_gt_4=True)
    assert (round(pair.lower, 5), round(pair.upper, 5)) == (14.65544, 81.1952)


def test_twist_number_and_guts():
    assert twist_number_from_coefficients(5, 5, 0) == 8
    with pytest.raises(HypothesesNotMet):
        twist_number_from_coefficients(5, 5, 2)
    assert guts_euler(5, 3, -4) == (Fraction(-6), Fraction(-4))


def test_lower_bound_forms():
    c = Coefficients(1, 5, 4, 1)
    assert volume_lower_bound(c, -4) == pytest.approx(V8 * 4 + 2)
    assert volume_lower_bound_shifted(c, -4) == pytest.approx(V8 * 5 - 1 + 2)
    assert volume_lower_bound_guts(c, -4) == pytest.approx(V8 * 6)


def test_ambient_resolution():
    r = AmbientContext(Setting.THICKENED).resolve(2)
    assert r.chi_boundary == -4 and r.surface_incompressible and r.r_gt_4
    assert r.flag("r_gt_4").source == "implied-by-setting"
    assert not r.atoroidal_anannular
    with pytest.raises(AmbientError):
        AmbientContext(Setting.THICKENED, chi_boundary=0).resolve(2)
    with pytest.raises(AmbientError):
        AmbientContext(Setting.HEEGAARD).resolve(2)
    with pytest.raises(AmbientError):
        AmbientContext(Setting.GENERAL).resolve(1)
    with pytest.raises(AmbientError):
        AmbientContext(Setting.GENERAL, chi_boundary=-3).resolve(1)


def test_torus8_thickened_report():
    facts = diagram_facts(fixtures()["torus8"])
    report = analyze_bounds(facts, coeffs_of("torus8"), AmbientContext(Setting.THICKENED, atoroidal_anannular=True))
    assert report.values[TWIST_NUMBER] == 8
    assert report.values[GUTS] == (Fraction(-4), Fraction(-4))
    assert report.values[THICKENED].lower == pytest.approx(V8 / 2 * 8)
    assert report.values[THICKENED].upper == pytest.approx(10 * V4 * 8)
    assert {LOWER_MAX, LOWER_SHIFTED, LOWER_GUTS} <= set(report.values)
    assert report.headline_lower == min(report.values[k] for k in (LOWER_MAX, LOWER_SHIFTED, LOWER_GUTS))


def test_atoroidal_must_be_asserted():
    facts = diagram_facts(fixtures()["torus8"])
    report = analyze_bounds(facts, coeffs_of("torus8"), AmbientContext(Setting.THICKENED))
    assert LOWER_MAX not in report.values
    assert report.checklists[LOWER_MAX].failed == ["atoroidal_anannular"]
    assert THICKENED in report.values


def test_torus4_gated_as_not_reduced():
    facts = diagram_facts(fixtures()["torus4"])
    report = analyze_bounds(facts, coeffs_of("torus4"), AmbientContext(Setting.THICKENED, atoroidal_anannular=True))
    assert not report.emitted_any_bound
    assert "reduced" in report.checklists[THICKENED].failed
    with pytest.raises(HypothesesNotMet):
        report.checklists[THICKENED].require()


def test_heegaard_report_torus8():
    facts = diagram_facts(fixtures()["torus8"])
    ctx = AmbientContext(Setting.HEEGAARD, r_gt_4=True)
    report = analyze_bounds(facts, coeffs_of("torus8"), ctx)
    assert report.to_json()["bounds"][HEEGAARD]["lower"] == 14.65544
    no_r = analyze_bounds(facts, coeffs_of("torus8"), AmbientContext(Setting.HEEGAARD))
    assert HEEGAARD not in no_r.values and no_r.checklists[HEEGAARD].failed == ["r_gt_4"]
