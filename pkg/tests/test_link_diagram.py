import json

import pytest

from corpus import fixtures
from surfskein.link_diagram import (
    HypothesesNotMet,
    NotAlternating,
    Representativity,
    SPDSyntaxError,
    checkerboard_coloring,
    diagram_from_dict,
    diagram_to_dict,
    edge_representativity_class,
    is_alternating,
    is_checkerboard_colorable,
    is_prime,
    is_reduced,
    is_twist_reduced,
    mirror,
    parse_spd,
    to_spd,
    twist_regions,
)


def fx(name):
    return fixtures()[name]


@pytest.mark.parametrize(
    "text",
    [
        "not json",
        '{"name": "x"}',
        '{"name": "x", "crossings": [{"id": 0, "darts": [0, 0, 1, 1], "over_in": 2}]}',
        '{"name": "x", "crossings": [{"id": 0, "darts": [0, 0, 1], "over_in": 1}]}',
    ],
)
def test_malformed_spd(text):
    with pytest.raises(SPDSyntaxError):
        parse_spd(text)


def test_spd_round_trip():
    for name, d in fixtures().items():
        again = parse_spd(to_spd(d))
        assert again == d and again.name == name
        assert diagram_from_dict(json.loads(json.dumps(diagram_to_dict(d)))) == d


@pytest.mark.parametrize(
    "name, crossings, genus, writhe",
    [
        ("curl_positive", 1, 0, 1),
        ("curl_negative", 1, 0, -1),
        ("hopf_s2", 2, 0, 2),
        ("trefoil_s2", 3, 0, 3),
        ("figure_eight_s2", 4, 0, 0),
        ("torus_link_2_4_s2", 4, 0, -4),
        ("torus_knot_2_5_s2", 5, 0, 5),
        ("torus4", 4, 1, -4),
        ("torus8", 8, 1, -8),
        ("genus2_reduced", 13, 2, 1),
    ],
)
def test_fixture_basics(name, crossings, genus, writhe):
    d = fx(name)
    assert (d.num_crossings, d.genus, d.writhe) == (crossings, genus, writhe)
    assert d.euler_characteristic == 2 - 2 * genus


def test_mirror_negates_writhe_and_is_involution():
    d = fx("trefoil_s2")
    assert mirror(d).writhe == -d.writhe
    assert mirror(mirror(d)) == d
    assert is_alternating(mirror(d))


def test_switching_breaks_alternation():
    d = fx("torus8").switch([0])
    assert not is_alternating(d)
    with pytest.raises(NotAlternating):
        checkerboard_coloring(d)
    with pytest.raises(HypothesesNotMet) as err:
        is_reduced(d)
    assert "alternating" in err.value.failed


def test_alternating_torus_fixtures_colorable():
    for name in ("torus4", "torus8", "torus_annular", "genus2_reduced"):
        assert is_checkerboard_colorable(fx(name))


@pytest.mark.parametrize("name", ["trefoil_s2", "torus8", "genus2_reduced"])
def test_coloring_matches_corner_letters(name):
    d = fx(name)
    col = checkerboard_coloring(d)
    for x in range(d.num_crossings):
        # the A-smoothing merges corners 1 and 3, the B-smoothing corners 0 and 2
        assert [col.colors[d.corner_face(x, k)] for k in range(4)] == ["B", "A", "B", "A"]


def test_reduced_facts():
    assert is_reduced(fx("trefoil_s2"))
    assert is_reduced(fx("torus8"))
    assert not is_reduced(fx("torus4"))
    assert is_reduced(fx("genus2_reduced"))


def test_representativity():
    assert edge_representativity_class(fx("torus4")) is Representativity.TWO
    assert edge_representativity_class(fx("torus8")) is Representativity.AT_LEAST_FOUR
    assert str(Representativity.AT_LEAST_FOUR) == ">=4"


def test_primeness():
    assert is_prime(fx("torus4"))
    assert is_prime(fx("figure_eight_s2"))
    assert not is_prime(fx("trefoil_sum_s2"))


def test_twist_regions_torus_link_chain():
    for name, q in (("trefoil_s2", 3), ("torus_link_2_4_s2", 4), ("torus_knot_2_5_s2", 5)):
        t = twist_regions(fx(name))
        assert t.count == 1 and len(t.regions[0]) == q


def test_twist_regions_cover_crossings():
    for d in fixtures().values():
        t = twist_regions(d)
        assert sorted(x for r in t.regions for x in r) == list(range(d.num_crossings))
        assert all(t.region_of[x] == i for i, r in enumerate(t.regions) for x in r)


def test_twist_reduced_facts():
    assert is_twist_reduced(fx("figure_eight_s2"))
    assert is_twist_reduced(fx("torus8"))
    assert not is_twist_reduced(fx("doubled_square_s2"))
    assert twist_regions(fx("torus8")).count == 8
