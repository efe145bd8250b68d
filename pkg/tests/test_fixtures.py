import pytest

from surfskein.fixtures import fixture_names, fixture_text, load_fixture
from surfskein.link_diagram import parse_spd


def test_fixture_catalogue():
    names = fixture_names()
    assert names == sorted(names) and len(names) == 13
    assert {"torus4", "torus8", "trefoil_s2", "curl_positive"} <= set(names)


def test_fixtures_load_by_name():
    for name in fixture_names():
        d = load_fixture(name)
        assert d.name == name and parse_spd(fixture_text(name)) == d


def test_unknown_fixture():
    with pytest.raises(KeyError):
        load_fixture("nope")
