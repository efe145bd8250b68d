"""Named diagrams shipped with the package."""

from __future__ import annotations

from importlib import resources

from .link_diagram import LinkDiagram, parse_spd

_PACKAGE = "surfskein.data.fixtures"


def fixture_names() -> list[str]:
    return sorted(p.name[:-4] for p in resources.files(_PACKAGE).iterdir() if p.name.endswith(".spd"))


def fixture_text(name: str) -> str:
    path = resources.files(_PACKAGE) / f"{name}.spd"
    if not path.is_file():
        raise KeyError(f"no fixture named {name!r}")
    return path.read_text(encoding="utf-8")


def load_fixture(name: str) -> LinkDiagram:
    return parse_spd(fixture_text(name))
