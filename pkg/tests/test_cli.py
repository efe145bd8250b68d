import io
import json
import subprocess
import sys
from importlib import resources
from pathlib import Path

import jsonschema
import pytest

from surfskein.cli import run
from surfskein.fixtures import fixture_text

SCHEMA = json.loads(resources.files("surfskein.data").joinpath("report.schema.json").read_text(encoding="utf-8"))
DOCS_SCHEMA = Path(__file__).resolve().parents[1] / "docs" / "report.schema.json"


def fixture_file(tmp_path, name):
    path = tmp_path / f"{name}.spd"
    path.write_text(fixture_text(name), encoding="utf-8")
    return str(path)


def call(*argv):
    buf = io.StringIO()
    code = run(list(argv), buf)
    return code, buf.getvalue()


def call_json(*argv):
    code, text = call(*argv)
    doc = json.loads(text)
    jsonschema.validate(doc, SCHEMA)
    return code, doc


def test_docs_schema_matches_packaged_copy():
    assert json.loads(DOCS_SCHEMA.read_text(encoding="utf-8")) == SCHEMA


def test_analyze_torus8(tmp_path):
    code, doc = call_json("analyze", "--in", fixture_file(tmp_path, "torus8"), "--ambient", "thickened")
    assert code == 0
    assert doc["diagram"]["crossings"] == 8 and doc["diagram"]["genus"] == 1
    assert doc["hypotheses"]["reduced"] and doc["hypotheses"]["edge_representativity"] == ">=4"
    assert doc["coefficients"]["a_m1"] == 5 and doc["twist_regions"]["count"] == 8
    assert doc["bounds"]["thickened-surface-bounds"]["lower"] == 14.65544


def test_analyze_round_trip_modulo_timestamp(tmp_path):
    _, first = call("analyze", "--in", fixture_file(tmp_path, "torus4"), "--ambient", "thickened")
    report = tmp_path / "report.json"
    report.write_text(first, encoding="utf-8")
    _, second = call("analyze", "--in", str(report), "--ambient", "thickened")
    a, b = json.loads(first), json.loads(second)
    a.pop("timestamp")
    b.pop("timestamp")
    assert json.dumps(a, sort_keys=True, indent=2) == json.dumps(b, sort_keys=True, indent=2)


def test_bracket_with_decomposition(tmp_path):
    code, doc = call_json("bracket", "--in", fixture_file(tmp_path, "torus4"), "--decomposition")
    assert code == 0
    assert doc["bracket_zero"]["terms"] == [[-8, 1], [-4, -2], [0, 1], [4, 1]]
    assert len(doc["decomposition"]["keys"]) == 2


def test_bracket_inline_spd():
    code, doc = call_json("bracket", "--spd", fixture_text("trefoil_s2"))
    assert code == 0 and doc["jones_j0"]["writhe"] == 3


def test_bracket_text_output(tmp_path):
    code, text = call("bracket", "--in", fixture_file(tmp_path, "figure_eight_s2"), "--format", "text")
    assert code == 0 and "t^2 - t + 1 - t^-1 + t^-2" in text


def test_bounds_hypotheses_fail_exit_2(tmp_path):
    code, doc = call_json("bounds", "--in", fixture_file(tmp_path, "torus4"), "--ambient", "thickened")
    assert code == 2 and "reduced" in doc["error"]


def test_bounds_heegaard(tmp_path):
    path = fixture_file(tmp_path, "torus8")
    code, doc = call_json("bounds", "--in", path, "--ambient", "heegaard", "--assert-r-gt-4")
    assert code == 0
    pair = doc["bounds"]["heegaard-torus-bounds"]
    assert (pair["lower"], pair["upper"]) == (14.65544, 81.1952)
    code, _ = call_json("bounds", "--in", path, "--ambient", "heegaard")
    assert code == 2


def test_bounds_general_needs_chi(tmp_path):
    code, doc = call_json("bounds", "--in", fixture_file(tmp_path, "torus8"))
    assert code == 1 and doc["error_type"] == "AmbientError"


def test_verify_single_and_corpus(tmp_path):
    code, doc = call_json("verify", "--in", fixture_file(tmp_path, "torus8"))
    assert code == 0 and doc["summary"]["fail"] == 0
    corpus = tmp_path / "c.jsonl"
    code, _ = call_json("generate", "--genus", "1", "--crossings", "5", "--count", "3", "--out", str(corpus))
    assert code == 0 and len(corpus.read_text().splitlines()) == 3
    code, doc = call_json("verify", "--corpus", str(corpus))
    assert code == 0 and doc["summary"]["diagrams"] == 3


def test_generate_deterministic():
    _, a = call_json("generate", "--genus", "2", "--crossings", "6", "--seed", "3")
    _, b = call_json("generate", "--genus", "2", "--crossings", "6", "--seed", "3")
    assert a["diagrams"] == b["diagrams"]


def test_generate_single_file(tmp_path):
    out = tmp_path / "d.spd"
    code, _ = call_json("generate", "--genus", "1", "--crossings", "4", "--out", str(out))
    assert code == 0
    code, doc = call_json("bracket", "--in", str(out))
    assert code == 0 and doc["diagram"]["genus"] == 1


@pytest.mark.parametrize(
    "argv",
    [
        ["analyze", "--in", "/nonexistent.spd"],
        ["analyze", "--spd", "{not json"],
        ["analyze", "--spd", '{"name": "x", "crossings": []}'],
        ["bracket"],
    ],
)
def test_input_errors_exit_1(argv):
    code, doc = call_json(*argv)
    assert code == 1 and "error" in doc


def test_too_many_crossings(tmp_path):
    code, doc = call_json("bracket", "--in", fixture_file(tmp_path, "torus8"), "--max-crossings", "6")
    assert code == 1 and doc["error_type"] == "TooManyCrossings"


def test_unknown_flag_exit_1():
    code, _ = call("analyze", "--frobnicate")
    assert code == 1


def test_module_entry_point(tmp_path):
    proc = subprocess.run(
        [sys.executable, "-m", "surfskein", "bracket", "--in", fixture_file(tmp_path, "hopf_s2")],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    jsonschema.validate(json.loads(proc.stdout), SCHEMA)
