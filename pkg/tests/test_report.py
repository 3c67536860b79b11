import json

import jsonschema
import pytest

from relmax.errors import UsageError
from relmax.harness import SuiteResult
from relmax.report import SCHEMAS, emit_report, render_human, table, validate


def test_empty_suite_result_is_valid_json(capsys):
    emit_report("suite", SuiteResult("theorem1").to_json(), "json")
    data = json.loads(capsys.readouterr().out)
    assert data["violations"] == [] and data["passed"]


def test_schema_rejects_bad_flags():
    bad = {"group": "g", "class_spec": "pi{2}", "flags": {"E": True, "C": True, "M": 1, "D": False}}
    with pytest.raises(jsonschema.ValidationError):
        validate("flags", bad)


def test_table_alignment():
    text = table(["a", "long header"], [[1, True], [12345, None]])
    lines = text.splitlines()
    assert lines[0].index("long") == lines[2].index("yes") == lines[3].index("-")
    assert set(lines[1]) <= {"-", " "}


def test_human_rendering_for_every_kind():
    flags = {"E": True, "C": False, "M": False, "D": False}
    pair = {"normal_order": 1, "k_quotient": 1, "k_normal": 1, "equality": True, "consistent": True}
    payloads = {
        "kx": {"group": "g", "class_spec": "x", "k": 1, "scheme": [{"order": 1, "class_size": 1, "generators": []}]},
        "hallx": {"group": "g", "class_spec": "x", "h": 0, "classes": []},
        "flags": {"group": "g", "class_spec": "x", "flags": flags},
        "radical": {"group": "g", "class_spec": "x", "radical_order": 1, "routes_agree": True,
                    "generators": [], "pairs": [pair]},
        "reduce": {"group": "g", "class_spec": "x", "k": 1, "h": 1, "flags": flags, "radical_order": 1,
                   "full_reduction": {"order": 1, "iso_name": "Z(1)"}, "pairs": [pair]},
        "equiv": {"groups": ["a", "b"], "class_spec": "x", "equivalent": True,
                  "reductions": [{"order": 1, "iso_name": None}, {"order": 1, "iso_name": None}]},
        "suite": SuiteResult("s").to_json(),
        "catalog": {"entries": [{"name": "Z(1)", "order": 1, "degree": 1}]},
        "error": {"error": "usage", "reason": "bad"},
    }
    for kind, p in payloads.items():
        validate(kind, p)
        assert render_human(kind, p)
    assert set(payloads) | {"check-pair"} == set(SCHEMAS)


def test_write_to_path(tmp_path):
    path = tmp_path / "r.json"
    emit_report("error", {"error": "usage", "reason": "x"}, "json", str(path))
    assert json.loads(path.read_text()) == {"error": "usage", "reason": "x"}


def test_unwritable_path(tmp_path):
    with pytest.raises(UsageError):
        emit_report("error", {"error": "usage", "reason": "x"}, "json", str(tmp_path / "no" / "such" / "f"))
