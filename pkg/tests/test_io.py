import json

import jsonschema
import pytest

from dormantlab.errors import InputError
from dormantlab.io import (
    SCHEMA_DIR,
    doc_to_ntable,
    load_ntable,
    ntable_to_doc,
    run_report,
    save_ntable,
)


def test_round_trip(enum_cache, tmp_path):
    _, table = enum_cache(7)
    path = tmp_path / "t7.json"
    save_ntable(table, path, source="test")
    assert load_ntable(path) == table


def test_files_are_deterministic(enum_cache, tmp_path):
    _, table = enum_cache(5)
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    save_ntable(table, a, source="s")
    save_ntable(table, b, source="s")
    assert a.read_bytes() == b.read_bytes()


def test_doc_validates_against_schema(enum_cache):
    _, table = enum_cache(5)
    schema = json.loads((SCHEMA_DIR / "ntable.schema.json").read_text())
    jsonschema.validate(ntable_to_doc(table, source="test"), schema)


def test_report_validates_against_schema():
    schema = json.loads((SCHEMA_DIR / "runreport.schema.json").read_text())
    report = run_report("profile", {"p": 17}, {"h0": 0}, 0.5)
    jsonschema.validate(report, schema)
    assert report["schema"] == 1


def test_malformed_docs_rejected():
    with pytest.raises(InputError):
        doc_to_ntable({"p": 5})
    with pytest.raises(InputError):
        doc_to_ntable(
            {
                "p": 5,
                "labels": [1],
                "N": [{"triple": [2, 1, 1], "count": 1}],  # unsorted
                "meta": {"source": "", "tool_version": ""},
            }
        )
    with pytest.raises(InputError):
        doc_to_ntable(
            {
                "p": 5,
                "labels": [1],
                "N": [{"triple": [1, 1, 1], "count": -2}],
                "meta": {"source": "", "tool_version": ""},
            }
        )


def test_io_errors(tmp_path, enum_cache):
    _, table = enum_cache(5)
    with pytest.raises(IOError):
        save_ntable(table, tmp_path / "missing" / "t.json", source="s")
    with pytest.raises(IOError):
        load_ntable(tmp_path / "nope.json")
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(InputError):
        load_ntable(bad)
