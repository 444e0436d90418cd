"""Persistence formats: N-table files and run reports.

An N-table file stores the structure constants once per sorted triple with
provenance metadata; omitted triples mean zero.  Run reports wrap a
command's inputs and outputs under a versioned schema.  Both formats are
deterministic so reruns produce byte-identical files.
"""

from __future__ import annotations

import json
from pathlib import Path

from . import __version__
from .errors import InputError
from .sl2 import NTable

SCHEMA_DIR = Path(__file__).parent / "schemas"
REPORT_SCHEMA_VERSION = 1


def ntable_to_doc(table: NTable, source: str) -> dict:
    return {
        "p": table.p,
        "labels": list(table.labels),
        "N": [
            {"triple": list(key), "count": count}
            for key, count in sorted(table.counts.items())
            if count
        ],
        "meta": {"source": source, "tool_version": __version__},
    }


def doc_to_ntable(doc: dict) -> NTable:
    try:
        p = int(doc["p"])
        labels = tuple(int(x) for x in doc["labels"])
        counts = {}
        for entry in doc["N"]:
            triple = tuple(int(x) for x in entry["triple"])
            if len(triple) != 3 or list(triple) != sorted(triple):
                raise InputError(f"triple {triple} must be sorted and of length 3")
            if any(t not in labels for t in triple):
                raise InputError(f"triple {triple} uses labels outside {labels}")
            count = int(entry["count"])
            if count < 0:
                raise InputError(f"negative count at {triple}")
            counts[triple] = count
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed N-table document: {exc}") from exc
    return NTable(p=p, labels=labels, counts=counts)


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2) + "\n"


def save_ntable(table: NTable, path, source: str) -> None:
    try:
        Path(path).write_text(dumps(ntable_to_doc(table, source)))
    except OSError as exc:
        raise IOError(f"cannot write {path}: {exc}") from exc


def load_ntable(path) -> NTable:
    try:
        raw = Path(path).read_text()
    except OSError as exc:
        raise IOError(f"cannot read {path}: {exc}") from exc
    try:
        doc = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from exc
    return doc_to_ntable(doc)


def run_report(command: str, inputs: dict, outputs: dict, seconds: float) -> dict:
    return {
        "schema": REPORT_SCHEMA_VERSION,
        "command": command,
        "inputs": inputs,
        "outputs": outputs,
        "timing": {"seconds": round(seconds, 3)},
    }


__all__ = [
    "SCHEMA_DIR",
    "doc_to_ntable",
    "dumps",
    "load_ntable",
    "ntable_to_doc",
    "run_report",
    "save_ntable",
]
