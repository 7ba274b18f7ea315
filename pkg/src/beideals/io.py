"""JSON file formats for algebras, N-functions and subsets."""

from __future__ import annotations

import json
from pathlib import Path

from .algebra import BEAlgebra, InputError, validate_be_algebra
from .nstructures import NFunction


def _load_json(path) -> object:
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as e:
        raise InputError(f"cannot read {path}: {e}") from None
    except json.JSONDecodeError as e:
        raise InputError(f"{path} is not valid JSON: {e}") from None


def parse_algebra_doc(doc) -> tuple:
    """Return ``(elements, table)`` from an algebra document, checking its shape."""
    if not isinstance(doc, dict) or "elements" not in doc or "table" not in doc:
        raise InputError('algebra document needs "elements" and "table"')
    elements, table = doc["elements"], doc["table"]
    if not isinstance(elements, list) or not all(isinstance(e, str) for e in elements):
        raise InputError('"elements" must be a list of strings')
    if not isinstance(table, list) or not all(isinstance(r, list) for r in table):
        raise InputError('"table" must be a list of rows')
    for row in table:
        if not all(isinstance(c, str) for c in row):
            raise InputError("table cells must be element labels")
    return elements, table


def read_algebra_doc(path) -> tuple:
    return parse_algebra_doc(_load_json(path))


def load_algebra(path) -> BEAlgebra:
    elements, table = read_algebra_doc(path)
    return BEAlgebra.from_labels(elements, table)


def check_algebra_file(path):
    """Axiom report for a file, without requiring it to pass."""
    elements, table = read_algebra_doc(path)
    return validate_be_algebra(elements, table)


def algebra_doc(A: BEAlgebra) -> dict:
    return {"elements": list(A.names), "table": A.label_table()}


def dump_algebra(A: BEAlgebra, path) -> None:
    Path(path).write_text(json.dumps(algebra_doc(A), ensure_ascii=False, indent=2) + "\n", encoding="utf-8")


def parse_function_doc(A: BEAlgebra, doc) -> NFunction:
    if not isinstance(doc, dict) or not isinstance(doc.get("function"), dict):
        raise InputError('function document needs a "function" object')
    values = doc["function"]
    for key, v in values.items():
        if not isinstance(v, (str, int)) or isinstance(v, bool):
            raise InputError(f"value for {key!r} must be a decimal or p/q string")
    return NFunction.from_mapping(A, {k: str(v) for k, v in values.items()})


def load_function(A: BEAlgebra, path) -> NFunction:
    return parse_function_doc(A, _load_json(path))


def function_doc(f: NFunction) -> dict:
    return {"function": f.as_mapping()}


def parse_subset(A: BEAlgebra, text: str) -> frozenset:
    labels = [s.strip() for s in text.split(",") if s.strip()]
    if not labels:
        raise InputError("empty subset")
    return frozenset(A.index(a) for a in labels)


def subset_labels(A: BEAlgebra, I) -> list:
    return [A.names[i] for i in sorted(I)]
