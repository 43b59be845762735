"""JSON algebra documents: canonical dump, schema-validated load."""
from __future__ import annotations

import json
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from pathlib import Path

import jsonschema

from .algebra import Superalgebra, build_superalgebra
from .exactnum import field_from_json


class SchemaError(ValueError):
    """Document violates the schema; ``path`` is a JSON pointer."""

    def __init__(self, path: str, message: str):
        super().__init__(f"{path or '/'}: {message}")
        self.path = path or "/"


@lru_cache(maxsize=1)
def algebra_schema() -> dict:
    return json.loads(resources.files("jordan_delta").joinpath("data", "algebra.schema.json").read_text())


def _scalar_json(field, x):
    if field.p:
        return int(x)
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def algebra_to_json(A: Superalgebra) -> dict:
    consts = []
    for (i, j) in sorted(A.constants):
        row = A.constants[(i, j)]
        consts.append({"i": i, "j": j,
                       "coeffs": {str(k): _scalar_json(A.field, c) for k, c in sorted(row.items())}})
    doc = {
        "name": A.name,
        "field": A.field.to_json(),
        "dim": A.dim,
        "parity": list(A.parity),
        "labels": list(A.labels),
        "constants": consts,
    }
    if A.meta.get("blocks"):
        doc["blocks"] = [list(b) for b in A.meta["blocks"]]
    return doc


def dumps(obj) -> str:
    """Canonical text: sorted keys, two-space indent, trailing newline."""
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _pointer(parts) -> str:
    return "".join("/" + str(p).replace("~", "~0").replace("/", "~1") for p in parts)


def validate_document(doc) -> None:
    v = jsonschema.Draft202012Validator(algebra_schema())
    errors = sorted(v.iter_errors(doc), key=lambda e: list(e.absolute_path))
    if errors:
        e = errors[0]
        raise SchemaError(_pointer(e.absolute_path), e.message)
    n = doc["dim"]
    for key in ("parity", "labels"):
        if len(doc[key]) != n:
            raise SchemaError(f"/{key}", f"expected {n} entries, found {len(doc[key])}")
    if len(set(doc["labels"])) != n:
        raise SchemaError("/labels", "labels must be distinct")
    for t, c in enumerate(doc["constants"]):
        for key in ("i", "j"):
            if c[key] >= n:
                raise SchemaError(f"/constants/{t}/{key}", f"index {c[key]} out of range for dim {n}")
        for k in c["coeffs"]:
            if int(k) >= n:
                raise SchemaError(_pointer(["constants", t, "coeffs", k]), f"index {k} out of range for dim {n}")


def algebra_from_json(doc: dict) -> Superalgebra:
    validate_document(doc)
    F = field_from_json(doc["field"])
    quads = []
    for c in doc["constants"]:
        for k, x in c["coeffs"].items():
            quads.append((c["i"], c["j"], int(k), F(Fraction(x) if isinstance(x, str) else x)))
    meta = {"blocks": [tuple(b) for b in doc["blocks"]]} if "blocks" in doc else {}
    return build_superalgebra(F, doc["parity"], quads, doc["labels"], name=doc["name"], meta=meta)


def save_algebra(A: Superalgebra, path) -> None:
    Path(path).write_text(dumps(algebra_to_json(A)))


def load_algebra(path) -> Superalgebra:
    try:
        doc = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise SchemaError("/", f"not valid JSON: {exc}") from None
    return algebra_from_json(doc)
