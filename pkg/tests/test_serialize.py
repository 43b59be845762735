from __future__ import annotations

import json

import pytest

from jordan_delta import zoo
from jordan_delta.derivations import delta_derivations
from jordan_delta.exactnum import PrimeField
from jordan_delta.identities import check_identities
from jordan_delta.serialize import (SchemaError, algebra_from_json, algebra_to_json, dumps, load_algebra,
                                    save_algebra, validate_document)

from conftest import CATALOG_NAMES, SUM_NAMES

CUSTOM = {
    "name": "custom-2d",
    "field": {"kind": "Q"},
    "dim": 2,
    "parity": [0, 0],
    "labels": ["e", "n"],
    "constants": [
        {"i": 0, "j": 0, "coeffs": {"0": "1"}},
        {"i": 0, "j": 1, "coeffs": {"1": "1/2"}},
        {"i": 1, "j": 0, "coeffs": {"1": "1/2"}},
    ],
}


@pytest.mark.parametrize("name", CATALOG_NAMES + SUM_NAMES)
def test_round_trip(build, tmp_path, name):
    A = build(name)
    path = tmp_path / "a.json"
    save_algebra(A, path)
    B = load_algebra(path)
    assert B == A
    assert B.labels == A.labels and B.name == A.name
    assert B.meta.get("blocks", []) == A.meta.get("blocks", [])
    assert path.read_text() == dumps(algebra_to_json(B))


def test_prime_field_round_trip():
    A = zoo.kac_k10(PrimeField(7))
    B = algebra_from_json(json.loads(dumps(algebra_to_json(A))))
    assert B == A and B.field == A.field


def test_parity_length_error():
    doc = dict(CUSTOM, parity=[0])
    with pytest.raises(SchemaError) as exc:
        validate_document(doc)
    assert exc.value.path == "/parity"


@pytest.mark.parametrize("mutate,pointer", [
    (lambda d: d.update(parity=[0, 2]), "/parity/1"),
    (lambda d: d.pop("labels"), "/"),
    (lambda d: d.update(field={"kind": "R"}), "/field"),
    (lambda d: d["constants"].append({"i": 5, "j": 0, "coeffs": {}}), "/constants/3/i"),
    (lambda d: d["constants"].append({"i": 0, "j": 0, "coeffs": {"7": "1"}}), "/constants/3/coeffs/7"),
    (lambda d: d["constants"].append({"i": 0, "j": 0, "coeffs": {"0": "0.5"}}), "/constants/3/coeffs/0"),
    (lambda d: d.update(labels=["e", "e"]), "/labels"),
])
def test_schema_pointers(mutate, pointer):
    doc = json.loads(json.dumps(CUSTOM))
    mutate(doc)
    with pytest.raises(SchemaError) as exc:
        algebra_from_json(doc)
    assert exc.value.path == pointer


def test_bad_json_text(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text("{not json")
    with pytest.raises(SchemaError):
        load_algebra(p)


def test_custom_algebra_is_usable():
    A = algebra_from_json(CUSTOM)
    assert all(r.passed for r in check_identities(A))
    # e^2 = e, en = n/2, n^2 = 0: every half-derivation is scalar
    space = delta_derivations(A, "1/2")
    assert space.dim == 1
    assert space.basis == [[[1, 0], [0, 1]]]
    assert delta_derivations(A, 0).dim == 0


def test_dump_is_canonical(build):
    text = dumps(algebra_to_json(build("K3")))
    assert text.endswith("\n")
    assert text == dumps(json.loads(text))
