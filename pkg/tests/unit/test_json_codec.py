from __future__ import annotations

import json

import pytest

from src.domain.entities.judgements import TypeEnvironment
from src.domain.entities.terms import NIL
from src.domain.entities.types import OK, NecArrow, ctor_type
from src.domain.errors import DerivationFormatError
from src.domain.services.inference import infer_right, validate_algorithmic
from src.infrastructure.parsing import (
    derivation_from_json,
    derivation_to_json,
    dumps,
    judgement_from_json,
    judgement_to_json,
    loads,
    parse_term,
    print_judgement,
)
from tests.conftest import ROOT


def _judgements():
    env = TypeEnvironment().extend("f", NecArrow(ctor_type(NIL), OK))
    return list(infer_right(env, parse_term("fun x -> f x")))


@pytest.mark.unit
def test_judgement_survives_json_with_its_derivation() -> None:
    """Суждение и его вывод читаются обратно и снова проходят проверку."""

    for j in _judgements():
        data = loads(dumps(judgement_to_json(j, with_derivation=True)))

        back = judgement_from_json(data)

        assert back == j
        assert print_judgement(back) == print_judgement(j)
        assert validate_algorithmic(back.as_derivation()).ok


@pytest.mark.unit
def test_derivation_document_round_trip() -> None:
    j = _judgements()[0]

    back = derivation_from_json(loads(dumps(derivation_to_json(j.as_derivation()))))

    assert back.constraints == j.constraints
    assert validate_algorithmic(back).ok


@pytest.mark.unit
def test_dumps_is_canonical() -> None:
    text = dumps({"b": 1, "a": [1, 2]})

    assert text == dumps({"a": [1, 2], "b": 1})
    assert text.endswith("\n")
    assert text.index('"a"') < text.index('"b"')


@pytest.mark.unit
@pytest.mark.parametrize(
    "data",
    [
        {"version": 2, "constraints": [], "root": {}},
        {"version": 1, "root": {}},
        {"version": 1, "constraints": "oops", "root": {"rule": "Nope"}},
    ],
)
def test_malformed_derivations_are_rejected(data) -> None:
    with pytest.raises(DerivationFormatError):
        derivation_from_json(data)


@pytest.mark.unit
def test_invalid_json_is_reported() -> None:
    with pytest.raises(DerivationFormatError):
        loads("{not json")


def _schema(name: str) -> dict:
    return json.loads((ROOT / "schemas" / name).read_text(encoding="utf-8"))


def _check_keys(data: dict, schema: dict) -> None:
    assert set(schema["required"]) <= set(data)
    assert set(data) <= set(schema["properties"])


def _check_nodes(node: dict, defs: dict) -> None:
    _check_keys(node, defs["node"])
    assert set(node["witness"]) <= set(defs["witness"]["properties"])
    for premise in node["premises"]:
        _check_nodes(premise, defs)


@pytest.mark.unit
def test_documents_follow_their_schemas() -> None:
    """Ключи документов совпадают с описанными в ``schemas/``."""

    derivation_schema = _schema("algorithmic-derivation.schema.json")
    judgement_schema = _schema("judgement.schema.json")
    defs = derivation_schema["$defs"]

    for j in _judgements():
        judgement = judgement_to_json(j, with_derivation=True)
        _check_keys(judgement, judgement_schema)
        _check_keys(judgement["env"], judgement_schema["properties"]["env"])
        _check_nodes(judgement["derivation"], defs)

        derivation = derivation_to_json(j.as_derivation())
        _check_keys(derivation, derivation_schema)
        _check_nodes(derivation["root"], defs)
