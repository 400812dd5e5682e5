"""PCF ядра: вычисление, отношения над типами, оракул успеха."""

from __future__ import annotations

import pytest

from src.domain.entities.evaluation import OutOfFuel, StuckOutcome, StuckReason, ValueOutcome
from src.domain.entities.pcf import PNat, POk, PComp, PNec, PProd, PTo, numeral, numeral_value
from src.domain.errors import HigherOrderTypeError, OpenTermError
from src.domain.services.kernel import (
    OracleAnswer,
    disjoint,
    expand_necessity,
    finitely_verifiable,
    pcf_evaluate,
    success_oracle,
    two_sided_type_error,
)
from src.infrastructure.parsing import parse_pcf_term, parse_pcf_type

NAT = PNat()
OK = POk()


@pytest.mark.unit
@pytest.mark.parametrize(
    ("text", "expected"),
    [
        ("pred(3)", 2),
        ("pred(zero)", 0),
        ("ifz(zero, 1, 2)", 1),
        ("ifz(succ(zero), 1, 2)", 2),
        ("(fun x -> succ(x)) 4", 5),
        ("let (x, y) = (1, 2) in y", 2),
    ],
)
def test_evaluation_to_numerals(text: str, expected: int) -> None:
    outcome = pcf_evaluate(parse_pcf_term(text), 100)

    assert isinstance(outcome, ValueOutcome)
    assert numeral_value(outcome.value) == expected


@pytest.mark.unit
@pytest.mark.parametrize(
    ("text", "reason"),
    [
        ("pred(fun x -> x)", StuckReason.PRED_NON_NUMERAL),
        ("succ(fun x -> x)", StuckReason.SUCC_NON_NUMERAL),
        ("ifz(fun x -> x, 1, 2)", StuckReason.IFZ_NON_NUMERAL),
        ("let (x, y) = zero in x", StuckReason.LET_NON_PAIR),
        ("zero zero", StuckReason.APPLY_NON_FUNCTION),
    ],
)
def test_stuck_terms(text: str, reason: StuckReason) -> None:
    outcome = pcf_evaluate(parse_pcf_term(text), 100)

    assert isinstance(outcome, StuckOutcome)
    assert outcome.reason is reason


@pytest.mark.unit
def test_builders_and_divergence() -> None:
    assert isinstance(pcf_evaluate(parse_pcf_term("id 2"), 10), ValueOutcome)
    assert pcf_evaluate(parse_pcf_term("div"), 25) == OutOfFuel(25)


@pytest.mark.unit
def test_open_pcf_terms_are_rejected() -> None:
    with pytest.raises(OpenTermError):
        pcf_evaluate(parse_pcf_term("succ(y)"), 10)


@pytest.mark.unit
def test_disjointness_of_type_forms() -> None:
    """Разделены только разные формы из Nat, стрелок и произведений."""

    arrow = PTo(NAT, NAT)
    necessity = PNec(NAT, NAT)

    assert disjoint(NAT, arrow)
    assert disjoint(PProd(NAT, NAT), necessity)
    assert not disjoint(arrow, necessity)
    assert not disjoint(NAT, NAT)
    assert not disjoint(OK, NAT)
    assert not disjoint(PComp(NAT), arrow)


@pytest.mark.unit
def test_finitely_verifiable_types() -> None:
    assert finitely_verifiable(PProd(NAT, PProd(NAT, NAT)))
    assert not finitely_verifiable(OK)
    assert not finitely_verifiable(PTo(NAT, NAT))


@pytest.mark.unit
def test_two_sided_type_errors() -> None:
    assert two_sided_type_error(parse_pcf_type("(Nat ~> Nat) -> Nat ~> Ok")) is None
    assert "complements" in two_sided_type_error(parse_pcf_type("Nat^c"))
    assert "codomain" in two_sided_type_error(PNec(NAT, PTo(NAT, NAT)))


@pytest.mark.unit
def test_expand_necessity_uses_complements() -> None:
    ty = parse_pcf_type("(Nat ~> Nat) -> Nat ~> Nat")
    expected = PTo(
        PTo(PComp(NAT), PComp(NAT)),
        PTo(PComp(NAT), PComp(NAT)),
    )

    assert expand_necessity(ty) == expected
    assert parse_pcf_type("(Nat ~> Nat) -> Nat ~> Nat", one_sided=True) == expected


@pytest.mark.unit
@pytest.mark.parametrize(
    ("text", "ty", "answer"),
    [
        ("pred(2)", NAT, OracleAnswer.IN),
        ("(1, 2)", PProd(NAT, NAT), OracleAnswer.IN),
        ("(1, 2)", NAT, OracleAnswer.OUT),
        ("fun x -> x", PComp(NAT), OracleAnswer.IN),
        ("zero", PComp(NAT), OracleAnswer.OUT),
        ("pred(fun x -> x)", PComp(OK), OracleAnswer.IN),
        ("div", NAT, OracleAnswer.OUT_OF_FUEL),
    ],
)
def test_success_oracle(text: str, ty, answer: OracleAnswer) -> None:
    assert success_oracle(parse_pcf_term(text), ty, 50) is answer


@pytest.mark.unit
def test_success_oracle_rejects_arrow_types() -> None:
    with pytest.raises(HigherOrderTypeError):
        success_oracle(numeral(1), PTo(NAT, NAT), 10)
