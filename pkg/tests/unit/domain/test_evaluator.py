"""Редукция с топливом: значения, застревание, расходимость."""

from __future__ import annotations

import pytest

from src.domain.entities.evaluation import (
    AppFunFrame,
    DecomposedValue,
    OutOfFuel,
    Redex,
    RedexKind,
    StuckOutcome,
    StuckReason,
    ValueOutcome,
)
from src.domain.entities.terms import Ctor, TopModule
from src.domain.errors import OpenTermError
from src.domain.services.evaluator import decompose, evaluate, plug, step
from src.infrastructure.parsing import parse_term, print_term

EMPTY_MODULE = TopModule(())


@pytest.mark.unit
def test_beta_step_gives_value() -> None:
    outcome = evaluate(parse_term("(fun x -> x) Zero"), EMPTY_MODULE, 10)

    assert isinstance(outcome, ValueOutcome)
    assert outcome.value == Ctor("Zero")
    assert outcome.steps == 1


@pytest.mark.unit
def test_value_takes_no_steps() -> None:
    outcome = evaluate(parse_term("Succ(Zero) :: []"), EMPTY_MODULE, 0)

    assert outcome == ValueOutcome(parse_term("Succ(Zero) :: []"), 0)


@pytest.mark.unit
def test_head_of_mapped_empty_list_gets_stuck(prelude) -> None:
    term = prelude.term("head (map (fun x -> x) [])")

    outcome = evaluate(term, prelude.module, 1_000)

    assert isinstance(outcome, StuckOutcome)
    assert outcome.reason is StuckReason.MATCH_NO_CASE


@pytest.mark.unit
def test_map_over_empty_list_is_empty(prelude) -> None:
    outcome = evaluate(prelude.term("map (fun x -> x) []"), prelude.module, 1_000)

    assert isinstance(outcome, ValueOutcome)
    assert print_term(outcome.value) == "[]"


@pytest.mark.unit
def test_map_applies_function_to_every_element(prelude) -> None:
    term = prelude.term("map (fun x -> Succ(x)) (Zero :: Zero :: [])")

    outcome = evaluate(term, prelude.module, 1_000)

    assert isinstance(outcome, ValueOutcome)
    assert print_term(outcome.value) == "Succ(Zero) :: Succ(Zero) :: []"


@pytest.mark.unit
def test_divergence_runs_out_of_fuel() -> None:
    outcome = evaluate(parse_term("(fix x -> x) (fun y -> y)"), EMPTY_MODULE, 50)

    assert outcome == OutOfFuel(50)


@pytest.mark.unit
@pytest.mark.parametrize(
    ("text", "reason"),
    [
        ("Zero Zero", StuckReason.APPLY_NON_FUNCTION),
        ("match Zero with | Succ(n) -> n end", StuckReason.MATCH_NO_CASE),
        ("match (fun x -> x) with | Zero -> Zero end", StuckReason.MATCH_NON_CTOR),
    ],
)
def test_stuck_reasons(text: str, reason: StuckReason) -> None:
    outcome = evaluate(parse_term(text), EMPTY_MODULE, 10)

    assert isinstance(outcome, StuckOutcome)
    assert outcome.reason is reason
    assert outcome.steps == 0


@pytest.mark.unit
def test_undefined_identifier_is_its_own_stuck_reason() -> None:
    term = parse_term("missing Zero", top_ids=("missing",))

    outcome = evaluate(term, EMPTY_MODULE, 10)

    assert isinstance(outcome, StuckOutcome)
    assert outcome.reason is StuckReason.FREE_TOP_ID


@pytest.mark.unit
def test_constructor_arguments_evaluate_left_to_right() -> None:
    term = parse_term("((fun x -> x) Zero, Zero Zero)")

    outcome = evaluate(term, EMPTY_MODULE, 10)

    assert isinstance(outcome, StuckOutcome)
    assert outcome.reason is StuckReason.APPLY_NON_FUNCTION
    assert outcome.steps == 1
    assert print_term(outcome.term) == "(Zero, Zero Zero)"


@pytest.mark.unit
def test_decompose_and_plug_are_inverse() -> None:
    term = parse_term("(fun x -> x) Zero Zero")

    d = decompose(term)

    assert isinstance(d, Redex)
    assert d.kind is RedexKind.BETA
    assert d.context == (AppFunFrame(Ctor("Zero")),)
    assert plug(d.context, d.redex) == term
    assert decompose(Ctor("Zero")) == DecomposedValue(Ctor("Zero"))


@pytest.mark.unit
def test_open_terms_are_rejected() -> None:
    with pytest.raises(OpenTermError):
        step(parse_term("x Zero"), EMPTY_MODULE)


@pytest.mark.unit
def test_negative_fuel_is_rejected() -> None:
    with pytest.raises(ValueError):
        evaluate(parse_term("Zero"), EMPTY_MODULE, -1)
