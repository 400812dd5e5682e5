"""Проверка схем верхнего уровня и вердикты над замкнутыми термами."""

from __future__ import annotations

import pytest

from src.domain.entities.evaluation import OutOfFuel, StuckOutcome, ValueOutcome
from src.domain.entities.judgements import TypeEnvironment
from src.domain.entities.verdicts import Verdict, VerdictKind
from src.domain.errors import InconsistentEnvironmentError, OpenTermError
from src.domain.services.inference import check_toplevel
from src.domain.services.verdict import ill_typed, is_violation, soundness_probe, well_typed
from src.infrastructure.parsing import parse_module, parse_scheme, parse_term, print_scheme

FUEL = 1_000


@pytest.mark.unit
def test_prelude_schemes_are_accepted(prelude) -> None:
    verdicts = check_toplevel(prelude.module, prelude.source.schemes, signature=prelude.signature)

    assert [(v.name, v.accepted) for v in verdicts] == [("head", True), ("map", True), ("map", True)]
    assert all(v.witness is not None for v in verdicts)


@pytest.mark.unit
def test_weakened_head_scheme_is_rejected(prelude) -> None:
    schemes = {**prelude.source.schemes, "head": (parse_scheme("forall a. {} => Ok ~> a"),)}

    verdicts = check_toplevel(prelude.module, schemes, signature=prelude.signature)
    head = verdicts[0]

    assert head.name == "head"
    assert not head.accepted
    assert head.witness is None
    assert "no inferred judgement" in head.reason
    assert print_scheme(head.scheme) == "forall a. {} => Ok ~> a"


@pytest.mark.unit
def test_definition_without_scheme_is_reported() -> None:
    source = parse_module("one = Succ(Zero);")

    verdicts = check_toplevel(source.module, source.schemes)

    assert len(verdicts) == 1
    assert not verdicts[0].accepted
    assert verdicts[0].reason == "no declared scheme"


@pytest.mark.unit
def test_head_of_mapped_empty_list_is_ill_typed_and_stuck(prelude) -> None:
    term = prelude.term("head (map (fun x -> x) [])")

    probe = soundness_probe(term, prelude.env, prelude.module, FUEL)

    assert probe.verdict is VerdictKind.ILL_TYPED
    assert not probe.well.holds
    assert isinstance(probe.outcome, StuckOutcome)
    assert not probe.violation
    assert probe.quadrant == ("ill-typed", "stuck")


@pytest.mark.unit
def test_map_over_empty_list_is_well_typed(prelude) -> None:
    term = prelude.term("map (fun x -> x) []")

    probe = soundness_probe(term, prelude.env, prelude.module, FUEL)

    assert probe.verdict is VerdictKind.WELL_TYPED
    assert not probe.ill.holds
    assert isinstance(probe.outcome, ValueOutcome)
    assert not probe.violation


@pytest.mark.unit
def test_head_of_empty_list_is_ill_typed(prelude) -> None:
    verdict = ill_typed(prelude.env, prelude.term("head []"))

    assert verdict.kind is VerdictKind.ILL_TYPED
    assert verdict.witness is not None


@pytest.mark.unit
def test_divergent_application_is_ill_typed_and_runs_out_of_fuel() -> None:
    term = parse_term("(fix x -> x) (fun y -> y)")

    probe = soundness_probe(term, TypeEnvironment(), parse_module("").module, FUEL)

    assert probe.ill.kind is VerdictKind.ILL_TYPED
    assert isinstance(probe.outcome, OutOfFuel)
    assert not probe.violation


@pytest.mark.unit
def test_values_are_well_typed_and_not_ill_typed() -> None:
    env = TypeEnvironment()
    term = parse_term("Zero")

    assert well_typed(env, term).kind is VerdictKind.WELL_TYPED
    assert ill_typed(env, term).kind is VerdictKind.UNKNOWN


@pytest.mark.unit
def test_verdicts_are_stable_under_renaming(prelude) -> None:
    first = ill_typed(prelude.env, prelude.term("head (map (fun x -> x) [])"))
    second = ill_typed(prelude.env, prelude.term("head (map (fun z -> z) [])"))

    assert first.kind is second.kind is VerdictKind.ILL_TYPED


@pytest.mark.unit
def test_verdicts_need_closed_terms() -> None:
    with pytest.raises(OpenTermError):
        well_typed(TypeEnvironment(), parse_term("x"))


@pytest.mark.unit
def test_inconsistent_environment_is_rejected() -> None:
    source = parse_module("bad : forall a. {Zero <= a, a <= Succ(a)} => a; bad = Zero;")
    env = TypeEnvironment.from_schemes(source.schemes)

    with pytest.raises(InconsistentEnvironmentError):
        ill_typed(env, parse_term("Zero"))


@pytest.mark.unit
def test_violation_rule() -> None:
    """Нарушение: нетипизируемый терм со значением или типизируемый застрявший."""

    ill = Verdict(VerdictKind.ILL_TYPED)
    well = Verdict(VerdictKind.WELL_TYPED)
    unknown = Verdict.unknown()
    value = ValueOutcome(parse_term("Zero"), 0)

    assert is_violation(unknown, ill, value)
    assert not is_violation(unknown, unknown, value)
    assert not is_violation(well, ill, OutOfFuel(10))


@pytest.mark.unit
def test_probe_needs_fuel() -> None:
    with pytest.raises(ValueError):
        soundness_probe(parse_term("Zero"), TypeEnvironment(), parse_module("").module, 0)
