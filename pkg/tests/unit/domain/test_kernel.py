"""Ядро PCF: проверка выводов корпуса, порча выводов, перевод, поиск."""

from __future__ import annotations

import copy

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from src.domain.entities.evaluation import StuckOutcome, ValueOutcome
from src.domain.entities.pcf import NAT, POK, KernelDerivation, PComp, PTo, PVar, Sequent, Typing, pcf_free_vars
from src.domain.services.kernel import (
    check_one_sided,
    check_two_sided,
    gen_pcf_term,
    pcf_soundness_probe,
    prove_one_sided,
    translate_to_one_sided,
)
from src.infrastructure.parsing import (
    KernelSystem,
    kernel_from_json,
    loads,
    parse_pcf_term,
    parse_pcf_type,
)
from tests.conftest import CORPUS

DOCUMENTS = sorted(p.name for p in CORPUS.glob("*.json"))


def _raw(name: str) -> dict:
    return loads((CORPUS / name).read_text(encoding="utf-8"))


def _check(data: dict):
    document = kernel_from_json(data)
    if document.system is KernelSystem.TWO_SIDED:
        return check_two_sided(document.root)
    return check_one_sided(document.root)


@pytest.mark.unit
@pytest.mark.parametrize("name", DOCUMENTS)
def test_corpus_derivations_check(name: str) -> None:
    report = _check(_raw(name))

    assert report.ok, report.describe()


@pytest.mark.unit
def test_corpus_covers_both_systems() -> None:
    systems = {kernel_from_json(_raw(name)).system for name in DOCUMENTS}

    assert systems == {KernelSystem.ONE_SIDED, KernelSystem.TWO_SIDED}


@pytest.mark.unit
def test_wrong_root_type_fails_at_root() -> None:
    data = _raw("twice.json")
    data["root"]["conclusion"] = data["root"]["conclusion"].replace(
        "(Nat ~> Nat) -> Nat ~> Nat", "(Nat ~> Nat) -> Nat ~> Ok"
    )

    report = _check(data)

    assert not report.ok
    assert report.node_path == ()


@pytest.mark.unit
def test_missing_disjoint_pair_is_reported() -> None:
    data = _raw("fix-id.json")
    del data["root"]["premises"][1]["side"]

    report = _check(data)

    assert not report.ok
    assert report.node_path == (1,)
    assert report.rule == "Dis"
    assert report.reason == "Dis needs the recorded disjoint pair (A, B)"


@pytest.mark.unit
def test_unknown_rule_and_wrong_premise_count() -> None:
    unknown = _raw("fix-id.json")
    unknown["root"]["rule"] = "X"
    short = copy.deepcopy(_raw("fix-id.json"))
    short["root"]["premises"].pop()

    assert _check(unknown).reason == "unknown two-sided rule X"
    assert "premise(s), got 1" in _check(short).reason


@pytest.mark.unit
@pytest.mark.parametrize("name", DOCUMENTS)
def test_fresh_variable_in_first_axiom_is_rejected(name: str) -> None:
    """Подмена субъекта первой аксиомы свежей переменной ломает любой вывод корпуса."""

    data = _raw(name)
    node, path = data["root"], ()
    while node["premises"]:
        node, path = node["premises"][0], path + (0,)
    env, goal = node["conclusion"].rsplit("|- ", 1)
    node["conclusion"] = f"{env}|- zz : {goal.split(' : ', 1)[1]}"

    report = _check(data)

    assert not report.ok
    assert path[: len(report.node_path)] == report.node_path


@pytest.mark.unit
@pytest.mark.parametrize(
    "name", [name for name in DOCUMENTS if kernel_from_json(_raw(name)).system is KernelSystem.TWO_SIDED]
)
def test_translation_of_two_sided_corpus_checks(name: str) -> None:
    translated = translate_to_one_sided(kernel_from_json(_raw(name)).root)

    assert check_one_sided(translated).ok


@pytest.mark.unit
def test_translation_of_twice_checks_one_sided() -> None:
    """Перевод двустороннего вывода даёт односторонний вывод с раскрытым типом."""

    document = kernel_from_json(_raw("twice.json"))

    translated = translate_to_one_sided(document.root)

    assert check_one_sided(translated).ok
    assert translated.conclusion.left == frozenset()
    goal = translated.conclusion.goal
    assert goal is not None
    assert goal.type == parse_pcf_type("(Nat ~> Nat) -> Nat ~> Nat", one_sided=True)


@pytest.mark.unit
def test_prover_finds_zero() -> None:
    found = prove_one_sided((), parse_pcf_term("zero"), NAT, 1)

    assert found is not None
    assert found.rule == "Zero"
    assert found.conclusion == Sequent.one_sided((), parse_pcf_term("zero"), NAT)


@pytest.mark.unit
def test_prover_refutes_predecessor_of_function() -> None:
    found = prove_one_sided((), parse_pcf_term("pred(fun x -> x)"), PComp(POK), 6)

    assert found is not None
    assert found.height == 4
    assert check_one_sided(found).ok


@pytest.mark.unit
def test_prover_gives_up_on_false_claims() -> None:
    assert prove_one_sided((), parse_pcf_term("zero"), PTo(NAT, NAT), 8) is None
    with pytest.raises(ValueError):
        prove_one_sided((), parse_pcf_term("zero"), NAT, 0)


@pytest.mark.unit
def test_pcf_probe() -> None:
    stuck = pcf_soundness_probe(parse_pcf_term("pred(fun x -> x)"), 6, 50)
    value = pcf_soundness_probe(parse_pcf_term("succ(zero)"), 6, 50)

    assert stuck.refuted
    assert isinstance(stuck.outcome, StuckOutcome)
    assert not stuck.violation
    assert not value.refuted
    assert isinstance(value.outcome, ValueOutcome)
    assert not value.violation
    with pytest.raises(ValueError):
        pcf_soundness_probe(parse_pcf_term("zero"), 6, 0)


@pytest.mark.unit
@given(st.integers(min_value=0, max_value=10_000), st.integers(min_value=1, max_value=25))
@settings(max_examples=100, deadline=None)
def test_generated_pcf_terms_are_closed(seed: int, size: int) -> None:
    assert pcf_free_vars(gen_pcf_term(size, seed)) == frozenset()


def _fix_under_ok_c(name: str) -> KernelDerivation:
    term = parse_pcf_term(f"fix {name} -> fun y -> zero")
    body = Sequent.one_sided((Typing(PVar(name), PComp(POK)),), term.body, PComp(POK))
    return KernelDerivation(
        "Fix", Sequent.one_sided((), term, PComp(POK)), (KernelDerivation("OkC1", body, (), ()),), ()
    )


@pytest.mark.unit
def test_fix_bound_name_does_not_discharge_ok_c() -> None:
    """``fix x -> fun y -> zero`` даёт значение за один шаг, значит не может быть ``Ok^c``."""

    report = check_one_sided(_fix_under_ok_c("x"))

    assert not report.ok
    assert report.node_path == (0,)
    assert report.rule == "OkC1"
    assert report.reason == "x : Ok^c is bound by Fix and stands for a non-value"


@pytest.mark.unit
def test_lambda_bound_name_still_discharges_ok_c() -> None:
    term = parse_pcf_term("fun y -> zero")
    ok_c = PComp(POK)
    leaf = KernelDerivation("OkC1", Sequent.one_sided((Typing(PVar("y"), ok_c),), term.body, ok_c), (), ())
    root = KernelDerivation("Abs", Sequent.one_sided((), term, PTo(ok_c, ok_c)), (leaf,), ())

    assert check_one_sided(root).ok


@pytest.mark.unit
@pytest.mark.parametrize(
    "text",
    [
        "fix x -> fun y -> zero",
        "fix v1 -> fun v2 -> let (v5, v6) = (zero, zero) in succ(succ(zero))",
        "fix f -> fun y -> f",
    ],
)
def test_prover_does_not_refute_fixpoints_that_return_values(text: str) -> None:
    term = parse_pcf_term(text)

    assert prove_one_sided((), term, PComp(POK), 8) is None
    assert pcf_soundness_probe(term, 8, 100).violation is False


@pytest.mark.unit
def test_prover_still_refutes_diverging_fixpoint_application() -> None:
    found = prove_one_sided((), parse_pcf_term("pred(fix x -> fun y -> y)"), PComp(POK), 6)

    assert found is not None
    assert check_one_sided(found).ok
