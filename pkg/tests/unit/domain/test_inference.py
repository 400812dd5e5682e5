"""Вывод ограниченных типов справа и слева, самопроверка выводов."""

from __future__ import annotations

import pytest

from src.domain.entities.judgements import AlgorithmicNode, Side, TypeEnvironment
from src.domain.entities.terms import NIL, LocalVar
from src.domain.entities.types import OK, NecArrow, TVar, ctor_type
from src.domain.errors import SchemeArityError, WellFormednessError
from src.domain.services.constraints import is_consistent
from src.domain.services.inference import (
    FreshSupply,
    InferenceEngine,
    Partial,
    equal_up_to_renaming,
    infer_left,
    infer_right,
    instantiate_scheme,
    validate_algorithmic,
)
from src.infrastructure.parsing import parse_constraints, parse_scheme, parse_term, parse_type, print_judgement


def _f_env() -> TypeEnvironment:
    return TypeEnvironment().extend("f", NecArrow(ctor_type(NIL), OK))


def _assert_all_valid(result) -> None:
    for j in result:
        report = validate_algorithmic(j.as_derivation())
        assert report.ok, report.describe()


@pytest.mark.unit
def test_right_inference_of_eta_expansion_gives_four_judgements() -> None:
    """``fun x -> f x`` при ``f : [] ~> Ok``: четыре главных суждения, одно несовместно."""

    result = infer_right(_f_env(), parse_term("fun x -> f x"))

    assert len(result) == 4
    assert not result.truncated
    inconsistent = [j for j in result if not is_consistent(j.constraints)]
    assert len(inconsistent) == 1
    assert inconsistent[0].derivation is not None
    assert inconsistent[0].derivation.rule == "AbsR2"
    assert all(j.side is Side.RIGHT for j in result)
    _assert_all_valid(result)


@pytest.mark.unit
def test_necessity_judgement_for_any_argument() -> None:
    """Одно из суждений: ``{Ok ⊑ t, t ~> a ⊑ r} ⊢ fun x -> f x : r``."""

    result = infer_right(_f_env(), parse_term("fun x -> f x"))
    expected = (parse_constraints("{Ok <= t, t ~> a <= r}"), TVar("r"))

    assert any(
        equal_up_to_renaming((j.constraints, j.subject_type), expected, frozenset()) for j in result
    )


@pytest.mark.unit
def test_inference_is_deterministic() -> None:
    first = [print_judgement(j) for j in infer_right(_f_env(), parse_term("fun x -> f x"))]
    second = [print_judgement(j) for j in infer_right(_f_env(), parse_term("fun x -> f x"))]

    assert first == second


@pytest.mark.unit
def test_constructor_on_the_right() -> None:
    result = infer_right(TypeEnvironment(), parse_term("Succ(Zero)"))

    assert len(result) >= 1
    assert all(is_consistent(j.constraints) for j in result)
    _assert_all_valid(result)


@pytest.mark.unit
@pytest.mark.parametrize(
    "text",
    [
        "head (map (fun x -> x) [])",
        "map (fun x -> x) []",
        "fun l -> match l with | x :: xs -> x end",
        "head",
    ],
)
def test_every_judgement_passes_validation_on_both_sides(prelude, text: str) -> None:
    term = prelude.term(text)

    right = infer_right(prelude.env, term)
    left = infer_left(prelude.env, term)

    assert len(right) + len(left) > 0
    _assert_all_valid(right)
    _assert_all_valid(left)


@pytest.mark.unit
def test_left_inference_with_delta() -> None:
    result = infer_left(TypeEnvironment(), parse_term("x"), ("x", TVar("b")))

    assert len(result) >= 1
    assert all(j.delta == ("x", TVar("b")) for j in result)
    _assert_all_valid(result)


@pytest.mark.unit
def test_left_inference_rejects_variable_on_both_sides() -> None:
    env = TypeEnvironment().extend("x", OK)

    with pytest.raises(WellFormednessError):
        infer_left(env, parse_term("x"), ("x", OK))


@pytest.mark.unit
def test_pruning_drops_inconsistent_judgements() -> None:
    result = infer_right(_f_env(), parse_term("fun x -> f x"), prune=True)

    assert all(is_consistent(j.constraints) for j in result)



@pytest.mark.unit
def test_pruned_prefixes_spend_the_product_cap() -> None:
    """Отсечённая несовместная комбинация занимает место в пределе произведения."""

    node = AlgorithmicNode("VarR", TypeEnvironment(), LocalVar("x"), OK, Side.RIGHT)
    clash = Partial(parse_constraints("{Ok <= []}"), OK, node)
    fine = Partial(parse_constraints("{a <= b}"), OK, node)
    engine = InferenceEngine(product_cap=1, prune=True)

    combined = list(engine._combine([[clash, fine]], lambda i, p: ()))

    assert combined == []
    assert engine.truncated


@pytest.mark.unit
def test_pruning_keeps_consistent_combinations_within_the_cap() -> None:
    node = AlgorithmicNode("VarR", TypeEnvironment(), LocalVar("x"), OK, Side.RIGHT)
    left = [Partial(parse_constraints("{a <= b}"), OK, node), Partial(parse_constraints("{Ok <= b}"), OK, node)]
    right = [Partial(parse_constraints("{b <= []}"), OK, node), Partial(parse_constraints("{c <= a}"), OK, node)]
    engine = InferenceEngine(product_cap=3, prune=True)

    combined = [constraints for _, constraints in engine._combine([left, right], lambda i, p: ())]

    assert len(combined) == 2
    assert all(is_consistent(c) for c in combined)
    assert engine.truncated


@pytest.mark.unit
def test_pruned_inference_under_small_cap_stays_consistent() -> None:
    full = infer_right(_f_env(), parse_term("fun x -> f x"), prune=True)
    capped = infer_right(_f_env(), parse_term("fun x -> f x"), prune=True, product_cap=1)

    assert all(is_consistent(j.constraints) for j in capped)
    assert capped.truncated or len(capped) == len(full)
    _assert_all_valid(capped)

@pytest.mark.unit
def test_fresh_supply_skips_reserved_names() -> None:
    supply = FreshSupply()
    supply.reserve({"a1", "a2"})

    assert supply.fresh() == TVar("a3")
    assert supply.fresh_many(2) == (TVar("a4"), TVar("a5"))


@pytest.mark.unit
def test_instantiate_scheme() -> None:
    scheme = parse_scheme("forall a b. {a <= b} => a -> b")

    body, obligations = instantiate_scheme(scheme, (OK, TVar("c")))

    assert body == parse_type("Ok -> c")
    assert obligations == parse_constraints("{Ok <= c}")
    with pytest.raises(SchemeArityError):
        instantiate_scheme(scheme, (OK,))
