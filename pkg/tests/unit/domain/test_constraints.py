"""Замыкание, совместность и выводимость ограничений."""

from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from src.domain.entities.types import (
    EMPTY,
    OK,
    Constraint,
    NecArrow,
    OkType,
    Sum,
    ToArrow,
    TVar,
    Type,
    ctor_type,
)
from src.domain.services.constraints import (
    ClosureState,
    Entailment,
    close,
    entails,
    is_consistent,
    is_syntactically_consistent,
)
from src.infrastructure.parsing import parse_constraints, parse_type

_ARITY = {"Zero": 0, "Succ": 1, "Nil": 0, "Cons": 2}


@st.composite
def _sums(draw, children):
    heads = draw(st.sets(st.sampled_from(sorted(_ARITY)), max_size=3))
    return Sum(tuple((h, tuple(draw(children) for _ in range(_ARITY[h]))) for h in sorted(heads)))


types = st.recursive(
    st.sampled_from([TVar("a"), TVar("b"), TVar("c"), OK, EMPTY, ctor_type("Zero")]),
    lambda children: st.one_of(
        st.builds(ToArrow, children, children),
        st.builds(NecArrow, children, children),
        _sums(children),
    ),
    max_leaves=6,
)

constraint_sets = st.frozensets(st.builds(Constraint, types, types), max_size=4)


@pytest.mark.unit
def test_necessity_arrow_below_function_arrow_is_inconsistent() -> None:
    """``[] ~> Ok ⊑ a3 ⊑ a2 -> a4`` несовместно: транзитивность даёт ``⤙ ⊑ →``."""

    constraints = parse_constraints("{[] ~> Ok <= a3, a3 <= a2 -> a4}")
    report = close(constraints)

    assert not report.consistent
    assert report.witness == Constraint(parse_type("[] ~> Ok"), parse_type("a2 -> a4"))


@pytest.mark.unit
def test_constructor_clash_is_found_by_closure() -> None:
    report = close(parse_constraints("{Zero <= a, a <= Succ(b)}"))

    assert not report.consistent
    assert report.witness == Constraint(ctor_type("Zero"), ctor_type("Succ", TVar("b")))


@pytest.mark.unit
def test_closure_decomposes_arrows_and_sums() -> None:
    closed = close(parse_constraints("{a -> b <= c -> d, Succ(e) <= Succ(f) + Zero}")).closed

    assert Constraint(TVar("c"), TVar("a")) in closed
    assert Constraint(TVar("b"), TVar("d")) in closed
    assert Constraint(TVar("e"), TVar("f")) in closed


@pytest.mark.unit
def test_necessity_arrow_is_contravariant_in_codomain() -> None:
    closed = close(parse_constraints("{a ~> b <= c ~> d}")).closed

    assert Constraint(TVar("a"), TVar("c")) in closed
    assert Constraint(TVar("d"), TVar("b")) in closed


@pytest.mark.unit
@pytest.mark.parametrize(
    ("lhs", "rhs", "expected"),
    [
        ("a", "Zero", True),
        ("Zero", "Ok", True),
        ("a -> b", "c -> d", True),
        ("a ~> b", "c ~> d", True),
        ("Zero", "Zero + Succ(a)", True),
        ("Zero + Succ(a)", "Zero", False),
        ("a ~> b", "c -> d", False),
        ("Ok", "Zero", False),
        ("Zero", "a -> b", False),
    ],
)
def test_syntactic_consistency(lhs: str, rhs: str, expected: bool) -> None:
    assert is_syntactically_consistent(Constraint(parse_type(lhs), parse_type(rhs))) is expected


@pytest.mark.unit
def test_empty_set_is_consistent() -> None:
    report = close(frozenset())

    assert report.consistent
    assert report.closed == frozenset()
    assert report.witness is None


@pytest.mark.unit
def test_entailment_by_transitivity_and_structure() -> None:
    constraints = parse_constraints("{a <= b, b <= c}")

    assert entails(constraints, Constraint(TVar("a"), TVar("c")))
    assert entails(constraints, Constraint(ToArrow(TVar("c"), TVar("a")), ToArrow(TVar("a"), TVar("c"))))
    assert entails(constraints, Constraint(ctor_type("Succ", TVar("a")), ctor_type("Succ", TVar("c"))))
    assert not entails(constraints, Constraint(TVar("c"), TVar("a")))


@pytest.mark.unit
def test_entailment_does_not_decompose_hypotheses() -> None:
    """Разложение ограничений из C не является правилом вывода."""

    constraints = parse_constraints("{Succ(a) <= Succ(b)}")

    assert not entails(constraints, Constraint(TVar("a"), TVar("b")))


@pytest.mark.unit
def test_entailment_of_sums_needs_head_inclusion() -> None:
    assert entails(frozenset(), Constraint(parse_type("Zero"), parse_type("Zero + Succ(a)")))
    assert not entails(frozenset(), Constraint(parse_type("Zero + Succ(a)"), parse_type("Zero")))


@pytest.mark.unit
def test_entailment_terminates_on_recursive_constraints() -> None:
    constraints = parse_constraints("{la == [] + (a :: la), lb == [] + (b :: lb), a <= b}")
    solver = Entailment(constraints)

    assert solver.holds(TVar("la"), parse_type("[] + (a :: la)"))
    assert solver.holds(parse_type("Ok :: Ok"), OK)


@pytest.mark.unit
@given(types, constraint_sets)
@settings(max_examples=200, deadline=None)
def test_reflexivity_and_top(ty, constraints) -> None:
    assert entails(constraints, Constraint(ty, ty))
    assert entails(constraints, Constraint(ty, OK))


@pytest.mark.unit
@given(constraint_sets)
@settings(max_examples=200, deadline=None)
def test_hypotheses_are_entailed(constraints) -> None:
    solver = Entailment(constraints)

    assert solver.holds_all(constraints)


@pytest.mark.unit
@given(constraint_sets)
@settings(max_examples=200, deadline=None)
def test_closure_is_idempotent_and_extensive(constraints) -> None:
    closed = close(constraints).closed

    assert constraints <= closed
    assert close(closed).closed == closed
    assert close(closed).consistent == is_consistent(constraints)


small_types = st.recursive(
    st.sampled_from([TVar("a"), TVar("b"), TVar("c"), OK, EMPTY, ctor_type("Zero")]),
    lambda children: st.one_of(
        st.builds(ToArrow, children, children),
        st.builds(NecArrow, children, children),
        _sums(children),
    ),
    max_leaves=3,
)

small_sets = st.frozensets(st.builds(Constraint, small_types, small_types), max_size=6)


def _subterms(ty: Type):
    yield ty
    if isinstance(ty, (ToArrow, NecArrow)):
        yield from _subterms(ty.dom)
        yield from _subterms(ty.cod)
    elif isinstance(ty, Sum):
        for _, args in ty.summands:
            for arg in args:
                yield from _subterms(arg)


def _rule_applies(a: Type, b: Type, constraints, proven, universe) -> bool:
    if isinstance(b, OkType) or a == b or Constraint(a, b) in constraints:
        return True
    if isinstance(a, ToArrow) and isinstance(b, ToArrow):
        if (b.dom, a.dom) in proven and (a.cod, b.cod) in proven:
            return True
    if isinstance(a, NecArrow) and isinstance(b, NecArrow):
        if (a.dom, b.dom) in proven and (b.cod, a.cod) in proven:
            return True
    if isinstance(a, Sum) and isinstance(b, Sum) and a.heads <= b.heads:
        if all(
            len(args) == len(b.args_of(name)) and all(p in proven for p in zip(args, b.args_of(name)))
            for name, args in a.summands
        ):
            return True
    return any((a, m) in proven and (m, b) in proven for m in universe)


def _derivable_by_rules(constraints, goal: Constraint) -> bool:
    """Перебор снизу вверх: слой за слоем все выводимые пары над подтермами ``C`` и цели."""

    universe = {OK}
    for k in (*constraints, goal):
        universe |= set(_subterms(k.lhs)) | set(_subterms(k.rhs))
    proven: set = set()
    while True:
        layer = {
            (a, b)
            for a in universe
            for b in universe
            if (a, b) in proven or _rule_applies(a, b, constraints, proven, universe)
        }
        if layer == proven:
            return (goal.lhs, goal.rhs) in proven
        proven = layer


@pytest.mark.unit
@given(small_sets, small_types, small_types)
@settings(max_examples=40, deadline=None)
def test_entailment_agrees_with_exhaustive_rule_search(constraints, lhs, rhs) -> None:
    goal = Constraint(lhs, rhs)

    assert Entailment(constraints).holds(lhs, rhs) == _derivable_by_rules(constraints, goal)


@pytest.mark.unit
def test_entailment_on_long_chains_answers_quickly() -> None:
    """Неудачи запоминаются: каждая цель графа решается один раз."""

    constraints = parse_constraints(
        "{Ok ~> c <= c ~> [], Ok <= Ok ~> [], b -> [] <= [] -> a, Zero <= c -> [], b <= a -> []}"
    )
    solver = Entailment(constraints)
    goal = Constraint(TVar("b"), parse_type("(a ~> []) -> b -> a"))

    assert not solver.holds(goal.lhs, goal.rhs)
    decided = solver.decided
    assert not solver.holds(goal.lhs, goal.rhs)
    assert solver.decided == decided
    assert solver.holds(TVar("b"), parse_type("a -> []"))


@pytest.mark.unit
@given(constraint_sets, constraint_sets)
@settings(max_examples=200, deadline=None)
def test_closure_is_monotone(smaller, extra) -> None:
    assert close(smaller).closed <= close(smaller | extra).closed


@pytest.mark.unit
@given(constraint_sets, constraint_sets)
@settings(max_examples=200, deadline=None)
def test_extending_a_closed_state_matches_closing_the_union(first, second) -> None:
    whole = close(first | second)

    state = ClosureState().extend(first).extend(second)

    assert state.closed == whole.closed
    assert state.consistent == whole.consistent
    assert ClosureState().extend(first, fail_fast=True).extend(second, fail_fast=True).consistent == whole.consistent
