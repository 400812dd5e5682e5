"""Разбор и печать языка с конструкторами: термы, типы, схемы, модули."""

from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from src.domain.entities.terms import (
    CONS,
    NIL,
    Abs,
    Alternative,
    App,
    Ctor,
    Fix,
    LocalVar,
    Match,
    Pattern,
    Term,
    TopId,
)
from src.domain.entities.types import OK, Constraint, NecArrow, ToArrow, TVar, ctor_type
from src.domain.errors import SyntaxFault, WellFormednessError
from src.domain.services.syntax import alpha_eq, free_vars, is_value, substitute
from src.domain.services.verdict import gen_term
from src.infrastructure.parsing import (
    parse_binding,
    parse_constraints,
    parse_module,
    parse_scheme,
    parse_term,
    parse_type,
    print_scheme,
    print_term,
    print_type,
)


@pytest.mark.unit
def test_parse_sugar_for_lists_and_pairs() -> None:
    """``[]``, ``::`` и ``(a, b)``: сахар для Nil, Cons и Pair."""

    term = parse_term("(Zero, Zero :: [])")

    assert term == Ctor("Pair", (Ctor("Zero"), Ctor(CONS, (Ctor("Zero"), Ctor(NIL)))))


@pytest.mark.unit
def test_parse_application_is_left_associative() -> None:
    term = parse_term("f x y")

    assert term == App(App(LocalVar("f"), LocalVar("x")), LocalVar("y"))


@pytest.mark.unit
def test_parse_resolves_declared_identifiers() -> None:
    """Объявленные имена становятся идентификаторами, если они не связаны."""

    term = parse_term("fun head -> map head", top_ids=("map", "head"))

    assert term == Abs("head", App(TopId("map"), LocalVar("head")))


@pytest.mark.unit
def test_parse_match_and_fix() -> None:
    term = parse_term("fix m -> fun l -> match l with | [] -> [] | y :: ys -> m ys end")

    assert isinstance(term, Fix)
    body = term.body
    assert isinstance(body, Abs)
    assert isinstance(body.body, Match)
    assert [alt.pattern.ctor for alt in body.body.alternatives] == [NIL, CONS]


@pytest.mark.unit
def test_constructor_call_needs_no_space() -> None:
    """``Succ(x)``: конструктор, ``Succ (x)``: применение голого конструктора."""

    assert parse_term("Succ(Zero)") == Ctor("Succ", (Ctor("Zero"),))
    with pytest.raises(WellFormednessError):
        parse_term("Succ (Zero)")


@pytest.mark.unit
@pytest.mark.parametrize(
    "text",
    [
        "fun x -> x :: []",
        "(fun x -> x) Zero",
        "match l with | x :: xs -> x end",
        "fix f -> fun x -> f Succ(x)",
        "(Zero, [])",
    ],
)
def test_print_parse_agree_on_terms(text: str) -> None:
    assert print_term(parse_term(text)) == text


@pytest.mark.unit
def test_parse_types_and_arrows() -> None:
    assert parse_type("a -> b ~> Ok") == ToArrow(TVar("a"), NecArrow(TVar("b"), OK))
    assert parse_type("a :: Ok") == ctor_type(CONS, TVar("a"), OK)
    assert parse_type("[]") == ctor_type(NIL)


@pytest.mark.unit
@pytest.mark.parametrize(
    "text",
    [
        "(a -> b) -> a :: Ok ~> b :: Ok",
        "a :: la + []",
        "Ok * Ok",
        "Empty",
        "Succ(Zero) + Zero",
    ],
)
def test_print_parse_agree_on_types(text: str) -> None:
    assert print_type(parse_type(text)) == text


@pytest.mark.unit
def test_sum_keeps_canonical_order_and_rejects_repeats() -> None:
    assert parse_type("Zero + Succ(a)") == parse_type("Succ(a) + Zero")
    with pytest.raises(WellFormednessError):
        parse_type("Zero + Zero")


@pytest.mark.unit
def test_equivalence_gives_two_constraints() -> None:
    constraints = parse_constraints("{a == b, c <= Ok}")

    assert constraints == frozenset(
        {Constraint(TVar("a"), TVar("b")), Constraint(TVar("b"), TVar("a")), Constraint(TVar("c"), OK)}
    )


@pytest.mark.unit
def test_scheme_must_be_closed() -> None:
    scheme = parse_scheme("forall a. {} => (a :: Ok) ~> a")
    assert print_scheme(scheme) == "forall a. {} => a :: Ok ~> a"

    with pytest.raises(WellFormednessError):
        parse_scheme("forall a. {} => a -> b")


@pytest.mark.unit
def test_parse_binding() -> None:
    assert parse_binding("f : [] ~> Ok") == ("f", NecArrow(ctor_type(NIL), OK))


@pytest.mark.unit
def test_syntax_error_carries_position() -> None:
    with pytest.raises(SyntaxFault) as info:
        parse_term("fun -> x")

    assert info.value.line == 1


@pytest.mark.unit
def test_module_collects_schemes_and_ctor_declarations() -> None:
    source = parse_module(
        """
        ctor Leaf/0;
        ctor Node/2;
        size : Ok;
        size = fun t -> match t with | Leaf -> Zero | Node(l, r) -> Succ(Zero) end;
        """
    )

    assert source.signature.arity("Node") == 2
    assert source.module.names == ("size",)
    assert len(source.schemes["size"]) == 1


@pytest.mark.unit
def test_module_rejects_scheme_without_definition() -> None:
    with pytest.raises(WellFormednessError):
        parse_module("lonely : Ok;")


@pytest.mark.unit
def test_match_alternatives_must_be_orthogonal() -> None:
    with pytest.raises(WellFormednessError):
        parse_term("match x with | Zero -> x | Zero -> x end")


@pytest.mark.unit
def test_substitution_avoids_capture() -> None:
    """``(fun y -> x)[x := y]`` не должна связать свободный ``y``."""

    term = parse_term("fun y -> x")
    result = substitute(term, {"x": LocalVar("y")})

    assert isinstance(result, Abs)
    assert result.param != "y"
    assert result.body == LocalVar("y")


@pytest.mark.unit
def test_alpha_equivalence_and_free_vars() -> None:
    assert alpha_eq(parse_term("fun x -> x"), parse_term("fun y -> y"))
    assert not alpha_eq(parse_term("fun x -> y"), parse_term("fun y -> y"))
    assert free_vars(parse_term("fun x -> x y")) == frozenset({"y"})


@pytest.mark.unit
def test_values() -> None:
    assert is_value(parse_term("fun x -> x"))
    assert is_value(parse_term("Succ(Zero) :: []"))
    assert not is_value(parse_term("(fun x -> x) Zero"))
    assert not is_value(parse_term("fix x -> x"))


@pytest.mark.unit
@given(st.integers(min_value=0, max_value=10**6), st.integers(min_value=1, max_value=30))
@settings(max_examples=150, deadline=None)
def test_printed_generated_terms_parse_back(seed: int, size: int) -> None:
    term = gen_term(size, seed)

    assert alpha_eq(parse_term(print_term(term)), term)


# Безымянное представление: связанные имена заменены парой
# (номер объемлющего связывателя, позиция в нём), свободные остаются именами.
Nameless = tuple


def _nameless(t: Term, scopes: tuple = ()) -> Nameless:
    if isinstance(t, LocalVar):
        for depth, scope in enumerate(scopes):
            if t.name in scope:
                return ("bound", depth, scope.index(t.name))
        return ("free", t.name)
    if isinstance(t, TopId):
        return ("top", t.name)
    if isinstance(t, Ctor):
        return ("ctor", t.name, tuple(_nameless(a, scopes) for a in t.args))
    if isinstance(t, App):
        return ("app", _nameless(t.fn, scopes), _nameless(t.arg, scopes))
    if isinstance(t, Abs):
        return ("abs", _nameless(t.body, ((t.param,), *scopes)))
    if isinstance(t, Fix):
        return ("fix", _nameless(t.body, ((t.name,), *scopes)))
    return (
        "match",
        _nameless(t.scrutinee, scopes),
        tuple(
            (alt.pattern.ctor, len(alt.pattern.variables), _nameless(alt.body, (alt.pattern.variables, *scopes)))
            for alt in t.alternatives
        ),
    )


def _nameless_subst(u: Nameless, mapping: dict) -> Nameless:
    if u[0] == "free":
        return mapping.get(u[1], u)
    if u[0] in ("bound", "top"):
        return u
    if u[0] == "ctor":
        return ("ctor", u[1], tuple(_nameless_subst(a, mapping) for a in u[2]))
    if u[0] == "app":
        return ("app", _nameless_subst(u[1], mapping), _nameless_subst(u[2], mapping))
    if u[0] in ("abs", "fix"):
        return (u[0], _nameless_subst(u[1], mapping))
    return (
        "match",
        _nameless_subst(u[1], mapping),
        tuple((ctor, arity, _nameless_subst(body, mapping)) for ctor, arity, body in u[2]),
    )


_names = st.sampled_from(["x", "y", "z", "w"])


def _two_way_match(scrutinee: Term, first: str, zero_body: Term, pair_body: Term) -> Match:
    return Match(
        scrutinee,
        (
            Alternative(Pattern("Zero"), zero_body),
            Alternative(Pattern("Pair", (first, "v")), pair_body),
        ),
    )


open_terms = st.recursive(
    st.one_of(_names.map(LocalVar), st.just(Ctor("Zero"))),
    lambda inner: st.one_of(
        st.builds(App, inner, inner),
        st.builds(Abs, _names, inner),
        st.builds(Fix, _names, inner),
        inner.map(lambda a: Ctor("Succ", (a,))),
        st.builds(_two_way_match, inner, _names, inner, inner),
    ),
    max_leaves=10,
)


@pytest.mark.unit
@given(open_terms, st.dictionaries(_names, open_terms, max_size=3))
@settings(max_examples=100, deadline=None)
def test_substitution_agrees_with_nameless_reference(term: Term, mapping: dict) -> None:
    """Подстановка по именам совпадает с подстановкой в безымянном представлении."""

    expected = _nameless_subst(_nameless(term), {k: _nameless(v) for k, v in mapping.items()})

    assert _nameless(substitute(term, mapping)) == expected
