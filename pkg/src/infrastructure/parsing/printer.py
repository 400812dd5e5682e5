"""Каноническая печать термов, типов, суждений и выводов.

Печать детерминирована: слагаемые сумм и ограничения упорядочены,
поэтому одинаковые значения дают побайтно одинаковый текст. Для
``Nil``/``Cons``/``Pair`` используется сахар ``[]``, ``::`` и ``(a, b)``
(в типах ``a * b``).
"""

from __future__ import annotations

from typing import Iterable, List, Mapping, Tuple

from src.domain.entities.judgements import (
    AlgorithmicDerivation,
    AlgorithmicNode,
    Delta,
    InferredJudgement,
    Side,
    TypeEnvironment,
)
from src.domain.entities.terms import (
    CONS,
    NIL,
    PAIR,
    Abs,
    App,
    Ctor,
    Fix,
    LocalVar,
    Match,
    Pattern,
    Term,
    TopId,
    TopModule,
)
from src.domain.entities.types import (
    Constraint,
    NecArrow,
    OkType,
    Scheme,
    Sum,
    ToArrow,
    TVar,
    Type,
)
from src.domain.services.constraints.closure import sorted_constraints

# уровни приоритета термов
_T_BINDER, _T_CONS, _T_APP, _T_ATOM = range(4)
# уровни приоритета типов
_Y_ARROW, _Y_SUM, _Y_PROD, _Y_CONS, _Y_ATOM = range(5)


def _paren(text: str, needed: bool) -> str:
    return f"({text})" if needed else text


def _term(t: Term, level: int) -> str:
    if isinstance(t, (LocalVar, TopId)):
        return t.name
    if isinstance(t, Ctor):
        if t.name == NIL and not t.args:
            return "[]"
        if t.name == CONS and len(t.args) == 2:
            text = f"{_term(t.args[0], _T_APP)} :: {_term(t.args[1], _T_CONS)}"
            return _paren(text, level > _T_CONS)
        if t.name == PAIR and len(t.args) == 2:
            return f"({_term(t.args[0], _T_BINDER)}, {_term(t.args[1], _T_BINDER)})"
        if not t.args:
            return t.name
        return f"{t.name}({', '.join(_term(a, _T_BINDER) for a in t.args)})"
    if isinstance(t, App):
        return _paren(f"{_term(t.fn, _T_APP)} {_term(t.arg, _T_ATOM)}", level > _T_APP)
    if isinstance(t, Abs):
        return _paren(f"fun {t.param} -> {_term(t.body, _T_BINDER)}", level > _T_BINDER)
    if isinstance(t, Fix):
        return _paren(f"fix {t.name} -> {_term(t.body, _T_BINDER)}", level > _T_BINDER)
    alts = " ".join(
        f"| {print_pattern(alt.pattern)} -> {_term(alt.body, _T_BINDER)}" for alt in t.alternatives
    )
    return f"match {_term(t.scrutinee, _T_BINDER)} with {alts} end"


def print_pattern(p: Pattern) -> str:
    if p.ctor == NIL and not p.variables:
        return "[]"
    if p.ctor == CONS and len(p.variables) == 2:
        return f"{p.variables[0]} :: {p.variables[1]}"
    if p.ctor == PAIR and len(p.variables) == 2:
        return f"({p.variables[0]}, {p.variables[1]})"
    if not p.variables:
        return p.ctor
    return f"{p.ctor}({', '.join(p.variables)})"


def print_term(t: Term) -> str:
    return _term(t, _T_BINDER)


def _summand(name: str, args: Tuple[Type, ...], level: int) -> str:
    if name == NIL and not args:
        return "[]"
    if name == PAIR and len(args) == 2:
        text = f"{_type(args[0], _Y_PROD)} * {_type(args[1], _Y_CONS)}"
        return _paren(text, level > _Y_PROD)
    if name == CONS and len(args) == 2:
        text = f"{_type(args[0], _Y_ATOM)} :: {_type(args[1], _Y_CONS)}"
        return _paren(text, level > _Y_CONS)
    if not args:
        return name
    return f"{name}({', '.join(_type(a, _Y_ARROW) for a in args)})"


def _type(ty: Type, level: int) -> str:
    if isinstance(ty, TVar):
        return ty.name
    if isinstance(ty, OkType):
        return "Ok"
    if isinstance(ty, Sum):
        if not ty.summands:
            return "Empty"
        if len(ty.summands) == 1:
            name, args = ty.summands[0]
            return _summand(name, args, level)
        text = " + ".join(_summand(name, args, _Y_PROD) for name, args in ty.summands)
        return _paren(text, level > _Y_SUM)
    arrow = "->" if isinstance(ty, ToArrow) else "~>"
    text = f"{_type(ty.dom, _Y_SUM)} {arrow} {_type(ty.cod, _Y_ARROW)}"
    return _paren(text, level > _Y_ARROW)


def print_type(ty: Type) -> str:
    return _type(ty, _Y_ARROW)


def print_constraint(k: Constraint) -> str:
    return f"{print_type(k.lhs)} <= {print_type(k.rhs)}"


def print_constraints(constraints: Iterable[Constraint]) -> str:
    return "{" + ", ".join(print_constraint(k) for k in sorted_constraints(constraints)) + "}"


def print_scheme(scheme: Scheme) -> str:
    if not scheme.variables and not scheme.constraints:
        return print_type(scheme.body)
    names = " ".join(scheme.variables)
    head = f"forall {names}." if names else "forall ."
    return f"{head} {print_constraints(scheme.constraints)} => {print_type(scheme.body)}"


def print_env(env: TypeEnvironment) -> str:
    return ", ".join(f"{name} : {print_type(ty)}" for name, ty in env.locals)


def _sequent(env: TypeEnvironment, subject: Term, ty: Type, side: Side, delta: Delta) -> str:
    context = print_env(env)
    typing = f"{print_term(subject)} : {print_type(ty)}"
    if side is Side.RIGHT:
        left = context
        right = typing
    else:
        left = f"{context}, {typing}" if context else typing
        right = "" if delta is None else f"{delta[0]} : {print_type(delta[1])}"
    left = f"{left} " if left else ""
    right = f" {right}" if right else ""
    return f"{left}|-{right}"


def print_judgement(j: InferredJudgement) -> str:
    """``{C} ; Γ |- M : A`` справа, ``{C} ; Γ, M : A |- Δ`` слева."""

    return f"{print_constraints(j.constraints)} ; " + _sequent(
        j.env, j.subject, j.subject_type, j.side, j.delta
    )


def _node_lines(node: AlgorithmicNode, depth: int, out: List[str]) -> None:
    pad = "  " * depth
    out.append(f"{pad}{node.rule}  " + _sequent(node.env, node.subject, node.subject_type, node.side, node.delta))
    for premise in node.premises:
        _node_lines(premise, depth + 1, out)


def print_derivation(d: AlgorithmicDerivation) -> str:
    lines = [f"constraints {print_constraints(d.constraints)}"]
    _node_lines(d.root, 0, lines)
    return "\n".join(lines)


def print_module(module: TopModule, schemes: Mapping[str, Tuple[Scheme, ...]] | None = None) -> str:
    schemes = schemes or {}
    lines: List[str] = []
    for name, body in module.definitions:
        for scheme in schemes.get(name, ()):
            lines.append(f"{name} : {print_scheme(scheme)};")
        lines.append(f"{name} = {print_term(body)};")
    return "\n".join(lines)


__all__ = [
    "print_term",
    "print_pattern",
    "print_type",
    "print_constraint",
    "print_constraints",
    "print_scheme",
    "print_env",
    "print_judgement",
    "print_derivation",
    "print_module",
]
