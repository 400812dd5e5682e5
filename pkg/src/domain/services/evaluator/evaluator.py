"""Разложение терма на контекст и редекс, один шаг, вычисление с топливом.

Контексты вычисления повторяют грамматику
``□ | c(V̄, E, M̄) | E N | (λx.M) E | match E with ...``: аргументы
конструктора вычисляются слева направо, а аргумент применения
вычисляется только когда функция уже абстракция.
"""

from __future__ import annotations

from typing import List

from src.domain.entities.evaluation import (
    AppArgFrame,
    AppFunFrame,
    Blocked,
    CtorFrame,
    DecomposedValue,
    Decomposition,
    Done,
    EvalContext,
    EvalOutcome,
    Frame,
    MatchFrame,
    OutOfFuel,
    Redex,
    RedexKind,
    Reduced,
    StepResult,
    StuckAt,
    StuckOutcome,
    StuckReason,
    ValueOutcome,
)
from src.domain.entities.terms import (
    Abs,
    App,
    Ctor,
    Fix,
    Match,
    Term,
    TopId,
    TopModule,
)
from src.domain.errors import OpenTermError
from src.domain.services.syntax.term_ops import free_vars, is_value, substitute
from src.infrastructure.logging.logging_setup import log_debug

_LOG = __name__


def decompose(t: Term) -> Decomposition:
    """Единственное разложение замкнутого терма."""

    open_vars = free_vars(t)
    if open_vars:
        raise OpenTermError(f"cannot decompose an open term, free: {sorted(open_vars)}")

    frames: List[Frame] = []
    current = t
    if is_value(current):
        return DecomposedValue(current)
    while True:
        if isinstance(current, TopId):
            return Redex(tuple(frames), current, RedexKind.DELTA)
        if isinstance(current, Fix):
            return Redex(tuple(frames), current, RedexKind.FIX)
        if isinstance(current, Ctor):
            idx = next(i for i, a in enumerate(current.args) if not is_value(a))
            frames.append(CtorFrame(current.name, current.args[:idx], current.args[idx + 1:]))
            current = current.args[idx]
            continue
        if isinstance(current, App):
            if not is_value(current.fn):
                frames.append(AppFunFrame(current.arg))
                current = current.fn
                continue
            if not isinstance(current.fn, Abs):
                return StuckAt(tuple(frames), current, StuckReason.APPLY_NON_FUNCTION)
            if not is_value(current.arg):
                frames.append(AppArgFrame(current.fn))
                current = current.arg
                continue
            return Redex(tuple(frames), current, RedexKind.BETA)
        if isinstance(current, Match):
            scrutinee = current.scrutinee
            if not is_value(scrutinee):
                frames.append(MatchFrame(current.alternatives))
                current = scrutinee
                continue
            if not isinstance(scrutinee, Ctor):
                return StuckAt(tuple(frames), current, StuckReason.MATCH_NON_CTOR)
            if current.alternative_for(scrutinee.name) is None:
                return StuckAt(tuple(frames), current, StuckReason.MATCH_NO_CASE)
            return Redex(tuple(frames), current, RedexKind.MATCH)
        # Значения и переменные сюда не попадают: спуск идёт только в не-значения
        raise AssertionError(f"unexpected subterm in decomposition: {current!r}")  # pragma: no cover


def plug(context: EvalContext, t: Term) -> Term:
    """Подставить терм в дырку контекста."""

    result = t
    for frame in reversed(context):
        if isinstance(frame, CtorFrame):
            result = Ctor(frame.name, frame.values + (result,) + frame.pending)
        elif isinstance(frame, AppFunFrame):
            result = App(result, frame.arg)
        elif isinstance(frame, AppArgFrame):
            result = App(frame.fn, result)
        else:
            result = Match(result, frame.alternatives)
    return result


def _contract(redex: Redex, module: TopModule) -> Term | Blocked:
    t = redex.redex
    if redex.kind is RedexKind.DELTA:
        assert isinstance(t, TopId)
        body = module.lookup(t.name)
        if body is None:
            return Blocked(StuckReason.FREE_TOP_ID, t)
        return body
    if redex.kind is RedexKind.FIX:
        assert isinstance(t, Fix)
        return substitute(t.body, {t.name: t})
    if redex.kind is RedexKind.BETA:
        assert isinstance(t, App) and isinstance(t.fn, Abs)
        return substitute(t.fn.body, {t.fn.param: t.arg})
    assert isinstance(t, Match) and isinstance(t.scrutinee, Ctor)
    alt = t.alternative_for(t.scrutinee.name)
    assert alt is not None
    return substitute(alt.body, dict(zip(alt.pattern.variables, t.scrutinee.args)))


def step(t: Term, module: TopModule) -> StepResult:
    """Один шаг редукции: Delta, Beta, Fix или Match."""

    d = decompose(t)
    if isinstance(d, DecomposedValue):
        return Done(d.value)
    if isinstance(d, StuckAt):
        return Blocked(d.reason, d.culprit)
    contracted = _contract(d, module)
    if isinstance(contracted, Blocked):
        return contracted
    return Reduced(plug(d.context, contracted))


def evaluate(t: Term, module: TopModule, fuel: int) -> EvalOutcome:
    """Вычислять не более ``fuel`` шагов."""

    if fuel < 0:
        raise ValueError("fuel must be >= 0")
    steps = 0
    current = t
    while True:
        result = step(current, module)
        if isinstance(result, Done):
            log_debug(f"🔄 Значение получено | steps: {steps}", _LOG)
            return ValueOutcome(result.value, steps)
        if isinstance(result, Blocked):
            log_debug(f"🔄 Терм застрял | reason: {result.reason.value} | steps: {steps}", _LOG)
            return StuckOutcome(result.reason, current, steps)
        if steps >= fuel:
            return OutOfFuel(steps)
        steps += 1
        current = result.term


__all__ = ["decompose", "plug", "step", "evaluate"]
