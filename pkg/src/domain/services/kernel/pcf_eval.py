"""Вызов по значению для PCF-термов ядра.

Правила IfZ, IfS, Let, Fix, PZ, PS, Beta замыкаются контекстами
``succ(E) | pred(E) | (E, M) | (V, E) | let (x,y) = E in N | ifz(E, N, P)
| (λx.M) E | E N``. Подставляются только замкнутые термы, поэтому
переименование связанных имён не требуется.
"""

from __future__ import annotations

from typing import Mapping

from src.domain.entities.evaluation import (
    Blocked,
    Done,
    EvalOutcome,
    OutOfFuel,
    Reduced,
    StepResult,
    StuckOutcome,
    StuckReason,
    ValueOutcome,
)
from src.domain.entities.pcf import (
    ZERO,
    PAbs,
    PApp,
    PcfTerm,
    PFix,
    PIfZ,
    PLet,
    PPair,
    PPred,
    PSucc,
    PVar,
    PZero,
    numeral_value,
    pcf_free_vars,
)
from src.domain.errors import OpenTermError
from src.infrastructure.logging.logging_setup import log_debug

_LOG = __name__


def is_pcf_value(term: PcfTerm) -> bool:
    if isinstance(term, (PZero, PAbs)):
        return True
    if isinstance(term, PSucc):
        return numeral_value(term) is not None
    if isinstance(term, PPair):
        return is_pcf_value(term.first) and is_pcf_value(term.second)
    return False


def pcf_substitute(term: PcfTerm, mapping: Mapping[str, PcfTerm]) -> PcfTerm:
    """Одновременная подстановка замкнутых термов."""

    if not mapping:
        return term
    if isinstance(term, PVar):
        return mapping.get(term.name, term)
    if isinstance(term, PZero):
        return term
    if isinstance(term, PSucc):
        return PSucc(pcf_substitute(term.arg, mapping))
    if isinstance(term, PPred):
        return PPred(pcf_substitute(term.arg, mapping))
    if isinstance(term, PIfZ):
        return PIfZ(
            pcf_substitute(term.guard, mapping),
            pcf_substitute(term.zero_branch, mapping),
            pcf_substitute(term.succ_branch, mapping),
        )
    if isinstance(term, PAbs):
        inner = {k: v for k, v in mapping.items() if k != term.param}
        return PAbs(term.param, pcf_substitute(term.body, inner))
    if isinstance(term, PFix):
        inner = {k: v for k, v in mapping.items() if k != term.name}
        return PFix(term.name, pcf_substitute(term.body, inner))
    if isinstance(term, PApp):
        return PApp(pcf_substitute(term.fn, mapping), pcf_substitute(term.arg, mapping))
    if isinstance(term, PPair):
        return PPair(pcf_substitute(term.first, mapping), pcf_substitute(term.second, mapping))
    inner = {k: v for k, v in mapping.items() if k not in (term.left, term.right)}
    return PLet(term.left, term.right, pcf_substitute(term.scrutinee, mapping), pcf_substitute(term.body, inner))


def _inside(result: StepResult, rebuild) -> StepResult:
    if isinstance(result, Reduced):
        return Reduced(rebuild(result.term))
    return result


def pcf_step(term: PcfTerm) -> StepResult:
    """Один шаг; ``Blocked`` несёт причину и застрявший подтерм."""

    if is_pcf_value(term):
        return Done(term)
    if isinstance(term, PSucc):
        if not is_pcf_value(term.arg):
            return _inside(pcf_step(term.arg), PSucc)
        return Blocked(StuckReason.SUCC_NON_NUMERAL, term)
    if isinstance(term, PPred):
        if not is_pcf_value(term.arg):
            return _inside(pcf_step(term.arg), PPred)
        n = numeral_value(term.arg)
        if n is None:
            return Blocked(StuckReason.PRED_NON_NUMERAL, term)
        return Reduced(ZERO if n == 0 else term.arg.arg)  # type: ignore[union-attr]
    if isinstance(term, PIfZ):
        if not is_pcf_value(term.guard):
            return _inside(pcf_step(term.guard), lambda g: PIfZ(g, term.zero_branch, term.succ_branch))
        n = numeral_value(term.guard)
        if n is None:
            return Blocked(StuckReason.IFZ_NON_NUMERAL, term)
        return Reduced(term.zero_branch if n == 0 else term.succ_branch)
    if isinstance(term, PPair):
        if not is_pcf_value(term.first):
            return _inside(pcf_step(term.first), lambda m: PPair(m, term.second))
        return _inside(pcf_step(term.second), lambda m: PPair(term.first, m))
    if isinstance(term, PLet):
        if not is_pcf_value(term.scrutinee):
            return _inside(pcf_step(term.scrutinee), lambda m: PLet(term.left, term.right, m, term.body))
        if not isinstance(term.scrutinee, PPair):
            return Blocked(StuckReason.LET_NON_PAIR, term)
        return Reduced(
            pcf_substitute(term.body, {term.left: term.scrutinee.first, term.right: term.scrutinee.second})
        )
    if isinstance(term, PFix):
        return Reduced(pcf_substitute(term.body, {term.name: term}))
    if isinstance(term, PApp):
        if not is_pcf_value(term.fn):
            return _inside(pcf_step(term.fn), lambda m: PApp(m, term.arg))
        if not isinstance(term.fn, PAbs):
            return Blocked(StuckReason.APPLY_NON_FUNCTION, term)
        if not is_pcf_value(term.arg):
            return _inside(pcf_step(term.arg), lambda m: PApp(term.fn, m))
        return Reduced(pcf_substitute(term.fn.body, {term.fn.param: term.arg}))
    raise OpenTermError(f"free variable {term.name} reached evaluation")  # type: ignore[union-attr]


def pcf_evaluate(term: PcfTerm, fuel: int) -> EvalOutcome:
    """Вычислять не более ``fuel`` шагов; терм должен быть замкнут."""

    if fuel < 0:
        raise ValueError("fuel must be >= 0")
    open_vars = pcf_free_vars(term)
    if open_vars:
        raise OpenTermError(f"cannot evaluate an open term, free: {sorted(open_vars)}")
    steps = 0
    current = term
    while True:
        result = pcf_step(current)
        if isinstance(result, Done):
            log_debug(f"🔄 PCF: значение | steps: {steps}", _LOG)
            return ValueOutcome(result.value, steps)
        if isinstance(result, Blocked):
            log_debug(f"🔄 PCF: терм застрял | reason: {result.reason.value} | steps: {steps}", _LOG)
            return StuckOutcome(result.reason, current, steps)
        if steps >= fuel:
            return OutOfFuel(steps)
        steps += 1
        current = result.term


__all__ = ["is_pcf_value", "pcf_substitute", "pcf_step", "pcf_evaluate"]
