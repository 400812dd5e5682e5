"""Результаты редукции: контексты вычисления, шаг, исход.

Общие для обоих языков: причины застревания PCF-термов тоже лежат
в :class:`StuckReason`.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Any, Tuple, Union

from src.domain.entities.terms import Abs, Alternative, Term


class StuckReason(str, Enum):
    APPLY_NON_FUNCTION = "apply-non-function"
    MATCH_NO_CASE = "match-no-case"
    MATCH_NON_CTOR = "match-non-ctor"
    FREE_TOP_ID = "free-top-id"
    # PCF
    SUCC_NON_NUMERAL = "succ-non-numeral"
    PRED_NON_NUMERAL = "pred-non-numeral"
    IFZ_NON_NUMERAL = "ifz-non-numeral"
    LET_NON_PAIR = "let-non-pair"


@dataclass(frozen=True)
class CtorFrame:
    """``c(V̄, □, M̄)``."""

    name: str
    values: Tuple[Term, ...]
    pending: Tuple[Term, ...]


@dataclass(frozen=True)
class AppFunFrame:
    """``□ N``."""

    arg: Term


@dataclass(frozen=True)
class AppArgFrame:
    """``(λx.M) □``."""

    fn: Abs


@dataclass(frozen=True)
class MatchFrame:
    alternatives: Tuple[Alternative, ...]


Frame = Union[CtorFrame, AppFunFrame, AppArgFrame, MatchFrame]
# Внешний кадр первым
EvalContext = Tuple[Frame, ...]


class RedexKind(str, Enum):
    DELTA = "delta"
    BETA = "beta"
    FIX = "fix"
    MATCH = "match"


@dataclass(frozen=True)
class DecomposedValue:
    value: Term


@dataclass(frozen=True)
class Redex:
    context: EvalContext
    redex: Term
    kind: RedexKind


@dataclass(frozen=True)
class StuckAt:
    context: EvalContext
    culprit: Term
    reason: StuckReason


Decomposition = Union[DecomposedValue, Redex, StuckAt]


@dataclass(frozen=True)
class Reduced:
    term: Any


@dataclass(frozen=True)
class Done:
    value: Any


@dataclass(frozen=True)
class Blocked:
    reason: StuckReason
    culprit: Any = None


StepResult = Union[Reduced, Done, Blocked]


@dataclass(frozen=True)
class ValueOutcome:
    value: Any
    steps: int

    kind = "value"


@dataclass(frozen=True)
class StuckOutcome:
    reason: StuckReason
    term: Any
    steps: int

    kind = "stuck"


@dataclass(frozen=True)
class OutOfFuel:
    steps: int

    kind = "out-of-fuel"


EvalOutcome = Union[ValueOutcome, StuckOutcome, OutOfFuel]


__all__ = [
    "StuckReason",
    "CtorFrame",
    "AppFunFrame",
    "AppArgFrame",
    "MatchFrame",
    "Frame",
    "EvalContext",
    "RedexKind",
    "DecomposedValue",
    "Redex",
    "StuckAt",
    "Decomposition",
    "Reduced",
    "Done",
    "Blocked",
    "StepResult",
    "ValueOutcome",
    "StuckOutcome",
    "OutOfFuel",
    "EvalOutcome",
]
