"""Оракул принадлежности замкнутого терма типу в семантике успеха.

Терм принадлежит ``A``, если он расходится, застревает или вычисляется
в значение из ``⟦A⟧``. Расходимость не распознаётся: исчерпание топлива
даёт третий ответ.
"""

from __future__ import annotations

from enum import Enum

from src.domain.entities.evaluation import OutOfFuel, StuckOutcome
from src.domain.entities.pcf import PComp, PcfTerm, PcfType, PNat, POk, PPair, PProd, has_arrow, numeral_value
from src.domain.errors import HigherOrderTypeError
from src.domain.services.kernel.pcf_eval import pcf_evaluate
from src.infrastructure.logging.logging_setup import log_debug

_LOG = __name__


class OracleAnswer(str, Enum):
    IN = "in"
    OUT = "out"
    OUT_OF_FUEL = "out-of-fuel"


def value_in(value: PcfTerm, ty: PcfType) -> bool:
    """Принадлежит ли значение ``⟦ty⟧``; тип первого порядка."""

    if isinstance(ty, PNat):
        return numeral_value(value) is not None
    if isinstance(ty, POk):
        return True
    if isinstance(ty, PProd):
        return isinstance(value, PPair) and value_in(value.first, ty.left) and value_in(value.second, ty.right)
    if isinstance(ty, PComp):
        return not value_in(value, ty.inner)
    raise HigherOrderTypeError(f"no membership test for {ty}")


def success_oracle(m: PcfTerm, a: PcfType, fuel: int) -> OracleAnswer:
    if has_arrow(a):
        raise HigherOrderTypeError("success oracle accepts first-order types only")
    outcome = pcf_evaluate(m, fuel)
    if isinstance(outcome, StuckOutcome):
        answer = OracleAnswer.IN
    elif isinstance(outcome, OutOfFuel):
        answer = OracleAnswer.OUT_OF_FUEL
    else:
        answer = OracleAnswer.IN if value_in(outcome.value, a) else OracleAnswer.OUT
    log_debug(f"⚖️ success_oracle: {answer.value} | outcome: {outcome.kind}", _LOG)
    return answer


__all__ = ["OracleAnswer", "value_in", "success_oracle"]
