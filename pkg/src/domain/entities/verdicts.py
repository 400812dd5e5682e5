"""Вердикты «типизируем / нетипизируем» и отчёты проб корректности."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, FrozenSet, Optional, Tuple, Union

from src.domain.entities.evaluation import EvalOutcome
from src.domain.entities.judgements import InferredJudgement
from src.domain.entities.terms import Term
from src.domain.entities.types import Constraint


class VerdictKind(str, Enum):
    WELL_TYPED = "well-typed"
    ILL_TYPED = "ill-typed"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class Verdict:
    """Итог одного запроса.

    ``UNKNOWN`` означает лишь, что запрос не нашёл свидетеля; это не
    утверждение о противоположном вердикте.
    """

    kind: VerdictKind
    witness: Optional[InferredJudgement] = None
    constraints: FrozenSet[Constraint] = frozenset()
    candidates: int = 0
    truncated: bool = False

    @property
    def holds(self) -> bool:
        return self.kind is not VerdictKind.UNKNOWN

    @classmethod
    def unknown(cls, candidates: int = 0, truncated: bool = False) -> "Verdict":
        return cls(VerdictKind.UNKNOWN, candidates=candidates, truncated=truncated)


@dataclass(frozen=True)
class ProbeReport:
    """Проба корректности: два вердикта и результат вычисления.

    ``violation``: нетипизируемый терм дал значение либо типизируемый
    застрял. Исчерпание топлива нарушением не считается.
    """

    term: Term
    well: Verdict
    ill: Verdict
    outcome: EvalOutcome
    violation: bool
    seed: Optional[int] = None

    @property
    def verdict(self) -> VerdictKind:
        if self.ill.holds:
            return VerdictKind.ILL_TYPED
        if self.well.holds:
            return VerdictKind.WELL_TYPED
        return VerdictKind.UNKNOWN

    @property
    def quadrant(self) -> Tuple[str, str]:
        return self.verdict.value, self.outcome.kind


@dataclass(frozen=True)
class PcfProbeReport:
    """Проба односторонней системы на PCF-терме.

    ``violation``: для терма выведено ``Ok^c``, а он вычислился в значение.
    """

    term: Any
    refuted: bool
    outcome: EvalOutcome
    violation: bool
    seed: Optional[int] = None

    @property
    def quadrant(self) -> Tuple[str, str]:
        return ("ill-typed" if self.refuted else "unknown"), self.outcome.kind


@dataclass(frozen=True)
class FuzzReport:
    """Сводка прогона фаззера; пробы упорядочены по зерну."""

    seed: int
    count: int
    size_min: int
    size_max: int
    fuel: int
    probes: Tuple[ProbeReport, ...] = ()
    quadrants: Dict[str, int] = field(default_factory=dict)
    pcf_probes: Tuple[PcfProbeReport, ...] = ()
    pcf_quadrants: Dict[str, int] = field(default_factory=dict)

    @property
    def violations(self) -> Tuple[Union[ProbeReport, PcfProbeReport], ...]:
        return tuple(p for p in (*self.probes, *self.pcf_probes) if p.violation)

    @property
    def ok(self) -> bool:
        return not self.violations


__all__ = ["VerdictKind", "Verdict", "ProbeReport", "PcfProbeReport", "FuzzReport"]
