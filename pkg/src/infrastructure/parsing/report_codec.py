"""JSON-представление результатов команд: вердикты, вычисления, проверки, фаззер.

Термы и типы внутри отчётов пишутся поверхностным синтаксисом, суждения-
свидетели: полным форматом :func:`judgement_to_json`. Все списки уже
упорядочены, поэтому ``dumps`` даёт побайтно одинаковый результат.
"""

from __future__ import annotations

from typing import Any, Callable, Iterable

from src.domain.entities.evaluation import EvalOutcome, StuckOutcome, ValueOutcome
from src.domain.entities.reports import CheckReport, ClosureReport
from src.domain.entities.verdicts import FuzzReport, PcfProbeReport, ProbeReport, Verdict
from src.domain.services.constraints import sorted_constraints
from src.domain.services.inference import DefinitionVerdict
from src.infrastructure.parsing.json_codec import FORMAT_VERSION, judgement_to_json
from src.infrastructure.parsing.pcf_printer import print_pcf_term
from src.infrastructure.parsing.printer import print_constraint, print_scheme, print_term, print_type

Json = Any


def outcome_to_json(outcome: EvalOutcome, show: Callable[[Any], str] = print_term) -> Json:
    out: Json = {"kind": outcome.kind, "steps": outcome.steps}
    if isinstance(outcome, ValueOutcome):
        out["value"] = show(outcome.value)
    elif isinstance(outcome, StuckOutcome):
        out["reason"] = outcome.reason.value
        out["term"] = show(outcome.term)
    return out


def constraint_list(constraints: Iterable) -> list[str]:
    return [print_constraint(k) for k in sorted_constraints(constraints)]


def verdict_to_json(verdict: Verdict) -> Json:
    return {
        "kind": verdict.kind.value,
        "witness": None if verdict.witness is None else judgement_to_json(verdict.witness),
        "constraints": constraint_list(verdict.constraints),
        "candidates": verdict.candidates,
        "truncated": verdict.truncated,
    }


def check_report_to_json(report: CheckReport) -> Json:
    return {
        "ok": report.ok,
        "node_path": list(report.node_path),
        "rule": report.rule,
        "reason": report.reason,
    }


def closure_report_to_json(report: ClosureReport) -> Json:
    return {
        "closed": constraint_list(report.closed),
        "consistent": report.consistent,
        "witness": None if report.witness is None else print_constraint(report.witness),
    }


def definition_verdict_to_json(verdict: DefinitionVerdict) -> Json:
    return {
        "name": verdict.name,
        "scheme": print_scheme(verdict.scheme),
        "accepted": verdict.accepted,
        "substitution": {k: print_type(v) for k, v in sorted(verdict.substitution.items())},
        "candidates": verdict.candidates,
        "truncated": verdict.truncated,
        "reason": verdict.reason,
    }


def probe_to_json(probe: ProbeReport) -> Json:
    return {
        "seed": probe.seed,
        "term": print_term(probe.term),
        "well": probe.well.kind.value,
        "ill": probe.ill.kind.value,
        "outcome": outcome_to_json(probe.outcome),
        "violation": probe.violation,
    }


def pcf_probe_to_json(probe: PcfProbeReport) -> Json:
    return {
        "seed": probe.seed,
        "term": print_pcf_term(probe.term),
        "refuted": probe.refuted,
        "outcome": outcome_to_json(probe.outcome, print_pcf_term),
        "violation": probe.violation,
    }


def fuzz_report_to_json(report: FuzzReport) -> Json:
    """Сводка фаззера; пробы без нарушений сворачиваются в счётчики квадрантов."""

    return {
        "version": FORMAT_VERSION,
        "seed": report.seed,
        "count": report.count,
        "size_min": report.size_min,
        "size_max": report.size_max,
        "fuel": report.fuel,
        "ok": report.ok,
        "quadrants": dict(sorted(report.quadrants.items())),
        "pcf_count": len(report.pcf_probes),
        "pcf_quadrants": dict(sorted(report.pcf_quadrants.items())),
        "violations": [probe_to_json(p) for p in report.probes if p.violation],
        "pcf_violations": [pcf_probe_to_json(p) for p in report.pcf_probes if p.violation],
    }


__all__ = [
    "outcome_to_json",
    "constraint_list",
    "verdict_to_json",
    "check_report_to_json",
    "closure_report_to_json",
    "definition_verdict_to_json",
    "probe_to_json",
    "pcf_probe_to_json",
    "fuzz_report_to_json",
]
