"""Команды CLI как use case'ы.

Каждая команда возвращает :class:`CommandResult`: код выхода, строки
человекочитаемого вывода (с цветом для вердиктов) и JSON-полезную
нагрузку для ``--json``. Печатью занимается ``main.py``.

Коды выхода: 0 при полученном результате, 1 при нарушении или отказе проверки.
Ошибки разбора и неверные аргументы поднимаются исключениями
:class:`TwoSideError`, их код (2) назначает CLI.
"""

from __future__ import annotations

import asyncio
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from src.application.context import Workspace, read_text
from src.application.use_cases.run_fuzz import run_fuzz
from src.config.config import AppConfig
from src.domain.entities.evaluation import OutOfFuel, StuckOutcome
from src.domain.entities.judgements import InferredJudgement, TypeEnvironment
from src.domain.entities.pcf import Typing
from src.domain.entities.verdicts import VerdictKind
from src.domain.errors import UsageError
from src.domain.interfaces.report_store import IReportStore
from src.domain.services.constraints import close, entails, is_consistent
from src.domain.services.evaluator import evaluate
from src.domain.services.inference import check_toplevel, infer_left, infer_right, validate_algorithmic
from src.domain.services.kernel import (
    check_one_sided,
    check_two_sided,
    prove_one_sided,
    success_oracle,
    translate_to_one_sided,
)
from src.domain.services.verdict import soundness_probe
from src.infrastructure.logging.logging_setup import log_stage
from src.infrastructure.parsing import (
    KernelSystem,
    judgement_to_json,
    kernel_from_json,
    kernel_to_json,
    loads,
    parse_binding,
    parse_constraints,
    parse_pcf_term,
    parse_pcf_type,
    parse_sequent,
    print_judgement,
    print_kernel_derivation,
    print_pcf_term,
    print_pcf_type,
    print_scheme,
    print_term,
)
from src.infrastructure.parsing.printer import print_constraint
from src.infrastructure.parsing.report_codec import (
    check_report_to_json,
    closure_report_to_json,
    definition_verdict_to_json,
    fuzz_report_to_json,
    outcome_to_json,
    verdict_to_json,
)

_LOG = __name__

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2

GREEN = "green"
RED = "red"
YELLOW = "yellow"

Line = Tuple[str, Optional[str]]


@dataclass(frozen=True)
class CommandResult:
    command: str
    exit_code: int
    lines: Tuple[Line, ...] = ()
    payload: Dict[str, Any] = field(default_factory=dict)


def _result(command: str, exit_code: int, lines: Iterable[Line], payload: Dict[str, Any]) -> CommandResult:
    return CommandResult(command, exit_code, tuple(lines), {"command": command, **payload})


def _plain(text: str) -> Line:
    return text, None


def _subject(workspace: Workspace, expr: str | None, name: str | None, fallback: str | None = None):
    if expr is not None and name is not None:
        raise UsageError("give either --expr or --term, not both")
    if expr is not None:
        return workspace.term(expr)
    if name is None:
        name = fallback
    if name is None:
        raise UsageError("an expression (--expr) or a definition name (--term) is required")
    return workspace.definition(name)


# ---------------------------------------------------------------- eval
def eval_command(
    workspace: Workspace,
    config: AppConfig,
    *,
    expr: str | None = None,
    name: str | None = None,
) -> CommandResult:
    """Вычислить выражение, определение ``--term`` или, по умолчанию, ``main``."""

    term = _subject(workspace, expr, name, fallback="main")
    outcome = evaluate(term, workspace.module, config.fuel)
    log_stage("EVAL", "Вычисление завершено", _LOG, outcome=outcome.kind, steps=outcome.steps)

    if isinstance(outcome, StuckOutcome):
        line = (f"stuck ({outcome.reason.value}) after {outcome.steps} steps: {print_term(outcome.term)}", RED)
    elif isinstance(outcome, OutOfFuel):
        line = (f"out of fuel after {outcome.steps} steps", YELLOW)
    else:
        line = (f"value after {outcome.steps} steps: {print_term(outcome.value)}", GREEN)
    payload = {"term": print_term(term), "fuel": config.fuel, "outcome": outcome_to_json(outcome)}
    return _result("eval", EXIT_OK, [line], payload)


# ---------------------------------------------------------------- infer
def _environment(workspace: Workspace, bindings: Sequence[str]) -> TypeEnvironment:
    env = workspace.env
    for text in bindings:
        name, ty = parse_binding(text)
        env = env.extend(name, ty)
    return env


def _judgement_entry(j: InferredJudgement, workspace: Workspace) -> Tuple[Dict[str, Any], bool]:
    consistent = is_consistent(j.constraints)
    report = validate_algorithmic(j.as_derivation(), workspace.signature)
    entry = {
        "judgement": judgement_to_json(j, with_derivation=True),
        "text": print_judgement(j),
        "consistent": consistent,
        "valid": report.ok,
    }
    if not report.ok:
        entry["reason"] = report.describe()
    return entry, report.ok


def infer_command(
    workspace: Workspace,
    config: AppConfig,
    *,
    expr: str | None = None,
    name: str | None = None,
    left: bool = False,
    delta: str | None = None,
    bindings: Sequence[str] = (),
) -> CommandResult:
    """Все главные суждения справа (или слева при ``left``).

    Каждое суждение перепроверяется :func:`validate_algorithmic`;
    отказ проверки даёт код 1.
    """

    if delta is not None and not left:
        raise UsageError("--delta only applies to left inference (--left)")
    term = _subject(workspace, expr, name)
    env = _environment(workspace, bindings)
    options = {"signature": workspace.signature, "product_cap": config.product_cap}
    if left:
        result = infer_left(env, term, None if delta is None else parse_binding(delta), **options)
    else:
        result = infer_right(env, term, **options)

    entries: List[Dict[str, Any]] = []
    lines: List[Line] = []
    all_valid = True
    for j in result:
        entry, valid = _judgement_entry(j, workspace)
        entries.append(entry)
        all_valid = all_valid and valid
        if not valid:
            lines.append((f"{entry['text']}  [invalid: {entry['reason']}]", RED))
        elif not entry["consistent"]:
            lines.append((f"{entry['text']}  [inconsistent]", YELLOW))
        else:
            lines.append(_plain(entry["text"]))
    if result.truncated:
        lines.append(("result truncated by the product cap", YELLOW))

    payload = {
        "term": print_term(term),
        "side": "left" if left else "right",
        "judgements": entries,
        "truncated": result.truncated,
    }
    return _result("infer", EXIT_OK if all_valid else EXIT_FAILURE, lines, payload)


# ---------------------------------------------------------------- verdict
_VERDICT_COLOURS = {
    VerdictKind.WELL_TYPED: GREEN,
    VerdictKind.ILL_TYPED: RED,
    VerdictKind.UNKNOWN: YELLOW,
}


def verdict_command(workspace: Workspace, config: AppConfig, *, expr: str) -> CommandResult:
    """Оба вердикта и фактическое вычисление; противоречие между ними: код 1."""

    term = workspace.term(expr)
    probe = soundness_probe(
        term,
        workspace.env,
        workspace.module,
        config.fuel,
        signature=workspace.signature,
        product_cap=config.product_cap,
    )
    kind = probe.verdict
    log_stage("VERDICT", "Вердикт получен", _LOG, verdict=kind.value, outcome=probe.outcome.kind)

    lines: List[Line] = [(kind.value, _VERDICT_COLOURS[kind])]
    winner = probe.ill if kind is VerdictKind.ILL_TYPED else probe.well
    if winner.witness is not None:
        lines.append(_plain(f"witness: {print_judgement(winner.witness)}"))
    lines.append(_plain(f"evaluation: {probe.outcome.kind} after {probe.outcome.steps} steps"))
    if probe.violation:
        lines.append(("soundness violation: verdict contradicts evaluation", RED))

    payload = {
        "term": print_term(term),
        "verdict": kind.value,
        "well_typed": verdict_to_json(probe.well),
        "ill_typed": verdict_to_json(probe.ill),
        "outcome": outcome_to_json(probe.outcome),
        "violation": probe.violation,
    }
    return _result("verdict", EXIT_FAILURE if probe.violation else EXIT_OK, lines, payload)


# ---------------------------------------------------------------- constraints
def constraints_command(path: str | Path, *, goals: Sequence[str] = ()) -> CommandResult:
    """Замыкание и совместность множества ``{...}`` из файла; ``goals``: запросы выводимости."""

    constraints = parse_constraints(read_text(path).strip())
    report = close(constraints)
    log_stage("CLOSE", "Замыкание построено", _LOG, given=len(constraints), closed=len(report.closed))

    payload = closure_report_to_json(report)
    lines: List[Line] = [_plain(text) for text in payload["closed"]]
    if report.consistent:
        lines.append(("consistent", GREEN))
    else:
        lines.append((f"inconsistent: {payload['witness']}", RED))

    answers = []
    for text in goals:
        for goal in sorted(parse_constraints(text), key=print_constraint):
            holds = entails(constraints, goal)
            answers.append({"goal": print_constraint(goal), "entailed": holds})
            lines.append((f"{print_constraint(goal)}: {'entailed' if holds else 'not entailed'}", GREEN if holds else YELLOW))
    payload = {**payload, "given": len(constraints), "goals": answers}
    return _result("constraints", EXIT_OK, lines, payload)


# ---------------------------------------------------------------- check
def check_command(workspace: Workspace, config: AppConfig) -> CommandResult:
    """Проверить каждую объявленную схему каждого определения модуля."""

    verdicts = check_toplevel(
        workspace.module,
        workspace.source.schemes,
        signature=workspace.signature,
        product_cap=config.product_cap,
    )
    lines: List[Line] = []
    for v in verdicts:
        header = f"{v.name} : {print_scheme(v.scheme)}"
        if v.accepted:
            lines.append((f"accepted  {header}", GREEN))
        else:
            lines.append((f"rejected  {header}: {v.reason}", RED))
    rejected = sum(1 for v in verdicts if not v.accepted)
    payload = {
        "module": workspace.source.origin,
        "definitions": [definition_verdict_to_json(v) for v in verdicts],
        "rejected": rejected,
    }
    return _result("check", EXIT_FAILURE if rejected else EXIT_OK, lines, payload)


# ---------------------------------------------------------------- fuzz
def fuzz_command(config: AppConfig, workspace: Workspace, store: IReportStore | None = None) -> CommandResult:
    report = asyncio.run(run_fuzz(config, store, workspace))
    payload = fuzz_report_to_json(report)
    lines: List[Line] = [
        _plain(f"probes: {report.count}, pcf probes: {len(report.pcf_probes)}"),
        *(_plain(f"  {k}: {v}") for k, v in payload["quadrants"].items()),
        *(_plain(f"  pcf {k}: {v}") for k, v in payload["pcf_quadrants"].items()),
    ]
    for p in payload["violations"]:
        lines.append((f"violation (seed {p['seed']}): {p['term']}", RED))
    for p in payload["pcf_violations"]:
        lines.append((f"pcf violation (seed {p['seed']}): {p['term']}", RED))
    lines.append(("no violations", GREEN) if report.ok else (f"{len(report.violations)} violations", RED))
    return _result("fuzz", EXIT_OK if report.ok else EXIT_FAILURE, lines, payload)


# ---------------------------------------------------------------- kernel
def kernel_check_command(path: str | Path, *, translate: bool = False) -> CommandResult:
    """Проверить вывод ядра; с ``translate`` ещё и перевести двусторонний вывод и проверить перевод."""

    document = kernel_from_json(loads(read_text(path)))
    two_sided = document.system is KernelSystem.TWO_SIDED
    if translate and not two_sided:
        raise UsageError("--translate expects a two-sided derivation")
    report = check_two_sided(document.root) if two_sided else check_one_sided(document.root)

    label = f"{document.system.value} derivation ({document.root.size} nodes)"
    lines: List[Line] = [(f"{label}: ok", GREEN) if report.ok else (f"{label}: {report.describe()}", RED)]
    payload: Dict[str, Any] = {"system": document.system.value, "check": check_report_to_json(report)}
    ok = report.ok

    if translate and report.ok:
        translated = translate_to_one_sided(document.root)
        translated_report = check_one_sided(translated)
        ok = translated_report.ok
        lines.append(_plain(print_kernel_derivation(translated)))
        lines.append(
            ("translation: ok", GREEN) if ok else (f"translation: {translated_report.describe()}", RED)
        )
        payload["translation"] = kernel_to_json(translated, KernelSystem.ONE_SIDED)
        payload["translation_check"] = check_report_to_json(translated_report)

    return _result("kernel check", EXIT_OK if ok else EXIT_FAILURE, lines, payload)


def _pcf_env(env: str | None) -> FrozenSet[Typing]:
    if not env:
        return frozenset()
    return parse_sequent(f"{env} |-", one_sided=True).left


def kernel_prove_command(
    config: AppConfig,
    *,
    expr: str,
    type_text: str,
    depth: int | None = None,
    env: str | None = None,
) -> CommandResult:
    """Поиск одностороннего вывода ограниченной высоты.

    С ``--json`` найденный вывод печатается в формате выводов ядра, так
    что его можно сразу отдать ``kernel check``. Не нашли: код 1.
    """

    term = parse_pcf_term(expr)
    ty = parse_pcf_type(type_text, one_sided=True)
    depth = config.depth if depth is None else depth
    found = prove_one_sided(_pcf_env(env), term, ty, depth)
    log_stage("PROVE", "Поиск завершён", _LOG, found=found is not None, depth=depth)

    goal = f"{print_pcf_term(term)} : {print_pcf_type(ty)}"
    if found is None:
        lines: List[Line] = [(f"no derivation of {goal} within depth {depth}", YELLOW)]
        payload: Dict[str, Any] = {"found": False, "goal": goal, "depth": depth}
        return _result("kernel prove", EXIT_FAILURE, lines, payload)

    lines = [(f"derivation of {goal} (height {found.height})", GREEN), _plain(print_kernel_derivation(found))]
    payload = {"found": True, "goal": goal, "depth": depth, **kernel_to_json(found, KernelSystem.ONE_SIDED)}
    return _result("kernel prove", EXIT_OK, lines, payload)


def kernel_oracle_command(config: AppConfig, *, expr: str, type_text: str) -> CommandResult:
    """Оракул успеха для типа без стрелок."""

    term = parse_pcf_term(expr)
    ty = parse_pcf_type(type_text)
    answer = success_oracle(term, ty, config.fuel)
    colour = {"in": GREEN, "out": RED}.get(answer.value, YELLOW)
    lines: List[Line] = [(f"{print_pcf_term(term)} : {print_pcf_type(ty)}  {answer.value}", colour)]
    payload = {"term": print_pcf_term(term), "type": print_pcf_type(ty), "fuel": config.fuel, "answer": answer.value}
    return _result("kernel oracle", EXIT_OK, lines, payload)


__all__ = [
    "EXIT_OK",
    "EXIT_FAILURE",
    "EXIT_USAGE",
    "CommandResult",
    "eval_command",
    "infer_command",
    "verdict_command",
    "constraints_command",
    "check_command",
    "fuzz_command",
    "kernel_check_command",
    "kernel_prove_command",
    "kernel_oracle_command",
]
