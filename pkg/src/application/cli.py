"""Командная строка движка.

::

    python main.py eval FILE [--expr TEXT | --term NAME] [--fuel N]
    python main.py infer FILE (--expr TEXT | --term NAME) [--left [--delta "x : T"]] [--bind "f : T"]...
    python main.py verdict FILE --expr TEXT
    python main.py constraints FILE [--entails "{a <= b}"]...
    python main.py check FILE
    python main.py fuzz [--module FILE] [--count N] [--seed S] [--size K] [--pcf-count N]
    python main.py kernel check DERIV.json [--translate]
    python main.py kernel prove --expr TEXT --type TEXT [--depth D] [--env "x : Nat"]
    python main.py kernel oracle --expr TEXT --type TEXT

``--json`` у любой команды печатает канонический JSON вместо текста.
Коды выхода: 0 при полученном результате, 1 при нарушении или отказ проверки,
2 при ошибке разбора или неверных аргументах.
"""

from __future__ import annotations

import argparse
import logging
import sys
from typing import Callable, Dict, List, Sequence

from termcolor import colored

from src.application.context import load_workspace
from src.application.use_cases.commands import (
    EXIT_FAILURE,
    EXIT_USAGE,
    CommandResult,
    check_command,
    constraints_command,
    eval_command,
    fuzz_command,
    infer_command,
    kernel_check_command,
    kernel_oracle_command,
    kernel_prove_command,
    verdict_command,
)
from src.config.config import AppConfig, load_config
from src.domain.errors import TranslationError, TwoSideError
from src.infrastructure.logging.logging_setup import DEFAULT_LOG_FILE, log_stage, setup_logging
from src.infrastructure.parsing import dumps
from src.infrastructure.reports import FileReportStore

_LOG = __name__


def _common() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="print canonical JSON instead of text")
    common.add_argument("--fuel", type=int, help="evaluation fuel (env TWOSIDE_FUEL)")
    common.add_argument("--product-cap", type=int, dest="product_cap", help="cap on match branch products")
    common.add_argument("--log-level", dest="log_level", help="DEBUG, INFO, WARNING or ERROR")
    common.add_argument("--log-file", dest="log_file", help=f"log file (default {DEFAULT_LOG_FILE})")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="twoside", description="Two-sided type inference engine")
    commands = parser.add_subparsers(dest="command", required=True)

    p = commands.add_parser("eval", parents=[common], help="evaluate a term")
    p.add_argument("file")
    p.add_argument("--expr")
    p.add_argument("--term", dest="name")

    p = commands.add_parser("infer", parents=[common], help="infer principal judgements")
    p.add_argument("file")
    p.add_argument("--expr")
    p.add_argument("--term", dest="name")
    p.add_argument("--left", action="store_true", help="infer on the left")
    p.add_argument("--delta", help='right-hand typing for --left, e.g. "y : a"')
    p.add_argument("--bind", action="append", default=[], help='local binding, e.g. "f : [] ~> Ok"')

    p = commands.add_parser("verdict", parents=[common], help="well-typed / ill-typed verdicts")
    p.add_argument("file")
    p.add_argument("--expr", required=True)

    p = commands.add_parser("constraints", parents=[common], help="close a constraint set")
    p.add_argument("file")
    p.add_argument("--entails", action="append", default=[], help="constraint set to test for entailment")

    p = commands.add_parser("check", parents=[common], help="check declared top-level schemes")
    p.add_argument("file")

    p = commands.add_parser("fuzz", parents=[common], help="randomized soundness probes")
    p.add_argument("--module", help="module whose definitions the generator may use")
    p.add_argument("--count", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--size", type=int, help="largest term size")
    p.add_argument("--pcf-count", type=int, dest="pcf_count")
    p.add_argument("--depth", type=int, help="one-sided search depth for PCF probes")
    p.add_argument("--workers", type=int)
    p.add_argument("--report-dir", dest="report_dir")
    p.add_argument("--no-save", action="store_true", dest="no_save", help="do not persist the report")

    kernel = commands.add_parser("kernel", help="PCF proof kernel")
    kernel_commands = kernel.add_subparsers(dest="kernel_command", required=True)

    p = kernel_commands.add_parser("check", parents=[common], help="check a derivation JSON file")
    p.add_argument("file")
    p.add_argument("--translate", action="store_true", help="also translate a two-sided derivation")

    p = kernel_commands.add_parser("prove", parents=[common], help="search for a one-sided derivation")
    p.add_argument("--expr", required=True)
    p.add_argument("--type", required=True, dest="type_text")
    p.add_argument("--depth", type=int)
    p.add_argument("--env", help='variable typings, e.g. "x : Nat, y : Ok"')

    p = kernel_commands.add_parser("oracle", parents=[common], help="success oracle for first-order types")
    p.add_argument("--expr", required=True)
    p.add_argument("--type", required=True, dest="type_text")

    return parser


def _config(args: argparse.Namespace) -> AppConfig:
    overrides = {
        name: getattr(args, name, None)
        for name in ("fuel", "product_cap", "log_level", "log_file", "count", "seed", "pcf_count", "depth", "workers", "report_dir")
    }
    size = getattr(args, "size", None)
    if size is not None:
        overrides["size_max"] = size
        overrides["size_min"] = min(size, AppConfig.size_min)
    if overrides["log_level"] is not None:
        overrides["log_level"] = overrides["log_level"].upper()
    return load_config(**overrides)


def _dispatch(args: argparse.Namespace, config: AppConfig) -> CommandResult:
    command = args.command
    if command == "kernel":
        kernel: Dict[str, Callable[[], CommandResult]] = {
            "check": lambda: kernel_check_command(args.file, translate=args.translate),
            "prove": lambda: kernel_prove_command(
                config, expr=args.expr, type_text=args.type_text, depth=args.depth, env=args.env
            ),
            "oracle": lambda: kernel_oracle_command(config, expr=args.expr, type_text=args.type_text),
        }
        return kernel[args.kernel_command]()
    if command == "constraints":
        return constraints_command(args.file, goals=args.entails)
    if command == "fuzz":
        store = None if args.no_save else FileReportStore(config.report_dir)
        return fuzz_command(config, load_workspace(args.module), store)

    workspace = load_workspace(args.file)
    if command == "eval":
        return eval_command(workspace, config, expr=args.expr, name=args.name)
    if command == "infer":
        return infer_command(
            workspace,
            config,
            expr=args.expr,
            name=args.name,
            left=args.left,
            delta=args.delta,
            bindings=args.bind,
        )
    if command == "verdict":
        return verdict_command(workspace, config, expr=args.expr)
    return check_command(workspace, config)


def render(result: CommandResult, as_json: bool, colour: bool) -> str:
    if as_json:
        return dumps(result.payload)
    lines: List[str] = []
    for text, tint in result.lines:
        lines.append(colored(text, tint) if colour and tint else text)
    return "\n".join(lines) + "\n" if lines else ""


def main(argv: Sequence[str] | None = None) -> int:
    """Разобрать аргументы, выполнить команду, вернуть код выхода."""

    args = build_parser().parse_args(argv)
    try:
        config = _config(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    setup_logging(config.log_file or DEFAULT_LOG_FILE, getattr(logging, config.log_level, logging.INFO))
    log_stage("BOOT", "Запуск команды", _LOG, command=args.command, environment=config.environment)

    try:
        result = _dispatch(args, config)
    except TranslationError as exc:
        log_stage("ERROR", "Перевод вывода невозможен", _LOG, error=str(exc))
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAILURE
    except (TwoSideError, ValueError) as exc:
        log_stage("ERROR", "Команда отклонена", _LOG, error=str(exc), error_type=type(exc).__name__)
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    sys.stdout.write(render(result, args.json, colour=sys.stdout.isatty()))
    log_stage("STOP", "Команда завершена", _LOG, command=result.command, exit_code=result.exit_code)
    return result.exit_code


__all__ = ["build_parser", "render", "main"]
