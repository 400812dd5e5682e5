"""Точка входа движка.

Вся логика команд находится в пакете :mod:`src`. Здесь оставлен только
тонкий фасад::

    python main.py verdict corpus/prelude.2st --expr "head (map (fun x -> x) [])"

см. :mod:`src.application.cli`.
"""

from __future__ import annotations

import sys

from src.application.cli import main


def _run_cli(argv: list[str]) -> None:
    """Выполнить команду и завершить процесс её кодом выхода."""

    from src.infrastructure.logging.logging_setup import log_stage

    try:
        code = main(argv[1:])
    except KeyboardInterrupt:
        log_stage("STOP", "Прерывание работы по Ctrl+C")
        sys.exit(1)
    except Exception as exc:
        log_stage(
            "ERROR",
            "Критическая ошибка в main()",
            error=str(exc),
            error_type=type(exc).__name__,
        )
        sys.exit(1)
    sys.exit(code)


if __name__ == "__main__":  # pragma: no cover - сценарий запуска
    _run_cli(sys.argv)
