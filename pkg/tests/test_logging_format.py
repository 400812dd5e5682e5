from __future__ import annotations

"""Тесты базового формата логов движка.

Проверяем две вещи:

* ``setup_logging`` настраивает корневой логгер так, что сообщения
  попадают в файл с нужным форматированием времени;
* ``log_stage`` пишет сообщение с emoji стадии и полями через ``|``,
  а строка начинается с timestamp ``YYYY-MM-DD HH:MM:SS,mmm - root - INFO -``.
"""

import logging
from pathlib import Path

import pytest

from src.infrastructure.logging.logging_setup import log_stage, setup_logging


@pytest.mark.unit
def test_log_stage_format_includes_milliseconds(tmp_path: Path) -> None:
    """log_stage пишет строку в файл с миллисекундами и нужным префиксом."""

    log_file = tmp_path / "twoside.log"

    setup_logging(str(log_file))
    log_stage("INFER", "Тестовое сообщение", judgements=4)
    logging.shutdown()

    content = log_file.read_text(encoding="utf-8").strip().splitlines()
    assert content, "Ожидали хотя бы одну строку логов"

    line = content[0]
    assert " - root - INFO - " in line
    prefix, msg = line.split(" - root - INFO - ", 1)

    # ``YYYY-MM-DD HH:MM:SS,mmm``: всегда 23 символа.
    assert len(prefix) == 23
    date_part, time_part = prefix.split(" ")
    assert date_part.count("-") == 2
    hhmmss, msec = time_part.split(",")
    assert hhmmss.count(":") == 2
    assert len(msec) == 3
    assert msg.endswith("Тестовое сообщение | judgements: 4")


@pytest.mark.unit
def test_warn_stage_is_logged_as_warning(tmp_path: Path) -> None:
    log_file = tmp_path / "twoside.log"

    setup_logging(str(log_file))
    log_stage("WARN", "Нарушение корректности", seed=7)
    logging.shutdown()

    line = log_file.read_text(encoding="utf-8").strip().splitlines()[0]
    assert " - root - WARNING - " in line
    assert "seed: 7" in line
