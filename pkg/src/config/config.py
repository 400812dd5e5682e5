"""Загрузка и валидация настроек движка.

AppConfig собирает всё, что влияет на результат запуска:

* fuel / fuzz_fuel – топливо вычислителя для одиночных команд и фаззера;
* seed, count, size_min, size_max – параметры генератора термов;
* pcf_count – сколько PCF-термов фаззер прогоняет через односторонний поиск;
* depth – глубина поиска одностороннего вывода;
* product_cap – предел декартова произведения ветвей сопоставления;
* workers – размер пула потоков фаззера;
* report_dir – каталог JSON-отчётов.

Важно: только этот модуль читает os.getenv; дальше по коду передаём уже
готовый объект :class:`AppConfig`.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, fields, replace
from pathlib import Path
from typing import Any

from dotenv import load_dotenv

from src.infrastructure.logging.logging_setup import log_stage


@dataclass
class AppConfig:
    """Настройки одного запуска.

    Одинаковый конфиг даёт побайтно одинаковый вывод: всё случайное
    выводится из ``seed``.
    """

    environment: str = "local"

    # Вычисление
    fuel: int = 100_000
    fuzz_fuel: int = 10_000

    # Фаззер
    seed: int = 0
    count: int = 100
    size_min: int = 5
    size_max: int = 40
    wrong_shape_ratio: float = 0.3
    pcf_count: int = 20
    workers: int = 4

    # Вывод и поиск
    depth: int = 8
    product_cap: int = 10_000

    # Журнал и отчёты
    log_level: str = "INFO"
    log_file: str | None = None
    report_dir: str = "storage/reports"

    def validate(self) -> None:
        """Проверить инварианты; при нарушении: ValueError (fail-fast)."""

        if self.fuel < 0:
            raise ValueError("fuel must be >= 0")

        if self.fuzz_fuel < 1:
            raise ValueError("fuzz_fuel must be >= 1")

        if self.count < 0:
            raise ValueError("count must be >= 0")

        if self.pcf_count < 0:
            raise ValueError("pcf_count must be >= 0")

        if self.size_min < 1:
            raise ValueError("size_min must be >= 1")

        if self.size_max < self.size_min:
            raise ValueError("size_max must be >= size_min")

        if not 0.0 <= self.wrong_shape_ratio <= 1.0:
            raise ValueError("wrong_shape_ratio must be within [0, 1]")

        if self.workers < 1:
            raise ValueError("workers must be >= 1")

        if self.depth < 1:
            raise ValueError("depth must be >= 1")

        if self.product_cap < 1:
            raise ValueError("product_cap must be >= 1")


def _parse_int(value: str | None, default: int) -> int:
    if value is None or value == "":
        return default
    try:
        return int(value)
    except ValueError:
        log_stage("ERROR", "Некорректное целочисленное значение в env", value=value)
        raise ValueError(f"Invalid int value in env: {value!r}") from None


_ENV_LOADED = False


def _load_local_env_file() -> None:
    """Подгрузить корневой ``.env`` один раз за процесс, не затирая env."""

    global _ENV_LOADED
    if _ENV_LOADED:
        return
    _ENV_LOADED = True

    # ``src/config/config.py`` -> корень проекта
    env_path = Path(__file__).resolve().parents[2] / ".env"
    if env_path.is_file():
        load_dotenv(env_path, override=False)


# переменная окружения -> поле AppConfig
_INT_ENV = {
    "TWOSIDE_FUEL": "fuel",
    "TWOSIDE_SEED": "seed",
    "TWOSIDE_PRODUCT_CAP": "product_cap",
    "TWOSIDE_WORKERS": "workers",
}


def load_config(**overrides: Any) -> AppConfig:
    """Собрать AppConfig: значения по умолчанию, затем env, затем аргументы.

    Аргументы со значением ``None`` пропускаются, поэтому CLI может
    передавать все флаги подряд. Неизвестное имя: ValueError.
    """

    _load_local_env_file()

    base = AppConfig()

    env_environment = os.getenv("APP_ENV")
    if env_environment:
        base.environment = env_environment

    for var, name in _INT_ENV.items():
        setattr(base, name, _parse_int(os.getenv(var), getattr(base, name)))

    env_level = os.getenv("TWOSIDE_LOG_LEVEL")
    if env_level:
        base.log_level = env_level.upper()

    known = {f.name for f in fields(AppConfig)}
    unknown = sorted(set(overrides) - known)
    if unknown:
        raise ValueError(f"unknown config field(s): {unknown}")
    base = replace(base, **{k: v for k, v in overrides.items() if v is not None})

    base.validate()
    return base


__all__ = ["AppConfig", "load_config"]
