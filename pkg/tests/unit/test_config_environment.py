from __future__ import annotations

import pytest

from src.config import config as config_module
from src.config.config import AppConfig, load_config

_ENV_KEYS = [
    "APP_ENV",
    "TWOSIDE_FUEL",
    "TWOSIDE_SEED",
    "TWOSIDE_PRODUCT_CAP",
    "TWOSIDE_WORKERS",
    "TWOSIDE_LOG_LEVEL",
]


@pytest.fixture(autouse=True)
def _clean_env(monkeypatch) -> None:
    # Эмулируем отсутствие .env: локальный файл не должен подменять дефолты.
    for key in _ENV_KEYS:
        monkeypatch.delenv(key, raising=False)
    monkeypatch.setattr(config_module, "_ENV_LOADED", True)


@pytest.mark.unit
def test_load_config_defaults() -> None:
    """При отсутствии env используются значения по умолчанию."""

    cfg = load_config()

    assert cfg == AppConfig()
    assert cfg.environment == "local"
    assert cfg.fuel == 100_000
    assert cfg.fuzz_fuel == 10_000
    assert (cfg.seed, cfg.count, cfg.size_min, cfg.size_max) == (0, 100, 5, 40)
    assert cfg.pcf_count == 20
    assert cfg.depth == 8
    assert cfg.product_cap == 10_000
    assert cfg.report_dir == "storage/reports"


@pytest.mark.unit
def test_load_config_from_env(monkeypatch) -> None:
    """Env-переменные переопределяют дефолты."""

    monkeypatch.setenv("APP_ENV", "dev")
    monkeypatch.setenv("TWOSIDE_FUEL", "500")
    monkeypatch.setenv("TWOSIDE_SEED", "42")
    monkeypatch.setenv("TWOSIDE_PRODUCT_CAP", "64")
    monkeypatch.setenv("TWOSIDE_WORKERS", "2")
    monkeypatch.setenv("TWOSIDE_LOG_LEVEL", "debug")

    cfg = load_config()

    assert cfg.environment == "dev"
    assert cfg.fuel == 500
    assert cfg.seed == 42
    assert cfg.product_cap == 64
    assert cfg.workers == 2
    assert cfg.log_level == "DEBUG"


@pytest.mark.unit
def test_explicit_arguments_override_env(monkeypatch) -> None:
    """Явные аргументы load_config() сильнее env; ``None`` пропускается."""

    monkeypatch.setenv("TWOSIDE_FUEL", "500")
    monkeypatch.setenv("TWOSIDE_SEED", "9")

    cfg = load_config(fuel=3, seed=None)

    assert cfg.fuel == 3
    assert cfg.seed == 9


@pytest.mark.unit
def test_bad_int_in_env_raises(monkeypatch) -> None:
    monkeypatch.setenv("TWOSIDE_FUEL", "lots")

    with pytest.raises(ValueError, match="Invalid int value in env"):
        load_config()


@pytest.mark.unit
@pytest.mark.parametrize(
    ("overrides", "message"),
    [
        ({"fuel": -1}, "fuel must be >= 0"),
        ({"size_min": 10, "size_max": 5}, "size_max must be >= size_min"),
        ({"wrong_shape_ratio": 1.5}, "wrong_shape_ratio"),
        ({"depth": 0}, "depth must be >= 1"),
        ({"workers": 0}, "workers must be >= 1"),
    ],
)
def test_invalid_values_raise(overrides, message: str) -> None:
    with pytest.raises(ValueError, match=message):
        load_config(**overrides)


@pytest.mark.unit
def test_unknown_field_is_rejected() -> None:
    with pytest.raises(ValueError, match="unknown config field"):
        load_config(symbol="BTC/USDT")
