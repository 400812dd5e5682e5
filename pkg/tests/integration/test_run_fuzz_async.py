"""Асинхронный сценарий фаззинга с сохранением отчёта."""

from __future__ import annotations

import pytest

from src.application.context import load_workspace
from src.application.use_cases.run_fuzz import report_key, run_fuzz, term_size
from src.config.config import AppConfig
from src.infrastructure.reports import FileReportStore
from tests.conftest import PRELUDE


def _config(**overrides) -> AppConfig:
    base = dict(count=8, size_min=3, size_max=10, pcf_count=4, depth=4, workers=3, fuzz_fuel=2_000)
    base.update(overrides)
    return AppConfig(**base)


@pytest.mark.integration
@pytest.mark.asyncio
async def test_run_fuzz_keeps_seed_order_and_saves_report(tmp_path) -> None:
    config = _config(seed=11)
    store = FileReportStore(tmp_path)

    report = await run_fuzz(config, store, load_workspace(PRELUDE))

    assert report.ok
    assert [p.seed for p in report.probes] == list(range(11, 19))
    assert [p.seed for p in report.pcf_probes] == list(range(11, 15))
    assert sum(report.quadrants.values()) == 8
    saved = store.load_report(report_key(config))
    assert saved is not None
    assert saved["ok"] is True
    assert saved["seed"] == 11
    assert report_key(config) == "fuzz-seed11-count8-pcf4"


@pytest.mark.integration
@pytest.mark.asyncio
async def test_run_fuzz_is_deterministic_across_worker_counts() -> None:
    """Отчёт не зависит от числа потоков."""

    one = await run_fuzz(_config(workers=1))
    many = await run_fuzz(_config(workers=4))

    assert one.quadrants == many.quadrants
    assert one.pcf_quadrants == many.pcf_quadrants


@pytest.mark.unit
def test_term_size_stays_in_range() -> None:
    config = _config(size_min=4, size_max=6)

    assert {term_size(seed, config) for seed in range(50)} <= {4, 5, 6}
