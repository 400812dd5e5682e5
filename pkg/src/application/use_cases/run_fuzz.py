"""Сценарий фаззинга: случайные термы против вердиктов и вычисления.

Для каждого зерна ``seed, seed + 1, ...`` строится терм языка с
конструкторами, по нему считаются оба вердикта и результат вычисления.
Затем так же прогоняются PCF-термы через односторонний поиск ``Ok^c``.

Пробы выполняются в пуле потоков (``asyncio.to_thread`` под семафором
на ``config.workers`` задач), но ``asyncio.gather`` возвращает их в
порядке зёрен, поэтому отчёт не зависит от расписания.
"""

from __future__ import annotations

import asyncio
import random
import time
from collections import Counter
from typing import Awaitable, Callable, Dict, List, TypeVar

from src.application.context import Workspace, load_workspace
from src.config.config import AppConfig
from src.domain.entities.verdicts import FuzzReport, PcfProbeReport, ProbeReport
from src.domain.interfaces.report_store import IReportStore
from src.domain.services.kernel import gen_pcf_term, pcf_soundness_probe
from src.domain.services.verdict import gen_term, soundness_probe
from src.infrastructure.logging.logging_setup import log_separator, log_stage, log_stat_block
from src.infrastructure.parsing.report_codec import fuzz_report_to_json

_LOG = __name__

T = TypeVar("T")


def report_key(config: AppConfig) -> str:
    return f"fuzz-seed{config.seed}-count{config.count}-pcf{config.pcf_count}"


def term_size(seed: int, config: AppConfig) -> int:
    """Размер терма для зерна: равномерно в ``[size_min, size_max]``."""

    return random.Random(seed).randint(config.size_min, config.size_max)


def _constructor_probe(seed: int, config: AppConfig, workspace: Workspace) -> ProbeReport:
    term = gen_term(
        term_size(seed, config),
        seed,
        workspace.module.names,
        signature=workspace.signature,
        wrong_shape_ratio=config.wrong_shape_ratio,
    )
    return soundness_probe(
        term,
        workspace.env,
        workspace.module,
        config.fuzz_fuel,
        seed=seed,
        signature=workspace.signature,
        product_cap=config.product_cap,
    )


def _pcf_probe(seed: int, config: AppConfig) -> PcfProbeReport:
    term = gen_pcf_term(term_size(seed, config), seed, wrong_shape_ratio=config.wrong_shape_ratio)
    return pcf_soundness_probe(term, config.depth, config.fuzz_fuel, seed=seed)


async def _bounded(limit: asyncio.Semaphore, job: Callable[[], T]) -> T:
    async with limit:
        return await asyncio.to_thread(job)


async def _run_all(jobs: List[Callable[[], T]], workers: int) -> List[T]:
    limit = asyncio.Semaphore(workers)
    tasks: List[Awaitable[T]] = [asyncio.create_task(_bounded(limit, job)) for job in jobs]
    return list(await asyncio.gather(*tasks))


def _quadrants(probes) -> Dict[str, int]:
    counts = Counter("/".join(p.quadrant) for p in probes)
    return dict(sorted(counts.items()))


async def run_fuzz(
    config: AppConfig,
    store: IReportStore | None = None,
    workspace: Workspace | None = None,
) -> FuzzReport:
    """Прогнать ``config.count`` проб языка с конструкторами и ``config.pcf_count`` PCF-проб.

    Если передан ``store``, отчёт сохраняется под ключом :func:`report_key`.
    """

    if workspace is None:
        workspace = load_workspace(None)

    started = time.perf_counter()
    log_separator(_LOG)
    log_stage(
        "FUZZ",
        "Старт фаззинга",
        _LOG,
        seed=config.seed,
        count=config.count,
        pcf_count=config.pcf_count,
        workers=config.workers,
        fuel=config.fuzz_fuel,
    )

    seeds = range(config.seed, config.seed + config.count)
    probes = await _run_all(
        [lambda s=s: _constructor_probe(s, config, workspace) for s in seeds],
        config.workers,
    )
    pcf_seeds = range(config.seed, config.seed + config.pcf_count)
    pcf_probes = await _run_all(
        [lambda s=s: _pcf_probe(s, config) for s in pcf_seeds],
        config.workers,
    )

    report = FuzzReport(
        seed=config.seed,
        count=config.count,
        size_min=config.size_min,
        size_max=config.size_max,
        fuel=config.fuzz_fuel,
        probes=tuple(probes),
        quadrants=_quadrants(probes),
        pcf_probes=tuple(pcf_probes),
        pcf_quadrants=_quadrants(pcf_probes),
    )

    elapsed = time.perf_counter() - started
    log_stat_block(
        "Итоги фаззинга",
        [
            f"Пробы: {len(probes)} + PCF {len(pcf_probes)}",
            *(f"{k}: {v}" for k, v in report.quadrants.items()),
            *(f"PCF {k}: {v}" for k, v in report.pcf_quadrants.items()),
            f"Нарушения: {len(report.violations)}",
            f"Время: {elapsed:.2f}s",
        ],
        _LOG,
    )
    if not report.ok:
        log_stage("WARN", "Найдены нарушения корректности", _LOG, violations=len(report.violations))

    if store is not None:
        store.save_report(report_key(config), fuzz_report_to_json(report))
    return report


__all__ = ["report_key", "term_size", "run_fuzz"]
