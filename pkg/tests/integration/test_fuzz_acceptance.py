"""Полный прогон фаззера: ни одного нарушения, каждый свидетель перепроверен."""

from __future__ import annotations

import pytest

from src.application.context import load_workspace
from src.application.use_cases.run_fuzz import run_fuzz
from src.config.config import AppConfig
from src.domain.services.inference import validate_algorithmic
from tests.conftest import PRELUDE


@pytest.mark.slow
@pytest.mark.integration
@pytest.mark.asyncio
async def test_full_fuzz_run_has_no_violations() -> None:
    config = AppConfig(
        seed=0,
        count=10_000,
        size_min=5,
        size_max=40,
        fuzz_fuel=10_000,
        pcf_count=2_000,
        depth=8,
    )
    workspace = load_workspace(PRELUDE)

    report = await run_fuzz(config, None, workspace)

    assert len(report.probes) == 10_000
    assert len(report.pcf_probes) == 2_000
    assert report.violations == ()
    for sample in report.probes:
        for verdict in (sample.well, sample.ill):
            if verdict.witness is None or verdict.witness.derivation is None:
                continue
            check = validate_algorithmic(verdict.witness.as_derivation(), workspace.signature)
            assert check.ok, f"seed {sample.seed}: {check.describe()}"
