from __future__ import annotations

from pathlib import Path

import pytest

from src.application.context import Workspace, build_workspace

ROOT = Path(__file__).resolve().parents[1]
CORPUS = ROOT / "corpus"
PRELUDE = CORPUS / "prelude.2st"


@pytest.fixture
def prelude() -> Workspace:
    """Модуль с ``head`` и ``map`` и их объявленными схемами."""

    return build_workspace(PRELUDE.read_text(encoding="utf-8"), str(PRELUDE))
