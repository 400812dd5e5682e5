from __future__ import annotations

import pytest

from src.infrastructure.reports import FileReportStore


@pytest.mark.unit
def test_file_report_store_save_and_load(tmp_path) -> None:
    store = FileReportStore(base_dir=tmp_path)
    report = {"ok": True, "seed": 0, "count": 3, "quadrants": {"ill-typed/stuck": 2}}

    key = "fuzz-seed0-count3-pcf0"
    path = store.save_report(key, report)

    assert path == tmp_path / "fuzz-seed0-count3-pcf0.json"
    assert store.load_report(key) == report
    assert not path.with_suffix(".json.tmp").exists()


@pytest.mark.unit
def test_saved_report_is_canonical_json(tmp_path) -> None:
    store = FileReportStore(base_dir=tmp_path)

    path = store.save_report("r", {"b": 1, "a": 2})

    assert path.read_text(encoding="utf-8") == '{\n  "a": 2,\n  "b": 1\n}\n'


@pytest.mark.unit
def test_key_is_turned_into_safe_filename(tmp_path) -> None:
    store = FileReportStore(base_dir=tmp_path)

    assert store.path_for("local:runs/first run").name == "local_runs__first_run.json"


@pytest.mark.unit
def test_missing_or_broken_report_loads_as_none(tmp_path) -> None:
    store = FileReportStore(base_dir=tmp_path)
    store.path_for("broken").write_text("[1, 2", encoding="utf-8")
    store.path_for("list").write_text("[1, 2]", encoding="utf-8")

    assert store.load_report("missing") is None
    assert store.load_report("broken") is None
    assert store.load_report("list") is None
