from __future__ import annotations

import pytest

from main import _run_cli
from tests.conftest import PRELUDE


@pytest.mark.unit
def test_run_cli_exits_with_command_code(tmp_path) -> None:
    argv = ["python", "eval", str(PRELUDE), "--expr", "map (fun x -> x) []", "--log-file", str(tmp_path / "t.log")]

    with pytest.raises(SystemExit) as info:
        _run_cli(argv)

    assert info.value.code == 0


@pytest.mark.unit
@pytest.mark.parametrize("argv", [["python"], ["python", "nonsense"], ["python", "eval", "--fuel", "many"]])
def test_run_cli_bad_arguments_exit_with_usage_code(argv) -> None:
    with pytest.raises(SystemExit) as info:
        _run_cli(argv)

    assert info.value.code == 2
