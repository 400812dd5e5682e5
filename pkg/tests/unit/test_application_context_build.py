"""Тесты сборки рабочего окружения (Workspace).

Проверяем, что:
* модуль ``.2st`` превращается в окружение схем и определения;
* выражения разбираются с именами определений как идентификаторами;
* без файла получается пустой модуль, а нечитаемый файл даёт UsageError.
"""

from __future__ import annotations

import pytest

from src.application.context import build_workspace, load_workspace
from src.domain.entities.terms import App, TopId
from src.domain.errors import UsageError
from tests.conftest import PRELUDE


@pytest.mark.unit
def test_load_workspace_from_prelude() -> None:
    workspace = load_workspace(PRELUDE)

    assert workspace.module.names == ("head", "map")
    assert len(workspace.env.schemes_for("map")) == 2
    assert workspace.env.identifiers == frozenset({"head", "map"})


@pytest.mark.unit
def test_expressions_see_top_level_names(prelude) -> None:
    term = prelude.term("head []")

    assert isinstance(term, App)
    assert term.fn == TopId("head")


@pytest.mark.unit
def test_definition_lookup(prelude) -> None:
    assert prelude.definition("head") == prelude.module.lookup("head")
    with pytest.raises(UsageError):
        prelude.definition("tail")


@pytest.mark.unit
def test_no_file_gives_empty_workspace() -> None:
    workspace = load_workspace(None)

    assert workspace.module.names == ()
    assert workspace.env.identifiers == frozenset()


@pytest.mark.unit
def test_missing_file_is_a_usage_error(tmp_path) -> None:
    with pytest.raises(UsageError):
        load_workspace(tmp_path / "nowhere.2st")


@pytest.mark.unit
def test_build_workspace_from_text() -> None:
    workspace = build_workspace("one : Zero + Succ(Zero); one = Succ(Zero);")

    assert workspace.module.names == ("one",)
    assert workspace.env.schemes_for("one")
