"""Сборка рабочего окружения команды из файла ``.2st``.

Workspace: это всё, что нужно командам CLI поверх разобранного модуля:
сигнатура конструкторов, определения верхнего уровня и окружение схем Γ.
Без файла получаем пустой модуль со встроенной сигнатурой.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from src.domain.entities.judgements import TypeEnvironment
from src.domain.entities.terms import DEFAULT_SIGNATURE, CtorSignature, Term, TopModule
from src.domain.errors import UsageError
from src.infrastructure.logging.logging_setup import log_stage
from src.infrastructure.parsing import SourceModule, parse_module, parse_term

_LOG = __name__


@dataclass(frozen=True)
class Workspace:
    source: SourceModule
    env: TypeEnvironment

    @property
    def module(self) -> TopModule:
        return self.source.module

    @property
    def signature(self) -> CtorSignature:
        return self.source.signature

    def term(self, text: str) -> Term:
        """Разобрать выражение в контексте модуля: имена определений становятся идентификаторами."""

        return parse_term(text, self.module.names, self.signature)

    def definition(self, name: str) -> Term:
        body = self.module.lookup(name)
        if body is None:
            raise UsageError(f"no definition named {name!r} in {self.source.origin}")
        return body


def build_workspace(text: str, origin: str = "<string>") -> Workspace:
    source = parse_module(text, origin)
    env = TypeEnvironment.from_schemes(source.schemes)
    log_stage(
        "LOAD",
        "Рабочее окружение собрано",
        _LOG,
        origin=origin,
        definitions=len(source.module.definitions),
        identifiers=len(env.identifiers),
    )
    return Workspace(source, env)


def read_text(path: str | Path) -> str:
    file_path = Path(path)
    try:
        return file_path.read_text(encoding="utf-8")
    except OSError as exc:
        log_stage("ERROR", "Не удалось прочитать файл", _LOG, path=str(file_path), error=str(exc))
        raise UsageError(f"cannot read {file_path}: {exc.strerror or exc}") from None


def load_workspace(path: str | Path | None) -> Workspace:
    """Прочитать модуль с диска; ``None``: пустой модуль."""

    if path is None:
        empty = SourceModule("<empty>", DEFAULT_SIGNATURE, TopModule(()), {})
        return Workspace(empty, TypeEnvironment())
    return build_workspace(read_text(path), str(path))


__all__ = ["Workspace", "build_workspace", "read_text", "load_workspace"]
