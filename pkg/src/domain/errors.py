"""Иерархия исключений движка.

Все ошибки движка наследуются от :class:`TwoSideError`, чтобы CLI мог
отличать «ожидаемые» отказы (синтаксис, правильность программы) от
неожиданных падений.
"""

from __future__ import annotations


class TwoSideError(Exception):
    """Базовая ошибка движка."""


class SyntaxFault(TwoSideError):
    """Синтаксическая ошибка с позицией в исходном тексте."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None) -> None:
        self.line = line
        self.column = column
        where = f" (line {line}, column {column})" if line is not None else ""
        super().__init__(f"{message}{where}")


class WellFormednessError(TwoSideError):
    """Нарушение правильности: арность, ортогональность, дубликаты, замкнутость."""


class OpenTermError(TwoSideError):
    """Операция требует замкнутый терм, а получен открытый."""


class SchemeArityError(TwoSideError):
    """Число аргументов инстанцирования не совпадает с числом кванторов."""


class TranslationError(TwoSideError):
    """Нарушена гипотеза перевода двустороннего вывода в односторонний."""


class HigherOrderTypeError(TwoSideError):
    """Оракул успеха получил стрелочный тип."""


class InconsistentEnvironmentError(TwoSideError):
    """Окружение схем несовместно, вердикт не имеет смысла."""


class DerivationFormatError(TwoSideError):
    """Некорректный JSON вывода."""


class UsageError(TwoSideError):
    """Неверное сочетание аргументов команды."""


__all__ = [
    "TwoSideError",
    "SyntaxFault",
    "WellFormednessError",
    "OpenTermError",
    "SchemeArityError",
    "TranslationError",
    "HigherOrderTypeError",
    "InconsistentEnvironmentError",
    "DerivationFormatError",
    "UsageError",
]
