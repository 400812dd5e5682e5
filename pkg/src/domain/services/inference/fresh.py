"""Источник свежих переменных типа для одного запуска вывода."""

from __future__ import annotations

from typing import Iterable, Set

from src.domain.entities.types import TVar


class FreshSupply:
    """Детерминированный счётчик ``prefix1, prefix2, ...``.

    Имена из ``avoid`` (переменные входных Γ и Δ, кванторы схем)
    пропускаются, поэтому свежая переменная никогда не совпадает со
    свободной переменной входа.
    """

    def __init__(self, prefix: str = "a", counter: int = 0, avoid: Iterable[str] = ()) -> None:
        self.prefix = prefix
        self.counter = counter
        self._avoid: Set[str] = set(avoid)

    def reserve(self, names: Iterable[str]) -> None:
        self._avoid.update(names)

    def fresh(self) -> TVar:
        while True:
            self.counter += 1
            name = f"{self.prefix}{self.counter}"
            if name not in self._avoid:
                return TVar(name)

    def fresh_many(self, n: int) -> tuple[TVar, ...]:
        return tuple(self.fresh() for _ in range(n))


__all__ = ["FreshSupply"]
