"""Замыкание множества ограничений и синтаксическая совместность.

Замыкание: наименьшая неподвижная точка по четырём условиям:
транзитивность; разложение сумм по общим конструкторам; разложение
``→`` (контравариантно слева); разложение ``⤙`` (контравариантно
справа). Новые ограничения всегда связывают уже встречающиеся
подтермы, поэтому процесс конечен.
"""

from __future__ import annotations

from collections import deque
from typing import Deque, Dict, FrozenSet, Iterable, List, Optional, Set

from src.domain.entities.reports import ClosureReport
from src.domain.entities.types import (
    Constraint,
    NecArrow,
    OkType,
    Sum,
    ToArrow,
    TVar,
    Type,
)


def constraint_order(k: Constraint) -> str:
    """Ключ канонического порядка ограничений."""

    return repr(k)


def sorted_constraints(constraints: Iterable[Constraint]) -> List[Constraint]:
    return sorted(constraints, key=constraint_order)


def _decompose(k: Constraint) -> Iterable[Constraint]:
    a, b = k.lhs, k.rhs
    if isinstance(a, Sum) and isinstance(b, Sum):
        for name, args in a.summands:
            other = b.args_of(name)
            if other is not None and len(other) == len(args):
                for x, y in zip(args, other):
                    yield Constraint(x, y)
    elif isinstance(a, ToArrow) and isinstance(b, ToArrow):
        yield Constraint(b.dom, a.dom)
        yield Constraint(a.cod, b.cod)
    elif isinstance(a, NecArrow) and isinstance(b, NecArrow):
        yield Constraint(a.dom, b.dom)
        yield Constraint(b.cod, a.cod)


_NONE: FrozenSet[Type] = frozenset()


class ClosureState:
    """Замкнутое множество ограничений, которое расширяется без пересчёта.

    :meth:`extend` возвращает новое состояние и не трогает текущее, поэтому
    одно состояние можно расширять по разным ветвям перебора. С
    ``fail_fast`` расширение останавливается на первом несовместном
    ограничении; такое состояние дальше не расширяется.
    """

    __slots__ = ("closed", "_uppers", "_lowers", "witness")

    def __init__(
        self,
        closed: FrozenSet[Constraint] = frozenset(),
        uppers: Optional[Dict[Type, FrozenSet[Type]]] = None,
        lowers: Optional[Dict[Type, FrozenSet[Type]]] = None,
        witness: Optional[Constraint] = None,
    ) -> None:
        self.closed = closed
        self._uppers: Dict[Type, FrozenSet[Type]] = uppers or {}
        self._lowers: Dict[Type, FrozenSet[Type]] = lowers or {}
        self.witness = witness

    @property
    def consistent(self) -> bool:
        return self.witness is None

    def extend(self, constraints: Iterable[Constraint], fail_fast: bool = False) -> "ClosureState":
        if fail_fast and self.witness is not None:
            return self
        fresh = [k for k in sorted_constraints(constraints) if k not in self.closed]
        if not fresh:
            return self

        closed: Set[Constraint] = set(self.closed)
        uppers = dict(self._uppers)
        lowers = dict(self._lowers)
        witness = self.witness
        work: Deque[Constraint] = deque()

        def add(k: Constraint) -> bool:
            nonlocal witness
            if k in closed:
                return True
            closed.add(k)
            uppers[k.lhs] = uppers.get(k.lhs, _NONE) | {k.rhs}
            lowers[k.rhs] = lowers.get(k.rhs, _NONE) | {k.lhs}
            work.append(k)
            if witness is None and not is_syntactically_consistent(k):
                witness = k
                return not fail_fast
            return True

        for k in fresh:
            if not add(k):
                return ClosureState(frozenset(closed), uppers, lowers, witness)
        while work:
            k = work.popleft()
            for low in lowers.get(k.lhs, _NONE):
                if not add(Constraint(low, k.rhs)):
                    return ClosureState(frozenset(closed), uppers, lowers, witness)
            for up in uppers.get(k.rhs, _NONE):
                if not add(Constraint(k.lhs, up)):
                    return ClosureState(frozenset(closed), uppers, lowers, witness)
            for part in _decompose(k):
                if not add(part):
                    return ClosureState(frozenset(closed), uppers, lowers, witness)
        return ClosureState(frozenset(closed), uppers, lowers, witness)


def closure_set(constraints: Iterable[Constraint]) -> FrozenSet[Constraint]:
    return ClosureState().extend(constraints).closed


def is_syntactically_consistent(k: Constraint) -> bool:
    a, b = k.lhs, k.rhs
    if isinstance(a, TVar) or isinstance(b, TVar):
        return True
    if isinstance(b, OkType):
        return True
    if isinstance(a, ToArrow) and isinstance(b, ToArrow):
        return True
    if isinstance(a, NecArrow) and isinstance(b, NecArrow):
        return True
    if isinstance(a, Sum) and isinstance(b, Sum):
        return a.heads <= b.heads
    return False


def close(constraints: Iterable[Constraint]) -> ClosureReport:
    closed = closure_set(constraints)
    for k in sorted_constraints(closed):
        if not is_syntactically_consistent(k):
            return ClosureReport(closed, False, k)
    return ClosureReport(closed, True, None)


def is_consistent(constraints: Iterable[Constraint]) -> bool:
    """Замыкание обрывается на первом несовместном ограничении; свидетель даёт :func:`close`."""

    return ClosureState().extend(constraints, fail_fast=True).consistent


__all__ = [
    "constraint_order",
    "sorted_constraints",
    "ClosureState",
    "closure_set",
    "is_syntactically_consistent",
    "close",
    "is_consistent",
]
