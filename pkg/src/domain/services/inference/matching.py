"""Сопоставление типов и суждений по подстановке.

Используется для отсечения поглощённых суждений, для слияния суждений,
равных с точностью до переименования, и при проверке верхнего уровня.
"""

from __future__ import annotations

from typing import Dict, FrozenSet, List, Optional, Sequence

from src.domain.entities.types import (
    Constraint,
    NecArrow,
    OkType,
    Sum,
    ToArrow,
    TVar,
    Type,
)

Binding = Dict[str, Type]

SEARCH_BUDGET = 5_000


def match_type(
    pattern: Type,
    target: Type,
    rho: Binding,
    protected: FrozenSet[str],
    renaming: bool = False,
) -> Optional[Binding]:
    """Расширить ``rho`` так, чтобы ``rho(pattern) == target``.

    Переменные из ``protected`` сопоставляются только сами с собой. При
    ``renaming`` образы переменных обязаны быть различными переменными.
    """

    if isinstance(pattern, TVar) and pattern.name not in protected:
        bound = rho.get(pattern.name)
        if bound is not None:
            return rho if bound == target else None
        if renaming:
            if not isinstance(target, TVar) or target.name in protected:
                return None
            if target in rho.values():
                return None
        out = dict(rho)
        out[pattern.name] = target
        return out
    if isinstance(pattern, TVar):
        return rho if pattern == target else None
    if isinstance(pattern, OkType):
        return rho if isinstance(target, OkType) else None
    if isinstance(pattern, Sum):
        if not isinstance(target, Sum) or pattern.heads != target.heads:
            return None
        current: Optional[Binding] = rho
        for name, args in pattern.summands:
            other = target.args_of(name)
            if other is None or len(other) != len(args):
                return None
            for x, y in zip(args, other):
                current = match_type(x, y, current, protected, renaming)
                if current is None:
                    return None
        return current
    if type(pattern) is not type(target):
        return None
    assert isinstance(pattern, (ToArrow, NecArrow))
    step = match_type(pattern.dom, target.dom, rho, protected, renaming)  # type: ignore[union-attr]
    if step is None:
        return None
    return match_type(pattern.cod, target.cod, step, protected, renaming)  # type: ignore[union-attr]


def match_constraints(
    source: Sequence[Constraint],
    target: FrozenSet[Constraint],
    rho: Binding,
    protected: FrozenSet[str],
    renaming: bool = False,
    budget: int = SEARCH_BUDGET,
) -> Optional[Binding]:
    """Найти расширение ``rho`` с ``rho(source) ⊆ target`` (поиск с возвратом).

    Поиск прерывается после ``budget`` попыток; это считается неудачей.
    """

    candidates: List[Constraint] = sorted(target, key=repr)
    attempts = 0

    def search(i: int, current: Binding) -> Optional[Binding]:
        nonlocal attempts
        if i == len(source):
            return current
        attempts += 1
        if attempts > budget:
            return None
        head = source[i]
        for k in candidates:
            step = match_type(head.lhs, k.lhs, current, protected, renaming)
            if step is None:
                continue
            step = match_type(head.rhs, k.rhs, step, protected, renaming)
            if step is None:
                continue
            found = search(i + 1, step)
            if found is not None:
                return found
        return None

    return search(0, rho)


def subsumes(
    general: tuple[FrozenSet[Constraint], Type],
    specific: tuple[FrozenSet[Constraint], Type],
    protected: FrozenSet[str],
) -> bool:
    """``general`` поглощает ``specific``: ρ(A1) = A2 и ρ(C1) ⊆ C2."""

    c1, a1 = general
    c2, a2 = specific
    if len(c1) > len(c2):
        return False
    rho = match_type(a1, a2, {}, protected)
    if rho is None:
        return False
    ordered = sorted(c1, key=lambda k: (-len(repr(k)), repr(k)))
    return match_constraints(ordered, c2, rho, protected) is not None


def equal_up_to_renaming(
    first: tuple[FrozenSet[Constraint], Type],
    second: tuple[FrozenSet[Constraint], Type],
    protected: FrozenSet[str],
) -> bool:
    c1, a1 = first
    c2, a2 = second
    if len(c1) != len(c2):
        return False
    rho = match_type(a1, a2, {}, protected, renaming=True)
    if rho is None:
        return False
    ordered = sorted(c1, key=lambda k: (-len(repr(k)), repr(k)))
    return match_constraints(ordered, c2, rho, protected, renaming=True) is not None


__all__ = [
    "Binding",
    "match_type",
    "match_constraints",
    "subsumes",
    "equal_up_to_renaming",
]
