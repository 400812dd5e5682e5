"""Подстановки в типы и ограничения."""

from __future__ import annotations

from typing import FrozenSet, Iterable, Mapping, Set

from src.domain.entities.types import (
    Constraint,
    NecArrow,
    OkType,
    Sum,
    ToArrow,
    TVar,
    Type,
)


def apply_type_subst(ty: Type, mapping: Mapping[str, Type]) -> Type:
    """Одновременная замена свободных переменных типа."""

    if not mapping:
        return ty
    if isinstance(ty, TVar):
        return mapping.get(ty.name, ty)
    if isinstance(ty, OkType):
        return ty
    if isinstance(ty, Sum):
        return Sum(
            tuple(
                (name, tuple(apply_type_subst(a, mapping) for a in args))
                for name, args in ty.summands
            )
        )
    if isinstance(ty, ToArrow):
        return ToArrow(apply_type_subst(ty.dom, mapping), apply_type_subst(ty.cod, mapping))
    return NecArrow(apply_type_subst(ty.dom, mapping), apply_type_subst(ty.cod, mapping))


def subst_constraints(
    constraints: Iterable[Constraint], mapping: Mapping[str, Type]
) -> FrozenSet[Constraint]:
    return frozenset(
        Constraint(apply_type_subst(k.lhs, mapping), apply_type_subst(k.rhs, mapping))
        for k in constraints
    )


def type_subterms(ty: Type, into: Set[Type] | None = None) -> Set[Type]:
    """Все подтермы типа, включая сам тип."""

    out: Set[Type] = set() if into is None else into
    stack = [ty]
    while stack:
        t = stack.pop()
        if t in out:
            continue
        out.add(t)
        if isinstance(t, Sum):
            for _, args in t.summands:
                stack.extend(args)
        elif isinstance(t, (ToArrow, NecArrow)):
            stack.extend((t.dom, t.cod))
    return out


__all__ = ["apply_type_subst", "subst_constraints", "type_subterms"]
