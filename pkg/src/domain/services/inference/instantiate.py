"""Инстанцирование схемы типов."""

from __future__ import annotations

from typing import FrozenSet, Iterable, Sequence, Tuple

from src.domain.entities.types import Constraint, Scheme, Type
from src.domain.errors import SchemeArityError
from src.domain.services.syntax.type_ops import apply_type_subst, subst_constraints


def instantiate_scheme(
    scheme: Scheme,
    args: Sequence[Type],
    ambient: Iterable[Constraint] = (),
) -> Tuple[Type, FrozenSet[Constraint]]:
    """Подставить ``args`` вместо кванторов.

    Возвращает тело схемы и обязательства ``C[B̄/ā]``. Обязательства,
    уже лежащие в ``ambient``, из результата исключаются; выводимость
    остальных проверяет вызывающий код.
    """

    if len(args) != len(scheme.variables):
        raise SchemeArityError(
            f"scheme quantifies {len(scheme.variables)} variables, got {len(args)} arguments"
        )
    mapping = dict(zip(scheme.variables, args))
    body = apply_type_subst(scheme.body, mapping)
    obligations = subst_constraints(scheme.constraints, mapping) - frozenset(ambient)
    return body, obligations


__all__ = ["instantiate_scheme"]
