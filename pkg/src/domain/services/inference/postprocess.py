"""Упрощение и слияние выведенных суждений на внешней границе вывода."""

from __future__ import annotations

from collections import Counter
from typing import FrozenSet, Iterable, List

from src.domain.entities.judgements import Delta, TypeEnvironment
from src.domain.entities.types import Constraint, NecArrow, Sum, ToArrow, TVar, Type, type_vars
from src.domain.services.constraints.closure import sorted_constraints
from src.domain.services.inference.engine import Partial
from src.domain.services.inference.matching import equal_up_to_renaming
from src.domain.services.syntax.type_ops import apply_type_subst


def _occurrences(ty: Type, counts: Counter) -> None:
    if isinstance(ty, TVar):
        counts[ty.name] += 1
    elif isinstance(ty, Sum):
        for _, args in ty.summands:
            for arg in args:
                _occurrences(arg, counts)
    elif isinstance(ty, (ToArrow, NecArrow)):
        _occurrences(ty.dom, counts)
        _occurrences(ty.cod, counts)


def protected_vars(env: TypeEnvironment, delta: Delta) -> FrozenSet[str]:
    out = env.free_type_vars()
    if delta is not None:
        out |= type_vars(delta[1])
    return out


def simplify(partial: Partial, protected: FrozenSet[str]) -> Partial:
    """Исключить переменные с единственным вхождением.

    Переменная, которая встречается ровно один раз и целиком составляет
    одну сторону ограничения, заменяется другой стороной; рефлексивные
    ограничения после этого отбрасываются.
    """

    current = partial
    keep = protected | type_vars(partial.ty)
    while True:
        counts: Counter = Counter()
        for k in current.constraints:
            _occurrences(k.lhs, counts)
            _occurrences(k.rhs, counts)
        mapping = None
        for k in sorted_constraints(current.constraints):
            for side, other in ((k.rhs, k.lhs), (k.lhs, k.rhs)):
                if isinstance(side, TVar) and side.name not in keep and counts[side.name] == 1:
                    mapping = {side.name: other}
                    break
            if mapping is not None:
                break
        if mapping is None:
            return current
        subst = lambda ty, m=mapping: apply_type_subst(ty, m)
        constraints = frozenset(
            Constraint(subst(k.lhs), subst(k.rhs)) for k in current.constraints
        )
        constraints = frozenset(k for k in constraints if k.lhs != k.rhs)
        current = Partial(constraints, current.ty, current.node.map_types(subst))


def merge_renamings(results: Iterable[Partial], protected: FrozenSet[str]) -> List[Partial]:
    """Оставить по одному представителю из суждений, равных с точностью до переименования."""

    kept: List[Partial] = []
    for r in results:
        if any(
            equal_up_to_renaming((k.constraints, k.ty), (r.constraints, r.ty), protected)
            for k in kept
        ):
            continue
        kept.append(r)
    return kept


__all__ = ["protected_vars", "simplify", "merge_renamings"]
