"""Замыкание, синтаксическая совместность и выводимость ограничений."""

from src.domain.services.constraints.closure import (
    ClosureState,
    close,
    constraint_order,
    is_consistent,
    is_syntactically_consistent,
    sorted_constraints,
)
from src.domain.services.constraints.entailment import Entailment, entails
from src.domain.services.syntax.type_ops import subst_constraints

__all__ = [
    "ClosureState",
    "close",
    "constraint_order",
    "is_consistent",
    "is_syntactically_consistent",
    "sorted_constraints",
    "Entailment",
    "entails",
    "subst_constraints",
]
