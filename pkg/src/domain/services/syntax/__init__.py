"""Операции над синтаксисом: значения, свободные переменные, подстановки."""

from src.domain.services.syntax.term_ops import (
    alpha_eq,
    free_vars,
    fresh_name,
    is_value,
    rename_bound,
    substitute,
    top_ids,
)
from src.domain.services.syntax.type_ops import (
    apply_type_subst,
    subst_constraints,
    type_subterms,
)

__all__ = [
    "alpha_eq",
    "free_vars",
    "fresh_name",
    "is_value",
    "rename_bound",
    "substitute",
    "top_ids",
    "apply_type_subst",
    "subst_constraints",
    "type_subterms",
]
