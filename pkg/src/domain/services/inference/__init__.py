"""Вывод ограниченных типов, инстанцирование схем и проверка выводов."""

from src.domain.services.inference.algorithmic import ALL_RULES, validate_algorithmic
from src.domain.services.inference.engine import DEFAULT_PRODUCT_CAP, InferenceEngine, Partial
from src.domain.services.inference.fresh import FreshSupply
from src.domain.services.inference.inference import infer_left, infer_right
from src.domain.services.inference.instantiate import instantiate_scheme
from src.domain.services.inference.matching import equal_up_to_renaming, subsumes
from src.domain.services.inference.toplevel import (
    DefinitionVerdict,
    check_definition,
    check_toplevel,
    solve_candidate,
)

__all__ = [
    "ALL_RULES",
    "DEFAULT_PRODUCT_CAP",
    "DefinitionVerdict",
    "FreshSupply",
    "InferenceEngine",
    "Partial",
    "check_definition",
    "check_toplevel",
    "equal_up_to_renaming",
    "infer_left",
    "infer_right",
    "instantiate_scheme",
    "solve_candidate",
    "subsumes",
    "validate_algorithmic",
]
