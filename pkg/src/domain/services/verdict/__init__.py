"""Вердикты над замкнутыми термами и пробы корректности."""

from src.domain.services.verdict.generator import DEFAULT_WRONG_SHAPE_RATIO, gen_term
from src.domain.services.verdict.probe import is_violation, soundness_probe
from src.domain.services.verdict.verdicts import ensure_consistent_environment, ill_typed, well_typed

__all__ = [
    "DEFAULT_WRONG_SHAPE_RATIO",
    "ensure_consistent_environment",
    "gen_term",
    "ill_typed",
    "is_violation",
    "soundness_probe",
    "well_typed",
]
