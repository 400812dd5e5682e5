"""Малошаговая семантика вызова по значению для языка с конструкторами."""

from src.domain.services.evaluator.evaluator import decompose, evaluate, plug, step

__all__ = ["decompose", "evaluate", "plug", "step"]
