"""Детерминированный генератор замкнутых PCF-термов.

Связанные имена не повторяются внутри терма. Часть узлов строится
«неправильной формы»: ``pred``/``succ``/``ifz`` над абстракцией или парой,
``let`` над числом, применение числа.
"""

from __future__ import annotations

import random
from typing import List, Tuple

from src.domain.entities.pcf import (
    PAbs,
    PApp,
    PcfTerm,
    PFix,
    PIfZ,
    PLet,
    PPair,
    PPred,
    PSucc,
    PVar,
    numeral,
)

DEFAULT_WRONG_SHAPE_RATIO = 0.3

_FORMS = ("succ", "pred", "ifz", "abs", "app", "pair", "let", "fix")
_WEIGHTS = (15, 15, 10, 15, 20, 10, 10, 5)


class _PcfGenerator:
    def __init__(self, rng: random.Random, wrong_shape_ratio: float) -> None:
        self.rng = rng
        self.ratio = wrong_shape_ratio
        self.counter = 0

    def fresh(self) -> str:
        self.counter += 1
        return f"v{self.counter}"

    def split(self, total: int, parts: int) -> List[int]:
        sizes = [1] * parts
        for _ in range(max(0, total - parts)):
            sizes[self.rng.randrange(parts)] += 1
        return sizes

    def wrong(self) -> bool:
        return self.rng.random() < self.ratio

    def leaf(self, scope: Tuple[str, ...]) -> PcfTerm:
        roll = self.rng.random()
        if scope and roll < 0.5:
            return PVar(self.rng.choice(scope))
        if roll < 0.85:
            return numeral(self.rng.randrange(3))
        x = self.fresh()
        return PAbs(x, PVar(x))

    def succ(self, size: int, scope: Tuple[str, ...]) -> PcfTerm:
        arg = self.abs(size - 1, scope) if self.wrong() and size > 2 else self.term(size - 1, scope)
        return PSucc(arg)

    def pred(self, size: int, scope: Tuple[str, ...]) -> PcfTerm:
        arg = self.abs(size - 1, scope) if self.wrong() and size > 2 else self.term(size - 1, scope)
        return PPred(arg)

    def ifz(self, size: int, scope: Tuple[str, ...]) -> PcfTerm:
        g, z, s = self.split(max(3, size - 1), 3)
        guard = self.pair(g, scope) if self.wrong() and g > 2 else self.term(g, scope)
        return PIfZ(guard, self.term(z, scope), self.term(s, scope))

    def abs(self, size: int, scope: Tuple[str, ...]) -> PcfTerm:
        x = self.fresh()
        return PAbs(x, self.term(max(1, size - 1), scope + (x,)))

    def app(self, size: int, scope: Tuple[str, ...]) -> PcfTerm:
        fn_size, arg_size = self.split(max(2, size - 1), 2)
        if self.wrong():
            fn: PcfTerm = numeral(self.rng.randrange(2))
        elif scope and self.rng.random() < 0.3:
            fn = PVar(self.rng.choice(scope))
        else:
            fn = self.abs(fn_size, scope)
        return PApp(fn, self.term(arg_size, scope))

    def pair(self, size: int, scope: Tuple[str, ...]) -> PcfTerm:
        a, b = self.split(max(2, size - 1), 2)
        return PPair(self.term(a, scope), self.term(b, scope))

    def let(self, size: int, scope: Tuple[str, ...]) -> PcfTerm:
        s, b = self.split(max(2, size - 1), 2)
        scrutinee = numeral(1) if self.wrong() else self.pair(max(3, s), scope)
        x, y = self.fresh(), self.fresh()
        return PLet(x, y, scrutinee, self.term(b, scope + (x, y)))

    def fix(self, size: int, scope: Tuple[str, ...]) -> PcfTerm:
        f = self.fresh()
        x = self.fresh()
        return PFix(f, PAbs(x, self.term(max(1, size - 2), scope + (f, x))))

    def term(self, size: int, scope: Tuple[str, ...]) -> PcfTerm:
        if size <= 1:
            return self.leaf(scope)
        form = self.rng.choices(_FORMS, weights=_WEIGHTS)[0]
        return getattr(self, form)(size, scope)


def gen_pcf_term(size: int, seed: int, *, wrong_shape_ratio: float = DEFAULT_WRONG_SHAPE_RATIO) -> PcfTerm:
    """Замкнутый PCF-терм примерно из ``size`` узлов; одно зерно: один терм."""

    if size < 1:
        raise ValueError("size must be >= 1")
    if not 0.0 <= wrong_shape_ratio <= 1.0:
        raise ValueError("wrong_shape_ratio must be within [0, 1]")
    return _PcfGenerator(random.Random(seed), wrong_shape_ratio).term(size, ())


__all__ = ["gen_pcf_term"]
