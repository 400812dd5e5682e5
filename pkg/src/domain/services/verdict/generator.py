"""Детерминированный генератор замкнутых термов для фаззинга.

Часть узлов применения и сопоставления строится «неправильной формы»:
применение конструктора как функции, сопоставление абстракции или
конструктора без подходящей ветви. Доля таких узлов задаётся
``wrong_shape_ratio``.
"""

from __future__ import annotations

import random
from typing import Iterable, List, Tuple

from src.domain.entities.terms import (
    DEFAULT_SIGNATURE,
    Abs,
    Alternative,
    App,
    Ctor,
    CtorSignature,
    Fix,
    LocalVar,
    Match,
    Pattern,
    Term,
    TopId,
)

DEFAULT_WRONG_SHAPE_RATIO = 0.3

# веса форм составного узла
_FORMS = ("ctor", "app", "abs", "match", "fix")
_WEIGHTS = (35, 30, 15, 15, 5)


class _Generator:
    def __init__(
        self,
        rng: random.Random,
        signature: CtorSignature,
        top_ids: Tuple[str, ...],
        wrong_shape_ratio: float,
    ) -> None:
        self.rng = rng
        self.signature = signature
        self.top_ids = top_ids
        self.ratio = wrong_shape_ratio
        self.counter = 0
        self.nullary = tuple(name for name, arity in signature.items() if arity == 0)
        self.ctors = tuple(signature.items())

    def fresh(self) -> str:
        self.counter += 1
        return f"x{self.counter}"

    def split(self, total: int, parts: int) -> List[int]:
        """Разбить ``total`` на ``parts`` положительных слагаемых."""

        if parts == 0:
            return []
        sizes = [1] * parts
        for _ in range(max(0, total - parts)):
            sizes[self.rng.randrange(parts)] += 1
        return sizes

    def leaf(self, scope: Tuple[str, ...]) -> Term:
        roll = self.rng.random()
        if scope and roll < 0.5:
            return LocalVar(self.rng.choice(scope))
        if self.top_ids and roll < 0.65:
            return TopId(self.rng.choice(self.top_ids))
        return Ctor(self.rng.choice(self.nullary), ())

    def ctor(self, size: int, scope: Tuple[str, ...]) -> Term:
        candidates = [(n, a) for n, a in self.ctors if a > 0 and a <= size - 1] or list(self.ctors)
        name, arity = self.rng.choice(candidates)
        sizes = self.split(size - 1, arity)
        return Ctor(name, tuple(self.term(s, scope) for s in sizes))

    def abs(self, size: int, scope: Tuple[str, ...]) -> Abs:
        x = self.fresh()
        return Abs(x, self.term(max(1, size - 1), scope + (x,)))

    def app(self, size: int, scope: Tuple[str, ...]) -> Term:
        fn_size, arg_size = self.split(max(2, size - 1), 2)
        if self.rng.random() < self.ratio:
            fn: Term = self.ctor(fn_size, scope) if fn_size > 1 else Ctor(self.rng.choice(self.nullary), ())
            return App(fn, self.term(arg_size, scope))
        roll = self.rng.random()
        if roll < 0.5 or not (scope or self.top_ids):
            fn = self.abs(fn_size, scope)
        elif self.top_ids and (roll < 0.8 or not scope):
            fn = TopId(self.rng.choice(self.top_ids))
        else:
            fn = LocalVar(self.rng.choice(scope))
        return App(fn, self.term(arg_size, scope))

    def alternatives(self, heads: Iterable[str], budget: int, scope: Tuple[str, ...]) -> Tuple[Alternative, ...]:
        heads = sorted(heads)
        sizes = self.split(max(len(heads), budget), len(heads))
        out = []
        for head, size in zip(heads, sizes):
            variables = tuple(self.fresh() for _ in range(self.signature.arity(head)))
            out.append(Alternative(Pattern(head, variables), self.term(size, scope + variables)))
        return tuple(out)

    def match(self, size: int, scope: Tuple[str, ...]) -> Term:
        scrut_size, body_size = self.split(max(2, size - 1), 2)
        names = [n for n, _ in self.ctors]
        if self.rng.random() < self.ratio:
            if self.rng.random() < 0.5:
                return Match(self.abs(scrut_size, scope), self.alternatives(names, body_size, scope))
            head, arity = self.rng.choice(self.ctors)
            others = [n for n in names if n != head]
            chosen = self.rng.sample(others, self.rng.randint(1, min(3, len(others))))
            scrutinee = Ctor(head, tuple(self.term(1, scope) for _ in range(arity)))
            return Match(scrutinee, self.alternatives(chosen, body_size, scope))
        if self.rng.random() < 0.5:
            return Match(self.term(scrut_size, scope), self.alternatives(names, body_size, scope))
        head, arity = self.rng.choice(self.ctors)
        scrutinee = Ctor(head, tuple(self.term(1, scope) for _ in range(arity)))
        extra = [n for n in names if n != head and self.rng.random() < 0.3]
        return Match(scrutinee, self.alternatives([head, *extra], body_size, scope))

    def fix(self, size: int, scope: Tuple[str, ...]) -> Term:
        f = self.fresh()
        return Fix(f, self.abs(max(2, size - 1), scope + (f,)))

    def term(self, size: int, scope: Tuple[str, ...]) -> Term:
        if size <= 1:
            return self.leaf(scope)
        form = self.rng.choices(_FORMS, weights=_WEIGHTS)[0]
        return getattr(self, form)(size, scope)


def gen_term(
    size: int,
    seed: int,
    top_ids: Iterable[str] = (),
    *,
    signature: CtorSignature = DEFAULT_SIGNATURE,
    wrong_shape_ratio: float = DEFAULT_WRONG_SHAPE_RATIO,
) -> Term:
    """Замкнутый терм примерно из ``size`` узлов; одно зерно: один терм."""

    if size < 1:
        raise ValueError("size must be >= 1")
    if not 0.0 <= wrong_shape_ratio <= 1.0:
        raise ValueError("wrong_shape_ratio must be within [0, 1]")
    generator = _Generator(random.Random(seed), signature, tuple(sorted(top_ids)), wrong_shape_ratio)
    if not generator.nullary:
        raise ValueError("signature needs a nullary constructor to build closed terms")
    return generator.term(size, ())


__all__ = ["DEFAULT_WRONG_SHAPE_RATIO", "gen_term"]
