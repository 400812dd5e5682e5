"""Абстрактный синтаксис языка с конструкторами.

Термы неизменяемы (``frozen`` dataclass), поэтому их можно свободно
разделять между потоками фаззера. Связывание именованное: при
подстановке связанные имена освежаются по требованию.

Сигнатура конструкторов передаётся на каждый запуск; по умолчанию
используется :data:`DEFAULT_SIGNATURE`, в которой разбираются все
примеры (пары, натуральные числа, списки, булевы значения).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Iterator, Mapping, Tuple, Union

from src.domain.errors import WellFormednessError

PAIR = "Pair"
NIL = "Nil"
CONS = "Cons"


@dataclass(frozen=True)
class LocalVar:
    name: str


@dataclass(frozen=True)
class TopId:
    name: str


@dataclass(frozen=True)
class Ctor:
    name: str
    args: Tuple["Term", ...] = ()


@dataclass(frozen=True)
class App:
    fn: "Term"
    arg: "Term"


@dataclass(frozen=True)
class Abs:
    param: str
    body: "Term"


@dataclass(frozen=True)
class Fix:
    name: str
    body: "Term"


@dataclass(frozen=True)
class Pattern:
    """Простой образец ``c(x1, ..., xn)`` с попарно различными переменными."""

    ctor: str
    variables: Tuple[str, ...] = ()

    def __post_init__(self) -> None:
        if len(set(self.variables)) != len(self.variables):
            raise WellFormednessError(
                f"pattern {self.ctor} binds a variable twice: {list(self.variables)}"
            )


@dataclass(frozen=True)
class Alternative:
    pattern: Pattern
    body: "Term"


@dataclass(frozen=True)
class Match:
    scrutinee: "Term"
    alternatives: Tuple[Alternative, ...]

    def __post_init__(self) -> None:
        heads = [alt.pattern.ctor for alt in self.alternatives]
        if len(set(heads)) != len(heads):
            raise WellFormednessError(
                f"match alternatives are not orthogonal: {heads}"
            )
        bound = [v for alt in self.alternatives for v in alt.pattern.variables]
        if len(set(bound)) != len(bound):
            raise WellFormednessError(
                f"pattern variables of one match must be distinct: {bound}"
            )

    def alternative_for(self, ctor: str) -> Alternative | None:
        for alt in self.alternatives:
            if alt.pattern.ctor == ctor:
                return alt
        return None


Term = Union[LocalVar, TopId, Ctor, App, Abs, Fix, Match]


class CtorSignature:
    """Конечное отображение «имя конструктора → арность».

    Пара ``Pair/2`` присутствует всегда: на ней строится вывод для
    сопоставления с образцом слева.
    """

    def __init__(self, arities: Mapping[str, int]) -> None:
        data: Dict[str, int] = dict(arities)
        if data.get(PAIR) != 2:
            raise WellFormednessError("signature must contain the pair constructor Pair/2")
        for name, arity in data.items():
            if arity < 0:
                raise WellFormednessError(f"negative arity for constructor {name}")
        self._arities = dict(sorted(data.items()))

    def arity(self, name: str) -> int:
        try:
            return self._arities[name]
        except KeyError:
            raise WellFormednessError(f"unknown constructor {name}") from None

    def __contains__(self, name: object) -> bool:
        return name in self._arities

    def __iter__(self) -> Iterator[str]:
        return iter(self._arities)

    def items(self) -> Iterator[Tuple[str, int]]:
        return iter(self._arities.items())

    def with_entry(self, name: str, arity: int) -> "CtorSignature":
        merged = dict(self._arities)
        if name in merged and merged[name] != arity:
            raise WellFormednessError(
                f"constructor {name} redeclared with arity {arity} (was {merged[name]})"
            )
        merged[name] = arity
        return CtorSignature(merged)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, CtorSignature) and other._arities == self._arities

    def __hash__(self) -> int:
        return hash(tuple(self._arities.items()))

    def __repr__(self) -> str:
        body = ", ".join(f"{k}/{v}" for k, v in self._arities.items())
        return f"CtorSignature({body})"


DEFAULT_SIGNATURE = CtorSignature(
    {PAIR: 2, "Zero": 0, "Succ": 1, NIL: 0, CONS: 2, "True": 0, "False": 0}
)


@dataclass(frozen=True)
class TopModule:
    """Упорядоченный набор определений верхнего уровня."""

    definitions: Tuple[Tuple[str, Term], ...] = ()

    def __post_init__(self) -> None:
        names = [name for name, _ in self.definitions]
        seen: set[str] = set()
        for name in names:
            if name in seen:
                raise WellFormednessError(f"duplicate definition of {name}")
            seen.add(name)

    def lookup(self, name: str) -> Term | None:
        for ident, body in self.definitions:
            if ident == name:
                return body
        return None

    @property
    def names(self) -> Tuple[str, ...]:
        return tuple(name for name, _ in self.definitions)


def check_arities(term: Term, signature: CtorSignature) -> None:
    """Проверить арности конструкторов и образцов по сигнатуре."""

    stack = [term]
    while stack:
        t = stack.pop()
        if isinstance(t, Ctor):
            expected = signature.arity(t.name)
            if expected != len(t.args):
                raise WellFormednessError(
                    f"constructor {t.name} expects {expected} arguments, got {len(t.args)}"
                )
            stack.extend(t.args)
        elif isinstance(t, App):
            stack.extend((t.fn, t.arg))
        elif isinstance(t, (Abs, Fix)):
            stack.append(t.body)
        elif isinstance(t, Match):
            stack.append(t.scrutinee)
            for alt in t.alternatives:
                expected = signature.arity(alt.pattern.ctor)
                if expected != len(alt.pattern.variables):
                    raise WellFormednessError(
                        f"pattern {alt.pattern.ctor} expects {expected} variables, "
                        f"got {len(alt.pattern.variables)}"
                    )
                stack.append(alt.body)


__all__ = [
    "PAIR",
    "NIL",
    "CONS",
    "LocalVar",
    "TopId",
    "Ctor",
    "App",
    "Abs",
    "Fix",
    "Pattern",
    "Alternative",
    "Match",
    "Term",
    "CtorSignature",
    "DEFAULT_SIGNATURE",
    "TopModule",
    "check_arities",
]
