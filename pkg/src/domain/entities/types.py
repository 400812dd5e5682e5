"""Типы, ограничения и схемы языка с конструкторами.

Сумма хранит слагаемые в каноническом порядке (лексикографически по
имени конструктора), поэтому структурное равенство dataclass'ов
совпадает с равенством типов.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import FrozenSet, Iterable, Mapping, Tuple, Union

from src.domain.errors import WellFormednessError


@dataclass(frozen=True)
class TVar:
    name: str


@dataclass(frozen=True)
class OkType:
    """Тип всех значений."""


@dataclass(frozen=True)
class Sum:
    """Сумма ``c1(A..) + c2(B..) + ...``; пустая сумма необитаема."""

    summands: Tuple[Tuple[str, Tuple["Type", ...]], ...] = ()

    def __post_init__(self) -> None:
        ordered = tuple(sorted(self.summands, key=lambda s: s[0]))
        heads = [name for name, _ in ordered]
        if len(set(heads)) != len(heads):
            raise WellFormednessError(f"sum repeats a head constructor: {heads}")
        object.__setattr__(self, "summands", ordered)

    @property
    def heads(self) -> FrozenSet[str]:
        return frozenset(name for name, _ in self.summands)

    def args_of(self, ctor: str) -> Tuple["Type", ...] | None:
        for name, args in self.summands:
            if name == ctor:
                return args
        return None


@dataclass(frozen=True)
class ToArrow:
    dom: "Type"
    cod: "Type"


@dataclass(frozen=True)
class NecArrow:
    dom: "Type"
    cod: "Type"


Type = Union[TVar, OkType, Sum, ToArrow, NecArrow]

OK = OkType()
EMPTY = Sum(())


def ctor_type(name: str, *args: "Type") -> Sum:
    """Одно слагаемое ``c(A1..An)``."""

    return Sum(((name, tuple(args)),))


def sum_of(parts: Iterable[Sum]) -> Sum:
    """Объединить суммы; повтор конструктора: ошибка."""

    summands = []
    for part in parts:
        summands.extend(part.summands)
    return Sum(tuple(summands))


@dataclass(frozen=True)
class Constraint:
    """Ограничение подтипизации ``lhs ⊑ rhs``."""

    lhs: Type
    rhs: Type


ConstraintSet = FrozenSet[Constraint]


def equiv(a: Type, b: Type) -> Tuple[Constraint, Constraint]:
    """``A ≡ B`` как пара ограничений."""

    return Constraint(a, b), Constraint(b, a)


def type_vars(ty: Type) -> FrozenSet[str]:
    if isinstance(ty, TVar):
        return frozenset((ty.name,))
    if isinstance(ty, OkType):
        return frozenset()
    if isinstance(ty, Sum):
        out: set[str] = set()
        for _, args in ty.summands:
            for arg in args:
                out |= type_vars(arg)
        return frozenset(out)
    return type_vars(ty.dom) | type_vars(ty.cod)


def constraint_vars(constraints: Iterable[Constraint]) -> FrozenSet[str]:
    out: set[str] = set()
    for k in constraints:
        out |= type_vars(k.lhs) | type_vars(k.rhs)
    return frozenset(out)


@dataclass(frozen=True)
class Scheme:
    """Замкнутая схема ``∀ā. C ⇒ A``."""

    variables: Tuple[str, ...]
    constraints: ConstraintSet
    body: Type

    def __post_init__(self) -> None:
        free = (type_vars(self.body) | constraint_vars(self.constraints)) - set(self.variables)
        if free:
            raise WellFormednessError(
                f"type scheme is not closed, free variables: {sorted(free)}"
            )

    @classmethod
    def mono(cls, body: Type) -> "Scheme":
        return cls((), frozenset(), body)


SchemeEnv = Mapping[str, Tuple[Scheme, ...]]


__all__ = [
    "TVar",
    "OkType",
    "Sum",
    "ToArrow",
    "NecArrow",
    "Type",
    "OK",
    "EMPTY",
    "ctor_type",
    "sum_of",
    "Constraint",
    "ConstraintSet",
    "equiv",
    "type_vars",
    "constraint_vars",
    "Scheme",
    "SchemeEnv",
]
