"""Окружения, выведенные суждения и алгоритмические выводы.

Выведенное суждение несёт собственный вывод в алгоритмической системе
(:class:`AlgorithmicNode`); множество ограничений общее для всего
вывода и хранится в :class:`AlgorithmicDerivation`.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Any, Callable, Dict, FrozenSet, Iterator, Mapping, Optional, Tuple

from src.domain.entities.terms import Term
from src.domain.entities.types import (
    Constraint,
    NecArrow,
    OkType,
    Scheme,
    Sum,
    ToArrow,
    TVar,
    Type,
    type_vars,
)

TYPE_CLASSES = (TVar, OkType, Sum, ToArrow, NecArrow)


class Side(str, Enum):
    LEFT = "left"
    RIGHT = "right"


Delta = Optional[Tuple[str, Type]]


@dataclass(frozen=True)
class TypeEnvironment:
    """Γ: типизации локальных переменных и схемы идентификаторов.

    У идентификатора может быть несколько объявленных схем; каждая
    проверяется отдельно и даёт отдельное инстанцирование.
    """

    locals: Tuple[Tuple[str, Type], ...] = ()
    schemes: Tuple[Tuple[str, Tuple[Scheme, ...]], ...] = ()

    @classmethod
    def from_schemes(cls, schemes: Mapping[str, Tuple[Scheme, ...]]) -> "TypeEnvironment":
        return cls((), tuple(sorted((k, tuple(v)) for k, v in schemes.items())))

    def local_type(self, name: str) -> Type | None:
        for ident, ty in self.locals:
            if ident == name:
                return ty
        return None

    def schemes_for(self, name: str) -> Tuple[Scheme, ...]:
        for ident, schemes in self.schemes:
            if ident == name:
                return schemes
        return ()

    def extend(self, name: str, ty: Type) -> "TypeEnvironment":
        kept = tuple((k, v) for k, v in self.locals if k != name)
        return replace(self, locals=kept + ((name, ty),))

    def extend_all(self, bindings: Mapping[str, Type]) -> "TypeEnvironment":
        env = self
        for name, ty in bindings.items():
            env = env.extend(name, ty)
        return env

    @property
    def local_names(self) -> FrozenSet[str]:
        return frozenset(k for k, _ in self.locals)

    @property
    def identifiers(self) -> FrozenSet[str]:
        return frozenset(k for k, _ in self.schemes)

    def free_type_vars(self) -> FrozenSet[str]:
        out: FrozenSet[str] = frozenset()
        for _, ty in self.locals:
            out |= type_vars(ty)
        return out

    def map_types(self, fn: Callable[[Type], Type]) -> "TypeEnvironment":
        return replace(self, locals=tuple((k, fn(v)) for k, v in self.locals))


def map_witness(value: Any, fn: Callable[[Type], Type]) -> Any:
    """Применить ``fn`` ко всем типам внутри данных свидетеля."""

    if isinstance(value, TYPE_CLASSES):
        return fn(value)
    if isinstance(value, tuple):
        return tuple(map_witness(v, fn) for v in value)
    if isinstance(value, list):
        return [map_witness(v, fn) for v in value]
    if isinstance(value, dict):
        return {k: map_witness(v, fn) for k, v in value.items()}
    return value


@dataclass(frozen=True)
class AlgorithmicNode:
    """Узел вывода: правило, заключение, посылки, данные свидетеля.

    Правое заключение: ``Γ | C ⊢ M : A``. Левое: ``Γ, M : A | C ⊢ Δ``,
    где ``Δ`` пусто или одна типизация переменной.
    """

    rule: str
    env: TypeEnvironment
    subject: Term
    subject_type: Type
    side: Side
    delta: Delta = None
    premises: Tuple["AlgorithmicNode", ...] = ()
    witness: Dict[str, Any] = field(default_factory=dict)

    def map_types(self, fn: Callable[[Type], Type]) -> "AlgorithmicNode":
        return AlgorithmicNode(
            rule=self.rule,
            env=self.env.map_types(fn),
            subject=self.subject,
            subject_type=fn(self.subject_type),
            side=self.side,
            delta=None if self.delta is None else (self.delta[0], fn(self.delta[1])),
            premises=tuple(p.map_types(fn) for p in self.premises),
            witness=map_witness(self.witness, fn),
        )

    def walk(self) -> Iterator["AlgorithmicNode"]:
        yield self
        for p in self.premises:
            yield from p.walk()


@dataclass(frozen=True)
class AlgorithmicDerivation:
    constraints: FrozenSet[Constraint]
    root: AlgorithmicNode


@dataclass(frozen=True)
class InferredJudgement:
    constraints: FrozenSet[Constraint]
    env: TypeEnvironment
    subject: Term
    subject_type: Type
    side: Side
    delta: Delta = None
    derivation: AlgorithmicNode | None = field(default=None, compare=False)

    def as_derivation(self) -> AlgorithmicDerivation:
        if self.derivation is None:
            raise ValueError("judgement carries no derivation")
        return AlgorithmicDerivation(self.constraints, self.derivation)


@dataclass(frozen=True)
class InferenceResult:
    """Набор выведенных суждений; ``truncated``: сработал предел произведения."""

    judgements: Tuple[InferredJudgement, ...]
    truncated: bool = False

    def __iter__(self) -> Iterator[InferredJudgement]:
        return iter(self.judgements)

    def __len__(self) -> int:
        return len(self.judgements)


__all__ = [
    "TYPE_CLASSES",
    "Side",
    "Delta",
    "TypeEnvironment",
    "map_witness",
    "AlgorithmicNode",
    "AlgorithmicDerivation",
    "InferredJudgement",
    "InferenceResult",
]
