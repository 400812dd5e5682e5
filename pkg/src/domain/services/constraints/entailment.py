"""Решение ``C ⊢ A ⊑ B`` по правилам ограниченной подтипизации.

Правила вывода цели ``A ⊑ B``:

* правая часть ``Ok``: аксиома;
* ``A = B``: рефлексивность (для переменных это принятое решение, для
  составных типов она выводима структурно);
* цель лежит в транзитивном замыкании ``C``;
* структурное разложение однотипных стрелок и сумм;
* цепочка через ограничение ``T1 ⊑ T2`` из транзитивного замыкания:
  ``A ⊑ T1`` и ``T2 ⊑ B`` выводимы.

Замыкается только транзитивность: разложение ограничений из ``C`` не
является правилом вывода подтипизации и сделало бы ответ сильнее
исчерпывающего поиска по правилам.

Выводимые цели: наименьшая неподвижная точка правил. Из запроса строится
конечный граф целей (подтермы запроса и ``C``), затем выводимость
распространяется счётчиками невыведенных посылок. Все решённые цели,
в том числе невыводимые, остаются в таблице экземпляра.
"""

from __future__ import annotations

from collections import defaultdict, deque
from typing import DefaultDict, Deque, Dict, FrozenSet, Iterable, List, Optional, Set, Tuple

from src.domain.entities.types import (
    Constraint,
    NecArrow,
    OkType,
    Sum,
    ToArrow,
    Type,
)

Goal = Tuple[Type, Type]
Premises = FrozenSet[Goal]

_AXIOM: Premises = frozenset()


def transitive_closure(constraints: Iterable[Constraint]) -> FrozenSet[Constraint]:
    uppers: DefaultDict[Type, Set[Type]] = defaultdict(set)
    for k in constraints:
        uppers[k.lhs].add(k.rhs)
    result: Set[Constraint] = set()
    for start in list(uppers):
        seen: Set[Type] = set()
        stack = list(uppers[start])
        while stack:
            t = stack.pop()
            if t in seen:
                continue
            seen.add(t)
            result.add(Constraint(start, t))
            stack.extend(uppers.get(t, ()))
    return frozenset(result)


class Entailment:
    """Решатель выводимости для фиксированного множества ``C``.

    Экземпляр хранит таблицу решённых целей; для другого ``C`` создаётся
    новый экземпляр.
    """

    def __init__(self, constraints: Iterable[Constraint]) -> None:
        self.constraints: FrozenSet[Constraint] = frozenset(constraints)
        self._tc = transitive_closure(self.constraints)
        self._chain: List[Constraint] = sorted(self._tc, key=repr)
        self._memo: Dict[Goal, bool] = {}

    @property
    def chain(self) -> List[Constraint]:
        """Транзитивное замыкание ``C`` в каноническом порядке."""

        return list(self._chain)

    @property
    def decided(self) -> int:
        return len(self._memo)

    def holds(self, lhs: Type, rhs: Type) -> bool:
        goal = (lhs, rhs)
        if goal not in self._memo:
            self._solve(goal)
        return self._memo[goal]

    def holds_all(self, goals: Iterable[Constraint]) -> bool:
        return all(self.holds(k.lhs, k.rhs) for k in goals)

    # ------------------------------------------------------------ rules
    def _is_axiom(self, a: Type, b: Type) -> bool:
        return isinstance(b, OkType) or a == b or Constraint(a, b) in self._tc

    @staticmethod
    def _structural(a: Type, b: Type) -> Optional[Premises]:
        if isinstance(a, ToArrow) and isinstance(b, ToArrow):
            return frozenset({(b.dom, a.dom), (a.cod, b.cod)})
        if isinstance(a, NecArrow) and isinstance(b, NecArrow):
            return frozenset({(a.dom, b.dom), (b.cod, a.cod)})
        if isinstance(a, Sum) and isinstance(b, Sum):
            if not a.heads <= b.heads:
                return None
            parts: Set[Goal] = set()
            for name, args in a.summands:
                other = b.args_of(name)
                if other is None or len(other) != len(args):
                    return None
                parts.update(zip(args, other))
            return frozenset(parts)
        return None

    def _alternatives(self, a: Type, b: Type) -> List[Premises]:
        if self._is_axiom(a, b):
            return [_AXIOM]
        out: List[Premises] = []
        structural = self._structural(a, b)
        if structural is not None:
            out.append(structural)
        for k in self._chain:
            out.append(frozenset({(a, k.lhs), (k.rhs, b)}))
        return out

    # ------------------------------------------------------------ fixpoint
    def _solve(self, root: Goal) -> None:
        rules: Dict[Goal, List[Premises]] = {}
        stack = [root]
        while stack:
            goal = stack.pop()
            if goal in rules or goal in self._memo:
                continue
            rules[goal] = self._alternatives(*goal)
            for premises in rules[goal]:
                stack.extend(p for p in premises if p not in rules and p not in self._memo)

        missing: Dict[Tuple[Goal, int], int] = {}
        waiting: DefaultDict[Goal, List[Tuple[Goal, int]]] = defaultdict(list)
        ready: Deque[Goal] = deque()
        for goal, alternatives in rules.items():
            for i, premises in enumerate(alternatives):
                if any(self._memo.get(p) is False for p in premises):
                    continue
                open_premises = [p for p in premises if p not in self._memo]
                if not open_premises:
                    ready.append(goal)
                    continue
                missing[(goal, i)] = len(open_premises)
                for p in open_premises:
                    waiting[p].append((goal, i))

        proven: Set[Goal] = set()
        while ready:
            goal = ready.popleft()
            if goal in proven:
                continue
            proven.add(goal)
            for slot in waiting.pop(goal, ()):
                missing[slot] -= 1
                if missing[slot] == 0:
                    ready.append(slot[0])

        for goal in rules:
            self._memo[goal] = goal in proven


def entails(constraints: Iterable[Constraint], goal: Constraint) -> bool:
    return Entailment(constraints).holds(goal.lhs, goal.rhs)


__all__ = ["Entailment", "entails", "transitive_closure"]
