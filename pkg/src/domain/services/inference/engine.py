"""Двусторонний вывод ограниченных типов: InferR и InferL.

Каждое правило алгоритма соответствует одному методу. Результат
каждого вызова: список частичных суждений :class:`Partial` (множество
ограничений, тип субъекта и узел алгоритмического вывода, доказывающий это
суждение).

Произведения по аргументам конструктора и ветвям сопоставления
ограничены ``product_cap``; при срабатывании предела поднимается флаг
``truncated``. В режиме ``prune`` на каждом уровне отбрасываются
несовместные суждения и суждения, поглощённые более общими. Совместность
проверяется расширением уже замкнутого множества префикса, а отсечённые
префиксы тоже расходуют ``product_cap``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Dict, FrozenSet, Iterable, Iterator, List, Sequence, Tuple

from src.domain.entities.judgements import AlgorithmicNode, Delta, Side, TypeEnvironment
from src.domain.entities.terms import (
    DEFAULT_SIGNATURE,
    PAIR,
    Abs,
    App,
    Ctor,
    CtorSignature,
    Fix,
    LocalVar,
    Match,
    Term,
    TopId,
)
from src.domain.entities.types import (
    OK,
    Constraint,
    NecArrow,
    Sum,
    ToArrow,
    TVar,
    Type,
    ctor_type,
    type_vars,
)
from src.domain.services.constraints.closure import ClosureState
from src.domain.services.inference.fresh import FreshSupply
from src.domain.services.inference.matching import subsumes
from src.domain.services.syntax.term_ops import rename_bound
from src.domain.services.syntax.type_ops import apply_type_subst, subst_constraints
from src.infrastructure.logging.logging_setup import log_debug, log_stage

_LOG = __name__

DEFAULT_PRODUCT_CAP = 10_000
PRUNE_LIMIT = 200


@dataclass(frozen=True)
class Partial:
    constraints: FrozenSet[Constraint]
    ty: Type
    node: AlgorithmicNode


Linker = Callable[[int, Partial], Iterable[Constraint]]
Finisher = Callable[[Tuple[Partial, ...]], Iterable[Constraint]]


class InferenceEngine:
    """Один запуск вывода: общий источник свежих переменных и флаг усечения."""

    def __init__(
        self,
        signature: CtorSignature = DEFAULT_SIGNATURE,
        supply: FreshSupply | None = None,
        product_cap: int = DEFAULT_PRODUCT_CAP,
        prune: bool = False,
    ) -> None:
        if product_cap < 1:
            raise ValueError("product_cap must be positive")
        self.signature = signature
        self.supply = supply or FreshSupply()
        self.product_cap = product_cap
        self.prune = prune
        self.truncated = False
        self._states: Dict[FrozenSet[Constraint], ClosureState] = {}

    # ------------------------------------------------------------------ #
    # InferR
    # ------------------------------------------------------------------ #

    def right(self, env: TypeEnvironment, term: Term) -> List[Partial]:
        if isinstance(term, LocalVar):
            out = self._right_var(env, term)
        elif isinstance(term, TopId):
            out = self._right_top(env, term)
        elif isinstance(term, App):
            out = self._right_app(env, term)
        elif isinstance(term, Abs):
            out = self._right_abs(env, term)
        elif isinstance(term, Ctor):
            out = self._right_ctor(env, term)
        elif isinstance(term, Match):
            out = self._right_match(env, term)
        else:
            out = self._right_fix(env, term)
        return self._post(out, env, None)

    def _node(
        self,
        rule: str,
        env: TypeEnvironment,
        term: Term,
        ty: Type,
        side: Side,
        delta: Delta = None,
        premises: Sequence[Partial] = (),
        **witness: object,
    ) -> AlgorithmicNode:
        return AlgorithmicNode(
            rule=rule,
            env=env,
            subject=term,
            subject_type=ty,
            side=side,
            delta=delta,
            premises=tuple(p.node for p in premises),
            witness=dict(witness),
        )

    def _right_var(self, env: TypeEnvironment, term: LocalVar) -> List[Partial]:
        b = self.supply.fresh()
        bound = env.local_type(term.name)
        if bound is None:
            node = self._node("VarK2", env, term, b, Side.RIGHT)
            return [Partial(frozenset({Constraint(OK, b)}), b, node)]
        node = self._node("Var2", env, term, b, Side.RIGHT)
        return [Partial(frozenset({Constraint(bound, b)}), b, node)]

    def _right_top(self, env: TypeEnvironment, term: TopId) -> List[Partial]:
        out: List[Partial] = []
        for index, scheme in enumerate(env.schemes_for(term.name)):
            args = self.supply.fresh_many(len(scheme.variables))
            mapping = dict(zip(scheme.variables, args))
            result = self.supply.fresh()
            constraints = subst_constraints(scheme.constraints, mapping) | {
                Constraint(apply_type_subst(scheme.body, mapping), result)
            }
            node = self._node(
                "Inst2", env, term, result, Side.RIGHT, scheme_index=index, args=args
            )
            out.append(Partial(constraints, result, node))
        return out

    def _right_app(self, env: TypeEnvironment, term: App) -> List[Partial]:
        a = self.supply.fresh()
        factors = [self.right(env, term.fn), self.right(env, term.arg)]
        link: Linker = lambda i, p: ()
        out: List[Partial] = []
        finish: Finisher = lambda c, a=a: (Constraint(c[0].ty, ToArrow(c[1].ty, a)),)
        for (fn, arg), constraints in self._combine(factors, link, finish):
            node = self._node("AppR2", env, term, a, Side.RIGHT, premises=(fn, arg))
            out.append(Partial(constraints, a, node))
        return out

    def _right_abs(self, env: TypeEnvironment, term: Abs) -> List[Partial]:
        renamed = rename_bound(term, env.local_names)
        assert isinstance(renamed, Abs)
        out: List[Partial] = []

        t, a = self.supply.fresh(), self.supply.fresh()
        for body in self.right(env.extend(renamed.param, t), renamed.body):
            k = Constraint(ToArrow(t, body.ty), a)
            node = self._node("AbsR2", env, renamed, a, Side.RIGHT, premises=(body,))
            out.append(Partial(self._with(body.constraints, k), a, node))

        t, a = self.supply.fresh(), self.supply.fresh()
        for body in self.left(env, renamed.body, (renamed.param, t)):
            k = Constraint(NecArrow(t, body.ty), a)
            node = self._node("AbnR2", env, renamed, a, Side.RIGHT, premises=(body,))
            out.append(Partial(self._with(body.constraints, k), a, node))
        return out

    def _right_ctor(self, env: TypeEnvironment, term: Ctor) -> List[Partial]:
        a = self.supply.fresh()
        if not term.args:
            node = self._node("CnsR2", env, term, a, Side.RIGHT)
            return [Partial(frozenset({Constraint(ctor_type(term.name), a)}), a, node)]
        factors = [self.right(env, m) for m in term.args]
        out: List[Partial] = []
        finish: Finisher = lambda c, a=a: (Constraint(ctor_type(term.name, *(p.ty for p in c)), a),)
        for chosen, constraints in self._combine(factors, lambda i, p: (), finish):
            node = self._node("CnsR2", env, term, a, Side.RIGHT, premises=chosen)
            out.append(Partial(constraints, a, node))
        return out

    def _right_match(self, env: TypeEnvironment, term: Match) -> List[Partial]:
        renamed = rename_bound(term, env.local_names)
        assert isinstance(renamed, Match)
        a = self.supply.fresh()
        pattern_types = {
            v: self.supply.fresh()
            for alt in renamed.alternatives
            for v in alt.pattern.variables
        }
        expected = self._pattern_sum(renamed, pattern_types)

        factors: List[List[Partial]] = [self.right(env, renamed.scrutinee)]
        for alt in renamed.alternatives:
            inner = env.extend_all({v: pattern_types[v] for v in alt.pattern.variables})
            factors.append(self.right(inner, alt.body))

        def link(i: int, p: Partial) -> Iterable[Constraint]:
            if i == 0:
                return (Constraint(p.ty, expected),)
            return (Constraint(p.ty, a),)

        out: List[Partial] = []
        for chosen, constraints in self._combine(factors, link):
            node = self._node(
                "MchR2", env, renamed, a, Side.RIGHT, premises=chosen, pattern_types=dict(pattern_types)
            )
            out.append(Partial(constraints, a, node))
        return out

    def _right_fix(self, env: TypeEnvironment, term: Fix) -> List[Partial]:
        renamed = rename_bound(term, env.local_names)
        assert isinstance(renamed, Fix)
        a = self.supply.fresh()
        out: List[Partial] = []
        for body in self.right(env.extend(renamed.name, a), renamed.body):
            node = self._node("FixR2", env, renamed, a, Side.RIGHT, premises=(body,))
            out.append(Partial(self._with(body.constraints, Constraint(body.ty, a)), a, node))
        return out

    # ------------------------------------------------------------------ #
    # InferL
    # ------------------------------------------------------------------ #

    def left(self, env: TypeEnvironment, term: Term, delta: Delta) -> List[Partial]:
        out: List[Partial] = []
        if delta is not None:
            a = self.supply.fresh()
            node = self._node("VarK2", env, term, a, Side.LEFT, delta)
            out.append(Partial(frozenset({Constraint(OK, delta[1])}), a, node))

        if isinstance(term, LocalVar):
            if delta is not None and delta[0] == term.name:
                a = self.supply.fresh()
                node = self._node("Var2", env, term, a, Side.LEFT, delta)
                out.append(Partial(frozenset({Constraint(a, delta[1])}), a, node))
        elif isinstance(term, App):
            out.extend(self._left_app(env, term, delta))
        elif isinstance(term, Abs):
            a = self.supply.fresh()
            everything = self._full_sum(exclude=None)
            node = self._node("AbsDL2", env, term, a, Side.LEFT, delta, sum=everything)
            out.append(Partial(frozenset({Constraint(a, everything)}), a, node))
        elif isinstance(term, Ctor):
            out.extend(self._left_ctor(env, term, delta))
        elif isinstance(term, Match):
            out.extend(self._left_match(env, term, delta))
        return self._post(out, env, delta)

    def _left_app(self, env: TypeEnvironment, term: App, delta: Delta) -> List[Partial]:
        out: List[Partial] = []
        a = self.supply.fresh()
        factors = [self.right(env, term.fn), self.left(env, term.arg, delta)]
        finish: Finisher = lambda c, a=a: (Constraint(c[0].ty, NecArrow(c[1].ty, a)),)
        for (fn, arg), constraints in self._combine(factors, lambda i, p: (), finish):
            node = self._node("AppL2", env, term, a, Side.LEFT, delta, premises=(fn, arg))
            out.append(Partial(constraints, a, node))

        a = self.supply.fresh()
        for fn in self.left(env, term.fn, delta):
            k = Constraint(NecArrow(OK, a), fn.ty)
            node = self._node("FunK2", env, term, a, Side.LEFT, delta, premises=(fn,))
            out.append(Partial(self._with(fn.constraints, k), a, node))
        return out

    def _left_ctor(self, env: TypeEnvironment, term: Ctor, delta: Delta) -> List[Partial]:
        out: List[Partial] = []
        for index, arg in enumerate(term.args):
            for premise in self.left(env, arg, delta):
                a = self.supply.fresh()
                args = [self.supply.fresh() for _ in term.args]
                args[index] = premise.ty  # type: ignore[call-overload]
                target = Sum(
                    self._full_sum(exclude=term.name).summands
                    + ((term.name, tuple(args)),)
                )
                node = self._node(
                    "CnsL2", env, term, a, Side.LEFT, delta,
                    premises=(premise,), index=index, sum=target,
                )
                out.append(Partial(self._with(premise.constraints, Constraint(a, target)), a, node))

        for index, arg in enumerate(term.args):
            a = self.supply.fresh()
            for premise in self.left(env, arg, delta):
                node = self._node(
                    "CnsK2", env, term, a, Side.LEFT, delta, premises=(premise,), index=index
                )
                out.append(Partial(self._with(premise.constraints, Constraint(OK, premise.ty)), a, node))

        a, b1, b2 = self.supply.fresh_many(3)
        arrow = ToArrow(b1, b2)
        node = self._node("CnsDL21", env, term, a, Side.LEFT, delta, arrow=arrow)
        out.append(Partial(frozenset({Constraint(a, arrow)}), a, node))

        a, b1, b2 = self.supply.fresh_many(3)
        arrow = NecArrow(b1, b2)
        node = self._node("CnsDL22", env, term, a, Side.LEFT, delta, arrow=arrow)
        out.append(Partial(frozenset({Constraint(a, arrow)}), a, node))

        a = self.supply.fresh()
        others = self._full_sum(exclude=term.name)
        node = self._node("CnsDL23", env, term, a, Side.LEFT, delta, sum=others)
        out.append(Partial(frozenset({Constraint(a, others)}), a, node))
        return out

    def _left_match(self, env: TypeEnvironment, term: Match, delta: Delta) -> List[Partial]:
        avoid = set(env.local_names)
        if delta is not None:
            avoid.add(delta[0])
        renamed = rename_bound(term, avoid)
        assert isinstance(renamed, Match)
        a = self.supply.fresh()
        branch_types: List[Tuple[TVar, TVar]] = []
        pattern_types = {}
        for alt in renamed.alternatives:
            branch_types.append((self.supply.fresh(), self.supply.fresh()))
            for v in alt.pattern.variables:
                pattern_types[v] = self.supply.fresh()

        factors: List[List[Partial]] = []
        links: List[Callable[[Partial], Iterable[Constraint]]] = []
        for alt, (a_i, b_i) in zip(renamed.alternatives, branch_types):
            pair = Ctor(PAIR, (renamed.scrutinee, alt.body))
            factors.append(self.left(env, pair, delta))
            pattern = ctor_type(alt.pattern.ctor, *(pattern_types[v] for v in alt.pattern.variables))
            links.append(
                lambda p, a_i=a_i, b_i=b_i, pattern=pattern: (
                    Constraint(a, a_i),
                    Constraint(ctor_type(PAIR, b_i, a_i), p.ty),
                    Constraint(pattern, b_i),
                )
            )
        for alt in renamed.alternatives:
            for v in alt.pattern.variables:
                factors.append(self.left(env, alt.body, (v, pattern_types[v])))
                links.append(lambda p: (Constraint(a, p.ty),))

        out: List[Partial] = []
        for chosen, constraints in self._combine(factors, lambda i, p: links[i](p)):
            node = self._node(
                "MchL2", env, renamed, a, Side.LEFT, delta,
                premises=chosen,
                branch_types=tuple(branch_types),
                pattern_types=dict(pattern_types),
            )
            out.append(Partial(constraints, a, node))
        return out

    # ------------------------------------------------------------------ #
    # helpers
    # ------------------------------------------------------------------ #

    def _full_sum(self, exclude: str | None) -> Sum:
        summands = []
        for name, arity in self.signature.items():
            if name == exclude:
                continue
            summands.append((name, self.supply.fresh_many(arity)))
        return Sum(tuple(summands))

    @staticmethod
    def _pattern_sum(term: Match, pattern_types: dict) -> Sum:
        return Sum(
            tuple(
                (alt.pattern.ctor, tuple(pattern_types[v] for v in alt.pattern.variables))
                for alt in term.alternatives
            )
        )

    def _state(self, constraints: FrozenSet[Constraint]) -> ClosureState:
        state = self._states.get(constraints)
        if state is None:
            state = ClosureState().extend(constraints, fail_fast=True)
            self._states[constraints] = state
        return state

    def _with(self, base: FrozenSet[Constraint], *extra: Constraint) -> FrozenSet[Constraint]:
        """``base ∪ extra``; в режиме ``prune`` замыкание наследуется от ``base``."""

        result = base | frozenset(extra)
        if self.prune and result not in self._states:
            self._states[result] = self._state(base).extend(extra, fail_fast=True)
        return result

    def _combine(
        self,
        factors: Sequence[Sequence[Partial]],
        link: Linker,
        finish: Finisher | None = None,
    ) -> Iterator[Tuple[Tuple[Partial, ...], FrozenSet[Constraint]]]:
        """Декартово произведение частичных суждений с добавочными ограничениями.

        ``finish`` добавляет ограничения самого правила к полной комбинации.
        Выданные и отсечённые комбинации вместе не превышают ``product_cap``;
        в режиме ``prune`` несовместные префиксы отсекаются сразу.
        """

        spent = 0
        chosen: List[Partial] = []

        def exhausted() -> bool:
            if spent < self.product_cap:
                return False
            if not self.truncated:
                log_stage("WARN", "Произведение усечено", _LOG, cap=self.product_cap)
            self.truncated = True
            return True

        def walk(
            i: int, acc: FrozenSet[Constraint], state: ClosureState | None
        ) -> Iterator[Tuple[Tuple[Partial, ...], FrozenSet[Constraint]]]:
            nonlocal spent
            if i == len(factors):
                extra = frozenset(finish(tuple(chosen))) if finish else frozenset()
                result = acc | extra
                if state is not None:
                    closed = state.extend(extra, fail_fast=True)
                    spent += 1
                    if not closed.consistent:
                        return
                    self._states.setdefault(result, closed)
                else:
                    spent += 1
                yield tuple(chosen), result
                return
            for p in factors[i]:
                if exhausted():
                    return
                added = p.constraints | frozenset(link(i, p))
                nxt_state = None
                if state is not None:
                    nxt_state = state.extend(added, fail_fast=True)
                    if not nxt_state.consistent:
                        spent += 1
                        continue
                chosen.append(p)
                yield from walk(i + 1, acc | added, nxt_state)
                chosen.pop()

        yield from walk(0, frozenset(), ClosureState() if self.prune else None)

    def _post(self, results: List[Partial], env: TypeEnvironment, delta: Delta) -> List[Partial]:
        if not self.prune or not results:
            return results
        consistent = [r for r in results if self._state(r.constraints).consistent]
        if len(consistent) > PRUNE_LIMIT:
            return consistent
        protected = env.free_type_vars()
        if delta is not None:
            protected |= type_vars(delta[1])
        ordered = sorted(consistent, key=lambda r: len(r.constraints))
        kept: List[Partial] = []
        for r in ordered:
            if any(subsumes((k.constraints, k.ty), (r.constraints, r.ty), protected) for k in kept):
                continue
            kept.append(r)
        if len(kept) != len(results):
            log_debug(f"✂️ отсечено {len(results) - len(kept)} суждений", _LOG)
        return kept


__all__ = ["DEFAULT_PRODUCT_CAP", "Partial", "InferenceEngine"]
