"""Ограниченный обратный поиск выводов в односторонней системе.

Поиск неполон: «не найдено» на глубине ``depth`` не опровергает
суждение. Глубина: высота дерева вывода, аксиома имеет высоту 1.
Правила с типом, которого нет в заключении (App1, Let1, Let2, Disj),
перебирают конечные наборы кандидатов.
"""

from __future__ import annotations

from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Tuple

from src.domain.entities.pcf import (
    NAT,
    POK,
    KernelDerivation,
    PAbs,
    PApp,
    PComp,
    PcfTerm,
    PcfType,
    PFix,
    PIfZ,
    PLet,
    PPair,
    PPred,
    PProd,
    PSucc,
    PTo,
    PVar,
    PZero,
    Sequent,
    Typing,
)
from src.domain.services.kernel.pcf_types import disjoint, expand_necessity
from src.infrastructure.logging.logging_setup import log_debug

_LOG = __name__

OK_C = PComp(POK)
NAT_C = PComp(NAT)
OK_PAIR = PProd(POK, POK)
OK_FN = PTo(POK, POK)

DISJ_WITNESSES: Tuple[PcfType, ...] = (NAT, OK_PAIR, OK_FN)
APP_DOMAINS: Tuple[PcfType, ...] = (NAT, NAT_C, POK, OK_PAIR, PComp(OK_PAIR), OK_FN, PComp(OK_FN))
LET_PRODUCTS: Tuple[PcfType, ...] = (OK_PAIR, PProd(NAT, NAT))
LET_COMPONENTS: Tuple[PcfType, ...] = (POK, NAT)

Env = FrozenSet[Typing]
Key = Tuple[Env, FrozenSet[str], PcfTerm, PcfType, int]


def _unique(types: Iterable[PcfType]) -> List[PcfType]:
    seen: List[PcfType] = []
    for ty in types:
        if ty not in seen:
            seen.append(ty)
    return seen


class _Search:
    def __init__(self) -> None:
        self.memo: Dict[Key, Optional[KernelDerivation]] = {}
        self.visited = 0

    def prove(
        self, env: Env, m: PcfTerm, a: PcfType, depth: int, fixed: FrozenSet[str] = frozenset()
    ) -> Optional[KernelDerivation]:
        if depth < 1:
            return None
        key = (env, fixed, m, a, depth)
        if key in self.memo:
            return self.memo[key]
        self.visited += 1
        found = next(self._candidates(env, m, a, depth, fixed), None)
        self.memo[key] = found
        return found

    # ------------------------------------------------------------ helpers
    @staticmethod
    def _node(rule: str, env: Env, m: PcfTerm, a: PcfType, *premises: KernelDerivation, side=()) -> KernelDerivation:
        return KernelDerivation(rule, Sequent.one_sided(env, m, a), tuple(premises), tuple(side))

    def _all(
        self, depth: int, fixed: FrozenSet[str], *goals: Tuple[Env, PcfTerm, PcfType]
    ) -> Optional[Tuple[KernelDerivation, ...]]:
        out = []
        for env, m, a in goals:
            found = self.prove(env, m, a, depth - 1, fixed)
            if found is None:
                return None
            out.append(found)
        return tuple(out)

    @staticmethod
    def _names(env: Env) -> FrozenSet[str]:
        return frozenset(t.subject.name for t in env)  # type: ignore[union-attr]

    # ------------------------------------------------------------ rules
    def _candidates(
        self, env: Env, m: PcfTerm, a: PcfType, depth: int, fixed: FrozenSet[str]
    ) -> Iterator[KernelDerivation]:
        yield from self._syntax(env, m, a, depth, fixed)
        if a == POK:
            yield self._node("Ok", env, m, a)
        usable = frozenset(t for t in env if t.subject.name not in fixed)  # type: ignore[union-attr]
        if any(t.type == OK_C for t in usable):
            yield self._node("OkC1", env, m, a)
        if a != OK_C:
            got = self._all(depth, fixed, (env, m, OK_C))
            if got:
                yield self._node("OkC2", env, m, a, *got)
        if isinstance(a, PComp):
            for b in DISJ_WITNESSES:
                if disjoint(a.inner, b):
                    got = self._all(depth, fixed, (env, m, b))
                    if got:
                        yield self._node("Disj", env, m, a, *got, side=(a.inner, b))
        if any(Typing(t.subject, PComp(t.type)) in usable for t in usable):
            yield self._node("Contra", env, m, a)

    def _syntax(
        self, env: Env, m: PcfTerm, a: PcfType, depth: int, fixed: FrozenSet[str]
    ) -> Iterator[KernelDerivation]:
        if isinstance(m, PVar):
            if Typing(m, a) in env:
                yield self._node("Var", env, m, a)
        elif isinstance(m, PZero):
            if a == NAT:
                yield self._node("Zero", env, m, a)
        elif isinstance(m, (PSucc, PPred)):
            prefix = "Succ" if isinstance(m, PSucc) else "Pred"
            if a == NAT:
                got = self._all(depth, fixed, (env, m.arg, NAT))
                if got:
                    yield self._node(f"{prefix}1", env, m, a, *got)
            got = self._all(depth, fixed, (env, m.arg, NAT_C))
            if got:
                yield self._node(f"{prefix}2", env, m, a, *got)
        elif isinstance(m, PAbs):
            if isinstance(a, PTo) and m.param not in self._names(env):
                got = self._all(depth, fixed, (env | {Typing(PVar(m.param), a.dom)}, m.body, a.cod))
                if got:
                    yield self._node("Abs", env, m, a, *got)
        elif isinstance(m, PFix):
            if m.name not in self._names(env):
                got = self._all(depth, fixed | {m.name}, (env | {Typing(PVar(m.name), a)}, m.body, a))
                if got:
                    yield self._node("Fix", env, m, a, *got)
        elif isinstance(m, PLet):
            yield from self._let(env, m, a, depth, fixed)
        elif isinstance(m, PApp):
            yield from self._app(env, m, a, depth, fixed)
        elif isinstance(m, PPair):
            yield from self._pair(env, m, a, depth, fixed)
        elif isinstance(m, PIfZ):
            got = self._all(depth, fixed, (env, m.guard, NAT_C))
            if got:
                yield self._node("IfZ1", env, m, a, *got)
            got = self._all(depth, fixed, (env, m.zero_branch, a), (env, m.succ_branch, a))
            if got:
                yield self._node("IfZ2", env, m, a, *got)

    def _let(
        self, env: Env, m: PLet, a: PcfType, depth: int, fixed: FrozenSet[str]
    ) -> Iterator[KernelDerivation]:
        if {m.left, m.right} & self._names(env):
            return
        got = self._all(depth, fixed, (env, m.body, a))
        if got:
            yield self._node("Let3", env, m, a, *got)
        for product in LET_PRODUCTS:
            bound = {Typing(PVar(m.left), product.left), Typing(PVar(m.right), product.right)}  # type: ignore[union-attr]
            got = self._all(depth, fixed, (env, m.scrutinee, product), (env | bound, m.body, a))
            if got:
                yield self._node("Let1", env, m, a, *got)
        for b1 in LET_COMPONENTS:
            for b2 in LET_COMPONENTS:
                got = self._all(
                    depth,
                    fixed,
                    (env, m.scrutinee, PComp(PProd(b1, b2))),
                    (env | {Typing(PVar(m.left), PComp(b1))}, m.body, a),
                    (env | {Typing(PVar(m.right), PComp(b2))}, m.body, a),
                )
                if got:
                    yield self._node("Let2", env, m, a, *got)

    def _app(
        self, env: Env, m: PApp, a: PcfType, depth: int, fixed: FrozenSet[str]
    ) -> Iterator[KernelDerivation]:
        known = [t.type.dom for t in sorted(env, key=repr) if isinstance(t.type, PTo) and t.type.cod == a]
        for b in _unique([*known, *APP_DOMAINS]):
            got = self._all(depth, fixed, (env, m.fn, PTo(b, a)), (env, m.arg, b))
            if got:
                yield self._node("App1", env, m, a, *got)
        got = self._all(depth, fixed, (env, m.fn, PComp(PTo(OK_C, a))))
        if got:
            yield self._node("App2", env, m, a, *got)
        got = self._all(depth, fixed, (env, m.arg, OK_C))
        if got:
            yield self._node("App3", env, m, a, *got)

    def _pair(
        self, env: Env, m: PPair, a: PcfType, depth: int, fixed: FrozenSet[str]
    ) -> Iterator[KernelDerivation]:
        if isinstance(a, PProd):
            got = self._all(depth, fixed, (env, m.first, a.left), (env, m.second, a.right))
            if got:
                yield self._node("Pair1", env, m, a, *got)
        for part in (m.first, m.second):
            got = self._all(depth, fixed, (env, part, OK_C))
            if got:
                yield self._node("Pair2", env, m, a, *got)
        if isinstance(a, PComp) and isinstance(a.inner, PProd):
            for part, ty in ((m.first, a.inner.left), (m.second, a.inner.right)):
                got = self._all(depth, fixed, (env, part, PComp(ty)))
                if got:
                    yield self._node("Pair3", env, m, a, *got)


def prove_one_sided(
    env: Iterable[Typing], m: PcfTerm, a: PcfType, depth: int
) -> Optional[KernelDerivation]:
    """Найти вывод ``env ⊢ m : a`` высоты не больше ``depth`` или ``None``.

    ``B ⤙ A`` в типах раскрывается до поиска; найденный вывод проходит
    :func:`check_one_sided`.
    """

    if depth < 1:
        raise ValueError("depth must be >= 1")
    normal_env = frozenset(Typing(t.subject, expand_necessity(t.type)) for t in env)
    search = _Search()
    found = search.prove(normal_env, m, expand_necessity(a), depth)
    log_debug(
        f"🔍 prove_one_sided: {'найден' if found else 'не найден'} | depth: {depth} | states: {search.visited}",
        _LOG,
    )
    return found


__all__ = ["DISJ_WITNESSES", "APP_DOMAINS", "prove_one_sided"]
