"""Проверка выводов двусторонней системы.

Каждое правило описано генератором: он перебирает кандидатов на главную
формулу заключения и выдаёт :class:`RuleMatch` для каждого, при котором
посылки совпадают со схемой. Строки в потоке: пояснения, почему
очередной кандидат не подошёл; последнее из них попадает в отчёт.

Стороны секвенции: множества, поэтому посылка может как убрать главную
формулу со своей стороны, так и сохранить её.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Dict, Iterable, Iterator, List, Optional, Tuple, Union

from src.domain.entities.judgements import Side
from src.domain.entities.pcf import (
    NAT,
    POK,
    KernelDerivation,
    PAbs,
    PApp,
    PcfType,
    PFix,
    PIfZ,
    PLet,
    PNec,
    POk,
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
from src.domain.entities.reports import CheckReport
from src.domain.services.kernel.pcf_types import admissible_codomain, disjoint, two_sided_type_error
from src.infrastructure.logging.logging_setup import log_debug

_LOG = __name__

LEFT, RIGHT = Side.LEFT, Side.RIGHT

Focus = Tuple[Side, Typing]


@dataclass(frozen=True)
class RuleMatch:
    """Удачное сопоставление узла со схемой правила.

    ``foci`` хранит по одной формуле на посылку: ту, которую правило добавило
    в эту посылку (её сторона и сама типизация).
    """

    principal: Typing
    side: Side
    foci: Tuple[Focus, ...] = ()
    data: Tuple[PcfType, ...] = ()


Attempt = Union[RuleMatch, str]


def _ordered(typings: Iterable[Typing]) -> List[Typing]:
    return sorted(typings, key=repr)


class _Node:
    def __init__(self, d: KernelDerivation) -> None:
        self.d = d
        self.left = d.conclusion.left
        self.right = d.conclusion.right

    def on(self, side: Side, kind: type | Tuple[type, ...], ty: type | None = None) -> List[Typing]:
        pool = self.left if side is LEFT else self.right
        return [
            t for t in _ordered(pool)
            if isinstance(t.subject, kind) and (ty is None or isinstance(t.type, ty))
        ]

    def premise(self, index: int) -> Sequent:
        return self.d.premises[index].conclusion

    def fits(
        self,
        index: int,
        side: Side,
        principal: Typing,
        left_new: Iterable[Typing] = (),
        right_new: Iterable[Typing] = (),
    ) -> bool:
        got = self.premise(index)
        new_l, new_r = frozenset(left_new), frozenset(right_new)
        if side is LEFT:
            lefts = {(self.left - {principal}) | new_l, self.left | new_l}
            rights = {self.right | new_r}
        else:
            lefts = {self.left | new_l}
            rights = {(self.right - {principal}) | new_r, self.right | new_r}
        return got.left in lefts and got.right in rights

    def stale(self, *names: str) -> Optional[str]:
        clash = sorted(set(names) & self.d.conclusion.free_names())
        if clash:
            return f"bound variable(s) {clash} occur free in the side formulas"
        return None


# ---------------------------------------------------------------- структурные
def _id(n: _Node) -> Iterator[Attempt]:
    for t in _ordered(n.left & n.right):
        if t.is_variable:
            yield RuleMatch(t, LEFT)
    yield "no variable typing occurs on both sides"


def _dis(n: _Node) -> Iterator[Attempt]:
    if len(n.d.side) != 2:
        yield "Dis needs the recorded disjoint pair (A, B)"
        return
    a, b = n.d.side
    if not disjoint(a, b):
        yield "recorded types are not disjoint"
        return
    for t in _ordered(n.left):
        if t.type != a:
            continue
        new = Typing(t.subject, b)
        if n.fits(0, LEFT, t, right_new=[new]):
            yield RuleMatch(t, LEFT, ((RIGHT, new),), (a, b))
    yield "premise does not affirm the disjoint typing"


# ---------------------------------------------------------------- правые
def _zero_r(n: _Node) -> Iterator[Attempt]:
    for t in n.on(RIGHT, PZero):
        if t.type == NAT:
            yield RuleMatch(t, RIGHT)
    yield "no zero : Nat on the right"


def _num_r(kind: type) -> Callable[[_Node], Iterator[Attempt]]:
    def rule(n: _Node) -> Iterator[Attempt]:
        for t in n.on(RIGHT, kind):
            new = Typing(t.subject.arg, NAT)
            if t.type == NAT and n.fits(0, RIGHT, t, right_new=[new]):
                yield RuleMatch(t, RIGHT, ((RIGHT, new),))
        yield "premise must type the argument as Nat on the right"

    return rule


def _let_r(n: _Node) -> Iterator[Attempt]:
    for t in n.on(RIGHT, PLet):
        m: PLet = t.subject
        stale = n.stale(m.left, m.right)
        if stale:
            yield stale
            continue
        for c in _ordered(n.premise(0).right):
            if c.subject != m.scrutinee or not isinstance(c.type, PProd):
                continue
            body = Typing(m.body, t.type)
            bound = [Typing(PVar(m.left), c.type.left), Typing(PVar(m.right), c.type.right)]
            if n.fits(0, RIGHT, t, right_new=[c]) and n.fits(1, RIGHT, t, left_new=bound, right_new=[body]):
                yield RuleMatch(t, RIGHT, ((RIGHT, c), (RIGHT, body)), (c.type.left, c.type.right))
    yield "premises do not match LetR"


def _app_r(n: _Node) -> Iterator[Attempt]:
    for t in n.on(RIGHT, PApp):
        for c in _ordered(n.premise(0).right):
            if c.subject != t.subject.fn or not isinstance(c.type, PTo) or c.type.cod != t.type:
                continue
            arg = Typing(t.subject.arg, c.type.dom)
            if n.fits(0, RIGHT, t, right_new=[c]) and n.fits(1, RIGHT, t, right_new=[arg]):
                yield RuleMatch(t, RIGHT, ((RIGHT, c), (RIGHT, arg)), (c.type.dom,))
    yield "premises do not match AppR"


def _pair_r(n: _Node) -> Iterator[Attempt]:
    for t in n.on(RIGHT, PPair, PProd):
        first = Typing(t.subject.first, t.type.left)
        second = Typing(t.subject.second, t.type.right)
        if n.fits(0, RIGHT, t, right_new=[first]) and n.fits(1, RIGHT, t, right_new=[second]):
            yield RuleMatch(t, RIGHT, ((RIGHT, first), (RIGHT, second)))
    yield "premises do not match PairR"


def _abs_r(n: _Node) -> Iterator[Attempt]:
    for t in n.on(RIGHT, PAbs, PTo):
        stale = n.stale(t.subject.param)
        if stale:
            yield stale
            continue
        param = Typing(PVar(t.subject.param), t.type.dom)
        body = Typing(t.subject.body, t.type.cod)
        if n.fits(0, RIGHT, t, left_new=[param], right_new=[body]):
            yield RuleMatch(t, RIGHT, ((RIGHT, body),))
    yield "premise does not match AbsR"


def _abn_r(n: _Node) -> Iterator[Attempt]:
    for t in n.on(RIGHT, PAbs, PNec):
        if not admissible_codomain(t.type.cod):
            yield "AbnR codomain is not finitely verifiable"
            continue
        stale = n.stale(t.subject.param)
        if stale:
            yield stale
            continue
        body = Typing(t.subject.body, t.type.cod)
        param = Typing(PVar(t.subject.param), t.type.dom)
        if n.fits(0, RIGHT, t, left_new=[body], right_new=[param]):
            yield RuleMatch(t, RIGHT, ((LEFT, body),))
    yield "premise does not match AbnR"


def _pabn_r(n: _Node) -> Iterator[Attempt]:
    """Производное правило для ``λ(x, y).M : B × C ⤙ A``."""

    for t in n.on(RIGHT, PAbs, PNec):
        lam: PAbs = t.subject
        inner = lam.body
        if not (
            isinstance(inner, PLet)
            and inner.scrutinee == PVar(lam.param)
            and lam.param not in (inner.left, inner.right)
            and isinstance(t.type.dom, PProd)
        ):
            continue
        if not admissible_codomain(t.type.cod):
            yield "PAbnR codomain is not finitely verifiable"
            continue
        stale = n.stale(lam.param, inner.left, inner.right)
        if stale:
            yield stale
            continue
        body = Typing(inner.body, t.type.cod)
        x = Typing(PVar(inner.left), t.type.dom.left)
        y = Typing(PVar(inner.right), t.type.dom.right)
        if n.fits(0, RIGHT, t, left_new=[body], right_new=[x]) and n.fits(1, RIGHT, t, left_new=[body], right_new=[y]):
            yield RuleMatch(t, RIGHT, ((LEFT, body), (LEFT, body)), (t.type.dom.left, t.type.dom.right, t.type.cod))
    yield "premises do not match PAbnR"


def _fix_r(n: _Node) -> Iterator[Attempt]:
    for t in n.on(RIGHT, PFix):
        stale = n.stale(t.subject.name)
        if stale:
            yield stale
            continue
        hyp = Typing(PVar(t.subject.name), t.type)
        body = Typing(t.subject.body, t.type)
        if n.fits(0, RIGHT, t, left_new=[hyp], right_new=[body]):
            yield RuleMatch(t, RIGHT, ((RIGHT, body),))
    yield "premise does not match FixR"


def _ifz_r(n: _Node) -> Iterator[Attempt]:
    for t in n.on(RIGHT, PIfZ):
        guard = Typing(t.subject.guard, NAT)
        zb = Typing(t.subject.zero_branch, t.type)
        sb = Typing(t.subject.succ_branch, t.type)
        if all(n.fits(i, RIGHT, t, right_new=[new]) for i, new in enumerate((guard, zb, sb))):
            yield RuleMatch(t, RIGHT, ((RIGHT, guard), (RIGHT, zb), (RIGHT, sb)))
    yield "premises do not match IfZR"


# ---------------------------------------------------------------- левые
def _num_l(kind: type, ty: PcfType) -> Callable[[_Node], Iterator[Attempt]]:
    """SuccL/PredL при ``ty = Nat``, OkSL/OkPL при ``ty = Ok``."""

    def rule(n: _Node) -> Iterator[Attempt]:
        for t in n.on(LEFT, kind):
            new = Typing(t.subject.arg, NAT)
            if t.type == ty and n.fits(0, LEFT, t, left_new=[new]):
                yield RuleMatch(t, LEFT, ((LEFT, new),))
        yield "premise must assume the argument is Nat"

    return rule


def _app_l(n: _Node) -> Iterator[Attempt]:
    for t in n.on(LEFT, PApp):
        for c in _ordered(n.premise(0).right):
            if c.subject != t.subject.fn or not isinstance(c.type, PNec) or c.type.cod != t.type:
                continue
            arg = Typing(t.subject.arg, c.type.dom)
            if n.fits(0, LEFT, t, right_new=[c]) and n.fits(1, LEFT, t, left_new=[arg]):
                yield RuleMatch(t, LEFT, ((RIGHT, c), (LEFT, arg)), (c.type.dom,))
    yield "premises do not match AppL"


def _pair_l(n: _Node) -> Iterator[Attempt]:
    for t in n.on(LEFT, PPair, PProd):
        for new in (Typing(t.subject.first, t.type.left), Typing(t.subject.second, t.type.right)):
            if n.fits(0, LEFT, t, left_new=[new]):
                yield RuleMatch(t, LEFT, ((LEFT, new),))
    yield "premise must refute one component"


def _let_l1(n: _Node) -> Iterator[Attempt]:
    for t in n.on(LEFT, PLet):
        stale = n.stale(t.subject.left, t.subject.right)
        if stale:
            yield stale
            continue
        body = Typing(t.subject.body, t.type)
        if n.fits(0, LEFT, t, left_new=[body]):
            yield RuleMatch(t, LEFT, ((LEFT, body),))
    yield "premise does not match LetL1"


def _let_l2(n: _Node) -> Iterator[Attempt]:
    for t in n.on(LEFT, PLet):
        m: PLet = t.subject
        stale = n.stale(m.left, m.right)
        if stale:
            yield stale
            continue
        body = Typing(m.body, t.type)
        for c in _ordered(n.premise(0).left):
            if c.subject != m.scrutinee or not isinstance(c.type, PProd):
                continue
            x = Typing(PVar(m.left), c.type.left)
            y = Typing(PVar(m.right), c.type.right)
            if (
                n.fits(0, LEFT, t, left_new=[c])
                and n.fits(1, LEFT, t, left_new=[body], right_new=[x])
                and n.fits(2, LEFT, t, left_new=[body], right_new=[y])
            ):
                yield RuleMatch(t, LEFT, ((LEFT, c), (LEFT, body), (LEFT, body)), (c.type.left, c.type.right))
    yield "premises do not match LetL2"


def _ifz_l1(n: _Node) -> Iterator[Attempt]:
    for t in n.on(LEFT, PIfZ):
        guard = Typing(t.subject.guard, NAT)
        if n.fits(0, LEFT, t, left_new=[guard]):
            yield RuleMatch(t, LEFT, ((LEFT, guard),))
    yield "premise must assume the guard is Nat"


def _ifz_l2(n: _Node) -> Iterator[Attempt]:
    for t in n.on(LEFT, PIfZ):
        zb = Typing(t.subject.zero_branch, t.type)
        sb = Typing(t.subject.succ_branch, t.type)
        if n.fits(0, LEFT, t, left_new=[zb]) and n.fits(1, LEFT, t, left_new=[sb]):
            yield RuleMatch(t, LEFT, ((LEFT, zb), (LEFT, sb)))
    yield "premises must refute both branches"


# ---------------------------------------------------------------- Ok
def _ok_var_r(n: _Node) -> Iterator[Attempt]:
    for t in n.on(RIGHT, PVar):
        if isinstance(t.type, POk):
            yield RuleMatch(t, RIGHT)
    yield "no variable typed Ok on the right"


def _ok_l(n: _Node) -> Iterator[Attempt]:
    for t in _ordered(n.left):
        new = Typing(t.subject, POK)
        if n.fits(0, LEFT, t, left_new=[new]):
            yield RuleMatch(t, LEFT, ((LEFT, new),))
    yield "premise must assume the subject is Ok"


def _ok_r(n: _Node) -> Iterator[Attempt]:
    for t in _ordered(n.right):
        if not isinstance(t.type, POk):
            continue
        for c in _ordered(n.premise(0).right):
            if c.subject == t.subject and n.fits(0, RIGHT, t, right_new=[c]):
                yield RuleMatch(t, RIGHT, ((RIGHT, c),))
    yield "premise must affirm some type of the subject"


def _ok_ap_l1(n: _Node) -> Iterator[Attempt]:
    for t in n.on(LEFT, PApp, POk):
        for c in _ordered(n.premise(0).left):
            if c.subject != t.subject.fn or not isinstance(c.type, PNec) or not isinstance(c.type.dom, POk):
                continue
            if n.fits(0, LEFT, t, left_new=[c]):
                yield RuleMatch(t, LEFT, ((LEFT, c),), (c.type.cod,))
    yield "premise must assume the function is Ok ~> A"


def _ok_ap_l2(n: _Node) -> Iterator[Attempt]:
    for t in n.on(LEFT, PApp, POk):
        new = Typing(t.subject.arg, POK)
        if n.fits(0, LEFT, t, left_new=[new]):
            yield RuleMatch(t, LEFT, ((LEFT, new),))
    yield "premise must assume the argument is Ok"


def _ok_pr_l(n: _Node) -> Iterator[Attempt]:
    for t in n.on(LEFT, PPair, POk):
        for new in (Typing(t.subject.first, POK), Typing(t.subject.second, POK)):
            if n.fits(0, LEFT, t, left_new=[new]):
                yield RuleMatch(t, LEFT, ((LEFT, new),))
    yield "premise must refute one component"


RuleFn = Callable[[_Node], Iterator[Attempt]]

TWO_SIDED_RULES: Dict[str, Tuple[int, RuleFn]] = {
    "Id": (0, _id),
    "Dis": (1, _dis),
    "ZeroR": (0, _zero_r),
    "SuccR": (1, _num_r(PSucc)),
    "PredR": (1, _num_r(PPred)),
    "LetR": (2, _let_r),
    "AppR": (2, _app_r),
    "PairR": (2, _pair_r),
    "AbsR": (1, _abs_r),
    "AbnR": (1, _abn_r),
    "PAbnR": (2, _pabn_r),
    "FixR": (1, _fix_r),
    "IfZR": (3, _ifz_r),
    "SuccL": (1, _num_l(PSucc, NAT)),
    "PredL": (1, _num_l(PPred, NAT)),
    "AppL": (2, _app_l),
    "PairL": (1, _pair_l),
    "LetL1": (1, _let_l1),
    "LetL2": (3, _let_l2),
    "IfZL1": (1, _ifz_l1),
    "IfZL2": (2, _ifz_l2),
    "OkVarR": (0, _ok_var_r),
    "OkL": (1, _ok_l),
    "OkR": (1, _ok_r),
    "OkApL1": (1, _ok_ap_l1),
    "OkApL2": (1, _ok_ap_l2),
    "OkSL": (1, _num_l(PSucc, POK)),
    "OkPL": (1, _num_l(PPred, POK)),
    "OkPrL": (1, _ok_pr_l),
}


def match_two_sided(d: KernelDerivation) -> Tuple[List[RuleMatch], Optional[str]]:
    """Все сопоставления узла со схемой его правила и пояснение неудачи."""

    entry = TWO_SIDED_RULES.get(d.rule)
    if entry is None:
        return [], f"unknown two-sided rule {d.rule}"
    arity, rule = entry
    if len(d.premises) != arity:
        return [], f"{d.rule} takes {arity} premise(s), got {len(d.premises)}"
    matches: List[RuleMatch] = []
    note: Optional[str] = None
    for attempt in rule(_Node(d)):
        if isinstance(attempt, RuleMatch):
            matches.append(attempt)
        else:
            note = attempt
    return matches, note


def _check(d: KernelDerivation, path: Tuple[int, ...]) -> CheckReport:
    for typing in _ordered(d.conclusion.left | d.conclusion.right):
        problem = two_sided_type_error(typing.type)
        if problem:
            return CheckReport(False, path, d.rule, problem)
    matches, note = match_two_sided(d)
    if not matches:
        return CheckReport(False, path, d.rule, note or "node does not match the rule")
    for i, premise in enumerate(d.premises):
        report = _check(premise, path + (i,))
        if not report:
            return report
    return CheckReport.success()


def check_two_sided(d: KernelDerivation) -> CheckReport:
    """Проверить каждый узел; отчёт указывает первый неверный."""

    report = _check(d, ())
    log_debug(f"⚖️ check_two_sided: {report.describe()} | nodes: {d.size}", _LOG)
    return report


__all__ = ["RuleMatch", "TWO_SIDED_RULES", "match_two_sided", "check_two_sided"]
