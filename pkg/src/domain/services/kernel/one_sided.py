"""Проверка выводов односторонней системы с дополнениями.

Типы сравниваются после раскрытия ``B ⤙ A`` в ``B^c → A^c``. Окружение
каждого узла: множество типизаций переменных; посылки наследуют его
целиком, добавляя только связанные правилом переменные.

Имя, связанное ``Fix``, подставляется термом ``fix x -> M``, а не значением,
поэтому OkC1 и Contra не срабатывают на таких именах во всём поддереве.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Dict, FrozenSet, Optional, Tuple

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
from src.domain.services.kernel.pcf_types import disjoint, expand_necessity
from src.infrastructure.logging.logging_setup import log_debug

_LOG = __name__

OK_C = PComp(POK)
NAT_C = PComp(NAT)


@dataclass(frozen=True)
class _View:
    env: FrozenSet[Typing]
    subject: PcfTerm
    type: PcfType

    @property
    def names(self) -> FrozenSet[str]:
        return frozenset(t.subject.name for t in self.env)  # type: ignore[union-attr]


def _normal_env(typings) -> FrozenSet[Typing]:
    return frozenset(Typing(t.subject, expand_necessity(t.type)) for t in typings)


def view(sequent: Sequent) -> Optional[_View]:
    """Нормальная форма одностороннего суждения или ``None``."""

    goal = sequent.goal
    if goal is None or not all(t.is_variable for t in sequent.left):
        return None
    return _View(_normal_env(sequent.left), goal.subject, expand_necessity(goal.type))


class _Node:
    def __init__(self, d: KernelDerivation, here: _View, fix_bound: FrozenSet[str] = frozenset()) -> None:
        self.d = d
        self.here = here
        self.fix_bound = fix_bound
        self.premises = tuple(view(p.conclusion) for p in d.premises)

    def premise(self, i: int) -> Optional[_View]:
        return self.premises[i]

    def expects(self, i: int, subject: PcfTerm, ty: PcfType, extra: Tuple[Typing, ...] = ()) -> bool:
        p = self.premises[i]
        want_env = self.here.env | _normal_env(extra)
        return p is not None and p.env == want_env and p.subject == subject and p.type == ty

    def fresh(self, *names: str) -> Optional[str]:
        clash = sorted(set(names) & self.here.names)
        if clash:
            return f"bound variable(s) {clash} are mentioned in the environment"
        return None

    def value_typings(self) -> FrozenSet[Typing]:
        """Типизации имён, которые при подстановке заменяются значениями."""

        return frozenset(t for t in self.here.env if t.subject.name not in self.fix_bound)  # type: ignore[union-attr]


Check = Optional[str]


def _ok(n: _Node) -> Check:
    return None if n.here.type == POK else "conclusion type must be Ok"


def _ok_c1(n: _Node) -> Check:
    if any(t.type == OK_C for t in n.value_typings()):
        return None
    if any(t.type == OK_C for t in n.here.env):
        return "x : Ok^c is bound by Fix and stands for a non-value"
    return "environment has no x : Ok^c"


def _ok_c2(n: _Node) -> Check:
    return None if n.expects(0, n.here.subject, OK_C) else "premise must type the subject Ok^c"


def _contra(n: _Node) -> Check:
    usable = n.value_typings()
    for t in usable:
        if Typing(t.subject, PComp(t.type)) in usable:
            return None
    return "environment holds no x : A together with x : A^c"


def _var(n: _Node) -> Check:
    if isinstance(n.here.subject, PVar) and Typing(n.here.subject, n.here.type) in n.here.env:
        return None
    return "typing is not in the environment"


def _disj(n: _Node) -> Check:
    if not isinstance(n.here.type, PComp):
        return "Disj concludes a complement type"
    if len(n.d.side) != 2:
        return "Disj needs the recorded disjoint pair (A, B)"
    a, b = (expand_necessity(t) for t in n.d.side)
    if a != n.here.type.inner:
        return "recorded pair does not match the conclusion"
    if not disjoint(a, b):
        return "recorded types are not disjoint"
    return None if n.expects(0, n.here.subject, b) else "premise must affirm the disjoint type"


def _zero(n: _Node) -> Check:
    if isinstance(n.here.subject, PZero) and n.here.type == NAT:
        return None
    return "Zero types zero : Nat only"


def _num(kind: type, complemented: bool) -> Callable[[_Node], Check]:
    def rule(n: _Node) -> Check:
        m = n.here.subject
        if not isinstance(m, kind):
            return f"subject is not {kind.__name__}"
        if complemented:
            return None if n.expects(0, m.arg, NAT_C) else "premise must type the argument Nat^c"
        if n.here.type != NAT:
            return "conclusion type must be Nat"
        return None if n.expects(0, m.arg, NAT) else "premise must type the argument Nat"

    return rule


def _abs(n: _Node) -> Check:
    m, ty = n.here.subject, n.here.type
    if not isinstance(m, PAbs) or not isinstance(ty, PTo):
        return "Abs types an abstraction with an arrow"
    return n.fresh(m.param) or (
        None if n.expects(0, m.body, ty.cod, (Typing(PVar(m.param), ty.dom),)) else "premise does not match Abs"
    )


def _fix(n: _Node) -> Check:
    m = n.here.subject
    if not isinstance(m, PFix):
        return "subject is not a fixpoint"
    return n.fresh(m.name) or (
        None if n.expects(0, m.body, n.here.type, (Typing(PVar(m.name), n.here.type),)) else "premise does not match Fix"
    )


def _let(n: _Node) -> Optional[PLet]:
    m = n.here.subject
    return m if isinstance(m, PLet) else None


def _let1(n: _Node) -> Check:
    m = _let(n)
    if m is None:
        return "subject is not a let"
    stale = n.fresh(m.left, m.right)
    if stale:
        return stale
    p = n.premise(0)
    if p is None or not isinstance(p.type, PProd) or not n.expects(0, m.scrutinee, p.type):
        return "first premise must type the scrutinee as a product"
    bound = (Typing(PVar(m.left), p.type.left), Typing(PVar(m.right), p.type.right))
    return None if n.expects(1, m.body, n.here.type, bound) else "second premise does not match Let1"


def _let2(n: _Node) -> Check:
    m = _let(n)
    if m is None:
        return "subject is not a let"
    stale = n.fresh(m.left, m.right)
    if stale:
        return stale
    p = n.premise(0)
    if (
        p is None
        or not isinstance(p.type, PComp)
        or not isinstance(p.type.inner, PProd)
        or not n.expects(0, m.scrutinee, p.type)
    ):
        return "first premise must type the scrutinee as a complemented product"
    b1, b2 = p.type.inner.left, p.type.inner.right
    if not n.expects(1, m.body, n.here.type, (Typing(PVar(m.left), PComp(b1)),)):
        return "second premise does not match Let2"
    if not n.expects(2, m.body, n.here.type, (Typing(PVar(m.right), PComp(b2)),)):
        return "third premise does not match Let2"
    return None


def _let3(n: _Node) -> Check:
    m = _let(n)
    if m is None:
        return "subject is not a let"
    return n.fresh(m.left, m.right) or (
        None if n.expects(0, m.body, n.here.type) else "premise must type the body"
    )


def _app1(n: _Node) -> Check:
    m = n.here.subject
    if not isinstance(m, PApp):
        return "subject is not an application"
    p = n.premise(0)
    if p is None or not isinstance(p.type, PTo) or p.type.cod != n.here.type or not n.expects(0, m.fn, p.type):
        return "first premise must type the function with codomain of the conclusion"
    return None if n.expects(1, m.arg, p.type.dom) else "second premise must type the argument with the domain"


def _app2(n: _Node) -> Check:
    # Ok^c → X описывает все абстракции при любом X
    m = n.here.subject
    if not isinstance(m, PApp):
        return "subject is not an application"
    p = n.premise(0)
    if (
        p is not None
        and isinstance(p.type, PComp)
        and isinstance(p.type.inner, PTo)
        and p.type.inner.dom == OK_C
        and n.expects(0, m.fn, p.type)
    ):
        return None
    return "premise must type the function (Ok^c -> A)^c"


def _app3(n: _Node) -> Check:
    m = n.here.subject
    if not isinstance(m, PApp):
        return "subject is not an application"
    return None if n.expects(0, m.arg, OK_C) else "premise must type the argument Ok^c"


def _pair1(n: _Node) -> Check:
    m, ty = n.here.subject, n.here.type
    if not isinstance(m, PPair) or not isinstance(ty, PProd):
        return "Pair1 types a pair with a product"
    if n.expects(0, m.first, ty.left) and n.expects(1, m.second, ty.right):
        return None
    return "premises must type both components"


def _pair2(n: _Node) -> Check:
    m = n.here.subject
    if not isinstance(m, PPair):
        return "subject is not a pair"
    if n.expects(0, m.first, OK_C) or n.expects(0, m.second, OK_C):
        return None
    return "premise must type one component Ok^c"


def _pair3(n: _Node) -> Check:
    m, ty = n.here.subject, n.here.type
    if not isinstance(m, PPair) or not isinstance(ty, PComp) or not isinstance(ty.inner, PProd):
        return "Pair3 types a pair with a complemented product"
    if n.expects(0, m.first, PComp(ty.inner.left)) or n.expects(0, m.second, PComp(ty.inner.right)):
        return None
    return "premise must type one component with its complement"


def _ifz1(n: _Node) -> Check:
    m = n.here.subject
    if not isinstance(m, PIfZ):
        return "subject is not ifz"
    return None if n.expects(0, m.guard, NAT_C) else "premise must type the guard Nat^c"


def _ifz2(n: _Node) -> Check:
    m = n.here.subject
    if not isinstance(m, PIfZ):
        return "subject is not ifz"
    if n.expects(0, m.zero_branch, n.here.type) and n.expects(1, m.succ_branch, n.here.type):
        return None
    return "premises must type both branches"


ONE_SIDED_RULES: Dict[str, Tuple[int, Callable[[_Node], Check]]] = {
    "Ok": (0, _ok),
    "OkC1": (0, _ok_c1),
    "OkC2": (1, _ok_c2),
    "Contra": (0, _contra),
    "Var": (0, _var),
    "Disj": (1, _disj),
    "Zero": (0, _zero),
    "Succ1": (1, _num(PSucc, False)),
    "Succ2": (1, _num(PSucc, True)),
    "Pred1": (1, _num(PPred, False)),
    "Pred2": (1, _num(PPred, True)),
    "Abs": (1, _abs),
    "Fix": (1, _fix),
    "Let1": (2, _let1),
    "Let2": (3, _let2),
    "Let3": (1, _let3),
    "App1": (2, _app1),
    "App2": (1, _app2),
    "App3": (1, _app3),
    "Pair1": (2, _pair1),
    "Pair2": (1, _pair2),
    "Pair3": (1, _pair3),
    "IfZ1": (1, _ifz1),
    "IfZ2": (2, _ifz2),
}


def _check(d: KernelDerivation, path: Tuple[int, ...], fix_bound: FrozenSet[str]) -> CheckReport:
    here = view(d.conclusion)
    if here is None:
        return CheckReport(False, path, d.rule, "conclusion is not Γ ⊢ M : A over a type environment")
    entry = ONE_SIDED_RULES.get(d.rule)
    if entry is None:
        return CheckReport(False, path, d.rule, f"unknown one-sided rule {d.rule}")
    arity, rule = entry
    if len(d.premises) != arity:
        return CheckReport(False, path, d.rule, f"{d.rule} takes {arity} premise(s), got {len(d.premises)}")
    problem = rule(_Node(d, here, fix_bound))
    if problem:
        return CheckReport(False, path, d.rule, problem)
    if d.rule == "Fix":
        fix_bound = fix_bound | {here.subject.name}  # type: ignore[union-attr]
    for i, premise in enumerate(d.premises):
        report = _check(premise, path + (i,), fix_bound)
        if not report:
            return report
    return CheckReport.success()


def check_one_sided(d: KernelDerivation) -> CheckReport:
    report = _check(d, (), frozenset())
    log_debug(f"⚖️ check_one_sided: {report.describe()} | nodes: {d.size}", _LOG)
    return report


__all__ = ["ONE_SIDED_RULES", "check_one_sided", "view"]
