"""Ядро: PCF-подобный язык, его типы, секвенции и явные выводы.

Термы и типы отделены от языка с конструкторами: у PCF свои константы
(``zero``, ``succ``, ``pred``, ``ifz``) и свои правила редукции.

Двусторонняя секвенция: пара *множеств* типизаций ``Γ ⊢ Δ``.
Односторонняя: та же пара, у которой справа ровно одна типизация,
а слева только типизации переменных.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import FrozenSet, Iterable, Iterator, Tuple, Union

from src.domain.errors import WellFormednessError


# ---------------------------------------------------------------- термы
@dataclass(frozen=True)
class PZero:
    pass


@dataclass(frozen=True)
class PSucc:
    arg: "PcfTerm"


@dataclass(frozen=True)
class PPred:
    arg: "PcfTerm"


@dataclass(frozen=True)
class PIfZ:
    guard: "PcfTerm"
    zero_branch: "PcfTerm"
    succ_branch: "PcfTerm"


@dataclass(frozen=True)
class PVar:
    name: str


@dataclass(frozen=True)
class PAbs:
    param: str
    body: "PcfTerm"


@dataclass(frozen=True)
class PApp:
    fn: "PcfTerm"
    arg: "PcfTerm"


@dataclass(frozen=True)
class PFix:
    name: str
    body: "PcfTerm"


@dataclass(frozen=True)
class PPair:
    first: "PcfTerm"
    second: "PcfTerm"


@dataclass(frozen=True)
class PLet:
    """``let (left, right) = scrutinee in body``."""

    left: str
    right: str
    scrutinee: "PcfTerm"
    body: "PcfTerm"

    def __post_init__(self) -> None:
        if self.left == self.right:
            raise WellFormednessError(f"let binds {self.left} twice")


PcfTerm = Union[PZero, PSucc, PPred, PIfZ, PVar, PAbs, PApp, PFix, PPair, PLet]

ZERO = PZero()


def numeral(n: int) -> PcfTerm:
    if n < 0:
        raise ValueError("numerals are non-negative")
    term: PcfTerm = ZERO
    for _ in range(n):
        term = PSucc(term)
    return term


def numeral_value(term: PcfTerm) -> int | None:
    """``n`` для ``succⁿ(zero)``, иначе ``None``."""

    n = 0
    while isinstance(term, PSucc):
        term = term.arg
        n += 1
    return n if isinstance(term, PZero) else None


def div() -> PFix:
    return PFix("x", PVar("x"))


def identity() -> PAbs:
    return PAbs("x", PVar("x"))


def pcf_free_vars(term: PcfTerm) -> FrozenSet[str]:
    if isinstance(term, PVar):
        return frozenset({term.name})
    if isinstance(term, PZero):
        return frozenset()
    if isinstance(term, (PSucc, PPred)):
        return pcf_free_vars(term.arg)
    if isinstance(term, PIfZ):
        return pcf_free_vars(term.guard) | pcf_free_vars(term.zero_branch) | pcf_free_vars(term.succ_branch)
    if isinstance(term, PAbs):
        return pcf_free_vars(term.body) - {term.param}
    if isinstance(term, PFix):
        return pcf_free_vars(term.body) - {term.name}
    if isinstance(term, PApp):
        return pcf_free_vars(term.fn) | pcf_free_vars(term.arg)
    if isinstance(term, PPair):
        return pcf_free_vars(term.first) | pcf_free_vars(term.second)
    return pcf_free_vars(term.scrutinee) | (pcf_free_vars(term.body) - {term.left, term.right})


def pcf_vars(term: PcfTerm) -> FrozenSet[str]:
    """Все имена терма: свободные и связанные."""

    if isinstance(term, PVar):
        return frozenset({term.name})
    if isinstance(term, PZero):
        return frozenset()
    if isinstance(term, (PSucc, PPred)):
        return pcf_vars(term.arg)
    if isinstance(term, PIfZ):
        return pcf_vars(term.guard) | pcf_vars(term.zero_branch) | pcf_vars(term.succ_branch)
    if isinstance(term, PAbs):
        return pcf_vars(term.body) | {term.param}
    if isinstance(term, PFix):
        return pcf_vars(term.body) | {term.name}
    if isinstance(term, PApp):
        return pcf_vars(term.fn) | pcf_vars(term.arg)
    if isinstance(term, PPair):
        return pcf_vars(term.first) | pcf_vars(term.second)
    return pcf_vars(term.scrutinee) | pcf_vars(term.body) | {term.left, term.right}


def pattern_abs(left: str, right: str, body: PcfTerm) -> PAbs:
    """``fun (left, right) -> body`` как ``λp. let (left, right) = p in body``.

    Имя ``p`` выбирается детерминированно: первое из ``p, p1, p2, ...``,
    не встречающееся в теле и не совпадающее со связываемыми.
    """

    taken = pcf_vars(body) | {left, right}
    name, i = "p", 0
    while name in taken:
        i += 1
        name = f"p{i}"
    return PAbs(name, PLet(left, right, PVar(name), body))


# ---------------------------------------------------------------- типы
@dataclass(frozen=True)
class PNat:
    pass


@dataclass(frozen=True)
class POk:
    pass


@dataclass(frozen=True)
class PProd:
    left: "PcfType"
    right: "PcfType"


@dataclass(frozen=True)
class PTo:
    dom: "PcfType"
    cod: "PcfType"


@dataclass(frozen=True)
class PNec:
    dom: "PcfType"
    cod: "PcfType"


@dataclass(frozen=True)
class PComp:
    inner: "PcfType"


PcfType = Union[PNat, POk, PProd, PTo, PNec, PComp]

NAT = PNat()
POK = POk()


def comp(ty: PcfType) -> PComp:
    return PComp(ty)


def has_arrow(ty: PcfType) -> bool:
    if isinstance(ty, (PTo, PNec)):
        return True
    if isinstance(ty, PProd):
        return has_arrow(ty.left) or has_arrow(ty.right)
    if isinstance(ty, PComp):
        return has_arrow(ty.inner)
    return False


def has_complement(ty: PcfType) -> bool:
    if isinstance(ty, PComp):
        return True
    if isinstance(ty, PProd):
        return has_complement(ty.left) or has_complement(ty.right)
    if isinstance(ty, (PTo, PNec)):
        return has_complement(ty.dom) or has_complement(ty.cod)
    return False


# ---------------------------------------------------------------- суждения
@dataclass(frozen=True)
class Typing:
    subject: PcfTerm
    type: PcfType

    @property
    def is_variable(self) -> bool:
        return isinstance(self.subject, PVar)


@dataclass(frozen=True)
class Sequent:
    left: FrozenSet[Typing] = frozenset()
    right: FrozenSet[Typing] = frozenset()

    @classmethod
    def of(cls, left: Iterable[Typing] = (), right: Iterable[Typing] = ()) -> "Sequent":
        return cls(frozenset(left), frozenset(right))

    @classmethod
    def one_sided(cls, env: Iterable[Typing], subject: PcfTerm, ty: PcfType) -> "Sequent":
        return cls(frozenset(env), frozenset({Typing(subject, ty)}))

    @property
    def goal(self) -> Typing | None:
        """Единственная типизация справа, если она одна."""

        if len(self.right) != 1:
            return None
        return next(iter(self.right))

    def free_names(self) -> FrozenSet[str]:
        names: FrozenSet[str] = frozenset()
        for typing in self.left | self.right:
            names |= pcf_free_vars(typing.subject)
        return names


@dataclass(frozen=True)
class KernelDerivation:
    """Узел явного вывода.

    ``side``: данные побочного условия. Для ``Dis``/``Disj`` это пара
    ``(A, B)``: типизация ``M : A`` слева (или ``M : A^c`` справа)
    получена из ``M : B`` при ``A ‖ B``.
    """

    rule: str
    conclusion: Sequent
    premises: Tuple["KernelDerivation", ...] = ()
    side: Tuple[PcfType, ...] = ()

    def walk(self) -> Iterator["KernelDerivation"]:
        yield self
        for premise in self.premises:
            yield from premise.walk()

    @property
    def size(self) -> int:
        return sum(1 for _ in self.walk())

    @property
    def height(self) -> int:
        return 1 + max((p.height for p in self.premises), default=0)


__all__ = [
    "PZero",
    "PSucc",
    "PPred",
    "PIfZ",
    "PVar",
    "PAbs",
    "PApp",
    "PFix",
    "PPair",
    "PLet",
    "PcfTerm",
    "ZERO",
    "numeral",
    "numeral_value",
    "div",
    "identity",
    "pcf_free_vars",
    "pcf_vars",
    "pattern_abs",
    "PNat",
    "POk",
    "PProd",
    "PTo",
    "PNec",
    "PComp",
    "PcfType",
    "NAT",
    "POK",
    "comp",
    "has_arrow",
    "has_complement",
    "Typing",
    "Sequent",
    "KernelDerivation",
]
