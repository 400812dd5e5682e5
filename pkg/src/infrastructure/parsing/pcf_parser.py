"""Разбор PCF-термов, типов и секвенций ядра.

Грамматика: ``pcf.lark``. ``fun (x, y) -> M`` раскрывается сразу,
целые литералы становятся цифрами ``succⁿ(zero)``, свободные ``id`` и
``div``: готовыми термами. В одностороннем режиме ``B ~> A``
раскрывается в ``B^c -> A^c``.
"""

from __future__ import annotations

from typing import FrozenSet, List

from lark import Lark, Transformer, v_args
from lark.exceptions import UnexpectedCharacters, UnexpectedEOF, UnexpectedInput, VisitError

from src.domain.entities.pcf import (
    NAT,
    POK,
    ZERO,
    PAbs,
    PApp,
    PComp,
    PcfTerm,
    PcfType,
    PFix,
    PIfZ,
    PLet,
    PNec,
    PPair,
    PPred,
    PProd,
    PSucc,
    PTo,
    PVar,
    PZero,
    Sequent,
    Typing,
    div,
    identity,
    numeral,
    pattern_abs,
)
from src.domain.errors import SyntaxFault, TwoSideError
from src.domain.services.kernel.pcf_types import expand_necessity

_PARSER = Lark.open(
    "pcf.lark",
    rel_to=__file__,
    parser="lalr",
    start=["term", "type", "typing", "sequent"],
    maybe_placeholders=True,
)

_BUILDERS = {"id": identity, "div": div}


@v_args(inline=True)
class _TreeToPcf(Transformer):
    # ---- термы
    def var(self, name):
        return PVar(str(name))

    def num(self, digits):
        return numeral(int(digits))

    def zero(self):
        return ZERO

    def succ(self, arg):
        return PSucc(arg)

    def pred(self, arg):
        return PPred(arg)

    def ifz(self, guard, zero_branch, succ_branch):
        return PIfZ(guard, zero_branch, succ_branch)

    def abs(self, name, body):
        return PAbs(str(name), body)

    def pattern_abs(self, left, right, body):
        return pattern_abs(str(left), str(right), body)

    def fix(self, name, body):
        return PFix(str(name), body)

    def let(self, left, right, scrutinee, body):
        return PLet(str(left), str(right), scrutinee, body)

    def apply(self, fn, arg):
        return PApp(fn, arg)

    def pair(self, first, second):
        return PPair(first, second)

    # ---- типы
    def to_arrow(self, dom, cod):
        return PTo(dom, cod)

    def nec_arrow(self, dom, cod):
        return PNec(dom, cod)

    def times(self, left, right):
        return PProd(left, right)

    def complement(self, inner):
        return PComp(inner)

    def nat(self):
        return NAT

    def ok(self):
        return POK

    # ---- суждения
    def typing(self, subject, ty):
        return Typing(subject, ty)

    def typings(self, *items):
        return list(items)

    def sequent(self, left, right):
        return Sequent.of(left or (), right or ())


def _parse(text: str, start: str):
    try:
        tree = _PARSER.parse(text, start=start)
    except UnexpectedEOF:
        lines = text.splitlines() or [""]
        raise SyntaxFault("unexpected end of input", len(lines), len(lines[-1]) + 1) from None
    except (UnexpectedCharacters, UnexpectedInput) as exc:
        pos = getattr(exc, "pos_in_stream", None)
        near = "" if pos is None else text[pos : pos + 12]
        raise SyntaxFault(f"unexpected input near {near!r}", exc.line, exc.column) from None
    try:
        return _TreeToPcf().transform(tree)
    except VisitError as exc:
        if isinstance(exc.orig_exc, TwoSideError):
            raise exc.orig_exc from None
        raise


def expand_builders(term: PcfTerm, bound: FrozenSet[str] = frozenset()) -> PcfTerm:
    """Свободные ``id`` и ``div`` заменить их определениями."""

    if isinstance(term, PVar):
        if term.name in _BUILDERS and term.name not in bound:
            return _BUILDERS[term.name]()
        return term
    if isinstance(term, PZero):
        return term
    if isinstance(term, PSucc):
        return PSucc(expand_builders(term.arg, bound))
    if isinstance(term, PPred):
        return PPred(expand_builders(term.arg, bound))
    if isinstance(term, PIfZ):
        return PIfZ(
            expand_builders(term.guard, bound),
            expand_builders(term.zero_branch, bound),
            expand_builders(term.succ_branch, bound),
        )
    if isinstance(term, PAbs):
        return PAbs(term.param, expand_builders(term.body, bound | {term.param}))
    if isinstance(term, PFix):
        return PFix(term.name, expand_builders(term.body, bound | {term.name}))
    if isinstance(term, PApp):
        return PApp(expand_builders(term.fn, bound), expand_builders(term.arg, bound))
    if isinstance(term, PPair):
        return PPair(expand_builders(term.first, bound), expand_builders(term.second, bound))
    return PLet(
        term.left,
        term.right,
        expand_builders(term.scrutinee, bound),
        expand_builders(term.body, bound | {term.left, term.right}),
    )


def _typing(t: Typing, one_sided: bool) -> Typing:
    ty = expand_necessity(t.type) if one_sided else t.type
    return Typing(expand_builders(t.subject), ty)


def parse_pcf_term(text: str) -> PcfTerm:
    return expand_builders(_parse(text, "term"))


def parse_pcf_type(text: str, one_sided: bool = False) -> PcfType:
    ty = _parse(text, "type")
    return expand_necessity(ty) if one_sided else ty


def parse_typing(text: str, one_sided: bool = False) -> Typing:
    return _typing(_parse(text, "typing"), one_sided)


def parse_sequent(text: str, one_sided: bool = False) -> Sequent:
    """``x : Nat, M : Ok |- N : Nat``; пустая сторона допустима."""

    raw: Sequent = _parse(text, "sequent")
    left: List[Typing] = [_typing(t, one_sided) for t in raw.left]
    right: List[Typing] = [_typing(t, one_sided) for t in raw.right]
    return Sequent.of(left, right)


__all__ = [
    "expand_builders",
    "parse_pcf_term",
    "parse_pcf_type",
    "parse_typing",
    "parse_sequent",
]
