"""Разбор поверхностного синтаксиса языка с конструкторами.

Грамматика лежит рядом в ``twoside.lark`` (LALR, несколько стартовых
символов). Имена без связывания превращаются в идентификаторы верхнего
уровня, если они объявлены в модуле, иначе остаются локальными
переменными.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Tuple

from lark import Lark, Token, Transformer, v_args
from lark.exceptions import UnexpectedCharacters, UnexpectedEOF, UnexpectedInput, VisitError

from src.domain.entities.terms import (
    CONS,
    DEFAULT_SIGNATURE,
    NIL,
    PAIR,
    Abs,
    Alternative,
    App,
    Ctor,
    CtorSignature,
    Fix,
    LocalVar,
    Match,
    Pattern,
    Term,
    TopId,
    TopModule,
    check_arities,
)
from src.domain.entities.types import (
    EMPTY,
    OK,
    Constraint,
    NecArrow,
    Scheme,
    Sum,
    ToArrow,
    TVar,
    Type,
    ctor_type,
    equiv,
    sum_of,
)
from src.domain.errors import SyntaxFault, TwoSideError, WellFormednessError
from src.infrastructure.logging.logging_setup import log_stage

_LOG = __name__

START_SYMBOLS = ["term", "type", "scheme", "module", "binding", "constraints"]

_PARSER = Lark.open(
    "twoside.lark",
    rel_to=__file__,
    parser="lalr",
    start=START_SYMBOLS,
    propagate_positions=False,
    maybe_placeholders=True,
)


@dataclass(frozen=True)
class SourceModule:
    """Разобранный файл ``.2st``."""

    origin: str
    signature: CtorSignature
    module: TopModule
    schemes: Dict[str, Tuple[Scheme, ...]]


def _present(items) -> list:
    return [x for x in items if x is not None]


def _ctor_name(token: Token) -> str:
    return str(token).rstrip("(")


@v_args(inline=True)
class _TreeToAst(Transformer):
    # ---- термы
    def var(self, name):
        return LocalVar(str(name))

    def abs(self, name, body):
        return Abs(str(name), body)

    def fix(self, name, body):
        return Fix(str(name), body)

    def apply(self, fn, arg):
        return App(fn, arg)

    def cons_op(self, head, tail):
        return Ctor(CONS, (head, tail))

    def ctor_call(self, name, *args):
        return Ctor(_ctor_name(name), tuple(_present(args)))

    def ctor_bare(self, name):
        return Ctor(str(name), ())

    def nil(self):
        return Ctor(NIL, ())

    def pair(self, first, second):
        return Ctor(PAIR, (first, second))

    def match(self, scrutinee, *alts):
        return Match(scrutinee, tuple(alts))

    def alt(self, pattern, body):
        return Alternative(pattern, body)

    def pat_call(self, name, *variables):
        return Pattern(_ctor_name(name), tuple(str(v) for v in _present(variables)))

    def pat_bare(self, name):
        return Pattern(str(name), ())

    def pat_nil(self):
        return Pattern(NIL, ())

    def pat_cons(self, head, tail):
        return Pattern(CONS, (str(head), str(tail)))

    def pat_pair(self, first, second):
        return Pattern(PAIR, (str(first), str(second)))

    # ---- типы
    def to_arrow(self, dom, cod):
        return ToArrow(dom, cod)

    def nec_arrow(self, dom, cod):
        return NecArrow(dom, cod)

    def plus(self, left, right):
        if not isinstance(left, Sum) or not isinstance(right, Sum):
            raise WellFormednessError("'+' combines constructor types only")
        return sum_of((left, right))

    def times(self, left, right):
        return ctor_type(PAIR, left, right)

    def tcons(self, head, tail):
        return ctor_type(CONS, head, tail)

    def tvar(self, name):
        return TVar(str(name))

    def ok(self):
        return OK

    def empty(self):
        return EMPTY

    def tctor_call(self, name, *args):
        return ctor_type(_ctor_name(name), *_present(args))

    def tctor_bare(self, name):
        return ctor_type(str(name))

    def tnil(self):
        return ctor_type(NIL)

    # ---- ограничения и схемы
    def sub(self, lhs, rhs):
        return (Constraint(lhs, rhs),)

    def eqv(self, lhs, rhs):
        return equiv(lhs, rhs)

    def constraints(self, *groups):
        out: List[Constraint] = []
        for group in _present(groups):
            out.extend(group)
        return frozenset(out)

    def poly(self, *parts):
        *names, constraints, body = parts
        return Scheme(tuple(str(n) for n in names), constraints, body)

    def mono(self, body):
        return Scheme.mono(body)

    def binding(self, name, ty):
        return (str(name), ty)

    # ---- модули
    def ctor_decl(self, name, arity):
        return ("ctor", str(name), int(arity))

    def scheme_decl(self, name, scheme):
        return ("scheme", str(name), scheme)

    def def_decl(self, name, body):
        return ("def", str(name), body)

    def module(self, *decls):
        return list(decls)


def _parse(text: str, start: str):
    try:
        tree = _PARSER.parse(text, start=start)
    except UnexpectedEOF:
        lines = text.splitlines() or [""]
        raise SyntaxFault("unexpected end of input", len(lines), len(lines[-1]) + 1) from None
    except (UnexpectedCharacters, UnexpectedInput) as exc:
        raise SyntaxFault(f"unexpected input near {_near(text, exc)!r}", exc.line, exc.column) from None
    try:
        return _TreeToAst().transform(tree)
    except VisitError as exc:
        if isinstance(exc.orig_exc, TwoSideError):
            raise exc.orig_exc from None
        raise


def _near(text: str, exc: UnexpectedInput) -> str:
    pos = getattr(exc, "pos_in_stream", None)
    if pos is None:
        return ""
    return text[pos : pos + 12]


def resolve_top_ids(term: Term, names: FrozenSet[str], bound: FrozenSet[str] = frozenset()) -> Term:
    """Свободные локальные имена из ``names`` заменить идентификаторами."""

    if isinstance(term, LocalVar):
        if term.name in names and term.name not in bound:
            return TopId(term.name)
        return term
    if isinstance(term, TopId):
        return term
    if isinstance(term, Ctor):
        return Ctor(term.name, tuple(resolve_top_ids(a, names, bound) for a in term.args))
    if isinstance(term, App):
        return App(resolve_top_ids(term.fn, names, bound), resolve_top_ids(term.arg, names, bound))
    if isinstance(term, Abs):
        return Abs(term.param, resolve_top_ids(term.body, names, bound | {term.param}))
    if isinstance(term, Fix):
        return Fix(term.name, resolve_top_ids(term.body, names, bound | {term.name}))
    return Match(
        resolve_top_ids(term.scrutinee, names, bound),
        tuple(
            Alternative(alt.pattern, resolve_top_ids(alt.body, names, bound | set(alt.pattern.variables)))
            for alt in term.alternatives
        ),
    )


def parse_term(
    text: str,
    top_ids: Iterable[str] = (),
    signature: CtorSignature = DEFAULT_SIGNATURE,
) -> Term:
    term = resolve_top_ids(_parse(text, "term"), frozenset(top_ids))
    check_arities(term, signature)
    return term


def parse_type(text: str) -> Type:
    return _parse(text, "type")


def parse_scheme(text: str) -> Scheme:
    return _parse(text, "scheme")


def parse_constraints(text: str) -> FrozenSet[Constraint]:
    return _parse(text, "constraints")


def parse_binding(text: str) -> Tuple[str, Type]:
    return _parse(text, "binding")


def parse_module(
    text: str,
    origin: str = "<string>",
    signature: CtorSignature = DEFAULT_SIGNATURE,
) -> SourceModule:
    """Разобрать модуль: объявления конструкторов, схемы и определения.

    Схемы одного идентификатора накапливаются в порядке объявления.
    """

    decls = _parse(text, "module")
    definitions: List[Tuple[str, Term]] = []
    schemes: Dict[str, List[Scheme]] = {}
    for kind, name, payload in decls:
        if kind == "ctor":
            signature = signature.with_entry(name, payload)
        elif kind == "scheme":
            schemes.setdefault(name, []).append(payload)
        else:
            definitions.append((name, payload))

    names = frozenset(name for name, _ in definitions)
    resolved = []
    for name, body in definitions:
        body = resolve_top_ids(body, names)
        check_arities(body, signature)
        resolved.append((name, body))
    module = TopModule(tuple(resolved))
    for name in schemes:
        if name not in names:
            raise WellFormednessError(f"scheme declared for undefined identifier {name}")

    log_stage("PARSE", "Модуль разобран", _LOG, origin=origin, definitions=len(resolved), schemes=sum(len(v) for v in schemes.values()))
    return SourceModule(origin, signature, module, {k: tuple(v) for k, v in schemes.items()})


__all__ = [
    "SourceModule",
    "resolve_top_ids",
    "parse_term",
    "parse_type",
    "parse_scheme",
    "parse_constraints",
    "parse_binding",
    "parse_module",
]
