"""Печать PCF-термов, типов, секвенций и выводов ядра.

Вывод читается обратно :mod:`pcf_parser`. Типизации каждой стороны
секвенции упорядочены по тексту; сахар (цифры, ``fun (x, y)``) не
восстанавливается.
"""

from __future__ import annotations

from typing import Iterable, List

from src.domain.entities.pcf import (
    KernelDerivation,
    PAbs,
    PApp,
    PComp,
    PcfTerm,
    PcfType,
    PFix,
    PIfZ,
    PLet,
    PNat,
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

_T_BINDER, _T_APP, _T_ATOM = range(3)
_Y_ARROW, _Y_PROD, _Y_POST = range(3)


def _paren(text: str, needed: bool) -> str:
    return f"({text})" if needed else text


def _term(t: PcfTerm, level: int) -> str:
    if isinstance(t, PVar):
        return t.name
    if isinstance(t, PZero):
        return "zero"
    if isinstance(t, PSucc):
        return f"succ({_term(t.arg, _T_BINDER)})"
    if isinstance(t, PPred):
        return f"pred({_term(t.arg, _T_BINDER)})"
    if isinstance(t, PIfZ):
        parts = ", ".join(_term(p, _T_BINDER) for p in (t.guard, t.zero_branch, t.succ_branch))
        return f"ifz({parts})"
    if isinstance(t, PPair):
        return f"({_term(t.first, _T_BINDER)}, {_term(t.second, _T_BINDER)})"
    if isinstance(t, PApp):
        return _paren(f"{_term(t.fn, _T_APP)} {_term(t.arg, _T_ATOM)}", level > _T_APP)
    if isinstance(t, PAbs):
        text = f"fun {t.param} -> {_term(t.body, _T_BINDER)}"
    elif isinstance(t, PFix):
        text = f"fix {t.name} -> {_term(t.body, _T_BINDER)}"
    else:
        text = f"let ({t.left}, {t.right}) = {_term(t.scrutinee, _T_BINDER)} in {_term(t.body, _T_BINDER)}"
    return _paren(text, level > _T_BINDER)


def print_pcf_term(t: PcfTerm) -> str:
    return _term(t, _T_BINDER)


def _type(ty: PcfType, level: int) -> str:
    if isinstance(ty, PNat):
        return "Nat"
    if isinstance(ty, POk):
        return "Ok"
    if isinstance(ty, PComp):
        return f"{_type(ty.inner, _Y_POST)}^c"
    if isinstance(ty, PProd):
        return _paren(f"{_type(ty.left, _Y_PROD)} * {_type(ty.right, _Y_POST)}", level > _Y_PROD)
    arrow = "->" if isinstance(ty, PTo) else "~>"
    return _paren(f"{_type(ty.dom, _Y_PROD)} {arrow} {_type(ty.cod, _Y_ARROW)}", level > _Y_ARROW)


def print_pcf_type(ty: PcfType) -> str:
    return _type(ty, _Y_ARROW)


def print_typing(t: Typing) -> str:
    return f"{print_pcf_term(t.subject)} : {print_pcf_type(t.type)}"


def _side(typings: Iterable[Typing]) -> str:
    return ", ".join(sorted(print_typing(t) for t in typings))


def print_sequent(s: Sequent) -> str:
    left, right = _side(s.left), _side(s.right)
    left = f"{left} " if left else ""
    right = f" {right}" if right else ""
    return f"{left}|-{right}"


def _node_lines(d: KernelDerivation, depth: int, out: List[str]) -> None:
    side = ""
    if d.side:
        side = "  [" + ", ".join(print_pcf_type(t) for t in d.side) + "]"
    out.append(f"{'  ' * depth}{d.rule}  {print_sequent(d.conclusion)}{side}")
    for premise in d.premises:
        _node_lines(premise, depth + 1, out)


def print_kernel_derivation(d: KernelDerivation) -> str:
    """Дерево сверху вниз: корень первым, посылки с отступом."""

    lines: List[str] = []
    _node_lines(d, 0, lines)
    return "\n".join(lines)


__all__ = [
    "print_pcf_term",
    "print_pcf_type",
    "print_typing",
    "print_sequent",
    "print_kernel_derivation",
]
