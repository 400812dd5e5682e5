"""Значения, свободные переменные, подстановка и α-эквивалентность.

Связывание именованное. Подстановка освежает связанное имя только
тогда, когда оно захватило бы свободную переменную подставляемого терма.
"""

from __future__ import annotations

import itertools
from typing import Callable, Dict, FrozenSet, Iterable, Mapping, Set

from src.domain.entities.terms import (
    Abs,
    Alternative,
    App,
    Ctor,
    Fix,
    LocalVar,
    Match,
    Pattern,
    Term,
    TopId,
)


def is_value(t: Term) -> bool:
    """Переменная, абстракция или конструктор, применённый к значениям."""

    if isinstance(t, (LocalVar, Abs)):
        return True
    if isinstance(t, Ctor):
        return all(is_value(a) for a in t.args)
    return False


def free_vars(t: Term) -> FrozenSet[str]:
    """Свободные локальные переменные (идентификаторы верхнего уровня не входят)."""

    if isinstance(t, LocalVar):
        return frozenset((t.name,))
    if isinstance(t, TopId):
        return frozenset()
    if isinstance(t, Ctor):
        out: FrozenSet[str] = frozenset()
        for a in t.args:
            out |= free_vars(a)
        return out
    if isinstance(t, App):
        return free_vars(t.fn) | free_vars(t.arg)
    if isinstance(t, Abs):
        return free_vars(t.body) - {t.param}
    if isinstance(t, Fix):
        return free_vars(t.body) - {t.name}
    out = free_vars(t.scrutinee)
    for alt in t.alternatives:
        out |= free_vars(alt.body) - set(alt.pattern.variables)
    return out


def top_ids(t: Term) -> FrozenSet[str]:
    if isinstance(t, TopId):
        return frozenset((t.name,))
    if isinstance(t, LocalVar):
        return frozenset()
    if isinstance(t, Ctor):
        out: FrozenSet[str] = frozenset()
        for a in t.args:
            out |= top_ids(a)
        return out
    if isinstance(t, App):
        return top_ids(t.fn) | top_ids(t.arg)
    if isinstance(t, (Abs, Fix)):
        return top_ids(t.body)
    out = top_ids(t.scrutinee)
    for alt in t.alternatives:
        out |= top_ids(alt.body)
    return out


def fresh_name(base: str, avoid: Iterable[str] | Callable[[str], bool]) -> str:
    """Имя ``base_N``, не попадающее в ``avoid``."""

    taken: Callable[[str], bool]
    if callable(avoid):
        taken = avoid
    else:
        avoid_set = set(avoid)
        taken = avoid_set.__contains__
    if not taken(base):
        return base
    stem = base.split("_")[0] or "v"
    for n in itertools.count(1):
        candidate = f"{stem}_{n}"
        if not taken(candidate):
            return candidate
    raise AssertionError("unreachable")  # pragma: no cover


def substitute(t: Term, mapping: Mapping[str, Term]) -> Term:
    """Одновременная подстановка без захвата переменных."""

    if not mapping:
        return t
    incoming: Set[str] = set()
    for repl in mapping.values():
        incoming |= free_vars(repl)
    return _subst(t, dict(mapping), incoming)


def _subst(t: Term, mapping: Dict[str, Term], incoming: Set[str]) -> Term:
    if isinstance(t, LocalVar):
        return mapping.get(t.name, t)
    if isinstance(t, TopId):
        return t
    if isinstance(t, Ctor):
        return Ctor(t.name, tuple(_subst(a, mapping, incoming) for a in t.args))
    if isinstance(t, App):
        return App(_subst(t.fn, mapping, incoming), _subst(t.arg, mapping, incoming))
    if isinstance(t, (Abs, Fix)):
        binder = t.param if isinstance(t, Abs) else t.name
        inner, new_binder = _enter_binders(t.body, (binder,), mapping, incoming)
        body = _subst(t.body if new_binder == (binder,) else _rename(t.body, binder, new_binder[0]), inner, incoming)
        return Abs(new_binder[0], body) if isinstance(t, Abs) else Fix(new_binder[0], body)
    scrutinee = _subst(t.scrutinee, mapping, incoming)
    all_bound = {v for alt in t.alternatives for v in alt.pattern.variables}
    alternatives = []
    for alt in t.alternatives:
        inner, new_vars = _enter_binders(
            alt.body, alt.pattern.variables, mapping, incoming, all_bound
        )
        body = alt.body
        for old, new in zip(alt.pattern.variables, new_vars):
            if old != new:
                body = _rename(body, old, new)
        alternatives.append(
            Alternative(Pattern(alt.pattern.ctor, tuple(new_vars)), _subst(body, inner, incoming))
        )
    return Match(scrutinee, tuple(alternatives))


def _enter_binders(
    body: Term,
    binders: tuple[str, ...],
    mapping: Dict[str, Term],
    incoming: Set[str],
    extra_avoid: Iterable[str] = (),
) -> tuple[Dict[str, Term], tuple[str, ...]]:
    inner = {k: v for k, v in mapping.items() if k not in binders}
    if not inner:
        return inner, binders
    avoid = set(incoming) | set(free_vars(body)) | set(inner) | set(extra_avoid)
    new_binders = []
    for b in binders:
        if b in incoming:
            nb = fresh_name(b, avoid | set(new_binders) | set(binders))
            new_binders.append(nb)
        else:
            new_binders.append(b)
    return inner, tuple(new_binders)


def _rename(t: Term, old: str, new: str) -> Term:
    return _subst(t, {old: LocalVar(new)}, {new})


def rename_bound(t: Term, avoid: Iterable[str]) -> Term:
    """α-вариант ``t``, у которого связанные имена верхнего связывателя не входят в ``avoid``.

    Используется выводом типов: связанные переменные правила не должны
    встречаться в Γ и Δ.
    """

    avoid_set = set(avoid)
    if isinstance(t, (Abs, Fix)):
        binder = t.param if isinstance(t, Abs) else t.name
        if binder not in avoid_set:
            return t
        new = fresh_name(binder, avoid_set | free_vars(t.body))
        body = _rename(t.body, binder, new)
        return Abs(new, body) if isinstance(t, Abs) else Fix(new, body)
    if isinstance(t, Match):
        bound = {v for alt in t.alternatives for v in alt.pattern.variables}
        if not bound & avoid_set:
            return t
        taken = set(avoid_set) | bound | free_vars(t)
        alternatives = []
        for alt in t.alternatives:
            body = alt.body
            new_vars = []
            for v in alt.pattern.variables:
                if v in avoid_set:
                    nv = fresh_name(v, taken)
                    taken.add(nv)
                    body = _rename(body, v, nv)
                    new_vars.append(nv)
                else:
                    new_vars.append(v)
            alternatives.append(Alternative(Pattern(alt.pattern.ctor, tuple(new_vars)), body))
        return Match(t.scrutinee, tuple(alternatives))
    return t


def alpha_eq(t1: Term, t2: Term) -> bool:
    """Равенство с точностью до переименования связанных переменных."""

    return _alpha(t1, t2, {}, {}, 0)


def _alpha(a: Term, b: Term, env_a: Dict[str, int], env_b: Dict[str, int], depth: int) -> bool:
    if isinstance(a, LocalVar) and isinstance(b, LocalVar):
        la, lb = env_a.get(a.name), env_b.get(b.name)
        if la is None and lb is None:
            return a.name == b.name
        return la == lb
    if type(a) is not type(b):
        return False
    if isinstance(a, TopId):
        return a.name == b.name  # type: ignore[union-attr]
    if isinstance(a, Ctor):
        assert isinstance(b, Ctor)
        return (
            a.name == b.name
            and len(a.args) == len(b.args)
            and all(_alpha(x, y, env_a, env_b, depth) for x, y in zip(a.args, b.args))
        )
    if isinstance(a, App):
        assert isinstance(b, App)
        return _alpha(a.fn, b.fn, env_a, env_b, depth) and _alpha(a.arg, b.arg, env_a, env_b, depth)
    if isinstance(a, (Abs, Fix)):
        name_a = a.param if isinstance(a, Abs) else a.name
        name_b = b.param if isinstance(b, Abs) else b.name  # type: ignore[union-attr]
        return _alpha(
            a.body,
            b.body,  # type: ignore[union-attr]
            {**env_a, name_a: depth},
            {**env_b, name_b: depth},
            depth + 1,
        )
    assert isinstance(a, Match) and isinstance(b, Match)
    if not _alpha(a.scrutinee, b.scrutinee, env_a, env_b, depth):
        return False
    if len(a.alternatives) != len(b.alternatives):
        return False
    alts_b = {alt.pattern.ctor: alt for alt in b.alternatives}
    for alt_a in a.alternatives:
        alt_b = alts_b.get(alt_a.pattern.ctor)
        if alt_b is None or len(alt_b.pattern.variables) != len(alt_a.pattern.variables):
            return False
        ea, eb, d = dict(env_a), dict(env_b), depth
        for va, vb in zip(alt_a.pattern.variables, alt_b.pattern.variables):
            ea[va] = d
            eb[vb] = d
            d += 1
        if not _alpha(alt_a.body, alt_b.body, ea, eb, d):
            return False
    return True


__all__ = [
    "is_value",
    "free_vars",
    "top_ids",
    "fresh_name",
    "substitute",
    "rename_bound",
    "alpha_eq",
]
