"""Перевод двустороннего вывода в односторонний.

Из ``Γ, M : A ⊢ Δ`` получается ``Γ ∪ Δ^c ⊢ M : A^c``, а из ``Γ ⊢ M : A, Δ``
получается ``Γ ∪ Δ^c ⊢ M : A``. Формула, о которой идёт речь, называется фокусом;
все остальные формулы узла обязаны быть типизациями переменных.
Перевод идёт по структуре вывода: фокусом посылки считается та формула, которую
правило в неё добавило.
"""

from __future__ import annotations

from typing import Dict, Iterable, List, Optional, Tuple

from src.domain.entities.judgements import Side
from src.domain.entities.pcf import (
    KernelDerivation,
    PAbs,
    PComp,
    PLet,
    PVar,
    PcfType,
    Sequent,
    Typing,
    pcf_vars,
)
from src.domain.errors import TranslationError
from src.domain.services.kernel.pcf_types import expand_necessity
from src.domain.services.kernel.two_sided import RuleMatch, match_two_sided
from src.infrastructure.logging.logging_setup import log_debug

_LOG = __name__

Focus = Tuple[Side, Typing]

# правило двусторонней системы -> правило односторонней
_DIRECT: Dict[str, str] = {
    "ZeroR": "Zero",
    "SuccR": "Succ1",
    "PredR": "Pred1",
    "LetR": "Let1",
    "AppR": "App1",
    "PairR": "Pair1",
    "AbsR": "Abs",
    "AbnR": "Abs",
    "FixR": "Fix",
    "SuccL": "Succ2",
    "OkSL": "Succ2",
    "PredL": "Pred2",
    "OkPL": "Pred2",
    "AppL": "App1",
    "PairL": "Pair3",
    "LetL1": "Let3",
    "LetL2": "Let2",
    "IfZL1": "IfZ1",
    "IfZL2": "IfZ2",
    "OkL": "OkC2",
    "OkApL1": "App2",
    "OkApL2": "App3",
    "OkPrL": "Pair2",
}


def _typing(subject, ty: PcfType) -> Typing:
    return Typing(subject, expand_necessity(ty))


def _sorted(typings: Iterable[Typing]) -> List[Typing]:
    return sorted(typings, key=repr)


def default_focus(sequent: Sequent) -> Focus:
    """Единственная не-переменная формула, иначе первая справа (или слева)."""

    loose = [(Side.LEFT, t) for t in _sorted(sequent.left) if not t.is_variable]
    loose += [(Side.RIGHT, t) for t in _sorted(sequent.right) if not t.is_variable]
    if len(loose) > 1:
        raise TranslationError(f"{len(loose)} non-variable typings in the root sequent, expected at most one")
    if loose:
        return loose[0]
    if sequent.right:
        return Side.RIGHT, _sorted(sequent.right)[0]
    if sequent.left:
        return Side.LEFT, _sorted(sequent.left)[0]
    raise TranslationError("the empty sequent has no formula to translate")


def _one_sided_conclusion(sequent: Sequent, focus: Focus) -> Sequent:
    side, typing = focus
    env: List[Typing] = []
    for t in _sorted(sequent.left):
        if side is Side.LEFT and t == typing:
            continue
        env.append(t)
    for t in _sorted(sequent.right):
        if side is Side.RIGHT and t == typing:
            continue
        env.append(Typing(t.subject, PComp(t.type)))
    stray = [t for t in env if not t.is_variable]
    if stray:
        raise TranslationError(f"side formula {stray[0]} is not a variable typing")
    goal_type = typing.type if side is Side.RIGHT else PComp(typing.type)
    return Sequent.one_sided((_typing(t.subject, t.type) for t in env), typing.subject, expand_necessity(goal_type))


def _pick(d: KernelDerivation, focus: Focus) -> Optional[RuleMatch]:
    matches, note = match_two_sided(d)
    if not matches:
        raise TranslationError(f"node {d.rule} does not check: {note}")
    side, typing = focus
    for m in matches:
        if m.principal == typing and (m.side is side or d.rule == "Id"):
            return m
    return None


def _weaken(d: KernelDerivation, extra: Typing) -> KernelDerivation:
    return KernelDerivation(
        d.rule,
        Sequent(d.conclusion.left | {extra}, d.conclusion.right),
        tuple(_weaken(p, extra) for p in d.premises),
        d.side,
    )


def _pattern_abstraction(d: KernelDerivation, here: Sequent, match: RuleMatch) -> KernelDerivation:
    """``λz. let (x, y) = z in M : B × C ⤙ A`` через Abs, Let2 и Var."""

    goal = here.goal
    lam: PAbs = goal.subject  # type: ignore[assignment]
    inner: PLet = lam.body  # type: ignore[assignment]
    if lam.param in pcf_vars(inner.body):
        raise TranslationError(f"{lam.param} is reused inside the pattern body, weakening would capture it")
    product = goal.type.dom  # type: ignore[union-attr]
    z = Typing(PVar(lam.param), product)
    env = here.left | {z}
    first = _weaken(_translate(d.premises[0], match.foci[0]), z)
    second = _weaken(_translate(d.premises[1], match.foci[1]), z)
    let = KernelDerivation(
        "Let2",
        Sequent.one_sided(env, inner, goal.type.cod),  # type: ignore[union-attr]
        (KernelDerivation("Var", Sequent.one_sided(env, z.subject, product)), first, second),
    )
    return KernelDerivation("Abs", here, (let,))


def _translate(d: KernelDerivation, focus: Focus) -> KernelDerivation:
    here = _one_sided_conclusion(d.conclusion, focus)
    match = _pick(d, focus)
    if match is None:
        if d.rule == "Id":
            return KernelDerivation("Contra", here)
        if d.rule == "OkVarR":
            return KernelDerivation("OkC1", here)
        raise TranslationError(f"{d.rule} acts on a side formula, not on {focus[1]}")
    if d.rule == "Id":
        return KernelDerivation("Var", here)
    if d.rule == "OkVarR" or d.rule == "OkR":
        return KernelDerivation("Ok", here)
    if d.rule == "PAbnR":
        return _pattern_abstraction(d, here, match)
    if d.rule == "Dis":
        a, b = d.side
        premise = _translate(d.premises[0], match.foci[0])
        return KernelDerivation("Disj", here, (premise,), (expand_necessity(a), expand_necessity(b)))
    if d.rule == "IfZR":
        kept = tuple(_translate(d.premises[i], match.foci[i]) for i in (1, 2))
        return KernelDerivation("IfZ2", here, kept)
    rule = _DIRECT[d.rule]
    premises = tuple(_translate(p, f) for p, f in zip(d.premises, match.foci))
    return KernelDerivation(rule, here, premises)


def translate_to_one_sided(d: KernelDerivation, focus: Optional[Focus] = None) -> KernelDerivation:
    """Построить односторонний вывод того же утверждения.

    Без ``focus`` фокус выбирается :func:`default_focus`. Гипотеза перевода
    (остальные формулы: типизации переменных) проверяется на каждом узле;
    нарушение даёт :class:`TranslationError`.
    """

    chosen = focus or default_focus(d.conclusion)
    out = _translate(d, chosen)
    log_debug(f"⚖️ translate: {d.rule} -> {out.rule} | nodes: {d.size} -> {out.size}", _LOG)
    return out


__all__ = ["default_focus", "translate_to_one_sided"]
