"""Вердикты над замкнутыми термами.

Терм типизируем в Γ, если выводится ``Γ ⊢ M : Ok``, и нетипизируем,
если выводится ``Γ, M : Ok ⊢``. Оба запроса строятся поверх вывода:
ищется суждение, ограничения которого вместе с ``a ⊑ Ok`` (справа)
или ``Ok ⊑ a`` (слева) совместны.
"""

from __future__ import annotations

from typing import Iterable

from src.domain.entities.judgements import InferenceResult, TypeEnvironment
from src.domain.entities.terms import DEFAULT_SIGNATURE, CtorSignature, Term
from src.domain.entities.types import OK, Constraint
from src.domain.entities.verdicts import Verdict, VerdictKind
from src.domain.errors import InconsistentEnvironmentError, OpenTermError
from src.domain.services.constraints.closure import is_consistent
from src.domain.services.inference import DEFAULT_PRODUCT_CAP, infer_left, infer_right
from src.domain.services.syntax.term_ops import free_vars
from src.infrastructure.logging.logging_setup import log_debug

_LOG = __name__


def ensure_consistent_environment(env: TypeEnvironment) -> None:
    constraints = [k for _, schemes in env.schemes for s in schemes for k in s.constraints]
    if not is_consistent(constraints):
        raise InconsistentEnvironmentError("declared schemes carry inconsistent constraints")


def _closed(term: Term) -> None:
    open_vars = free_vars(term)
    if open_vars:
        raise OpenTermError(f"verdicts apply to closed terms, free: {sorted(open_vars)}")


def _first_consistent(result: InferenceResult, extra, kind: VerdictKind) -> Verdict:
    for judgement in result:
        closing: Iterable[Constraint] = extra(judgement.subject_type)
        combined = frozenset(judgement.constraints) | frozenset(closing)
        if is_consistent(combined):
            return Verdict(kind, judgement, combined, len(result), result.truncated)
    return Verdict.unknown(len(result), result.truncated)


def well_typed(
    env: TypeEnvironment,
    term: Term,
    *,
    signature: CtorSignature = DEFAULT_SIGNATURE,
    product_cap: int = DEFAULT_PRODUCT_CAP,
) -> Verdict:
    """``WELL_TYPED`` со свидетелем ``Γ | C ⊢ M : a`` или ``UNKNOWN``."""

    _closed(term)
    ensure_consistent_environment(env)
    result = infer_right(env, term, signature=signature, product_cap=product_cap, prune=True)
    verdict = _first_consistent(result, lambda a: (Constraint(a, OK),), VerdictKind.WELL_TYPED)
    log_debug(f"🎯 well_typed: {verdict.kind.value} | candidates: {verdict.candidates}", _LOG)
    return verdict


def ill_typed(
    env: TypeEnvironment,
    term: Term,
    *,
    signature: CtorSignature = DEFAULT_SIGNATURE,
    product_cap: int = DEFAULT_PRODUCT_CAP,
) -> Verdict:
    """``ILL_TYPED`` со свидетелем ``Γ, M : a | C ⊢`` или ``UNKNOWN``."""

    _closed(term)
    ensure_consistent_environment(env)
    result = infer_left(env, term, None, signature=signature, product_cap=product_cap, prune=True)
    verdict = _first_consistent(result, lambda a: (Constraint(OK, a),), VerdictKind.ILL_TYPED)
    log_debug(f"🎯 ill_typed: {verdict.kind.value} | candidates: {verdict.candidates}", _LOG)
    return verdict


__all__ = ["ensure_consistent_environment", "well_typed", "ill_typed"]
