"""Публичные точки входа вывода: ``infer_right`` и ``infer_left``."""

from __future__ import annotations

from typing import List

from src.domain.entities.judgements import (
    Delta,
    InferenceResult,
    InferredJudgement,
    Side,
    TypeEnvironment,
)
from src.domain.entities.terms import DEFAULT_SIGNATURE, CtorSignature, Term, check_arities
from src.domain.entities.types import type_vars
from src.domain.errors import WellFormednessError
from src.domain.services.inference.engine import DEFAULT_PRODUCT_CAP, InferenceEngine, Partial
from src.domain.services.inference.fresh import FreshSupply
from src.domain.services.inference.postprocess import merge_renamings, protected_vars, simplify
from src.infrastructure.logging.logging_setup import log_stage

_LOG = __name__


def _prepare(
    env: TypeEnvironment,
    term: Term,
    delta: Delta,
    supply: FreshSupply | None,
    signature: CtorSignature,
    product_cap: int,
    prune: bool,
) -> InferenceEngine:
    check_arities(term, signature)
    if delta is not None and delta[0] in env.local_names:
        raise WellFormednessError(f"variable {delta[0]} typed on both sides")
    supply = supply or FreshSupply()
    supply.reserve(env.free_type_vars())
    if delta is not None:
        supply.reserve(type_vars(delta[1]))
    for _, schemes in env.schemes:
        for scheme in schemes:
            supply.reserve(scheme.variables)
    return InferenceEngine(signature, supply, product_cap, prune)


def _finish(
    partials: List[Partial],
    env: TypeEnvironment,
    term: Term,
    side: Side,
    delta: Delta,
    truncated: bool,
    postprocess: bool,
) -> InferenceResult:
    protected = protected_vars(env, delta)
    if postprocess:
        partials = merge_renamings((simplify(p, protected) for p in partials), protected)
    judgements = tuple(
        InferredJudgement(
            constraints=p.constraints,
            env=env,
            subject=term,
            subject_type=p.ty,
            side=side,
            delta=delta,
            derivation=p.node,
        )
        for p in partials
    )
    log_stage("INFER", "Вывод завершён", _LOG, side=side.value, judgements=len(judgements), truncated=truncated)
    return InferenceResult(judgements, truncated)


def infer_right(
    env: TypeEnvironment,
    term: Term,
    supply: FreshSupply | None = None,
    *,
    signature: CtorSignature = DEFAULT_SIGNATURE,
    product_cap: int = DEFAULT_PRODUCT_CAP,
    prune: bool = False,
    postprocess: bool = True,
) -> InferenceResult:
    """Все главные суждения ``Γ | C ⊢ M : a``.

    Несовместные суждения не отбрасываются (кроме режима ``prune``).
    """

    engine = _prepare(env, term, None, supply, signature, product_cap, prune)
    partials = engine.right(env, term)
    return _finish(partials, env, term, Side.RIGHT, None, engine.truncated, postprocess)


def infer_left(
    env: TypeEnvironment,
    term: Term,
    delta: Delta = None,
    supply: FreshSupply | None = None,
    *,
    signature: CtorSignature = DEFAULT_SIGNATURE,
    product_cap: int = DEFAULT_PRODUCT_CAP,
    prune: bool = False,
    postprocess: bool = True,
) -> InferenceResult:
    """Все главные суждения ``Γ, M : a | C ⊢ Δ`` при ``|Δ| ≤ 1``."""

    engine = _prepare(env, term, delta, supply, signature, product_cap, prune)
    partials = engine.left(env, term, delta)
    return _finish(partials, env, term, Side.LEFT, delta, engine.truncated, postprocess)


__all__ = ["infer_right", "infer_left"]
