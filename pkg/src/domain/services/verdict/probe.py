"""Проба корректности: оба вердикта против фактического вычисления."""

from __future__ import annotations

from src.domain.entities.evaluation import EvalOutcome
from src.domain.entities.judgements import TypeEnvironment
from src.domain.entities.terms import DEFAULT_SIGNATURE, CtorSignature, Term, TopModule
from src.domain.entities.verdicts import ProbeReport, Verdict
from src.domain.services.evaluator import evaluate
from src.domain.services.inference import DEFAULT_PRODUCT_CAP
from src.domain.services.verdict.verdicts import ill_typed, well_typed
from src.infrastructure.logging.logging_setup import log_stage

_LOG = __name__


def is_violation(well: Verdict, ill: Verdict, outcome: EvalOutcome) -> bool:
    if ill.holds and outcome.kind == "value":
        return True
    return well.holds and outcome.kind == "stuck"


def soundness_probe(
    term: Term,
    env: TypeEnvironment,
    module: TopModule,
    fuel: int,
    *,
    seed: int | None = None,
    signature: CtorSignature = DEFAULT_SIGNATURE,
    product_cap: int = DEFAULT_PRODUCT_CAP,
) -> ProbeReport:
    if fuel < 1:
        raise ValueError("fuel must be >= 1")
    well = well_typed(env, term, signature=signature, product_cap=product_cap)
    ill = ill_typed(env, term, signature=signature, product_cap=product_cap)
    outcome = evaluate(term, module, fuel)
    violation = is_violation(well, ill, outcome)
    if violation:
        log_stage(
            "WARN",
            "Нарушение корректности",
            _LOG,
            seed=seed,
            well=well.kind.value,
            ill=ill.kind.value,
            outcome=outcome.kind,
        )
    return ProbeReport(term, well, ill, outcome, violation, seed)


__all__ = ["is_violation", "soundness_probe"]
