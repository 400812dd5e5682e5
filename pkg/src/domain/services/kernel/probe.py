"""Проба односторонней системы: выведенное ``Ok^c`` против вычисления."""

from __future__ import annotations

from src.domain.entities.pcf import POK, PComp, PcfTerm
from src.domain.entities.verdicts import PcfProbeReport
from src.domain.services.kernel.pcf_eval import pcf_evaluate
from src.domain.services.kernel.prover import prove_one_sided
from src.infrastructure.logging.logging_setup import log_stage

_LOG = __name__


def pcf_soundness_probe(term: PcfTerm, depth: int, fuel: int, *, seed: int | None = None) -> PcfProbeReport:
    if fuel < 1:
        raise ValueError("fuel must be >= 1")
    refuted = prove_one_sided((), term, PComp(POK), depth) is not None
    outcome = pcf_evaluate(term, fuel)
    violation = refuted and outcome.kind == "value"
    if violation:
        log_stage("WARN", "Нарушение корректности PCF", _LOG, seed=seed, outcome=outcome.kind)
    return PcfProbeReport(term, refuted, outcome, violation, seed)


__all__ = ["pcf_soundness_probe"]
