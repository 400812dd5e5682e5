"""Ядро доказательств для PCF: проверка, перевод, поиск, оракул."""

from src.domain.services.kernel.generator import gen_pcf_term
from src.domain.services.kernel.one_sided import ONE_SIDED_RULES, check_one_sided
from src.domain.services.kernel.oracle import OracleAnswer, success_oracle, value_in
from src.domain.services.kernel.pcf_eval import is_pcf_value, pcf_evaluate, pcf_step, pcf_substitute
from src.domain.services.kernel.pcf_types import (
    admissible_codomain,
    disjoint,
    expand_necessity,
    finitely_verifiable,
    two_sided_type_error,
)
from src.domain.services.kernel.probe import pcf_soundness_probe
from src.domain.services.kernel.prover import prove_one_sided
from src.domain.services.kernel.translate import default_focus, translate_to_one_sided
from src.domain.services.kernel.two_sided import TWO_SIDED_RULES, RuleMatch, check_two_sided, match_two_sided

__all__ = [
    "ONE_SIDED_RULES",
    "TWO_SIDED_RULES",
    "OracleAnswer",
    "RuleMatch",
    "admissible_codomain",
    "check_one_sided",
    "check_two_sided",
    "default_focus",
    "disjoint",
    "expand_necessity",
    "finitely_verifiable",
    "gen_pcf_term",
    "is_pcf_value",
    "match_two_sided",
    "pcf_evaluate",
    "pcf_soundness_probe",
    "pcf_step",
    "pcf_substitute",
    "prove_one_sided",
    "success_oracle",
    "translate_to_one_sided",
    "two_sided_type_error",
    "value_in",
]
