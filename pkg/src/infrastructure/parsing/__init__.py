"""Поверхностный синтаксис, печать и JSON: язык с конструкторами и PCF ядра."""

from src.infrastructure.parsing.json_codec import (
    derivation_from_json,
    derivation_to_json,
    dumps,
    judgement_from_json,
    judgement_to_json,
    loads,
    term_from_json,
    term_to_json,
    type_from_json,
    type_to_json,
)
from src.infrastructure.parsing.kernel_codec import KernelDocument, KernelSystem, kernel_from_json, kernel_to_json
from src.infrastructure.parsing.pcf_parser import parse_pcf_term, parse_pcf_type, parse_sequent, parse_typing
from src.infrastructure.parsing.pcf_printer import (
    print_kernel_derivation,
    print_pcf_term,
    print_pcf_type,
    print_sequent,
    print_typing,
)
from src.infrastructure.parsing.printer import (
    print_constraints,
    print_derivation,
    print_judgement,
    print_module,
    print_scheme,
    print_term,
    print_type,
)
from src.infrastructure.parsing.term_parser import (
    SourceModule,
    parse_binding,
    parse_constraints,
    parse_module,
    parse_scheme,
    parse_term,
    parse_type,
)

__all__ = [
    "KernelDocument",
    "KernelSystem",
    "kernel_from_json",
    "kernel_to_json",
    "parse_pcf_term",
    "parse_pcf_type",
    "parse_sequent",
    "parse_typing",
    "print_kernel_derivation",
    "print_pcf_term",
    "print_pcf_type",
    "print_sequent",
    "print_typing",
    "SourceModule",
    "parse_binding",
    "parse_constraints",
    "parse_module",
    "parse_scheme",
    "parse_term",
    "parse_type",
    "print_constraints",
    "print_derivation",
    "print_judgement",
    "print_module",
    "print_scheme",
    "print_term",
    "print_type",
    "derivation_from_json",
    "derivation_to_json",
    "dumps",
    "judgement_from_json",
    "judgement_to_json",
    "loads",
    "term_from_json",
    "term_to_json",
    "type_from_json",
    "type_to_json",
]
