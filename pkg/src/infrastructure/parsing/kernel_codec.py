"""JSON-формат выводов ядра.

``{"version": 1, "system": "two-sided" | "one-sided", "root": NODE}``, где
``NODE = {"rule", "conclusion", "premises", "side"?}``. Заключение и типы
побочного условия записаны поверхностным синтаксисом, чтобы корпус
можно было писать и читать руками.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Any

from src.domain.entities.pcf import KernelDerivation
from src.domain.errors import DerivationFormatError, TwoSideError
from src.infrastructure.parsing.json_codec import FORMAT_VERSION
from src.infrastructure.parsing.pcf_parser import parse_pcf_type, parse_sequent
from src.infrastructure.parsing.pcf_printer import print_pcf_type, print_sequent

Json = Any


class KernelSystem(str, Enum):
    TWO_SIDED = "two-sided"
    ONE_SIDED = "one-sided"


@dataclass(frozen=True)
class KernelDocument:
    system: KernelSystem
    root: KernelDerivation


def _node_to_json(d: KernelDerivation) -> Json:
    out: Json = {
        "rule": d.rule,
        "conclusion": print_sequent(d.conclusion),
        "premises": [_node_to_json(p) for p in d.premises],
    }
    if d.side:
        out["side"] = [print_pcf_type(t) for t in d.side]
    return out


def _node_from_json(data: Json, one_sided: bool) -> KernelDerivation:
    return KernelDerivation(
        rule=str(data["rule"]),
        conclusion=parse_sequent(data["conclusion"], one_sided=one_sided),
        premises=tuple(_node_from_json(p, one_sided) for p in data.get("premises", [])),
        side=tuple(parse_pcf_type(t, one_sided=one_sided) for t in data.get("side", [])),
    )


def kernel_to_json(d: KernelDerivation, system: KernelSystem) -> Json:
    return {"version": FORMAT_VERSION, "system": system.value, "root": _node_to_json(d)}


def kernel_from_json(data: Json) -> KernelDocument:
    try:
        if data.get("version") != FORMAT_VERSION:
            raise DerivationFormatError(f"unsupported derivation format version {data.get('version')!r}")
        system = KernelSystem(data["system"])
        root = _node_from_json(data["root"], system is KernelSystem.ONE_SIDED)
    except DerivationFormatError:
        raise
    except (KeyError, TypeError, ValueError, AttributeError) as exc:
        raise DerivationFormatError(f"malformed kernel derivation: {exc}") from None
    except TwoSideError as exc:
        raise DerivationFormatError(f"malformed kernel derivation: {exc}") from None
    return KernelDocument(system, root)


__all__ = ["KernelSystem", "KernelDocument", "kernel_to_json", "kernel_from_json"]
