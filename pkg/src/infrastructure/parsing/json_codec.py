"""JSON-представление термов, типов, суждений и алгоритмических выводов.

Формат версионирован (``version: 1``), схемы лежат в ``schemas/``.
Ключи сортируются при записи, поэтому одинаковые значения дают
одинаковые байты.
"""

from __future__ import annotations

import json
from typing import Any, Callable, Dict, Mapping, Tuple

from src.domain.entities.judgements import (
    AlgorithmicDerivation,
    AlgorithmicNode,
    Delta,
    InferredJudgement,
    Side,
    TypeEnvironment,
)
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
from src.domain.entities.types import (
    OK,
    Constraint,
    NecArrow,
    OkType,
    Scheme,
    Sum,
    ToArrow,
    TVar,
    Type,
)
from src.domain.errors import DerivationFormatError, TwoSideError
from src.domain.services.constraints.closure import sorted_constraints

FORMAT_VERSION = 1

Json = Any


# ---------------------------------------------------------------- термы


def term_to_json(t: Term) -> Json:
    if isinstance(t, LocalVar):
        return {"tag": "var", "name": t.name}
    if isinstance(t, TopId):
        return {"tag": "top", "name": t.name}
    if isinstance(t, Ctor):
        return {"tag": "ctor", "name": t.name, "args": [term_to_json(a) for a in t.args]}
    if isinstance(t, App):
        return {"tag": "app", "fn": term_to_json(t.fn), "arg": term_to_json(t.arg)}
    if isinstance(t, Abs):
        return {"tag": "abs", "param": t.param, "body": term_to_json(t.body)}
    if isinstance(t, Fix):
        return {"tag": "fix", "name": t.name, "body": term_to_json(t.body)}
    return {
        "tag": "match",
        "scrutinee": term_to_json(t.scrutinee),
        "alternatives": [
            {"ctor": alt.pattern.ctor, "vars": list(alt.pattern.variables), "body": term_to_json(alt.body)}
            for alt in t.alternatives
        ],
    }


def term_from_json(data: Json) -> Term:
    tag = data["tag"]
    if tag == "var":
        return LocalVar(str(data["name"]))
    if tag == "top":
        return TopId(str(data["name"]))
    if tag == "ctor":
        return Ctor(str(data["name"]), tuple(term_from_json(a) for a in data["args"]))
    if tag == "app":
        return App(term_from_json(data["fn"]), term_from_json(data["arg"]))
    if tag == "abs":
        return Abs(str(data["param"]), term_from_json(data["body"]))
    if tag == "fix":
        return Fix(str(data["name"]), term_from_json(data["body"]))
    if tag == "match":
        return Match(
            term_from_json(data["scrutinee"]),
            tuple(
                Alternative(Pattern(str(a["ctor"]), tuple(str(v) for v in a["vars"])), term_from_json(a["body"]))
                for a in data["alternatives"]
            ),
        )
    raise DerivationFormatError(f"unknown term tag {tag!r}")


# ---------------------------------------------------------------- типы


def type_to_json(ty: Type) -> Json:
    if isinstance(ty, TVar):
        return {"tag": "tvar", "name": ty.name}
    if isinstance(ty, OkType):
        return {"tag": "ok"}
    if isinstance(ty, Sum):
        return {
            "tag": "sum",
            "summands": [{"ctor": name, "args": [type_to_json(a) for a in args]} for name, args in ty.summands],
        }
    tag = "to" if isinstance(ty, ToArrow) else "nec"
    return {"tag": tag, "dom": type_to_json(ty.dom), "cod": type_to_json(ty.cod)}


def type_from_json(data: Json) -> Type:
    tag = data["tag"]
    if tag == "tvar":
        return TVar(str(data["name"]))
    if tag == "ok":
        return OK
    if tag == "sum":
        return Sum(tuple((str(s["ctor"]), tuple(type_from_json(a) for a in s["args"])) for s in data["summands"]))
    if tag == "to":
        return ToArrow(type_from_json(data["dom"]), type_from_json(data["cod"]))
    if tag == "nec":
        return NecArrow(type_from_json(data["dom"]), type_from_json(data["cod"]))
    raise DerivationFormatError(f"unknown type tag {tag!r}")


def constraints_to_json(constraints) -> Json:
    return [{"lhs": type_to_json(k.lhs), "rhs": type_to_json(k.rhs)} for k in sorted_constraints(constraints)]


def constraints_from_json(data: Json) -> frozenset:
    return frozenset(Constraint(type_from_json(k["lhs"]), type_from_json(k["rhs"])) for k in data)


def scheme_to_json(scheme: Scheme) -> Json:
    return {
        "vars": list(scheme.variables),
        "constraints": constraints_to_json(scheme.constraints),
        "body": type_to_json(scheme.body),
    }


def scheme_from_json(data: Json) -> Scheme:
    return Scheme(
        tuple(str(v) for v in data["vars"]),
        constraints_from_json(data["constraints"]),
        type_from_json(data["body"]),
    )


def _schemes_to_json(env: TypeEnvironment) -> Json:
    return {name: [scheme_to_json(s) for s in schemes] for name, schemes in env.schemes}


def _schemes_from_json(data: Json) -> Tuple[Tuple[str, Tuple[Scheme, ...]], ...]:
    return tuple(sorted((str(k), tuple(scheme_from_json(s) for s in v)) for k, v in data.items()))


def _locals_to_json(env: TypeEnvironment) -> Json:
    return [[name, type_to_json(ty)] for name, ty in env.locals]


def _locals_from_json(data: Json) -> Tuple[Tuple[str, Type], ...]:
    return tuple((str(name), type_from_json(ty)) for name, ty in data)


def _delta_to_json(delta: Delta) -> Json:
    return None if delta is None else {"name": delta[0], "type": type_to_json(delta[1])}


def _delta_from_json(data: Json) -> Delta:
    return None if data is None else (str(data["name"]), type_from_json(data["type"]))


# ---------------------------------------------------------------- данные свидетелей

_WITNESS_CODECS: Dict[str, Tuple[Callable[[Any], Json], Callable[[Json], Any]]] = {
    "scheme_index": (int, int),
    "index": (int, int),
    "args": (lambda v: [type_to_json(t) for t in v], lambda d: tuple(type_from_json(t) for t in d)),
    "sum": (type_to_json, type_from_json),
    "arrow": (type_to_json, type_from_json),
    "pattern_types": (
        lambda v: {k: type_to_json(t) for k, t in v.items()},
        lambda d: {str(k): type_from_json(t) for k, t in d.items()},
    ),
    "branch_types": (
        lambda v: [[type_to_json(a), type_to_json(b)] for a, b in v],
        lambda d: tuple((type_from_json(a), type_from_json(b)) for a, b in d),
    ),
}


def _witness_to_json(witness: Mapping[str, Any]) -> Json:
    out = {}
    for key, value in witness.items():
        if key not in _WITNESS_CODECS:
            raise DerivationFormatError(f"unknown witness field {key!r}")
        out[key] = _WITNESS_CODECS[key][0](value)
    return out


def _witness_from_json(data: Json) -> Dict[str, Any]:
    out = {}
    for key, value in data.items():
        if key not in _WITNESS_CODECS:
            raise DerivationFormatError(f"unknown witness field {key!r}")
        out[key] = _WITNESS_CODECS[key][1](value)
    return out


# ---------------------------------------------------------------- суждения и выводы


def _node_to_json(node: AlgorithmicNode) -> Json:
    return {
        "rule": node.rule,
        "env": _locals_to_json(node.env),
        "subject": term_to_json(node.subject),
        "type": type_to_json(node.subject_type),
        "side": node.side.value,
        "delta": _delta_to_json(node.delta),
        "premises": [_node_to_json(p) for p in node.premises],
        "witness": _witness_to_json(node.witness),
    }


def _node_from_json(data: Json, schemes) -> AlgorithmicNode:
    return AlgorithmicNode(
        rule=str(data["rule"]),
        env=TypeEnvironment(_locals_from_json(data["env"]), schemes),
        subject=term_from_json(data["subject"]),
        subject_type=type_from_json(data["type"]),
        side=Side(data["side"]),
        delta=_delta_from_json(data.get("delta")),
        premises=tuple(_node_from_json(p, schemes) for p in data.get("premises", [])),
        witness=_witness_from_json(data.get("witness", {})),
    )


def derivation_to_json(d: AlgorithmicDerivation) -> Json:
    return {
        "version": FORMAT_VERSION,
        "schemes": _schemes_to_json(d.root.env),
        "constraints": constraints_to_json(d.constraints),
        "root": _node_to_json(d.root),
    }


def judgement_to_json(j: InferredJudgement, with_derivation: bool = False) -> Json:
    out = {
        "version": FORMAT_VERSION,
        "side": j.side.value,
        "constraints": constraints_to_json(j.constraints),
        "env": {"locals": _locals_to_json(j.env), "schemes": _schemes_to_json(j.env)},
        "subject": term_to_json(j.subject),
        "type": type_to_json(j.subject_type),
        "delta": _delta_to_json(j.delta),
    }
    if with_derivation and j.derivation is not None:
        out["derivation"] = _node_to_json(j.derivation)
    return out


def _guarded(decode: Callable[[Json], Any], data: Json, what: str) -> Any:
    try:
        if data.get("version") != FORMAT_VERSION:
            raise DerivationFormatError(f"unsupported {what} format version {data.get('version')!r}")
        return decode(data)
    except DerivationFormatError:
        raise
    except (KeyError, TypeError, ValueError, AttributeError) as exc:
        raise DerivationFormatError(f"malformed {what}: {exc}") from None
    except TwoSideError as exc:
        raise DerivationFormatError(f"malformed {what}: {exc}") from None


def derivation_from_json(data: Json) -> AlgorithmicDerivation:
    def decode(d: Json) -> AlgorithmicDerivation:
        schemes = _schemes_from_json(d.get("schemes", {}))
        return AlgorithmicDerivation(constraints_from_json(d["constraints"]), _node_from_json(d["root"], schemes))

    return _guarded(decode, data, "derivation")


def judgement_from_json(data: Json) -> InferredJudgement:
    def decode(d: Json) -> InferredJudgement:
        schemes = _schemes_from_json(d["env"].get("schemes", {}))
        env = TypeEnvironment(_locals_from_json(d["env"]["locals"]), schemes)
        node = d.get("derivation")
        return InferredJudgement(
            constraints=constraints_from_json(d["constraints"]),
            env=env,
            subject=term_from_json(d["subject"]),
            subject_type=type_from_json(d["type"]),
            side=Side(d["side"]),
            delta=_delta_from_json(d.get("delta")),
            derivation=None if node is None else _node_from_json(node, schemes),
        )

    return _guarded(decode, data, "judgement")


def dumps(data: Json) -> str:
    """Каноническая запись: отсортированные ключи, отступ 2, перевод строки в конце."""

    return json.dumps(data, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def loads(text: str) -> Json:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise DerivationFormatError(f"invalid JSON at line {exc.lineno}: {exc.msg}") from None


__all__ = [
    "FORMAT_VERSION",
    "term_to_json",
    "term_from_json",
    "type_to_json",
    "type_from_json",
    "constraints_to_json",
    "constraints_from_json",
    "scheme_to_json",
    "scheme_from_json",
    "derivation_to_json",
    "derivation_from_json",
    "judgement_to_json",
    "judgement_from_json",
    "dumps",
    "loads",
]
