"""Независимая проверка алгоритмических выводов.

Каждый узел сверяется ровно с одним правилом по имени ``rule``:
форма субъекта, сторона суждения, окружения посылок и все побочные
условия выводимости относительно общего множества ограничений.
Проверка не бросает исключений на неверном выводе: она возвращает
:class:`CheckReport` с путём к первому неверному узлу.
"""

from __future__ import annotations

from typing import Callable, List, Mapping, Tuple

from src.domain.entities.judgements import AlgorithmicDerivation, AlgorithmicNode, Side, TypeEnvironment
from src.domain.entities.reports import CheckReport
from src.domain.entities.terms import (
    DEFAULT_SIGNATURE,
    PAIR,
    Abs,
    App,
    Ctor,
    CtorSignature,
    Fix,
    LocalVar,
    Match,
    TopId,
)
from src.domain.entities.types import (
    OK,
    NecArrow,
    Sum,
    ToArrow,
    Type,
    ctor_type,
)
from src.domain.errors import SchemeArityError
from src.domain.services.constraints.entailment import Entailment
from src.domain.services.inference.instantiate import instantiate_scheme
from src.domain.services.syntax.term_ops import alpha_eq
from src.infrastructure.logging.logging_setup import log_debug, log_stage

_LOG = __name__

RIGHT_RULES = frozenset(
    {"Inst2", "Var2", "VarK2", "AbsR2", "AbnR2", "AppR2", "CnsR2", "MchR2", "FixR2"}
)
LEFT_RULES = frozenset(
    {"Var2", "VarK2", "AppL2", "FunK2", "CnsL2", "CnsK2", "MchL2",
     "CnsDL21", "CnsDL22", "CnsDL23", "AbsDL2"}
)
ALL_RULES = RIGHT_RULES | LEFT_RULES


class _Fault(Exception):
    def __init__(self, reason: str) -> None:
        super().__init__(reason)
        self.reason = reason


class _Checker:
    def __init__(self, constraints, signature: CtorSignature) -> None:
        self.entailment = Entailment(constraints)
        self.signature = signature

    # ---- общие проверки ------------------------------------------------

    def entailed(self, lhs: Type, rhs: Type) -> None:
        if not self.entailment.holds(lhs, rhs):
            raise _Fault(f"side condition not entailed: {lhs!r} <= {rhs!r}")

    @staticmethod
    def arity(node: AlgorithmicNode, n: int) -> None:
        if len(node.premises) != n:
            raise _Fault(f"expected {n} premises, got {len(node.premises)}")

    @staticmethod
    def premise(
        p: AlgorithmicNode,
        side: Side,
        env: TypeEnvironment,
        subject,
        delta=None,
    ) -> None:
        if p.side is not side:
            raise _Fault(f"premise must be a {side.value} judgement")
        if p.env != env:
            raise _Fault("premise environment does not match the rule")
        if not alpha_eq(p.subject, subject):
            raise _Fault("premise subject does not match the rule")
        if side is Side.LEFT and p.delta != delta:
            raise _Fault("premise right-environment does not match the rule")

    def witness(self, node: AlgorithmicNode, key: str):
        if key not in node.witness:
            raise _Fault(f"missing witness field {key!r}")
        return node.witness[key]

    def sum_within(self, value, allowed) -> Sum:
        if not isinstance(value, Sum):
            raise _Fault("witness must be a sum type")
        for name, args in value.summands:
            if name not in allowed or self.signature.arity(name) != len(args):
                raise _Fault(f"sum summand {name} is not allowed here")
        return value

    # ---- правила -------------------------------------------------------

    def check(self, node: AlgorithmicNode) -> None:
        rules = RIGHT_RULES if node.side is Side.RIGHT else LEFT_RULES
        if node.rule not in rules:
            raise _Fault(f"rule {node.rule} does not conclude a {node.side.value} judgement")
        if node.side is Side.RIGHT and node.delta is not None:
            raise _Fault("right judgement carries a right-environment")
        handler: Callable[[AlgorithmicNode], None] = getattr(self, f"_{node.rule.lower()}")
        handler(node)

    def _inst2(self, n: AlgorithmicNode) -> None:
        self.arity(n, 0)
        if not isinstance(n.subject, TopId):
            raise _Fault("Inst2 applies to top-level identifiers")
        schemes = n.env.schemes_for(n.subject.name)
        index = self.witness(n, "scheme_index")
        if not isinstance(index, int) or not 0 <= index < len(schemes):
            raise _Fault(f"no declared scheme #{index} for {n.subject.name}")
        args = tuple(self.witness(n, "args"))
        try:
            body, obligations = instantiate_scheme(schemes[index], args)
        except SchemeArityError as exc:
            raise _Fault(str(exc)) from None
        for k in obligations:
            self.entailed(k.lhs, k.rhs)
        self.entailed(body, n.subject_type)

    def _var2(self, n: AlgorithmicNode) -> None:
        self.arity(n, 0)
        if not isinstance(n.subject, LocalVar):
            raise _Fault("Var2 applies to variables")
        if n.side is Side.RIGHT:
            bound = n.env.local_type(n.subject.name)
            if bound is None:
                raise _Fault(f"variable {n.subject.name} is not typed in the environment")
            self.entailed(bound, n.subject_type)
            return
        if n.delta is None or n.delta[0] != n.subject.name:
            raise _Fault("left Var2 needs the subject variable in the right-environment")
        self.entailed(n.subject_type, n.delta[1])

    def _vark2(self, n: AlgorithmicNode) -> None:
        self.arity(n, 0)
        if n.side is Side.RIGHT:
            if not isinstance(n.subject, (LocalVar, TopId)):
                raise _Fault("VarK2 on the right applies to variables")
            self.entailed(OK, n.subject_type)
            return
        if n.delta is None:
            raise _Fault("left VarK2 needs a non-empty right-environment")
        self.entailed(OK, n.delta[1])

    def _absr2(self, n: AlgorithmicNode) -> None:
        self.arity(n, 1)
        if not isinstance(n.subject, Abs):
            raise _Fault("AbsR2 applies to abstractions")
        x = n.subject.param
        if x in n.env.local_names:
            raise _Fault(f"bound variable {x} clashes with the environment")
        body = n.premises[0]
        b1 = body.env.local_type(x)
        if b1 is None:
            raise _Fault("premise does not type the bound variable")
        self.premise(body, Side.RIGHT, n.env.extend(x, b1), n.subject.body)
        self.entailed(ToArrow(b1, body.subject_type), n.subject_type)

    def _abnr2(self, n: AlgorithmicNode) -> None:
        self.arity(n, 1)
        if not isinstance(n.subject, Abs):
            raise _Fault("AbnR2 applies to abstractions")
        x = n.subject.param
        if x in n.env.local_names:
            raise _Fault(f"bound variable {x} clashes with the environment")
        body = n.premises[0]
        if body.delta is None or body.delta[0] != x:
            raise _Fault("premise must type the bound variable on the right")
        self.premise(body, Side.LEFT, n.env, n.subject.body, body.delta)
        self.entailed(NecArrow(body.delta[1], body.subject_type), n.subject_type)

    def _appr2(self, n: AlgorithmicNode) -> None:
        self.arity(n, 2)
        if not isinstance(n.subject, App):
            raise _Fault("AppR2 applies to applications")
        fn, arg = n.premises
        self.premise(fn, Side.RIGHT, n.env, n.subject.fn)
        self.premise(arg, Side.RIGHT, n.env, n.subject.arg)
        self.entailed(fn.subject_type, ToArrow(arg.subject_type, n.subject_type))

    def _appl2(self, n: AlgorithmicNode) -> None:
        self.arity(n, 2)
        if not isinstance(n.subject, App):
            raise _Fault("AppL2 applies to applications")
        fn, arg = n.premises
        self.premise(fn, Side.RIGHT, n.env, n.subject.fn)
        self.premise(arg, Side.LEFT, n.env, n.subject.arg, n.delta)
        self.entailed(fn.subject_type, NecArrow(arg.subject_type, n.subject_type))

    def _funk2(self, n: AlgorithmicNode) -> None:
        self.arity(n, 1)
        if not isinstance(n.subject, App):
            raise _Fault("FunK2 applies to applications")
        fn = n.premises[0]
        self.premise(fn, Side.LEFT, n.env, n.subject.fn, n.delta)
        self.entailed(NecArrow(OK, n.subject_type), fn.subject_type)

    def _cnsr2(self, n: AlgorithmicNode) -> None:
        if not isinstance(n.subject, Ctor):
            raise _Fault("CnsR2 applies to constructor terms")
        self.arity(n, len(n.subject.args))
        for p, m in zip(n.premises, n.subject.args):
            self.premise(p, Side.RIGHT, n.env, m)
        built = ctor_type(n.subject.name, *(p.subject_type for p in n.premises))
        self.entailed(built, n.subject_type)

    def _index(self, n: AlgorithmicNode) -> int:
        assert isinstance(n.subject, Ctor)
        index = self.witness(n, "index")
        if not isinstance(index, int) or not 0 <= index < len(n.subject.args):
            raise _Fault(f"argument index {index} out of range")
        return index

    def _cnsl2(self, n: AlgorithmicNode) -> None:
        self.arity(n, 1)
        if not isinstance(n.subject, Ctor):
            raise _Fault("CnsL2 applies to constructor terms")
        index = self._index(n)
        p = n.premises[0]
        self.premise(p, Side.LEFT, n.env, n.subject.args[index], n.delta)
        target = self.sum_within(self.witness(n, "sum"), set(self.signature))
        own = target.args_of(n.subject.name)
        if own is None or own[index] != p.subject_type:
            raise _Fault("sum does not carry the premise type at the chosen argument")
        self.entailed(n.subject_type, target)

    def _cnsk2(self, n: AlgorithmicNode) -> None:
        self.arity(n, 1)
        if not isinstance(n.subject, Ctor):
            raise _Fault("CnsK2 applies to constructor terms")
        index = self._index(n)
        p = n.premises[0]
        self.premise(p, Side.LEFT, n.env, n.subject.args[index], n.delta)
        self.entailed(OK, p.subject_type)

    def _disjoint_arrow(self, n: AlgorithmicNode, kind: type) -> None:
        self.arity(n, 0)
        if not isinstance(n.subject, Ctor):
            raise _Fault(f"{n.rule} applies to constructor terms")
        arrow = self.witness(n, "arrow")
        if not isinstance(arrow, kind):
            raise _Fault(f"witness must be a {kind.__name__}")
        self.entailed(n.subject_type, arrow)

    def _cnsdl21(self, n: AlgorithmicNode) -> None:
        self._disjoint_arrow(n, ToArrow)

    def _cnsdl22(self, n: AlgorithmicNode) -> None:
        self._disjoint_arrow(n, NecArrow)

    def _cnsdl23(self, n: AlgorithmicNode) -> None:
        self.arity(n, 0)
        if not isinstance(n.subject, Ctor):
            raise _Fault("CnsDL23 applies to constructor terms")
        others = set(self.signature) - {n.subject.name}
        self.entailed(n.subject_type, self.sum_within(self.witness(n, "sum"), others))

    def _absdl2(self, n: AlgorithmicNode) -> None:
        self.arity(n, 0)
        if not isinstance(n.subject, Abs):
            raise _Fault("AbsDL2 applies to abstractions")
        self.entailed(n.subject_type, self.sum_within(self.witness(n, "sum"), set(self.signature)))

    @staticmethod
    def _pattern_types(n: AlgorithmicNode, m: Match) -> Mapping[str, Type]:
        types = n.witness.get("pattern_types")
        if not isinstance(types, Mapping):
            raise _Fault("missing witness field 'pattern_types'")
        for alt in m.alternatives:
            for v in alt.pattern.variables:
                if v not in types:
                    raise _Fault(f"pattern variable {v} has no type")
        return types

    def _mchr2(self, n: AlgorithmicNode) -> None:
        m = n.subject
        if not isinstance(m, Match):
            raise _Fault("MchR2 applies to match expressions")
        self.arity(n, 1 + len(m.alternatives))
        types = self._pattern_types(n, m)
        scrutinee, branches = n.premises[0], n.premises[1:]
        self.premise(scrutinee, Side.RIGHT, n.env, m.scrutinee)
        expected = Sum(
            tuple(
                (alt.pattern.ctor, tuple(types[v] for v in alt.pattern.variables))
                for alt in m.alternatives
            )
        )
        self.entailed(scrutinee.subject_type, expected)
        for alt, p in zip(m.alternatives, branches):
            for v in alt.pattern.variables:
                if v in n.env.local_names:
                    raise _Fault(f"pattern variable {v} clashes with the environment")
            inner = n.env.extend_all({v: types[v] for v in alt.pattern.variables})
            self.premise(p, Side.RIGHT, inner, alt.body)
            self.entailed(p.subject_type, n.subject_type)

    def _mchl2(self, n: AlgorithmicNode) -> None:
        m = n.subject
        if not isinstance(m, Match):
            raise _Fault("MchL2 applies to match expressions")
        types = self._pattern_types(n, m)
        pairs: List[Tuple[str, int]] = [
            (v, i) for i, alt in enumerate(m.alternatives) for v in alt.pattern.variables
        ]
        self.arity(n, len(m.alternatives) + len(pairs))
        branch_types = tuple(self.witness(n, "branch_types"))
        if len(branch_types) != len(m.alternatives):
            raise _Fault("one (A_i, B_i) pair is needed per branch")
        blocked = set(n.env.local_names) | ({n.delta[0]} if n.delta else set())

        for i, alt in enumerate(m.alternatives):
            a_i, b_i = branch_types[i]
            p = n.premises[i]
            self.premise(p, Side.LEFT, n.env, Ctor(PAIR, (m.scrutinee, alt.body)), n.delta)
            self.entailed(n.subject_type, a_i)
            self.entailed(ctor_type(PAIR, b_i, a_i), p.subject_type)
            pattern = ctor_type(alt.pattern.ctor, *(types[v] for v in alt.pattern.variables))
            self.entailed(pattern, b_i)

        offset = len(m.alternatives)
        for j, (v, i) in enumerate(pairs):
            if v in blocked:
                raise _Fault(f"pattern variable {v} clashes with an environment")
            p = n.premises[offset + j]
            self.premise(p, Side.LEFT, n.env, m.alternatives[i].body, (v, types[v]))
            self.entailed(n.subject_type, p.subject_type)

    def _fixr2(self, n: AlgorithmicNode) -> None:
        self.arity(n, 1)
        if not isinstance(n.subject, Fix):
            raise _Fault("FixR2 applies to fixpoints")
        f = n.subject.name
        if f in n.env.local_names:
            raise _Fault(f"bound variable {f} clashes with the environment")
        body = n.premises[0]
        self.premise(body, Side.RIGHT, n.env.extend(f, n.subject_type), n.subject.body)
        self.entailed(body.subject_type, n.subject_type)


def validate_algorithmic(
    derivation: AlgorithmicDerivation,
    signature: CtorSignature = DEFAULT_SIGNATURE,
) -> CheckReport:
    """Проверить каждый узел вывода против своего правила."""

    checker = _Checker(derivation.constraints, signature)
    stack: List[Tuple[Tuple[int, ...], AlgorithmicNode]] = [((), derivation.root)]
    checked = 0
    while stack:
        path, node = stack.pop()
        try:
            checker.check(node)
        except _Fault as fault:
            log_stage("CHECK", "Узел вывода отклонён", _LOG, rule=node.rule, path=path, reason=fault.reason)
            return CheckReport(False, path, node.rule, fault.reason)
        checked += 1
        for i in reversed(range(len(node.premises))):
            stack.append((path + (i,), node.premises[i]))
    log_debug(f"✅ алгоритмический вывод принят, узлов: {checked}", _LOG)
    return CheckReport.success()


__all__ = ["ALL_RULES", "validate_algorithmic"]
