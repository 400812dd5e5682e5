"""Проверка определений верхнего уровня против объявленных схем.

Для ``f : ∀ā. C ⇒ A`` тело ``f`` выводится справа, после чего для
каждого кандидата ``(C', a')`` ищется подстановка σ свежих переменных
с ``a'σ = A`` и ``C ⊢ C'σ``. Кванторы ā остаются жёсткими.

Подстановка строится жадно: ограничения разлагаются структурно, затем
переменные получают границы, в которых уже нет неназначенных
переменных. Пробуются две стратегии: сначала верхние границы, затем
нижние. Оставшиеся переменные получают ``Ok``; окончательное решение
принимает проверка выводимости всех ограничений.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, Mapping, Optional, Sequence, Tuple

from src.domain.entities.judgements import InferredJudgement, Side, TypeEnvironment
from src.domain.entities.terms import DEFAULT_SIGNATURE, CtorSignature, TopModule
from src.domain.entities.types import (
    OK,
    Constraint,
    NecArrow,
    OkType,
    Scheme,
    SchemeEnv,
    Sum,
    ToArrow,
    TVar,
    Type,
    constraint_vars,
    type_vars,
)
from src.domain.errors import WellFormednessError
from src.domain.services.constraints.closure import is_consistent, sorted_constraints
from src.domain.services.constraints.entailment import Entailment
from src.domain.services.inference.engine import DEFAULT_PRODUCT_CAP, InferenceEngine, Partial
from src.domain.services.inference.fresh import FreshSupply
from src.domain.services.syntax.type_ops import apply_type_subst, subst_constraints
from src.infrastructure.logging.logging_setup import log_debug, log_stage

_LOG = __name__

UPPER_FIRST = "upper"
LOWER_FIRST = "lower"
POLICIES = (UPPER_FIRST, LOWER_FIRST)
MAX_ROUNDS = 1_000


@dataclass(frozen=True)
class DefinitionVerdict:
    """Итог проверки одной пары «определение, схема»."""

    name: str
    scheme: Scheme
    accepted: bool
    witness: Optional[InferredJudgement] = None
    substitution: Mapping[str, Type] = field(default_factory=dict)
    candidates: int = 0
    truncated: bool = False
    reason: str = ""


class _Solver:
    """Жадный поиск σ для одного кандидата."""

    def __init__(self, ambient: Entailment, rigid: FrozenSet[str], policy: str) -> None:
        self.ambient = ambient
        self.rigid = rigid
        self.policy = policy
        self.sigma: Dict[str, Type] = {}

    def _resolve(self, ty: Type) -> Type:
        return apply_type_subst(ty, self.sigma)

    def _open(self, ty: Type) -> FrozenSet[str]:
        return type_vars(ty) - self.rigid - set(self.sigma)

    def _assign(self, name: str, ty: Type) -> None:
        self.sigma = {k: apply_type_subst(v, {name: ty}) for k, v in self.sigma.items()}
        self.sigma[name] = ty

    def _match(self, pattern: Type, target: Type) -> bool:
        """Унификация ``pattern`` с жёстким ``target`` по свободным переменным."""

        pattern = self._resolve(pattern)
        if isinstance(pattern, TVar) and pattern.name not in self.rigid:
            if pattern.name in type_vars(target):
                return pattern == target
            self._assign(pattern.name, target)
            return True
        if isinstance(pattern, TVar) or isinstance(pattern, OkType):
            return pattern == target
        if isinstance(pattern, Sum):
            if not isinstance(target, Sum) or pattern.heads != target.heads:
                return False
            for name, args in pattern.summands:
                other = target.args_of(name) or ()
                if len(other) != len(args):
                    return False
                if not all(self._match(x, y) for x, y in zip(args, other)):
                    return False
            return True
        if type(pattern) is not type(target):
            return False
        return self._match(pattern.dom, target.dom) and self._match(pattern.cod, target.cod)  # type: ignore[union-attr]

    @staticmethod
    def _decompose(lhs: Type, rhs: Type) -> Optional[List[Constraint]]:
        if isinstance(lhs, ToArrow) and isinstance(rhs, ToArrow):
            return [Constraint(rhs.dom, lhs.dom), Constraint(lhs.cod, rhs.cod)]
        if isinstance(lhs, NecArrow) and isinstance(rhs, NecArrow):
            return [Constraint(lhs.dom, rhs.dom), Constraint(rhs.cod, lhs.cod)]
        if isinstance(lhs, Sum) and isinstance(rhs, Sum):
            if not lhs.heads <= rhs.heads:
                raise _Unsolvable(f"{lhs!r} has constructors outside {rhs!r}")
            out: List[Constraint] = []
            for name, args in lhs.summands:
                other = rhs.args_of(name) or ()
                out.extend(Constraint(x, y) for x, y in zip(args, other))
            return out
        return None

    def _simplify(self, pending: Sequence[Constraint]) -> Tuple[List[Constraint], bool]:
        """Раскрыть подстановку и разложить структурные ограничения."""

        progress = False
        work = list(pending)
        out: List[Constraint] = []
        while work:
            k = work.pop()
            lhs, rhs = self._resolve(k.lhs), self._resolve(k.rhs)
            if isinstance(rhs, OkType) or lhs == rhs:
                progress = True
                continue
            if not self._open(lhs) and not self._open(rhs):
                if not self.ambient.holds(lhs, rhs):
                    raise _Unsolvable(f"{lhs!r} <= {rhs!r} is not entailed")
                progress = True
                continue
            parts = self._decompose(lhs, rhs)
            if parts is not None:
                work.extend(parts)
                progress = True
                continue
            out.append(Constraint(lhs, rhs))
        return sorted_constraints(out), progress

    def _bounds(self, pending: Sequence[Constraint]) -> List[Tuple[str, Type, str]]:
        found: List[Tuple[str, Type, str]] = []
        for k in pending:
            if isinstance(k.lhs, TVar) and self._open(k.lhs) and not self._open(k.rhs):
                found.append((k.lhs.name, k.rhs, UPPER_FIRST))
            if isinstance(k.rhs, TVar) and self._open(k.rhs) and not self._open(k.lhs):
                found.append((k.rhs.name, k.lhs, LOWER_FIRST))
        return found

    def _rigid_step(self, pending: Sequence[Constraint]) -> bool:
        """Заменить жёсткую сторону её границей из окружающих ограничений."""

        chains = self.ambient.chain
        for k in pending:
            if isinstance(k.lhs, TVar) and k.lhs.name in self.rigid and self._open(k.rhs):
                for bound in chains:
                    if bound.lhs == k.lhs and type(bound.rhs) is type(k.rhs):
                        self._replace(pending, k, Constraint(bound.rhs, k.rhs))
                        return True
            if isinstance(k.rhs, TVar) and k.rhs.name in self.rigid and self._open(k.lhs):
                for bound in chains:
                    if bound.rhs == k.rhs and type(bound.lhs) is type(k.lhs):
                        self._replace(pending, k, Constraint(k.lhs, bound.lhs))
                        return True
        return False

    def _replace(self, pending: Sequence[Constraint], old: Constraint, new: Constraint) -> None:
        assert isinstance(pending, list)
        pending[pending.index(old)] = new

    def _var_step(self, pending: Sequence[Constraint]) -> bool:
        for k in pending:
            for var, other in ((k.lhs, k.rhs), (k.rhs, k.lhs)):
                if isinstance(var, TVar) and self._open(var) and var.name not in type_vars(other):
                    self._assign(var.name, other)
                    return True
        return False

    def solve(self, inferred: FrozenSet[Constraint], ty: Type, target: Type) -> Optional[Dict[str, Type]]:
        try:
            if not self._match(ty, target):
                return None
            pending: List[Constraint] = sorted_constraints(inferred)
            for _ in range(MAX_ROUNDS):
                pending, progress = self._simplify(pending)
                if not pending:
                    break
                bounds = self._bounds(pending)
                if bounds:
                    preferred = [b for b in bounds if b[2] == self.policy] or bounds
                    name, bound, _ = preferred[0]
                    self._assign(name, bound)
                    continue
                if self._rigid_step(pending) or self._var_step(pending):
                    continue
                if not progress:
                    break
        except _Unsolvable as exc:
            log_debug(f"кандидат отклонён: {exc}", _LOG)
            return None

        for name in sorted(constraint_vars(inferred) | type_vars(ty)):
            if name not in self.rigid and name not in self.sigma:
                self._assign(name, OK)
        if not self.ambient.holds_all(subst_constraints(inferred, self.sigma)):
            return None
        return dict(self.sigma)


class _Unsolvable(Exception):
    pass


def solve_candidate(
    ambient: Entailment,
    rigid: FrozenSet[str],
    inferred: FrozenSet[Constraint],
    ty: Type,
    target: Type,
) -> Optional[Dict[str, Type]]:
    """σ с ``ty σ = target`` и ``ambient ⊢ inferred σ`` или ``None``."""

    for policy in POLICIES:
        found = _Solver(ambient, rigid, policy).solve(inferred, ty, target)
        if found is not None:
            return found
    return None


def check_definition(
    name: str,
    body,
    scheme: Scheme,
    env: TypeEnvironment,
    *,
    signature: CtorSignature = DEFAULT_SIGNATURE,
    product_cap: int = DEFAULT_PRODUCT_CAP,
) -> DefinitionVerdict:
    rigid = frozenset(scheme.variables)
    ambient = Entailment(scheme.constraints)
    supply = FreshSupply(prefix="t")
    supply.reserve(rigid)
    for _, schemes in env.schemes:
        for s in schemes:
            supply.reserve(s.variables)
    engine = InferenceEngine(signature, supply, product_cap, prune=True)
    partials: List[Partial] = engine.right(env, body)

    for index, p in enumerate(partials, start=1):
        sigma = solve_candidate(ambient, rigid, p.constraints, p.ty, scheme.body)
        if sigma is None:
            continue
        witness = InferredJudgement(
            constraints=p.constraints,
            env=env,
            subject=body,
            subject_type=p.ty,
            side=Side.RIGHT,
            derivation=p.node,
        )
        return DefinitionVerdict(name, scheme, True, witness, sigma, index, engine.truncated)

    reason = f"no inferred judgement instantiates to the declared type ({len(partials)} candidates)"
    return DefinitionVerdict(name, scheme, False, None, {}, len(partials), engine.truncated, reason)


def check_toplevel(
    module: TopModule,
    schemes: SchemeEnv,
    *,
    signature: CtorSignature = DEFAULT_SIGNATURE,
    product_cap: int = DEFAULT_PRODUCT_CAP,
) -> Tuple[DefinitionVerdict, ...]:
    """Проверить ``⊢ 𝓜 : Γ`` для каждой объявленной схемы каждого определения."""

    for ident in schemes:
        if module.lookup(ident) is None:
            raise WellFormednessError(f"scheme declared for undefined identifier {ident}")
    env = TypeEnvironment.from_schemes(schemes)
    all_constraints = [k for group in schemes.values() for s in group for k in s.constraints]
    if not is_consistent(all_constraints):
        log_stage("WARN", "Объявленные схемы несовместны", _LOG)

    verdicts: List[DefinitionVerdict] = []
    for name, body in module.definitions:
        declared = schemes.get(name, ())
        if not declared:
            verdicts.append(
                DefinitionVerdict(name, Scheme.mono(OK), False, reason="no declared scheme")
            )
            continue
        for scheme in declared:
            verdict = check_definition(
                name, body, scheme, env, signature=signature, product_cap=product_cap
            )
            log_stage(
                "CHECK",
                "Определение проверено",
                _LOG,
                name=name,
                accepted=verdict.accepted,
                candidates=verdict.candidates,
            )
            verdicts.append(verdict)
    return tuple(verdicts)


__all__ = ["DefinitionVerdict", "solve_candidate", "check_definition", "check_toplevel"]
