"""Отношения над типами ядра: непересекаемость, проверяемость, нормализация."""

from __future__ import annotations

from typing import Optional

from src.domain.entities.pcf import PComp, PNat, PNec, POk, PProd, PTo, PcfType


def _kind(ty: PcfType) -> Optional[str]:
    if isinstance(ty, PNat):
        return "nat"
    if isinstance(ty, (PTo, PNec)):
        return "arrow"
    if isinstance(ty, PProd):
        return "product"
    return None


def disjoint(a: PcfType, b: PcfType) -> bool:
    """``A ‖ B``: один тип Nat, стрелка или произведение, а другой нет.

    ``Ok`` и дополнения ни с чем не разделены: для них ни одна из трёх
    форм не определена.
    """

    ka, kb = _kind(a), _kind(b)
    if ka is None or kb is None:
        return False
    return ka != kb


def finitely_verifiable(ty: PcfType) -> bool:
    """``F ::= Nat | F × F``."""

    if isinstance(ty, PNat):
        return True
    if isinstance(ty, PProd):
        return finitely_verifiable(ty.left) and finitely_verifiable(ty.right)
    return False


def admissible_codomain(ty: PcfType) -> bool:
    """Допустимая правая часть ``⤙``: проверяемый тип, в котором может стоять ``Ok``."""

    if isinstance(ty, (PNat, POk)):
        return True
    if isinstance(ty, PProd):
        return admissible_codomain(ty.left) and admissible_codomain(ty.right)
    return False


def two_sided_type_error(ty: PcfType) -> Optional[str]:
    """Почему тип не принадлежит двусторонней системе, либо ``None``."""

    if isinstance(ty, (PNat, POk)):
        return None
    if isinstance(ty, PComp):
        return "complements are not two-sided types"
    if isinstance(ty, PProd):
        return two_sided_type_error(ty.left) or two_sided_type_error(ty.right)
    if isinstance(ty, PNec) and not admissible_codomain(ty.cod):
        return "necessity codomain must be built from Nat, Ok and products"
    return two_sided_type_error(ty.dom) or two_sided_type_error(ty.cod)


def expand_necessity(ty: PcfType) -> PcfType:
    """Односторонняя форма: ``B ⤙ A`` раскрывается в ``B^c → A^c``."""

    if isinstance(ty, (PNat, POk)):
        return ty
    if isinstance(ty, PComp):
        return PComp(expand_necessity(ty.inner))
    if isinstance(ty, PProd):
        return PProd(expand_necessity(ty.left), expand_necessity(ty.right))
    if isinstance(ty, PTo):
        return PTo(expand_necessity(ty.dom), expand_necessity(ty.cod))
    return PTo(PComp(expand_necessity(ty.dom)), PComp(expand_necessity(ty.cod)))


__all__ = [
    "disjoint",
    "finitely_verifiable",
    "admissible_codomain",
    "two_sided_type_error",
    "expand_necessity",
]
