"""Доменные сущности: термы, типы, суждения, вердикты и объекты ядра PCF.

Все сущности неизменяемы (frozen dataclass), импортируются из
конкретных модулей: ``src.domain.entities.terms``, ``types`` и т.д.
"""
