"""Сценарии использования (use-cases) прикладного слоя.

Каждый модуль в этой директории отвечает за один сценарий:
``commands`` для одиночных команд CLI, ``run_fuzz`` для фаззинга.
"""
