"""Прикладной слой: CLI, загрузка модулей и сценарии использования
(команды ``eval``/``infer``/``verdict``/``check``/``kernel`` и фаззинг).
"""
