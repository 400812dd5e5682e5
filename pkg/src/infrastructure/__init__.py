"""Инфраструктурный слой: парсеры и принтеры, JSON-кодеки, логирование
и файловое хранилище отчётов фаззинга.
"""
