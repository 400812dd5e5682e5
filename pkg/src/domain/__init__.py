"""Доменный слой: сущности, ошибки и чистые сервисы вывода типов.

Здесь нет ввода-вывода: парсинг, логирование и файлы живут
в ``src.infrastructure``.
"""
