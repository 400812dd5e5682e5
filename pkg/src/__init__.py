"""Корневой пакет движка двустороннего вывода типов.

- src.application: CLI и сценарии использования;
- src.domain: сущности и чистые сервисы вывода, вердиктов и ядра;
- src.infrastructure: парсинг, кодеки, логирование, хранилище отчётов.
"""
