"""Настройки запуска: значения по умолчанию, env и флаги CLI."""

from src.config.config import AppConfig, load_config

__all__ = ["AppConfig", "load_config"]
