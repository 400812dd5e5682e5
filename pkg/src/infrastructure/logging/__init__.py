"""Инфраструктура логирования движка."""
