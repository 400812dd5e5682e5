"""Порты доменного слоя, реализуемые инфраструктурой."""
