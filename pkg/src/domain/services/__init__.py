"""Сервисы доменного слоя.

Каждый подпакет отвечает за отдельную зону ответственности:

- syntax: подстановки, свободные переменные, проверки корректности;
- constraints: замыкание множеств ограничений и проверка следования;
- evaluator: пошаговая редукция с топливом и диагностика застревания;
- inference: двусторонний вывод типов и проверка объявленных схем;
- verdict: вердикты well-typed / ill-typed и генератор термов;
- kernel: проверка выводов PCF, перевод, поиск вывода и оракул.
"""
