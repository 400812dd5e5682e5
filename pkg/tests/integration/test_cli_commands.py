"""Сквозные сценарии CLI: каждая команда на файлах корпуса и её код выхода."""

from __future__ import annotations

import json
from pathlib import Path

import pytest

from src.application.cli import main
from tests.conftest import CORPUS, PRELUDE


def _run(capsys, tmp_path: Path, *argv: str) -> tuple[int, str]:
    code = main([*argv, "--log-file", str(tmp_path / "twoside.log")])
    return code, capsys.readouterr().out


def _run_json(capsys, tmp_path: Path, *argv: str) -> tuple[int, dict]:
    code, out = _run(capsys, tmp_path, *argv, "--json")
    return code, json.loads(out)


@pytest.mark.integration
def test_eval_expression(capsys, tmp_path) -> None:
    code, payload = _run_json(capsys, tmp_path, "eval", str(PRELUDE), "--expr", "map (fun x -> Succ(x)) (Zero :: [])")

    assert code == 0
    assert payload["command"] == "eval"
    assert payload["outcome"] == {"kind": "value", "steps": payload["outcome"]["steps"], "value": "Succ(Zero) :: []"}


@pytest.mark.integration
def test_eval_without_main_is_a_usage_error(capsys, tmp_path) -> None:
    code, _ = _run(capsys, tmp_path, "eval", str(PRELUDE))

    assert code == 2


@pytest.mark.integration
def test_infer_with_local_binding(capsys, tmp_path) -> None:
    code, payload = _run_json(
        capsys, tmp_path, "infer", str(PRELUDE), "--expr", "fun x -> f x", "--bind", "f : [] ~> Ok"
    )

    assert code == 0
    assert payload["side"] == "right"
    assert len(payload["judgements"]) == 4
    assert all(entry["valid"] for entry in payload["judgements"])
    assert [entry["consistent"] for entry in payload["judgements"]].count(False) == 1


@pytest.mark.integration
def test_infer_left_on_definition(capsys, tmp_path) -> None:
    code, payload = _run_json(capsys, tmp_path, "infer", str(PRELUDE), "--term", "head", "--left")

    assert code == 0
    assert payload["side"] == "left"


@pytest.mark.integration
def test_delta_needs_left(capsys, tmp_path) -> None:
    code, _ = _run(capsys, tmp_path, "infer", str(PRELUDE), "--expr", "Zero", "--delta", "y : a")

    assert code == 2


@pytest.mark.integration
def test_verdict_on_head_of_empty_map(capsys, tmp_path) -> None:
    code, out = _run(capsys, tmp_path, "verdict", str(PRELUDE), "--expr", "head (map (fun x -> x) [])")

    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "ill-typed"
    assert lines[1].startswith("witness: ")
    assert lines[-1].startswith("evaluation: stuck")


@pytest.mark.integration
def test_verdict_syntax_error_exits_with_usage_code(capsys, tmp_path) -> None:
    code, _ = _run(capsys, tmp_path, "verdict", str(PRELUDE), "--expr", "fun -> x")

    assert code == 2


@pytest.mark.integration
def test_constraints_file_with_entailment_queries(capsys, tmp_path) -> None:
    path = tmp_path / "c.cs"
    path.write_text("{[] ~> Ok <= a3, a3 <= a2 -> a4}\n", encoding="utf-8")

    code, payload = _run_json(capsys, tmp_path, "constraints", str(path), "--entails", "{a3 <= a2 -> a4, a2 <= a3}")

    assert code == 0
    assert payload["consistent"] is False
    assert payload["given"] == 2
    assert {g["goal"]: g["entailed"] for g in payload["goals"]} == {
        "a3 <= a2 -> a4": True,
        "a2 <= a3": False,
    }


@pytest.mark.integration
def test_check_prelude_and_weakened_module(capsys, tmp_path) -> None:
    code, out = _run(capsys, tmp_path, "check", str(PRELUDE))
    assert code == 0
    assert out.count("accepted") == 3

    weakened = tmp_path / "weak.2st"
    weakened.write_text(
        PRELUDE.read_text(encoding="utf-8").replace(
            "head : forall a. {} => (a::Ok) ~> a;", "head : forall a. {} => Ok ~> a;"
        ),
        encoding="utf-8",
    )
    code, payload = _run_json(capsys, tmp_path, "check", str(weakened))
    assert code == 1
    assert payload["rejected"] == 1


@pytest.mark.integration
def test_missing_module_file(capsys, tmp_path) -> None:
    code, _ = _run(capsys, tmp_path, "check", str(tmp_path / "nowhere.2st"))

    assert code == 2


@pytest.mark.integration
def test_invalid_config_value(capsys, tmp_path) -> None:
    code, _ = _run(capsys, tmp_path, "eval", str(PRELUDE), "--expr", "Zero", "--fuel", "-1")

    assert code == 2


@pytest.mark.integration
@pytest.mark.parametrize("name", sorted(p.name for p in CORPUS.glob("*.json")))
def test_kernel_check_corpus(capsys, tmp_path, name: str) -> None:
    code, payload = _run_json(capsys, tmp_path, "kernel", "check", str(CORPUS / name))

    assert code == 0
    assert payload["command"] == "kernel check"
    assert payload["check"]["ok"] is True


@pytest.mark.integration
def test_kernel_check_with_translation(capsys, tmp_path) -> None:
    code, payload = _run_json(capsys, tmp_path, "kernel", "check", str(CORPUS / "twice.json"), "--translate")

    assert code == 0
    assert payload["translation_check"]["ok"] is True
    assert payload["translation"]["system"] == "one-sided"


@pytest.mark.integration
def test_kernel_check_reports_broken_derivation(capsys, tmp_path) -> None:
    data = json.loads((CORPUS / "fix-id.json").read_text(encoding="utf-8"))
    del data["root"]["premises"][1]["side"]
    path = tmp_path / "broken.json"
    path.write_text(json.dumps(data), encoding="utf-8")

    code, payload = _run_json(capsys, tmp_path, "kernel", "check", str(path))

    assert code == 1
    assert payload["check"]["ok"] is False


@pytest.mark.integration
def test_translate_needs_two_sided_input(capsys, tmp_path) -> None:
    code, _ = _run(capsys, tmp_path, "kernel", "check", str(CORPUS / "one-sided-twice.json"), "--translate")

    assert code == 2


@pytest.mark.integration
def test_kernel_prove_output_checks(capsys, tmp_path) -> None:
    """Найденный вывод в JSON сразу принимается ``kernel check``."""

    code, payload = _run_json(
        capsys, tmp_path, "kernel", "prove", "--expr", "pred(fun x -> x)", "--type", "Ok^c", "--depth", "6"
    )
    assert code == 0
    assert payload["found"] is True

    path = tmp_path / "found.json"
    path.write_text(json.dumps(payload), encoding="utf-8")
    code, checked = _run_json(capsys, tmp_path, "kernel", "check", str(path))
    assert code == 0
    assert checked["system"] == "one-sided"


@pytest.mark.integration
def test_kernel_prove_nothing_found(capsys, tmp_path) -> None:
    code, payload = _run_json(capsys, tmp_path, "kernel", "prove", "--expr", "zero", "--type", "Nat -> Nat")

    assert code == 1
    assert payload["found"] is False


@pytest.mark.integration
def test_kernel_oracle(capsys, tmp_path) -> None:
    code, payload = _run_json(capsys, tmp_path, "kernel", "oracle", "--expr", "div", "--type", "Nat", "--fuel", "50")
    assert code == 0
    assert payload["answer"] == "out-of-fuel"

    code, _ = _run(capsys, tmp_path, "kernel", "oracle", "--expr", "zero", "--type", "Nat -> Nat")
    assert code == 2


@pytest.mark.integration
def test_fuzz_saves_report(capsys, tmp_path) -> None:
    reports = tmp_path / "reports"

    code, payload = _run_json(
        capsys,
        tmp_path,
        "fuzz",
        "--module",
        str(PRELUDE),
        "--count",
        "6",
        "--size",
        "8",
        "--pcf-count",
        "3",
        "--depth",
        "4",
        "--report-dir",
        str(reports),
    )

    assert code == 0
    assert payload["ok"] is True
    assert payload["violations"] == []
    assert (reports / "fuzz-seed0-count6-pcf3.json").is_file()


@pytest.mark.integration
def test_unknown_command_exits_with_usage_code(tmp_path) -> None:
    with pytest.raises(SystemExit) as info:
        main(["frobnicate"])

    assert info.value.code == 2
