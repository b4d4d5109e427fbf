"""
Tests for command dispatch, exit statuses and the CLI surface
"""
import json

from cli import main
from models.poly import parse
from models.report import IndexWindow
from utils.documents import dump_module
from utils.modules import make_V_ab, with_entry
from utils.runner import (
    EXIT_FAILED, EXIT_OK, EXIT_USAGE, SCHEMA_VERSION, RunConfig, mutate_test, render_text, run,
)


def test_check_algebra_passes():
    report = run(RunConfig("check-algebra", window=3))
    assert report.exit_status == EXIT_OK
    names = [check.name for check in report.checks]
    assert names == sorted(names)
    assert report.coverage()["jacobi"] == {"checked": 343, "skipped": 0}


def test_classify_rank1_lists_both_families():
    report = run(RunConfig("classify-rank1", deg_bound=6))
    assert report.exit_status == EXIT_OK
    labels = [d["label"] for d in report.results["descriptors"]]
    assert labels == ["Trivial", "RankOne(a, b, c)"]


def test_fourier_command():
    report = run(RunConfig("fourier", i=1, j=2, alpha_band=8))
    assert report.exit_status == EXIT_OK
    assert report.results["bracket"] == "(-d - 2*l) L_3"
    assert report.results["locality_order"] == 2
    assert "[L_1 _l L_2] = (-d - 2*l) L_3" in render_text(report)


def test_mutate_test_catches_every_mutant():
    checks, undetected = mutate_test(RunConfig("mutate-test", window=2))
    assert undetected == []
    assert all(check.passed for check in checks)
    assert run(RunConfig("mutate-test", window=2)).exit_status == EXIT_OK


def test_mutate_test_widens_window_zero():
    checks, undetected = mutate_test(RunConfig("mutate-test", window=0))
    assert undetected == []
    assert checks[0].details["window"] == [-1, 1]
    assert run(RunConfig("mutate-test", window=0)).exit_status == EXIT_OK


def test_undetected_mutant_fails_the_run(monkeypatch):
    monkeypatch.setattr("utils.runner.detects_mutant", lambda alg, window: False)
    report = run(RunConfig("mutate-test", window=1))
    assert report.exit_status == EXIT_FAILED
    assert report.error["type"] == "UndetectedMutant"
    assert report.error["witnesses"] == report.results["undetected"]
    assert report.results["undetected"]


def test_randomized_commands_are_reproducible():
    config = dict(command="classify-graded", window=2, trials=4, seed=11, format="json")
    first = run(RunConfig(**config)).to_dict()
    second = run(RunConfig(**config)).to_dict()
    assert first["exit_status"] == EXIT_OK
    assert first["checks"] == second["checks"]
    assert first["results"]["seed"] == 11


def test_derivation_campaign():
    report = run(RunConfig("check-derivation", window=3, deg_bound=3, trials=3, seed=5, format="json"))
    assert report.exit_status == EXIT_OK
    assert report.checks[0].details["counts"]["inner_round_trips"] == 3


def test_json_needs_seed_for_random_inputs():
    report = run(RunConfig("check-derivation", format="json", seed=None))
    assert report.exit_status == EXIT_USAGE
    assert report.error["type"] == "UsageError"


def test_usage_errors():
    assert run(RunConfig("integrate")).exit_status == EXIT_USAGE
    assert run(RunConfig("check-algebra", window=-1)).exit_status == EXIT_USAGE
    document = {"derivation": {"window": [0, 0], "entries": {"0": [[0, "0"]]}}}
    assert run(RunConfig("check-module", document=document)).exit_status == EXIT_USAGE


def test_broken_module_document_fails():
    window = IndexWindow.symmetric(1)
    mod = make_V_ab(1, 0, window)
    document = dump_module(with_entry(mod, 0, 0, mod.f(0, 0) + 1))
    report = run(RunConfig("check-module", window=1, document=document))
    assert report.exit_status == EXIT_FAILED
    assert report.checks[0].failures


def test_classify_graded_document():
    window = IndexWindow.symmetric(1)
    document = dump_module(make_V_ab(2, 1, window))
    report = run(RunConfig("classify-graded", document=document))
    assert report.exit_status == EXIT_OK
    assert report.results["descriptors"][0]["label"] == "GradedUniform(2, 1)"


def test_report_schema():
    body = run(RunConfig("check-algebra", window=1)).to_dict()
    assert body["schema_version"] == SCHEMA_VERSION
    assert set(body) == {"schema_version", "command", "checks", "results", "coverage",
                         "timing", "exit_status", "error"}
    assert body["command"]["command"] == "check-algebra"


def test_cli_text_output(capsys):
    status = main(["fourier", "--i", "1", "--j", "2", "--alpha-band", "8"])
    assert status == EXIT_OK
    assert "(-d - 2*l) L_3" in capsys.readouterr().out


def test_cli_json_output(capsys):
    status = main(["check-algebra", "--window", "2", "--format", "json"])
    body = json.loads(capsys.readouterr().out)
    assert status == EXIT_OK
    assert body["exit_status"] == EXIT_OK
    assert body["command"]["window"] == 2


def test_cli_input_document(tmp_path, capsys):
    path = tmp_path / "module.json"
    path.write_text(json.dumps(dump_module(make_V_ab(0, 0, IndexWindow.symmetric(1)))))
    assert main(["check-module", "--window", "1", "--input", str(path)]) == EXIT_OK
    assert "[PASS]" in capsys.readouterr().out


def test_failing_witnesses_parse_back():
    document = {"algebra": {"window": [-1, 1], "entries": {"*,*": "-d - 3*l"}}}
    report = run(RunConfig("check-algebra", window=1, document=document))
    assert report.exit_status == EXIT_FAILED
    witnesses = [w for check in report.checks for w in check.failures if "lhs" in w]
    assert witnesses
    for witness in witnesses:
        assert witness["basis"] == "L"
        for side in (witness["lhs"], witness["rhs"]):
            for poly in side.values():
                assert str(parse(poly)) == poly

    rendered = [line for line in render_text(report).splitlines() if "  !=  " in line]
    assert rendered
    for line in rendered:
        lhs, rhs = line.split(": ", 1)[1].split("  !=  ")
        assert parse(lhs) != parse(rhs)
