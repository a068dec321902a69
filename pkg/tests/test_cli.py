import json
from fractions import Fraction
from pathlib import Path

import pytest
from click.testing import CliRunner

from ladderkit.algebra import OperatorPoly
from ladderkit.cli import BatchFile, cli
from ladderkit.cli.config import RunConfig
from ladderkit.cli.controller import BATCH_EXTRAS, LadderController
from ladderkit.core.context import AppContext
from ladderkit.core.settings import SettingsManager


@pytest.fixture
def invoke(ctx):
    runner = CliRunner()

    def run(*args, obj=None):
        return runner.invoke(cli, list(args), obj=obj or ctx)

    return run


# ---------------------------------------------------------------------------
# Symbolic commands
# ---------------------------------------------------------------------------
def test_correct_text(invoke):
    result = invoke("correct", "-V", "q", "-M", "2")
    assert result.exit_code == 0, result.output
    assert "alpha_(0) = a" in result.stdout
    assert "nu_(2)" in result.stdout
    assert "nonzero from order 2" in result.stdout


def test_correct_json_in_natural_units(invoke):
    result = invoke("correct", "-V", "q", "-M", "2", "--format", "json", "--units", "natural")
    assert result.exit_code == 0
    data = json.loads(result.stdout)
    assert data["version"] == "1.0"
    assert data["units"] == "natural"
    assert [item["order"] for item in data["alphas"]] == [0, 1, 2]
    assert data["alphas"][2]["text"] == "-1/2·a"


def test_json_series_entries_wrap_the_polynomial(invoke):
    data = json.loads(invoke("correct", "-V", "q", "-M", "2", "--format", "json", "--units", "natural").stdout)
    for key in ("alphas", "creations", "numbers", "omegas", "epsilons", "norms"):
        assert all(set(item) == {"order", "text", "poly"} for item in data[key])
    assert OperatorPoly.from_dict(data["alphas"][2]["poly"]) == OperatorPoly.annihilator().scale(Fraction(-1, 2))


def test_correct_latex(invoke):
    result = invoke("correct", "-V", "p^4", "-M", "1", "--format", "latex")
    assert result.exit_code == 0
    assert result.stdout.startswith("\\documentclass{article}")
    assert "\\begin{align*}" in result.stdout


def test_spectrum_levels(invoke):
    result = invoke("spectrum", "-V", "q", "--levels", "0-2", "--lambda", "0.1", "--format", "json")
    assert result.exit_code == 0
    data = json.loads(result.stdout)
    assert sorted(data["levels"]) == ["0", "1", "2"]
    assert data["levels"]["0"]["partial_sums"]["0.1"] == pytest.approx(0.495)


def test_expect(invoke):
    result = invoke("expect", "-V", "q", "-O", "q", "--format", "json")
    assert result.exit_code == 0
    assert json.loads(result.stdout)["expectations"]["observable"] == "q"
    assert invoke("expect", "-V", "q").exit_code == 1


def test_run_file_and_flag_precedence(invoke, tmp_path):
    run_file = tmp_path / "run.json"
    run_file.write_text(json.dumps({"perturbation": "q", "order": 1, "output": "json"}), encoding="utf-8")
    data = json.loads(invoke("correct", "--config", str(run_file)).stdout)
    assert data["order"] == 1
    data = json.loads(invoke("correct", "--config", str(run_file), "-M", "2").stdout)
    assert data["order"] == 2


def test_output_file(invoke, tmp_path):
    target = tmp_path / "out.txt"
    result = invoke("spectrum", "-V", "q", "-M", "1", "-o", str(target))
    assert result.exit_code == 0
    assert target.read_text(encoding="utf-8").startswith("V = q")


# ---------------------------------------------------------------------------
# Exit codes
# ---------------------------------------------------------------------------
def test_non_hermitian_perturbation_exits_2(invoke):
    result = invoke("correct", "-V", "a + 2*ad")
    assert result.exit_code == 2
    assert "not self-adjoint" in result.stderr


def test_parse_errors_exit_1_with_json_diagnostics(invoke):
    result = invoke("correct", "-V", "q +", "--json-diagnostics")
    assert result.exit_code == 1
    diag = json.loads(result.stderr.strip().splitlines()[-1])
    assert diag["kind"] == "syntax"
    assert diag["offset"] == 3


def test_usage_errors_exit_1(invoke):
    assert invoke("correct", "--no-such-flag").exit_code == 1
    assert invoke("correct", "-V", "q", "--format", "html").exit_code == 1
    assert invoke("correct").exit_code == 1


def test_order_cap(invoke, tmp_path, monkeypatch):
    assert invoke("correct", "-V", "q", "-M", "7").exit_code == 1
    monkeypatch.setenv("LADDERKIT_MAX_ORDER", "8")
    raised = AppContext(SettingsManager(settings_path=tmp_path / "s.json", log_dir=tmp_path / "log"))
    assert invoke("correct", "-V", "q", "-M", "7", obj=raised).exit_code == 0


# ---------------------------------------------------------------------------
# Oracle commands
# ---------------------------------------------------------------------------
def test_verify_passes_for_linear_force(invoke, tmp_path):
    saved = tmp_path / "report.json"
    result = invoke(
        "verify", "-V", "q", "-M", "2", "-D", "32", "--levels", "0-2", "--save", str(saved), "--format", "json"
    )
    assert result.exit_code == 0, result.output
    data = json.loads(result.stdout)
    assert data["passed"]
    assert {item["key"] for item in data["errata"]} == {"mean_position_q", "q_rewrite_q"}
    assert json.loads(saved.read_text(encoding="utf-8"))["cutoff"] == 32


def test_verify_rejects_small_cutoffs_and_outer_levels(invoke):
    assert invoke("verify", "-V", "q", "-D", "4", "--no-errata").exit_code == 3
    assert invoke("verify", "-V", "q", "-M", "2", "-D", "32", "--levels", "20", "--no-errata").exit_code == 3


def test_verify_unknown_check(invoke):
    assert invoke("verify", "-V", "q", "--checks", "energies,bogus").exit_code == 1


def test_errata_command(invoke):
    result = invoke("errata", "vbar_p4", "--format", "json")
    assert result.exit_code == 0
    (item,) = json.loads(result.stdout)
    assert item["winner"] == "coefficient 1"
    assert invoke("errata", "nope").exit_code == 1


def test_selfcheck_command(invoke):
    result = invoke("selfcheck", "-M", "2", "--count", "2", "--max-degree", "2", "--seed", "5")
    assert result.exit_code == 0, result.output
    assert "2/2 passed" in result.stdout


# ---------------------------------------------------------------------------
# Batch files
# ---------------------------------------------------------------------------
def test_batch_runs_in_order(invoke, tmp_path):
    path = tmp_path / "batch.json"
    BatchFile(
        "smoke",
        [
            {"command": "correct", "perturbation": "q", "order": 1},
            {"command": "spectrum", "perturbation": "p^4", "order": 1, "levels": [0, 1]},
            {"command": "errata", "keys": ["vbar_p4"]},
        ],
    ).save(path)
    result = invoke("batch", str(path))
    assert result.exit_code == 0, result.output
    out = result.stdout
    assert out.index("# run 1: correct") < out.index("# run 2: spectrum") < out.index("# run 3: errata")


def test_batch_exit_code_is_the_worst_run(invoke, tmp_path):
    path = tmp_path / "batch.json"
    BatchFile("mixed", [{"command": "correct", "perturbation": "q"}, {"command": "correct", "perturbation": "a"}]).save(path)
    assert invoke("batch", str(path)).exit_code == 2


def test_batch_rejects_nesting_and_bad_files(invoke, tmp_path):
    nested = tmp_path / "nested.json"
    BatchFile("n", [{"command": "batch"}]).save(nested)
    assert invoke("batch", str(nested)).exit_code == 1
    broken = tmp_path / "broken.json"
    broken.write_text("[1, 2]", encoding="utf-8")
    assert invoke("batch", str(broken)).exit_code == 1


def test_version(invoke):
    result = invoke("--version")
    assert result.exit_code == 0
    assert "ladderkit" in result.stdout


def test_shipped_batch_files_are_well_formed():
    files = sorted((Path(__file__).resolve().parents[1] / "scripts").glob("*.json"))
    assert files
    for path in files:
        batch = BatchFile.load(path)
        for run in batch.runs:
            run = dict(run)
            command = run.pop("command")
            assert command in LadderController.COMMANDS and command != "batch"
            for key in BATCH_EXTRAS.get(command, ()):
                run.pop(key, None)
            RunConfig().merged(run).validate()
