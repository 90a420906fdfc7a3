"""Unit tests for the ybh command line: output shapes and exit codes."""

from __future__ import annotations

import json
from pathlib import Path

import pytest
from metaflow._vendor.click.testing import CliRunner

from ybhomology.algebra import from_tables
from ybhomology.algebra import save_biquandle
from ybhomology.cli import cli
from ybhomology.knots import CORPUS_DIR

TREFOIL = str(CORPUS_DIR / "trefoil_a.json")


@pytest.fixture
def runner() -> CliRunner:
    return CliRunner(mix_stderr=False)


@pytest.fixture
def xor_file(tmp_path: Path) -> str:
    path = tmp_path / "xor.json"
    save_biquandle(from_tables([[0, 1], [1, 0]], [[0, 0], [1, 1]]), path)
    return str(path)


@pytest.fixture
def copy_file(tmp_path: Path) -> str:
    path = tmp_path / "copy.json"
    save_biquandle(from_tables([[0, 0], [1, 1]], [[0, 0], [1, 1]]), path)
    return str(path)


class TestGen:
    def test_stdout(self, runner: CliRunner) -> None:
        result = runner.invoke(cli, ["gen", "cyclic", "3"])
        assert result.exit_code == 0
        data = json.loads(result.stdout)
        assert data["size"] == 3
        assert data["r1"][0] == [1, 2, 0]

    def test_output_file_passes_verify(self, runner: CliRunner, tmp_path: Path) -> None:
        out = tmp_path / "z835.json"
        result = runner.invoke(cli, ["gen", "alexander", "8", "3", "5", "-o", str(out)])
        assert result.exit_code == 0
        assert "wrote alexander 8 3 5" in result.stderr
        assert runner.invoke(cli, ["verify", str(out), "--max-degree", "2"]).exit_code == 0

    def test_unknown_family(self, runner: CliRunner) -> None:
        result = runner.invoke(cli, ["gen", "dihedral", "3"])
        assert result.exit_code == 2
        assert "Available families" in result.stderr


class TestVerify:
    def test_biquandle_passes(self, runner: CliRunner) -> None:
        result = runner.invoke(cli, ["verify", "cyclic", "3"])
        assert result.exit_code == 0
        assert "FAILED" not in result.stdout

    def test_ybe_failure_exits_one(self, runner: CliRunner, xor_file: str) -> None:
        result = runner.invoke(cli, ["verify", xor_file])
        assert result.exit_code == 1
        assert "Yang-Baxter equation fails at triple" in result.stdout

    def test_left_invertibility_failure(self, runner: CliRunner, copy_file: str) -> None:
        result = runner.invoke(cli, ["verify", copy_file, "--format", "json"])
        assert result.exit_code == 1
        data = json.loads(result.stdout)
        assert data["axioms"]["ybe_holds"] is True
        assert data["axioms"]["left_witness"] == [0, 0, 1]
        assert data["ok"] is False


class TestHomology:
    def test_json(self, runner: CliRunner) -> None:
        result = runner.invoke(
            cli, ["homology", "cyclic", "3", "--max-degree", "2", "--format", "json"]
        )
        assert result.exit_code == 0
        data = json.loads(result.stdout)
        assert data["biquandle"] == "cyclic 3"
        assert data["results"]["YB"]["1"] == {"free_rank": 1, "torsion": [3]}
        assert data["results"]["DEG"]["2"] == {"free_rank": 1, "torsion": []}
        assert "[ybh] YB H_1" in result.stderr

    def test_text_table(self, runner: CliRunner) -> None:
        result = runner.invoke(
            cli, ["homology", "cyclic", "3", "--max-degree", "1", "--theory", "yb", "--h0"]
        )
        assert result.exit_code == 0
        lines = result.stdout.splitlines()
        assert lines[1].split() == ["n", "YB"]
        assert lines[2].split() == ["0", "Z"]
        assert lines[3].split() == ["1", "Z", "+", "Z_3"]

    def test_prime_field(self, runner: CliRunner) -> None:
        result = runner.invoke(
            cli,
            ["homology", "cyclic", "3", "--max-degree", "1", "--coeff", "p3", "--format", "json"],
        )
        assert result.exit_code == 0
        data = json.loads(result.stdout)
        assert data["coefficients"] == "Z/3"
        assert data["results"]["YB"]["1"] == 2

    def test_composite_coefficient(self, runner: CliRunner) -> None:
        result = runner.invoke(cli, ["homology", "cyclic", "3", "--coeff", "p4"])
        assert result.exit_code == 2
        assert "not prime" in result.stderr

    def test_guard(self, runner: CliRunner) -> None:
        result = runner.invoke(cli, ["homology", "cyclic", "8", "--guard", "100"])
        assert result.exit_code == 2
        assert "resource guard" in result.stderr

    def test_axiom_failure_exits_one(self, runner: CliRunner, xor_file: str) -> None:
        result = runner.invoke(cli, ["homology", xor_file])
        assert result.exit_code == 1
        assert "ybh verify" in result.stderr

    def test_dump_matrices(self, runner: CliRunner, tmp_path: Path) -> None:
        dump = tmp_path / "mats"
        result = runner.invoke(
            cli,
            [
                "homology", "cyclic", "3", "--max-degree", "1",
                "--theory", "nyb", "--dump-matrices", str(dump),
            ],
        )
        assert result.exit_code == 0
        assert (dump / "NYB_d2.txt").read_text().splitlines()[0] == "2, 3, 6"


class TestSplitCheck:
    def test_cyclic(self, runner: CliRunner) -> None:
        result = runner.invoke(
            cli, ["split-check", "cyclic", "3", "--max-degree", "2", "--format", "json"]
        )
        assert result.exit_code == 0
        assert json.loads(result.stdout)["holds"] is True


class TestTables:
    def test_unknown_table(self, runner: CliRunner) -> None:
        result = runner.invoke(cli, ["tables", "3"])
        assert result.exit_code == 2
        assert "Available tables" in result.stderr


class TestLinks:
    def test_color(self, runner: CliRunner) -> None:
        result = runner.invoke(cli, ["color", TREFOIL, "cyclic", "3"])
        assert result.exit_code == 0
        assert "colorings: 3" in result.stdout

    def test_invariant_json(self, runner: CliRunner) -> None:
        result = runner.invoke(cli, ["invariant", TREFOIL, "cyclic", "3", "--format", "json"])
        assert result.exit_code == 0
        data = json.loads(result.stdout)
        assert data["count"] == 3
        assert data["group"] == {"free_rank": 2, "torsion": []}

    def test_missing_diagram(self, runner: CliRunner, tmp_path: Path) -> None:
        result = runner.invoke(cli, ["color", str(tmp_path / "none.json"), "cyclic", "3"])
        assert result.exit_code == 2

    def test_non_biquandle(self, runner: CliRunner, xor_file: str) -> None:
        result = runner.invoke(cli, ["color", TREFOIL, xor_file])
        assert result.exit_code == 2
        assert "biquandle" in result.stderr


class TestEnvgroup:
    def test_text(self, runner: CliRunner) -> None:
        result = runner.invoke(cli, ["envgroup", "cyclic", "3"])
        assert result.exit_code == 0
        assert result.stdout.startswith("< g0, g1, g2 |")
        assert "abelianization: Z + Z_3" in result.stdout

    def test_gap(self, runner: CliRunner) -> None:
        result = runner.invoke(cli, ["envgroup", "cyclic", "3", "--gap"])
        assert "FreeGroup" in result.stdout
