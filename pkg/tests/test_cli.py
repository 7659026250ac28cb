"""Test the main CLI commands."""

import logging
from pathlib import Path

import pytest
from typer.testing import CliRunner

from causalplan.cli import cli

runner = CliRunner(env={"COLUMNS": "200"})

TEST_CODES_DIR = Path("/tmp/tests/testcodes").resolve()
CORRIDOR = [str(TEST_CODES_DIR / "corridor" / "domain.pddl"), str(TEST_CODES_DIR / "corridor" / "p4.pddl")]
VISITALL = [str(TEST_CODES_DIR / "visitall" / "domain.pddl"), str(TEST_CODES_DIR / "visitall" / "p3x3.pddl")]


def test_help() -> None | AssertionError:
    """Test the '--help' option."""
    result = runner.invoke(cli)
    assert result.exit_code == 2
    assert "plan" in result.output
    assert "validate" in result.output


def test_version() -> None | AssertionError:
    """Test the '--version' option."""
    result = runner.invoke(cli, ["--version"])
    assert result.exit_code == 0


def test_plan(tmp_path: Path) -> None | AssertionError:
    """Test the 'plan' command on the corridor."""
    stats = tmp_path / "stats.json"
    result = runner.invoke(cli, ["plan", *CORRIDOR, "--stats", str(stats)])
    logging.info(result.output)
    assert result.exit_code == 0
    assert "; cost = 3 (unit cost)" in result.output
    assert "(walk p2 p3)" in result.output
    assert '"k_sequence"' in stats.read_text()


def test_plan_options(tmp_path: Path) -> None | AssertionError:
    """Test the 'plan' command with the simple transform and eager persistence."""
    output = tmp_path / "corridor.plan"
    result = runner.invoke(
        cli, ["plan", *CORRIDOR, "--transform", "simple", "--persistence", "eager", "-o", str(output)]
    )
    assert result.exit_code == 0
    assert output.read_text().endswith("; cost = 3 (unit cost)\n")


def test_plan_infeasible() -> None | AssertionError:
    """An unreachable goal exits with code 2."""
    disconnected = TEST_CODES_DIR / "disconnected"
    result = runner.invoke(
        cli,
        ["plan", str(disconnected / "domain.pddl"), str(disconnected / "p2.pddl"), "--max-horizon", "2"],
    )
    assert result.exit_code == 2


def test_plan_unsupported() -> None | AssertionError:
    """A quantified domain is rejected with code 1."""
    result = runner.invoke(cli, ["plan", str(TEST_CODES_DIR / "malformed" / "forall.pddl"), CORRIDOR[1]])
    assert result.exit_code == 1


def test_validate() -> None | AssertionError:
    """Test the 'validate' command on a valid and a corrupted plan."""
    result = runner.invoke(cli, ["validate", *VISITALL, str(TEST_CODES_DIR / "visitall" / "p3x3.plan")])
    assert result.exit_code == 0
    assert "cost 8" in result.output

    result = runner.invoke(cli, ["validate", *VISITALL, str(TEST_CODES_DIR / "visitall" / "p3x3-corrupted.plan")])
    assert result.exit_code == 1


def test_oracle() -> None | AssertionError:
    """Test the 'oracle' command."""
    result = runner.invoke(cli, ["oracle", *CORRIDOR])
    assert result.exit_code == 0
    assert "; cost = 3 (unit cost)" in result.output

    result = runner.invoke(cli, ["oracle", *VISITALL, "--limit", "5"])
    assert result.exit_code == 3


def test_dump_model(tmp_path: Path) -> None | AssertionError:
    """Test the 'dump-model' command."""
    result = runner.invoke(cli, ["dump-model", *CORRIDOR, "--horizon", "2"])
    assert result.exit_code == 0
    assert "; task corridor-4 (fn), horizon 2" in result.output

    listing = tmp_path / "model.txt"
    result = runner.invoke(cli, ["dump-model", *CORRIDOR, "-o", str(listing)])
    assert result.exit_code == 0
    assert listing.is_file()


def test_transform() -> None | AssertionError:
    """Test the 'transform' command."""
    result = runner.invoke(cli, ["transform", *VISITALL])
    assert result.exit_code == 0
    assert "() -> cell" in result.output


@pytest.mark.order(0)
def test_benchmark() -> None | AssertionError:
    """Test the 'benchmark' command on the gripper suite."""
    logging.info("Benchmarking the gripper suite.")
    result = runner.invoke(cli, ["benchmark", "Gripper", "--time-limit", "20", "--figures", "--overwrite"])
    assert result.exit_code == 0
    assert "Records saved at" in result.output

    result = runner.invoke(cli, ["families"])
    assert "✅" in result.output


def test_families() -> None | AssertionError:
    """Test the 'families' command."""
    result = runner.invoke(cli, ["families"])
    assert result.exit_code == 0
    assert "Visitall" in result.output


def test_generate(tmp_path: Path) -> None | AssertionError:
    """Test the 'generate' command."""
    result = runner.invoke(cli, ["generate", "Visitall", "-o", str(tmp_path), "-p", "rows=2", "-p", "cols=2"])
    assert result.exit_code == 1

    args = ["generate", "Visitall", "-o", str(tmp_path), "-p", "rows=2", "-p", "cols=2", "-p", "start=1"]
    result = runner.invoke(cli, args)
    assert result.exit_code == 0
    assert (tmp_path / "domain.pddl").is_file()
    assert (tmp_path / "p-rows2-cols2-start1.pddl").is_file()

    result = runner.invoke(cli, ["generate", "Gripper", "-o", str(tmp_path / "suite"), "--suite"])
    assert result.exit_code == 0
    assert len(list((tmp_path / "suite").glob("p-*.pddl"))) == 3


def test_validate_not_utf8(tmp_path: Path) -> None | AssertionError:
    """A plan file that is not UTF-8 is reported with code 1."""
    plan = tmp_path / "latin1.plan"
    plan.write_bytes(b"(move c5 c2)\n; co\xfbt\n")
    result = runner.invoke(cli, ["validate", *VISITALL, str(plan)])
    logging.info(result.output)
    assert result.exit_code == 1
