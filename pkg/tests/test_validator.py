"""Test the plan checker, plan files and the breadth-first oracle."""

import logging
from pathlib import Path

import pytest

from causalplan.fstrips.task import FstripsTask, GroundAction, Plan
from causalplan.pddl import TypedTask
from causalplan.reachability import translate
from causalplan.utils import OracleRefusal, PddlSyntaxError
from causalplan.validator import bfs_oracle, read_plan, validate, write_plan

TEST_CODES_DIR = Path("/tmp/tests/testcodes").resolve()


def test_valid_tour(visitall3_fn: FstripsTask) -> None | AssertionError:
    """The tour from the center visits every cell."""
    tour = read_plan((TEST_CODES_DIR / "visitall" / "p3x3.plan").read_text())
    result = validate(visitall3_fn, tour)
    logging.info(f"validation: {result}")
    assert result.ok
    assert str(result) == "ok"
    assert tour.cost == 8


def test_corrupted_tour(visitall3_fn: FstripsTask) -> None | AssertionError:
    """A move between unconnected cells fails on a static precondition."""
    plan = read_plan((TEST_CODES_DIR / "visitall" / "p3x3-corrupted.plan").read_text())
    result = validate(visitall3_fn, plan)
    logging.info(f"validation: {result}")
    assert not result.ok
    assert (result.step, result.cause) == (0, "static")
    assert str(result).startswith("step 0: static")


def test_goal_failure(visitall3_simple: FstripsTask) -> None | AssertionError:
    """The empty plan leaves cells unvisited."""
    result = validate(visitall3_simple, Plan())
    assert (result.step, result.cause) == (0, "goal")
    assert "visited" in result.detail


def test_unknown_schema(visitall3_fn: FstripsTask) -> None | AssertionError:
    """A step naming no schema is a binding failure."""
    result = validate(visitall3_fn, Plan((GroundAction("jump", ("c5", "c1")),)))
    assert (result.step, result.cause) == (0, "binding")


def test_oracle_cost(visitall3_simple: FstripsTask, visitall3_fn: FstripsTask) -> None | AssertionError:
    """Both transformations of the 3x3 grid have optimal cost eight."""
    for task in (visitall3_simple, visitall3_fn):
        result = bfs_oracle(task)
        logging.info(f"{task.transform}: cost {result.cost} after {result.states} states")
        assert result.solvable
        assert result.cost == 8
        assert validate(task, result.plan).ok


def test_oracle_goal_in_init(corridor_typed: TypedTask) -> None | AssertionError:
    """A goal that already holds costs nothing."""
    task = translate(corridor_typed, "simple")
    task.goal = tuple(atom for atom in task.goal if task.init.holds(atom))
    result = bfs_oracle(task)
    assert result.cost == 0
    assert result.plan == Plan()


def test_oracle_unreachable(disconnected_fn: FstripsTask) -> None | AssertionError:
    """The oracle exhausts the state space of an unsolvable task."""
    result = bfs_oracle(disconnected_fn)
    assert not result.solvable
    assert result.exhausted
    assert result.states == 1


def test_oracle_horizon(visitall3_simple: FstripsTask) -> None | AssertionError:
    """A horizon shorter than the optimum finds nothing and is not exhaustive."""
    result = bfs_oracle(visitall3_simple, horizon=3)
    assert not result.solvable
    assert not result.exhausted


def test_oracle_refusal(visitall3_simple: FstripsTask) -> None | AssertionError:
    """The oracle refuses to store more states than allowed."""
    with pytest.raises(OracleRefusal) as error:
        bfs_oracle(visitall3_simple, limit=5)
    logging.info(str(error.value))
    assert error.value.limit == 5


def test_write_plan() -> None | AssertionError:
    """Written plans end with the cost trailer and read back unchanged."""
    plan = Plan((GroundAction("walk", ("p0", "p1")), GroundAction("walk", ("p1", "p2"))))
    text = write_plan(plan)
    assert text.splitlines() == ["(walk p0 p1)", "(walk p1 p2)", "; cost = 2 (unit cost)"]
    assert read_plan("; a comment\n" + text) == plan


def test_read_plan_errors() -> None | AssertionError:
    """Nested steps and unbalanced parentheses are syntax errors."""
    with pytest.raises(PddlSyntaxError):
        read_plan("(move c1 (c2))\n")
    with pytest.raises(PddlSyntaxError):
        read_plan("(move c1 c2\n")
