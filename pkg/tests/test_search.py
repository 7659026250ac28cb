"""Test the horizon schedule and the plan search."""

import itertools
import logging

import pytest

from causalplan.benchmarks import FAMILIES_ALL
from causalplan.config import PlannerConfig
from causalplan.encoding.builder import build
from causalplan.fstrips.task import FstripsTask
from causalplan.pddl import TypedTask
from causalplan.reachability import translate
from causalplan.search.driver import PlanSearch, solve_optimal, solve_satisficing
from causalplan.search.outcome import (
    FeasiblePlan,
    OptimalPlan,
    ProvedInfeasibleUpTo,
    SearchStats,
    Unknown,
)
from causalplan.search.schedule import budget_for, first_horizon, horizons
from causalplan.solver import INFEASIBLE
from causalplan.validator.validate import validate


def test_budget_for() -> None | AssertionError:
    """The share grows linearly over the window and is capped by the remaining time."""
    assert budget_for(60, 10, 100.0, 50) == 100.0
    assert budget_for(100, 10, 100.0, 50) == 100.0
    assert budget_for(35, 10, 100.0, 50) == 50.0
    assert budget_for(10, 10, 100.0, 50) == 0.0
    assert budget_for(5, 10, 100.0, 50) == 0.0


def test_horizons() -> None | AssertionError:
    """Increments follow the Luby sequence."""
    assert list(itertools.islice(horizons(3), 8)) == [3, 4, 5, 7, 8, 9, 11, 15]
    assert list(itertools.islice(horizons(1, scale=5), 4)) == [1, 6, 11, 21]
    assert list(horizons(2, max_horizon=6)) == [2, 3, 4, 6]
    assert list(horizons(9, max_horizon=4)) == [4]


def test_first_horizon(visitall3_fn: FstripsTask, corridor_fn: FstripsTask) -> None | AssertionError:
    """The first horizon counts the unsatisfied goal atoms."""
    assert first_horizon(visitall3_fn) == 8
    assert first_horizon(corridor_fn) == 1


def test_stats_bounds() -> None | AssertionError:
    """Bounds only tighten."""
    stats = SearchStats()
    stats.tighten(lower=3)
    stats.tighten(lower=2, upper=9)
    stats.tighten(upper=12)
    assert (stats.bounds.lower, stats.bounds.upper) == (3, 9)
    stats.record(3, "infeasible", 0.5, 10)
    assert stats.k_sequence == [3]
    assert stats.iterations == 1


def test_corridor(corridor_fn: FstripsTask) -> None | AssertionError:
    """The corridor needs three steps."""
    result = solve_optimal(corridor_fn)
    outcome = result.outcome
    logging.info(f"k sequence {result.stats.k_sequence}")
    assert isinstance(outcome, OptimalPlan)
    assert outcome.cost == 3
    assert outcome.bounds == (3, 3)
    assert validate(corridor_fn, outcome.plan).ok
    assert result.stats.k_sequence == [1, 2, 3]
    assert result.stats.bounds.lower == 3


def test_visitall_2x2(visitall2_fn: FstripsTask) -> None | AssertionError:
    """Visiting the three other cells of a 2x2 grid takes three moves."""
    outcome = solve_optimal(visitall2_fn).outcome
    assert isinstance(outcome, OptimalPlan)
    assert outcome.cost == 3
    assert validate(visitall2_fn, outcome.plan).ok


def test_simple_transform(visitall2_typed: TypedTask) -> None | AssertionError:
    """The simple transform finds the same optimum."""
    outcome = solve_optimal(translate(visitall2_typed, "simple")).outcome
    assert isinstance(outcome, OptimalPlan)
    assert outcome.cost == 3


def test_gripper() -> None | AssertionError:
    """Carrying one ball to the other room takes three actions."""
    instance = FAMILIES_ALL["Gripper"]().instance(balls=1)
    task = translate(instance.task(), "fn")
    outcome = solve_optimal(task).outcome
    logging.info(f"gripper plan: {outcome}")
    assert isinstance(outcome, OptimalPlan)
    assert outcome.cost == 3


def test_satisficing(corridor_fn: FstripsTask) -> None | AssertionError:
    """Satisficing mode returns a valid plan with consistent bounds."""
    outcome = solve_satisficing(corridor_fn, PlannerConfig(time_limit=600)).outcome
    assert isinstance(outcome, FeasiblePlan)
    assert validate(corridor_fn, outcome.plan).ok
    lower, upper = outcome.bounds
    assert lower <= 3 <= upper
    assert upper == outcome.plan.cost


def test_infeasible(disconnected_fn: FstripsTask) -> None | AssertionError:
    """An unreachable goal is proved infeasible up to the maximum horizon."""
    outcome = solve_optimal(disconnected_fn, PlannerConfig(max_horizon=3)).outcome
    logging.info(f"outcome: {outcome}")
    assert isinstance(outcome, ProvedInfeasibleUpTo)
    assert outcome.horizon == 3
    assert outcome.complete
    assert outcome.bounds == (4, None)


def test_goal_in_init(corridor_typed: TypedTask) -> None | AssertionError:
    """A goal that already holds is reached by the empty plan."""
    task = translate(corridor_typed, "fn")
    task.goal = tuple(atom for atom in task.goal if task.init.holds(atom))
    outcome = PlanSearch(task).run().outcome
    assert isinstance(outcome, OptimalPlan)
    assert outcome.cost == 0
    assert outcome.plan.cost == 0


def test_time_limit(corridor_fn: FstripsTask) -> None | AssertionError:
    """Without time nothing is proved."""
    outcome = solve_optimal(corridor_fn, PlannerConfig(time_limit=0)).outcome
    assert isinstance(outcome, Unknown)
    assert outcome.bounds == (0, None)


@pytest.mark.slow
def test_visitall_3x3(visitall3_fn: FstripsTask) -> None | AssertionError:
    """The 3x3 grid from the center needs eight moves."""
    result = solve_optimal(visitall3_fn)
    outcome = result.outcome
    logging.info(f"k sequence {result.stats.k_sequence}, {result.stats.conflicts} conflicts")
    assert isinstance(outcome, OptimalPlan)
    assert outcome.cost == 8
    assert result.stats.k_sequence[0] == 8
    assert validate(visitall3_fn, outcome.plan).ok


@pytest.mark.slow
def test_visitall_3x3_short(visitall3_fn: FstripsTask) -> None | AssertionError:
    """Every horizon below eight is proved infeasible and raises the lower bound."""
    stats = SearchStats()
    lowers = []
    for k in range(1, 8):
        causal = build(visitall3_fn, k)
        result = causal.model.minimize(causal.objective)
        logging.info(f"k={k}: {result.status}, {causal.model.stats.conflicts} conflicts")
        assert result.status == INFEASIBLE
        stats.tighten(lower=k + 1)
        lowers.append(stats.bounds.lower)
    assert lowers == list(range(2, 9))
    assert first_horizon(visitall3_fn) <= 8
