"""Test the benchmark families and the oracle harness."""

import logging
from pathlib import Path

import pytest

from causalplan.benchmarks import FAMILIES_ALL
from causalplan.benchmarks.core.graphics import BenchmarkGraphics
from causalplan.benchmarks.core.harness import BenchmarkReport, run_benchmark, run_instance
from causalplan.config import PlannerConfig
from causalplan.encoding.audit import audit
from causalplan.encoding.builder import EAGER, PROPAGATOR, build, pin_plan
from causalplan.reachability import translate
from causalplan.search.driver import solve_optimal
from causalplan.search.outcome import OptimalPlan
from causalplan.validator.oracle import bfs_oracle, reachable_states

SUITE = [(name, params) for name in FAMILIES_ALL for params in FAMILIES_ALL[name]().suite()]


def suite_id(value: object) -> str:
    """Name suite parameters in test ids."""
    if isinstance(value, dict):
        return "-".join(f"{key}{param}" for key, param in value.items())
    return str(value)


def test_families() -> None | AssertionError:
    """Every family directory is registered."""
    assert list(FAMILIES_ALL) == ["Blocksworld3Ops", "Blocksworld4Ops", "Gripper", "Logistics", "Visitall"]


@pytest.mark.parametrize("family_name", list(FAMILIES_ALL))
def test_suite_parses(family_name: str) -> None | AssertionError:
    """Every suite instance is a well-typed task."""
    family = FAMILIES_ALL[family_name]()
    instances = family.instances()
    logging.info(f"{family_name}: {len(instances)} instances")
    assert instances
    assert len({instance.name for instance in instances}) == len(instances)
    for instance in instances:
        task = instance.task()
        assert task.goal


def test_suite_size() -> None | AssertionError:
    """The desk-scale suite holds at least thirty instances."""
    total = sum(len(FAMILIES_ALL[name]().suite()) for name in FAMILIES_ALL)
    logging.info(f"{total} suite instances")
    assert total >= 30


def test_visitall_defaults() -> None | AssertionError:
    """The default grid is 3x3 from the center."""
    instance = FAMILIES_ALL["Visitall"]().instance()
    assert instance.name == "p-rows3-cols3-start5"
    assert "(at c5)" in instance.problem
    assert "(connected c5 c2)" in instance.problem


def test_bad_params() -> None | AssertionError:
    """Unknown parameters and impossible values are refused."""
    family = FAMILIES_ALL["Visitall"]()
    with pytest.raises(KeyError):
        family.instance(size=3)
    with pytest.raises(ValueError):
        family.instance(rows=2, cols=2, start=9)
    with pytest.raises(ValueError):
        FAMILIES_ALL["Gripper"]().instance(balls=0)


def test_write(tmp_path: Path) -> None | AssertionError:
    """An instance is written as a domain file and a problem file."""
    instance = FAMILIES_ALL["Gripper"]().instance(balls=2)
    domain_path, problem_path = instance.write(tmp_path)
    assert domain_path == tmp_path / "domain.pddl"
    assert problem_path == tmp_path / "p-balls2.pddl"
    assert problem_path.read_text() == instance.problem


def test_run_instance() -> None | AssertionError:
    """The planner agrees with the oracle on a two-cell grid."""
    instance = FAMILIES_ALL["Visitall"]().instance(rows=1, cols=2, start=1)
    record = run_instance(instance, PlannerConfig())
    logging.info(record.model_dump_json())
    assert record.oracle_cost == 1
    assert record.plan_cost == 1
    assert record.outcome == "OptimalPlan"
    assert record.agrees


def test_report(tmp_path: Path) -> None | AssertionError:
    """Reports survive a save and load and can be drawn."""
    family = FAMILIES_ALL["Gripper"]()
    report = run_benchmark(family, instances=[family.instance(balls=1)])
    logging.info(report.summary())
    assert report.agreement == 1.0

    path = report.save(tmp_path)
    assert path.is_file()
    loaded = BenchmarkReport.load("Gripper", tmp_path)
    assert loaded.records[0].plan_cost == 3

    figures = BenchmarkGraphics(loaded, output_dir=tmp_path).export(overwrite=True, format="png")
    assert len(figures) == 2
    assert all(figure.is_file() for figure in figures)


@pytest.mark.parametrize(("family_name", "params"), SUITE, ids=suite_id)
def test_suite_reachable(family_name: str, params: dict[str, int]) -> None | AssertionError:
    """Both transforms of a suite instance reach as many states."""
    typed = FAMILIES_ALL[family_name]().instance(**params).task()
    counts = {transform: len(reachable_states(translate(typed, transform))) for transform in ("simple", "fn")}
    logging.info(f"{family_name} {params}: {counts}")
    assert counts["simple"] == counts["fn"]


@pytest.mark.slow
@pytest.mark.parametrize(("family_name", "params"), SUITE, ids=suite_id)
@pytest.mark.parametrize("transform", ["simple", "fn"])
def test_suite_agreement(family_name: str, params: dict[str, int], transform: str) -> None | AssertionError:
    """Both persistence modes reach the oracle optimum through the same sequence of models."""
    task = translate(FAMILIES_ALL[family_name]().instance(**params).task(), transform)
    oracle = bfs_oracle(task)
    assert oracle.cost is not None
    assert oracle.plan is not None

    logs = {}
    for persistence in (EAGER, PROPAGATOR):
        config = PlannerConfig(persistence=persistence, seed=0)
        result = solve_optimal(task, config)
        logging.info(f"{persistence}: k sequence {result.stats.k_sequence}")
        assert isinstance(result.outcome, OptimalPlan)
        assert result.outcome.cost == oracle.cost
        logs[persistence] = [(record.k, record.verdict) for record in result.stats.log]

        causal = build(task, len(oracle.plan), config)
        pin_plan(causal, oracle.plan)
        pinned = causal.model.solve()
        assert pinned.sat
        assert audit(causal, pinned.solution) == []
    assert logs[EAGER] == logs[PROPAGATOR]
