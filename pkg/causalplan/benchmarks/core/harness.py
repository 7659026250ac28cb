"""Run the planner against the breadth-first oracle over a family.

Every instance is translated once, solved optimally and compared with the
optimal length found by the oracle. The records are stored as JSON under
`~/.causalplan/output/<family>/benchmark.json`.
"""

from __future__ import annotations

import datetime as dt
import logging
import time
from typing import TYPE_CHECKING

import humanize
import numpy as np
from pydantic import BaseModel, Field

from causalplan.config import PlannerConfig
from causalplan.reachability.functional import translate
from causalplan.search.driver import solve_optimal
from causalplan.search.outcome import FeasiblePlan, OptimalPlan, SearchStats
from causalplan.utils import USER_OUTPUT_DIR, OracleRefusal
from causalplan.validator.oracle import DEFAULT_STATE_LIMIT, bfs_oracle

if TYPE_CHECKING:
    from pathlib import Path

    from causalplan.benchmarks.core.family import Instance, InstanceFamily

logger = logging.getLogger(__name__)

RESULT_FILE = "benchmark.json"


class BenchmarkRecord(BaseModel):
    """Planner and oracle answers on one instance."""

    instance: str
    params: dict[str, int]
    transform: str
    oracle_cost: int | None = None
    oracle_states: int = 0
    oracle_exhausted: bool = False
    outcome: str
    plan_cost: int | None = None
    lower: int = 0
    upper: int | None = None
    wall_time: float
    agrees: bool | None = None
    stats: SearchStats = Field(default_factory=SearchStats)


class BenchmarkReport(BaseModel):
    """Records of one family run."""

    family: str
    created: dt.datetime = Field(default_factory=lambda: dt.datetime.now(dt.timezone.utc))
    records: list[BenchmarkRecord] = Field(default_factory=list)

    @property
    def agreement(self) -> float:
        """Fraction of oracle-certified instances where the planner found the same optimum."""
        checked = [record.agrees for record in self.records if record.agrees is not None]
        return float(np.mean(checked)) if checked else 0.0

    @property
    def wall_times(self) -> np.ndarray:
        """Planner wall times in seconds."""
        return np.array([record.wall_time for record in self.records], dtype=float)

    def summary(self) -> str:
        """One line with the agreement rate and planner times."""
        times = self.wall_times
        if not times.size:
            return f"{self.family}: no instance"
        return (
            f"{self.family}: {len(self.records)} instances, "
            f"{self.agreement:.0%} agree with the oracle, "
            f"median {humanize.precisedelta(dt.timedelta(seconds=float(np.median(times))), minimum_unit='milliseconds')}, "
            f"max {humanize.precisedelta(dt.timedelta(seconds=float(times.max())), minimum_unit='milliseconds')}"
        )

    @staticmethod
    def output_dir(family: str) -> Path:
        """Directory holding the records and figures of a family."""
        return USER_OUTPUT_DIR / family

    def save(self, output_dir: Path | None = None) -> Path:
        """Write the report as JSON and return its path."""
        directory = output_dir or self.output_dir(self.family)
        directory.mkdir(parents=True, exist_ok=True)
        path = directory / RESULT_FILE
        path.write_text(self.model_dump_json(indent=4), encoding="utf-8")
        return path

    @classmethod
    def load(cls, family: str, output_dir: Path | None = None) -> BenchmarkReport:
        """Read the report of a family.

        Raises:
            FileNotFoundError: If the family has not been benchmarked.

        """
        path = (output_dir or cls.output_dir(family)) / RESULT_FILE
        return cls.model_validate_json(path.read_text(encoding="utf-8"))


def run_instance(instance: Instance, config: PlannerConfig, state_limit: int = DEFAULT_STATE_LIMIT) -> BenchmarkRecord:
    """Solve one instance with the planner and the oracle."""
    task = translate(instance.task(), config.transform, config.hm_m, config.hm_fuel)
    record = BenchmarkRecord(
        instance=instance.name,
        params=instance.params,
        transform=config.transform,
        outcome="",
        wall_time=0.0,
    )
    try:
        oracle = bfs_oracle(task, limit=state_limit)
    except OracleRefusal as error:
        logger.info("%s: %s", instance.name, error)
    else:
        record.oracle_cost = oracle.cost
        record.oracle_states = oracle.states
        record.oracle_exhausted = oracle.exhausted

    if record.oracle_exhausted and record.oracle_cost is None and config.max_horizon is None:
        # no plan is longer than the number of reachable states
        config = config.merged(max_horizon=max(1, record.oracle_states - 1))
    began = time.monotonic()
    result = solve_optimal(task, config)
    record.wall_time = round(time.monotonic() - began, 6)
    outcome = result.outcome
    record.outcome = type(outcome).__name__
    record.lower, record.upper = outcome.bounds
    record.stats = result.stats
    if isinstance(outcome, OptimalPlan | FeasiblePlan):
        record.plan_cost = outcome.plan.cost

    if record.oracle_cost is not None:
        record.agrees = isinstance(outcome, OptimalPlan) and outcome.cost == record.oracle_cost
    elif record.oracle_exhausted:
        record.agrees = record.plan_cost is None
    logger.info("%s: oracle %s, planner %s (%s)", instance.name, record.oracle_cost, record.plan_cost, record.outcome)
    return record


def run_benchmark(
    family: InstanceFamily,
    config: PlannerConfig | None = None,
    instances: list[Instance] | None = None,
    state_limit: int = DEFAULT_STATE_LIMIT,
) -> BenchmarkReport:
    """Run every instance of a family, by default its desk-scale suite."""
    from rich.progress import Progress

    config = config or PlannerConfig()
    instances = instances if instances is not None else family.instances()
    report = BenchmarkReport(family=family.name)
    with Progress() as progress:
        task = progress.add_task(f"Benchmarking [b]{family.name}[/b]...", total=len(instances))
        for instance in instances:
            report.records.append(run_instance(instance, config, state_limit))
            progress.update(task, advance=1)
    return report
