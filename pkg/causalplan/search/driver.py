"""Planning as satisfiability over a growing number of slots.

Each iteration builds a fresh model with `k_i` slots. In optimal mode the
number of enabled slots is minimized: a finite optimum is the optimal plan
cost, an infeasible model proves that every plan needs more than `k_i`
steps. In satisficing mode each model gets a share of the remaining time and
the first plan found is returned.
"""

from __future__ import annotations

import logging
import time
from contextlib import ExitStack
from dataclasses import dataclass
from typing import TYPE_CHECKING

from causalplan.config import PlannerConfig
from causalplan.encoding.audit import audit
from causalplan.encoding.builder import build
from causalplan.fstrips.semantics import goal_reached
from causalplan.fstrips.task import GroundAction, Plan
from causalplan.search.outcome import (
    FeasiblePlan,
    OptimalPlan,
    ProvedInfeasibleUpTo,
    SearchStats,
    Unknown,
)
from causalplan.search.schedule import SATISFICING_SCALE, budget_for, first_horizon, horizons
from causalplan.solver.engine import UNSAT, Budget
from causalplan.solver.model import INFEASIBLE, OPTIMAL
from causalplan.utils import InternalError, MemoryLimitExceeded, memory_usage_mb
from causalplan.validator.validate import validate

if TYPE_CHECKING:
    from collections.abc import Callable
    from typing import TextIO

    from causalplan.encoding.model import CausalModel
    from causalplan.fstrips.task import FstripsTask
    from causalplan.search.outcome import Outcome
    from causalplan.solver.model import Solution

logger = logging.getLogger(__name__)


@dataclass
class SearchResult:
    """Outcome of a search with its statistics."""

    outcome: Outcome
    stats: SearchStats


def extract_plan(causal: CausalModel, solution: Solution) -> Plan:
    """Read the plan of a solution: the enabled slots in order.

    Raises:
        InternalError: If an enabled slot has no schema or a null argument.

    """
    codes = causal.codes
    steps = []
    for slot in causal.slots:
        if not solution[slot.enabled]:
            continue
        act = solution[slot.act]
        if not 1 <= act < codes.disabled:
            raise InternalError(f"enabled slot {slot.index} has schema code {act}")
        schema = codes.schema(act)
        binding = tuple(codes.objects[solution[arg]] for arg in slot.args[: len(schema.params)])
        if any(solution[arg] == 0 for arg in slot.args[: len(schema.params)]):
            raise InternalError(f"slot {slot.index} leaves an argument of {schema.name} unbound")
        steps.append(GroundAction(schema.name, binding))
    return Plan(tuple(steps))


class _Watchdog:
    """Stop hook tripping when memory use exceeds the limit."""

    def __init__(self, limit_mb: float | None) -> None:
        self.limit_mb = limit_mb
        self.used_mb = 0.0
        self.tripped = False

    def __call__(self) -> bool:
        if self.limit_mb is None:
            return False
        self.used_mb = memory_usage_mb()
        self.tripped = self.used_mb > self.limit_mb
        return self.tripped

    def check(self) -> None:
        if self.tripped and self.limit_mb is not None:
            raise MemoryLimitExceeded(self.used_mb, self.limit_mb)


class PlanSearch:
    """The iteration over horizons shared by both regimes."""

    def __init__(self, task: FstripsTask, config: PlannerConfig | None = None) -> None:
        """Prepare a search; nothing is built before `run`."""
        self.task = task
        self.config = config or PlannerConfig()
        self.stats = SearchStats()
        self.watchdog = _Watchdog(self.config.memory_limit_mb)
        self.trace: TextIO | None = None

    def _remaining(self, start: float) -> float:
        return self.config.time_limit - (time.monotonic() - start)

    def _collect(self, causal: CausalModel) -> None:
        engine = causal.model.stats
        self.stats.conflicts += engine.conflicts
        self.stats.decisions += engine.decisions
        self.stats.propagations += engine.propagations
        self.stats.restarts += engine.restarts
        if causal.propagator is not None:
            self.stats.persistence_wakeups += causal.propagator.stats.wakeups
            self.stats.persistence_conflicts += causal.propagator.stats.conflicts
            self.stats.persistence_clauses += causal.propagator.stats.clauses

    def _checked_plan(self, causal: CausalModel, solution: Solution) -> Plan:
        violations = audit(causal, solution)
        if violations:
            raise InternalError(f"persistence audit failed: {violations[0]}")
        plan = extract_plan(causal, solution)
        result = validate(self.task, plan)
        if not result.ok:
            raise InternalError(f"extracted plan does not validate: {result}")
        return plan

    def run(self) -> SearchResult:
        """Search in the configured mode.

        Raises:
            MemoryLimitExceeded: If the memory watchdog stops the search.

        """
        if goal_reached(self.task, self.task.init):
            self.stats.tighten(0, 0)
            return SearchResult(OptimalPlan(Plan(), 0), self.stats)
        with ExitStack() as stack:
            if self.config.trace is not None:
                self.trace = stack.enter_context(self.config.trace.open("w", encoding="utf-8"))
            if self.config.mode == "optimal":
                outcome = self._optimal()
            else:
                outcome = self._satisficing()
        return SearchResult(outcome, self.stats)

    def _iterate(self, scale: int, step: Callable[[int, float], Outcome | None]) -> Outcome:
        start = time.monotonic()
        last = None
        for k in horizons(first_horizon(self.task), scale, self.config.max_horizon):
            remaining = self._remaining(start)
            if remaining <= 0:
                break
            last = k
            outcome = step(k, remaining)
            self.watchdog.check()
            if outcome is not None:
                return outcome
        lower, upper = self.stats.bounds.lower, self.stats.bounds.upper
        if last is not None and last == self.config.max_horizon and lower > last:
            return ProvedInfeasibleUpTo(last, complete=True)
        return Unknown(lower, upper)

    def _optimal(self) -> Outcome:
        def step(k: int, remaining: float) -> Outcome | None:
            began = time.monotonic()
            causal = build(self.task, k, self.config, self.trace)
            budget = Budget(time_limit=remaining, should_stop=self.watchdog)
            result = causal.model.minimize(causal.objective, budget)
            wall = time.monotonic() - began
            self._collect(causal)
            self.stats.record(k, result.status, wall, causal.model.stats.conflicts)
            logger.info("k=%d: %s in %.2fs, %d conflicts", k, result.status, wall, causal.model.stats.conflicts)
            if result.status == INFEASIBLE:
                self.stats.tighten(lower=k + 1)
                return None
            if result.solution is None or result.value is None:
                return Unknown(self.stats.bounds.lower, self.stats.bounds.upper)
            plan = self._checked_plan(causal, result.solution)
            if result.status == OPTIMAL:
                self.stats.tighten(result.value, result.value)
                return OptimalPlan(plan, result.value)
            self.stats.tighten(upper=result.value)
            return FeasiblePlan(plan, result.value, self.stats.bounds.lower)

        return self._iterate(1, step)

    def _satisficing(self) -> Outcome:
        def step(k: int, remaining: float) -> Outcome | None:
            share = budget_for(k, self.stats.bounds.lower - 1, remaining, self.config.window)
            if share <= 0:
                logger.info("k=%d: skipped", k)
                return None
            began = time.monotonic()
            causal = build(self.task, k, self.config, self.trace)
            result = causal.model.solve(Budget(time_limit=share, should_stop=self.watchdog))
            wall = time.monotonic() - began
            self._collect(causal)
            self.stats.record(k, result.status, wall, causal.model.stats.conflicts)
            logger.info("k=%d: %s in %.2fs (budget %.2fs)", k, result.status, wall, share)
            if result.status == UNSAT:
                self.stats.tighten(lower=k + 1)
                return None
            if result.solution is None:
                return None
            plan = self._checked_plan(causal, result.solution)
            self.stats.tighten(upper=plan.cost)
            return FeasiblePlan(plan, plan.cost, self.stats.bounds.lower)

        return self._iterate(SATISFICING_SCALE, step)


def solve_optimal(task: FstripsTask, config: PlannerConfig | None = None) -> SearchResult:
    """Find an optimal plan by minimizing the enabled slots of growing models."""
    config = (config or PlannerConfig()).merged(mode="optimal")
    return PlanSearch(task, config).run()


def solve_satisficing(task: FstripsTask, config: PlannerConfig | None = None) -> SearchResult:
    """Find a plan, giving each model a share of the remaining time."""
    config = (config or PlannerConfig()).merged(mode="satisficing")
    return PlanSearch(task, config).run()
