"""Results and statistics of a plan search."""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING

from pydantic import BaseModel, Field

if TYPE_CHECKING:
    from causalplan.fstrips.task import Plan


@dataclass(frozen=True)
class OptimalPlan:
    """A plan proved optimal."""

    plan: Plan
    cost: int

    @property
    def bounds(self) -> tuple[int, int | None]:
        """Lower and upper bound on the optimal cost."""
        return self.cost, self.cost


@dataclass(frozen=True)
class FeasiblePlan:
    """A plan without optimality proof; the optimum lies in `[lower, upper]`."""

    plan: Plan
    upper: int
    lower: int

    @property
    def bounds(self) -> tuple[int, int | None]:
        """Lower and upper bound on the optimal cost."""
        return self.lower, self.upper


@dataclass(frozen=True)
class ProvedInfeasibleUpTo:
    """No plan has at most `horizon` steps.

    `complete` is set when `horizon` is the user-given maximum, so the search
    has nothing left to try.
    """

    horizon: int
    complete: bool = False

    @property
    def bounds(self) -> tuple[int, int | None]:
        """Lower and upper bound on the optimal cost."""
        return self.horizon + 1, None


@dataclass(frozen=True)
class Unknown:
    """The search ran out of time or memory."""

    lower: int = 0
    upper: int | None = None

    @property
    def bounds(self) -> tuple[int, int | None]:
        """Lower and upper bound on the optimal cost."""
        return self.lower, self.upper


Outcome = OptimalPlan | FeasiblePlan | ProvedInfeasibleUpTo | Unknown


class Bounds(BaseModel):
    """Bounds on the optimal plan cost."""

    lower: int = 0
    upper: int | None = None


class IterationRecord(BaseModel):
    """One model of the sequence."""

    k: int
    verdict: str
    wall_time: float
    conflicts: int


class SearchStats(BaseModel):
    """Statistics record written by `plan --stats`."""

    conflicts: int = 0
    decisions: int = 0
    propagations: int = 0
    restarts: int = 0
    iterations: int = 0
    k_sequence: list[int] = Field(default_factory=list)
    bounds: Bounds = Field(default_factory=Bounds)
    iteration_wall_times: list[float] = Field(default_factory=list)
    persistence_wakeups: int = 0
    persistence_conflicts: int = 0
    persistence_clauses: int = 0
    log: list[IterationRecord] = Field(default_factory=list)

    def record(self, k: int, verdict: str, wall_time: float, conflicts: int) -> None:
        """Append one iteration."""
        self.iterations += 1
        self.k_sequence.append(k)
        self.iteration_wall_times.append(round(wall_time, 6))
        self.log.append(IterationRecord(k=k, verdict=verdict, wall_time=round(wall_time, 6), conflicts=conflicts))

    def tighten(self, lower: int | None = None, upper: int | None = None) -> None:
        """Raise the lower bound and lower the upper bound, never the reverse."""
        if lower is not None:
            self.bounds.lower = max(self.bounds.lower, lower)
        if upper is not None:
            self.bounds.upper = upper if self.bounds.upper is None else min(self.bounds.upper, upper)
