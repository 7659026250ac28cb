"""Plan search over a sequence of causal models."""

from causalplan.search.driver import PlanSearch, SearchResult, extract_plan, solve_optimal, solve_satisficing
from causalplan.search.outcome import (
    Bounds,
    FeasiblePlan,
    IterationRecord,
    OptimalPlan,
    Outcome,
    ProvedInfeasibleUpTo,
    SearchStats,
    Unknown,
)
from causalplan.search.schedule import SATISFICING_SCALE, budget_for, first_horizon, horizons

__all__ = [
    "SATISFICING_SCALE",
    "Bounds",
    "FeasiblePlan",
    "IterationRecord",
    "OptimalPlan",
    "Outcome",
    "PlanSearch",
    "ProvedInfeasibleUpTo",
    "SearchResult",
    "SearchStats",
    "Unknown",
    "budget_for",
    "extract_plan",
    "first_horizon",
    "horizons",
    "solve_optimal",
    "solve_satisficing",
]
