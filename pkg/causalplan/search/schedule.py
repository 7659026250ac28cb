"""Horizon sequence and per-model time budgets."""

from __future__ import annotations

from typing import TYPE_CHECKING

from causalplan.fstrips.semantics import goal_count
from causalplan.solver.restarts import luby

if TYPE_CHECKING:
    from collections.abc import Iterator

    from causalplan.fstrips.task import FstripsTask

SATISFICING_SCALE = 5


def first_horizon(task: FstripsTask) -> int:
    """Number of unsatisfied goal atoms in the initial state, at least 1 if any."""
    count = goal_count(task.init, task.goal)
    if count == 0 and not task.static_goal_holds():
        return 1
    return count


def horizons(first: int, scale: int = 1, max_horizon: int | None = None) -> Iterator[int]:
    """Strictly increasing horizons `k_1, k_2, ...`.

    `k_1 = first`, and `k_i - k_(i-1)` is the (i-1)-th Luby term times
    `scale`. With `max_horizon` the sequence is clipped and ends there.
    """
    k = first
    if max_horizon is not None and k >= max_horizon:
        yield max_horizon
        return
    yield k
    i = 1
    while True:
        k += luby(i) * scale
        if max_horizon is not None and k >= max_horizon:
            yield max_horizon
            return
        yield k
        i += 1


def budget_for(k: int, lb: int, remaining: float, window: int) -> float:
    """Time given to the model of horizon `k` in satisficing mode.

    Args:
        k: The horizon.
        lb: The largest horizon proved infeasible so far.
        remaining: Seconds left.
        window: Width of the sliding window of plan lengths.

    Returns:
        `min(remaining, remaining * (k - lb) / window)`, never negative; 0
        means the model is skipped.

    """
    return max(0.0, min(remaining, remaining * (k - lb) / window))
