"""Breadth-first ground truth for small tasks.

The oracle expands the ground state space layer by layer, so the layer of the
first goal state is the optimal plan length. It stores every visited state
and refuses to continue once `limit` states are stored.
"""

from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass
from typing import TYPE_CHECKING

from causalplan.fstrips.semantics import goal_reached, successors
from causalplan.fstrips.task import Plan
from causalplan.utils import OracleRefusal

if TYPE_CHECKING:
    from causalplan.fstrips.task import FstripsTask, GroundAction, State

logger = logging.getLogger(__name__)

DEFAULT_STATE_LIMIT = 200_000


@dataclass(frozen=True)
class OracleResult:
    """Answer of the breadth-first oracle.

    Attributes:
        cost: Optimal plan length, None if no plan exists within the horizon.
        plan: One optimal plan when `cost` is set.
        states: Number of distinct states stored.
        exhausted: True if the whole reachable state space was expanded, so
            that a missing plan means the goal is unreachable.

    """

    cost: int | None
    plan: Plan | None
    states: int
    exhausted: bool

    @property
    def solvable(self) -> bool:
        """Whether a plan was found."""
        return self.cost is not None


def _trace(parents: dict[State, tuple[State, GroundAction] | None], state: State) -> Plan:
    steps = []
    entry = parents[state]
    while entry is not None:
        state, action = entry
        steps.append(action)
        entry = parents[state]
    return Plan(tuple(reversed(steps)))


def bfs_oracle(task: FstripsTask, horizon: int | None = None, limit: int = DEFAULT_STATE_LIMIT) -> OracleResult:
    """Find an optimal plan by breadth-first search.

    Args:
        task: The task to solve.
        horizon: Maximum plan length explored; unbounded if None.
        limit: Maximum number of states stored.

    Returns:
        The optimal cost and plan, or no plan within the horizon.

    Raises:
        OracleRefusal: If more than `limit` states would be stored.

    """
    if not task.static_goal_holds():
        return OracleResult(None, None, 1, True)
    parents: dict[State, tuple[State, GroundAction] | None] = {task.init: None}
    frontier = deque([(task.init, 0)])
    cut = False
    while frontier:
        state, depth = frontier.popleft()
        if goal_reached(task, state):
            logger.debug("oracle: goal at depth %d after %d states", depth, len(parents))
            return OracleResult(depth, _trace(parents, state), len(parents), False)
        if horizon is not None and depth >= horizon:
            cut = True
            continue
        for action, successor in successors(task, state):
            if successor in parents:
                continue
            parents[successor] = (state, action)
            if len(parents) > limit:
                raise OracleRefusal(len(parents), limit)
            frontier.append((successor, depth + 1))
    return OracleResult(None, None, len(parents), not cut)


def reachable_states(task: FstripsTask, limit: int = DEFAULT_STATE_LIMIT) -> set[State]:
    """Return every state reachable from the initial state.

    Raises:
        OracleRefusal: If more than `limit` states are reachable.

    """
    seen = {task.init}
    frontier = [task.init]
    while frontier:
        state = frontier.pop()
        for _, successor in successors(task, state):
            if successor not in seen:
                seen.add(successor)
                if len(seen) > limit:
                    raise OracleRefusal(len(seen), limit)
                frontier.append(successor)
    return seen
