"""Independent plan checker executing the ground transition semantics."""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING

from causalplan.fstrips.semantics import apply, failure_cause, goal_reached

if TYPE_CHECKING:
    from causalplan.fstrips.task import FstripsTask, Plan


@dataclass(frozen=True)
class ValidationResult:
    """Outcome of checking a plan.

    Attributes:
        step: Index of the first failing step, `len(plan)` for a goal
            failure, None when the plan is valid.
        cause: `binding`, `static`, `precondition`, `effect` or `goal`.
        detail: Printable description of the failure.

    """

    step: int | None = None
    cause: str | None = None
    detail: str = ""

    @property
    def ok(self) -> bool:
        """Whether the plan is valid."""
        return self.cause is None

    def __str__(self) -> str:
        """Return `ok` or a step diagnostic."""
        if self.ok:
            return "ok"
        return f"step {self.step}: {self.cause} ({self.detail})"


def validate(task: FstripsTask, plan: Plan) -> ValidationResult:
    """Execute a plan from the initial state and check the goal.

    Args:
        task: The task the plan is meant for.
        plan: The plan to check.

    Returns:
        The validation result; failures are values, never exceptions.

    """
    state = task.init
    schemas = {schema.name for schema in task.schemas}
    for i, step in enumerate(plan.steps):
        if step.schema not in schemas:
            return ValidationResult(i, "binding", f"unknown schema in {step}")
        cause = failure_cause(task, state, step)
        if cause is not None:
            return ValidationResult(i, cause, str(step))
        state = apply(task, state, step)
    if not goal_reached(task, state):
        unmet = [str(atom) for atom in task.goal if not state.holds(atom)]
        unmet += [
            str(atom) for atom in task.static_goal if task.statics[atom.relation].holds(atom.args) != atom.positive
        ]
        return ValidationResult(len(plan), "goal", ", ".join(unmet))
    return ValidationResult()
