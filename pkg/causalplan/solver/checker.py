"""Standalone solution checker.

Evaluates the declarative constraint records on a finished assignment. It
shares no code with the propagators, so a propagator bug cannot hide its own
wrong answer.
"""

from __future__ import annotations

from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from causalplan.solver.model import CpModel, Solution


def check(model: CpModel, solution: Solution) -> list[str]:
    """Return a description of every violated constraint.

    Every integer variable must have exactly one true value atom and every
    posted constraint must hold. Constraints enforced only by external
    propagators are not covered.
    """
    violations = []
    for var in model.int_vars:
        true = [v for v, atom in zip(var.values, var.atoms, strict=True) if solution.atoms[atom] == 1]
        if len(true) != 1:
            violations.append(f"{var.name} has {len(true)} values")
    for constraint in model.constraints:
        if not constraint.holds(solution):
            violations.append(constraint.describe())
    return violations
