"""Finite-domain solver with lazy clause generation."""

from causalplan.solver.checker import check
from causalplan.solver.constraints import (
    BoolSumAtMost,
    ClauseConstraint,
    Constraint,
    ElementConstraint,
    ReifiedEquality,
    TableConstraint,
)
from causalplan.solver.engine import SAT, UNKNOWN, UNSAT, Budget, Engine, EngineStats, Propagator, Reason
from causalplan.solver.model import FEASIBLE, INFEASIBLE, OPTIMAL, CpModel, MinimizeResult, Solution, SolveResult
from causalplan.solver.restarts import luby, restart_limits
from causalplan.solver.variables import FALSE_LIT, TRUE_LIT, BoolVar, IntVar, Term

__all__ = [
    "FALSE_LIT",
    "FEASIBLE",
    "INFEASIBLE",
    "OPTIMAL",
    "SAT",
    "TRUE_LIT",
    "UNKNOWN",
    "UNSAT",
    "BoolSumAtMost",
    "BoolVar",
    "Budget",
    "ClauseConstraint",
    "Constraint",
    "CpModel",
    "ElementConstraint",
    "Engine",
    "EngineStats",
    "IntVar",
    "MinimizeResult",
    "Propagator",
    "Reason",
    "ReifiedEquality",
    "Solution",
    "SolveResult",
    "TableConstraint",
    "Term",
    "check",
    "luby",
    "restart_limits",
]
