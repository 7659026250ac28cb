"""FSTRIPS tasks: representation, ground semantics and the PDDL translations."""

from causalplan.fstrips.semantics import (
    applicable,
    applicable_actions,
    apply,
    failure_cause,
    goal_count,
    goal_reached,
    successors,
)
from causalplan.fstrips.task import (
    BOOL_SORT,
    FALSE,
    NONE,
    TRUE,
    ActionSchema,
    EqualityAtom,
    FstripsTask,
    FunctionSymbol,
    GroundAction,
    Plan,
    Point,
    PointIndex,
    Sort,
    State,
    StaticAtom,
    StaticRelation,
    dump,
)
from causalplan.fstrips.transform import PredicateMapping, boolean_mappings, boolean_transform, build_task

__all__ = [
    "BOOL_SORT",
    "FALSE",
    "NONE",
    "TRUE",
    "ActionSchema",
    "EqualityAtom",
    "FstripsTask",
    "FunctionSymbol",
    "GroundAction",
    "Plan",
    "Point",
    "PointIndex",
    "PredicateMapping",
    "Sort",
    "State",
    "StaticAtom",
    "StaticRelation",
    "applicable",
    "applicable_actions",
    "apply",
    "boolean_mappings",
    "boolean_transform",
    "build_task",
    "dump",
    "failure_cause",
    "goal_count",
    "goal_reached",
    "successors",
]
