"""Plan validation, plan files and the breadth-first oracle."""

from causalplan.validator.oracle import DEFAULT_STATE_LIMIT, OracleResult, bfs_oracle, reachable_states
from causalplan.validator.planfile import read_plan, write_plan
from causalplan.validator.validate import ValidationResult, validate

__all__ = [
    "DEFAULT_STATE_LIMIT",
    "OracleResult",
    "ValidationResult",
    "bfs_oracle",
    "reachable_states",
    "read_plan",
    "validate",
    "write_plan",
]
