"""Planner configuration.

Every knob of the planner lives in `PlannerConfig`. A YAML profile can provide
any subset of the fields; command-line options override the profile.
"""

from __future__ import annotations

from pathlib import Path
from typing import Annotated, Literal

import yaml
from pydantic import BaseModel, ConfigDict, Field, ValidationError

from causalplan.utils import InternalError


class PlannerConfig(BaseModel):
    """Represent the options of one planner run."""

    model_config = ConfigDict(extra="forbid")

    mode: Literal["optimal", "satisficing"] = "optimal"
    transform: Literal["simple", "fn"] = "fn"
    persistence: Literal["eager", "propagator"] = "propagator"
    time_limit: Annotated[float, Field(ge=0)] = 1800.0
    window: Annotated[int, Field(ge=1)] = 50
    hm_m: Annotated[int, Field(ge=1)] = 2
    hm_fuel: Annotated[int, Field(ge=1)] = 10**6
    seed: int | None = None
    max_horizon: Annotated[int | None, Field(ge=0)] = None
    restart_unit: Annotated[int, Field(ge=0)] = 64
    activity_decay: Annotated[float, Field(gt=0, le=1)] = 0.95
    symmetry: bool = True
    max_variables: Annotated[int | None, Field(ge=1)] = None
    memory_limit_mb: Annotated[float | None, Field(gt=0)] = None
    trace: Path | None = None

    @classmethod
    def from_yaml(cls, path: Path) -> PlannerConfig:
        """Load a profile from a YAML file.

        Raises:
            InternalError: If the file is not a mapping of known options.

        """
        data = yaml.safe_load(path.read_text(encoding="utf-8")) or {}
        if not isinstance(data, dict):
            raise InternalError(f"{path}: a profile is a mapping of options")
        try:
            return cls.model_validate(data)
        except ValidationError as error:
            raise InternalError(f"{path}: {error}") from error

    def merged(self, **overrides: object) -> PlannerConfig:
        """Return a copy with every non-None override applied."""
        changes = {key: value for key, value in overrides.items() if value is not None}
        return self.model_validate({**self.model_dump(), **changes})
