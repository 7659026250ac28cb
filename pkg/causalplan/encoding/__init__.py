"""The causal constraint model of a planning task."""

from causalplan.encoding.audit import audit
from causalplan.encoding.builder import EAGER, PROPAGATOR, ModelBuilder, build, pin_plan
from causalplan.encoding.model import NULL, CausalModel, Pin, SlotVars, SupportVars, Vocabulary
from causalplan.encoding.persistence import PersistencePropagator, PersistenceStats, interferes
from causalplan.encoding.shape import ShapeReport, measure_shape

__all__ = [
    "EAGER",
    "NULL",
    "PROPAGATOR",
    "CausalModel",
    "ModelBuilder",
    "PersistencePropagator",
    "PersistenceStats",
    "Pin",
    "ShapeReport",
    "SlotVars",
    "SupportVars",
    "Vocabulary",
    "audit",
    "build",
    "interferes",
    "measure_shape",
    "pin_plan",
]
