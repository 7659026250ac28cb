"""Variables of the causal model and the codes they range over.

Objects, function symbols and schemas are coded as small integers:

- value 0 is the null object `□`, used for unused arguments and the fields
  of inactive pins; objects are numbered from 1 in universe order;
- function code 0 is the dummy symbol of inactive pins;
- schema codes run from 1 to |Act| and |Act| + 1 switches a slot off.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import TYPE_CHECKING

from causalplan.solver.variables import IntVar, term_eq

if TYPE_CHECKING:
    from causalplan.encoding.persistence import PersistencePropagator
    from causalplan.fstrips.task import ActionSchema, FstripsTask
    from causalplan.solver.engine import Engine
    from causalplan.solver.model import CpModel, Solution
    from causalplan.solver.variables import BoolVar, Term

NULL = 0
NULL_NAME = "□"


class Vocabulary:
    """Integer codes of the objects, functions and schemas of a task."""

    def __init__(self, task: FstripsTask) -> None:
        """Number objects, function symbols and schemas.

        Args:
            task: The FSTRIPS task; values outside the universe such as
                `<true>` or `<none>` are coded after its objects.

        """
        names = list(task.objects)
        for name in sorted(task.sorts):
            names.extend(task.sorts[name].members)
        self.objects: list[str] = [NULL_NAME, *dict.fromkeys(names)]
        self.object_code = {name: code for code, name in enumerate(self.objects)}
        self.functions: list[str] = [NULL_NAME, *sorted(task.functions)]
        self.function_code = {name: code for code, name in enumerate(self.functions)}
        self.schemas: list[ActionSchema] = list(task.schemas)
        self.schema_code = {schema.name: code for code, schema in enumerate(self.schemas, start=1)}

    @property
    def disabled(self) -> int:
        """The schema code of a switched-off slot."""
        return len(self.schemas) + 1

    def schema(self, code: int) -> ActionSchema:
        """Return the schema of a code in `1..|Act|`."""
        return self.schemas[code - 1]


@dataclass(frozen=True)
class Pin:
    """One equality atom `fsym(args) = value` as solver terms.

    Constant pins (initial state, goal) hold integers instead of variables.
    """

    fsym: Term
    args: tuple[Term, ...]
    value: Term
    active: int

    @property
    def terms(self) -> tuple[Term, ...]:
        """Function symbol, arguments and value."""
        return (self.fsym, *self.args, self.value)

    def decided(self, engine: Engine) -> tuple[int, ...] | None:
        """Values of the terms if every variable is fixed, else None."""
        values = []
        for term in self.terms:
            if isinstance(term, IntVar):
                value = engine.fixed_value(term)
                if value is None:
                    return None
                values.append(value)
            else:
                values.append(term)
        return tuple(values)

    def read(self, solution: Solution) -> tuple[int, ...]:
        """Values of the terms in a solution."""
        return tuple(solution[t] if isinstance(t, IntVar) else t for t in self.terms)

    def binding(self, values: tuple[int, ...]) -> list[int]:
        """Literals fixing the variable terms to `values`."""
        return [term_eq(t, v) for t, v in zip(self.terms, values, strict=True) if isinstance(t, IntVar)]


@dataclass
class SlotVars:
    """Variables of action slot `index`."""

    index: int
    act: IntVar
    args: tuple[IntVar, ...]
    inputs: tuple[Pin, ...]
    outputs: tuple[Pin, ...]
    enabled: BoolVar


@dataclass(frozen=True)
class SupportVars:
    """The support of input pin `k` of slot `j`.

    `row` indexes the output-pin rows, 0 being the inactive row; `slot` and
    `pin` decode it, with `slot = j` and `pin = 0` standing for null.
    """

    j: int
    k: int
    row: IntVar
    slot: IntVar
    pin: IntVar

    @property
    def null_slot(self) -> int:
        """The slot code of a null support."""
        return self.j


@dataclass
class CausalModel:
    """The constraint model of a task for a fixed number of action slots.

    Attributes:
        task: The encoded task.
        horizon: Number of action slots N.
        model: The solver model holding every constraint.
        codes: Integer codes of objects, functions and schemas.
        slots: Action slots 1..N.
        init_pins: Fixed output pins of slot 0, one per point.
        goal_pins: Fixed input pins of the goal slot N + 1.
        supports: Support variables by `(slot, input pin)`, 1-based.
        rows: Output-pin rows indexed by support rows.
        row_origin: `(slot, pin)` of every row, `(-1, 0)` for the inactive row.
        roles: `(slot, role)` of every integer variable by index.
        persistence: `eager` or `propagator`.
        aux_count: Auxiliary Booleans of the eager persistence constraints.
        persist_clauses: Clauses of the eager persistence constraints.
        propagator: The persistence propagator in `propagator` mode.

    """

    task: FstripsTask
    horizon: int
    model: CpModel
    codes: Vocabulary
    slots: list[SlotVars] = field(default_factory=list)
    init_pins: list[Pin] = field(default_factory=list)
    goal_pins: list[Pin] = field(default_factory=list)
    supports: dict[tuple[int, int], SupportVars] = field(default_factory=dict)
    rows: list[Pin] = field(default_factory=list)
    row_origin: list[tuple[int, int]] = field(default_factory=list)
    roles: dict[int, tuple[int, str]] = field(default_factory=dict)
    persistence: str = "propagator"
    aux_count: int = 0
    persist_clauses: int = 0
    propagator: PersistencePropagator | None = None

    @property
    def goal_slot(self) -> int:
        """Index of the slot holding only the goal pins."""
        return self.horizon + 1

    def inputs(self, j: int) -> tuple[Pin, ...]:
        """Input pins of slot `j`, the goal slot included."""
        return tuple(self.goal_pins) if j == self.goal_slot else self.slots[j - 1].inputs

    def outputs(self, j: int) -> tuple[Pin, ...]:
        """Output pins of slot `j`, slot 0 included."""
        return tuple(self.init_pins) if j == 0 else self.slots[j - 1].outputs

    @property
    def objective(self) -> list[int]:
        """Literals of the enabled slots, summed by the objective."""
        return [slot.enabled.lit for slot in self.slots]

    @property
    def support_atoms(self) -> int:
        """Value literals of every support row variable."""
        return sum(len(s.row.values) for s in self.supports.values())

    def dump(self) -> str:
        """Deterministic listing of the model."""
        header = [
            f"; task {self.task.name} ({self.task.transform}), horizon {self.horizon}, persistence {self.persistence}",
            f"; {len(self.model.int_vars)} integer, {len(self.model.bool_vars)} Boolean variables,"
            f" {len(self.model.constraints)} constraints",
        ]
        return "\n".join(header) + "\n" + self.model.dump()
