"""Build the causal constraint model of a task for N action slots.

Slots 1..N each choose a schema (or the switched-off code), its arguments,
and the input and output pins of its precondition and effect atoms. Slot 0
holds one fixed output pin per point of the initial state, slot N + 1 one
fixed input pin per goal atom. Every active input pin selects a supporting
output pin of an earlier slot; persistence between the two is enforced
either eagerly with auxiliary Booleans or lazily by `PersistencePropagator`.
"""

from __future__ import annotations

import itertools
import logging
from typing import TYPE_CHECKING

from causalplan.config import PlannerConfig
from causalplan.encoding.model import NULL, CausalModel, Pin, SlotVars, SupportVars, Vocabulary
from causalplan.encoding.persistence import PersistencePropagator
from causalplan.fstrips.task import EqualityAtom
from causalplan.pddl.ast import is_variable
from causalplan.solver.model import CpModel
from causalplan.solver.variables import FALSE_LIT, TRUE_LIT, IntVar, term_values
from causalplan.utils import InternalError

if TYPE_CHECKING:
    from collections.abc import Sequence
    from typing import TextIO

    from causalplan.fstrips.task import ActionSchema, FstripsTask, Plan, StaticAtom
    from causalplan.solver.variables import Term

logger = logging.getLogger(__name__)

EAGER = "eager"
PROPAGATOR = "propagator"


class ModelBuilder:
    """Post the constraints of a causal model step by step.

    `build` runs every step in order; the steps are public so tests can build
    partial models.
    """

    def __init__(
        self, task: FstripsTask, horizon: int, config: PlannerConfig | None = None, trace: TextIO | None = None
    ) -> None:
        """Create an empty model for `horizon` action slots.

        Raises:
            ValueError: If the horizon is negative.

        """
        if horizon < 0:
            raise ValueError("the number of slots must be nonnegative")
        self.config = config or PlannerConfig()
        self.task = task
        self.codes = Vocabulary(task)
        model = CpModel(
            restart_unit=self.config.restart_unit,
            activity_decay=self.config.activity_decay,
            seed=self.config.seed,
            trace=trace,
            max_variables=self.config.max_variables,
        )
        self.causal = CausalModel(task, horizon, model, self.codes, persistence=self.config.persistence)
        self.model = model
        self.k_args = task.max_params
        self.k_pre = task.max_pre
        self.k_eff = task.max_eff
        self.k_f = task.max_arity
        self.acts = list(range(1, self.codes.disabled + 1))

    # -- helpers ----------------------------------------------------------------

    def _int(self, values: Sequence[int], slot: int, role: str) -> IntVar:
        var = self.model.new_int_var_values(values, f"{role}[{slot}]")
        self.causal.roles[var.index] = (slot, role)
        return var

    def _code(self, term: str, binding: dict[str, IntVar]) -> Term:
        """Solver term of a schema term: an argument variable or an object code."""
        return binding[term] if is_variable(term) else self.codes.object_code[term]

    def _element(self, act: IntVar, cells: list[Term], slot: int, role: str) -> IntVar:
        """Create the target of `element(act | cells)` and post it.

        Cells are given per schema code; the switched-off code selects `NULL`.
        """
        cells = [NULL, *cells, NULL]
        values = sorted({v for cell in cells for v in term_values(cell)})
        target = self._int(values, slot, role)
        self.model.element(act, target, cells)
        return target

    def _active(self, fsym: IntVar, slot: int, role: str) -> int:
        """Boolean flag channelled with `fsym != □`."""
        flag = self.model.new_bool(f"{role}.active[{slot}]")
        self.model.clause([-flag.lit, fsym.ne(NULL)])
        self.model.clause([flag.lit, fsym.eq(NULL)])
        return flag.lit

    def _pin(
        self, act: IntVar, args: tuple[IntVar, ...], atoms: list[EqualityAtom | None], slot: int, role: str
    ) -> Pin:
        """Pin whose fields follow the atom of the selected schema."""
        binding_of = [dict(zip(schema.variables, args, strict=False)) for schema in self.codes.schemas]
        fsym = self._element(
            act, [NULL if atom is None else self.codes.function_code[atom.function] for atom in atoms], slot, f"{role}.f"
        )
        pin_args = []
        for position in range(self.k_f):
            cells: list[Term] = []
            for atom, binding in zip(atoms, binding_of, strict=True):
                if atom is None or position >= len(atom.args):
                    cells.append(NULL)
                else:
                    cells.append(self._code(atom.args[position], binding))
            pin_args.append(self._element(act, cells, slot, f"{role}.x{position + 1}"))
        value_cells: list[Term] = [
            NULL if atom is None else self._code(atom.value, binding) for atom, binding in zip(atoms, binding_of, strict=True)
        ]
        value = self._element(act, value_cells, slot, f"{role}.y")
        return Pin(fsym, tuple(pin_args), value, self._active(fsym, slot, role))

    # -- slots ------------------------------------------------------------------

    def encode_slot(self, i: int) -> SlotVars:
        """Create the variables of action slot `i` and tie them to its schema."""
        act = self._int(self.acts, i, "act")
        args = []
        for p in range(self.k_args):
            rows: list[tuple[int | None, ...]] = [(self.codes.disabled, NULL)]
            for code, schema in enumerate(self.codes.schemas, start=1):
                if p < len(schema.params):
                    members = self.task.sorts[schema.params[p][1]].members
                    rows.extend((code, self.codes.object_code[o]) for o in members)
                else:
                    rows.append((code, NULL))
            arg = self._int(sorted({row[1] for row in rows if row[1] is not None}), i, f"arg{p + 1}")
            self.model.table([act, arg], rows)
            args.append(arg)
        arg_vars = tuple(args)

        inputs = tuple(
            self._pin(act, arg_vars, [s.pre[k] if k < len(s.pre) else None for s in self.codes.schemas], i, f"in{k + 1}")
            for k in range(self.k_pre)
        )
        outputs = tuple(
            self._pin(act, arg_vars, [s.eff[k] if k < len(s.eff) else None for s in self.codes.schemas], i, f"out{k + 1}")
            for k in range(self.k_eff)
        )
        enabled = self.model.new_bool(f"enabled[{i}]")
        slot = SlotVars(i, act, arg_vars, inputs, outputs, enabled)
        for code, schema in enumerate(self.codes.schemas, start=1):
            self._schema_constraints(slot, code, schema)
        self.causal.slots.append(slot)
        return slot

    def _schema_constraints(self, slot: SlotVars, code: int, schema: ActionSchema) -> None:
        """Argument (dis)equalities and the effect-collision guard of one schema."""
        guard = slot.act.eq(code)
        binding = dict(zip(schema.variables, slot.args, strict=False))
        for lhs, rhs, equal in schema.constraints:
            x, y = self._code(lhs, binding), self._code(rhs, binding)
            if equal:
                self.model.reif_eq(guard, x, y)
            else:
                self.model.reif_neq(guard, x, y)
        for (l1, e1), (l2, e2) in itertools.combinations(enumerate(schema.eff), 2):
            if e1.function != e2.function or e1.value == e2.value:
                continue
            if any(a != b and not is_variable(a) and not is_variable(b) for a, b in zip(e1.args, e2.args, strict=True)):
                continue
            out1, out2 = slot.outputs[l1], slot.outputs[l2]
            differ = []
            for c, (a, b) in enumerate(zip(e1.args, e2.args, strict=True)):
                if a != b:
                    d = self.model.new_bool(f"collide[{slot.index}]")
                    self.model.reif_neq(d.lit, out1.args[c], out2.args[c])
                    differ.append(d.lit)
            same = self.model.new_bool(f"collide[{slot.index}]")
            self.model.reif_eq(same.lit, out1.value, out2.value)
            self.model.clause([-guard, *differ, same.lit])

    # -- boundary ---------------------------------------------------------------

    def _fixed_pin(self, atom: EqualityAtom) -> Pin:
        args = [self.codes.object_code[a] for a in atom.args]
        args += [NULL] * (self.k_f - len(args))
        return Pin(self.codes.function_code[atom.function], tuple(args), self.codes.object_code[atom.value], TRUE_LIT)

    def encode_boundary(self) -> None:
        """Fixed output pins of slot 0 and fixed input pins of the goal slot."""
        for (function, args), value in self.task.init.items():
            self.causal.init_pins.append(self._fixed_pin(EqualityAtom(function, args, value)))
        self.causal.goal_pins.extend(self._fixed_pin(atom) for atom in self.task.goal)
        if not self.task.static_goal_holds():
            logger.debug("a static goal atom is false; the model is infeasible")
            self.model.clause([FALSE_LIT])

        self.causal.rows = [Pin(NULL, (NULL,) * self.k_f, NULL, FALSE_LIT)]
        self.causal.row_origin = [(-1, 0)]
        for l, pin in enumerate(self.causal.init_pins, start=1):
            self.causal.rows.append(pin)
            self.causal.row_origin.append((0, l))
        for slot in self.causal.slots:
            for l, pin in enumerate(slot.outputs, start=1):
                self.causal.rows.append(pin)
                self.causal.row_origin.append((slot.index, l))

    # -- supports ---------------------------------------------------------------

    def encode_supports(self, j: int, k: int, mode: str) -> SupportVars:
        """Support of input pin `k` of slot `j` and its persistence constraints.

        Args:
            j: Consumer slot, `N + 1` for the goal slot.
            k: Input pin, 1-based.
            mode: `eager` posts the persistence clauses here, `propagator`
                leaves them to the persistence propagator.

        """
        pin = self.causal.inputs(j)[k - 1]
        count = 1 + len(self.causal.init_pins) + (j - 1) * self.k_eff
        rows = self.causal.rows[:count]
        origin = self.causal.row_origin[:count]

        row = self._int(range(count), j, f"spt{k}")
        slot = self._int(range(j + 1), j, f"spt{k}.slot")
        pin_index = self._int(sorted({l for _, l in origin}), j, f"spt{k}.pin")
        self.model.element(row, slot, [j if s < 0 else s for s, _ in origin])
        self.model.element(row, pin_index, [l for _, l in origin])
        # the inactive row, and only it, serves inactive pins
        self.model.clause([-pin.active, row.ne(0)])
        self.model.clause([pin.active, row.eq(0)])
        self.model.element2d(row, pin.terms, [r.terms for r in rows])
        support = SupportVars(j, k, row, slot, pin_index)
        self.causal.supports[(j, k)] = support

        if mode == EAGER:
            for j_out in range(1, j):
                for out in self.causal.outputs(j_out):
                    self._persist(pin, out, support, j_out)
        return support

    def _persist(self, pin: Pin, out: Pin, support: SupportVars, j_out: int) -> None:
        """The output pin keeps the supported atom unless the support slot lies above `j_out`.

        One clause per excluded support slot `0..j_out`; the auxiliary flags are
        shared by all of them.
        """
        differ = []
        for a, b in zip(out.terms[:-1], pin.terms[:-1], strict=True):
            flag = self.model.new_bool(f"persist[{support.j}]")
            self.model.reif_neq(flag.lit, a, b)
            differ.append(flag.lit)
        same = self.model.new_bool(f"persist[{support.j}]")
        self.model.reif_eq(same.lit, out.value, pin.value)
        self.causal.aux_count += len(differ) + 1
        for i in range(j_out + 1):
            self.model.clause([support.slot.ne(i), *differ, same.lit])
        self.causal.persist_clauses += j_out + 1

    # -- statics ----------------------------------------------------------------

    def encode_statics(self, i: int) -> None:
        """Table constraints for the static atoms of every schema at slot `i`."""
        slot = self.causal.slots[i - 1]
        for code, schema in enumerate(self.codes.schemas, start=1):
            for atom in schema.static_pre:
                self._static(slot, code, schema, atom)

    def _static(self, slot: SlotVars, code: int, schema: ActionSchema, atom: StaticAtom) -> None:
        relation = self.task.statics[atom.relation]
        scope = list(dict.fromkeys(t for t in atom.args if is_variable(t)))
        if not scope:
            if relation.holds(atom.args) != atom.positive:
                self.model.clause([slot.act.ne(code)])
            return
        sort_of = dict(schema.params)
        position = {var: schema.variables.index(var) for var in scope}

        def matches(args: tuple[str, ...]) -> dict[str, str] | None:
            binding: dict[str, str] = {}
            for term, obj in zip(atom.args, args, strict=True):
                if not is_variable(term):
                    if term != obj:
                        return None
                elif binding.setdefault(term, obj) != obj:
                    return None
            return binding

        if atom.positive:
            bindings = [b for b in map(matches, relation.tuples) if b is not None]
        else:
            bindings = []
            for combo in itertools.product(*(self.task.sorts[sort_of[v]].members for v in scope)):
                binding = dict(zip(scope, combo, strict=True))
                if not relation.holds(atom.ground(binding)):
                    bindings.append(binding)
        rows: list[tuple[int | None, ...]] = list(
            dict.fromkeys((code, *(self.codes.object_code[b[v]] for v in scope)) for b in bindings)
        )
        rows.extend((other, *([None] * len(scope))) for other in self.acts if other != code)
        self.model.table([slot.act, *(slot.args[position[v]] for v in scope)], rows)

    # -- objective --------------------------------------------------------------

    def encode_objective(self) -> list[int]:
        """Channel `enabled` with the schema choice; return the summed literals."""
        previous = None
        for slot in self.causal.slots:
            off = slot.act.eq(self.codes.disabled)
            self.model.clause([slot.enabled.lit, off])
            self.model.clause([-slot.enabled.lit, -off])
            if self.config.symmetry and previous is not None:
                self.model.clause([-slot.enabled.lit, previous.enabled.lit])
            previous = slot
        return self.causal.objective

    # -- whole model ------------------------------------------------------------

    def build(self) -> CausalModel:
        """Run every step and return the finished model."""
        horizon = self.causal.horizon
        for i in range(1, horizon + 1):
            self.encode_slot(i)
        self.encode_boundary()
        for i in range(1, horizon + 1):
            self.encode_statics(i)
        mode = self.config.persistence
        for j in range(1, horizon + 2):
            for k in range(1, len(self.causal.inputs(j)) + 1):
                self.encode_supports(j, k, mode)
        self.encode_objective()
        if mode == PROPAGATOR:
            self.causal.propagator = PersistencePropagator(self.causal)
            self.model.register_propagator(self.causal.propagator)
        logger.debug(
            "model for %s with %d slots: %d integer, %d Boolean variables, %d constraints",
            self.task.name,
            horizon,
            len(self.model.int_vars),
            len(self.model.bool_vars),
            len(self.model.constraints),
        )
        return self.causal


def build(
    task: FstripsTask, horizon: int, config: PlannerConfig | None = None, trace: TextIO | None = None
) -> CausalModel:
    """Build the causal model of a task with `horizon` action slots.

    Args:
        task: The FSTRIPS task.
        horizon: Number of action slots N.
        config: Persistence mode, symmetry flag, capacity and solver knobs.
        trace: Stream receiving learned clauses.

    Returns:
        The model; with N = 0 it is satisfiable iff the initial state
        satisfies the goal.

    Raises:
        CapacityError: If the model needs more variables than allowed.

    """
    return ModelBuilder(task, horizon, config, trace).build()


def pin_plan(causal: CausalModel, plan: Plan) -> None:
    """Fix the schemas and arguments of the first slots to a plan.

    Remaining slots are switched off.

    Raises:
        InternalError: If the plan is longer than the horizon or names an
            unknown schema or object.

    """
    if len(plan) > causal.horizon:
        raise InternalError(f"plan of length {len(plan)} does not fit {causal.horizon} slots")
    model, codes = causal.model, causal.codes
    for slot in causal.slots:
        if slot.index > len(plan):
            model.clause([slot.act.eq(codes.disabled)])
            continue
        step = plan.steps[slot.index - 1]
        if step.schema not in codes.schema_code:
            raise InternalError(f"unknown schema {step.schema}")
        model.clause([slot.act.eq(codes.schema_code[step.schema])])
        for arg, obj in zip(slot.args, step.binding, strict=False):
            if obj not in codes.object_code:
                raise InternalError(f"unknown object {obj}")
            model.clause([arg.eq(codes.object_code[obj])])
