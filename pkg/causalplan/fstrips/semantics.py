"""Ground transition semantics of FSTRIPS tasks.

A ground action is applicable when its binding respects the parameter sorts,
its argument constraints hold, every precondition atom holds in the state,
every static atom agrees with its relation, and no two effects write
different values to the same point. Applying it rewrites the effect points
and copies every other point unchanged.
"""

from __future__ import annotations

from typing import TYPE_CHECKING

from causalplan.fstrips.task import GroundAction
from causalplan.pddl.ast import is_variable
from causalplan.utils import EffectConflict, InternalError

if TYPE_CHECKING:
    from collections.abc import Iterator, Mapping

    from causalplan.fstrips.task import (
        ActionSchema,
        EqualityAtom,
        FstripsTask,
        Point,
        State,
        StaticAtom,
    )


def _value(term: str, binding: Mapping[str, str]) -> str:
    return binding[term] if is_variable(term) else term


def _effects(schema: ActionSchema, binding: Mapping[str, str]) -> dict[Point, str] | Point:
    """Return the ground effect map, or the first point written twice."""
    writes: dict[Point, str] = {}
    for atom in schema.eff:
        ground = atom.ground(binding)
        previous = writes.setdefault(ground.point, ground.value)
        if previous != ground.value:
            return ground.point
    return writes


def failure_cause(task: FstripsTask, state: State, action: GroundAction) -> str | None:
    """Return why an action is not applicable, or None if it is.

    Causes are `binding` (ill-sorted arguments or violated `=` constraints),
    `static`, `precondition` and `effect` (colliding effects).
    """
    schema = task.schema(action.schema)
    if len(action.binding) != len(schema.params):
        return "binding"
    for obj, (_, sort) in zip(action.binding, schema.params, strict=True):
        if obj not in task.sorts[sort].members:
            return "binding"
    binding = schema.binding(action.binding)
    for lhs, rhs, equal in schema.constraints:
        if (_value(lhs, binding) == _value(rhs, binding)) != equal:
            return "binding"
    for atom in schema.static_pre:
        if task.statics[atom.relation].holds(atom.ground(binding)) != atom.positive:
            return "static"
    for atom in schema.pre:
        if not state.holds(atom.ground(binding)):
            return "precondition"
    if not isinstance(_effects(schema, binding), dict):
        return "effect"
    return None


def applicable(task: FstripsTask, state: State, action: GroundAction) -> bool:
    """Whether a ground action can be applied in a state."""
    return failure_cause(task, state, action) is None


def apply(task: FstripsTask, state: State, action: GroundAction) -> State:
    """Apply an applicable ground action.

    Args:
        task: The task the action belongs to.
        state: The state to progress; it is not modified.
        action: The ground action.

    Returns:
        The successor state.

    Raises:
        EffectConflict: If two effects write different values to one point.
        InternalError: If the action is not applicable.

    """
    schema = task.schema(action.schema)
    binding = schema.binding(action.binding)
    writes = _effects(schema, binding)
    if not isinstance(writes, dict):
        function, args = writes
        raise EffectConflict(str(action), f"{function}({', '.join(args)})")
    cause = failure_cause(task, state, action)
    if cause is not None:
        raise InternalError(f"{action} applied although its {cause} check fails")
    return state.update(writes)


def goal_count(state: State, goal: tuple[EqualityAtom, ...]) -> int:
    """Return the number of goal atoms not satisfied in a state."""
    return sum(1 for atom in goal if not state.holds(atom))


def goal_reached(task: FstripsTask, state: State) -> bool:
    """Whether every goal atom, static ones included, holds."""
    return goal_count(state, task.goal) == 0 and task.static_goal_holds()


class _Checks:
    """Checks of a schema bucketed by the last parameter they mention.

    Bucket 0 holds checks without variables; bucket i + 1 holds checks that
    become ground once parameter i is bound.
    """

    def __init__(self, schema: ActionSchema) -> None:
        position = {var: i for i, var in enumerate(schema.variables)}

        def ready(terms: tuple[str, ...]) -> int:
            return max((position[t] + 1 for t in terms if is_variable(t)), default=0)

        size = len(schema.params) + 1
        self.constraints: list[list[tuple[str, str, bool]]] = [[] for _ in range(size)]
        self.statics: list[list[StaticAtom]] = [[] for _ in range(size)]
        self.pre: list[list[EqualityAtom]] = [[] for _ in range(size)]
        for lhs, rhs, equal in schema.constraints:
            self.constraints[ready((lhs, rhs))].append((lhs, rhs, equal))
        for atom in schema.static_pre:
            self.statics[ready(atom.args)].append(atom)
        for atom in schema.pre:
            self.pre[ready(atom.terms)].append(atom)

    def passes(self, bucket: int, binding: Mapping[str, str], state: State, task: FstripsTask) -> bool:
        """Run the checks of one bucket under a partial binding."""
        for lhs, rhs, equal in self.constraints[bucket]:
            if (_value(lhs, binding) == _value(rhs, binding)) != equal:
                return False
        for atom in self.statics[bucket]:
            if task.statics[atom.relation].holds(atom.ground(binding)) != atom.positive:
                return False
        return all(state.holds(atom.ground(binding)) for atom in self.pre[bucket])


def _bindings(schema: ActionSchema, task: FstripsTask, state: State) -> Iterator[tuple[str, ...]]:
    checks = _Checks(schema)
    domains = task.domain(schema)
    binding: dict[str, str] = {}
    if not checks.passes(0, binding, state, task):
        return

    def extend(depth: int) -> Iterator[tuple[str, ...]]:
        if depth == len(domains):
            yield tuple(binding[var] for var in schema.variables)
            return
        var = schema.params[depth][0]
        for obj in domains[depth]:
            binding[var] = obj
            if checks.passes(depth + 1, binding, state, task):
                yield from extend(depth + 1)
        binding.pop(var, None)

    yield from extend(0)


def applicable_actions(task: FstripsTask, state: State) -> Iterator[GroundAction]:
    """Enumerate the applicable ground actions of a state.

    Bindings are built parameter by parameter and abandoned as soon as a
    check that became ground fails, so only partial bindings consistent with
    the state are ever extended.
    """
    for schema in task.schemas:
        for objects in _bindings(schema, task, state):
            if isinstance(_effects(schema, schema.binding(objects)), dict):
                yield GroundAction(schema.name, objects)


def successors(task: FstripsTask, state: State) -> Iterator[tuple[GroundAction, State]]:
    """Enumerate `(action, successor)` pairs of a state."""
    for schema in task.schemas:
        for objects in _bindings(schema, task, state):
            writes = _effects(schema, schema.binding(objects))
            if isinstance(writes, dict):
                yield GroundAction(schema.name, objects), state.update(writes)
