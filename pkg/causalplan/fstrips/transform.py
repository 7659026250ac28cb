"""Translate typed PDDL tasks into FSTRIPS tasks.

Every predicate is given a `PredicateMapping`:

- `static`: the predicate occurs in no effect and becomes a relation given by
  its initial tuples.
- `boolean`: the predicate becomes a function to `{<true>, <false>}` over all
  its arguments.
- `functional`: one argument position is the value and the remaining ones are
  the arguments, so `P(x1, y, x2)` becomes `P(x1, x2) = y`. A point without
  a true atom maps to `<none>`, which is added to the codomain only when some
  point can be empty.

`build_task` applies a full set of mappings; `boolean_transform` is the
simple transformation that maps every fluent predicate to a Boolean function.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import TYPE_CHECKING

from causalplan.fstrips.task import (
    BOOL_SORT,
    FALSE,
    NONE,
    TRUE,
    ActionSchema,
    EqualityAtom,
    FstripsTask,
    FunctionSymbol,
    PointIndex,
    Sort,
    State,
    StaticAtom,
    StaticRelation,
)
from causalplan.utils import InternalError

if TYPE_CHECKING:
    from causalplan.pddl.ast import Literal
    from causalplan.pddl.typecheck import TypedSchema, TypedTask

logger = logging.getLogger(__name__)

STATIC = "static"
BOOLEAN = "boolean"
FUNCTIONAL = "functional"


@dataclass(frozen=True)
class PredicateMapping:
    """How one predicate is represented in the FSTRIPS task.

    Attributes:
        predicate: The predicate name.
        kind: One of `static`, `boolean` or `functional`.
        value_position: For `functional`, the argument position that becomes
            the function value.

    """

    predicate: str
    kind: str
    value_position: int | None = None

    def split(self, args: tuple[str, ...]) -> tuple[tuple[str, ...], str]:
        """Split the arguments of an atom into function arguments and value."""
        if self.value_position is None:
            raise InternalError(f"{self.predicate} has no value position")
        p = self.value_position
        return (*args[:p], *args[p + 1 :]), args[p]

    def __str__(self) -> str:
        """Return a one-line description of the mapping."""
        if self.kind == FUNCTIONAL:
            return f"{self.predicate}: value at position {self.value_position}"
        return f"{self.predicate}: {self.kind}"


def none_sort(sort: str) -> str:
    """Name of the codomain sort extending `sort` with `<none>`."""
    return f"{sort}|{NONE}"


def boolean_mappings(typed: TypedTask) -> dict[str, PredicateMapping]:
    """Map fluent predicates to Boolean functions and the others to relations."""
    fluents = typed.fluent_predicates()
    return {
        name: PredicateMapping(name, BOOLEAN if name in fluents else STATIC) for name in sorted(typed.predicates)
    }


def boolean_transform(typed: TypedTask) -> FstripsTask:
    """Translate a typed task with the simple Boolean transformation.

    Args:
        typed: The type-checked task.

    Returns:
        The FSTRIPS task; its initial state is closed-world completed.

    """
    return build_task(typed, boolean_mappings(typed), transform="simple")


def _translate_effects(
    schema: TypedSchema, mappings: dict[str, PredicateMapping]
) -> tuple[list[EqualityAtom], list[tuple[str, str, bool]], set[str]]:
    """Return effect atoms, extra disequalities and functions that may become empty."""
    effects: list[EqualityAtom] = []
    constraints: list[tuple[str, str, bool]] = []
    emptied: set[str] = set()
    adds = [lit for lit in schema.eff if lit.positive]
    for literal in schema.eff:
        mapping = mappings[literal.predicate]
        if mapping.kind == BOOLEAN:
            effects.append(EqualityAtom(literal.predicate, literal.args, TRUE if literal.positive else FALSE))
            continue
        args, value = mapping.split(literal.args)
        if literal.positive:
            effects.append(EqualityAtom(literal.predicate, args, value))
            continue
        overwriting = [
            add for add in adds if add.predicate == literal.predicate and mapping.split(add.args)[0] == args
        ]
        if overwriting:
            constraints.append((mapping.split(overwriting[0].args)[1], value, False))
        else:
            effects.append(EqualityAtom(literal.predicate, args, NONE))
            emptied.add(literal.predicate)
    unique = list(dict.fromkeys(effects))
    return unique, constraints, emptied


def _precondition(
    literal: Literal, mappings: dict[str, PredicateMapping]
) -> EqualityAtom | StaticAtom:
    mapping = mappings[literal.predicate]
    if mapping.kind == STATIC:
        return StaticAtom(literal.predicate, literal.args, literal.positive)
    if mapping.kind == BOOLEAN:
        return EqualityAtom(literal.predicate, literal.args, TRUE if literal.positive else FALSE)
    if not literal.positive:
        raise InternalError(f"negative occurrence of functional predicate {literal.predicate}")
    args, value = mapping.split(literal.args)
    return EqualityAtom(literal.predicate, args, value)


def build_task(typed: TypedTask, mappings: dict[str, PredicateMapping], transform: str) -> FstripsTask:
    """Build the FSTRIPS task for a complete set of predicate mappings.

    Args:
        typed: The type-checked task.
        mappings: One mapping per predicate of the domain.
        transform: Name recorded on the task (`simple` or `fn`).

    Returns:
        The translated task.

    Raises:
        InternalError: If a functional mapping meets two initial values on one
            point or a negative occurrence of its predicate.

    """
    schemas: list[ActionSchema] = []
    emptied: set[str] = set()
    for schema in typed.schemas:
        effects, extra, empty = _translate_effects(schema, mappings)
        emptied |= empty
        pre: list[EqualityAtom] = []
        static_pre: list[StaticAtom] = []
        for literal in schema.pre:
            atom = _precondition(literal, mappings)
            if isinstance(atom, StaticAtom):
                static_pre.append(atom)
            else:
                pre.append(atom)
        schemas.append(
            ActionSchema(
                name=schema.name,
                params=schema.params,
                pre=tuple(dict.fromkeys(pre)),
                eff=tuple(effects),
                static_pre=tuple(dict.fromkeys(static_pre)),
                constraints=(*schema.equalities, *extra),
            )
        )

    sorts = {name: Sort(name, members) for name, members in typed.sort_members.items()}
    functions: dict[str, FunctionSymbol] = {}
    statics: dict[str, StaticRelation] = {}
    for name in sorted(mappings):
        mapping = mappings[name]
        param_sorts = typed.predicates[name]
        if mapping.kind == STATIC:
            tuples = tuple(args for predicate, args in typed.init if predicate == name)
            statics[name] = StaticRelation(name, param_sorts, tuples)
        elif mapping.kind == BOOLEAN:
            sorts.setdefault(BOOL_SORT, Sort(BOOL_SORT, (TRUE, FALSE)))
            functions[name] = FunctionSymbol(name, param_sorts, BOOL_SORT)
        else:
            domain_sorts, codomain = mapping.split(param_sorts)
            functions[name] = FunctionSymbol(name, domain_sorts, codomain)

    index = PointIndex(functions, sorts)
    initial: dict[tuple[str, tuple[str, ...]], str] = {}
    for predicate, args in sorted(typed.init):
        mapping = mappings[predicate]
        if mapping.kind == BOOLEAN:
            initial[(predicate, args)] = TRUE
        elif mapping.kind == FUNCTIONAL:
            point_args, value = mapping.split(args)
            if initial.setdefault((predicate, point_args), value) != value:
                raise InternalError(f"{predicate}{point_args} has two initial values")

    values: list[str] = []
    for point in index.points:
        function = point[0]
        if mappings[function].kind == BOOLEAN:
            values.append(initial.get(point, FALSE))
        else:
            if point not in initial:
                emptied.add(function)
            values.append(initial.get(point, NONE))

    # functions whose points may be empty get a codomain holding <none>
    for name in sorted(emptied):
        symbol = functions[name]
        extended = none_sort(symbol.codomain_sort)
        sorts.setdefault(extended, Sort(extended, (*sorts[symbol.codomain_sort].members, NONE)))
        functions[name] = FunctionSymbol(name, symbol.domain_sorts, extended)

    goal: list[EqualityAtom] = []
    static_goal: list[StaticAtom] = []
    for literal in typed.goal:
        atom = _precondition(literal, mappings)
        if isinstance(atom, StaticAtom):
            static_goal.append(atom)
        else:
            goal.append(atom)

    task = FstripsTask(
        name=typed.name,
        objects=typed.objects,
        sorts=sorts,
        functions=functions,
        statics=statics,
        schemas=tuple(schemas),
        init=State(index, tuple(values)),
        goal=tuple(dict.fromkeys(goal)),
        static_goal=tuple(dict.fromkeys(static_goal)),
        transform=transform,
    )
    logger.debug(
        "%s transform of %s: %d functions, %d statics, %d points",
        transform,
        typed.name,
        len(functions),
        len(statics),
        len(index),
    )
    return task
