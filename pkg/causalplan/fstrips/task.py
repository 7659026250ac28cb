"""FSTRIPS task representation.

A task is made of sorts (finite object sets), function symbols whose graphs
form the state, static relations given by their tuples, and action schemas
whose preconditions and effects are equality atoms `f(t1, ..., tn) = v`.
Terms are strings: variables start with `?`, anything else is an object.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import TYPE_CHECKING

from causalplan.pddl.ast import is_variable

if TYPE_CHECKING:
    from collections.abc import Iterator, Mapping

BOOL_SORT = "<bool>"
TRUE = "<true>"
FALSE = "<false>"
NONE = "<none>"

Point = tuple[str, tuple[str, ...]]


@dataclass(frozen=True)
class Sort:
    """A finite set of objects; `members` fixes the indexing order."""

    name: str
    members: tuple[str, ...]

    @property
    def degenerate(self) -> bool:
        """Whether the sort has no member."""
        return not self.members


@dataclass(frozen=True)
class FunctionSymbol:
    """A function symbol `name: domain_sorts -> codomain_sort`."""

    name: str
    domain_sorts: tuple[str, ...]
    codomain_sort: str
    static: bool = False

    @property
    def arity(self) -> int:
        """Number of arguments d_f."""
        return len(self.domain_sorts)


def _substitute(term: str, binding: Mapping[str, str]) -> str:
    return binding[term] if is_variable(term) else term


@dataclass(frozen=True)
class EqualityAtom:
    """An atom `function(args) = value` over terms."""

    function: str
    args: tuple[str, ...]
    value: str

    @property
    def terms(self) -> tuple[str, ...]:
        """Arguments followed by the value."""
        return (*self.args, self.value)

    def ground(self, binding: Mapping[str, str]) -> EqualityAtom:
        """Substitute variables by the objects of a binding."""
        return EqualityAtom(
            self.function,
            tuple(_substitute(t, binding) for t in self.args),
            _substitute(self.value, binding),
        )

    @property
    def point(self) -> Point:
        """The function point `(function, args)` the atom refers to."""
        return (self.function, self.args)

    def __str__(self) -> str:
        """Return the atom as `f(a, b)=v`."""
        return f"{self.function}({', '.join(self.args)})={self.value}"


@dataclass(frozen=True)
class StaticAtom:
    """A possibly negated atom over a static relation."""

    relation: str
    args: tuple[str, ...]
    positive: bool = True

    def ground(self, binding: Mapping[str, str]) -> tuple[str, ...]:
        """Return the tuple the atom refers to under a binding."""
        return tuple(_substitute(t, binding) for t in self.args)

    def __str__(self) -> str:
        """Return the atom as `r(a, b)` or `not r(a, b)`."""
        atom = f"{self.relation}({', '.join(self.args)})"
        return atom if self.positive else f"not {atom}"


@dataclass(frozen=True)
class StaticRelation:
    """A relation fixed for the whole task, stored as sorted tuples."""

    name: str
    sorts: tuple[str, ...]
    tuples: tuple[tuple[str, ...], ...]
    members: frozenset[tuple[str, ...]] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "tuples", tuple(sorted(set(self.tuples))))
        object.__setattr__(self, "members", frozenset(self.tuples))

    def holds(self, args: tuple[str, ...]) -> bool:
        """Whether the tuple belongs to the relation."""
        return args in self.members


@dataclass(frozen=True)
class ActionSchema:
    """An action schema over equality atoms.

    Attributes:
        name: The schema name.
        params: `(variable, sort)` parameter list.
        pre: Precondition atoms.
        eff: Effect atoms, pairwise distinct on `(function, args)`.
        static_pre: Atoms over static relations.
        constraints: `(lhs, rhs, equal)` argument (dis)equalities.

    """

    name: str
    params: tuple[tuple[str, str], ...]
    pre: tuple[EqualityAtom, ...] = ()
    eff: tuple[EqualityAtom, ...] = ()
    static_pre: tuple[StaticAtom, ...] = ()
    constraints: tuple[tuple[str, str, bool], ...] = ()

    def __post_init__(self) -> None:
        variables = {var for var, _ in self.params}
        terms = [t for atom in (*self.pre, *self.eff) for t in atom.terms]
        terms += [t for atom in self.static_pre for t in atom.args]
        terms += [t for lhs, rhs, _ in self.constraints for t in (lhs, rhs)]
        for term in terms:
            if is_variable(term) and term not in variables:
                raise ValueError(f"{self.name}: variable {term} is not a parameter")
        points = [atom.point for atom in self.eff]
        if len(points) != len(set(points)):
            raise ValueError(f"{self.name}: two effects write the same point")

    @property
    def variables(self) -> tuple[str, ...]:
        """The parameter variables in order."""
        return tuple(var for var, _ in self.params)

    def binding(self, objects: tuple[str, ...]) -> dict[str, str]:
        """Map each parameter to the object at the same position."""
        return dict(zip(self.variables, objects, strict=True))


@dataclass(frozen=True)
class GroundAction:
    """A schema applied to one object per parameter."""

    schema: str
    binding: tuple[str, ...]

    def __str__(self) -> str:
        """Return the action as `(schema obj ...)`."""
        return f"({' '.join((self.schema, *self.binding))})"


@dataclass(frozen=True)
class Plan:
    """A sequence of ground actions; the cost is its length."""

    steps: tuple[GroundAction, ...] = ()

    @property
    def cost(self) -> int:
        """Unit-cost plan length."""
        return len(self.steps)

    def __len__(self) -> int:
        """Return the number of steps."""
        return len(self.steps)


class PointIndex:
    """Fixed enumeration of the points of every non-static function."""

    def __init__(self, functions: Mapping[str, FunctionSymbol], sorts: Mapping[str, Sort]) -> None:
        """Enumerate `dom(f)` for every function, sorted by function name.

        Args:
            functions: The function symbols of the task.
            sorts: The sorts the domains refer to.

        """
        self.points: list[Point] = []
        for name in sorted(functions):
            symbol = functions[name]
            if symbol.static:
                continue
            members = [sorts[sort].members for sort in symbol.domain_sorts]
            for args in itertools.product(*members):
                self.points.append((name, tuple(args)))
        self.position = {point: i for i, point in enumerate(self.points)}

    def __len__(self) -> int:
        """Return |𝓕|, the number of points."""
        return len(self.points)


@dataclass(frozen=True)
class State:
    """A total assignment of values to the points of a `PointIndex`.

    States are immutable: `update` returns a new state sharing the index.
    Equality and hashing use the value vector, ordered like the index, which
    is the canonical serialization of the function graphs.
    """

    index: PointIndex = field(compare=False, repr=False)
    values: tuple[str, ...]

    def __getitem__(self, point: Point) -> str:
        """Return the value of a point."""
        return self.values[self.index.position[point]]

    def holds(self, atom: EqualityAtom) -> bool:
        """Whether a ground atom is true in the state."""
        return self[atom.point] == atom.value

    def update(self, assignments: Mapping[Point, str]) -> State:
        """Return a copy with some points rewritten."""
        if not assignments:
            return self
        values = list(self.values)
        for point, value in assignments.items():
            values[self.index.position[point]] = value
        return State(self.index, tuple(values))

    def items(self) -> Iterator[tuple[Point, str]]:
        """Iterate over `(point, value)` pairs in index order."""
        return zip(self.index.points, self.values, strict=True)


@dataclass
class FstripsTask:
    """A planning task in functional STRIPS form.

    Attributes:
        name: The problem name.
        objects: The universe U in a fixed order.
        sorts: Sorts by name.
        functions: Non-static function symbols by name.
        statics: Static relations by name.
        schemas: Action schemas.
        init: The initial state s_0.
        goal: Ground goal atoms over functions.
        static_goal: Ground goal atoms over static relations.
        transform: Name of the transformation that produced the task.

    """

    name: str
    objects: tuple[str, ...]
    sorts: dict[str, Sort]
    functions: dict[str, FunctionSymbol]
    statics: dict[str, StaticRelation]
    schemas: tuple[ActionSchema, ...]
    init: State
    goal: tuple[EqualityAtom, ...]
    static_goal: tuple[StaticAtom, ...] = ()
    transform: str = "simple"

    @property
    def points(self) -> PointIndex:
        """The point enumeration shared by every state of the task."""
        return self.init.index

    def schema(self, name: str) -> ActionSchema:
        """Return a schema by name."""
        for schema in self.schemas:
            if schema.name == name:
                return schema
        raise KeyError(name)

    def domain(self, schema: ActionSchema) -> tuple[tuple[str, ...], ...]:
        """Return τ(α), the object set of every parameter."""
        return tuple(self.sorts[sort].members for _, sort in schema.params)

    @property
    def max_params(self) -> int:
        """K_α."""
        return max((len(s.params) for s in self.schemas), default=0)

    @property
    def max_pre(self) -> int:
        """K_pre."""
        return max((len(s.pre) for s in self.schemas), default=0)

    @property
    def max_eff(self) -> int:
        """K_eff."""
        return max((len(s.eff) for s in self.schemas), default=0)

    @property
    def max_arity(self) -> int:
        """K_f over non-static functions."""
        return max((f.arity for f in self.functions.values()), default=0)

    def static_goal_holds(self) -> bool:
        """Whether every goal atom over a static relation holds."""
        return all(self.statics[a.relation].holds(a.args) == a.positive for a in self.static_goal)


def dump(task: FstripsTask) -> str:
    """Render a task as deterministic text with sorted symbols."""
    lines = [f"task {task.name} ({task.transform})"]
    for name in sorted(task.sorts):
        lines.append(f"sort {name} = {{{', '.join(task.sorts[name].members)}}}")
    for name in sorted(task.functions):
        symbol = task.functions[name]
        lines.append(f"function {name}: ({', '.join(symbol.domain_sorts)}) -> {symbol.codomain_sort}")
    for name in sorted(task.statics):
        relation = task.statics[name]
        rows = " ".join(f"({' '.join(t)})" for t in relation.tuples)
        lines.append(f"static {name}: ({', '.join(relation.sorts)}) = {{{rows}}}")
    for schema in sorted(task.schemas, key=lambda s: s.name):
        params = ", ".join(f"{var}: {sort}" for var, sort in schema.params)
        lines.append(f"schema {schema.name}({params})")
        lines.extend(f"  pre {atom}" for atom in schema.pre)
        lines.extend(f"  static {atom}" for atom in schema.static_pre)
        lines.extend(f"  where {lhs} {'=' if eq else '!='} {rhs}" for lhs, rhs, eq in schema.constraints)
        lines.extend(f"  eff {atom}" for atom in schema.eff)
    for (function, args), value in task.init.items():
        lines.append(f"init {function}({', '.join(args)})={value}")
    lines.extend(f"goal {atom}" for atom in sorted(task.goal, key=str))
    lines.extend(f"goal {atom}" for atom in sorted(task.static_goal, key=str))
    return "\n".join(lines) + "\n"
