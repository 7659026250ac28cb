"""Type-check a domain/problem pair and flatten the sort hierarchy."""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING

from causalplan.pddl.ast import ROOT_SORT, Literal, is_variable
from causalplan.utils import BindingError, SortError

if TYPE_CHECKING:
    from causalplan.pddl.ast import DomainAst, ProblemAst


@dataclass(frozen=True)
class TypedSchema:
    """An action schema with every variable annotated by its sort.

    Attributes:
        name: The schema name.
        params: The `(variable, sort)` parameter list; its sorts form τ(α).
        pre: Precondition literals over predicates.
        eff: Effect literals; negative literals are deletes.
        equalities: `(lhs, rhs, positive)` argument constraints from `=` atoms.

    """

    name: str
    params: tuple[tuple[str, str], ...]
    pre: tuple[Literal, ...]
    eff: tuple[Literal, ...]
    equalities: tuple[tuple[str, str, bool], ...] = ()

    @property
    def variables(self) -> tuple[str, ...]:
        """The parameter variables in order."""
        return tuple(var for var, _ in self.params)

    def sort_of(self, variable: str) -> str:
        """Return the declared sort of a parameter."""
        for var, sort in self.params:
            if var == variable:
                return sort
        raise KeyError(variable)


@dataclass(frozen=True)
class TypedTask:
    """A planning task with resolved names and materialized sorts.

    Attributes:
        name: The problem name.
        domain_name: The domain name.
        objects: All objects, domain constants first, in declaration order.
        object_sorts: Declared sort of every object.
        sort_members: For every sort, the objects it contains (subsorts flattened).
        predicates: Parameter sorts of every predicate.
        schemas: Typed action schemas.
        init: Ground atoms `(predicate, args)` true initially.
        goal: Ground goal literals.

    """

    name: str
    domain_name: str
    objects: tuple[str, ...]
    object_sorts: dict[str, str]
    sort_members: dict[str, tuple[str, ...]]
    predicates: dict[str, tuple[str, ...]]
    schemas: tuple[TypedSchema, ...]
    init: frozenset[tuple[str, tuple[str, ...]]]
    goal: tuple[Literal, ...]

    def tau(self, schema: TypedSchema) -> tuple[tuple[str, ...], ...]:
        """Return the object set of every parameter of a schema."""
        return tuple(self.sort_members[sort] for _, sort in schema.params)

    def fluent_predicates(self) -> set[str]:
        """Predicates touched by at least one effect."""
        return {literal.predicate for schema in self.schemas for literal in schema.eff}


def _ancestors(sorts: tuple[tuple[str, str], ...]) -> dict[str, list[str]]:
    parents = dict(sorts)
    chains: dict[str, list[str]] = {ROOT_SORT: [ROOT_SORT]}
    for sort in parents:
        chain = [sort]
        seen = {sort}
        current = sort
        while current != ROOT_SORT:
            current = parents.get(current, ROOT_SORT)
            if current in seen:
                raise SortError(f"cyclic sort hierarchy through '{current}'")
            seen.add(current)
            chain.append(current)
        chains[sort] = chain
    return chains


def typecheck(domain: DomainAst, problem: ProblemAst) -> TypedTask:
    """Check sorts and build the typed task.

    A term fits a predicate slot when its sort is the slot sort or one of its
    subsorts; object constants are checked by their declared sort.

    Args:
        domain: The parsed domain.
        problem: The parsed problem.

    Returns:
        The typed task with flattened sorts.

    Raises:
        SortError: On a term whose sort does not fit the slot it fills.
        BindingError: On undeclared constants in schema bodies.

    """
    chains = _ancestors(domain.sorts)
    object_sorts: dict[str, str] = {}
    for obj, sort in (*domain.constants, *problem.objects):
        object_sorts.setdefault(obj, sort)

    sort_members: dict[str, list[str]] = {sort: [] for sort in chains}
    for obj, sort in object_sorts.items():
        for ancestor in chains[sort]:
            sort_members[ancestor].append(obj)

    def fits(sort: str, slot: str) -> bool:
        return slot in chains[sort]

    predicates = {p.name: p.param_sorts for p in domain.predicates}
    constants = {obj for obj, _ in domain.constants}

    schemas = []
    for schema in domain.schemas:
        var_sorts = dict(schema.params)

        def term_sort(term: str, schema_name: str = schema.name, var_sorts: dict[str, str] = var_sorts) -> str:
            if is_variable(term):
                return var_sorts[term]
            if term not in constants:
                raise BindingError("constant", term, f"in schema {schema_name}")
            return object_sorts[term]

        for literal in (*schema.precondition, *schema.effect):
            if literal.is_equality:
                for term in literal.args:
                    term_sort(term)
                continue
            for position, (term, slot) in enumerate(zip(literal.args, predicates[literal.predicate], strict=True)):
                sort = term_sort(term)
                if not fits(sort, slot):
                    raise SortError(
                        f"{schema.name}: argument {position + 1} of {literal.predicate} "
                        f"expects {slot}, got {term} of sort {sort}"
                    )
        schemas.append(
            TypedSchema(
                name=schema.name,
                params=schema.params,
                pre=tuple(lit for lit in schema.precondition if not lit.is_equality),
                eff=_resolve_add_after_delete(schema.effect),
                equalities=tuple(
                    (lit.args[0], lit.args[1], lit.positive) for lit in schema.precondition if lit.is_equality
                ),
            )
        )

    for literal in (*problem.init, *problem.goal):
        for term, slot in zip(literal.args, predicates[literal.predicate], strict=True):
            if not fits(object_sorts[term], slot):
                raise SortError(f"{literal}: {term} of sort {object_sorts[term]} does not fit {slot}")

    return TypedTask(
        name=problem.name,
        domain_name=domain.name,
        objects=tuple(object_sorts),
        object_sorts=object_sorts,
        sort_members={sort: tuple(members) for sort, members in sort_members.items()},
        predicates=predicates,
        schemas=tuple(schemas),
        init=frozenset((lit.predicate, lit.args) for lit in problem.init),
        goal=problem.goal,
    )


def _resolve_add_after_delete(effect: tuple[Literal, ...]) -> tuple[Literal, ...]:
    """Drop deletes that an add of the very same atom overrides, and duplicates."""
    adds = {(lit.predicate, lit.args) for lit in effect if lit.positive}
    resolved: list[Literal] = []
    for literal in effect:
        if not literal.positive and (literal.predicate, literal.args) in adds:
            continue
        if literal not in resolved:
            resolved.append(literal)
    return tuple(resolved)
