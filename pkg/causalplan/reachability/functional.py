"""Concise translation of predicates into functions.

A predicate `P(x1, ..., xn)` whose value position `p` is right-unique, i.e.
no reachable state holds `P(..., a, ...)` and `P(..., b, ...)` with equal
arguments outside `p` and `a != b`, is represented by a function from the
other positions to position `p`. Right-uniqueness is certified by proving
the two-atom witness formula unreachable with h^m. Points without a true atom
map to `<none>`. Predicates without a certified position keep the Boolean
representation.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import TYPE_CHECKING

from causalplan.fstrips.transform import (
    BOOLEAN,
    FUNCTIONAL,
    STATIC,
    PredicateMapping,
    boolean_mappings,
    boolean_transform,
    build_task,
)
from causalplan.pddl.ast import Literal
from causalplan.reachability.formula import make_formula
from causalplan.reachability.hm import DEFAULT_FUEL, HmEvaluator, HmResult

if TYPE_CHECKING:
    from causalplan.fstrips.task import FstripsTask
    from causalplan.pddl.typecheck import TypedTask
    from causalplan.reachability.formula import Formula

logger = logging.getLogger(__name__)

MAX_SPLIT_ARITY = 4


@dataclass
class MappingDecision:
    """The mapping chosen for one predicate and how it was found.

    Attributes:
        mapping: The chosen mapping.
        reason: Why the Boolean fallback was used, empty otherwise.
        tried: `(value position, verdict)` for every position considered.

    """

    mapping: PredicateMapping
    reason: str = ""
    tried: list[tuple[int, str]] = field(default_factory=list)


@dataclass
class TransformReport:
    """Per-predicate decisions of the functional transformation."""

    decisions: dict[str, MappingDecision] = field(default_factory=dict)

    @property
    def mappings(self) -> dict[str, PredicateMapping]:
        """The chosen mapping of every predicate."""
        return {name: decision.mapping for name, decision in self.decisions.items()}

    def describe(self, task: TypedTask, name: str) -> str:
        """Return the signature a predicate ends up with, e.g. `block -> place`."""
        mapping = self.decisions[name].mapping
        sorts = task.predicates[name]
        if mapping.kind == STATIC:
            return f"static ({', '.join(sorts)})"
        if mapping.kind == BOOLEAN:
            return f"({', '.join(sorts)}) -> bool"
        args, value = mapping.split(sorts)
        return f"({', '.join(args)}) -> {value}"


def uniqueness_formula(task: TypedTask, predicate: str, position: int) -> Formula:
    """Witness of a right-uniqueness violation.

    The formula states two atoms of `predicate` that agree everywhere but at
    `position`, where they differ.
    """
    sorts = task.predicates[predicate]
    first = [f"?a{i}" for i in range(len(sorts))]
    second = list(first)
    second[position] = "?b"
    domains = {var: task.sort_members[sort] for var, sort in zip(first, sorts, strict=True)}
    domains["?b"] = task.sort_members[sorts[position]]
    return make_formula(
        [Literal(predicate, tuple(first)), Literal(predicate, tuple(second))],
        [[(first[position], "?b")]],
        domains,
    )


def right_unique(
    predicate: str, position: int, task: TypedTask, m: int = 2, fuel: int = DEFAULT_FUEL
) -> bool:
    """Whether h^m proves the value position of a predicate right-unique.

    Args:
        predicate: The predicate name.
        position: The argument position taken as the function value.
        task: The typed task.
        m: The h^m parameter.
        fuel: Formula budget of the evaluation.

    Returns:
        True only if the witness formula was proved unreachable.

    """
    return _uniqueness(predicate, position, task, m, fuel).unreachable


def _uniqueness(predicate: str, position: int, task: TypedTask, m: int, fuel: int) -> HmResult:
    return HmEvaluator(task, m, fuel).evaluate(uniqueness_formula(task, predicate, position))


def eligibility(task: TypedTask, predicate: str, position: int) -> str | None:
    """Check the syntactic conditions for a functional representation.

    Returns:
        None if the position is eligible, otherwise the reason it is not.

    """
    mapping = PredicateMapping(predicate, FUNCTIONAL, position)
    if any(lit.predicate == predicate and not lit.positive for lit in task.goal):
        return "negative goal"
    for schema in task.schemas:
        if any(lit.predicate == predicate and not lit.positive for lit in schema.pre):
            return f"negative precondition in {schema.name}"
        adds = [lit for lit in schema.eff if lit.predicate == predicate and lit.positive]
        points = [mapping.split(lit.args)[0] for lit in adds]
        if len(points) != len(set(points)):
            return f"two adds on one point in {schema.name}"
        for lit in schema.eff:
            if lit.predicate != predicate or lit.positive:
                continue
            if mapping.split(lit.args)[0] in points:
                continue
            if lit.negated() not in schema.pre:
                return f"unguarded delete in {schema.name}"
    return None


def _split_size(task: TypedTask, predicate: str, position: int) -> int:
    sorts = task.predicates[predicate]
    args = [len(task.sort_members[sort]) for i, sort in enumerate(sorts) if i != position]
    return math.prod(args) * len(task.sort_members[sorts[position]])


def choose_mappings(task: TypedTask, m: int = 2, fuel: int = DEFAULT_FUEL) -> TransformReport:
    """Pick a representation for every predicate.

    Value positions are tried from the smallest `|arguments| * |values|`
    onwards and the first certified one is kept.

    Args:
        task: The typed task.
        m: The h^m parameter.
        fuel: Formula budget per h^m evaluation.

    Returns:
        The transformation report.

    """
    report = TransformReport()
    for name, fallback in boolean_mappings(task).items():
        decision = MappingDecision(fallback)
        report.decisions[name] = decision
        if fallback.kind == STATIC:
            continue
        arity = len(task.predicates[name])
        if arity == 0:
            decision.reason = "nullary"
            continue
        if arity > MAX_SPLIT_ARITY:
            decision.reason = f"arity above {MAX_SPLIT_ARITY}"
            continue
        candidates = []
        for position in range(arity):
            problem = eligibility(task, name, position)
            if problem is None:
                candidates.append(position)
            else:
                decision.tried.append((position, problem))
        candidates.sort(key=lambda p: (_split_size(task, name, p), p))
        for position in candidates:
            result = _uniqueness(name, position, task, m, fuel)
            decision.tried.append((position, f"h^{m} = {result}"))
            if result.unreachable:
                decision.mapping = PredicateMapping(name, FUNCTIONAL, position)
                break
        else:
            decision.reason = "no right-unique position"
        logger.info("%s: %s", name, decision.mapping)
    return report


def functional_transform(task: TypedTask, m: int = 2, fuel: int = DEFAULT_FUEL) -> FstripsTask:
    """Translate a typed task with the concise functional transformation.

    Args:
        task: The typed task.
        m: The h^m parameter.
        fuel: Formula budget per h^m evaluation; exhausting it keeps the
            predicate Boolean.

    Returns:
        The FSTRIPS task.

    """
    return build_task(task, choose_mappings(task, m, fuel).mappings, transform="fn")


def translate(task: TypedTask, transform: str = "fn", m: int = 2, fuel: int = DEFAULT_FUEL) -> FstripsTask:
    """Translate a typed task with the named transformation, `simple` or `fn`."""
    if transform == "simple":
        return boolean_transform(task)
    return functional_transform(task, m, fuel)
