"""Lifted h^m reachability over existential formulas.

The value of a formula is 0 when the initial state satisfies it. A formula
with at most `m` literals costs one more than its cheapest regression through
any schema; a larger formula costs as much as its most expensive sub-formula
of exactly `m` literals. The recurrence is evaluated on the graph of
canonical formulas reachable from the query, relaxing values downwards from
infinity until nothing changes, so cyclic regressions settle on their
shortest acyclic cost.
"""

from __future__ import annotations

import itertools
import logging
import math
from collections import defaultdict, deque
from dataclasses import dataclass
from typing import TYPE_CHECKING

from causalplan.pddl.ast import is_variable
from causalplan.reachability.formula import Formula, canonicalize
from causalplan.reachability.regression import regress

if TYPE_CHECKING:
    from collections.abc import Iterator

    from causalplan.pddl.ast import Literal
    from causalplan.pddl.typecheck import TypedTask

logger = logging.getLogger(__name__)

DEFAULT_FUEL = 1_000_000

ZERO = "zero"
MIN = "min"
MAX = "max"


def entailed_by_init(psi: Formula, init: frozenset[tuple[str, tuple[str, ...]]], universe: tuple[str, ...]) -> bool:
    """Whether some assignment of the variables satisfies a formula in the initial state.

    Positive literals are matched against the initial atoms by backtracking;
    the remaining variables are enumerated over their ranges and negative
    literals are checked under the closed-world assumption.

    Args:
        psi: A canonical formula.
        init: The initial atoms `(predicate, args)`.
        universe: Range of variables without a declared range.

    """
    ranges = psi.domain_map()
    by_predicate: dict[str, list[tuple[str, ...]]] = defaultdict(list)
    for predicate, args in sorted(init):
        by_predicate[predicate].append(args)
    positives = sorted((lit for lit in psi.literals if lit.positive), key=lambda lit: len(by_predicate[lit.predicate]))
    negatives = [lit for lit in psi.literals if not lit.positive]
    variables = sorted(psi.variables)

    def value(term: str, binding: dict[str, str]) -> str:
        return binding[term] if is_variable(term) else term

    def unify(literal: Literal, row: tuple[str, ...], binding: dict[str, str]) -> dict[str, str] | None:
        extended = dict(binding)
        for term, obj in zip(literal.args, row, strict=True):
            if not is_variable(term):
                if term != obj:
                    return None
            elif term in extended:
                if extended[term] != obj:
                    return None
            elif term in ranges and obj not in ranges[term]:
                return None
            else:
                extended[term] = obj
        return extended

    def complete(binding: dict[str, str]) -> bool:
        free = [var for var in variables if var not in binding]
        for objects in itertools.product(*(sorted(ranges.get(var, universe)) for var in free)):
            full = binding | dict(zip(free, objects, strict=True))
            if any((lit.predicate, tuple(value(t, full) for t in lit.args)) in init for lit in negatives):
                continue
            if all(any(value(a, full) != value(b, full) for a, b in clause) for clause in psi.diseqs):
                return True
        return False

    def match(i: int, binding: dict[str, str]) -> bool:
        if i == len(positives):
            return complete(binding)
        for row in by_predicate[positives[i].predicate]:
            extended = unify(positives[i], row, binding)
            if extended is not None and match(i + 1, extended):
                return True
        return False

    return match(0, {})


@dataclass(frozen=True)
class HmResult:
    """Value of the h^m recurrence for one formula.

    Attributes:
        value: The cost, `math.inf` when the formula is unreachable. When the
            evaluation ran out of fuel this is only a lower bound.
        complete: False if exploration stopped after `fuel` formulas.
        explored: Number of distinct formulas explored.

    """

    value: float
    complete: bool
    explored: int

    @property
    def unreachable(self) -> bool:
        """Whether the formula was proved to hold in no reachable state."""
        return self.complete and math.isinf(self.value)

    def __str__(self) -> str:
        """Return the value, `inf`, or `unknown(>= v)`."""
        if not self.complete:
            return f"unknown(>= {self.value:g})"
        return "inf" if math.isinf(self.value) else str(int(self.value))


class HmEvaluator:
    """Evaluates h^m over one typed task with a private memo table."""

    def __init__(self, task: TypedTask, m: int = 2, fuel: int = DEFAULT_FUEL) -> None:
        """Prepare an evaluator.

        Args:
            task: The typed task whose schemas regress formulas.
            m: Size of the formulas evaluated exactly, at least 1.
            fuel: Maximum number of distinct formulas explored.

        """
        if m < 1:
            raise ValueError("m must be at least 1")
        self.task = task
        self.m = m
        self.fuel = fuel
        self.kind: dict[Formula, str] = {}
        self.children: dict[Formula, set[Formula]] = {}

    def _expand(self, node: Formula) -> Iterator[Formula]:
        if entailed_by_init(node, self.task.init, self.task.objects):
            self.kind[node] = ZERO
            return
        if len(node) <= self.m:
            self.kind[node] = MIN
            for schema in self.task.schemas:
                yield from regress(node, schema, self.task)
            return
        self.kind[node] = MAX
        for subset in itertools.combinations(sorted(node.literals, key=str), self.m):
            sub = canonicalize(Formula(frozenset(subset), node.diseqs, node.domains))
            if sub is not None:
                yield sub

    def evaluate(self, psi: Formula) -> HmResult:
        """Compute h^m of a formula.

        Args:
            psi: The formula; it is canonicalized first.

        Returns:
            The value; unsatisfiable formulas are unreachable.

        """
        root = canonicalize(psi)
        if root is None:
            return HmResult(math.inf, True, 0)

        parents: dict[Formula, set[Formula]] = defaultdict(set)
        queue = deque([root])
        seen = {root}
        complete = True
        while queue:
            node = queue.popleft()
            kids = self.children.get(node)
            if kids is None:
                kids = self.children[node] = set(self._expand(node))
            for kid in kids:
                parents[kid].add(node)
                if kid in seen:
                    continue
                if len(seen) >= self.fuel:
                    complete = False
                    continue
                seen.add(kid)
                queue.append(kid)

        # unexplored formulas are optimistically free
        values = {node: math.inf for node in seen}
        work: deque[Formula] = deque()
        for node in seen:
            if self.kind.get(node) == ZERO:
                values[node] = 0
                work.append(node)
        for node in list(parents):
            if node not in seen:
                values[node] = 0
                work.append(node)
        while work:
            node = work.popleft()
            for parent in parents[node]:
                if parent not in seen:
                    continue
                if self.kind[parent] == MIN:
                    new = 1 + min(values[kid] for kid in self.children[parent])
                else:
                    new = max(values[kid] for kid in self.children[parent])
                if new < values[parent]:
                    values[parent] = new
                    work.append(parent)

        result = HmResult(values[root], complete, len(seen))
        logger.debug("h^%d(%s) = %s over %d formulas", self.m, root, result, len(seen))
        return result


def hm(psi: Formula, m: int, task: TypedTask, fuel: int = DEFAULT_FUEL) -> HmResult:
    """Evaluate h^m of a formula with a fresh memo table."""
    return HmEvaluator(task, m, fuel).evaluate(psi)
