"""Declarative constraint records.

The model keeps every posted constraint as one of these records, in posting
order. They drive the debug listing and the standalone checker, which
evaluates them on a finished assignment without touching propagator code.
"""

from __future__ import annotations

from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import TYPE_CHECKING

from causalplan.solver.variables import IntVar, Term

if TYPE_CHECKING:
    from causalplan.solver.model import Solution


def _term(term: Term) -> str:
    return repr(term) if isinstance(term, IntVar) else str(term)


def _value(term: Term, solution: Solution) -> int:
    return solution[term] if isinstance(term, IntVar) else term


class Constraint(ABC):
    """A constraint that can be checked on a total assignment."""

    @abstractmethod
    def holds(self, solution: Solution) -> bool:
        """Whether the assignment satisfies the constraint."""
        raise NotImplementedError

    @abstractmethod
    def describe(self) -> str:
        """Return a deterministic one-line listing."""
        raise NotImplementedError


@dataclass(frozen=True)
class ClauseConstraint(Constraint):
    """A disjunction of literals."""

    lits: tuple[int, ...]

    def holds(self, solution: Solution) -> bool:
        """Whether some literal is true."""
        return any(solution.lit(lit) for lit in self.lits)

    def describe(self) -> str:
        """Return `clause l1 l2 ...`."""
        return "clause " + " ".join(str(lit) for lit in self.lits)


@dataclass(frozen=True)
class ElementConstraint(Constraint):
    """`cells[index] = target`."""

    index: IntVar
    target: Term
    cells: tuple[Term, ...]

    def holds(self, solution: Solution) -> bool:
        """Whether the indexed cell equals the target."""
        i = solution[self.index]
        return 0 <= i < len(self.cells) and _value(self.cells[i], solution) == _value(self.target, solution)

    def describe(self) -> str:
        """Return `element(index, target | cells)`."""
        return f"element({self.index}, {_term(self.target)} | {' '.join(_term(c) for c in self.cells)})"


@dataclass(frozen=True)
class TableConstraint(Constraint):
    """The variables take the values of one row; `None` cells match anything."""

    variables: tuple[IntVar, ...]
    rows: tuple[tuple[int | None, ...], ...]

    def holds(self, solution: Solution) -> bool:
        """Whether some row matches the assignment."""
        values = [solution[x] for x in self.variables]
        return any(all(c is None or c == v for c, v in zip(row, values, strict=True)) for row in self.rows)

    def describe(self) -> str:
        """Return `table(vars) rows`."""
        rows = " ".join("(" + " ".join("*" if c is None else str(c) for c in row) + ")" for row in self.rows)
        return f"table({' '.join(map(repr, self.variables))}) {rows}"


@dataclass(frozen=True)
class ReifiedEquality(Constraint):
    """`guard -> x = y`, or `guard -> x != y` when `equal` is False."""

    guard: int
    x: Term
    y: Term
    equal: bool = True

    def holds(self, solution: Solution) -> bool:
        """Whether the implication holds."""
        if not solution.lit(self.guard):
            return True
        return (_value(self.x, solution) == _value(self.y, solution)) == self.equal

    def describe(self) -> str:
        """Return `guard -> x = y`."""
        return f"{self.guard} -> {_term(self.x)} {'=' if self.equal else '!='} {_term(self.y)}"


@dataclass(frozen=True)
class BoolSumAtMost(Constraint):
    """At most `bound` of the literals are true."""

    lits: tuple[int, ...]
    bound: int

    def holds(self, solution: Solution) -> bool:
        """Whether the count of true literals respects the bound."""
        return sum(1 for lit in self.lits if solution.lit(lit)) <= self.bound

    def describe(self) -> str:
        """Return `sum(l1 ...) <= bound`."""
        return f"sum({' '.join(str(lit) for lit in self.lits)}) <= {self.bound}"
