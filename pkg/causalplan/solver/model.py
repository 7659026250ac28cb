"""Constraint model: variables, posted constraints, solve and minimize.

`CpModel` is the public face of the solver. It allocates variables, records
every constraint for the listing and the checker, attaches the matching
propagator to its `Engine` and runs root propagation after each post, so an
infeasibility visible at the root is reported by the next solve.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import TYPE_CHECKING

from causalplan.solver.checker import check
from causalplan.solver.constraints import (
    BoolSumAtMost,
    ClauseConstraint,
    Constraint,
    ElementConstraint,
    ReifiedEquality,
    TableConstraint,
)
from causalplan.solver.engine import SAT, UNKNOWN, UNSAT, Budget, Engine, EngineStats, Propagator
from causalplan.solver.propagators import (
    BoolSumPropagator,
    ElementPropagator,
    ReifiedEqualityPropagator,
    TablePropagator,
)
from causalplan.solver.variables import BoolVar, IntVar
from causalplan.utils import CapacityError, InternalError

if TYPE_CHECKING:
    from collections.abc import Iterable, Sequence
    from typing import TextIO

    from causalplan.solver.variables import Term

logger = logging.getLogger(__name__)

OPTIMAL = "optimal"
FEASIBLE = "feasible"
INFEASIBLE = "infeasible"


class Solution:
    """A total assignment read back from the engine."""

    def __init__(self, atoms: Sequence[int], int_vars: Iterable[IntVar]) -> None:
        """Snapshot atom values and decode integer variables.

        Args:
            atoms: Value of every atom (1 true, -1 false).
            int_vars: The integer variables of the model.

        """
        self.atoms = tuple(atoms)
        self.ints: dict[int, int] = {}
        for var in int_vars:
            for value, atom in zip(var.values, var.atoms, strict=True):
                if self.atoms[atom] == 1:
                    self.ints[var.index] = value
                    break

    def lit(self, lit: int) -> bool:
        """Whether a literal is true."""
        value = self.atoms[abs(lit)]
        return value == 1 if lit > 0 else value == -1

    def __getitem__(self, var: IntVar | BoolVar) -> int:
        """Value of an integer variable, or 0/1 for a Boolean one."""
        if isinstance(var, BoolVar):
            return int(self.lit(var.lit))
        if var.index not in self.ints:
            raise InternalError(f"{var.name} has no value in the solution")
        return self.ints[var.index]


@dataclass
class SolveResult:
    """Outcome of one solve call."""

    status: str
    solution: Solution | None = None

    @property
    def sat(self) -> bool:
        """Whether a solution was found."""
        return self.status == SAT


@dataclass
class MinimizeResult:
    """Outcome of a linear-scan minimization.

    Attributes:
        status: `optimal`, `feasible`, `infeasible` or `unknown`.
        value: Best objective value found, if any.
        solution: The assignment reaching `value`.

    """

    status: str
    value: int | None = None
    solution: Solution | None = None


class CpModel:
    """A finite-domain model solved by lazy clause generation."""

    def __init__(
        self,
        restart_unit: int = 64,
        activity_decay: float = 0.95,
        seed: int | None = None,
        trace: TextIO | None = None,
        max_variables: int | None = None,
    ) -> None:
        """Create an empty model.

        Args:
            restart_unit: Conflicts per Luby unit; 0 disables restarts.
            activity_decay: Activity decay factor of the branching heuristic.
            seed: Seed perturbing the initial activities.
            trace: Stream receiving learned clauses in DIMACS form.
            max_variables: Capacity limit on integer plus Boolean variables.

        """
        self.engine = Engine(restart_unit=restart_unit, activity_decay=activity_decay, seed=seed, trace=trace)
        self.max_variables = max_variables
        self.int_vars: list[IntVar] = []
        self.bool_vars: list[BoolVar] = []
        self.constraints: list[Constraint] = []
        self.external: list[Propagator] = []

    # -- variables ------------------------------------------------------------

    def _reserve(self) -> int:
        count = len(self.int_vars) + len(self.bool_vars)
        if self.max_variables is not None and count >= self.max_variables:
            raise CapacityError(count + 1, self.max_variables)
        return count

    def new_int_var(self, lo: int, hi: int, name: str = "", holes: Iterable[int] = ()) -> IntVar:
        """Create an integer variable over `[lo, hi]` minus `holes`.

        Raises:
            ValueError: If the domain is empty.

        """
        removed = set(holes)
        return self.new_int_var_values([v for v in range(lo, hi + 1) if v not in removed], name)

    def new_int_var_values(self, values: Iterable[int], name: str = "") -> IntVar:
        """Create an integer variable over an explicit set of values.

        Raises:
            ValueError: If the domain is empty.

        """
        domain = tuple(sorted(set(values)))
        if not domain:
            raise ValueError(f"empty domain for variable {name or len(self.int_vars)}")
        self._reserve()
        atoms = tuple(self.engine.new_atom(boolean=False) for _ in domain)
        var = IntVar(len(self.int_vars), name or f"x{len(self.int_vars)}", domain, atoms)
        self.int_vars.append(var)
        self.engine.add_int_var(var)
        # at least one value; at most one is enforced by the engine
        self.engine.add_clause(atoms)
        return var

    def new_bool(self, name: str = "") -> BoolVar:
        """Create a Boolean variable."""
        self._reserve()
        var = BoolVar(len(self.bool_vars), name or f"b{len(self.bool_vars)}", self.engine.new_atom(boolean=True))
        self.bool_vars.append(var)
        return var

    # -- constraints ----------------------------------------------------------

    def post(self, constraint: Constraint) -> None:
        """Record a constraint, attach its propagator and propagate at the root."""
        self.constraints.append(constraint)
        match constraint:
            case ClauseConstraint(lits=lits):
                self.engine.add_clause(lits)
            case ElementConstraint():
                self.engine.add_propagator(ElementPropagator(constraint))
            case TableConstraint():
                self.engine.add_propagator(TablePropagator(constraint))
            case ReifiedEquality():
                self.engine.add_propagator(ReifiedEqualityPropagator(constraint))
            case BoolSumAtMost():
                self.engine.add_propagator(BoolSumPropagator(constraint))
            case _:
                raise InternalError(f"no propagator for {type(constraint).__name__}")
        self._root_propagate()

    def _root_propagate(self) -> None:
        if self.engine.inconsistent:
            return
        self.engine.backtrack(0)
        if self.engine.propagate() is not None:
            logger.debug("root conflict after %d constraints", len(self.constraints))
            self.engine.inconsistent = True

    def clause(self, lits: Iterable[int]) -> None:
        """Post a disjunction of literals."""
        self.post(ClauseConstraint(tuple(lits)))

    def element(self, index: IntVar, target: Term, cells: Sequence[Term]) -> None:
        """Post `cells[index] = target`."""
        self.post(ElementConstraint(index, target, tuple(cells)))

    def element2d(self, index: IntVar, targets: Sequence[Term], rows: Sequence[Sequence[Term]]) -> None:
        """Post `rows[index] = targets` as one element constraint per column."""
        for column, target in enumerate(targets):
            self.element(index, target, [row[column] for row in rows])

    def table(self, variables: Sequence[IntVar], rows: Iterable[Sequence[int | None]]) -> None:
        """Post an extensional constraint; `None` cells match any value."""
        self.post(TableConstraint(tuple(variables), tuple(tuple(row) for row in rows)))

    def reif_eq(self, guard: int, x: Term, y: Term) -> None:
        """Post `guard -> x = y`."""
        self.post(ReifiedEquality(guard, x, y, equal=True))

    def reif_neq(self, guard: int, x: Term, y: Term) -> None:
        """Post `guard -> x != y`."""
        self.post(ReifiedEquality(guard, x, y, equal=False))

    def bool_sum_le(self, lits: Iterable[int], bound: int) -> None:
        """Post `sum(lits) <= bound`."""
        self.post(BoolSumAtMost(tuple(lits), bound))

    def register_propagator(self, propagator: Propagator) -> None:
        """Attach an external propagator before solving."""
        self.external.append(propagator)
        self.engine.add_propagator(propagator)
        self._root_propagate()

    # -- domain reads ---------------------------------------------------------

    def lower_bound(self, var: IntVar) -> int:
        """Current lower bound of a variable."""
        return self.engine.lower_bound(var)

    def is_fixed(self, var: IntVar) -> bool:
        """Whether a single value is left in the domain."""
        return len(self.engine.domain(var)) == 1

    def value(self, var: IntVar) -> int:
        """Value of a fixed variable.

        Raises:
            InternalError: If the variable is not fixed.

        """
        domain = self.engine.domain(var)
        if len(domain) != 1:
            raise InternalError(f"value of unfixed variable {var.name}")
        return domain[0]

    @property
    def stats(self) -> EngineStats:
        """Search counters of the engine."""
        return self.engine.stats

    # -- search ---------------------------------------------------------------

    def solve(self, budget: Budget | None = None) -> SolveResult:
        """Search for an assignment satisfying every constraint.

        Args:
            budget: Limits of the search, started here if needed.

        Returns:
            The status and, on `sat`, a checked solution.

        Raises:
            InternalError: If a solution fails the standalone checker.

        """
        budget = (budget or Budget()).start()
        status = self.engine.solve(budget)
        if status != SAT:
            logger.debug("%s after %d conflicts", status, self.engine.stats.conflicts)
            return SolveResult(status)
        solution = Solution(self.engine.vals, self.int_vars)
        self.engine.backtrack(0)
        violations = check(self, solution)
        if violations:
            raise InternalError(f"solution violates {violations[0]}")
        logger.debug(
            "sat after %d conflicts, %d learned clauses", self.engine.stats.conflicts, self.engine.stats.learned
        )
        return SolveResult(SAT, solution)

    def minimize(self, lits: Iterable[int], budget: Budget | None = None) -> MinimizeResult:
        """Minimize the number of true literals by linear scan.

        Each solution of value `z` is followed by posting `sum <= z - 1`; the
        last value found is optimal once the model becomes unsatisfiable.

        Args:
            lits: The summed literals.
            budget: Limits shared by every solve of the scan.

        Returns:
            The scan outcome with the best solution found.

        """
        lits = tuple(lits)
        budget = (budget or Budget()).start()
        start = self.engine.stats.conflicts
        best: MinimizeResult | None = None
        while True:
            result = self.solve(budget.share(self.engine.stats.conflicts - start))
            if result.status == UNSAT:
                if best is None:
                    return MinimizeResult(INFEASIBLE)
                best.status = OPTIMAL
                return best
            if result.status == UNKNOWN:
                return best or MinimizeResult(UNKNOWN)
            solution = result.solution
            if solution is None:
                raise InternalError("sat without a solution")
            z = sum(1 for lit in lits if solution.lit(lit))
            best = MinimizeResult(FEASIBLE, z, solution)
            logger.debug("objective %d found", z)
            if z == 0:
                best.status = OPTIMAL
                return best
            self.bool_sum_le(lits, z - 1)

    def dump(self) -> str:
        """Deterministic listing of variables and constraints in creation order."""
        lines = []
        for var in self.int_vars:
            lines.append(f"int {var.name} {{{', '.join(map(str, var.values))}}} atoms {var.atoms[0]}..{var.atoms[-1]}")
        lines.extend(f"bool {var.name} atom {var.atom}" for var in self.bool_vars)
        lines.extend(constraint.describe() for constraint in self.constraints)
        lines.extend(f"propagator {propagator.name}" for propagator in self.external)
        return "\n".join(lines) + "\n"
