"""Conflict-driven search over atoms with clause-explaining propagators.

The engine keeps a trail of true literals with their decision levels and
reasons. A reason is a clause whose first literal is the implied one and
whose other literals were false when it was implied. Clauses are propagated
with two watched literals; the exactly-one structure of integer variables is
handled natively; every other constraint is a `Propagator` woken when one of
its atoms is assigned. Conflicts are analysed to the first unique implication
point and the learned clause is kept for the rest of the search.
"""

from __future__ import annotations

import heapq
import logging
import random
import time
from abc import ABC, abstractmethod
from collections import deque
from collections.abc import Sequence
from dataclasses import dataclass, field
from typing import TYPE_CHECKING

from causalplan.solver.restarts import luby
from causalplan.solver.variables import FALSE_LIT, TRUE_LIT
from causalplan.utils import PropagatorContractError

if TYPE_CHECKING:
    from collections.abc import Callable, Iterable
    from typing import TextIO

    from causalplan.solver.variables import IntVar

logger = logging.getLogger(__name__)

Reason = Sequence[int]

SAT = "sat"
UNSAT = "unsat"
UNKNOWN = "unknown"


class Propagator(ABC):
    """A constraint that explains its inferences with clauses.

    `propagate` reads the current domains through the engine, calls
    `Engine.imply` for every inference and returns a conflict clause (every
    literal false) when the constraint cannot be satisfied, None otherwise.
    It recomputes from the current domains on every call, so it needs no
    undo on backtracking. `notify` may narrow what the next call revisits,
    as long as anything it leaves out is unchanged since the last call.
    """

    name = "propagator"

    @abstractmethod
    def atoms(self) -> Iterable[int]:
        """Atoms whose assignment wakes the propagator."""
        raise NotImplementedError

    @abstractmethod
    def propagate(self, engine: Engine) -> Reason | None:
        """Prune domains; return a conflict clause on failure."""
        raise NotImplementedError

    def notify(self, atom: int) -> None:
        """Called for every assigned atom the propagator watches, before it is woken."""
        return None

    def final_check(self, engine: Engine) -> Reason | None:
        """Check a total assignment; return a conflict clause on violation."""
        return None


@dataclass
class Budget:
    """Limits of one solve call.

    Attributes:
        time_limit: Wall-clock seconds, unlimited if None.
        max_conflicts: Conflicts, unlimited if None.
        should_stop: Polled regularly; returning True stops the search.

    """

    time_limit: float | None = None
    max_conflicts: int | None = None
    should_stop: Callable[[], bool] | None = None
    deadline: float = field(init=False, default=float("inf"))

    def start(self) -> Budget:
        """Fix the deadline from now, once, and return the budget."""
        if self.time_limit is not None and self.deadline == float("inf"):
            self.deadline = time.monotonic() + self.time_limit
        return self

    @property
    def empty(self) -> bool:
        """Whether nothing may be spent at all."""
        return self.time_limit == 0 or self.max_conflicts == 0

    def share(self, spent: int) -> Budget:
        """Return the part of a started budget left after `spent` conflicts."""
        left = None if self.max_conflicts is None else max(0, self.max_conflicts - spent)
        rest = Budget(self.time_limit, left, self.should_stop)
        rest.deadline = self.deadline
        return rest


@dataclass
class EngineStats:
    """Search counters."""

    conflicts: int = 0
    decisions: int = 0
    propagations: int = 0
    restarts: int = 0
    learned: int = 0


class Engine:
    """Trail, clause database, propagation queue and CDCL search."""

    def __init__(
        self,
        restart_unit: int = 64,
        activity_decay: float = 0.95,
        seed: int | None = None,
        trace: TextIO | None = None,
    ) -> None:
        """Create an engine holding only the constant true atom.

        Args:
            restart_unit: Conflicts per Luby unit; 0 disables restarts.
            activity_decay: Factor applied to activities after each conflict.
            seed: Perturbs the initial activities when given.
            trace: Receives every learned clause as a DIMACS line.

        """
        self.restart_unit = restart_unit
        self.decay = activity_decay
        self.rng = random.Random(seed) if seed is not None else None
        self.trace = trace
        self.stats = EngineStats()

        self.vals: list[int] = [0, 0]
        self.levels: list[int] = [0, 0]
        self.reasons: list[Reason | None] = [None, None]
        self.activity: list[float] = [0.0, 0.0]
        self.phase: list[bool] = [False, False]
        self.is_bool: list[bool] = [False, False]
        self.owner: list[IntVar | None] = [None, None]
        self.subscribers: list[list[int]] = [[], []]

        self.trail: list[int] = []
        self.trail_lim: list[int] = []
        self.qhead = 0
        self.clauses: list[list[int]] = []
        self.watches: dict[int, list[int]] = {}
        self.int_vars: list[IntVar] = []
        self.propagators: list[Propagator] = []
        self.queue: deque[int] = deque()
        self.queued: set[int] = set()
        self.heap: list[tuple[float, int]] = []
        self.var_inc = 1.0
        self.inconsistent = False

        self._assign(TRUE_LIT, None)

    # -- atoms and literals -------------------------------------------------

    def new_atom(self, boolean: bool) -> int:
        """Allocate an atom; Boolean atoms are branched on by activity."""
        atom = len(self.vals)
        self.vals.append(0)
        self.levels.append(0)
        self.reasons.append(None)
        self.activity.append(self.rng.random() * 1e-3 if self.rng else 0.0)
        self.phase.append(False)
        self.is_bool.append(boolean)
        self.owner.append(None)
        self.subscribers.append([])
        if boolean:
            heapq.heappush(self.heap, (-self.activity[atom], atom))
        return atom

    def add_int_var(self, var: IntVar) -> None:
        """Register the value atoms of an integer variable."""
        self.int_vars.append(var)
        for atom in var.atoms:
            self.owner[atom] = var

    def value(self, lit: int) -> int:
        """Return 1 if the literal is true, -1 if false, 0 if unassigned."""
        v = self.vals[abs(lit)]
        return v if lit > 0 else -v

    def is_true(self, lit: int) -> bool:
        """Whether the literal is true."""
        return self.value(lit) == 1

    def is_false(self, lit: int) -> bool:
        """Whether the literal is false."""
        return self.value(lit) == -1

    @property
    def decision_level(self) -> int:
        """Number of open decisions."""
        return len(self.trail_lim)

    # -- integer domains ----------------------------------------------------

    def domain(self, var: IntVar) -> list[int]:
        """Values whose `x = v` literal is not false."""
        return [v for v, atom in zip(var.values, var.atoms, strict=True) if self.vals[atom] != -1]

    def lower_bound(self, var: IntVar) -> int:
        """Smallest value still in the domain."""
        for v, atom in zip(var.values, var.atoms, strict=True):
            if self.vals[atom] != -1:
                return v
        return var.hi + 1

    def upper_bound(self, var: IntVar) -> int:
        """Largest value still in the domain."""
        for v, atom in zip(reversed(var.values), reversed(var.atoms), strict=True):
            if self.vals[atom] != -1:
                return v
        return var.lo - 1

    def fixed_value(self, var: IntVar) -> int | None:
        """The value of a variable whose `x = v` atom is true, else None."""
        for v, atom in zip(var.values, var.atoms, strict=True):
            if self.vals[atom] == 1:
                return v
        return None

    # -- trail --------------------------------------------------------------

    def _assign(self, lit: int, reason: Reason | None) -> None:
        atom = abs(lit)
        self.vals[atom] = 1 if lit > 0 else -1
        self.levels[atom] = self.decision_level
        self.reasons[atom] = reason
        self.trail.append(lit)
        self.stats.propagations += 1

    def enqueue(self, lit: int, reason: Reason | None) -> Reason | None:
        """Make a literal true; return the reason as a conflict if it is false."""
        current = self.value(lit)
        if current == 1:
            return None
        if current == -1:
            return reason if reason is not None else (lit,)
        self._assign(lit, reason)
        return None

    def imply(self, lit: int, reason: Reason, source: str = "propagator") -> Reason | None:
        """Record an inference made by a propagator.

        Args:
            lit: The implied literal.
            reason: Clause starting with `lit` whose other literals are false.
            source: Name used in contract diagnostics.

        Returns:
            The reason as a conflict clause if `lit` is already false.

        Raises:
            PropagatorContractError: If the reason does not explain `lit`.

        """
        if not reason or reason[0] != lit:
            raise PropagatorContractError(source, list(reason), "reason must start with the implied literal")
        for other in reason[1:]:
            if not self.is_false(other):
                raise PropagatorContractError(source, list(reason), f"literal {other} of the reason is not false")
        return self.enqueue(lit, reason)

    def check_conflict(self, clause: Reason, source: str) -> Reason:
        """Verify that a conflict clause is falsified."""
        for lit in clause:
            if not self.is_false(lit):
                raise PropagatorContractError(source, list(clause), f"literal {lit} of the conflict is not false")
        return clause

    def backtrack(self, level: int) -> None:
        """Undo every assignment above a decision level."""
        if self.decision_level <= level:
            return
        start = self.trail_lim[level]
        for lit in reversed(self.trail[start:]):
            atom = abs(lit)
            self.phase[atom] = lit > 0
            self.vals[atom] = 0
            self.reasons[atom] = None
            if self.is_bool[atom]:
                heapq.heappush(self.heap, (-self.activity[atom], atom))
        del self.trail[start:]
        del self.trail_lim[level:]
        self.qhead = len(self.trail)
        self.queue.clear()
        self.queued.clear()

    # -- clauses and propagators ----------------------------------------------

    def add_clause(self, lits: Iterable[int]) -> bool:
        """Add a clause at the root level.

        Returns:
            False if the clause is falsified at the root.

        """
        self.backtrack(0)
        clause: list[int] = []
        for lit in lits:
            if lit == TRUE_LIT or -lit in clause:
                return True
            if lit != FALSE_LIT and lit not in clause:
                clause.append(lit)
        if any(self.is_true(lit) for lit in clause):
            return True
        clause = [lit for lit in clause if not self.is_false(lit)]
        if not clause:
            self.inconsistent = True
            return False
        if len(clause) == 1:
            self.enqueue(clause[0], (clause[0],))
            return True
        self._attach(clause)
        return True

    def _attach(self, clause: list[int]) -> None:
        index = len(self.clauses)
        self.clauses.append(clause)
        self.watches.setdefault(clause[0], []).append(index)
        self.watches.setdefault(clause[1], []).append(index)

    def add_propagator(self, propagator: Propagator) -> None:
        """Register a propagator and schedule its first run."""
        self.backtrack(0)
        index = len(self.propagators)
        self.propagators.append(propagator)
        for atom in set(propagator.atoms()):
            self.subscribers[atom].append(index)
        self.queue.append(index)
        self.queued.add(index)

    def _propagate_watches(self, false_lit: int) -> Reason | None:
        watchers = self.watches.get(false_lit)
        if not watchers:
            return None
        kept: list[int] = []
        conflict: Reason | None = None
        i = 0
        while i < len(watchers):
            index = watchers[i]
            i += 1
            clause = self.clauses[index]
            if clause[0] == false_lit:
                clause[0], clause[1] = clause[1], clause[0]
            if self.value(clause[0]) == 1:
                kept.append(index)
                continue
            for k in range(2, len(clause)):
                if self.value(clause[k]) != -1:
                    clause[1], clause[k] = clause[k], clause[1]
                    self.watches.setdefault(clause[1], []).append(index)
                    break
            else:
                kept.append(index)
                if self.value(clause[0]) == -1:
                    conflict = clause
                    kept.extend(watchers[i:])
                    break
                self._assign(clause[0], clause)
        self.watches[false_lit] = kept
        return conflict

    def propagate(self) -> Reason | None:
        """Run unit propagation and the woken propagators to a fixpoint."""
        while True:
            while self.qhead < len(self.trail):
                lit = self.trail[self.qhead]
                self.qhead += 1
                atom = abs(lit)
                var = self.owner[atom]
                if lit > 0 and var is not None:
                    for sibling in var.atoms:
                        if sibling != atom:
                            conflict = self.enqueue(-sibling, (-sibling, -atom))
                            if conflict is not None:
                                return conflict
                conflict = self._propagate_watches(-lit)
                if conflict is not None:
                    return conflict
                for index in self.subscribers[atom]:
                    self.propagators[index].notify(atom)
                    if index not in self.queued:
                        self.queued.add(index)
                        self.queue.append(index)
            if not self.queue:
                return None
            index = self.queue.popleft()
            self.queued.discard(index)
            propagator = self.propagators[index]
            conflict = propagator.propagate(self)
            if conflict is not None:
                return self.check_conflict(conflict, propagator.name)

    # -- conflict analysis ----------------------------------------------------

    def _bump(self, atom: int) -> None:
        self.activity[atom] += self.var_inc
        if self.activity[atom] > 1e100:
            self.activity = [a * 1e-100 for a in self.activity]
            self.var_inc *= 1e-100
            self.heap = [(-self.activity[a], a) for _, a in self.heap]
            heapq.heapify(self.heap)
        if self.is_bool[atom] and self.vals[atom] == 0:
            heapq.heappush(self.heap, (-self.activity[atom], atom))

    def analyze(self, conflict: Reason) -> tuple[list[int], int] | None:
        """Derive the first-UIP clause of a conflict.

        Returns:
            `(learned clause, backjump level)`, or None if the conflict holds
            at the root.

        """
        top = max((self.levels[abs(lit)] for lit in conflict), default=0)
        if top == 0:
            return None
        # conflicts found by propagators may lie entirely below the current level
        self.backtrack(top)

        seen: set[int] = set()
        learned: list[int] = []
        pending = 0
        index = len(self.trail) - 1
        clause: Reason = conflict
        skip_first = False
        while True:
            for lit in clause[1:] if skip_first else clause:
                atom = abs(lit)
                if atom in seen or self.levels[atom] == 0:
                    continue
                seen.add(atom)
                self._bump(atom)
                if self.levels[atom] == top:
                    pending += 1
                else:
                    learned.append(lit)
            while abs(self.trail[index]) not in seen:
                index -= 1
            uip = self.trail[index]
            index -= 1
            pending -= 1
            if pending == 0:
                break
            reason = self.reasons[abs(uip)]
            if reason is None:
                raise PropagatorContractError("engine", list(clause), "decision reached before the UIP")
            clause = reason
            skip_first = True
        learned.insert(0, -uip)
        back = 0
        if len(learned) > 1:
            best = max(range(1, len(learned)), key=lambda i: self.levels[abs(learned[i])])
            learned[1], learned[best] = learned[best], learned[1]
            back = self.levels[abs(learned[1])]
        return learned, back

    def _learn(self, conflict: Reason) -> bool:
        """Learn from a conflict and backjump; False if the search space is empty."""
        self.stats.conflicts += 1
        result = self.analyze(conflict)
        if result is None:
            self.inconsistent = True
            return False
        learned, back = result
        self.backtrack(back)
        self.stats.learned += 1
        if self.trace is not None:
            self.trace.write(" ".join(str(lit) for lit in learned) + " 0\n")
        if len(learned) == 1:
            self._assign(learned[0], (learned[0],))
        else:
            self._attach(learned)
            self._assign(learned[0], learned)
        self.var_inc /= self.decay
        return True

    # -- branching ------------------------------------------------------------

    def _pick(self) -> int | None:
        while self.heap:
            neg_activity, atom = heapq.heappop(self.heap)
            if self.vals[atom] != 0 or -neg_activity != self.activity[atom]:
                continue
            return atom if self.phase[atom] else -atom
        for var in self.int_vars:
            if any(self.vals[atom] == 0 for atom in var.atoms):
                return var.eq(self.lower_bound(var))
        return None

    def _final_check(self) -> Reason | None:
        for propagator in self.propagators:
            conflict = propagator.final_check(self)
            if conflict is not None:
                return self.check_conflict(conflict, propagator.name)
        return None

    # -- search ----------------------------------------------------------------

    def solve(self, budget: Budget) -> str:
        """Search for a total assignment satisfying every clause and propagator.

        On `sat` the assignment stays on the trail until the next root-level
        change.

        Args:
            budget: Limits of the search, already started.

        Returns:
            `sat`, `unsat` or `unknown`.

        """
        self.backtrack(0)
        if self.inconsistent:
            return UNSAT
        if budget.empty:
            return UNKNOWN
        start_conflicts = self.stats.conflicts
        restart_count = 0
        restart_limit = luby(1) * self.restart_unit
        since_restart = 0
        while True:
            conflict = self.propagate()
            decision = None
            if conflict is None:
                decision = self._pick()
                if decision is None:
                    conflict = self._final_check()
                    if conflict is None:
                        return SAT
            if conflict is not None:
                if not self._learn(conflict):
                    return UNSAT
                since_restart += 1
                spent = self.stats.conflicts - start_conflicts
                if budget.max_conflicts is not None and spent >= budget.max_conflicts:
                    self.backtrack(0)
                    return UNKNOWN
                if spent % 64 == 0 and self._out_of_budget(budget):
                    self.backtrack(0)
                    return UNKNOWN
                if self.restart_unit and since_restart >= restart_limit:
                    restart_count += 1
                    self.stats.restarts += 1
                    restart_limit = luby(restart_count + 1) * self.restart_unit
                    since_restart = 0
                    self.backtrack(0)
                    logger.debug("restart %d after %d conflicts", restart_count, self.stats.conflicts)
                continue
            self.stats.decisions += 1
            if self.stats.decisions % 256 == 0 and self._out_of_budget(budget):
                self.backtrack(0)
                return UNKNOWN
            self.trail_lim.append(len(self.trail))
            self._assign(decision, None)

    @staticmethod
    def _out_of_budget(budget: Budget) -> bool:
        if time.monotonic() >= budget.deadline:
            return True
        return budget.should_stop is not None and budget.should_stop()
