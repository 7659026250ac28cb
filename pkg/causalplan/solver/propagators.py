"""Explaining propagators for the global constraints of the model.

Every inference comes with a clause over value literals: the implied literal
first, then literals that are false under the current domains. Literals that
are false from the start (`FALSE_LIT`, values outside a domain) are left out
of reasons since they never depend on a decision.
"""

from __future__ import annotations

from typing import TYPE_CHECKING

from causalplan.solver.engine import Propagator
from causalplan.solver.variables import FALSE_LIT, TRUE_LIT, IntVar, term_eq, term_values

if TYPE_CHECKING:
    from collections.abc import Iterable

    from causalplan.solver.constraints import (
        BoolSumAtMost,
        ElementConstraint,
        ReifiedEquality,
        TableConstraint,
    )
    from causalplan.solver.engine import Engine, Reason
    from causalplan.solver.variables import Term


def _reason(lit: int, *parts: Iterable[int]) -> list[int]:
    clause = [lit]
    for part in parts:
        for other in part:
            if other != FALSE_LIT and other not in clause:
                clause.append(other)
    return clause


def _term_atoms(term: Term) -> tuple[int, ...]:
    return term.atoms if isinstance(term, IntVar) else ()


def _live(engine: Engine, term: Term) -> set[int]:
    return set(engine.domain(term)) if isinstance(term, IntVar) else {term}


class ElementPropagator(Propagator):
    """Domain consistency for `cells[index] = target`."""

    name = "element"

    def __init__(self, constraint: ElementConstraint) -> None:
        """Wrap an element constraint."""
        self.c = constraint

    def atoms(self) -> Iterable[int]:
        """Atoms of the index, the target and every variable cell."""
        yield from self.c.index.atoms
        yield from _term_atoms(self.c.target)
        for cell in self.c.cells:
            yield from _term_atoms(cell)

    def _excluded(self, engine: Engine, a: Term, b: Term) -> list[int]:
        """False literals showing that `a` and `b` share no value."""
        lits = []
        common = set(term_values(a)) & set(term_values(b))
        for v in sorted(common):
            lit = term_eq(a, v)
            lits.append(lit if engine.is_false(lit) else term_eq(b, v))
        return lits

    def propagate(self, engine: Engine) -> Reason | None:
        """Filter the index, then the target, then the selected cell."""
        c = self.c
        target = _live(engine, c.target)

        for i in engine.domain(c.index):
            if i >= len(c.cells) or not (_live(engine, c.cells[i]) & target):
                lit = c.index.ne(i)
                if i >= len(c.cells):
                    reason = _reason(lit)
                else:
                    reason = _reason(lit, self._excluded(engine, c.cells[i], c.target))
                conflict = engine.imply(lit, reason, self.name)
                if conflict is not None:
                    return conflict

        indices = [i for i in engine.domain(c.index) if i < len(c.cells)]
        if isinstance(c.target, IntVar):
            supported: set[int] = set()
            for i in indices:
                supported |= _live(engine, c.cells[i])
            for v in engine.domain(c.target):
                if v in supported:
                    continue
                lit = c.target.ne(v)
                support = []
                for i in range(min(len(c.cells), c.index.hi + 1)):
                    if i not in c.index or v not in term_values(c.cells[i]):
                        continue
                    at = c.index.eq(i)
                    support.append(at if engine.is_false(at) else term_eq(c.cells[i], v))
                conflict = engine.imply(lit, _reason(lit, support), self.name)
                if conflict is not None:
                    return conflict

        if len(indices) == 1:
            i = indices[0]
            cell = c.cells[i]
            at = c.index.eq(i)
            if not engine.is_true(at):
                return None
            target = _live(engine, c.target)
            if isinstance(cell, IntVar):
                for v in engine.domain(cell):
                    if v not in target:
                        lit = cell.ne(v)
                        conflict = engine.imply(lit, _reason(lit, [-at, term_eq(c.target, v)]), self.name)
                        if conflict is not None:
                            return conflict
        return None


class TablePropagator(Propagator):
    """Generalized arc consistency for an extensional constraint with wildcards."""

    name = "table"

    def __init__(self, constraint: TableConstraint) -> None:
        """Wrap a table constraint."""
        self.c = constraint

    def atoms(self) -> Iterable[int]:
        """Atoms of every variable of the scope."""
        for var in self.c.variables:
            yield from var.atoms

    def _killer(self, engine: Engine, row: tuple[int | None, ...], skip: int) -> int | None:
        """A false literal ruling the row out, ignoring position `skip`."""
        for q, (var, cell) in enumerate(zip(self.c.variables, row, strict=True)):
            if q == skip or cell is None:
                continue
            lit = var.eq(cell)
            if engine.is_false(lit):
                return lit
        return None

    def propagate(self, engine: Engine) -> Reason | None:
        """Remove values without a live supporting row."""
        c = self.c
        live = [row for row in c.rows if self._killer(engine, row, -1) is None]
        if not live:
            killers = (self._killer(engine, row, -1) for row in c.rows)
            return [k for k in killers if k is not None and k != FALSE_LIT]
        for p, var in enumerate(c.variables):
            wild = any(row[p] is None for row in live)
            if wild:
                continue
            supported = {row[p] for row in live}
            for v in engine.domain(var):
                if v in supported:
                    continue
                lit = var.ne(v)
                killers = [
                    self._killer(engine, row, p) or FALSE_LIT
                    for row in c.rows
                    if row[p] is None or row[p] == v
                ]
                conflict = engine.imply(lit, _reason(lit, killers), self.name)
                if conflict is not None:
                    return conflict
        return None


class ReifiedEqualityPropagator(Propagator):
    """`guard -> x = y` and `guard -> x != y`."""

    name = "reified-equality"

    def __init__(self, constraint: ReifiedEquality) -> None:
        """Wrap a half-reified (dis)equality."""
        self.c = constraint

    def atoms(self) -> Iterable[int]:
        """Atoms of the guard and both sides."""
        yield abs(self.c.guard)
        yield from _term_atoms(self.c.x)
        yield from _term_atoms(self.c.y)

    def propagate(self, engine: Engine) -> Reason | None:
        """Filter under a true guard, refute the guard when the sides clash."""
        c = self.c
        if engine.is_false(c.guard):
            return None
        if c.equal:
            return self._equal(engine)
        return self._different(engine)

    def _equal(self, engine: Engine) -> Reason | None:
        c = self.c
        xs, ys = _live(engine, c.x), _live(engine, c.y)
        if not xs & ys:
            lits = []
            for v in sorted(set(term_values(c.x)) & set(term_values(c.y))):
                lit = term_eq(c.x, v)
                lits.append(lit if engine.is_false(lit) else term_eq(c.y, v))
            return engine.imply(-c.guard, _reason(-c.guard, lits), self.name)
        if not engine.is_true(c.guard):
            return None
        for a, b, bs in ((c.x, c.y, ys), (c.y, c.x, xs)):
            if not isinstance(a, IntVar):
                continue
            for v in engine.domain(a):
                if v not in bs:
                    lit = a.ne(v)
                    conflict = engine.imply(lit, _reason(lit, [-c.guard, term_eq(b, v)]), self.name)
                    if conflict is not None:
                        return conflict
        return None

    def _different(self, engine: Engine) -> Reason | None:
        c = self.c
        xs, ys = _live(engine, c.x), _live(engine, c.y)
        if len(xs) == 1 and xs == ys:
            v = next(iter(xs))
            if engine.is_true(term_eq(c.x, v)) or not isinstance(c.x, IntVar):
                if engine.is_true(term_eq(c.y, v)) or not isinstance(c.y, IntVar):
                    return engine.imply(
                        -c.guard, _reason(-c.guard, [-term_eq(c.x, v), -term_eq(c.y, v)]), self.name
                    )
        if not engine.is_true(c.guard):
            return None
        for a, b in ((c.x, c.y), (c.y, c.x)):
            if not isinstance(b, IntVar) or len(_live(engine, a)) != 1:
                continue
            v = next(iter(_live(engine, a)))
            fixed = term_eq(a, v)
            if fixed != TRUE_LIT and not engine.is_true(fixed):
                continue
            lit = b.ne(v)
            if lit == TRUE_LIT:
                continue
            conflict = engine.imply(lit, _reason(lit, [-c.guard, -fixed]), self.name)
            if conflict is not None:
                return conflict
        return None


class BoolSumPropagator(Propagator):
    """At most `bound` literals are true."""

    name = "bool-sum"

    def __init__(self, constraint: BoolSumAtMost) -> None:
        """Wrap a cardinality constraint."""
        self.c = constraint

    def atoms(self) -> Iterable[int]:
        """Atoms of the summed literals."""
        return [abs(lit) for lit in self.c.lits]

    def propagate(self, engine: Engine) -> Reason | None:
        """Fail above the bound, falsify the rest at the bound."""
        true = [lit for lit in self.c.lits if engine.is_true(lit)]
        if len(true) > self.c.bound:
            return [-lit for lit in true[: self.c.bound + 1]]
        if len(true) < self.c.bound:
            return None
        for lit in self.c.lits:
            if engine.value(lit) == 0:
                conflict = engine.imply(-lit, [-lit, *(-t for t in true)], self.name)
                if conflict is not None:
                    return conflict
        return None
