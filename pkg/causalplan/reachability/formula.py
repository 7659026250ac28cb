"""Existentially quantified conjunctions used by the reachability test.

A formula is a set of literals over predicates, a set of disequality clauses
(each clause is a disjunction `t1 != t2 or ...`) and the object set each
variable ranges over. Formulas are kept in a canonical form: equalities are
substituted away, trivially true clauses are dropped and variables are
renamed to `?v0, ?v1, ...` in a fixed order, so that equal formulas found
along different regression paths share one memo entry.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING

from causalplan.pddl.ast import Literal, is_variable

if TYPE_CHECKING:
    from collections.abc import Iterable, Mapping

Clause = frozenset[tuple[str, str]]


@dataclass(frozen=True)
class Formula:
    """A formula `exists vars. literals and disequalities`.

    Attributes:
        literals: The literal part.
        diseqs: Disjunctions of disequalities between terms.
        domains: `(variable, objects)` pairs giving each variable's range.

    """

    literals: frozenset[Literal]
    diseqs: frozenset[Clause] = frozenset()
    domains: frozenset[tuple[str, frozenset[str]]] = frozenset()

    @property
    def variables(self) -> set[str]:
        """Variables occurring in the literal part."""
        return {t for literal in self.literals for t in literal.args if is_variable(t)}

    def domain_map(self) -> dict[str, frozenset[str]]:
        """Return the variable ranges as a dictionary."""
        return dict(self.domains)

    def __len__(self) -> int:
        """Return the number of literals."""
        return len(self.literals)

    def __str__(self) -> str:
        """Return a readable conjunction."""
        parts = sorted(str(literal) for literal in self.literals)
        for clause in sorted(self.diseqs, key=sorted):
            parts.append(" or ".join(f"{a} != {b}" for a, b in sorted(clause)))
        return " and ".join(parts) if parts else "true"


def make_formula(
    literals: Iterable[Literal],
    diseqs: Iterable[Iterable[tuple[str, str]]] = (),
    domains: Mapping[str, Iterable[str]] | None = None,
) -> Formula:
    """Build a formula from plain collections, without canonicalization."""
    return Formula(
        frozenset(literals),
        frozenset(frozenset(clause) for clause in diseqs),
        frozenset((var, frozenset(objects)) for var, objects in (domains or {}).items()),
    )


class _Classes:
    """Union-find over terms."""

    def __init__(self) -> None:
        self.parent: dict[str, str] = {}

    def find(self, term: str) -> str:
        self.parent.setdefault(term, term)
        root = term
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[term] != root:
            self.parent[term], term = root, self.parent[term]
        return root

    def union(self, a: str, b: str) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)

    def groups(self) -> list[list[str]]:
        members: dict[str, list[str]] = {}
        for term in list(self.parent):
            members.setdefault(self.find(term), []).append(term)
        return list(members.values())


def _shape(literal: Literal) -> tuple[str, bool, tuple[str, ...]]:
    return (literal.predicate, not literal.positive, tuple("?" if is_variable(t) else t for t in literal.args))


def canonicalize(psi: Formula, equalities: Iterable[tuple[str, str]] = ()) -> Formula | None:
    """Bring a formula, conjoined with term equalities, into canonical form.

    Args:
        psi: The formula.
        equalities: Pairs of terms that must be equal.

    Returns:
        The canonical formula, or None if it is unsatisfiable: two distinct
        objects are equated, a variable range becomes empty, a literal occurs
        with both polarities, or a disequality clause has no disjunct left.

    """
    domains = psi.domain_map()
    classes = _Classes()
    for var in domains:
        classes.find(var)
    for literal in psi.literals:
        for term in literal.args:
            classes.find(term)
    for a, b in equalities:
        classes.union(a, b)

    representative: dict[str, str] = {}
    ranges: dict[str, frozenset[str]] = {}
    for group in classes.groups():
        objects = {t for t in group if not is_variable(t)}
        variables = [t for t in group if is_variable(t)]
        if len(objects) > 1:
            return None
        allowed: frozenset[str] | None = None
        for var in variables:
            if var in domains:
                allowed = domains[var] if allowed is None else allowed & domains[var]
        if objects:
            rep = next(iter(objects))
            if allowed is not None and rep not in allowed:
                return None
        elif allowed is not None and len(allowed) == 1:
            rep = next(iter(allowed))
        else:
            if allowed is not None and not allowed:
                return None
            rep = min(variables)
            if allowed is not None:
                ranges[rep] = allowed
        for term in group:
            representative[term] = rep

    def sub(term: str) -> str:
        return representative.get(term, term)

    literals = {Literal(lit.predicate, tuple(sub(t) for t in lit.args), lit.positive) for lit in psi.literals}
    if any(lit.negated() in literals for lit in literals):
        return None
    present = {t for lit in literals for t in lit.args if is_variable(t)}

    clauses: set[Clause] = set()
    for clause in psi.diseqs:
        pairs: set[tuple[str, str]] = set()
        satisfied = False
        for a, b in clause:
            a, b = sub(a), sub(b)
            if a == b:
                continue
            if any(is_variable(t) and t not in present for t in (a, b)):
                # disequalities over variables the literals no longer mention hold trivially
                satisfied = True
                break
            if not is_variable(a) and not is_variable(b):
                satisfied = True
                break
            var, other = (a, b) if is_variable(a) else (b, a)
            if not is_variable(other) and var in ranges and other not in ranges[var]:
                satisfied = True
                break
            pairs.add((min(a, b), max(a, b)))
        if satisfied:
            continue
        if not pairs:
            return None
        clauses.add(frozenset(pairs))

    names: dict[str, str] = {}
    for literal in sorted(literals, key=lambda lit: (_shape(lit), lit.args)):
        for term in literal.args:
            if is_variable(term) and term not in names:
                names[term] = f"?v{len(names)}"

    def rename(term: str) -> str:
        return names.get(term, term)

    return Formula(
        frozenset(Literal(lit.predicate, tuple(rename(t) for t in lit.args), lit.positive) for lit in literals),
        frozenset(frozenset((min(rename(a), rename(b)), max(rename(a), rename(b))) for a, b in c) for c in clauses),
        frozenset((names[var], objects) for var, objects in ranges.items() if var in present),
    )
